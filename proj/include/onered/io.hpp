#pragma once

// JSON records for ideals and classifications. Exact values are strings:
// field elements as "p q r" meaning (p + q sqrt(D)) / r, rationals as "n/d".
// Floating approximations only appear under approx_* keys.

#include "onered/classifier.hpp"
#include "onered/reducer.hpp"

#include <json.hpp>

#include <limits>

namespace onered {

using json = nlohmann::json;

namespace detail {

inline json int_to_json(const BigInt& x)
{
    if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
        return json(x.convert_to<std::int64_t>());
    return json(x.str());
}

inline BigInt int_from_json(const json& j)
{
    if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
    if (j.is_string()) return BigInt(j.get<std::string>());
    throw std::invalid_argument("expected an integer, got " + j.dump());
}

inline json opt_elem(const std::optional<QElem>& x)
{
    return x ? json(x->to_triple()) : json(nullptr);
}

}  // namespace detail

inline json ideal_to_json(const IdealForm& I)
{
    return json{{"disc", detail::int_to_json(I.disc())},
                {"a", detail::int_to_json(I.a())},
                {"b", detail::int_to_json(I.b())},
                {"c", detail::int_to_json(I.c())},
                {"approx_f", I.f().approx()}};
}

inline IdealForm ideal_from_json(const json& j)
{
    return IdealForm(FieldCtx(detail::int_from_json(j.at("disc"))), detail::int_from_json(j.at("a")),
                     detail::int_from_json(j.at("b")));
}

inline json record_to_json(const ClassificationRecord& r)
{
    json j = ideal_to_json(r.ideal);
    j["closed_form"] = r.closed_form;
    j["b_criterion"] = r.b_criterion;
    j["cone_oracle"] = r.cone_oracle;
    j["one_reduced"] = r.one_reduced();
    j["boundary"] = r.boundary;
    j["bmin4"] = r.bmin4.to_triple();
    j["bmax4"] = r.bmax4.to_triple();
    j["witness_ratio"] = detail::opt_elem(r.witness_ratio);
    j["witness_interior"] = r.witness_interior;
    j["witness_verified"] = r.witness_verified;
    j["methods_agree"] = r.methods_agree;
    j["approx_bmin4"] = r.bmin4.approx();
    j["approx_bmax4"] = r.bmax4.approx();
    return j;
}

inline ClassificationRecord record_from_json(const json& j)
{
    IdealForm I = ideal_from_json(j);
    const FieldCtx& ctx = I.ctx();
    std::optional<QElem> witness;
    if (!j.at("witness_ratio").is_null())
        witness = QElem::from_triple(ctx, j.at("witness_ratio").get<std::string>());
    return ClassificationRecord{I,
                                j.at("closed_form").get<bool>(),
                                j.at("b_criterion").get<bool>(),
                                j.at("cone_oracle").get<bool>(),
                                QElem::from_triple(ctx, j.at("bmin4").get<std::string>()),
                                QElem::from_triple(ctx, j.at("bmax4").get<std::string>()),
                                witness,
                                j.at("witness_interior").get<bool>(),
                                j.at("witness_verified").get<bool>(),
                                j.at("methods_agree").get<bool>(),
                                j.at("boundary").get<bool>()};
}

inline bool operator==(const ClassificationRecord& x, const ClassificationRecord& y)
{
    return x.ideal == y.ideal && x.closed_form == y.closed_form && x.b_criterion == y.b_criterion &&
           x.cone_oracle == y.cone_oracle && x.bmin4 == y.bmin4 && x.bmax4 == y.bmax4 &&
           x.witness_ratio == y.witness_ratio && x.witness_interior == y.witness_interior &&
           x.witness_verified == y.witness_verified && x.methods_agree == y.methods_agree &&
           x.boundary == y.boundary;
}

inline json reduction_to_json(const ReductionResult& r)
{
    json j = ideal_to_json(r.output);
    j["f"] = r.f.to_triple();
    j["input_disc"] = detail::int_to_json(r.f.ctx().disc());
    j["approx_distance"] = r.distance_diag;
    return j;
}

}  // namespace onered

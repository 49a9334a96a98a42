#pragma once

// Deciding whether a reduced ideal is 1-reduced, i.e. whether some metric
// u = (u1, u2) makes 1 a shortest vector of the lattice Phi(I).
//
// Three independent routes are provided:
//   closed_form_is_onereduced  integer test (b - a)^2 + 3a^2 <= D
//   b_criterion                B(g)^4 extremes over a small candidate set
//   cone_oracle                feasibility of the ratio u1^2/u2^2 against every
//                              g with ||g|| < 8/pi
// B values are carried as B^4, which stays inside the field.

#include "onered/lattice.hpp"

#include <map>

namespace onered {

enum class GSide { G1, G2 };  // G1: sigma(g)^2 < 1; G2: sigma'(g)^2 < 1

/// g in I with (sigma(g)^2 - 1)(sigma'(g)^2 - 1) < 0 and ||g|| < 8/pi.
struct GVector {
    QElem g;
    QElem g1sq_minus_1;  // g^2 - 1; its conjugate is sigma'(g)^2 - 1
    GSide side;

    QElem g2sq_minus_1() const { return g1sq_minus_1.conj(); }
};

struct NotInG : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Membership test for G; nullopt when g is not in G.
inline std::optional<GVector> make_gvector(const QElem& g)
{
    QElem g2 = g * g;
    QElem x = g2 - BigInt(1);
    // norm(x) is the product of the two embeddings of g^2 - 1
    if (x.norm() >= 0) return std::nullopt;
    if (!below_pi_threshold(g2.trace())) return std::nullopt;
    return GVector{g, x, x.sign() < 0 ? GSide::G1 : GSide::G2};
}

/// B(g)^4 = -(sigma(g)^2 - 1) / (sigma'(g)^2 - 1).
inline QElem b_value4(const GVector& gv)
{
    if (gv.g1sq_minus_1.norm() >= 0) throw NotInG("sign condition of G fails");
    return -(gv.g1sq_minus_1 / gv.g2sq_minus_1());
}

inline bool closed_form_is_onereduced(const IdealForm& I)
{
    BigInt d = I.b() - I.a();
    return d * d + 3 * I.a() * I.a() <= I.disc();
}

/// Equality (b - a)^2 + 3a^2 = D, i.e. N(f - 1/2) = -3/4.
inline bool on_boundary(const IdealForm& I)
{
    BigInt d = I.b() - I.a();
    return d * d + 3 * I.a() * I.a() == I.disc();
}

struct BCriterionResult {
    bool one_reduced;
    QElem bmin4, bmax4;
    bool one_is_shortest;  // 1 is the only shortest vector (up to sign) under the unit metric
    std::vector<QElem> candidates;
};

inline QElem default_bmin4(const FieldCtx& ctx) { return QElem(ctx, 1, 0, 16); }
inline QElem default_bmax4(const FieldCtx& ctx) { return QElem(ctx, 16); }

inline BCriterionResult b_criterion(const IdealForm& I)
{
    const FieldCtx& ctx = I.ctx();
    const Metric unit = Metric::unit();
    const QElem one(ctx, 1);
    const QElem two(ctx, 2);
    BCriterionResult res{true, default_bmin4(ctx), default_bmax4(ctx), false, {}};
    // b1: a minimal vector other than +-1. If there is none, or it is longer
    // than 1, the unit metric already makes 1 shortest.
    std::optional<QElem> shortest;
    for (const QElem& v : minimal_vectors(module_of(I), unit)) {
        if (v != one && v != -one) {
            shortest = v;
            break;
        }
    }
    if (!shortest || unit.sqlen(*shortest) > two) {
        res.one_is_shortest = true;
        return res;
    }
    const QElem b1 = *shortest;

    // ||b1||^2 < 2 forces b1 = m +- f, so {b1, 1} is a basis with b2 = Phi(1) = (1, 1).
    std::vector<QElem>& cand = res.candidates;
    cand.push_back(b1);
    for (int s = -2; s <= 2; ++s)
        if (s != 0) cand.push_back(BigInt(s) * b1 + one);

    // integers t between (-1 - b22)/b12 and (1 - b22)/b12, or between
    // (-1 - b21)/b11 and (1 - b21)/b11 when the long coordinate is sigma(b1)
    const bool conj_long = ((b1 * b1) - one).sign() < 0;
    const QElem pivot = conj_long ? b1.conj() : b1;
    QElem e1 = QElem(ctx, -2) / pivot;
    QElem e2(ctx, 0);
    if (e2 < e1) std::swap(e1, e2);
    for (BigInt t = -(-e1).floor(); t <= e2.floor(); ++t) cand.push_back(t * b1 + one);

    bool have1 = false, have2 = false;
    for (const QElem& g : cand) {
        auto gv = make_gvector(g);
        if (!gv) continue;
        QElem b4 = b_value4(*gv);
        if (gv->side == GSide::G1) {
            if (!have1 || b4 > res.bmin4) res.bmin4 = b4;
            have1 = true;
        } else {
            if (!have2 || b4 < res.bmax4) res.bmax4 = b4;
            have2 = true;
        }
    }
    res.one_reduced = res.bmax4 >= res.bmin4;
    return res;
}

/// Every g in G up to sign, by direct enumeration of g = m + n f.
inline std::vector<GVector> enumerate_g(const IdealForm& I)
{
    // ||g||^2 < 64/pi^2 < 13/2 needs n^2 D / (4a^2) < 13/4 and |2am + nb| < 2a*sqrt(13/4) < 4a
    std::vector<GVector> out;
    const FieldCtx& ctx = I.ctx();
    const QElem f = I.f();
    const BigInt& a = I.a();
    for (BigInt n = 1; n * n * I.disc() < 13 * a * a; ++n) {
        BigInt nb = n * I.b();
        BigInt mlo = floor_div(-4 * a - nb, 2 * a);
        BigInt mhi = floor_div(4 * a - nb, 2 * a) + 1;
        for (BigInt m = mlo; m <= mhi; ++m) {
            if (auto gv = make_gvector(QElem(ctx, m) + n * f)) out.push_back(*gv);
        }
    }
    return out;
}

/// Feasible set of rho = s/w = u1^2/u2^2: lower <= rho <= upper, either side may be open-ended.
struct RatioCone {
    std::optional<QElem> lower, upper;

    bool empty() const { return lower && upper && *upper < *lower; }
    bool degenerate() const { return lower && upper && *upper == *lower; }

    // rho (g1^2 - 1) + (g2^2 - 1) >= 0
    void add_constraint(const QElem& x)
    {
        QElem bound = -(x.conj() / x);
        if (x.sign() < 0) {
            if (!upper || bound < *upper) upper = bound;
        } else if (x.sign() > 0) {
            if (!lower || bound > *lower) lower = bound;
        }
    }
};

namespace detail {

// smallest-denominator-ish dyadic rational strictly inside (lo, hi)
inline Rat rational_between(const QElem& lo, const QElem& hi)
{
    const FieldCtx& ctx = lo.ctx();
    for (BigInt scale = 1;; scale *= 2) {
        BigInt n = (scale * lo).floor() + 1;
        if (QElem(ctx, n, 0, scale) < hi) return Rat(n, scale);
    }
}

// Interior point of the cone, as close to the unit metric (rho = 1) as the cone allows.
inline Rat interior_point(const RatioCone& cone, const FieldCtx& ctx)
{
    const QElem one(ctx, 1);
    bool above = !cone.lower || *cone.lower < one;
    bool below = !cone.upper || one < *cone.upper;
    if (above && below) return 1;
    if (!above) {
        QElem hi = cone.upper ? std::min(*cone.upper, BigInt(2) * *cone.lower) : BigInt(2) * *cone.lower;
        return rational_between(*cone.lower, hi);
    }
    QElem lo = cone.lower ? std::max(*cone.lower, Rat(1, 2) * *cone.upper) : Rat(1, 2) * *cone.upper;
    return rational_between(lo, *cone.upper);
}

}  // namespace detail

/// Metric realising u1^2/u2^2 = ratio. Irrational ratios need norm 1 and use
/// z = 1 + ratio, for which z / conj(z) = ratio.
inline std::optional<Metric> metric_for_ratio(const QElem& ratio)
{
    if (ratio.sign() <= 0) return std::nullopt;
    if (ratio.is_rational()) return Metric::rational_squares(ratio.as_rat(), 1);
    if (ratio.norm() != 1) return std::nullopt;
    return Metric::field_weight(ratio + BigInt(1));
}

/// Whether 1 attains the minimum length of I under u1^2/u2^2 = ratio.
inline bool verify_witness(const IdealForm& I, const QElem& ratio)
{
    auto u = metric_for_ratio(ratio);
    if (!u) return false;
    QElem sv = shortest_vector(module_of(I), *u);
    return u->sqlen(sv) == u->sqlen(QElem(I.ctx(), 1));
}

inline bool verify_witness(const IdealForm& I, const Rat& ratio)
{
    if (ratio <= 0) return false;
    return verify_witness(I, QElem::from_rats(I.ctx(), ratio));
}

struct ConeResult {
    bool feasible;
    RatioCone cone;
    std::optional<QElem> witness;  // rho = s/w; rational unless the cone is a single point
    bool interior = false;
    std::size_t g_size = 0;
};

inline ConeResult cone_oracle(const IdealForm& I)
{
    const FieldCtx& ctx = I.ctx();
    ConeResult res{false, {}, std::nullopt};
    std::vector<GVector> G = enumerate_g(I);
    res.g_size = G.size();
    for (const GVector& gv : G) res.cone.add_constraint(gv.g1sq_minus_1);
    res.feasible = !res.cone.empty();
    if (!res.feasible) return res;

    // G only sees vectors shorter than 8/pi under the unit metric. Longer vectors
    // can still bound an open side of the cone, so the witness is refined with
    // the exact shortest vector at each trial ratio.
    RatioCone refined = res.cone;
    const QElem one(ctx, 1);
    for (int round = 0; round < 64 && !refined.empty(); ++round) {
        if (refined.degenerate()) {
            if (verify_witness(I, *refined.lower)) res.witness = *refined.lower;
            break;
        }
        Rat rho = detail::interior_point(refined, ctx);
        Metric u = Metric::rational_squares(rho, 1);
        QElem sv = shortest_vector(module_of(I), u);
        if (u.sqlen(sv) >= u.sqlen(one)) {
            res.witness = QElem::from_rats(ctx, rho);
            res.interior = true;
            break;
        }
        refined.add_constraint(sv * sv - BigInt(1));
    }
    return res;
}

// Hermite-constant table c_n = (n / gamma_n)^n for the dimensions where gamma_n is known.
inline const std::map<int, Rat>& hermite_table()
{
    static const std::map<int, Rat> table = {
        {2, Rat(3)},
        {3, Rat(27, 2)},
        {4, Rat(64)},
        {5, Rat(3125, 8)},
        {6, Rat(2187)},
        {7, Rat(823543, 64)},
        {8, Rat(65536)},
        {24, Rat(boost::multiprecision::pow(BigInt(6), 24))},
    };
    return table;
}

struct UnknownDimension : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// True when N(I^-1) > sqrt(|D| / c_n), which rules out 1-reducedness.
inline bool hermite_excludes(int n, const BigInt& abs_disc, const BigInt& norm_inv)
{
    const auto& table = hermite_table();
    auto it = table.find(n);
    if (it == table.end()) throw UnknownDimension("no Hermite constant for dimension " + std::to_string(n));
    if (abs_disc < 1 || norm_inv < 1) throw std::invalid_argument("discriminant and norm must be positive");
    return Rat(norm_inv * norm_inv) * it->second > Rat(abs_disc);
}

struct ClassificationRecord {
    IdealForm ideal;
    bool closed_form;
    bool b_criterion;
    bool cone_oracle;
    QElem bmin4, bmax4;
    std::optional<QElem> witness_ratio;
    bool witness_interior = false;
    bool witness_verified = false;
    bool methods_agree;
    bool boundary;

    bool one_reduced() const { return closed_form; }
};

struct ClassificationFailure : std::logic_error {
    ClassificationFailure(const std::string& what, ClassificationRecord rec)
        : std::logic_error(what), record(std::move(rec))
    {
    }
    ClassificationRecord record;
};

struct MethodsDisagree : ClassificationFailure {
    using ClassificationFailure::ClassificationFailure;
};

struct WitnessRejected : ClassificationFailure {
    using ClassificationFailure::ClassificationFailure;
};

inline ClassificationRecord classify_unchecked(const IdealForm& I)
{
    BCriterionResult bc = b_criterion(I);
    ConeResult co = cone_oracle(I);
    bool cf = closed_form_is_onereduced(I);
    ClassificationRecord rec{I, cf, bc.one_reduced, co.feasible, bc.bmin4, bc.bmax4, co.witness,
                             co.interior, false, cf == bc.one_reduced && cf == co.feasible, on_boundary(I)};
    if (rec.witness_ratio) rec.witness_verified = verify_witness(I, *rec.witness_ratio);
    return rec;
}

/// Runs all three methods; disagreement or an unverifiable witness is a defect and throws.
inline ClassificationRecord classify(const IdealForm& I)
{
    ClassificationRecord rec = classify_unchecked(I);
    std::ostringstream os;
    os << I << ": closed_form=" << rec.closed_form << " b_criterion=" << rec.b_criterion
       << " cone_oracle=" << rec.cone_oracle;
    if (!rec.methods_agree) throw MethodsDisagree("methods disagree on " + os.str(), rec);
    if (rec.cone_oracle && !(rec.witness_ratio && rec.witness_verified))
        throw WitnessRejected("no verified metric witness for " + os.str(), rec);
    return rec;
}

}  // namespace onered

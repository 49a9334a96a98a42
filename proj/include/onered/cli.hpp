#pragma once

// Command-line driver. run_cli is the whole program; tools/onered.cpp only
// forwards argv. Exit codes: 0 ok, 2 bad input, 3 a mathematical property failed.

#include "onered/io.hpp"
#include "onered/regions.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <iomanip>
#include <thread>

namespace onered {

inline constexpr int exit_ok = 0;
inline constexpr int exit_input = 2;
inline constexpr int exit_property = 3;

struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class Method { All, Closed, BCrit, Cone };
enum class Format { Json, Csv, Text };

struct RunConfig {
    std::string command;
    long long disc = 0;
    long long disc_from = 0, disc_to = -1;
    std::string ideal;                 // "a,b"
    std::vector<std::string> gens;     // two "p q r" triples
    std::string metric = "1,1";        // "s,w": u1^2 = s, u2^2 = w
    Method method = Method::All;
    Format format = Format::Json;
    bool fundamental_only = false;
    unsigned jobs = 1;
};

inline bool is_squarefree(long long n)
{
    for (long long p = 2; p * p <= n; ++p) {
        if (n % (p * p) == 0) return false;
        if (n % p == 0) n /= p;
    }
    return true;
}

/// Discriminant of a quadratic field: squarefree d = 1 mod 4, or 4d with squarefree d = 2, 3 mod 4.
inline bool is_fundamental(long long disc)
{
    if (disc <= 1) return false;
    if (disc % 4 == 1) return is_squarefree(disc);
    if (disc % 4 != 0) return false;
    long long d = disc / 4;
    return (d % 4 == 2 || d % 4 == 3) && is_squarefree(d);
}

namespace detail {

inline std::pair<std::string, std::string> split_pair(const std::string& text, const char* what)
{
    auto comma = text.find(',');
    if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos)
        throw InputError(std::string(what) + " must look like x,y; got '" + text + "'");
    return {text.substr(0, comma), text.substr(comma + 1)};
}

inline IdealForm parse_ideal(const FieldCtx& ctx, const std::string& text)
{
    auto [a, b] = split_pair(text, "--ideal");
    try {
        return IdealForm(ctx, BigInt(a), BigInt(b));
    } catch (const std::runtime_error&) {
        throw InputError("--ideal entries must be integers; got '" + text + "'");
    }
}

inline Metric parse_metric(const std::string& text)
{
    auto [s, w] = split_pair(text, "--metric");
    Rat rs = parse_rat(s), rw = parse_rat(w);
    if (rs <= 0 || rw <= 0) throw InputError("--metric entries must be positive");
    return Metric::rational_squares(rs, rw);
}

inline std::vector<long long> disc_range(const RunConfig& cfg)
{
    if (cfg.disc_to < cfg.disc_from) throw InputError("empty discriminant range");
    std::vector<long long> out;
    for (long long d = std::max(cfg.disc_from, 1LL); d <= cfg.disc_to; ++d) {
        if (!FieldCtx::is_valid(BigInt(d))) continue;
        if (cfg.fundamental_only && !is_fundamental(d)) continue;
        out.push_back(d);
    }
    if (out.empty()) throw InputError("no valid discriminant in range");
    return out;
}

/// Runs work(i) for i in [0, n) on up to `jobs` threads; the caller keeps results indexed by i.
template <class F>
void parallel_for(std::size_t n, unsigned jobs, F&& work)
{
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (jobs == 1) {
        for (std::size_t i = 0; i < n; ++i) work(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) work(i);
        });
    for (auto& th : pool) th.join();
}

inline std::string approx_str(double x)
{
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

inline std::string reproducer(const IdealForm& I)
{
    std::ostringstream os;
    os << "onered classify --disc " << I.disc() << " --ideal " << I.a() << ',' << I.b();
    return os.str();
}

}  // namespace detail

inline int cmd_enumerate(const RunConfig& cfg, std::ostream& out)
{
    FieldCtx ctx(BigInt(cfg.disc));
    auto ideals = enumerate_reduced(ctx);
    if (cfg.format == Format::Csv) out << "disc,a,b,c,approx_f\n";
    for (const IdealForm& I : ideals) {
        switch (cfg.format) {
        case Format::Json: out << ideal_to_json(I).dump() << '\n'; break;
        case Format::Csv:
            out << I.disc() << ',' << I.a() << ',' << I.b() << ',' << I.c() << ','
                << detail::approx_str(I.f().approx()) << '\n';
            break;
        case Format::Text: out << I << "  f ~ " << detail::approx_str(I.f().approx()) << '\n'; break;
        }
    }
    return exit_ok;
}

inline int cmd_classify(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    FieldCtx ctx(BigInt(cfg.disc));
    std::vector<IdealForm> ideals;
    if (cfg.ideal.empty())
        ideals = enumerate_reduced(ctx);
    else
        ideals.push_back(detail::parse_ideal(ctx, cfg.ideal));

    std::size_t one_reduced = 0;
    bool failed = false;
    for (const IdealForm& I : ideals) {
        json j;
        bool verdict = false;
        if (cfg.method == Method::All) {
            ClassificationRecord rec = classify_unchecked(I);
            j = record_to_json(rec);
            verdict = rec.one_reduced();
            if (!rec.methods_agree || (rec.cone_oracle && !rec.witness_verified)) {
                failed = true;
                err << "FAIL methods disagree or witness rejected: " << detail::reproducer(I) << '\n';
            }
        } else {
            j = ideal_to_json(I);
            const char* name = "";
            switch (cfg.method) {
            case Method::Closed: name = "closed_form", verdict = closed_form_is_onereduced(I); break;
            case Method::BCrit: name = "b_criterion", verdict = b_criterion(I).one_reduced; break;
            case Method::Cone: name = "cone_oracle", verdict = cone_oracle(I).feasible; break;
            case Method::All: break;
            }
            j[name] = verdict;
            j["one_reduced"] = verdict;
            j["boundary"] = on_boundary(I);
        }
        one_reduced += verdict;
        switch (cfg.format) {
        case Format::Json: out << j.dump() << '\n'; break;
        case Format::Csv:
        case Format::Text:
            out << I.disc() << ',' << I.a() << ',' << I.b() << ',' << (verdict ? "true" : "false") << ','
                << (j["boundary"].get<bool>() ? "boundary" : "") << '\n';
            break;
        }
    }
    out << "reduced=" << ideals.size() << " one_reduced=" << one_reduced << '\n';
    return failed ? exit_property : exit_ok;
}

inline int cmd_reduce(const RunConfig& cfg, std::ostream& out)
{
    FieldCtx ctx(BigInt(cfg.disc));
    Metric u = detail::parse_metric(cfg.metric);
    if (cfg.ideal.empty() == cfg.gens.empty()) throw InputError("give exactly one of --ideal or --gens");
    std::optional<Module2> m;
    if (!cfg.ideal.empty()) {
        m = module_of(detail::parse_ideal(ctx, cfg.ideal));
    } else {
        if (cfg.gens.size() != 2) throw InputError("--gens takes two 'p q r' triples");
        m = Module2(QElem::from_triple(ctx, cfg.gens[0]), QElem::from_triple(ctx, cfg.gens[1]));
    }
    ReductionResult r = reduce_ideal(*m, u);
    json j = reduction_to_json(r);
    j["one_reduced"] = closed_form_is_onereduced(r.output);
    if (cfg.format == Format::Json) {
        out << j.dump() << '\n';
    } else {
        out << "f = " << r.f << "\noutput = " << r.output << "\none_reduced = " << std::boolalpha
            << j["one_reduced"].get<bool>() << "\napprox_distance = " << detail::approx_str(r.distance_diag)
            << '\n';
    }
    return exit_ok;
}

struct VerifyTally {
    std::size_t ideals = 0, one_reduced = 0, witnesses = 0, reductions = 0, region_checks = 0;
    std::vector<std::string> failures;

    void merge(const VerifyTally& o)
    {
        ideals += o.ideals;
        one_reduced += o.one_reduced;
        witnesses += o.witnesses;
        reductions += o.reductions;
        region_checks += o.region_checks;
        failures.insert(failures.end(), o.failures.begin(), o.failures.end());
    }
};

/// Every property check the verify command runs on a single reduced ideal.
inline void verify_ideal(const IdealForm& I, VerifyTally& t)
{
    auto fail = [&](const std::string& what) { t.failures.push_back("FAIL " + what + ": " + detail::reproducer(I)); };
    ++t.ideals;

    ClassificationRecord rec = classify_unchecked(I);
    t.one_reduced += rec.one_reduced();
    if (!rec.methods_agree) fail("methods disagree");
    if (rec.cone_oracle) {
        if (!rec.witness_ratio || !rec.witness_verified) fail("no verified witness");
        else ++t.witnesses;
    }
    if (hermite_excludes(2, I.disc(), I.a()) && rec.one_reduced()) fail("Hermite bound violated");
    if (3 * I.a() * I.a() > I.disc() && rec.closed_form) fail("1-reduced with 3a^2 > disc");

    const Module2 m = module_of(I);
    if (!is_one_minimal(m)) fail("1 not minimal in enumerated ideal");

    const Metric unit = Metric::unit();
    const QElem best = unit.sqlen(shortest_vector(m, unit));
    for (ShortRegion r : short_regions(I)) {
        ++t.region_checks;
        if (unit.sqlen(predicted_shortest(I, r)) != best) fail(std::string("region ") + to_string(r) + " shortest");
        QElem mu = gram_mu(region_basis(I, r));
        const QElem half(I.ctx(), 1, 0, 2);
        if (mu > half || -mu > half)
            fail(std::string("region ") + to_string(r) + " basis |mu| > 1/2");
    }

    for (const Metric& u : {unit, Metric::rational_squares(3, 1)}) {
        ++t.reductions;
        try {
            ReductionResult res = reduce_ideal(m, u);
            if (!closed_form_is_onereduced(res.output)) fail("reduction output not 1-reduced");
            const QElem one(I.ctx(), 1);
            if (u.is_unit() && (res.f == one || res.f == -one) && !(res.output == I))
                fail("reduction moved a fixed point");
        } catch (const std::exception& e) {
            fail(std::string("reduction threw: ") + e.what());
        }
    }
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out)
{
    std::vector<long long> discs = detail::disc_range(cfg);
    std::vector<VerifyTally> per(discs.size());
    detail::parallel_for(discs.size(), cfg.jobs, [&](std::size_t i) {
        FieldCtx ctx{BigInt(discs[i])};
        for (const IdealForm& I : enumerate_reduced(ctx)) verify_ideal(I, per[i]);
    });
    VerifyTally total;
    for (const auto& t : per) total.merge(t);
    for (const auto& f : total.failures) out << f << '\n';
    out << "discs=" << discs.size() << " ideals=" << total.ideals << " one_reduced=" << total.one_reduced
        << " not_one_reduced=" << total.ideals - total.one_reduced << " witnesses=" << total.witnesses
        << " region_checks=" << total.region_checks << " reductions=" << total.reductions
        << " failures=" << total.failures.size() << '\n';
    return total.failures.empty() ? exit_ok : exit_property;
}

inline int cmd_stats(const RunConfig& cfg, std::ostream& out)
{
    std::vector<long long> discs = detail::disc_range(cfg);
    std::vector<std::string> rows(discs.size());
    detail::parallel_for(discs.size(), cfg.jobs, [&](std::size_t i) {
        FieldCtx ctx{BigInt(discs[i])};
        std::size_t n = 0, one = 0;
        BigInt max_a = 0;
        for (const IdealForm& I : enumerate_reduced(ctx)) {
            ++n;
            one += closed_form_is_onereduced(I);
            max_a = std::max(max_a, I.a());
        }
        std::ostringstream os;
        os << discs[i] << ',' << n << ',' << one << ',' << n - one << ',' << max_a << ','
           << detail::approx_str(std::sqrt(static_cast<double>(discs[i]) / 3.0));
        rows[i] = os.str();
    });
    out << "disc,n_reduced,n_one_reduced,n_not_one_reduced,max_inverse_norm,bound_sqrt_disc_over_3\n";
    for (const auto& r : rows) out << r << '\n';
    return exit_ok;
}

inline int run_config(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    if (cfg.command == "enumerate") return cmd_enumerate(cfg, out);
    if (cfg.command == "classify") return cmd_classify(cfg, out, err);
    if (cfg.command == "reduce") return cmd_reduce(cfg, out);
    if (cfg.command == "verify") return cmd_verify(cfg, out);
    if (cfg.command == "stats") return cmd_stats(cfg, out);
    throw InputError("unknown command '" + cfg.command + "'");
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    CLI::App app{"Reduced and 1-reduced ideals of real quadratic fields"};
    app.require_subcommand(1);

    const std::map<std::string, Format> formats{{"json", Format::Json}, {"csv", Format::Csv}, {"text", Format::Text}};
    const std::map<std::string, Method> methods{
        {"all", Method::All}, {"closed", Method::Closed}, {"bcrit", Method::BCrit}, {"cone", Method::Cone}};

    auto* en = app.add_subcommand("enumerate", "List the reduced ideals (a, b) of one discriminant");
    en->add_option("--disc", cfg.disc, "Discriminant")->required();
    en->add_option("--format", cfg.format)->transform(CLI::CheckedTransformer(formats));

    auto* cl = app.add_subcommand("classify", "Decide 1-reducedness of reduced ideals");
    cl->add_option("--disc", cfg.disc, "Discriminant")->required();
    cl->add_option("--ideal", cfg.ideal, "Single ideal as a,b");
    cl->add_option("--method", cfg.method)->transform(CLI::CheckedTransformer(methods));
    cl->add_option("--format", cfg.format)->transform(CLI::CheckedTransformer(formats));

    auto* re = app.add_subcommand("reduce", "Reduce an (ideal, metric) pair to a 1-reduced ideal");
    re->add_option("--disc", cfg.disc, "Discriminant")->required();
    auto* ideal_opt = re->add_option("--ideal", cfg.ideal, "Ideal as a,b");
    re->add_option("--gens", cfg.gens, "Two generators, each 'p q r' for (p + q sqrt(disc)) / r")
        ->expected(2)
        ->excludes(ideal_opt);
    re->add_option("--metric", cfg.metric, "Squared weights s,w (rationals)");
    re->add_option("--format", cfg.format)->transform(CLI::CheckedTransformer(formats));

    for (auto* sub : {app.add_subcommand("verify", "Check every property over a discriminant range"),
                      app.add_subcommand("stats", "Per-discriminant counts as CSV")}) {
        sub->add_option("--disc-from", cfg.disc_from)->required();
        sub->add_option("--disc-to", cfg.disc_to)->required();
        sub->add_option("--jobs", cfg.jobs)->check(CLI::Range(1u, 1024u));
        sub->add_flag("--fundamental-only", cfg.fundamental_only);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return exit_input;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    try {
        return run_config(cfg, out, err);
    } catch (const InternalInvariantViolation& e) {
        err << "internal invariant violated: " << e.what() << '\n';
        return exit_property;
    } catch (const ClassificationFailure& e) {
        err << e.what() << '\n';
        return exit_property;
    } catch (const std::invalid_argument& e) {
        err << e.what() << '\n';
        return exit_input;
    } catch (const ArithmeticError& e) {
        err << e.what() << '\n';
        return exit_input;
    }
}

}  // namespace onered

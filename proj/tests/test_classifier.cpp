#include "support.hpp"

#include <boost/math/constants/constants.hpp>
#include <gtest/gtest.h>

using namespace onered;
using onered::testing::Float;
using onered::testing::to_float;

namespace {

const FieldCtx d12{BigInt(12)};
const FieldCtx d73{BigInt(73)};
const FieldCtx d2044{BigInt(2044)};

template <class F>
void for_each_ideal(long long lo, long long hi, F&& fn)
{
    for (long long D = lo; D <= hi; ++D) {
        if (!FieldCtx::is_valid(BigInt(D))) continue;
        for (const IdealForm& I : enumerate_reduced(FieldCtx(BigInt(D)))) fn(I);
    }
}

TEST(ClosedForm, Examples)
{
    IdealForm a = make_ideal(d2044, 25, 38);
    EXPECT_TRUE(closed_form_is_onereduced(a));
    EXPECT_TRUE(on_boundary(a));
    EXPECT_EQ(13 * 13 + 3 * 25 * 25, 2044);

    IdealForm b = make_ideal(d12, 2, 2);
    EXPECT_TRUE(closed_form_is_onereduced(b));
    EXPECT_TRUE(on_boundary(b));

    IdealForm c = make_ideal(d73, 6, 5);
    EXPECT_FALSE(closed_form_is_onereduced(c));
    EXPECT_FALSE(on_boundary(c));
}

TEST(ClosedForm, BoundaryMeansNormMinusThreeQuarters)
{
    for_each_ideal(5, 3000, [](const IdealForm& I) {
        Rat n = (I.f() - QElem(I.ctx(), 1, 0, 2)).norm();
        EXPECT_EQ(on_boundary(I), n == Rat(-3, 4)) << I;
        EXPECT_EQ(closed_form_is_onereduced(I), n <= Rat(-3, 4)) << I;
    });
}

TEST(GSet, SymmetricCaseHasUnitB)
{
    // f - 1 in (12, 2, 2): (f - 1)^2 - 1 = -sqrt(3)/2 is purely irrational
    IdealForm I = make_ideal(d12, 2, 2);
    auto gv = make_gvector(I.f() - BigInt(1));
    ASSERT_TRUE(gv);
    EXPECT_EQ((gv->g * gv->g).trace(), Rat(2));
    EXPECT_EQ(b_value4(*gv), QElem(d12, 1));
}

TEST(GSet, MembershipConditions)
{
    EXPECT_FALSE(make_gvector(QElem(d73, 1)));       // sigma(1)^2 - 1 = 0
    EXPECT_FALSE(make_gvector(QElem(d73, 1, 0, 2)));  // both embeddings inside
    EXPECT_FALSE(make_gvector(QElem(d73, 0, 1)));     // both outside
    GVector bogus{QElem(d73, 1), QElem(d73, 3), GSide::G1};
    EXPECT_THROW(b_value4(bogus), NotInG);
}

/// B^4 of 1 - f and of f against the expressions obtained by expanding the embeddings by hand.
TEST(BValue, ClosedFormsForOneMinusFAndF)
{
    std::size_t hits = 0;
    for_each_ideal(5, 2000, [&](const IdealForm& I) {
        const FieldCtx& ctx = I.ctx();
        const QElem r = QElem::sqrt_disc(ctx), b(ctx, I.b()), a4(ctx, 4 * I.a()), a2(ctx, 2 * I.a());
        if (auto gv = make_gvector(QElem(ctx, 1) - I.f())) {
            ++hits;
            QElem expect = (r + b) * (a4 - b - r) / ((r - b) * (a4 - b + r));
            EXPECT_EQ(b_value4(*gv), expect) << I;
        }
        if (auto gv = make_gvector(I.f())) {
            ++hits;
            QElem expect = (a2 + b + r) * (b + r - a2) / ((a2 + b - r) * (a2 - b + r));
            EXPECT_EQ(b_value4(*gv), expect) << I;
        }
    });
    EXPECT_GT(hits, 100u);
}

TEST(BValue, MatchesFloatEvaluation)
{
    std::mt19937_64 rng(31);
    for (int i = 0; i < 500; ++i) {
        IdealForm I = onered::testing::random_ideal(rng, 5, 3000);
        for (const GVector& gv : enumerate_g(I)) {
            Float s = to_float(gv.g), t = onered::testing::conj_float(gv.g);
            Float expect = -(s * s - 1) / (t * t - 1);
            EXPECT_LT(abs(to_float(b_value4(gv)) - expect), Float(1e-50) * (1 + abs(expect)));
        }
    }
}

TEST(EnumerateG, MatchesFloatScan)
{
    const Float limit = 64 / (boost::math::constants::pi<Float>() * boost::math::constants::pi<Float>());
    std::mt19937_64 rng(32);
    for (int i = 0; i < 200; ++i) {
        IdealForm I = onered::testing::random_ideal(rng, 5, 3000);
        std::set<std::pair<long, long>> expect;
        Float f = to_float(I.f()), fc = onered::testing::conj_float(I.f());
        for (long n = 1; n <= 40; ++n)
            for (long m = -200; m <= 200; ++m) {
                Float s = m + n * f, t = m + n * fc;
                if ((s * s - 1) * (t * t - 1) < 0 && s * s + t * t < limit) expect.emplace(m, n);
            }
        std::set<std::pair<long, long>> got;
        for (const GVector& gv : enumerate_g(I)) {
            // g = m + n f  =>  n = 2a * irrational part
            BigInt n = BigInt(2 * I.a() * gv.g.irrational_part());
            BigInt m = BigInt(gv.g.rational_part() - Rat(n * I.b(), 2 * I.a()));
            got.emplace(m.convert_to<long>(), n.convert_to<long>());
        }
        EXPECT_EQ(got, expect) << I;
    }
}

TEST(BCriterion, Examples)
{
    BCriterionResult a = b_criterion(make_ideal(d73, 1, 7));
    EXPECT_TRUE(a.one_reduced);
    EXPECT_TRUE(a.one_is_shortest);

    BCriterionResult b = b_criterion(make_ideal(d73, 6, 5));
    EXPECT_FALSE(b.one_reduced);
    EXPECT_GT(b.bmin4, b.bmax4);

    BCriterionResult c = b_criterion(make_ideal(d12, 2, 2));
    EXPECT_TRUE(c.one_reduced);
    EXPECT_EQ(c.bmin4, c.bmax4);
    EXPECT_EQ(c.bmin4, QElem(d12, 1));

    BCriterionResult d = b_criterion(make_ideal(d2044, 25, 38));
    EXPECT_TRUE(d.one_reduced);
    EXPECT_EQ(d.bmin4, d.bmax4);
}

TEST(BCriterion, AgreesWithClosedForm)
{
    for_each_ideal(5, 3000, [](const IdealForm& I) {
        BCriterionResult r = b_criterion(I);
        EXPECT_EQ(r.one_reduced, closed_form_is_onereduced(I)) << I;
        EXPECT_GT(r.bmin4.sign(), 0);
        EXPECT_GT(r.bmax4.sign(), 0);
    });
}

TEST(BCriterion, EmptySidesKeepDefaults)
{
    for_each_ideal(5, 2000, [](const IdealForm& I) {
        bool g1 = false, g2 = false;
        for (const GVector& gv : enumerate_g(I)) (gv.side == GSide::G1 ? g1 : g2) = true;
        BCriterionResult r = b_criterion(I);
        if (!g1) EXPECT_EQ(r.bmin4, default_bmin4(I.ctx())) << I;
        if (!g2) EXPECT_EQ(r.bmax4, default_bmax4(I.ctx())) << I;
    });
}

TEST(RatioCone, Bounds)
{
    // constraint rho * x + x' >= 0: x > 0 raises the floor to -x'/x, x < 0 caps rho there
    const QElem r = QElem::sqrt_disc(d73);
    RatioCone c;
    EXPECT_FALSE(c.empty());
    c.add_constraint(r);
    ASSERT_TRUE(c.lower);
    EXPECT_EQ(*c.lower, QElem(d73, 1));
    EXPECT_FALSE(c.upper);

    c.add_constraint(r - BigInt(3));  // floor (3 + r) / (r - 3) > 2
    EXPECT_EQ(*c.lower, (r + BigInt(3)) / (r - BigInt(3)));
    EXPECT_FALSE(c.empty());

    c.add_constraint(-r);  // cap at 1
    EXPECT_TRUE(c.empty());

    RatioCone d;
    d.add_constraint(r);
    d.add_constraint(-r);
    EXPECT_TRUE(d.degenerate());
    EXPECT_FALSE(d.empty());
}

TEST(ConeOracle, Examples)
{
    // strict interior: a rational witness
    ConeResult a = cone_oracle(make_ideal(d73, 1, 7));
    EXPECT_TRUE(a.feasible);
    ASSERT_TRUE(a.witness);
    EXPECT_TRUE(a.witness->is_rational());
    EXPECT_TRUE(a.interior);
    EXPECT_TRUE(verify_witness(make_ideal(d73, 1, 7), *a.witness));

    // boundary: the cone is a single irrational ratio
    IdealForm I = make_ideal(d2044, 25, 38);
    ConeResult b = cone_oracle(I);
    EXPECT_TRUE(b.feasible);
    EXPECT_TRUE(b.cone.degenerate());
    ASSERT_TRUE(b.witness);
    EXPECT_FALSE(b.interior);
    EXPECT_EQ(b.witness->norm(), Rat(1));
    EXPECT_TRUE(verify_witness(I, *b.witness));

    ConeResult c = cone_oracle(make_ideal(d73, 6, 7));
    EXPECT_FALSE(c.feasible);
    EXPECT_FALSE(c.witness);
}

TEST(VerifyWitness, Examples)
{
    EXPECT_TRUE(verify_witness(make_ideal(d73, 1, 7), Rat(1)));
    IdealForm I = make_ideal(d2044, 25, 38);
    EXPECT_FALSE(verify_witness(I, Rat(1000)));
    EXPECT_FALSE(verify_witness(I, Rat(1, 1000)));
    EXPECT_FALSE(verify_witness(I, Rat(0)));
    EXPECT_FALSE(verify_witness(make_ideal(d73, 6, 5), Rat(1)));
}

TEST(ConeOracle, WitnessesVerifyAndNoRatioWorksOtherwise)
{
    std::mt19937_64 rng(33);
    for_each_ideal(5, 2000, [&](const IdealForm& I) {
        ConeResult c = cone_oracle(I);
        EXPECT_EQ(c.feasible, closed_form_is_onereduced(I)) << I;
        if (c.feasible) {
            ASSERT_TRUE(c.witness) << I;
            EXPECT_TRUE(verify_witness(I, *c.witness)) << I;
        } else {
            Rat rho(onered::testing::random_int(rng, 1, 400), onered::testing::random_int(rng, 1, 400));
            EXPECT_FALSE(verify_witness(I, rho)) << I << " rho=" << rho;
        }
    });
}

/// Float-only search: a ratio on a log grid under which 1 is strictly shortest.
bool float_grid_finds_metric(const IdealForm& I)
{
    Float f = to_float(I.f()), fc = onered::testing::conj_float(I.f());
    for (int k = -60; k <= 60; ++k) {
        Float rho = pow(Float(2), Float(k) / 6);
        bool ok = true;
        for (long n = 1; n <= 12 && ok; ++n)
            for (long m = -60; m <= 60 && ok; ++m) {
                Float s = m + n * f, t = m + n * fc;
                if (rho * s * s + t * t < rho + 1 - Float(1e-40)) ok = false;
            }
        if (ok) return true;
    }
    return false;
}

TEST(Classify, FloatGridWitnessImpliesOneReduced)
{
    std::size_t found = 0;
    for_each_ideal(5, 600, [&](const IdealForm& I) {
        if (float_grid_finds_metric(I)) {
            ++found;
            EXPECT_TRUE(closed_form_is_onereduced(I)) << I;
        }
    });
    EXPECT_GT(found, 1000u);
}

TEST(HermiteExcludes, Examples)
{
    EXPECT_TRUE(hermite_excludes(2, BigInt(73), BigInt(6)));
    EXPECT_FALSE(hermite_excludes(2, BigInt(12), BigInt(2)));
    EXPECT_TRUE(hermite_excludes(3, BigInt(27), BigInt(2)));
    EXPECT_THROW(hermite_excludes(9, BigInt(27), BigInt(2)), UnknownDimension);
    EXPECT_THROW(hermite_excludes(2, BigInt(0), BigInt(2)), std::invalid_argument);
}

TEST(HermiteExcludes, TableMatchesKnownHermiteConstants)
{
    // gamma_n^n for the dimensions where gamma_n is known exactly
    const std::map<int, Rat> gamma_pow{{2, Rat(4, 3)}, {3, Rat(2)},   {4, Rat(4)},   {5, Rat(8)},
                                       {6, Rat(64, 3)}, {7, Rat(64)}, {8, Rat(256)},
                                       {24, Rat(boost::multiprecision::pow(BigInt(4), 24))}};
    ASSERT_EQ(hermite_table().size(), gamma_pow.size());
    for (const auto& [n, g] : gamma_pow) {
        Rat nn = Rat(boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(n)));
        EXPECT_EQ(hermite_table().at(n), nn / g) << n;
    }
}

TEST(HermiteExcludes, ConsistentWithClassification)
{
    for_each_ideal(5, 3000, [](const IdealForm& I) {
        bool excluded = hermite_excludes(2, I.disc(), I.a());
        EXPECT_EQ(excluded, 3 * I.a() * I.a() > I.disc());
        if (excluded) EXPECT_FALSE(closed_form_is_onereduced(I)) << I;
    });
}

TEST(Classify, SeventyThree)
{
    int yes = 0;
    for (const IdealForm& I : enumerate_reduced(d73)) {
        ClassificationRecord r = classify(I);
        EXPECT_TRUE(r.methods_agree);
        yes += r.one_reduced();
        EXPECT_EQ(r.one_reduced(), I.a() != 6) << I;
        EXPECT_EQ(r.witness_ratio.has_value(), r.cone_oracle);
    }
    EXPECT_EQ(yes, 7);
}

TEST(Classify, BoundaryAndSmallExamples)
{
    ClassificationRecord a = classify(make_ideal(d12, 2, 2));
    EXPECT_TRUE(a.one_reduced());
    EXPECT_TRUE(a.boundary);
    EXPECT_TRUE(a.witness_verified);
    EXPECT_EQ(a.bmin4, a.bmax4);

    ClassificationRecord b = classify(make_ideal(FieldCtx(BigInt(5)), 1, 1));
    EXPECT_TRUE(b.one_reduced());
    EXPECT_FALSE(b.boundary);
}

TEST(Classify, AllMethodsAgreeOnSweep)
{
    for_each_ideal(5, 2500, [](const IdealForm& I) {
        ClassificationRecord r = classify_unchecked(I);
        EXPECT_TRUE(r.methods_agree) << I;
        EXPECT_EQ(r.witness_ratio.has_value(), r.cone_oracle) << I;
        if (r.cone_oracle) EXPECT_TRUE(r.witness_verified) << I;
    });
}

}  // namespace

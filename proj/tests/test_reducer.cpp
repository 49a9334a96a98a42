#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace onered;

namespace {

const FieldCtx d12{BigInt(12)};
const FieldCtx d73{BigInt(73)};

bool is_plus_minus_one(const QElem& x)
{
    const QElem one(x.ctx(), 1);
    return x == one || x == -one;
}

TEST(ReduceIdeal, FixedPoint)
{
    IdealForm I = make_ideal(d73, 1, 7);
    ReductionResult r = reduce_ideal(module_of(I), Metric::unit());
    EXPECT_TRUE(is_plus_minus_one(r.f));
    EXPECT_EQ(r.output, I);
    EXPECT_EQ(r.distance_diag, 0.0);
}

TEST(ReduceIdeal, OrderOfLargerDiscriminant)
{
    // 1 is shortest in Z + sqrt(73) Z; the canonical form of that order is over 292
    ReductionResult r = reduce_ideal(Module2(QElem(d73, 1), QElem::sqrt_disc(d73)), Metric::unit());
    EXPECT_TRUE(is_plus_minus_one(r.f));
    EXPECT_EQ(r.output.disc(), 292);
    EXPECT_EQ(r.output.a(), 1);
    EXPECT_EQ(r.output.b(), 16);
    EXPECT_TRUE(classify(r.output).one_reduced());
}

TEST(ReduceIdeal, NonOneReducedInputMoves)
{
    IdealForm I = make_ideal(d73, 6, 5);
    ReductionResult r = reduce_ideal(module_of(I), Metric::unit());
    EXPECT_FALSE(is_plus_minus_one(r.f));
    EXPECT_FALSE(r.output == I);
    EXPECT_TRUE(classify(r.output).one_reduced());
}

TEST(ReduceIdeal, SkewedMetricOnBoundaryIdeal)
{
    ReductionResult r = reduce_ideal(module_of(make_ideal(d12, 2, 2)), Metric::rational_squares(4, 1));
    EXPECT_NO_THROW(make_ideal(r.output.ctx(), r.output.a(), r.output.b()));
    EXPECT_TRUE(classify(r.output).one_reduced());
}

TEST(ReduceIdeal, DegenerateInputRejected)
{
    EXPECT_THROW(Module2(QElem(d73, 1), QElem(d73, 2)), DegenerateModule);
}

/// Random instance: a reduced ideal, a scaled copy, or an arbitrary pair of generators.
Module2 random_module(std::mt19937_64& rng)
{
    IdealForm I = onered::testing::random_ideal(rng, 5, 2000);
    const FieldCtx& ctx = I.ctx();
    switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
    case 0: return module_of(I);
    case 1: return scale_module(module_of(I), onered::testing::random_nonzero(rng, ctx, 30));
    default:
        for (;;) {
            QElem g = onered::testing::random_nonzero(rng, ctx, 30), h = onered::testing::random_nonzero(rng, ctx, 30);
            if ((g * h.conj()).irrational_part() != 0) return Module2(g, h);
        }
    }
}

TEST(ReduceIdeal, OutputIsOneReducedWithOneShortest)
{
    std::mt19937_64 rng(41);
    for (int i = 0; i < 400; ++i) {
        Module2 m = random_module(rng);
        Metric u = onered::testing::random_metric(rng);
        ReductionResult r = reduce_ideal(m, u);
        // brute force on an arbitrary (possibly very skewed) basis can miss the minimum
        EXPECT_LE(u.sqlen(r.f), u.sqlen(brute_shortest(m, u)));
        ClassificationRecord rec = classify(r.output);
        EXPECT_TRUE(rec.one_reduced()) << r.output;
        // the output is f^-1 m itself, with 1 as first basis vector
        Module2 J = scale_module(m, r.f.inv());
        NormalizedModule nm = normalize_module(J);
        EXPECT_EQ(nm.scale, 1);
        ASSERT_TRUE(nm.is_ideal_form());
        EXPECT_EQ(nm.ideal(), r.output);
    }
}

TEST(ReduceIdeal, FixedPointsAreKept)
{
    std::mt19937_64 rng(42);
    int fixed = 0;
    for (int i = 0; i < 400; ++i) {
        IdealForm I = onered::testing::random_ideal(rng, 5, 2000);
        Metric u = onered::testing::random_metric(rng);
        if (!is_plus_minus_one(shortest_vector(module_of(I), u))) continue;
        ++fixed;
        EXPECT_EQ(reduce_ideal(module_of(I), u).output, I);
    }
    EXPECT_GT(fixed, 20);
}

TEST(DistanceDiag, UnchangedWhenMetricIsRescaled)
{
    std::mt19937_64 rng(43);
    for (int i = 0; i < 200; ++i) {
        Module2 m = random_module(rng);
        Rat s = onered::testing::random_weight(rng), w = onered::testing::random_weight(rng);
        Rat t = onered::testing::random_weight(rng);
        ReductionResult a = reduce_ideal(m, Metric::rational_squares(s, w));
        ReductionResult b = reduce_ideal(m, Metric::rational_squares(s * t, w * t));
        EXPECT_EQ(a.f, b.f);
        EXPECT_NEAR(a.distance_diag, b.distance_diag, 1e-12);
    }
}

TEST(DistanceDiag, WithinLogDiscOnIdealsWithUnitMetric)
{
    // advisory bound; exercised here on the plain ideal/unit metric pairs
    for (long long D = 5; D <= 1500; ++D) {
        if (!FieldCtx::is_valid(BigInt(D))) continue;
        for (const IdealForm& I : enumerate_reduced(FieldCtx(BigInt(D)))) {
            ReductionResult r = reduce_ideal(module_of(I), Metric::unit());
            EXPECT_LE(r.distance_diag, std::log(static_cast<double>(D)) + 1e-9) << I;
        }
    }
}

}  // namespace

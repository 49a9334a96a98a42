#pragma once

// Shared generators and independent oracles for the test suites.

#include "onered/onered.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <random>

namespace onered::testing {

using Float = boost::multiprecision::cpp_bin_float_100;

inline Float to_float(const Rat& x)
{
    return Float(boost::multiprecision::numerator(x)) / Float(boost::multiprecision::denominator(x));
}

/// 100-digit value of (p + q sqrt D) / r, computed without the exact sign logic.
inline Float to_float(const QElem& x)
{
    return (Float(x.p()) + Float(x.q()) * sqrt(Float(x.ctx().disc()))) / Float(x.r());
}

inline Float conj_float(const QElem& x) { return to_float(x.conj()); }

inline long long random_disc(std::mt19937_64& rng, long long lo, long long hi)
{
    std::uniform_int_distribution<long long> d(lo, hi);
    for (;;) {
        long long x = d(rng);
        if (FieldCtx::is_valid(BigInt(x))) return x;
    }
}

inline BigInt random_int(std::mt19937_64& rng, long long lo, long long hi)
{
    return BigInt(std::uniform_int_distribution<long long>(lo, hi)(rng));
}

inline QElem random_elem(std::mt19937_64& rng, const FieldCtx& ctx, long long range = 50)
{
    return QElem(ctx, random_int(rng, -range, range), random_int(rng, -range, range), random_int(rng, 1, range));
}

inline QElem random_nonzero(std::mt19937_64& rng, const FieldCtx& ctx, long long range = 50)
{
    for (;;) {
        QElem x = random_elem(rng, ctx, range);
        if (!x.is_zero()) return x;
    }
}

/// Rational in [1/8, 8] with small denominator.
inline Rat random_weight(std::mt19937_64& rng)
{
    for (;;) {
        BigInt den = random_int(rng, 1, 16);
        BigInt num = random_int(rng, 1, 8 * 16);
        Rat x(num, den);
        if (x >= Rat(1, 8) && x <= 8) return x;
    }
}

inline Metric random_metric(std::mt19937_64& rng)
{
    return Metric::rational_squares(random_weight(rng), random_weight(rng));
}

/// Reduced ideal of a random valid discriminant in [lo, hi].
inline IdealForm random_ideal(std::mt19937_64& rng, long long lo, long long hi)
{
    FieldCtx ctx(BigInt(random_disc(rng, lo, hi)));
    auto all = enumerate_reduced(ctx);
    return all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
}

/// Reducedness read directly off the embeddings: sigma(f) > 1 and -1 < sigma'(f) < 0,
/// i.e. sqrt D > 2a - b, sqrt D > b, sqrt D < 2a + b, with every comparison squared by hand.
inline bool reduced_by_embeddings(long long D, long long a, long long b)
{
    if (a <= 0) return false;
    auto sqrt_gt = [D](long long t) { return t < 0 || t * t < D; };  // sqrt D > t
    auto sqrt_lt = [D](long long t) { return t > 0 && t * t > D; };  // sqrt D < t
    return sqrt_gt(2 * a - b) && sqrt_gt(b) && sqrt_lt(2 * a + b);
}

/// Every (a, b) with 4a | b^2 - D that is reduced, found by scanning a box far larger than needed.
inline std::vector<std::pair<long long, long long>> brute_reduced(long long D)
{
    std::vector<std::pair<long long, long long>> out;
    for (long long a = 1; a * a <= 4 * D; ++a)
        for (long long b = -4 * a; b <= 4 * a + 2 * D; ++b)
            if (((b * b - D) % (4 * a) == 0) && reduced_by_embeddings(D, a, b)) out.emplace_back(a, b);
    return out;
}

}  // namespace onered::testing

#pragma once

// Reduced fractional ideals I = Z + f Z with f = (b + sqrt(D)) / (2a), and
// general rank-2 Z-modules of the field.

#include "onered/exact_quad.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace onered {

struct IdealError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotIntegralC : IdealError {
    using IdealError::IdealError;
};
struct NotReduced : IdealError {
    using IdealError::IdealError;
};
struct DegenerateModule : IdealError {
    using IdealError::IdealError;
};
struct OneNotInModule : IdealError {
    using IdealError::IdealError;
};

namespace detail {

// |sqrt(D) - 2a| < b < sqrt(D), decided with integer square roots only.
inline bool reduced_bounds_hold(const BigInt& disc, const BigInt& a, const BigInt& b)
{
    if (a < 1 || b < 1) return false;
    BigInt s = isqrt(disc);
    // D is not a square, so sqrt(D) lies strictly in (s, s + 1).
    return b <= s && b + 2 * a >= s + 1 && 2 * a - b <= s;
}

inline BigInt mod_floor(const BigInt& x, const BigInt& m)
{
    BigInt r = x % m;
    if (r < 0) r += m;
    return r;
}

}  // namespace detail

/// Canonical descriptor of a reduced ideal: the unique f = (b + sqrt(D)) / (2a)
/// with sigma(f) > 1 and -1 < sigma'(f) < 0. N(I^-1) = a.
class IdealForm {
public:
    IdealForm(const FieldCtx& ctx, BigInt a, BigInt b) : ctx_(ctx), a_(std::move(a)), b_(std::move(b))
    {
        if (a_ < 1) throw IdealError("a must be positive");
        BigInt num = b_ * b_ - ctx_.disc();
        if (num % (4 * a_) != 0) throw NotIntegralC("4a does not divide b^2 - D");
        if (!detail::reduced_bounds_hold(ctx_.disc(), a_, b_))
            throw NotReduced("|sqrt(D) - 2a| < b < sqrt(D) fails");
    }

    const FieldCtx& ctx() const { return ctx_; }
    const BigInt& disc() const { return ctx_.disc(); }
    const BigInt& a() const { return a_; }
    const BigInt& b() const { return b_; }
    BigInt c() const { return (b_ * b_ - ctx_.disc()) / (4 * a_); }

    QElem f() const { return QElem(ctx_, b_, 1, 2 * a_); }

    /// N(I^-1).
    const BigInt& inverse_norm() const { return a_; }

    bool operator==(const IdealForm& o) const { return ctx_ == o.ctx_ && a_ == o.a_ && b_ == o.b_; }
    bool operator<(const IdealForm& o) const
    {
        if (ctx_.disc() != o.ctx_.disc()) return ctx_.disc() < o.ctx_.disc();
        return a_ != o.a_ ? a_ < o.a_ : b_ < o.b_;
    }

    friend std::ostream& operator<<(std::ostream& os, const IdealForm& I)
    {
        return os << "IdealForm(D=" << I.disc() << ", a=" << I.a_ << ", b=" << I.b_ << ")";
    }

private:
    FieldCtx ctx_;
    BigInt a_, b_;
};

inline IdealForm make_ideal(const FieldCtx& ctx, const BigInt& a, const BigInt& b)
{
    return IdealForm(ctx, a, b);
}

/// All reduced ideals of discriminant D, sorted by (a, b).
inline std::vector<IdealForm> enumerate_reduced(const FieldCtx& ctx)
{
    const BigInt& D = ctx.disc();
    const BigInt s = isqrt(D);
    const bool odd = (D % 2) != 0;
    std::vector<IdealForm> out;
    for (BigInt a = 1; a <= s; ++a) {
        BigInt lo = s + 1 - 2 * a;
        if (2 * a - s > lo) lo = 2 * a - s;
        if (lo < 1) lo = 1;
        if (((lo % 2) != 0) != odd) ++lo;
        const BigInt four_a = 4 * a;
        for (BigInt b = lo; b <= s; b += 2) {
            if ((b * b - D) % four_a == 0) out.emplace_back(ctx, a, b);
        }
    }
    return out;
}

/// The Z-module Z g + Z h.
class Module2 {
public:
    Module2(QElem g, QElem h) : g_(std::move(g)), h_(std::move(h))
    {
        if (!(g_.ctx() == h_.ctx())) throw ArithmeticError("generators from different fields");
        if (g_.p() * h_.q() - g_.q() * h_.p() == 0) throw DegenerateModule("generators are linearly dependent");
    }

    const QElem& g() const { return g_; }
    const QElem& h() const { return h_; }
    const FieldCtx& ctx() const { return g_.ctx(); }

private:
    QElem g_, h_;
};

inline Module2 module_of(const IdealForm& I) { return Module2(QElem(I.ctx(), 1), I.f()); }

inline Module2 scale_module(const Module2& m, const QElem& x)
{
    if (x.is_zero()) throw ArithmeticError("zero multiplier");
    return Module2(x * m.g(), x * m.h());
}

/// Hermite basis {k, (x + y sqrt(D)) / den}: k is the positive generator of the
/// rational points, y > 0 and 0 <= x < k * den.
struct HermiteBasis {
    Rat k;
    BigInt x, y, den;

    QElem second(const FieldCtx& ctx) const { return QElem(ctx, x, y, den); }
};

inline HermiteBasis hermite_basis(const Module2& m)
{
    using boost::multiprecision::gcd;
    using boost::multiprecision::lcm;
    const QElem& g = m.g();
    const QElem& h = m.h();
    BigInt den = lcm(g.r(), h.r());
    BigInt p1 = g.p() * (den / g.r()), q1 = g.q() * (den / g.r());
    BigInt p2 = h.p() * (den / h.r()), q2 = h.q() * (den / h.r());

    BigInt y = gcd(q1, q2);
    if (y == 0) throw DegenerateModule("generators are linearly dependent");
    // Bezout row u*row1 + v*row2 = (x, y)
    BigInt u0 = 1, u1 = 0, v0 = 0, v1 = 1, r0 = q1, r1 = q2;
    while (r1 != 0) {
        BigInt t = r0 / r1;
        BigInt tmp = r0 - t * r1;
        r0 = r1;
        r1 = tmp;
        tmp = u0 - t * u1;
        u0 = u1;
        u1 = tmp;
        tmp = v0 - t * v1;
        v0 = v1;
        v1 = tmp;
    }
    if (r0 < 0) {
        u0 = -u0;
        v0 = -v0;
    }
    BigInt x = u0 * p1 + v0 * p2;
    BigInt k0 = abs((q2 / y) * p1 - (q1 / y) * p2);
    if (k0 == 0) throw DegenerateModule("generators are linearly dependent");
    x = detail::mod_floor(x, k0);
    return HermiteBasis{Rat(k0, den), x, y, den};
}

/// Module that contains 1 but admits no reduced (a, b) representative.
struct RawForm {
    BigInt disc, a, b;  // -a < b <= a

    bool operator==(const RawForm&) const = default;
};

struct NormalizedModule {
    Rat scale;
    std::variant<IdealForm, RawForm> form;

    bool is_ideal_form() const { return std::holds_alternative<IdealForm>(form); }
    const IdealForm& ideal() const { return std::get<IdealForm>(form); }
};

/// Scales the module so its rational points are exactly Z and reads off
/// Z + tau Z as (b + sqrt(D')) / (2a), where D' = B^2 - 4AC comes from the
/// primitive minimal polynomial A t^2 + B t + C of tau. D' is D times a square
/// or D over a square; in the latter case the polynomial is scaled back so the
/// form is written over D (so (20, 2, 2) stays itself rather than (5, 1, 1)).
inline NormalizedModule normalize_module(const Module2& m)
{
    using boost::multiprecision::denominator;
    using boost::multiprecision::gcd;
    using boost::multiprecision::numerator;
    HermiteBasis hb = hermite_basis(m);
    // tau = (x + y sqrt D) / den / k = (x + y sqrt D) / k0 with k0 = k * den
    BigInt k0 = numerator(hb.k) * (hb.den / denominator(hb.k));
    // (k0 t - x)^2 = y^2 D
    BigInt A = k0 * k0;
    BigInt B = -2 * hb.x * k0;
    BigInt C = hb.x * hb.x - hb.y * hb.y * m.ctx().disc();
    BigInt g = gcd(gcd(A, B), C);
    A /= g;
    B /= g;
    C /= g;
    BigInt disc = B * B - 4 * A * C;
    if (m.ctx().disc() % disc == 0 && is_square(m.ctx().disc() / disc)) {
        BigInt lift = isqrt(m.ctx().disc() / disc);
        A *= lift;
        B *= lift;
        C *= lift;
        disc = m.ctx().disc();
    }
    BigInt two_a = 2 * A;
    BigInt s = isqrt(disc);
    BigInt b = s - detail::mod_floor(s + B, two_a);
    if (detail::reduced_bounds_hold(disc, A, b)) return {hb.k, IdealForm(FieldCtx(disc), A, b)};
    BigInt braw = detail::mod_floor(-B, two_a);
    if (braw > A) braw -= two_a;
    return {hb.k, RawForm{disc, A, braw}};
}

/// Whether 1 lies in m and is not divisible there by any integer d >= 2.
inline bool one_is_primitive(const Module2& m)
{
    using boost::multiprecision::numerator;
    Rat k = hermite_basis(m).k;
    if (numerator(k) != 1) throw OneNotInModule("1 is not an element of the module");
    return k == 1;
}

/// Whether m has no nonzero element g with |sigma(g)| < 1 and |sigma'(g)| < 1.
inline bool is_one_minimal(const Module2& m)
{
    HermiteBasis hb = hermite_basis(m);
    const FieldCtx& ctx = m.ctx();
    const QElem tau = hb.second(ctx);
    const QElem one(ctx, 1);
    const QElem kq = QElem::from_rats(ctx, hb.k);
    // |sigma(g) - sigma'(g)| = 2|j| y sqrt(D) / den < 2
    const BigInt jmax = (QElem(ctx, hb.den) / QElem(ctx, 0, hb.y)).floor();
    for (BigInt j = -jmax; j <= jmax; ++j) {
        QElem jt = j * tau;
        BigInt lo = ((-one - jt) / kq).floor();
        BigInt hi = ((one - jt) / kq).floor() + 1;
        for (BigInt i = lo; i <= hi; ++i) {
            QElem g = i * kq + jt;
            if (g.is_zero()) continue;
            if ((g - one).sign() < 0 && (g + one).sign() > 0 && (g - one).conj_sign() < 0 &&
                (g + one).conj_sign() > 0)
                return false;
        }
    }
    return true;
}

}  // namespace onered

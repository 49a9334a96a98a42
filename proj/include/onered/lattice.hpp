#pragma once

// Rank-2 lattices Phi(I) in R^2 under a diagonal metric u = (u1, u2):
// ||g||_u^2 = u1^2 sigma(g)^2 + u2^2 sigma'(g)^2. All reduction steps use
// exact comparisons of field elements.

#include "onered/ideal_model.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace onered {

struct DegenerateBasis : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

class Metric {
public:
    /// u1^2 = s, u2^2 = w.
    struct RationalSquares {
        Rat s, w;
    };
    /// u = (|sigma(y)|, |sigma'(y)|).
    struct FieldAbs {
        QElem y;
    };
    /// u1^2 = sigma(z), u2^2 = sigma'(z) for totally positive z.
    struct FieldWeight {
        QElem z;
    };

    static Metric unit() { return Metric(RationalSquares{1, 1}); }

    static Metric rational_squares(const Rat& s, const Rat& w)
    {
        if (s <= 0 || w <= 0) throw std::invalid_argument("metric weights must be positive");
        return Metric(RationalSquares{s, w});
    }

    static Metric field_abs(const QElem& y)
    {
        if (y.is_zero()) throw std::invalid_argument("field_abs metric needs a nonzero element");
        return Metric(FieldAbs{y});
    }

    static Metric field_weight(const QElem& z)
    {
        if (z.sign() <= 0 || z.conj_sign() <= 0)
            throw std::invalid_argument("field_weight metric needs a totally positive element");
        return Metric(FieldWeight{z});
    }

    bool is_unit() const
    {
        auto* rs = std::get_if<RationalSquares>(&kind_);
        return rs && rs->s == 1 && rs->w == 1;
    }

    const std::variant<RationalSquares, FieldAbs, FieldWeight>& kind() const { return kind_; }

    /// <g, h>_u = u1^2 sigma(gh) + u2^2 sigma'(gh).
    QElem inner(const QElem& g, const QElem& h) const
    {
        QElem x = g * h;
        return std::visit(
            [&](const auto& k) -> QElem {
                using K = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<K, RationalSquares>) {
                    Rat alpha = (k.s + k.w) * x.rational_part();
                    Rat beta = (k.s - k.w) * x.irrational_part();
                    return QElem::from_rats(x.ctx(), alpha, beta);
                } else if constexpr (std::is_same_v<K, FieldAbs>) {
                    return QElem::from_rats(x.ctx(), (k.y * k.y * x).trace());
                } else {
                    return QElem::from_rats(x.ctx(), (k.z * x).trace());
                }
            },
            kind_);
    }

    QElem sqlen(const QElem& g) const { return inner(g, g); }

    /// N(u)^2 = u1^2 u2^2.
    Rat norm_squared() const
    {
        return std::visit(
            [](const auto& k) -> Rat {
                using K = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<K, RationalSquares>) {
                    return k.s * k.w;
                } else if constexpr (std::is_same_v<K, FieldAbs>) {
                    Rat n = k.y.norm();
                    return n * n;
                } else {
                    return k.z.norm();
                }
            },
            kind_);
    }

    /// Floating approximation of (u1, u2), for diagnostics only.
    std::array<double, 2> approx_weights() const
    {
        return std::visit(
            [](const auto& k) -> std::array<double, 2> {
                using K = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<K, RationalSquares>) {
                    return {std::sqrt(k.s.template convert_to<double>()), std::sqrt(k.w.template convert_to<double>())};
                } else if constexpr (std::is_same_v<K, FieldAbs>) {
                    return {std::abs(k.y.approx()), std::abs(k.y.conj_approx())};
                } else {
                    return {std::sqrt(k.z.approx()), std::sqrt(k.z.conj_approx())};
                }
            },
            kind_);
    }

private:
    explicit Metric(std::variant<RationalSquares, FieldAbs, FieldWeight> k) : kind_(std::move(k)) {}

    std::variant<RationalSquares, FieldAbs, FieldWeight> kind_;
};

/// Metric-scaled lattice basis. The vectors are field elements viewed through Phi.
struct Basis2 {
    QElem v1, v2;
    Metric metric;
};

namespace detail {

inline void require_independent(const QElem& g, const QElem& h)
{
    if (g.p() * h.q() - g.q() * h.p() == 0) throw DegenerateBasis("basis vectors are linearly dependent");
}

// Total order used to pick one representative among equally short vectors:
// positive trace first, then smaller |q|, smaller |p|, positive q, smaller r.
inline bool tie_break_less(const QElem& x, const QElem& y)
{
    int tx = sgn(x.p()), ty = sgn(y.p());
    if (tx != ty) return tx > ty;
    BigInt qx = abs(x.q()), qy = abs(y.q());
    if (qx != qy) return qx < qy;
    BigInt px = abs(x.p()), py = abs(y.p());
    if (px != py) return px < py;
    if (sgn(x.q()) != sgn(y.q())) return sgn(x.q()) > sgn(y.q());
    return x.r() < y.r();
}

}  // namespace detail

/// Size-reduction coefficient mu = <v1, v2>_u / ||v1||_u^2.
inline QElem gram_mu(const Basis2& basis)
{
    return basis.metric.inner(basis.v1, basis.v2) / basis.metric.sqlen(basis.v1);
}

/// Lagrange-Gauss reduction: returns a basis with ||v1|| <= ||v2|| and |mu| <= 1/2,
/// so v1 is a shortest nonzero vector.
inline Basis2 gauss_reduce(const Basis2& basis)
{
    detail::require_independent(basis.v1, basis.v2);
    const Metric& u = basis.metric;
    QElem v1 = basis.v1, v2 = basis.v2;
    QElem g11 = u.sqlen(v1), g12 = u.inner(v1, v2), g22 = u.sqlen(v2);
    if (g22 < g11) {
        std::swap(v1, v2);
        std::swap(g11, g22);
    }
    for (;;) {
        BigInt m = (g12 / g11).round();
        if (m != 0) {
            v2 = v2 - m * v1;
            g22 = g22 - (2 * m) * g12 + (m * m) * g11;
            g12 = g12 - m * g11;
        }
        if (g22 < g11) {
            std::swap(v1, v2);
            std::swap(g11, g22);
            continue;
        }
        break;
    }
    return Basis2{v1, v2, u};
}

/// |mu| <= 1/2 and ||v1|| <= ||v2||; for rank 2 this is LLL with delta = 1.
inline bool is_lll_reduced(const Basis2& basis)
{
    detail::require_independent(basis.v1, basis.v2);
    const Metric& u = basis.metric;
    QElem g11 = u.sqlen(basis.v1), g12 = u.inner(basis.v1, basis.v2), g22 = u.sqlen(basis.v2);
    QElem two_g12 = BigInt(2) * g12;
    bool size_reduced = two_g12 <= g11 && -two_g12 <= g11;
    return size_reduced && g11 <= g22;
}

/// All vectors of minimal length in (m, u), both signs, in tie-break order.
inline std::vector<QElem> minimal_vectors(const Module2& m, const Metric& u)
{
    Basis2 red = gauss_reduce(Basis2{m.g(), m.h(), u});
    const QElem g11 = u.sqlen(red.v1);
    std::vector<QElem> out{red.v1, -red.v1};
    // In a reduced rank-2 basis every minimal vector is among +-v1, +-v2, +-(v1 +- v2).
    for (const QElem& c : {red.v2, red.v1 + red.v2, red.v1 - red.v2}) {
        if (u.sqlen(c) == g11) {
            out.push_back(c);
            out.push_back(-c);
        }
    }
    std::sort(out.begin(), out.end(), detail::tie_break_less);
    return out;
}

/// A shortest nonzero vector of (m, u), chosen deterministically among ties.
inline QElem shortest_vector(const Module2& m, const Metric& u) { return minimal_vectors(m, u).front(); }

/// Exhaustive minimum over coefficient vectors in [-bound, bound]^2; an oracle
/// independent of gauss_reduce.
inline QElem brute_shortest(const Module2& m, const Metric& u, long coeff_bound = 25)
{
    if (coeff_bound < 1) throw std::invalid_argument("coeff_bound must be at least 1");
    // Gram entries over a common denominator: G = (P + Q sqrt D) / R.
    const std::array<QElem, 3> gram{u.sqlen(m.g()), u.inner(m.g(), m.h()), u.sqlen(m.h())};
    BigInt R = boost::multiprecision::lcm(boost::multiprecision::lcm(gram[0].r(), gram[1].r()), gram[2].r());
    std::array<BigInt, 3> P, Q;
    for (int t = 0; t < 3; ++t) {
        P[t] = gram[t].p() * (R / gram[t].r());
        Q[t] = gram[t].q() * (R / gram[t].r());
    }
    auto sign_of = [&](const BigInt& p, const BigInt& q) { return QElem(m.ctx(), p, q).sign(); };

    bool have = false;
    BigInt bp, bq;
    std::optional<QElem> best;
    for (long i = -coeff_bound; i <= coeff_bound; ++i) {
        for (long j = -coeff_bound; j <= coeff_bound; ++j) {
            if (i == 0 && j == 0) continue;
            BigInt ii = i * i, ij = 2 * i * j, jj = j * j;
            BigInt vp = ii * P[0] + ij * P[1] + jj * P[2];
            BigInt vq = ii * Q[0] + ij * Q[1] + jj * Q[2];
            int cmp = have ? sign_of(vp - bp, vq - bq) : -1;
            if (cmp > 0) continue;
            QElem v = BigInt(i) * m.g() + BigInt(j) * m.h();
            if (cmp < 0 || detail::tie_break_less(v, *best)) {
                best = v;
                bp = vp;
                bq = vq;
                have = true;
            }
        }
    }
    return *best;
}

/// Squared covolume of u*Phi(m): N(u)^2 * (sigma(g) sigma'(h) - sigma(h) sigma'(g))^2.
inline Rat covolume_squared(const Module2& m, const Metric& u)
{
    QElem x = m.g() * m.h().conj();
    Rat q = x.irrational_part();
    return u.norm_squared() * 4 * q * q * Rat(m.ctx().disc());
}

/// Covolume as a field element c * sqrt(D), when N(u) is rational.
inline std::optional<QElem> covolume(const Module2& m, const Metric& u)
{
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    Rat n2 = u.norm_squared();
    BigInt nn = numerator(n2), nd = denominator(n2);
    if (!is_square(nn) || !is_square(nd)) return std::nullopt;
    Rat nu(isqrt(nn), isqrt(nd));
    Rat q = (m.g() * m.h().conj()).irrational_part();
    return QElem::from_rats(m.ctx(), 0, nu * 2 * abs(q));
}

/// Squared length of g = m + n f under the unit metric, from the closed form
/// 2[(m + nb/2a)^2 + n^2 D/(4a^2)].
inline Rat unit_sqlen_closed_form(const IdealForm& I, const BigInt& m, const BigInt& n)
{
    Rat t = Rat(m) + Rat(n * I.b(), 2 * I.a());
    return 2 * (t * t + Rat(n * n * I.disc(), 4 * I.a() * I.a()));
}

}  // namespace onered

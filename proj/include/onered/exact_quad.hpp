#pragma once

// Exact arithmetic in a real quadratic field Q(sqrt(D)).
//
// Elements are stored as (p + q*sqrt(D)) / r with r > 0 and gcd(p, q, r) = 1,
// so structural equality is value equality. Every comparison in the library
// goes through sign(), which never touches floating point.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <compare>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace onered {

using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;

struct ArithmeticError : std::domain_error {
    using std::domain_error::domain_error;
};

struct InvalidDiscriminant : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline BigInt isqrt(const BigInt& n)
{
    if (n < 0) throw ArithmeticError("isqrt of negative integer");
    return boost::multiprecision::sqrt(n);
}

inline bool is_square(const BigInt& n)
{
    if (n < 0) return false;
    BigInt s = isqrt(n);
    return s * s == n;
}

inline BigInt floor_div(const BigInt& a, const BigInt& b)
{
    BigInt q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline BigInt floor_rat(const Rat& x)
{
    return floor_div(boost::multiprecision::numerator(x), boost::multiprecision::denominator(x));
}

inline int sgn(const BigInt& x) { return x.sign(); }
inline int sgn(const Rat& x) { return x.sign(); }

inline std::string to_string(const Rat& x)
{
    std::ostringstream os;
    os << boost::multiprecision::numerator(x) << '/' << boost::multiprecision::denominator(x);
    return os.str();
}

/// Parses "n", "-n" or "n/d".
inline Rat parse_rat(const std::string& text)
{
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rat(BigInt(text));
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0) throw ArithmeticError("zero denominator in '" + text + "'");
        return Rat(num, den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("not a rational number: '" + text + "'");
    }
}

/// A real quadratic field, identified by a non-square discriminant D = 0, 1 (mod 4).
class FieldCtx {
public:
    explicit FieldCtx(BigInt disc) : disc_(std::move(disc))
    {
        if (disc_ <= 0) throw InvalidDiscriminant("discriminant must be positive");
        BigInt r = disc_ % 4;
        if (r != 0 && r != 1) throw InvalidDiscriminant("discriminant must be 0 or 1 mod 4");
        if (is_square(disc_)) throw InvalidDiscriminant("discriminant must not be a perfect square");
    }

    static bool is_valid(const BigInt& disc)
    {
        if (disc <= 0) return false;
        BigInt r = disc % 4;
        return (r == 0 || r == 1) && !is_square(disc);
    }

    const BigInt& disc() const { return disc_; }

    bool operator==(const FieldCtx&) const = default;

private:
    BigInt disc_;
};

/// Element (p + q*sqrt(D)) / r of Q(sqrt(D)).
class QElem {
public:
    QElem(const FieldCtx& ctx, BigInt p, BigInt q = 0, BigInt r = 1)
        : ctx_(ctx), p_(std::move(p)), q_(std::move(q)), r_(std::move(r))
    {
        if (r_ == 0) throw ArithmeticError("zero denominator");
        normalize();
    }

    /// alpha + beta*sqrt(D) for rationals alpha, beta.
    static QElem from_rats(const FieldCtx& ctx, const Rat& alpha, const Rat& beta = 0)
    {
        using boost::multiprecision::denominator;
        using boost::multiprecision::numerator;
        BigInt da = denominator(alpha), db = denominator(beta);
        BigInt l = boost::multiprecision::lcm(da, db);
        return QElem(ctx, numerator(alpha) * (l / da), numerator(beta) * (l / db), l);
    }

    static QElem sqrt_disc(const FieldCtx& ctx) { return QElem(ctx, 0, 1, 1); }

    const FieldCtx& ctx() const { return ctx_; }
    const BigInt& p() const { return p_; }
    const BigInt& q() const { return q_; }
    const BigInt& r() const { return r_; }

    bool is_zero() const { return p_ == 0 && q_ == 0; }
    bool is_rational() const { return q_ == 0; }

    Rat rational_part() const { return Rat(p_, r_); }
    Rat irrational_part() const { return Rat(q_, r_); }

    /// Only meaningful when is_rational().
    Rat as_rat() const
    {
        if (!is_rational()) throw ArithmeticError("element is not rational");
        return Rat(p_, r_);
    }

    QElem conj() const { return QElem(ctx_, p_, -q_, r_, raw_tag{}); }
    QElem operator-() const { return QElem(ctx_, -p_, -q_, r_, raw_tag{}); }

    Rat norm() const { return Rat(p_ * p_ - q_ * q_ * ctx_.disc(), r_ * r_); }
    Rat trace() const { return Rat(2 * p_, r_); }

    /// Exact sign of the real embedding sigma (sqrt(D) > 0).
    int sign() const
    {
        int sp = sgn(p_), sq = sgn(q_);
        if (sq == 0) return sp;
        if (sp == 0 || sp == sq) return sq;
        // opposite signs: compare p^2 with q^2 D
        BigInt lhs = p_ * p_;
        BigInt rhs = q_ * q_ * ctx_.disc();
        return lhs > rhs ? sp : sq;
    }

    /// Sign of the conjugate embedding sigma'.
    int conj_sign() const { return conj().sign(); }

    QElem inv() const
    {
        if (is_zero()) throw ArithmeticError("inverse of zero");
        // r / (p + q sqrt D) = r (p - q sqrt D) / (p^2 - q^2 D)
        BigInt n = p_ * p_ - q_ * q_ * ctx_.disc();
        return QElem(ctx_, r_ * p_, -r_ * q_, n);
    }

    friend QElem operator+(const QElem& x, const QElem& y)
    {
        check_ctx(x, y);
        if (x.r_ == y.r_) return QElem(x.ctx_, x.p_ + y.p_, x.q_ + y.q_, x.r_);
        return QElem(x.ctx_, x.p_ * y.r_ + y.p_ * x.r_, x.q_ * y.r_ + y.q_ * x.r_, x.r_ * y.r_);
    }
    friend QElem operator-(const QElem& x, const QElem& y) { return x + (-y); }
    friend QElem operator*(const QElem& x, const QElem& y)
    {
        check_ctx(x, y);
        return QElem(x.ctx_, x.p_ * y.p_ + x.q_ * y.q_ * x.ctx_.disc(), x.p_ * y.q_ + x.q_ * y.p_,
                     x.r_ * y.r_);
    }
    friend QElem operator/(const QElem& x, const QElem& y)
    {
        if (y.is_zero()) throw ArithmeticError("division by zero element");
        return x * y.inv();
    }

    friend QElem operator+(const QElem& x, const BigInt& n) { return x + QElem(x.ctx_, n); }
    friend QElem operator-(const QElem& x, const BigInt& n) { return x + QElem(x.ctx_, -n); }
    friend QElem operator*(const BigInt& n, const QElem& x) { return QElem(x.ctx_, n * x.p_, n * x.q_, x.r_); }
    friend QElem operator*(const QElem& x, const BigInt& n) { return n * x; }
    friend QElem operator*(const Rat& c, const QElem& x)
    {
        using boost::multiprecision::denominator;
        using boost::multiprecision::numerator;
        return QElem(x.ctx_, numerator(c) * x.p_, numerator(c) * x.q_, denominator(c) * x.r_);
    }

    bool operator==(const QElem& o) const
    {
        return ctx_ == o.ctx_ && p_ == o.p_ && q_ == o.q_ && r_ == o.r_;
    }

    /// Orders by real value under sigma.
    friend std::strong_ordering operator<=>(const QElem& x, const QElem& y)
    {
        int s = (x - y).sign();
        return s < 0 ? std::strong_ordering::less
                     : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    /// floor of the real value, exact.
    BigInt floor() const
    {
        if (q_ == 0) return floor_div(p_, r_);
        // q sqrt D lies strictly between consecutive integers since D is not a square.
        BigInt s = isqrt(q_ * q_ * ctx_.disc());
        BigInt n = q_ > 0 ? p_ + s : p_ - s - 1;
        return floor_div(n, r_);
    }

    /// Nearest integer, halves rounded up.
    BigInt round() const { return (*this + QElem(ctx_, 1, 0, 2)).floor(); }

    double approx() const
    {
        long double sd = std::sqrt(static_cast<long double>(ctx_.disc().convert_to<long double>()));
        long double v = (p_.convert_to<long double>() + q_.convert_to<long double>() * sd) /
                        r_.convert_to<long double>();
        return static_cast<double>(v);
    }
    double conj_approx() const { return conj().approx(); }

    /// "p q r" integer triple; the field is implied by context.
    std::string to_triple() const
    {
        std::ostringstream os;
        os << p_ << ' ' << q_ << ' ' << r_;
        return os.str();
    }

    static QElem from_triple(const FieldCtx& ctx, const std::string& text)
    {
        std::istringstream is(text);
        std::string p, q, r, extra;
        if (!(is >> p >> q >> r) || (is >> extra))
            throw std::invalid_argument("expected 'p q r' triple, got '" + text + "'");
        try {
            return QElem(ctx, BigInt(p), BigInt(q), BigInt(r));
        } catch (const std::runtime_error&) {
            throw std::invalid_argument("expected 'p q r' triple, got '" + text + "'");
        }
    }

    friend std::ostream& operator<<(std::ostream& os, const QElem& x)
    {
        return os << '(' << x.p_ << (x.q_ < 0 ? " - " : " + ") << abs(x.q_) << "*sqrt(" << x.ctx_.disc()
                  << "))/" << x.r_;
    }

private:
    struct raw_tag {};
    QElem(const FieldCtx& ctx, BigInt p, BigInt q, BigInt r, raw_tag)
        : ctx_(ctx), p_(std::move(p)), q_(std::move(q)), r_(std::move(r))
    {
    }

    static void check_ctx(const QElem& x, const QElem& y)
    {
        if (!(x.ctx_ == y.ctx_)) throw ArithmeticError("field elements from different fields");
    }

    void normalize()
    {
        if (r_ < 0) {
            p_ = -p_;
            q_ = -q_;
            r_ = -r_;
        }
        if (p_ == 0 && q_ == 0) {
            r_ = 1;
            return;
        }
        BigInt g = boost::multiprecision::gcd(boost::multiprecision::gcd(p_, q_), r_);
        if (g != 1) {
            p_ /= g;
            q_ /= g;
            r_ /= g;
        }
    }

    FieldCtx ctx_;
    BigInt p_, q_, r_;
};

inline int sign(const QElem& x) { return x.sign(); }
inline Rat norm(const QElem& x) { return x.norm(); }
inline Rat trace(const QElem& x) { return x.trace(); }

namespace detail {

// pi truncated to 50 decimals (OEIS A000796); the truncation and its successor
// in the last place give a certified enclosure.
inline const char* const kPiDigits = "314159265358979323846264338327950288419716939937510";
inline constexpr unsigned kPiDigitsScale = 50;

// arctan(1/k) enclosure from the alternating series, truncated after `terms` terms.
inline std::pair<Rat, Rat> arctan_inv_enclosure(unsigned k, unsigned terms)
{
    Rat sum = 0;
    BigInt kk = BigInt(k) * k;
    BigInt pow = k;  // k^(2j+1)
    for (unsigned j = 0; j < terms; ++j) {
        Rat term(1, pow * (2 * j + 1));
        sum += (j % 2 == 0) ? term : Rat(-term);
        pow *= kk;
    }
    Rat next(1, pow * (2 * terms + 1));
    // next omitted term has sign (-1)^terms
    if (terms % 2 == 0) return {sum, sum + next};
    return {sum - next, sum};
}

/// Certified rational enclosure lo < pi < hi; level 0 is the 50-digit table,
/// higher levels come from Machin's formula with more terms.
inline std::pair<Rat, Rat> pi_enclosure(unsigned level)
{
    if (level == 0) {
        BigInt scale = boost::multiprecision::pow(BigInt(10), kPiDigitsScale);
        BigInt digits(kPiDigits);
        return {Rat(digits, scale), Rat(digits + 1, scale)};
    }
    // each term of arctan(1/5) gains log10(25) ~ 1.4 digits
    unsigned terms = 40u << level;
    auto [a_lo, a_hi] = arctan_inv_enclosure(5, terms);
    auto [b_lo, b_hi] = arctan_inv_enclosure(239, terms);
    return {16 * a_lo - 4 * b_hi, 16 * a_hi - 4 * b_lo};
}

}  // namespace detail

/// True iff sqlen < 64 / pi^2, i.e. a vector of that squared length is shorter than 8/pi.
inline bool below_pi_threshold(const Rat& sqlen)
{
    if (sqlen < 0) throw ArithmeticError("negative squared length");
    for (unsigned level = 0;; ++level) {
        auto [lo, hi] = detail::pi_enclosure(level);
        Rat thr_lo = Rat(64) / (hi * hi);
        Rat thr_hi = Rat(64) / (lo * lo);
        if (sqlen < thr_lo) return true;
        if (sqlen >= thr_hi) return false;
    }
}

}  // namespace onered

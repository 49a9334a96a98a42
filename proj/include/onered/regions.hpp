#pragma once

// Parameter regions of (D, a, b) in which the shortest vector of Z + fZ
// (unit metric) is known in closed form, with the matching reduced bases.
// All region tests are integer inequalities.

#include "onered/lattice.hpp"

namespace onered {

enum class ShortRegion {
    OneShortest,        // 1 is shortest
    FShortest,          // f is shortest; (f, 1) is LLL-reduced
    FMinusOneShortest,  // f - 1 is shortest; (f - 1, 1) is LLL-reduced
};

inline const char* to_string(ShortRegion r)
{
    switch (r) {
    case ShortRegion::OneShortest: return "one";
    case ShortRegion::FShortest: return "f";
    case ShortRegion::FMinusOneShortest: return "f-1";
    }
    return "?";
}

/// Every region containing I; boundary ideals can lie in several.
inline std::vector<ShortRegion> short_regions(const IdealForm& I)
{
    const BigInt& D = I.disc();
    const BigInt& a = I.a();
    const BigInt& b = I.b();
    const BigInt a2 = a * a;
    const BigInt e = 4 * a2 - D;  // 4a^2 - D
    const BigInt h = D - 3 * a2;  // D - 3a^2
    const BigInt c = 2 * a - b;
    const bool band = e >= 0 && h >= 0;  // D/4 <= a^2 <= D/3

    std::vector<ShortRegion> out;
    if (e <= 0 || (band && b * b >= e && c >= 0 && c * c >= e)) out.push_back(ShortRegion::OneShortest);
    if (band && (a - b) * (a - b) <= h && b * b <= e) out.push_back(ShortRegion::FShortest);
    if (band && c >= 0 && c * c <= e && (a - b) * (a - b) <= h) out.push_back(ShortRegion::FMinusOneShortest);
    return out;
}

inline QElem predicted_shortest(const IdealForm& I, ShortRegion r)
{
    switch (r) {
    case ShortRegion::OneShortest: return QElem(I.ctx(), 1);
    case ShortRegion::FShortest: return I.f();
    case ShortRegion::FMinusOneShortest: return I.f() - BigInt(1);
    }
    throw std::logic_error("unknown region");
}

/// Reduced basis for the region: (1, f - round(b/2a)), (f, 1) or (f - 1, 1).
inline Basis2 region_basis(const IdealForm& I, ShortRegion r)
{
    const QElem one(I.ctx(), 1);
    switch (r) {
    case ShortRegion::OneShortest: {
        BigInt shift = QElem(I.ctx(), I.b(), 0, 2 * I.a()).round();
        return Basis2{one, I.f() - shift, Metric::unit()};
    }
    case ShortRegion::FShortest: return Basis2{I.f(), one, Metric::unit()};
    case ShortRegion::FMinusOneShortest: return Basis2{I.f() - BigInt(1), one, Metric::unit()};
    }
    throw std::logic_error("unknown region");
}

}  // namespace onered

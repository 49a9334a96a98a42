#pragma once

// The reduction algorithm: given a module I and a metric u, take a shortest
// vector f of (I, u) and return J = f^-1 I in canonical (a, b) form. J is
// reduced, and under v = u|f| the vector 1 is shortest, so J is 1-reduced.

#include "onered/classifier.hpp"

#include <cmath>

namespace onered {

struct InternalInvariantViolation : std::logic_error {
    using std::logic_error::logic_error;
};

struct ReductionResult {
    Module2 input;
    Metric metric;
    QElem f;
    IdealForm output;
    double distance_diag = 0.0;
};

/// Sup-norm distance in log coordinates between (J, v), v = u|f|, and
/// (J, N(J)^-1/2), once both are scaled to covolume sqrt(D). With n = 2 the
/// scalings cancel and the distance is |log(v1 / v2)| / 2. Floating point;
/// never used for decisions.
inline double distance_diag(const Metric& u, const QElem& f)
{
    const std::array<double, 2> w = u.approx_weights();
    const double l1 = std::log(w[0]) + std::log(std::abs(f.approx()));
    const double l2 = std::log(w[1]) + std::log(std::abs(f.conj_approx()));
    return 0.5 * std::abs(l1 - l2);
}

inline ReductionResult reduce_ideal(const Module2& m, const Metric& u)
{
    QElem f = shortest_vector(m, u);
    Module2 scaled = scale_module(m, f.inv());
    if (!one_is_primitive(scaled)) throw InternalInvariantViolation("1 is not primitive in f^-1 I");
    if (!is_one_minimal(scaled)) throw InternalInvariantViolation("f^-1 I is not reduced");
    NormalizedModule nm = normalize_module(scaled);
    if (nm.scale != 1) throw InternalInvariantViolation("canonical basis of f^-1 I does not start with 1");
    if (!nm.is_ideal_form()) throw InternalInvariantViolation("f^-1 I has no reduced (a, b) form");
    IdealForm J = nm.ideal();
    ReductionResult res{m, u, f, J, 0.0};
    res.distance_diag = distance_diag(u, f);
    return res;
}

}  // namespace onered

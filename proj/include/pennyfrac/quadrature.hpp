#pragma once

#include <functional>
#include <vector>

namespace pennyfrac {

// Adaptive Gauss-Legendre quadrature with interval bisection. A panel is
// accepted when the two-half refinement changes it by less than
// rel_tol * max(|integral so far|, scale_floor).
struct QuadratureEngine {
    int order = 15;         // GL nodes per panel, >= 4
    int max_depth = 12;     // bisection limit per initial interval
    double rel_tol = 1e-9;  // target relative tolerance

    void validate() const;
};

// Fixed-order GL on [a, b].
double gauss_legendre(const std::function<double(double)>& f, double a, double b, int order);

// GL nodes/weights mapped to [0, 1]; weights sum to 1.
struct GaussRule01 {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussRule01& gauss_rule_01(int order);

// Adaptive integration of f over [a, b]. `scale_floor` sets the absolute
// scale below which differences are ignored (pass a magnitude typical for
// the whole integral when the local piece can be ~0). Throws NumericalError
// when the subdivision limit is hit, reporting the achieved error estimate.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureEngine& eng, double scale_floor = 0.0);

// Same, for vector-valued integrands sharing one adaptive grid. `n` is the
// component count; f writes into the provided buffer.
std::vector<double> integrate_vec(const std::function<void(double, double*)>& f, int n,
                                  double a, double b, const QuadratureEngine& eng,
                                  double scale_floor = 0.0);

} // namespace pennyfrac

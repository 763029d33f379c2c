#pragma once

#include "pennyfrac/influence.hpp"
#include "pennyfrac/mesh.hpp"
#include "pennyfrac/params.hpp"
#include "pennyfrac/quadrature.hpp"

#include <vector>

namespace pennyfrac {

// Reconstructed opening samples. Physically admissible pressurization gives
// w >= 0; violations are reported, not clipped.
struct OpeningProfile {
    std::vector<double> radii;
    std::vector<double> openings;
    double crack_radius = 0.0;
    int negative_count = 0;
    double min_opening = 0.0;
};

// w(r) = 8/(pi E') [ T[p](r) - sigma_0 * T[annulus](r) ], the second term
// being the uniform net pressure -sigma_0 on the lag annulus [l, a].
double opening(const State& state, const MaterialParams& mat, double r,
               const QuadratureEngine& eng);

// dw/dr at r (same decomposition, differentiated transforms).
double opening_slope(const State& state, const MaterialParams& mat, double r,
                     const QuadratureEngine& eng);

OpeningProfile opening_profile(const State& state, const MaterialParams& mat,
                               const std::vector<double>& radii, const QuadratureEngine& eng);

// ∫_0^cap w(r) r dr, evaluated on the z axis (no pointwise openings).
double opening_radial_moment(const State& state, const MaterialParams& mat, double cap,
                             const QuadratureEngine& eng);

// The three contributions to dw/dt at radius r:
//   rate_p = 8/(pi E') sum_k A_k dp_k/dt
//   rate_a = 8/(pi E') a_rate sum_k dA_k/da p_k
//   rate_l = 8/(pi E') l_rate sum_k dA_k/dl p_k
struct OpeningRateTerms {
    double opening = 0.0;
    double rate_p = 0.0;
    double rate_a = 0.0;
    double rate_l = 0.0;
    double total() const { return rate_p + rate_a + rate_l; }
};

OpeningRateTerms opening_rate_terms(const State& state, const MaterialParams& mat, double r,
                                    const std::vector<double>& pressure_rates, double a_rate,
                                    double l_rate, const SolverSettings& settings,
                                    const QuadratureEngine& eng);

// Mode-I stress intensity factor of the pressurized penny crack, per-element
// integrals through the r = a sin(theta) substitution; the lag annulus adds
// -sigma_0 * sqrt(a^2 - l^2) inside the bracket.
double sif(const State& state, const MaterialParams& mat,
           SifConvention convention = SifConvention::Paper);

} // namespace pennyfrac

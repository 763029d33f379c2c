#pragma once

#include "pennyfrac/mesh.hpp"
#include "pennyfrac/params.hpp"
#include "pennyfrac/quadrature.hpp"

namespace pennyfrac {

// Snapshot of both fronts and the propagation drive.
struct FrontState {
    double crack_radius = 0.0;
    double fluid_radius = 0.0;
    double crack_rate = 0.0; // >= 0 (irreversible)
    double fluid_rate = 0.0;
    double sif = 0.0;
    double yield_value = 0.0; // sif - toughness
};

struct FrontAdvanceResult {
    double fluid_radius = 0.0;
    bool clamped_to_crack = false; // front would have overtaken the tip
};

// Integrated-mass-balance update of the fluid front over one time step:
//   l_new = l_prev + dt/(l_lag rho w(l_lag)) ∫_0^l_lag (s - rho (w_trial - w_prev)/dt) r dr
// with l_lag = trial fluid radius (the previous inner iterate). Openings are
// reconstructed from the respective states. Throws NumericalError when the
// trial opening at the front is at or below `opening_floor` (step should be
// retried with a smaller dt).
FrontAdvanceResult fluid_front_advance(const State& state_prev, const State& trial,
                                       const MaterialParams& mat, const FluidParams& fluid,
                                       const SourceTerm& src, double dt, double opening_floor,
                                       const QuadratureEngine& eng);

// Pressure-gradient form of the front velocity (diagnostic):
//   v = w(l)^2/(12 mu) ( -dp/dr|_l + (mu/rho) d/dr (s/w)|_l ).
// Core formula on explicit ingredients, testable in isolation.
double front_velocity_from_gradients(double w_front, double dp_dr, double s_front,
                                     double ds_dr, double dw_dr, const FluidParams& fluid);

// Wrapper extracting the ingredients from a state: second-order one-sided
// backward stencils for dp/dr and dw/dr at the front node, analytic source.
double fluid_front_velocity_gradient_form(const State& state, const MaterialParams& mat,
                                          const FluidParams& fluid, const SourceTerm& src,
                                          const QuadratureEngine& eng);

// Regularized quasi-static crack-front velocity:
//   v = (E'/eta) (1 - K_Ic/K_I) H[K_I - K_Ic],  H[0] = 0.
double crack_front_velocity(double sif_value, const MaterialParams& mat);

// Explicit front update a_new = a_prev + dt * v; monotone nondecreasing.
double crack_front_update(double a_prev, double sif_value, const MaterialParams& mat, double dt);

} // namespace pennyfrac

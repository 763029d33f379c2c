#include "pennyfrac/front_tracking.hpp"

#include "pennyfrac/elasticity.hpp"
#include "pennyfrac/errors.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace pennyfrac {

FrontAdvanceResult fluid_front_advance(const State& state_prev, const State& trial,
                                       const MaterialParams& mat, const FluidParams& fluid,
                                       const SourceTerm& src, double dt, double opening_floor,
                                       const QuadratureEngine& eng) {
    if (!(dt > 0.0)) throw DomainError("fluid_front_advance: dt must be > 0");
    const double l_lag = trial.fluid_radius();
    const double t_new = state_prev.time + dt;
    const double rho = fluid.density;

    const double w_front = opening(trial, mat, l_lag, eng);
    if (!(w_front > opening_floor)) {
        throw NumericalError("fluid_front_advance: trial opening at the front (" +
                             std::to_string(w_front) + " m) is at or below the floor " +
                             std::to_string(opening_floor) + " m; reduce dt");
    }

    // ∫_0^l_lag (s(r, t_{n+1}) - rho (w_trial(r) - w_prev(r))/dt) r dr:
    // closed-form source moment minus the difference of opening moments.
    const double moment_trial = opening_radial_moment(trial, mat, l_lag, eng);
    const double moment_prev = opening_radial_moment(state_prev, mat, l_lag, eng);
    const double imbalance =
        src.radial_moment(l_lag, t_new) - rho * (moment_trial - moment_prev) / dt;

    FrontAdvanceResult out;
    out.fluid_radius = state_prev.fluid_radius() + dt / (l_lag * rho * w_front) * imbalance;
    if (out.fluid_radius > trial.crack_radius) {
        out.fluid_radius = trial.crack_radius;
        out.clamped_to_crack = true;
    }
    if (!(out.fluid_radius > 0.0)) {
        throw NumericalError("fluid_front_advance: updated fluid radius is non-positive");
    }
    return out;
}

double front_velocity_from_gradients(double w_front, double dp_dr, double s_front,
                                     double ds_dr, double dw_dr, const FluidParams& fluid) {
    if (!(w_front > 0.0)) throw DomainError("front velocity: opening at the front must be > 0");
    const double mu = fluid.viscosity;
    const double rho = fluid.density;
    // d/dr (s/w) = (s' w - s w') / w^2
    const double dsw_dr = (ds_dr * w_front - s_front * dw_dr) / (w_front * w_front);
    return w_front * w_front / (12.0 * mu) * (-dp_dr + mu / rho * dsw_dr);
}

double fluid_front_velocity_gradient_form(const State& state, const MaterialParams& mat,
                                          const FluidParams& fluid, const SourceTerm& src,
                                          const QuadratureEngine& eng) {
    const RadialMesh& mesh = state.mesh;
    if (mesh.node_count() < 3) throw DomainError("gradient-form velocity: needs >= 3 nodes");
    const double l = mesh.fluid_radius();
    const double h = mesh.element_size();
    const int n = mesh.node_count();

    // Second-order backward stencils at the front node, applied to the nodal
    // pressures and to nodal openings (the pointwise opening slope of the
    // discrete field is log-divergent at r = l whenever p(l) differs from the
    // lag pressure, so the discrete stencil is used for both).
    auto backward = [&](const std::vector<double>& v) {
        return (3.0 * v[static_cast<std::size_t>(n - 1)] - 4.0 * v[static_cast<std::size_t>(n - 2)] +
                v[static_cast<std::size_t>(n - 3)]) /
               (2.0 * h);
    };
    const double dp_dr = backward(state.pressures);

    std::vector<double> w_nodes = {opening(state, mat, mesh.node(n - 3), eng),
                                   opening(state, mat, mesh.node(n - 2), eng),
                                   opening(state, mat, l, eng)};
    const double dw_dr = (3.0 * w_nodes[2] - 4.0 * w_nodes[1] + w_nodes[0]) / (2.0 * h);
    const double w_front = w_nodes[2];

    return front_velocity_from_gradients(w_front, dp_dr, src(l, state.time),
                                         src.radial_derivative(l, state.time), dw_dr, fluid);
}

double crack_front_velocity(double sif_value, const MaterialParams& mat) {
    if (sif_value < 0.0) throw DomainError("crack_front_velocity: SIF must be >= 0");
    if (sif_value <= mat.toughness) return 0.0; // H[0] = 0
    return mat.plane_strain_modulus / mat.numerical_viscosity *
           (1.0 - mat.toughness / sif_value);
}

double crack_front_update(double a_prev, double sif_value, const MaterialParams& mat, double dt) {
    if (!(dt > 0.0)) throw DomainError("crack_front_update: dt must be > 0");
    return a_prev + dt * crack_front_velocity(sif_value, mat);
}

} // namespace pennyfrac

#pragma once

#include "pennyfrac/mesh.hpp"
#include "pennyfrac/params.hpp"
#include "pennyfrac/quadrature.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace pennyfrac {

// One Backward-Euler system M p^{n+1} = b on the trial mesh, Picard-lagged:
// the cubic conductivity and both source couplings are frozen at the lagged
// pressure iterate. Rows 0..N-1 test with psi_i; the front-node row is the
// configured closure (free: linear continuation, pinned: p_N = -sigma_0).
struct AssembledSystem {
    Eigen::MatrixXd matrix;
    Eigen::VectorXd rhs;
    struct Diagnostics {
        double storage_norm = 0.0;
        double advection_a_norm = 0.0;
        double advection_l_norm = 0.0;
        double poiseuille_norm = 0.0;
        double source_coupling_norm = 0.0;
    } diagnostics;
};

// state_prev: accepted state at t_n (its own mesh; pressures transferred
// internally). trial: current inner iterate's geometry (crack radius of the
// outer iterate, mesh of the current fluid radius). lagged_pressures lives
// on the trial mesh.
AssembledSystem assemble(const State& state_prev, const State& trial, double a_rate,
                         double l_rate, const std::vector<double>& lagged_pressures,
                         const MaterialParams& mat, const FluidParams& fluid,
                         const SourceTerm& src, const SolverSettings& settings);

// Dense direct solve with a condition estimate; throws NumericalError above
// condition 1e14, reporting the estimate.
std::vector<double> inner_solve(const AssembledSystem& sys);

} // namespace pennyfrac

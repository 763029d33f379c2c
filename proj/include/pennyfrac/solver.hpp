#pragma once

#include "pennyfrac/errors.hpp"
#include "pennyfrac/mesh.hpp"
#include "pennyfrac/params.hpp"

#include <string>
#include <vector>

namespace pennyfrac {

struct Problem {
    MaterialParams material;
    FluidParams fluid;
    SourceTerm source;
};

struct StepReport {
    int step_index = 0;
    State accepted;
    int inner_iters = 0;  // j at convergence of the accepted outer pass
    int outer_iters = 0;  // mu at acceptance
    double sif_at_acceptance = 0.0;
    bool advanced = false;
    double griffith_residual = 0.0; // |K - Kc|/Kc, meaningful when advanced
    double mass_residual = 0.0;     // running fluid-volume accounting residual
    double wall_time_s = 0.0;
    std::vector<std::string> events;
};

enum class Termination {
    Completed,
    InnerDivergence,
    OuterDivergence,
    OpeningFloor,
};

std::string to_string(Termination t);

struct RunResult {
    std::vector<StepReport> steps;
    State final_state;
    Termination termination = Termination::Completed;
    std::string message;
};

// A rejected step (cap exhaustion, opening floor) carries its reason;
// run() converts it into the RunResult termination.
class StepRejected : public NumericalError {
public:
    StepRejected(Termination reason, const std::string& what)
        : NumericalError(what), reason_(reason) {}
    Termination reason() const { return reason_; }

private:
    Termination reason_;
};

// One Backward-Euler step of the staggered scheme: outer loop on the crack
// radius (explicit regularized update), inner loop on fluid front + pressure
// (implicit, Picard). Throws StepRejected on divergence.
StepReport step(const State& state_n, const Problem& prob, const SolverSettings& settings);

// Fixed-step time marching; deterministic for identical inputs. Partial
// results are preserved on failure.
RunResult run(const State& initial, const Problem& prob, const SolverSettings& settings,
              int n_timesteps);

// Fluid mass currently stored in the fracture, 2*pi*rho*∫ w r dr.
double fluid_mass(const State& state, const MaterialParams& mat, const FluidParams& fluid,
                  double quadrature_tol);

// Instantaneous injected mass rate 2*pi*∫_0^l s(r,t) r dr (closed form).
double injection_rate(const SourceTerm& src, double fluid_radius, double t);

} // namespace pennyfrac

#include "pennyfrac/solver.hpp"

#include "pennyfrac/elasticity.hpp"
#include "pennyfrac/front_tracking.hpp"
#include "pennyfrac/influence.hpp"
#include "pennyfrac/lubrication.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

namespace pennyfrac {

namespace {

constexpr double kLengthFloor = 1e-15; // absolute guard for relative tests

double rel_change(double now, double before) {
    return std::abs(now - before) / std::max(std::abs(now), kLengthFloor);
}

double vec_rel_change(const std::vector<double>& now, const std::vector<double>& before) {
    double dn = 0.0, nn = 0.0;
    for (std::size_t i = 0; i < now.size(); ++i) {
        const double d = now[i] - before[i];
        dn += d * d;
        nn += now[i] * now[i];
    }
    return std::sqrt(dn) / std::max(std::sqrt(nn), kLengthFloor);
}

} // namespace

std::string to_string(Termination t) {
    switch (t) {
        case Termination::Completed: return "completed";
        case Termination::InnerDivergence: return "inner-divergence";
        case Termination::OuterDivergence: return "outer-divergence";
        case Termination::OpeningFloor: return "opening-floor";
    }
    return "unknown";
}

StepReport step(const State& state_n, const Problem& prob, const SolverSettings& settings) {
    settings.validate();
    state_n.validate();
    const auto t_start = std::chrono::steady_clock::now();
    const double dt = settings.dt;
    const MaterialParams& mat = prob.material;

    QuadratureEngine eng;
    eng.rel_tol = settings.quadrature_tol;

    StepReport report;
    double a_trial = state_n.crack_radius; // a_[mu-1]
    State trial;
    double sif_final = 0.0;
    bool outer_converged = false;

    for (int mu = 1; mu <= settings.max_outer_iters; ++mu) {
        // Inner triggers restart from the previous time level each outer pass.
        trial = state_n;
        trial.crack_radius = a_trial;
        double l_prev_iter = state_n.fluid_radius();

        bool inner_converged = false;
        for (int j = 1; j <= settings.max_inner_iters; ++j) {
            FrontAdvanceResult adv;
            try {
                adv = fluid_front_advance(state_n, trial, mat, prob.fluid, prob.source, dt,
                                          settings.opening_floor, eng);
            } catch (const NumericalError& e) {
                throw StepRejected(Termination::OpeningFloor, e.what());
            }
            if (adv.clamped_to_crack) {
                report.events.push_back("fluid front clamped to crack front");
            }
            State next = remesh_transfer(trial, adv.fluid_radius);
            next.crack_radius = a_trial;

            const double a_rate = (a_trial - state_n.crack_radius) / dt;
            const double l_rate = (adv.fluid_radius - state_n.fluid_radius()) / dt;
            AssembledSystem sys = assemble(state_n, next, a_rate, l_rate, next.pressures, mat,
                                           prob.fluid, prob.source, settings);
            std::vector<double> p_new = inner_solve(sys);

            const double dl = rel_change(adv.fluid_radius, l_prev_iter);
            const double dp = vec_rel_change(p_new, next.pressures);
            next.pressures = std::move(p_new);
            trial = std::move(next);
            l_prev_iter = adv.fluid_radius;

            // Box 1 tests the front position; the pressure iterate is checked
            // as well so a stalled front cannot mask an unconverged solve.
            if (dl < settings.tol_fluid_front && dp < settings.tol_fluid_front) {
                report.inner_iters = j;
                inner_converged = true;
                break;
            }
        }
        if (!inner_converged) {
            throw StepRejected(Termination::InnerDivergence,
                               "inner loop exhausted " + std::to_string(settings.max_inner_iters) +
                                   " iterations at t = " + std::to_string(state_n.time + dt));
        }

        sif_final = sif(trial, mat, settings.sif_convention);
        const double a_new = crack_front_update(a_trial, sif_final, mat, dt);
        const double da = rel_change(a_new, a_trial);
        a_trial = a_new;
        if (da < settings.tol_crack_front) {
            report.outer_iters = mu;
            outer_converged = true;
            break;
        }
    }
    if (!outer_converged) {
        throw StepRejected(Termination::OuterDivergence,
                           "outer loop exhausted " + std::to_string(settings.max_outer_iters) +
                               " iterations at t = " + std::to_string(state_n.time + dt));
    }

    trial.crack_radius = a_trial;
    trial.time = state_n.time + dt;
    report.accepted = trial;
    report.sif_at_acceptance = sif_final;
    report.advanced = a_trial > state_n.crack_radius;
    if (report.advanced && mat.toughness > 0.0) {
        report.griffith_residual = std::abs(sif_final - mat.toughness) / mat.toughness;
    }

    // Negative openings are diagnostics of front overshoot, not errors.
    int negatives = 0;
    for (int k = 0; k < trial.mesh.node_count(); ++k) {
        if (opening(trial, mat, trial.mesh.node(k), eng) < 0.0) ++negatives;
    }
    if (negatives > 0) {
        report.events.push_back("negative opening at " + std::to_string(negatives) + " node(s)");
    }

    report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return report;
}

double fluid_mass(const State& state, const MaterialParams& mat, const FluidParams& fluid,
                  double quadrature_tol) {
    QuadratureEngine eng;
    eng.rel_tol = quadrature_tol;
    return 2.0 * std::numbers::pi * fluid.density *
           opening_radial_moment(state, mat, state.fluid_radius(), eng);
}

double injection_rate(const SourceTerm& src, double fluid_radius, double t) {
    return 2.0 * std::numbers::pi * src.radial_moment(fluid_radius, t);
}

RunResult run(const State& initial, const Problem& prob, const SolverSettings& settings,
              int n_timesteps) {
    prob.material.validate();
    prob.fluid.validate();
    prob.source.validate();
    settings.validate();
    initial.validate();

    RunResult result;
    result.final_state = initial;
    if (n_timesteps <= 0) return result;

    const double mass0 = fluid_mass(initial, prob.material, prob.fluid, settings.quadrature_tol);
    double injected = 0.0;
    double rate_prev = injection_rate(prob.source, initial.fluid_radius(), initial.time);

    State current = initial;
    for (int nstep = 1; nstep <= n_timesteps; ++nstep) {
        StepReport rep;
        try {
            rep = step(current, prob, settings);
        } catch (const StepRejected& e) {
            result.termination = e.reason();
            result.message = e.what();
            return result;
        }
        rep.step_index = nstep;
        current = rep.accepted;

        const double rate_now = injection_rate(prob.source, current.fluid_radius(), current.time);
        injected += 0.5 * settings.dt * (rate_prev + rate_now);
        rate_prev = rate_now;
        const double mass_now =
            fluid_mass(current, prob.material, prob.fluid, settings.quadrature_tol);
        const double denom = std::max(injected, std::abs(mass_now - mass0));
        rep.mass_residual =
            denom > 0.0 ? std::abs(mass_now - mass0 - injected) / denom : 0.0;

        result.steps.push_back(std::move(rep));
        result.final_state = current;
    }
    return result;
}

} // namespace pennyfrac

#include "pennyfrac/elasticity.hpp"

#include "pennyfrac/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pennyfrac {

namespace {

constexpr double kPi = std::numbers::pi;

double elastic_prefactor(const MaterialParams& mat) {
    return 8.0 / (kPi * mat.plane_strain_modulus);
}

} // namespace

double opening(const State& state, const MaterialParams& mat, double r,
               const QuadratureEngine& eng) {
    const double a = state.crack_radius;
    if (r > a) throw DomainError("opening: query radius exceeds crack radius");
    if (r == a) return 0.0;
    LinearFieldChord pressure(state.mesh, state.pressures);
    double bracket = abel_transform(pressure, r, a, eng);
    if (mat.far_field_stress != 0.0 && state.fluid_radius() < a) {
        AnnulusChord lag(state.fluid_radius());
        bracket -= mat.far_field_stress * abel_transform(lag, r, a, eng);
    }
    return elastic_prefactor(mat) * bracket;
}

double opening_slope(const State& state, const MaterialParams& mat, double r,
                     const QuadratureEngine& eng) {
    const double a = state.crack_radius;
    if (!(r < a)) throw DomainError("opening_slope: requires r < a");
    LinearFieldChord pressure(state.mesh, state.pressures);
    double bracket = abel_transform_dr(pressure, r, a, eng);
    if (mat.far_field_stress != 0.0 && state.fluid_radius() < a) {
        AnnulusChord lag(state.fluid_radius());
        bracket -= mat.far_field_stress * abel_transform_dr(lag, r, a, eng);
    }
    return elastic_prefactor(mat) * bracket;
}

OpeningProfile opening_profile(const State& state, const MaterialParams& mat,
                               const std::vector<double>& radii, const QuadratureEngine& eng) {
    OpeningProfile prof;
    prof.crack_radius = state.crack_radius;
    prof.radii = radii;
    prof.openings.reserve(radii.size());
    prof.min_opening = 0.0;
    for (double r : radii) {
        const double w = opening(state, mat, r, eng);
        if (w < 0.0) {
            ++prof.negative_count;
            prof.min_opening = std::min(prof.min_opening, w);
        }
        prof.openings.push_back(w);
    }
    return prof;
}

double opening_radial_moment(const State& state, const MaterialParams& mat, double cap,
                             const QuadratureEngine& eng) {
    const double a = state.crack_radius;
    LinearFieldChord pressure(state.mesh, state.pressures);
    double bracket = abel_radial_moment(pressure, cap, a, eng);
    if (mat.far_field_stress != 0.0 && state.fluid_radius() < a) {
        AnnulusChord lag(state.fluid_radius());
        bracket -= mat.far_field_stress * abel_radial_moment(lag, cap, a, eng);
    }
    return elastic_prefactor(mat) * bracket;
}

OpeningRateTerms opening_rate_terms(const State& state, const MaterialParams& mat, double r,
                                    const std::vector<double>& pressure_rates, double a_rate,
                                    double l_rate, const SolverSettings& settings,
                                    const QuadratureEngine& eng) {
    if (pressure_rates.size() != state.pressures.size()) {
        throw DomainError("opening_rate_terms: rate vector size mismatch");
    }
    const double a = state.crack_radius;
    const double pref = elastic_prefactor(mat);
    OpeningRateTerms out;
    out.opening = opening(state, mat, r, eng);

    LinearFieldChord rate_field(state.mesh, pressure_rates);
    out.rate_p = pref * ((r == a) ? 0.0 : abel_transform(rate_field, r, a, eng));

    LinearFieldChord pressure(state.mesh, state.pressures);
    out.rate_a = pref * a_rate * abel_transform_da(pressure, r, a);

    if (settings.include_dadl_terms && r < state.fluid_radius()) {
        out.rate_l = pref * l_rate * abel_transform_dl(pressure, r, a, eng);
    }
    return out;
}

double sif(const State& state, const MaterialParams& mat, SifConvention convention) {
    const double a = state.crack_radius;
    if (!(a > 0.0)) throw DomainError("sif: crack radius must be > 0");
    const RadialMesh& mesh = state.mesh;
    // ∫_0^l p(r) r / sqrt(a^2 - r^2) dr, element by element with r = a sin(theta).
    double bracket = 0.0;
    const int gl_order = 16;
    for (int e = 0; e < mesh.element_count(); ++e) {
        const double r0 = mesh.node(e);
        const double r1 = mesh.node(e + 1);
        const double t0 = std::asin(std::clamp(r0 / a, 0.0, 1.0));
        const double t1 = std::asin(std::clamp(r1 / a, 0.0, 1.0));
        bracket += gauss_legendre(
            [&](double t) {
                const double r = a * std::sin(t);
                return state.pressure_at(r) * a * std::sin(t);
            },
            t0, t1, gl_order);
    }
    const double l = state.fluid_radius();
    if (mat.far_field_stress != 0.0 && l < a) {
        bracket -= mat.far_field_stress * std::sqrt(std::max(0.0, (a - l) * (a + l)));
    }
    const double prefactor = (convention == SifConvention::Paper)
                                 ? 2.0 / (kPi * std::sqrt(a))
                                 : 2.0 / std::sqrt(kPi * a);
    return prefactor * bracket;
}

} // namespace pennyfrac

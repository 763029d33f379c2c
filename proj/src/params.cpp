#include "pennyfrac/params.hpp"

#include "pennyfrac/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace pennyfrac {

namespace {
void require(bool ok, const std::string& msg) {
    if (!ok) throw DomainError(msg);
}
} // namespace

void MaterialParams::validate() const {
    require(plane_strain_modulus > 0.0, "material: plane_strain_modulus must be > 0");
    require(poisson_ratio >= 0.0 && poisson_ratio < 0.5, "material: poisson_ratio must be in [0, 0.5)");
    require(toughness >= 0.0, "material: toughness must be >= 0");
    require(numerical_viscosity > 0.0, "material: numerical_viscosity must be > 0");
    require(far_field_stress >= 0.0, "material: far_field_stress must be >= 0");
}

void FluidParams::validate() const {
    require(viscosity > 0.0, "fluid: viscosity must be > 0");
    require(density > 0.0, "fluid: density must be > 0");
}

void SourceTerm::validate() const {
    require(amplitude >= 0.0, "source: amplitude must be >= 0");
    require(radial_decay > 0.0, "source: radial_decay must be > 0");
    require(ramp_rate > 0.0, "source: ramp_rate must be > 0");
}

double SourceTerm::operator()(double r, double t) const {
    const double ramp = -std::expm1(-ramp_rate * t); // 1 - exp(-w t), exact at small t
    return amplitude / (2.0 * std::numbers::pi) * std::exp(-r * r / radial_decay) * ramp;
}

double SourceTerm::radial_derivative(double r, double t) const {
    return (*this)(r, t) * (-2.0 * r / radial_decay);
}

double SourceTerm::radial_moment(double cap, double t) const {
    const double ramp = -std::expm1(-ramp_rate * t);
    const double radial = 0.5 * radial_decay * (-std::expm1(-cap * cap / radial_decay));
    return amplitude / (2.0 * std::numbers::pi) * radial * ramp;
}

void SolverSettings::validate() const {
    require(dt > 0.0, "solver: dt must be > 0");
    require(tol_fluid_front > 0.0 && tol_fluid_front < 1.0, "solver: tol_fluid_front must be in (0, 1)");
    require(tol_crack_front > 0.0 && tol_crack_front < 1.0, "solver: tol_crack_front must be in (0, 1)");
    require(max_inner_iters >= 1, "solver: max_inner_iters must be >= 1");
    require(max_outer_iters >= 1, "solver: max_outer_iters must be >= 1");
    require(quadrature_tol > 0.0 && quadrature_tol < 1.0, "solver: quadrature_tol must be in (0, 1)");
    require(opening_floor > 0.0, "solver: opening_floor must be > 0");
}

} // namespace pennyfrac

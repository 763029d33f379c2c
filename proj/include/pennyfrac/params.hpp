#pragma once

#include <cstddef>

namespace pennyfrac {

// Elastic, toughness and crack-front regularization constants of the solid.
// All values in SI (Pa, Pa*sqrt(m), Pa*s/m).
struct MaterialParams {
    double plane_strain_modulus = 0.0; // E' [Pa]
    double poisson_ratio = 0.0;        // [-], informational; E' is operative
    double toughness = 0.0;            // K_Ic [Pa*sqrt(m)]
    double numerical_viscosity = 0.0;  // front regularization [Pa*s/m]
    double far_field_stress = 0.0;     // sigma_0 [Pa], compression positive

    void validate() const;
};

struct FluidParams {
    double viscosity = 0.0; // [Pa*s]
    double density = 0.0;   // [kg/m^3]

    void validate() const;
};

// Injected mass per unit fracture area:
//   s(r, t) = amplitude/(2*pi) * exp(-r^2/radial_decay) * (1 - exp(-ramp_rate*t))
struct SourceTerm {
    double amplitude = 0.0;    // [kg/m^2/s]
    double radial_decay = 1.0; // [m^2]
    double ramp_rate = 1.0;    // [1/s]

    void validate() const;

    double operator()(double r, double t) const;
    // Analytic d/dr of the flux at (r, t).
    double radial_derivative(double r, double t) const;
    // ∫_0^cap s(r, t) r dr in closed form.
    double radial_moment(double cap, double t) const;
};

enum class FrontNodeMode {
    Free,   // last row: linear continuation p_N - 2 p_{N-1} + p_{N-2} = 0
    Pinned, // last row: p_N = -sigma_0
};

enum class SifConvention {
    Paper,     // prefactor 2/(pi*sqrt(a))
    Classical, // prefactor 2/sqrt(pi*a)
};

struct SolverSettings {
    double dt = 0.0;               // [s]
    double tol_fluid_front = 1e-6; // relative, inner loop
    double tol_crack_front = 1e-6; // relative, outer loop
    int max_inner_iters = 50;
    int max_outer_iters = 50;
    bool include_dadl_terms = true; // dA/dl advection block in the matrix
    bool include_dadr_terms = true; // dA/dr source-coupling term on the RHS
    double quadrature_tol = 1e-9;   // relative, all assembly/kernel quadrature
    FrontNodeMode front_node = FrontNodeMode::Free;
    SifConvention sif_convention = SifConvention::Paper;
    double opening_floor = 1e-12;   // [m], guards the front-velocity denominator

    void validate() const;
};

} // namespace pennyfrac

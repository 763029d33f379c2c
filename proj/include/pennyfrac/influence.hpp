#pragma once

#include "pennyfrac/mesh.hpp"
#include "pennyfrac/quadrature.hpp"

#include <memory>
#include <vector>

namespace pennyfrac {

// Chord profile of a radial line density f supported in [0, support_end]:
//   g(z) = ∫_0^min(z, support_end) y f(y) / sqrt(z^2 - y^2) dy.
// The crack-opening integrals, their derivatives and all assembly blocks are
// expressed through g; implementations provide closed forms plus the
// breakpoint list where g changes analytic branch.
class ChordProfile {
public:
    virtual ~ChordProfile() = default;
    virtual double value(double z) const = 0;
    virtual double deriv(double z) const = 0;
    // f(0): the z->0 limit of g(z)/z.
    virtual double density_at_origin() const = 0;
    // f(support_end^-): weight of the moving-cap derivative.
    virtual double density_at_support_end() const = 0;
    virtual double support_end() const = 0;
    virtual const std::vector<double>& breakpoints() const = 0; // ascending, in (0, support_end]
};

// g for one linear hat psi_k on a uniform mesh (Appendix-style closed forms).
class HatChord final : public ChordProfile {
public:
    HatChord(int k, const RadialMesh& mesh);
    double value(double z) const override;
    double deriv(double z) const override;
    double density_at_origin() const override { return k_ == 0 ? 1.0 : 0.0; }
    double density_at_support_end() const override { return k_ == n_el_ ? 1.0 : 0.0; }
    double support_end() const override { return l_; }
    const std::vector<double>& breakpoints() const override { return breaks_; }

private:
    int k_;
    int n_el_;
    double h_;
    double l_;
    std::vector<double> breaks_;
};

// g for a piecewise-linear nodal field (the collapsed pressure profile).
class LinearFieldChord final : public ChordProfile {
public:
    LinearFieldChord(const RadialMesh& mesh, std::vector<double> nodal_values);
    double value(double z) const override;
    double deriv(double z) const override;
    double density_at_origin() const override { return values_.front(); }
    double density_at_support_end() const override { return values_.back(); }
    double support_end() const override { return mesh_.fluid_radius(); }
    const std::vector<double>& breakpoints() const override { return breaks_; }

private:
    RadialMesh mesh_;
    std::vector<double> values_;
    std::vector<double> breaks_;
};

// g for the uniform unit density on the lag annulus [inner_radius, +inf):
// g(z) = sqrt(z^2 - inner_radius^2) for z > inner_radius, else 0.
class AnnulusChord final : public ChordProfile {
public:
    explicit AnnulusChord(double inner_radius);
    double value(double z) const override;
    double deriv(double z) const override;
    double density_at_origin() const override { return 0.0; }
    double density_at_support_end() const override { return 0.0; }
    double support_end() const override { return inner_radius_; }
    const std::vector<double>& breakpoints() const override { return breaks_; }

private:
    double inner_radius_;
    std::vector<double> breaks_;
};

// T[g](r) = ∫_r^a g(z)/sqrt(z^2 - r^2) dz. Singular first panel handled by
// endpoint-value subtraction with the arccosh closed form for the constant;
// at r = 0 the 1/z kernel form is used instead.
double abel_transform(const ChordProfile& g, double r, double crack_radius,
                      const QuadratureEngine& eng);

// d/dr of T[g](r); zero at r = 0 by symmetry of the kernel.
double abel_transform_dr(const ChordProfile& g, double r, double crack_radius,
                         const QuadratureEngine& eng);

// d/da of T[g](r) = g(a)/sqrt(a^2 - r^2); requires r < a strictly.
double abel_transform_da(const ChordProfile& g, double r, double crack_radius);

// Moving-support-cap derivative of T[g](r):
//   d/dl T = f(l) * l * ∫_max(r,l)^a dz / (sqrt(z^2-r^2) sqrt(z^2-l^2)).
// Used with hat profiles this is nonzero only for the front hat.
double abel_transform_dl(const ChordProfile& g, double r, double crack_radius,
                         const QuadratureEngine& eng);

// Shared-grid evaluation of T[g] (and optionally d/dr T[g]) at many query
// radii: the chord is sampled once on a composite Gauss grid whose panels
// are bounded by the queries and the profile breakpoints; each query then
// reuses the samples for its regular panels and spends a dedicated
// substitution panel on its own singular end.
class AbelBatch {
public:
    AbelBatch(const ChordProfile& g, double crack_radius, std::vector<double> radii,
              const QuadratureEngine& eng, bool with_slopes);

    const std::vector<double>& radii() const { return radii_; }
    const std::vector<double>& values() const { return values_; }
    const std::vector<double>& slopes() const { return slopes_; }

private:
    std::vector<double> radii_;
    std::vector<double> values_;
    std::vector<double> slopes_;
};

// ∫_0^cap w-bracket r dr on the z axis: ∫_0^a g(z) (z - sqrt(max(0, z^2-cap^2))) dz.
double abel_radial_moment(const ChordProfile& g, double cap, double crack_radius,
                          const QuadratureEngine& eng);

// Influence values for all hats at one query radius.
struct InfluenceRow {
    double query_radius = 0.0;
    std::vector<double> value;  // A_k(r) [m]
    std::vector<double> d_dr;   // dA_k/dr [-]
    std::vector<double> d_da;   // dA_k/da [-]
    std::vector<double> d_dl;   // dA_k/dl [-] (nonzero only for k = N_el)
};

// Single-hat operations (preconditions mirror the integral domains).
double influence(int k, double r, double crack_radius, const RadialMesh& mesh,
                 const QuadratureEngine& eng);
double influence_dr(int k, double r, double crack_radius, const RadialMesh& mesh,
                    const QuadratureEngine& eng);
double influence_da(int k, double r, double crack_radius, const RadialMesh& mesh);
double influence_dl(int k, double r, double crack_radius, const RadialMesh& mesh,
                    const QuadratureEngine& eng);

InfluenceRow influence_row(double r, double crack_radius, const RadialMesh& mesh,
                           const QuadratureEngine& eng);

} // namespace pennyfrac

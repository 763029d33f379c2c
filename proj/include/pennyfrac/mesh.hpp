#pragma once

#include <cstddef>
#include <vector>

namespace pennyfrac {

// Uniform 1-D mesh of the fluid column [0, fluid_radius] with linear hat
// shape functions. Node k sits at k*element_size.
class RadialMesh {
public:
    RadialMesh() = default;
    RadialMesh(double fluid_radius, int element_count);

    double fluid_radius() const { return fluid_radius_; }
    int element_count() const { return element_count_; }
    int node_count() const { return element_count_ + 1; }
    double element_size() const { return h_; }
    double node(int k) const { return static_cast<double>(k) * h_; }

    // Hat function psi_k and its derivative at r; zero outside the support.
    double psi(int k, double r) const;
    double dpsi(int k, double r) const;

    // Index of the element containing r (clamped to the last element at r = l).
    int element_of(double r) const;

private:
    double fluid_radius_ = 0.0;
    int element_count_ = 0;
    double h_ = 0.0;
};

RadialMesh build_mesh(double fluid_radius, int element_count);

// Full solver state at one time level. Pressures are nodal values of the net
// pressure on the mesh; crack_radius >= mesh.fluid_radius().
struct State {
    double time = 0.0;
    double crack_radius = 0.0;
    RadialMesh mesh;
    std::vector<double> pressures;

    double fluid_radius() const { return mesh.fluid_radius(); }
    void validate() const;

    // Piecewise-linear interpolation of the nodal pressures; constant
    // extrapolation beyond the fluid front.
    double pressure_at(double r) const;
};

// New uniform mesh on [0, new_fluid_radius]; nodal pressures transferred by
// piecewise-linear interpolation, constant beyond the old front.
State remesh_transfer(const State& old_state, double new_fluid_radius);

} // namespace pennyfrac

#include "pennyfrac/mesh.hpp"

#include "pennyfrac/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pennyfrac {

RadialMesh::RadialMesh(double fluid_radius, int element_count)
    : fluid_radius_(fluid_radius), element_count_(element_count) {
    if (!(fluid_radius > 0.0)) throw DomainError("mesh: fluid_radius must be > 0");
    if (element_count < 2) throw DomainError("mesh: element_count must be >= 2");
    h_ = fluid_radius_ / static_cast<double>(element_count_);
}

double RadialMesh::psi(int k, double r) const {
    if (k < 0 || k > element_count_) return 0.0;
    const double rk = node(k);
    if (r < rk) {
        if (k == 0 || r <= rk - h_) return 0.0;
        return (r - (rk - h_)) / h_;
    }
    if (k == element_count_ || r >= rk + h_) return (r == rk) ? 1.0 : 0.0;
    return ((rk + h_) - r) / h_;
}

double RadialMesh::dpsi(int k, double r) const {
    if (k < 0 || k > element_count_) return 0.0;
    const double rk = node(k);
    if (r < rk) {
        if (k == 0 || r <= rk - h_) return 0.0;
        return 1.0 / h_;
    }
    if (k == element_count_ || r > rk + h_) return 0.0;
    return -1.0 / h_;
}

int RadialMesh::element_of(double r) const {
    int e = static_cast<int>(std::floor(r / h_));
    return std::clamp(e, 0, element_count_ - 1);
}

RadialMesh build_mesh(double fluid_radius, int element_count) {
    return RadialMesh(fluid_radius, element_count);
}

void State::validate() const {
    if (!(fluid_radius() > 0.0)) throw DomainError("state: fluid radius must be > 0");
    if (!(fluid_radius() <= crack_radius)) throw DomainError("state: fluid radius must not exceed crack radius");
    if (static_cast<int>(pressures.size()) != mesh.node_count()) {
        throw DomainError("state: pressure vector size does not match mesh node count");
    }
    for (double p : pressures) {
        if (!std::isfinite(p)) throw DomainError("state: non-finite nodal pressure");
    }
}

double State::pressure_at(double r) const {
    const double l = fluid_radius();
    if (r <= 0.0) return pressures.front();
    if (r >= l) return pressures.back();
    const int e = mesh.element_of(r);
    const double r0 = mesh.node(e);
    const double s = (r - r0) / mesh.element_size();
    return pressures[e] * (1.0 - s) + pressures[e + 1] * s;
}

State remesh_transfer(const State& old_state, double new_fluid_radius) {
    if (!(new_fluid_radius > 0.0)) throw DomainError("remesh: new fluid radius must be > 0");
    State out;
    out.time = old_state.time;
    out.crack_radius = old_state.crack_radius;
    out.mesh = RadialMesh(new_fluid_radius, old_state.mesh.element_count());
    out.pressures.resize(old_state.pressures.size());
    if (new_fluid_radius == old_state.fluid_radius()) {
        out.pressures = old_state.pressures; // identity transfer, bit exact
        return out;
    }
    for (int k = 0; k < out.mesh.node_count(); ++k) {
        out.pressures[static_cast<std::size_t>(k)] = old_state.pressure_at(out.mesh.node(k));
    }
    return out;
}

} // namespace pennyfrac

#include "pennyfrac/errors.hpp"
#include "pennyfrac/mesh.hpp"
#include "pennyfrac/params.hpp"
#include "pennyfrac/units.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"

using namespace pennyfrac;

namespace {
SourceTerm paper_source() {
    SourceTerm s;
    s.amplitude = 0.03;
    s.radial_decay = 32.0;
    s.ramp_rate = 2.0;
    return s;
}
} // namespace

TEST_CASE("source term limiting value at the origin") {
    SourceTerm s = paper_source();
    // late time, center of the crack: amplitude / (2 pi)
    CHECK(s(0.0, 1e9) == doctest::Approx(0.03 / (2.0 * std::numbers::pi)).epsilon(1e-12));
    CHECK(s(0.0, 1e9) == doctest::Approx(4.7746e-3).epsilon(1e-4));
}

TEST_CASE("source term vanishes at t = 0") {
    SourceTerm s = paper_source();
    for (double r : {0.0, 1.0, 4.0, 25.0}) CHECK(s(r, 0.0) == 0.0);
}

TEST_CASE("source term pointwise formula") {
    SourceTerm s = paper_source();
    const double expect = 0.03 / (2.0 * std::numbers::pi) * std::exp(-0.5) * (1.0 - std::exp(-2.0));
    CHECK(s(4.0, 1.0) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("source term monotone in time and radius") {
    SourceTerm s = paper_source();
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> ur(0.0, 12.0), ut(0.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        const double r = ur(rng), t = ut(rng);
        CHECK(s(r, t + 0.1) >= s(r, t));
        CHECK(s(r + 0.1, t) <= s(r, t));
    }
}

TEST_CASE("source radial derivative and moment agree with quadrature") {
    SourceTerm s = paper_source();
    const double t = 0.7;
    for (double r : {0.5, 2.0, 6.0}) {
        const double d = 1e-6;
        const double fd = (s(r + d, t) - s(r - d, t)) / (2.0 * d);
        CHECK(s.radial_derivative(r, t) == doctest::Approx(fd).epsilon(1e-7));
    }
    const double cap = 5.0;
    const double expect = oracles::simpson([&](double r) { return s(r, t) * r; }, 0.0, cap, 1e-14);
    CHECK(s.radial_moment(cap, t) == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("mesh construction") {
    RadialMesh m = build_mesh(0.01, 10);
    CHECK(m.element_size() == doctest::Approx(0.001).epsilon(1e-15));
    for (int k = 0; k <= 10; ++k) CHECK(m.node(k) == doctest::Approx(0.001 * k).epsilon(1e-15));

    RadialMesh m2 = build_mesh(1.0, 2);
    CHECK(m2.node(0) == 0.0);
    CHECK(m2.node(1) == 0.5);
    CHECK(m2.node(2) == 1.0);

    CHECK_THROWS_AS(build_mesh(1.0, 1), DomainError);
    CHECK_THROWS_AS(build_mesh(0.0, 4), DomainError);
    CHECK_THROWS_AS(build_mesh(-1.0, 4), DomainError);
}

TEST_CASE("hat functions have the Lagrange property") {
    RadialMesh m(0.8, 7);
    for (int k = 0; k <= 7; ++k) {
        for (int j = 0; j <= 7; ++j) {
            CHECK(m.psi(k, m.node(j)) == doctest::Approx(k == j ? 1.0 : 0.0).epsilon(1e-14));
        }
    }
}

TEST_CASE("hats form a partition of unity") {
    RadialMesh m(0.03, 9);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> ur(0.0, 0.03);
    for (int i = 0; i < 300; ++i) {
        const double r = ur(rng);
        double sum = 0.0, dsum = 0.0;
        for (int k = 0; k <= 9; ++k) {
            sum += m.psi(k, r);
            dsum += m.dpsi(k, r);
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(std::abs(dsum) < 1e-9);
    }
}

namespace {
State make_state(double l, double a, std::vector<double> p) {
    State s;
    s.crack_radius = a;
    s.mesh = RadialMesh(l, static_cast<int>(p.size()) - 1);
    s.pressures = std::move(p);
    return s;
}
} // namespace

TEST_CASE("remesh transfer is the identity at equal radius") {
    State s = make_state(0.01, 0.02, {1.0, 2.0, -0.5, 3.25, 7.0});
    State t = remesh_transfer(s, 0.01);
    for (std::size_t k = 0; k < s.pressures.size(); ++k) {
        CHECK(t.pressures[k] == s.pressures[k]); // bit exact
    }
}

TEST_CASE("remesh transfer reproduces linear fields exactly") {
    const double c = 3.7e8;
    std::vector<double> p;
    RadialMesh m(0.012, 6);
    for (int k = 0; k <= 6; ++k) p.push_back(c * m.node(k));
    State s = make_state(0.012, 0.02, p);
    State t = remesh_transfer(s, 0.009); // shrink: all new nodes interior
    for (int k = 0; k <= 6; ++k) {
        CHECK(t.pressures[static_cast<std::size_t>(k)] ==
              doctest::Approx(c * t.mesh.node(k)).epsilon(1e-14));
    }
}

TEST_CASE("remesh transfer matches an independent interpolation oracle") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> up(0.5e6, 2e6);
    std::vector<double> p;
    for (int k = 0; k <= 8; ++k) p.push_back(up(rng));
    const double l_old = 0.01;
    State s = make_state(l_old, 0.02, p);
    const double l_new = 1.05 * l_old;
    State t = remesh_transfer(s, l_new);
    const double h_old = l_old / 8.0;
    for (int k = 0; k <= 8; ++k) {
        const double r = t.mesh.node(k);
        double expect;
        if (r >= l_old) {
            expect = p.back(); // constant extrapolation
        } else {
            const int e = std::min(7, static_cast<int>(r / h_old));
            const double s01 = (r - e * h_old) / h_old;
            expect = p[static_cast<std::size_t>(e)] * (1.0 - s01) +
                     p[static_cast<std::size_t>(e + 1)] * s01;
        }
        CHECK(t.pressures[static_cast<std::size_t>(k)] == doctest::Approx(expect).epsilon(1e-13));
    }
}

TEST_CASE("remesh transfer is idempotent at the same radius") {
    State s = make_state(0.01, 0.02, {1e6, 1.1e6, 0.9e6, 1.05e6, 1e6});
    State once = remesh_transfer(s, 0.0105);
    State again = remesh_transfer(once, 0.0105);
    for (std::size_t k = 0; k < once.pressures.size(); ++k) {
        CHECK(again.pressures[k] == once.pressures[k]);
    }
}

TEST_CASE("parameter invariants are enforced") {
    MaterialParams mat;
    mat.plane_strain_modulus = 4e10;
    mat.poisson_ratio = 0.2;
    mat.toughness = 5e5;
    mat.numerical_viscosity = 1e7;
    CHECK_NOTHROW(mat.validate());
    mat.poisson_ratio = 0.5;
    CHECK_THROWS_AS(mat.validate(), DomainError);
    mat.poisson_ratio = 0.2;
    mat.numerical_viscosity = 0.0;
    CHECK_THROWS_AS(mat.validate(), DomainError);

    FluidParams fl;
    fl.viscosity = 0.0;
    fl.density = 1e3;
    CHECK_THROWS_AS(fl.validate(), DomainError);

    SolverSettings set;
    set.dt = 0.0;
    CHECK_THROWS_AS(set.validate(), DomainError);
}

TEST_CASE("unit conversions round-trip to high precision") {
    using namespace units;
    struct Case {
        Kind kind;
        const char* unit;
        double value;
    };
    const Case cases[] = {
        {Kind::Pressure, "N/mm^2", 4e4},   {Kind::Pressure, "MPa", 1.0},
        {Kind::Length, "mm", 20.0},        {Kind::Toughness, "MPa*sqrt(m)", 0.5},
        {Kind::Viscosity, "MPa*s", 0.89e-9}, {Kind::Density, "kg/m^3", 1e3},
        {Kind::MassFlux, "kg/mm^2/s", 0.03}, {Kind::Area, "mm^2", 32.0},
        {Kind::FrontViscosity, "N*s/m^3", 0.1}, {Kind::Rate, "1/s", 2.0},
    };
    for (const auto& c : cases) {
        const double si = to_si(c.kind, c.value, c.unit, "test");
        const double back = si / *factor(c.kind, c.unit);
        CHECK(back == doctest::Approx(c.value).epsilon(1e-12));
    }
    // eta in N*s/m^3 and Pa*s/m is the same quantity
    CHECK(to_si(Kind::FrontViscosity, 0.1, "N*s/m^3", "t") ==
          to_si(Kind::FrontViscosity, 0.1, "Pa*s/m", "t"));
    CHECK_THROWS_AS(to_si(Kind::Pressure, 1.0, "furlong", "t"), ConfigError);
}

TEST_CASE("state invariants") {
    State s = make_state(0.01, 0.02, {1e6, 1e6, 1e6});
    CHECK_NOTHROW(s.validate());
    s.crack_radius = 0.005; // fluid beyond the crack
    CHECK_THROWS_AS(s.validate(), DomainError);
    s.crack_radius = 0.02;
    s.pressures[1] = std::nan("");
    CHECK_THROWS_AS(s.validate(), DomainError);
}

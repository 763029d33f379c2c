#include "pennyfrac/errors.hpp"
#include "pennyfrac/influence.hpp"
#include "pennyfrac/mesh.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"

using namespace pennyfrac;

namespace {
QuadratureEngine tight() {
    QuadratureEngine e;
    e.rel_tol = 1e-11;
    return e;
}
} // namespace

TEST_CASE("influence vanishes at the crack tip") {
    RadialMesh mesh(0.01, 6);
    QuadratureEngine eng = tight();
    for (int k = 0; k <= 6; ++k) {
        CHECK(influence(k, 0.02, 0.02, mesh, eng) == 0.0);
    }
}

TEST_CASE("partition of unity collapses the influence sum") {
    // with l = a and unit nodal values, sum_k A_k(r) = sqrt(a^2 - r^2)
    const double a = 1.0;
    RadialMesh mesh(a, 8);
    QuadratureEngine eng = tight();
    for (double r : {0.0, 0.31, 0.77, 0.95}) {
        double sum = 0.0;
        for (int k = 0; k <= 8; ++k) sum += influence(k, r, a, mesh, eng);
        CHECK(sum == doctest::Approx(std::sqrt(a * a - r * r)).epsilon(1e-9));
    }
    double at_center = 0.0;
    for (int k = 0; k <= 8; ++k) at_center += influence(k, 0.0, a, mesh, eng);
    CHECK(at_center == doctest::Approx(a).epsilon(1e-9));
}

TEST_CASE("benchmark-geometry influence matches the nested quadrature oracle") {
    // a = 20 mm, l = 10 mm, N_el = 10, k = 5, r = 3 mm
    RadialMesh mesh(0.01, 10);
    QuadratureEngine eng = tight();
    const double got = influence(5, 0.003, 0.02, mesh, eng);
    const double want = oracles::influence(5, 0.003, 0.02, 0.001, 10, 0.01);
    CHECK(got == doctest::Approx(want).epsilon(1e-6));
    CHECK(got == doctest::Approx(1.504119932312264e-03).epsilon(1e-10)); // pinned
}

TEST_CASE("influence is continuous across the case boundaries") {
    RadialMesh mesh(0.01, 8);
    QuadratureEngine eng = tight();
    const double h = mesh.element_size();
    const double a = 0.016;
    const double eps = 1e-9 * h;
    for (int k : {0, 3, 8}) {
        for (int j = std::max(1, k - 1); j <= std::min(8, k + 1); ++j) {
            const double b = j * h;
            const double below = influence(k, b - eps, a, mesh, eng);
            const double at = influence(k, b, a, mesh, eng);
            const double above = influence(k, b + eps, a, mesh, eng);
            CHECK(std::abs(below - at) < 1e-9 * std::max(1.0, std::abs(at)) + 1e-12);
            CHECK(std::abs(above - at) < 1e-9 * std::max(1.0, std::abs(at)) + 1e-12);
        }
    }
}

TEST_CASE("influence is nonnegative") {
    RadialMesh mesh(0.01, 7);
    QuadratureEngine eng = tight();
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> ur(0.0, 1.0);
    for (int i = 0; i < 60; ++i) {
        const double a = 0.01 * (1.0 + ur(rng));
        const double r = a * ur(rng);
        const int k = static_cast<int>(ur(rng) * 8.0);
        CHECK(influence(k, r, a, mesh, eng) >= 0.0);
    }
}

TEST_CASE("query preconditions are enforced") {
    RadialMesh mesh(0.01, 5);
    QuadratureEngine eng = tight();
    CHECK_THROWS_AS(influence(2, 0.03, 0.02, mesh, eng), DomainError);   // r > a
    CHECK_THROWS_AS(influence(9, 0.001, 0.02, mesh, eng), DomainError);  // bad k
    CHECK_THROWS_AS(influence(2, 0.001, 0.005, mesh, eng), DomainError); // l > a
    CHECK_THROWS_AS(influence_da(2, 0.02, 0.02, mesh), DomainError);     // r = a singular
    CHECK_THROWS_AS(influence_dl(5, 0.012, 0.02, mesh, eng), DomainError); // r >= l, front hat
}

TEST_CASE("radial derivative matches finite differences away from boundaries") {
    RadialMesh mesh(0.01, 10);
    QuadratureEngine eng = tight();
    const double a = 0.02;
    const double h = mesh.element_size();
    std::mt19937 rng(123);
    std::uniform_real_distribution<double> ur(0.0, 1.0);
    int done = 0;
    while (done < 50) {
        const int k = static_cast<int>(ur(rng) * 11.0);
        double r = (0.03 + 0.9 * ur(rng)) * mesh.fluid_radius();
        if (std::abs(r / h - std::round(r / h)) < 0.08) continue;
        ++done;
        const double d = 1e-6 * a;
        const double fd = (influence(k, r + d, a, mesh, eng) - influence(k, r - d, a, mesh, eng)) /
                          (2.0 * d);
        const double an = influence_dr(k, r, a, mesh, eng);
        CHECK(an == doctest::Approx(fd).epsilon(1e-5));
    }
}

TEST_CASE("radial derivative vanishes at the center") {
    RadialMesh mesh(0.01, 6);
    QuadratureEngine eng = tight();
    for (int k = 0; k <= 6; ++k) CHECK(influence_dr(k, 0.0, 0.02, mesh, eng) == 0.0);
}

TEST_CASE("radial derivative below the support integrates the printed kernel") {
    // case r < (k-1)h: dA/dr = ∫ r (z^2-r^2)^{-3/2} g_k(z) dz over the support
    RadialMesh mesh(0.01, 10);
    QuadratureEngine eng = tight();
    const int k = 6;
    const double r = 0.0031, a = 0.02, h = mesh.element_size();
    const double direct = oracles::simpson(
        [&](double z) {
            const double q = z * z - r * r;
            return oracles::hat_chord(k, z, h, 10, 0.01) * r / (q * std::sqrt(q));
        },
        (k - 1) * h, a, 1e-14);
    CHECK(influence_dr(k, r, a, mesh, eng) == doctest::Approx(direct).epsilon(1e-8));
}

TEST_CASE("crack-radius derivative matches finite differences") {
    RadialMesh mesh(0.01, 10);
    QuadratureEngine eng = tight();
    const double a = 0.02;
    std::mt19937 rng(321);
    std::uniform_real_distribution<double> ur(0.0, 1.0);
    for (int i = 0; i < 30; ++i) {
        const int k = static_cast<int>(ur(rng) * 11.0);
        const double r = 0.9 * a * ur(rng);
        const double d = 1e-6 * a;
        const double fd = (influence(k, r, a + d, mesh, eng) - influence(k, r, a - d, mesh, eng)) /
                          (2.0 * d);
        CHECK(influence_da(k, r, a, mesh) == doctest::Approx(fd).epsilon(1e-5));
    }
}

TEST_CASE("crack-radius derivative at the center uses the chord at z = a") {
    // value = (I2(a) + I4(a)) / a for an interior hat
    RadialMesh mesh(0.01, 10);
    const int k = 4;
    const double a = 0.02;
    const double chord = oracles::hat_chord(k, a, mesh.element_size(), 10, 0.01);
    CHECK(influence_da(k, 0.0, a, mesh) == doctest::Approx(chord / a).epsilon(1e-9));
}

TEST_CASE("crack-radius derivative pinned regression") {
    // a = 2l, N_el = 10, k = 3, r = l/2
    RadialMesh mesh(0.01, 10);
    CHECK(influence_da(3, 0.005, 0.02, mesh) ==
          doctest::Approx(7.839739028946158e-03).epsilon(1e-10));
    const double oracle = oracles::hat_chord(3, 0.02, 0.001, 10, 0.01) /
                          std::sqrt(0.02 * 0.02 - 0.005 * 0.005);
    CHECK(influence_da(3, 0.005, 0.02, mesh) == doctest::Approx(oracle).epsilon(1e-9));
}

TEST_CASE("fluid-front derivative vanishes for all but the front hat") {
    RadialMesh mesh(0.01, 9);
    QuadratureEngine eng = tight();
    for (int k = 0; k < 9; ++k) {
        CHECK(influence_dl(k, 0.004, 0.02, mesh, eng) == 0.0);
    }
    CHECK(influence_dl(9, 0.004, 0.02, mesh, eng) > 0.0);
}

TEST_CASE("front-hat fluid derivative matches the support-cap finite difference") {
    RadialMesh mesh(0.01, 10);
    QuadratureEngine eng = tight();
    const double a = 0.02, l = 0.01, h = mesh.element_size();
    for (double r : {0.002, 0.0055, 0.009}) {
        const double d = 1e-6 * l;
        const double up = oracles::influence(10, r, a, h, 10, l + d, true);
        const double dn = oracles::influence(10, r, a, h, 10, l - d, true);
        const double fd = (up - dn) / (2.0 * d);
        CHECK(influence_dl(10, r, a, mesh, eng) == doctest::Approx(fd).epsilon(1e-4));
    }
}

TEST_CASE("front-hat fluid derivative diverges logarithmically at the front") {
    // The printed closed form suggests a 1/sqrt(l^2-r^2) rate; the
    // finite-difference oracle shows the true divergence is logarithmic,
    // so equal increments under geometric approach to the front.
    RadialMesh mesh(0.01, 10);
    QuadratureEngine eng = tight();
    const double a = 0.02, l = 0.01;
    const double v1 = influence_dl(10, l - 1e-4, a, mesh, eng);
    const double v2 = influence_dl(10, l - 1e-5, a, mesh, eng);
    const double v3 = influence_dl(10, l - 1e-6, a, mesh, eng);
    CHECK(v2 > v1);
    CHECK(v3 > v2);
    const double inc1 = v2 - v1, inc2 = v3 - v2;
    // log rate: increments equal; 1/sqrt rate: inc2 / inc1 ~ sqrt(10)
    CHECK(inc2 / inc1 == doctest::Approx(1.0).epsilon(0.15));
}

TEST_CASE("influence row agrees with single-hat evaluations") {
    RadialMesh mesh(0.01, 6);
    QuadratureEngine eng = tight();
    const double a = 0.018, r = 0.0042;
    InfluenceRow row = influence_row(r, a, mesh, eng);
    CHECK(row.query_radius == r);
    for (int k = 0; k <= 6; ++k) {
        const auto ku = static_cast<std::size_t>(k);
        CHECK(row.value[ku] == doctest::Approx(influence(k, r, a, mesh, eng)).epsilon(1e-12));
        CHECK(row.d_dr[ku] == doctest::Approx(influence_dr(k, r, a, mesh, eng)).epsilon(1e-12));
        CHECK(row.d_da[ku] == doctest::Approx(influence_da(k, r, a, mesh)).epsilon(1e-12));
        if (k < 6) CHECK(row.d_dl[ku] == 0.0);
    }
}

TEST_CASE("batch transform agrees with the pointwise transform") {
    RadialMesh mesh(0.01, 12);
    QuadratureEngine eng = tight();
    eng.order = 20;
    const double a = 0.02;
    std::vector<double> p;
    for (int k = 0; k <= 12; ++k) p.push_back(1e6 * (1.0 + 0.2 * std::sin(0.9 * k)));
    LinearFieldChord chord(mesh, p);
    std::vector<double> radii;
    for (int i = 1; i <= 40; ++i) radii.push_back(0.0099 * i / 40.0);
    AbelBatch batch(chord, a, radii, eng, true);
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const double v = abel_transform(chord, radii[i], a, eng);
        const double s = abel_transform_dr(chord, radii[i], a, eng);
        CHECK(batch.values()[i] == doctest::Approx(v).epsilon(1e-8));
        CHECK(batch.slopes()[i] == doctest::Approx(s).epsilon(1e-6));
    }
}

TEST_CASE("radial moment matches direct integration of the opening bracket") {
    RadialMesh mesh(0.01, 8);
    QuadratureEngine eng = tight();
    const double a = 0.02;
    std::vector<double> p;
    for (int k = 0; k <= 8; ++k) p.push_back(1e6 * (1.0 + 0.1 * k));
    LinearFieldChord chord(mesh, p);
    const double got = abel_radial_moment(chord, 0.01, a, eng);
    const double want = oracles::simpson(
        [&](double r) { return abel_transform(chord, r, a, eng) * r; }, 0.0, 0.01, 1e-13);
    CHECK(got == doctest::Approx(want).epsilon(1e-8));
}

TEST_CASE("randomized closed-form vs oracle sweep") {
    std::mt19937 rng(2026);
    std::uniform_real_distribution<double> ur(0.0, 1.0);
    QuadratureEngine eng = tight();
    for (int i = 0; i < 25; ++i) {
        const int n_el = 4 + static_cast<int>(ur(rng) * 9.0);
        const double l = 0.005 + 0.02 * ur(rng);
        const double a = l * (1.0 + 1.4 * ur(rng));
        const int k = static_cast<int>(ur(rng) * (n_el + 1));
        const double r = 0.98 * a * ur(rng);
        RadialMesh mesh(l, n_el);
        const double got = influence(k, r, a, mesh, eng);
        const double want = oracles::influence(k, r, a, mesh.element_size(), n_el, l);
        CHECK(got == doctest::Approx(want).epsilon(1e-6));
    }
}

#include "pennyfrac/errors.hpp"
#include "pennyfrac/hat_integrals.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"

using namespace pennyfrac;

namespace {

// direct theta-substituted quadrature of ∫ y psi / sqrt(z^2 - y^2) dy
double chord_oracle(double z, double y0, double y1, const std::function<double(double)>& psi) {
    const double t0 = std::asin(std::min(1.0, y0 / z));
    const double t1 = std::asin(std::min(1.0, y1 / z));
    return oracles::simpson(
        [&](double t) {
            const double y = z * std::sin(t);
            return z * std::sin(t) * psi(y);
        },
        t0, t1, 1e-14);
}

} // namespace

TEST_CASE("rising partial segment matches brute-force quadrature") {
    for (int k : {1, 2, 5, 9}) {
        for (double h : {0.3, 1.0, 2.5e-3}) {
            auto psi_up = [&](double y) { return y / h - (k - 1); };
            for (double frac : {0.15, 0.5, 0.97, 1.0}) {
                const double z = (k - 1) * h + frac * h;
                const double got = hat::rising_partial(z, k, h);
                const double want = chord_oracle(z, (k - 1) * h, z, psi_up);
                CHECK(got == doctest::Approx(want).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("rising partial collapses for the first element") {
    // k = 1 kills two of the three terms; at z = h the value is pi h / 4
    for (double h : {0.5, 1.0, 3.3e-3}) {
        CHECK(hat::rising_partial(h, 1, h) ==
              doctest::Approx(std::numbers::pi * h / 4.0).epsilon(1e-14));
    }
}

TEST_CASE("full segments match brute-force quadrature") {
    for (int k : {1, 3, 7}) {
        const double h = 0.7;
        auto psi_up = [&](double y) { return y / h - (k - 1); };
        auto psi_dn = [&](double y) { return -y / h + (k + 1); };
        for (double z : {(k + 1.0001) * h, (k + 2.0) * h, (k + 9.0) * h}) {
            CHECK(hat::rising_full(z, k, h) ==
                  doctest::Approx(chord_oracle(z, (k - 1) * h, k * h, psi_up)).epsilon(1e-10));
            CHECK(hat::falling_full(z, k, h) ==
                  doctest::Approx(chord_oracle(z, k * h, (k + 1) * h, psi_dn)).epsilon(1e-10));
        }
        // falling partial on its own range
        for (double frac : {0.2, 0.8}) {
            const double z = k * h + frac * h;
            CHECK(hat::falling_partial(z, k, h) ==
                  doctest::Approx(chord_oracle(z, k * h, z, psi_dn)).epsilon(1e-10));
        }
    }
}

TEST_CASE("falling full at its lower endpoint matches the oracle") {
    // first radicand vanishes at z = (k+1) h
    const int k = 4;
    const double h = 1.3;
    const double z = (k + 1) * h;
    auto psi_dn = [&](double y) { return -y / h + (k + 1); };
    CHECK(hat::falling_full(z, k, h) ==
          doctest::Approx(chord_oracle(z, k * h, (k + 1) * h, psi_dn)).epsilon(1e-10));
}

TEST_CASE("domain violations are rejected with the radicand named") {
    CHECK_THROWS_WITH_AS(hat::rising_partial(0.5, 2, 1.0), doctest::Contains("radicand"),
                         DomainError);
    CHECK_THROWS_AS(hat::rising_full(1.5, 2, 1.0), DomainError);
    CHECK_THROWS_AS(hat::falling_full(2.5, 2, 1.0), DomainError);
}

TEST_CASE("segment derivatives match finite differences") {
    const double h = 0.42;
    const double d = 1e-7;
    for (int k : {1, 3, 6}) {
        const double z1 = (k - 0.4) * h;
        CHECK(hat::rising_partial_deriv(z1, k, h) ==
              doctest::Approx((hat::rising_partial(z1 + d, k, h) - hat::rising_partial(z1 - d, k, h)) /
                              (2 * d))
                  .epsilon(1e-6));
        const double z2 = (k + 2.3) * h;
        CHECK(hat::rising_full_deriv(z2, k, h) ==
              doctest::Approx((hat::rising_full(z2 + d, k, h) - hat::rising_full(z2 - d, k, h)) /
                              (2 * d))
                  .epsilon(1e-6));
        CHECK(hat::falling_full_deriv(z2, k, h) ==
              doctest::Approx((hat::falling_full(z2 + d, k, h) - hat::falling_full(z2 - d, k, h)) /
                              (2 * d))
                  .epsilon(1e-6));
        const double z3 = (k + 0.6) * h;
        CHECK(hat::falling_partial_deriv(z3, k, h) ==
              doctest::Approx(
                  (hat::falling_partial(z3 + d, k, h) - hat::falling_partial(z3 - d, k, h)) /
                  (2 * d))
                  .epsilon(1e-6));
    }
}

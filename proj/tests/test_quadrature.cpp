#include "pennyfrac/errors.hpp"
#include "pennyfrac/quadrature.hpp"

#include <doctest.h>

#include <cmath>

using namespace pennyfrac;

TEST_CASE("fixed Gauss-Legendre is exact on polynomials") {
    for (int order : {4, 8, 15}) {
        // degree 2*order-1 polynomial integrates exactly; test a few powers
        for (int p = 0; p < 2 * order - 1; ++p) {
            const double got = gauss_legendre([&](double x) { return std::pow(x, p); }, 0.0, 1.0, order);
            CHECK(got == doctest::Approx(1.0 / (p + 1)).epsilon(1e-12));
        }
    }
}

TEST_CASE("rule on [0,1] has unit weight sum and ascending nodes") {
    const GaussRule01& r = gauss_rule_01(15);
    double s = 0.0;
    for (std::size_t i = 0; i < r.weights.size(); ++i) {
        s += r.weights[i];
        if (i > 0) CHECK(r.nodes[i] > r.nodes[i - 1]);
    }
    CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("adaptive integration reaches the requested tolerance") {
    QuadratureEngine eng;
    eng.rel_tol = 1e-11;
    CHECK(integrate([](double x) { return std::sin(x); }, 0.0, 3.0, eng) ==
          doctest::Approx(1.0 - std::cos(3.0)).epsilon(1e-10));
    // integrable sqrt endpoint behavior
    CHECK(integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0, eng) ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("vector integration shares the grid") {
    QuadratureEngine eng;
    eng.rel_tol = 1e-11;
    auto f = [](double x, double* out) {
        out[0] = x * x;
        out[1] = std::exp(x);
    };
    auto got = integrate_vec(f, 2, 0.0, 2.0, eng);
    CHECK(got[0] == doctest::Approx(8.0 / 3.0).epsilon(1e-10));
    CHECK(got[1] == doctest::Approx(std::exp(2.0) - 1.0).epsilon(1e-10));
}

TEST_CASE("subdivision exhaustion is reported with the error estimate") {
    QuadratureEngine eng;
    eng.rel_tol = 1e-10;
    eng.max_depth = 3;
    // a needle the coarse panels cannot resolve within 3 levels
    auto needle = [](double x) { return 1.0 / (1e-12 + (x - 0.318309) * (x - 0.318309)); };
    CHECK_THROWS_AS(integrate(needle, 0.0, 1.0, eng), NumericalError);
}

TEST_CASE("engine validation") {
    QuadratureEngine eng;
    eng.order = 3;
    CHECK_THROWS_AS(eng.validate(), DomainError);
    eng.order = 15;
    eng.rel_tol = 1e-2;
    CHECK_THROWS_AS(eng.validate(), DomainError);
    eng.rel_tol = 1e-9;
    CHECK_NOTHROW(eng.validate());
}

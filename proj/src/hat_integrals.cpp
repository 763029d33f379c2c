#include "pennyfrac/hat_integrals.hpp"

#include "pennyfrac/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace pennyfrac::hat {

namespace {

constexpr double kPi = std::numbers::pi;

// sqrt(z^2 - y^2) with the floating-point noise clamp from the design rules.
double root(double z, double y, const char* what) {
    const double rad = (z - y) * (z + y);
    const double scale = std::max(z * z, y * y);
    if (rad < -1e-14 * scale) {
        throw DomainError(std::string("hat integral domain violation: radicand ") + what + " = " +
                          std::to_string(rad) + " at z = " + std::to_string(z));
    }
    return std::sqrt(std::max(0.0, rad));
}

double asin_ratio(double num, double den) {
    if (den <= 0.0) return 0.0;
    return std::asin(std::clamp(num / den, -1.0, 1.0));
}

} // namespace

double rising_partial(double z, int k, double h) {
    const double b = (k - 1) * h;
    const double rb = root(z, b, "z^2 - ((k-1)h)^2");
    return kPi * z * z / (4.0 * h) - 0.5 * (k - 1) * rb - z * z / (2.0 * h) * asin_ratio(b, z);
}

double rising_full(double z, int k, double h) {
    const double b = (k - 1) * h;
    const double c = k * h;
    const double rb = root(z, b, "z^2 - ((k-1)h)^2");
    const double rc = root(z, c, "z^2 - (kh)^2");
    return 0.5 * (k - 2) * rc - 0.5 * (k - 1) * rb +
           z * z / (2.0 * h) * (asin_ratio(c, z) - asin_ratio(b, z));
}

double falling_partial(double z, int k, double h) {
    const double c = k * h;
    const double rc = root(z, c, "z^2 - (kh)^2");
    return -kPi * z * z / (4.0 * h) + 0.5 * (k + 2) * rc + z * z / (2.0 * h) * asin_ratio(c, z);
}

double falling_full(double z, int k, double h) {
    const double c = k * h;
    const double d = (k + 1) * h;
    const double rc = root(z, c, "z^2 - (kh)^2");
    const double rd = root(z, d, "z^2 - ((k+1)h)^2");
    return -0.5 * (k + 1) * rd + 0.5 * (k + 2) * rc +
           z * z / (2.0 * h) * (asin_ratio(c, z) - asin_ratio(d, z));
}

double rising_partial_deriv(double z, int k, double h) {
    const double b = (k - 1) * h;
    return z * (kPi - 2.0 * asin_ratio(b, z)) / (2.0 * h);
}

double rising_full_deriv(double z, int k, double h) {
    const double b = (k - 1) * h;
    const double c = k * h;
    const double rc = root(z, c, "z^2 - (kh)^2");
    return -z / rc + z / h * (asin_ratio(c, z) - asin_ratio(b, z));
}

double falling_partial_deriv(double z, int k, double h) {
    const double c = k * h;
    const double rc = root(z, c, "z^2 - (kh)^2");
    return -kPi * z / (2.0 * h) + z / rc + z / h * asin_ratio(c, z);
}

double falling_full_deriv(double z, int k, double h) {
    const double c = k * h;
    const double d = (k + 1) * h;
    const double rc = root(z, c, "z^2 - (kh)^2");
    return z / rc + z / h * (asin_ratio(c, z) - asin_ratio(d, z));
}

} // namespace pennyfrac::hat

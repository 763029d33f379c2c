// Test-only brute-force machinery: adaptive Simpson with substitutions that
// absorb the kernel singularities. Independent of the production quadrature
// and transform paths on purpose.
#pragma once

#include <cmath>
#include <functional>

namespace oracles {

inline double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                          double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth > 48 || std::abs(left + right - whole) < 15.0 * tol) return left + right;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

inline double simpson(const std::function<double(double)>& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    return simpson_rec(f, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, 0);
}

// Hat on a frozen uniform grid; optionally continue the last hat's rising
// line past its node (support-cap semantics).
inline double hat(int k, double y, double h, int n_el, bool extend_last = false) {
    const double yk = k * h;
    if (k == n_el) {
        if (y <= yk - h) return 0.0;
        if (!extend_last && y > yk) return 0.0;
        return (y - (yk - h)) / h;
    }
    if (y < 0.0 || y <= yk - h || y >= yk + h) return (k == 0 && y == 0.0) ? 1.0 : 0.0;
    if (y <= yk) return (y - (yk - h)) / h;
    return ((yk + h) - y) / h;
}

// ∫_0^min(z, cap) y psi_k(y)/sqrt(z^2-y^2) dy via y = z sin(t).
inline double hat_chord(int k, double z, double h, int n_el, double cap,
                        bool extend_last = false, double tol = 1e-13) {
    if (z <= 0.0) return 0.0;
    const double lo = std::max(0.0, (k - 1) * h);
    double hi = std::min(z, cap);
    if (!extend_last || k != n_el) hi = std::min(hi, (k + 1) * h);
    if (hi <= lo) return 0.0;
    const double t0 = std::asin(std::min(1.0, lo / z));
    const double t1 = std::asin(std::min(1.0, hi / z));
    return simpson(
        [&](double t) {
            const double y = z * std::sin(t);
            return z * std::sin(t) * hat(k, y, h, n_el, extend_last);
        },
        t0, t1, tol);
}

// Nested brute-force influence integral; the outer singularity is absorbed
// by z = r cosh(u).
inline double influence(int k, double r, double a, double h, int n_el, double cap,
                        bool extend_last = false, double tol = 1e-13) {
    if (r == 0.0) {
        return simpson(
            [&](double z) {
                return z > 0.0 ? hat_chord(k, z, h, n_el, cap, extend_last, tol) / z
                               : (k == 0 ? 1.0 : 0.0);
            },
            0.0, a, tol);
    }
    if (r >= a) return 0.0;
    const double U = std::acosh(a / r);
    return simpson(
        [&](double u) { return hat_chord(k, r * std::cosh(u), h, n_el, cap, extend_last, tol); },
        0.0, U, tol);
}

} // namespace oracles

#include "pennyfrac/quadrature.hpp"

#include "pennyfrac/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pennyfrac {

namespace {

// Nodes/weights on [-1, 1].
struct Rule {
    std::vector<double> x;
    std::vector<double> w;
};

// Newton-on-Legendre construction; computed once per order.
Rule make_rule(int n) {
    Rule rule;
    rule.x.resize(static_cast<std::size_t>(n));
    rule.w.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (x * p1 - p0) / (x * x - 1.0);
        rule.x[static_cast<std::size_t>(i)] = x;
        rule.w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

const Rule& rule_for(int n) {
    static Rule cache[65];
    static bool ready[65] = {};
    if (n < 2) n = 2;
    if (n > 64) n = 64;
    if (!ready[n]) {
        cache[n] = make_rule(n);
        ready[n] = true;
    }
    return cache[n];
}

double panel(const std::function<double(double)>& f, double a, double b, const Rule& r) {
    const double c = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t i = 0; i < r.x.size(); ++i) {
        acc += r.w[i] * f(c + hw * r.x[i]);
    }
    return acc * hw;
}

struct VecPanel {
    static void eval(const std::function<void(double, double*)>& f, int n, double a, double b,
                     const Rule& r, std::vector<double>& out, std::vector<double>& buf) {
        const double c = 0.5 * (a + b);
        const double hw = 0.5 * (b - a);
        std::fill(out.begin(), out.end(), 0.0);
        for (std::size_t i = 0; i < r.x.size(); ++i) {
            f(c + hw * r.x[i], buf.data());
            for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(j)] += r.w[i] * buf[static_cast<std::size_t>(j)];
        }
        for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(j)] *= hw;
    }
};

} // namespace

void QuadratureEngine::validate() const {
    if (order < 4) throw DomainError("quadrature: order must be >= 4");
    if (max_depth < 1) throw DomainError("quadrature: max_depth must be >= 1");
    if (!(rel_tol > 0.0 && rel_tol <= 1e-3)) throw DomainError("quadrature: rel_tol must be in (0, 1e-3]");
}

double gauss_legendre(const std::function<double(double)>& f, double a, double b, int order) {
    return panel(f, a, b, rule_for(order));
}

const GaussRule01& gauss_rule_01(int order) {
    static GaussRule01 cache[65];
    static bool ready[65] = {};
    if (order < 2) order = 2;
    if (order > 64) order = 64;
    if (!ready[order]) {
        const Rule& r = rule_for(order);
        std::vector<std::pair<double, double>> pairs(r.x.size());
        for (std::size_t i = 0; i < r.x.size(); ++i) {
            pairs[i] = {0.5 * (1.0 + r.x[i]), 0.5 * r.w[i]};
        }
        std::sort(pairs.begin(), pairs.end());
        GaussRule01 out;
        out.nodes.resize(pairs.size());
        out.weights.resize(pairs.size());
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            out.nodes[i] = pairs[i].first;
            out.weights[i] = pairs[i].second;
        }
        cache[order] = std::move(out);
        ready[order] = true;
    }
    return cache[order];
}

namespace {

double adapt(const std::function<double(double)>& f, double a, double b, double whole,
             const Rule& r, double tol, double scale, int depth, int max_depth, double& err_seen) {
    const double m = 0.5 * (a + b);
    const double left = panel(f, a, m, r);
    const double right = panel(f, m, b, r);
    const double delta = std::abs(left + right - whole);
    const double target = tol * std::max({scale, std::abs(left + right)});
    if (delta <= target || depth >= max_depth) {
        if (depth >= max_depth && delta > target) err_seen = std::max(err_seen, delta);
        return left + right;
    }
    return adapt(f, a, m, left, r, tol, scale, depth + 1, max_depth, err_seen) +
           adapt(f, m, b, right, r, tol, scale, depth + 1, max_depth, err_seen);
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureEngine& eng, double scale_floor) {
    if (a == b) return 0.0;
    const Rule& r = rule_for(eng.order);
    const double whole = panel(f, a, b, r);
    double err_seen = 0.0;
    const double scale = std::max(scale_floor, std::abs(whole));
    const double result = adapt(f, a, b, whole, r, eng.rel_tol, scale, 0, eng.max_depth, err_seen);
    if (err_seen > 0.0) {
        throw NumericalError("quadrature: subdivision limit reached, achieved error estimate " +
                             std::to_string(err_seen) + " on [" + std::to_string(a) + ", " +
                             std::to_string(b) + "]");
    }
    return result;
}

namespace {

void adapt_vec(const std::function<void(double, double*)>& f, int n, double a, double b,
               const std::vector<double>& whole, const Rule& r, double tol, double scale,
               int depth, int max_depth, std::vector<double>& acc, double& err_seen,
               std::vector<double>& buf) {
    std::vector<double> left(static_cast<std::size_t>(n)), right(static_cast<std::size_t>(n));
    VecPanel::eval(f, n, a, 0.5 * (a + b), r, left, buf);
    VecPanel::eval(f, n, 0.5 * (a + b), b, r, right, buf);
    double delta = 0.0, mag = 0.0;
    for (int j = 0; j < n; ++j) {
        const auto ju = static_cast<std::size_t>(j);
        delta = std::max(delta, std::abs(left[ju] + right[ju] - whole[ju]));
        mag = std::max(mag, std::abs(left[ju] + right[ju]));
    }
    if (delta <= tol * std::max(scale, mag) || depth >= max_depth) {
        if (depth >= max_depth && delta > tol * std::max(scale, mag)) err_seen = std::max(err_seen, delta);
        for (int j = 0; j < n; ++j) {
            const auto ju = static_cast<std::size_t>(j);
            acc[ju] += left[ju] + right[ju];
        }
        return;
    }
    adapt_vec(f, n, a, 0.5 * (a + b), left, r, tol, scale, depth + 1, max_depth, acc, err_seen, buf);
    adapt_vec(f, n, 0.5 * (a + b), b, right, r, tol, scale, depth + 1, max_depth, acc, err_seen, buf);
}

} // namespace

std::vector<double> integrate_vec(const std::function<void(double, double*)>& f, int n,
                                  double a, double b, const QuadratureEngine& eng,
                                  double scale_floor) {
    std::vector<double> acc(static_cast<std::size_t>(n), 0.0);
    if (a == b || n == 0) return acc;
    const Rule& r = rule_for(eng.order);
    std::vector<double> whole(static_cast<std::size_t>(n)), buf(static_cast<std::size_t>(n));
    VecPanel::eval(f, n, a, b, r, whole, buf);
    double mag = 0.0;
    for (double v : whole) mag = std::max(mag, std::abs(v));
    double err_seen = 0.0;
    adapt_vec(f, n, a, b, whole, r, eng.rel_tol, std::max(scale_floor, mag), 0, eng.max_depth,
              acc, err_seen, buf);
    if (err_seen > 0.0) {
        throw NumericalError("quadrature: vector subdivision limit reached, achieved error estimate " +
                             std::to_string(err_seen));
    }
    return acc;
}

} // namespace pennyfrac

#include "pennyfrac/influence.hpp"

#include "pennyfrac/errors.hpp"
#include "pennyfrac/hat_integrals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace pennyfrac {

namespace {

constexpr double kPi = std::numbers::pi;

double safe_sqrt(double x) { return std::sqrt(std::max(0.0, x)); }

double asin_clamped(double num, double den) {
    if (den <= 0.0) return 0.0;
    return std::asin(std::clamp(num / den, -1.0, 1.0));
}

// log((b + sqrt(b^2 - r^2)) / r) = ∫_r^b dz / sqrt(z^2 - r^2)
double acosh_span(double b, double r) {
    return std::log((b + safe_sqrt((b - r) * (b + r))) / r);
}

} // namespace

// ---------------------------------------------------------------------------
// HatChord

HatChord::HatChord(int k, const RadialMesh& mesh)
    : k_(k), n_el_(mesh.element_count()), h_(mesh.element_size()), l_(mesh.fluid_radius()) {
    if (k < 0 || k > n_el_) throw DomainError("hat chord: node index out of range");
    for (int j = k - 1; j <= k + 1; ++j) {
        if (j >= 1 && j <= n_el_) breaks_.push_back(j * h_);
    }
}

double HatChord::value(double z) const {
    if (z <= 0.0) return 0.0;
    const double b = (k_ - 1) * h_;
    const double c = k_ * h_;
    const double d = (k_ + 1) * h_;
    if (k_ == 0) {
        if (z <= d) return hat::falling_partial(z, 0, h_);
        return hat::falling_full(z, 0, h_);
    }
    if (z <= b) return 0.0;
    if (z <= c) return hat::rising_partial(z, k_, h_);
    if (k_ == n_el_) return hat::rising_full(z, k_, h_);
    if (z <= d) return hat::rising_full(z, k_, h_) + hat::falling_partial(z, k_, h_);
    return hat::rising_full(z, k_, h_) + hat::falling_full(z, k_, h_);
}

double HatChord::deriv(double z) const {
    if (z <= 0.0) return 0.0;
    const double b = (k_ - 1) * h_;
    const double c = k_ * h_;
    const double d = (k_ + 1) * h_;
    if (k_ == 0) {
        if (z <= d) return hat::falling_partial_deriv(z, 0, h_);
        return hat::falling_full_deriv(z, 0, h_);
    }
    if (z <= b) return 0.0;
    if (z <= c) return hat::rising_partial_deriv(z, k_, h_);
    if (k_ == n_el_) return hat::rising_full_deriv(z, k_, h_); // diverges at z -> c^+
    // The 1/sqrt(z^2-c^2) parts of the two branches cancel; combined forms
    // stay finite across the node.
    if (z <= d) {
        return z / h_ * (2.0 * asin_clamped(c, z) - asin_clamped(b, z)) - kPi * z / (2.0 * h_);
    }
    return z / h_ * (2.0 * asin_clamped(c, z) - asin_clamped(b, z) - asin_clamped(d, z));
}

// ---------------------------------------------------------------------------
// LinearFieldChord

LinearFieldChord::LinearFieldChord(const RadialMesh& mesh, std::vector<double> nodal_values)
    : mesh_(mesh), values_(std::move(nodal_values)) {
    if (static_cast<int>(values_.size()) != mesh_.node_count()) {
        throw DomainError("linear field chord: value count does not match mesh");
    }
    for (int j = 1; j <= mesh_.element_count(); ++j) breaks_.push_back(mesh_.node(j));
}

double LinearFieldChord::value(double z) const {
    if (z <= 0.0) return 0.0;
    const double h = mesh_.element_size();
    const double L = mesh_.fluid_radius();
    double acc = 0.0;
    const int n_el = mesh_.element_count();
    for (int m = 0; m < n_el; ++m) {
        const double y0 = mesh_.node(m);
        if (y0 >= z || y0 >= L) break;
        const double y1 = std::min({mesh_.node(m + 1), z});
        const double beta = (values_[static_cast<std::size_t>(m + 1)] - values_[static_cast<std::size_t>(m)]) / h;
        const double alpha = values_[static_cast<std::size_t>(m)] - beta * y0;
        const double r0 = safe_sqrt((z - y0) * (z + y0));
        const double r1 = safe_sqrt((z - y1) * (z + y1));
        // ∫ (alpha y + beta y^2)/sqrt(z^2-y^2) dy over [y0, y1]
        acc += alpha * (r0 - r1) +
               beta * (0.5 * (y0 * r0 - y1 * r1) +
                       0.5 * z * z * (asin_clamped(y1, z) - asin_clamped(y0, z)));
    }
    return acc;
}

double LinearFieldChord::deriv(double z) const {
    if (z <= 0.0) return 0.0;
    const double h = mesh_.element_size();
    const double L = mesh_.fluid_radius();
    const int n_el = mesh_.element_count();
    if (z <= L) {
        // d/dz via the theta form: g(z) = ∫_0^{pi/2} z sin(t) p(z sin(t)) dt,
        // finite everywhere inside the support.
        double acc = 0.0;
        for (int m = 0; m < n_el; ++m) {
            const double y0 = mesh_.node(m);
            if (y0 >= z) break;
            const double y1 = std::min(mesh_.node(m + 1), z);
            const double beta = (values_[static_cast<std::size_t>(m + 1)] - values_[static_cast<std::size_t>(m)]) / h;
            const double alpha = values_[static_cast<std::size_t>(m)] - beta * y0;
            const double r0 = safe_sqrt((z - y0) * (z + y0));
            const double r1 = safe_sqrt((z - y1) * (z + y1));
            acc += alpha * (r0 - r1) / z +
                   beta * (z * (asin_clamped(y1, z) - asin_clamped(y0, z)) - (y1 * r1 - y0 * r0) / z);
        }
        return acc;
    }
    // Beyond the support the interior node terms cancel for a continuous
    // density; only the end densities and the slope terms survive.
    double acc = values_.front() - z * values_.back() / safe_sqrt((z - L) * (z + L));
    for (int m = 0; m < n_el; ++m) {
        const double y0 = mesh_.node(m);
        const double y1 = mesh_.node(m + 1);
        const double beta = (values_[static_cast<std::size_t>(m + 1)] - values_[static_cast<std::size_t>(m)]) / h;
        acc += beta * z * (asin_clamped(y1, z) - asin_clamped(y0, z));
    }
    return acc;
}

// ---------------------------------------------------------------------------
// AnnulusChord

AnnulusChord::AnnulusChord(double inner_radius) : inner_radius_(inner_radius) {
    if (!(inner_radius > 0.0)) throw DomainError("annulus chord: inner radius must be > 0");
    breaks_.push_back(inner_radius_);
}

double AnnulusChord::value(double z) const {
    if (z <= inner_radius_) return 0.0;
    return safe_sqrt((z - inner_radius_) * (z + inner_radius_));
}

double AnnulusChord::deriv(double z) const {
    if (z <= inner_radius_) return 0.0;
    return z / safe_sqrt((z - inner_radius_) * (z + inner_radius_));
}

// ---------------------------------------------------------------------------
// Transforms

namespace {

// Segment endpoints of (r, a]: profile breakpoints clipped to the open
// interval, then a.
std::vector<double> segments_above(const ChordProfile& g, double r, double a) {
    std::vector<double> pts;
    for (double b : g.breakpoints()) {
        if (b > r && b < a) pts.push_back(b);
    }
    pts.push_back(a);
    return pts;
}

// ∫_{s0}^{s1} F(z) dz with the substitution z = s0 + (s1 - s0) v^2, which
// absorbs sqrt(z - s0) branch behavior at the left end.
double integrate_leftsqrt(const std::function<double(double)>& F, double s0, double s1,
                          const QuadratureEngine& eng, double scale) {
    const double w = s1 - s0;
    return integrate([&](double v) { return F(s0 + w * v * v) * 2.0 * w * v; }, 0.0, 1.0, eng, scale);
}

} // namespace

double abel_transform(const ChordProfile& g, double r, double a, const QuadratureEngine& eng) {
    if (r < 0.0) throw DomainError("abel transform: r must be >= 0");
    if (r > a) throw DomainError("abel transform: query radius exceeds crack radius");
    if (r == a) return 0.0;
    if (r == 0.0) {
        // ∫_0^a g(z)/z dz, with g(z)/z -> f(0) as z -> 0.
        const double f0 = g.density_at_origin();
        auto F = [&](double z) { return z > 0.0 ? g.value(z) / z : f0; };
        std::vector<double> pts = segments_above(g, 0.0, a);
        double acc = 0.0;
        double lo = 0.0;
        const double scale = std::abs(g.value(0.5 * a)) + 1e-300;
        for (double hi : pts) {
            acc += integrate(F, lo, hi, eng, scale);
            lo = hi;
        }
        return acc;
    }
    std::vector<double> pts = segments_above(g, r, a);
    const double gr = g.value(r);
    const double scale = (std::abs(gr) + std::abs(g.value(0.5 * (r + a)))) + 1e-300;
    // Singular panel [r, b1]: subtract the endpoint value, add it back with
    // the closed-form ∫ dz/sqrt(z^2-r^2).
    const double b1 = pts.front();
    auto sub = [&](double z) {
        if (z <= r) return 0.0;
        return (g.value(z) - gr) / safe_sqrt((z - r) * (z + r));
    };
    double acc = integrate_leftsqrt(sub, r, b1, eng, scale) + gr * acosh_span(b1, r);
    double lo = b1;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        auto F = [&](double z) { return g.value(z) / safe_sqrt((z - r) * (z + r)); };
        acc += integrate_leftsqrt(F, lo, pts[i], eng, scale);
        lo = pts[i];
    }
    return acc;
}

double abel_transform_dr(const ChordProfile& g, double r, double a, const QuadratureEngine& eng) {
    if (r < 0.0) throw DomainError("abel transform dr: r must be >= 0");
    if (r > a) throw DomainError("abel transform dr: query radius exceeds crack radius");
    if (r == 0.0) return 0.0; // even kernel
    if (r == a) throw DomainError("abel transform dr: undefined at r = a");
    std::vector<double> pts = segments_above(g, r, a);
    const double gr = g.value(r);
    const double gpr = g.deriv(r);
    const double b1 = pts.front();
    // First panel in z = r cosh(u): the subtracted integrand is regular.
    const double U1 = std::acosh(std::max(1.0, b1 / r));
    auto sub = [&](double u) {
        const double sh = std::sinh(u);
        if (sh == 0.0) return -0.5 * gpr;
        const double z = r * std::cosh(u);
        return (g.value(z) - gr) / (r * sh * sh) - gpr;
    };
    const double scale = std::abs(gpr) + std::abs(gr) / std::max(r, 1e-300) + 1e-300;
    double acc = integrate(sub, 0.0, U1, eng, scale);
    acc += gpr * acosh_span(b1, r);
    acc += -gr * b1 / (r * safe_sqrt((b1 - r) * (b1 + r)));
    double lo = b1;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        auto F = [&](double z) {
            const double q = (z - r) * (z + r);
            return g.value(z) * r / (q * safe_sqrt(q));
        };
        acc += integrate_leftsqrt(F, lo, pts[i], eng, scale);
        lo = pts[i];
    }
    return acc;
}

double abel_transform_da(const ChordProfile& g, double r, double a) {
    if (!(r < a)) throw DomainError("abel transform da: requires r < a strictly");
    if (r < 0.0) throw DomainError("abel transform da: r must be >= 0");
    return g.value(a) / safe_sqrt((a - r) * (a + r));
}

double abel_transform_dl(const ChordProfile& g, double r, double a, const QuadratureEngine& eng) {
    const double l = g.support_end();
    const double fl = g.density_at_support_end();
    if (fl == 0.0) return 0.0;
    if (!(r < l)) {
        throw DomainError("abel transform dl: query radius must lie inside the fluid column");
    }
    if (!(l <= a)) throw DomainError("abel transform dl: support end exceeds crack radius");
    if (l == a) return 0.0;
    // l * ∫_l^a dz/(sqrt(z^2-r^2) sqrt(z^2-l^2)) with z = l cosh(u).
    const double U = std::acosh(a / l);
    auto F = [&](double u) {
        const double z = l * std::cosh(u);
        return 1.0 / safe_sqrt((z - r) * (z + r));
    };
    return fl * l * integrate(F, 0.0, U, eng, 1.0 / std::max(l, 1e-300));
}

// ---------------------------------------------------------------------------
// Batch transform

AbelBatch::AbelBatch(const ChordProfile& g, double a, std::vector<double> radii,
                     const QuadratureEngine& eng, bool with_slopes)
    : radii_(std::move(radii)) {
    const std::size_t nq = radii_.size();
    values_.assign(nq, 0.0);
    slopes_.assign(nq, with_slopes ? 0.0 : 0.0);
    if (nq == 0) return;
    for (std::size_t i = 0; i + 1 < nq; ++i) {
        if (!(radii_[i] < radii_[i + 1])) {
            throw DomainError("abel batch: query radii must be strictly ascending");
        }
    }
    if (!(radii_.front() > 0.0)) throw DomainError("abel batch: radii must be > 0");
    if (!(radii_.back() < a)) throw DomainError("abel batch: radii must be < crack radius");

    // Composite grid: queries, profile breakpoints, crack radius.
    std::vector<double> grid(radii_);
    for (double b : g.breakpoints()) {
        if (b > radii_.front() && b < a) grid.push_back(b);
    }
    grid.push_back(a);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    // Gauss panels between consecutive grid points; chord sampled once.
    const int order = std::clamp(eng.order, 4, 24);
    const GaussRule01& rule = gauss_rule_01(order);
    const std::vector<double>& gx = rule.nodes;
    const std::vector<double>& gw = rule.weights;

    // Panels are sampled via z = lo + (hi-lo) v^2, which absorbs the sqrt
    // branches the chords carry at their breakpoints and blunts the kernel
    // steepness on the panel adjacent to each query.
    const std::size_t n_panels = grid.size() - 1;
    std::vector<double> zs(n_panels * static_cast<std::size_t>(order));
    std::vector<double> cs(n_panels * static_cast<std::size_t>(order));
    for (std::size_t p = 0; p < n_panels; ++p) {
        const double lo = grid[p], hi = grid[p + 1];
        const double w = hi - lo;
        for (int j = 0; j < order; ++j) {
            const std::size_t idx = p * static_cast<std::size_t>(order) + static_cast<std::size_t>(j);
            const double v = gx[static_cast<std::size_t>(j)];
            const double z = lo + w * v * v;
            zs[idx] = z;
            cs[idx] = 2.0 * w * v * gw[static_cast<std::size_t>(j)] * g.value(z);
        }
    }

    // Per query: substitution panel on [r, b], shared panels beyond.
    std::size_t panel_of_query = 0;
    for (std::size_t q = 0; q < nq; ++q) {
        const double r = radii_[q];
        while (grid[panel_of_query] < r) ++panel_of_query;
        // grid[panel_of_query] == r; first panel is [r, b]
        const double b = grid[panel_of_query + 1];
        const double gr = g.value(r);

        // value: ∫_r^b (g - g(r))/sqrt(z^2-r^2) with z = r + (b-r)v^2, plus
        // the closed-form arccosh piece, plus shared tail panels.
        double val = gr * acosh_span(b, r);
        {
            const double w = b - r;
            for (int j = 0; j < order; ++j) {
                const double v = gx[static_cast<std::size_t>(j)];
                const double z = r + w * v * v;
                const double dz = 2.0 * w * v;
                const double root = safe_sqrt((z - r) * (z + r));
                if (root > 0.0) {
                    val += gw[static_cast<std::size_t>(j)] * dz * (g.value(z) - gr) / root;
                }
            }
        }
        for (std::size_t idx = (panel_of_query + 1) * static_cast<std::size_t>(order);
             idx < n_panels * static_cast<std::size_t>(order); ++idx) {
            val += cs[idx] / safe_sqrt((zs[idx] - r) * (zs[idx] + r));
        }
        values_[q] = val;

        if (with_slopes) {
            const double gpr = g.deriv(r);
            double sl = gpr * acosh_span(b, r) - gr * b / (r * safe_sqrt((b - r) * (b + r)));
            const double U1 = std::acosh(std::max(1.0, b / r));
            for (int j = 0; j < order; ++j) {
                const double u = U1 * gx[static_cast<std::size_t>(j)];
                const double sh = std::sinh(u);
                const double z = r * std::cosh(u);
                const double term =
                    (sh == 0.0) ? -0.5 * gpr : (g.value(z) - gr) / (r * sh * sh) - gpr;
                sl += gw[static_cast<std::size_t>(j)] * U1 * term;
            }
            for (std::size_t idx = (panel_of_query + 1) * static_cast<std::size_t>(order);
                 idx < n_panels * static_cast<std::size_t>(order); ++idx) {
                const double q2 = (zs[idx] - r) * (zs[idx] + r);
                sl += cs[idx] * r / (q2 * safe_sqrt(q2));
            }
            slopes_[q] = sl;
        }
    }
}

double abel_radial_moment(const ChordProfile& g, double cap, double a,
                          const QuadratureEngine& eng) {
    if (!(cap > 0.0 && cap <= a)) throw DomainError("radial moment: cap must be in (0, a]");
    auto weight = [&](double z) { return z - safe_sqrt((z - cap) * (z + cap)); };
    std::vector<double> pts;
    for (double b : g.breakpoints()) {
        if (b > 0.0 && b < a) pts.push_back(b);
    }
    if (cap < a) pts.push_back(cap);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    pts.push_back(a);
    double acc = 0.0;
    double lo = 0.0;
    const double scale = std::abs(g.value(0.5 * (pts.front() + pts.back()))) * cap + 1e-300;
    for (double hi : pts) {
        if (hi <= lo) continue;
        acc += integrate_leftsqrt([&](double z) { return g.value(z) * weight(z); }, lo, hi, eng,
                                  scale);
        lo = hi;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Hat-indexed fronts

namespace {
void check_hat_query(int k, double r, double a, const RadialMesh& mesh) {
    if (k < 0 || k > mesh.element_count()) throw DomainError("influence: node index out of range");
    if (r < 0.0) throw DomainError("influence: r must be >= 0");
    if (r > a) throw DomainError("influence: query radius exceeds crack radius");
    if (mesh.fluid_radius() > a) throw DomainError("influence: fluid radius exceeds crack radius");
}
} // namespace

double influence(int k, double r, double a, const RadialMesh& mesh, const QuadratureEngine& eng) {
    check_hat_query(k, r, a, mesh);
    return abel_transform(HatChord(k, mesh), r, a, eng);
}

double influence_dr(int k, double r, double a, const RadialMesh& mesh, const QuadratureEngine& eng) {
    check_hat_query(k, r, a, mesh);
    return abel_transform_dr(HatChord(k, mesh), r, a, eng);
}

double influence_da(int k, double r, double a, const RadialMesh& mesh) {
    check_hat_query(k, r, a, mesh);
    return abel_transform_da(HatChord(k, mesh), r, a);
}

double influence_dl(int k, double r, double a, const RadialMesh& mesh, const QuadratureEngine& eng) {
    check_hat_query(k, r, a, mesh);
    if (k < mesh.element_count()) return 0.0;
    return abel_transform_dl(HatChord(k, mesh), r, a, eng);
}

InfluenceRow influence_row(double r, double a, const RadialMesh& mesh, const QuadratureEngine& eng) {
    InfluenceRow row;
    row.query_radius = r;
    const int n = mesh.node_count();
    row.value.resize(static_cast<std::size_t>(n));
    row.d_dr.resize(static_cast<std::size_t>(n));
    row.d_da.resize(static_cast<std::size_t>(n));
    row.d_dl.assign(static_cast<std::size_t>(n), 0.0);
    for (int k = 0; k < n; ++k) {
        const auto ku = static_cast<std::size_t>(k);
        HatChord g(k, mesh);
        row.value[ku] = (r == a) ? 0.0 : abel_transform(g, r, a, eng);
        row.d_dr[ku] = (r == 0.0) ? 0.0 : abel_transform_dr(g, r, a, eng);
        row.d_da[ku] = abel_transform_da(g, r, a);
    }
    if (r < mesh.fluid_radius()) {
        row.d_dl[static_cast<std::size_t>(n - 1)] =
            abel_transform_dl(HatChord(mesh.element_count(), mesh), r, a, eng);
    }
    return row;
}

} // namespace pennyfrac

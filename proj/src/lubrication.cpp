#include "pennyfrac/lubrication.hpp"

#include "pennyfrac/errors.hpp"
#include "pennyfrac/influence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <string>

namespace pennyfrac {

namespace {

constexpr double kPi = std::numbers::pi;

void ensure_finite(const Eigen::MatrixXd& block, const char* term) {
    for (Eigen::Index i = 0; i < block.rows(); ++i) {
        for (Eigen::Index j = 0; j < block.cols(); ++j) {
            if (!std::isfinite(block(i, j))) {
                throw NumericalError(std::string("assembly aborted: non-finite entry in term '") +
                                     term + "' at row " + std::to_string(i) + ", col " +
                                     std::to_string(j));
            }
        }
    }
}

void ensure_finite_vec(const Eigen::VectorXd& v, const char* term) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v(i))) {
            throw NumericalError(std::string("assembly aborted: non-finite entry in term '") +
                                 term + "' at row " + std::to_string(i));
        }
    }
}

} // namespace

AssembledSystem assemble(const State& state_prev, const State& trial, double a_rate,
                         double l_rate, const std::vector<double>& lagged_pressures,
                         const MaterialParams& mat, const FluidParams& fluid,
                         const SourceTerm& src, const SolverSettings& settings) {
    const RadialMesh& mesh = trial.mesh;
    const int n = mesh.node_count();
    const int n_el = mesh.element_count();
    if (static_cast<int>(lagged_pressures.size()) != n) {
        throw DomainError("assemble: lagged pressure size does not match trial mesh");
    }
    if (!(settings.dt > 0.0)) throw DomainError("assemble: dt must be > 0");
    const double a = trial.crack_radius;
    const double l = mesh.fluid_radius();
    const double h = mesh.element_size();
    const double dt = settings.dt;
    const double t_new = state_prev.time + dt;

    const double ep = mat.plane_strain_modulus;
    const double c1 = 96.0 * fluid.viscosity / (kPi * ep);
    const double c2 = std::pow(8.0 / (kPi * ep), 2);
    const double c3 = std::pow(8.0 / (kPi * ep), 3);

    QuadratureEngine eng;
    eng.rel_tol = settings.quadrature_tol;

    // Hat chords, built once.
    std::vector<HatChord> g;
    g.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) g.emplace_back(k, mesh);

    AssembledSystem sys;
    sys.matrix = Eigen::MatrixXd::Zero(n, n);
    sys.rhs = Eigen::VectorXd::Zero(n);

    // --- storage matrix S_ik = ∫ psi_i A_k r dr, evaluated on the z axis as
    // ∫_0^a g_i(z) g_k(z) dz (Fubini; the Abel kernel is absorbed into the
    // second chord).
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(n, n);
    {
        const int m = n * (n + 1) / 2;
        std::vector<double> gv(static_cast<std::size_t>(n));
        auto integrand = [&](double z, double* out) {
            for (int k = 0; k < n; ++k) gv[static_cast<std::size_t>(k)] = g[static_cast<std::size_t>(k)].value(z);
            int idx = 0;
            for (int i = 0; i < n; ++i) {
                for (int k = i; k < n; ++k) {
                    out[idx++] = gv[static_cast<std::size_t>(i)] * gv[static_cast<std::size_t>(k)];
                }
            }
        };
        std::vector<double> acc(static_cast<std::size_t>(m), 0.0);
        double lo = 0.0;
        for (int e = 1; e <= n_el + 1; ++e) {
            const double hi = (e <= n_el) ? mesh.node(e) : a;
            if (hi <= lo) continue;
            // z = lo + (hi-lo) v^2 absorbs the sqrt branch the front hats
            // carry at the fluid radius.
            const double w = hi - lo;
            auto mapped = [&](double v, double* out) {
                integrand(lo + w * v * v, out);
                const double jac = 2.0 * w * v;
                for (int j = 0; j < m; ++j) out[j] *= jac;
            };
            std::vector<double> part = integrate_vec(mapped, m, 0.0, 1.0, eng);
            for (int j = 0; j < m; ++j) acc[static_cast<std::size_t>(j)] += part[static_cast<std::size_t>(j)];
            lo = hi;
        }
        int idx = 0;
        for (int i = 0; i < n; ++i) {
            for (int k = i; k < n; ++k) {
                S(i, k) = acc[static_cast<std::size_t>(idx)];
                S(k, i) = acc[static_cast<std::size_t>(idx)];
                ++idx;
            }
        }
    }

    // --- dA/da advection block. dA_k/da(r) = g_k(a)/sqrt(a^2-r^2), and
    // ∫ psi_i(r) r / sqrt(a^2-r^2) dr is itself the chord g_i at z = a, so
    // the block is the rank-one outer product g_i(a) g_k(a).
    Eigen::MatrixXd Da;
    {
        Eigen::VectorXd ga(n);
        for (int k = 0; k < n; ++k) ga(k) = g[static_cast<std::size_t>(k)].value(a);
        Da = ga * ga.transpose();
    }

    // --- dA/dl advection column (front hat only).
    Eigen::VectorXd Dl = Eigen::VectorXd::Zero(n);
    if (settings.include_dadl_terms && l < a) {
        const double U = std::acosh(a / l);
        auto integrand = [&](double u, double* out) {
            const double z = l * std::cosh(u);
            for (int i = 0; i < n; ++i) out[i] = g[static_cast<std::size_t>(i)].value(z);
        };
        std::vector<double> col = integrate_vec(integrand, n, 0.0, U, eng);
        for (int i = 0; i < n; ++i) Dl(i) = l * col[static_cast<std::size_t>(i)];
    }

    // --- lagged opening and element integrals. The opening and its slope are
    // sampled on one composite Gauss grid over all elements (shared-grid
    // batch), the per-element integrals then use the same nodes.
    LinearFieldChord lag_pressure(mesh, lagged_pressures);
    std::unique_ptr<AnnulusChord> lag_zone;
    if (mat.far_field_stress != 0.0 && l < a) lag_zone = std::make_unique<AnnulusChord>(l);

    const bool need_slopes = settings.include_dadr_terms;
    QuadratureEngine batch_eng = eng;
    batch_eng.order = std::max(eng.order + 5, 20);
    const GaussRule01& rule = gauss_rule_01(eng.order);
    const int q_per_el = static_cast<int>(rule.nodes.size());
    std::vector<double> radii;
    radii.reserve(static_cast<std::size_t>(n_el * q_per_el));
    for (int e = 0; e < n_el; ++e) {
        for (int j = 0; j < q_per_el; ++j) {
            radii.push_back(mesh.node(e) + h * rule.nodes[static_cast<std::size_t>(j)]);
        }
    }
    AbelBatch press_batch(lag_pressure, a, radii, batch_eng, need_slopes);
    std::unique_ptr<AbelBatch> lag_batch;
    if (lag_zone) lag_batch = std::make_unique<AbelBatch>(*lag_zone, a, radii, batch_eng, need_slopes);

    std::vector<double> cubic(static_cast<std::size_t>(n_el), 0.0);    // ∫ w̃^3 r dr
    std::vector<double> grad_src(static_cast<std::size_t>(n_el), 0.0); // ∫ w̃^2 s' r dr
    std::vector<double> conv_src(static_cast<std::size_t>(n_el), 0.0); // ∫ w̃ s w̃' r dr
    Eigen::VectorXd F = Eigen::VectorXd::Zero(n);                      // ∫ psi_i s r dr
    for (int e = 0; e < n_el; ++e) {
        const double r0 = mesh.node(e);
        const double r1 = mesh.node(e + 1);
        double c_acc = 0.0, g_acc = 0.0, h_acc = 0.0, f_lo = 0.0, f_hi = 0.0;
        for (int j = 0; j < q_per_el; ++j) {
            const std::size_t idx = static_cast<std::size_t>(e * q_per_el + j);
            const double r = radii[idx];
            const double wq = h * rule.weights[static_cast<std::size_t>(j)];
            double w = press_batch.values()[idx];
            if (lag_batch) w -= mat.far_field_stress * lag_batch->values()[idx];
            const double s = src(r, t_new);
            c_acc += wq * w * w * w * r;
            g_acc += wq * w * w * src.radial_derivative(r, t_new) * r;
            if (need_slopes) {
                double wp = press_batch.slopes()[idx];
                if (lag_batch) wp -= mat.far_field_stress * lag_batch->slopes()[idx];
                h_acc += wq * w * s * wp * r;
            }
            f_lo += wq * ((r1 - r) / h) * s * r;
            f_hi += wq * ((r - r0) / h) * s * r;
        }
        cubic[static_cast<std::size_t>(e)] = c_acc;
        grad_src[static_cast<std::size_t>(e)] = g_acc;
        conv_src[static_cast<std::size_t>(e)] = h_acc;
        F(e) += f_lo;
        F(e + 1) += f_hi;
    }

    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n); // Poiseuille stiffness
    Eigen::VectorXd G = Eigen::VectorXd::Zero(n);    // w̃^2 s' coupling
    Eigen::VectorXd Hc = Eigen::VectorXd::Zero(n);   // w̃ s w̃' coupling
    const double inv_h = 1.0 / h;
    for (int e = 0; e < n_el; ++e) {
        const double ce = cubic[static_cast<std::size_t>(e)] * inv_h * inv_h;
        P(e, e) += ce;
        P(e, e + 1) -= ce;
        P(e + 1, e) -= ce;
        P(e + 1, e + 1) += ce;
        G(e) -= grad_src[static_cast<std::size_t>(e)] * inv_h;
        G(e + 1) += grad_src[static_cast<std::size_t>(e)] * inv_h;
        Hc(e) -= conv_src[static_cast<std::size_t>(e)] * inv_h;
        Hc(e + 1) += conv_src[static_cast<std::size_t>(e)] * inv_h;
    }

    // Previous-step pressures on the trial mesh.
    Eigen::VectorXd p_prev(n);
    for (int k = 0; k < n; ++k) p_prev(k) = state_prev.pressure_at(mesh.node(k));

    // Matrix and RHS, Box-1 placement: the cubic term multiplies the unknown;
    // both source couplings stay on the right with lagged opening.
    Eigen::MatrixXd storage = (c1 / dt) * S;
    Eigen::MatrixXd adv_a = (c1 * a_rate) * Da;
    Eigen::MatrixXd adv_l = Eigen::MatrixXd::Zero(n, n);
    adv_l.col(n - 1) = (c1 * l_rate) * Dl;
    Eigen::MatrixXd poiseuille = c3 * P;
    ensure_finite(storage, "storage");
    ensure_finite(adv_a, "dA/da advection");
    ensure_finite(adv_l, "dA/dl advection");
    ensure_finite(poiseuille, "poiseuille");

    sys.matrix = storage + adv_a + adv_l + poiseuille;

    Eigen::VectorXd rhs_storage = storage * p_prev;
    Eigen::VectorXd rhs_source = (12.0 * fluid.viscosity / fluid.density) * F;
    Eigen::VectorXd rhs_grad = (c2 * fluid.viscosity / fluid.density) * G;
    Eigen::VectorXd rhs_conv = settings.include_dadr_terms ? Eigen::VectorXd(-c2 * Hc)
                                                           : Eigen::VectorXd(Eigen::VectorXd::Zero(n));
    ensure_finite_vec(rhs_storage, "storage rhs");
    ensure_finite_vec(rhs_source, "injection source");
    ensure_finite_vec(rhs_grad, "w^2 ds/dr coupling");
    ensure_finite_vec(rhs_conv, "w s dw/dr coupling");
    sys.rhs = rhs_storage + rhs_source + rhs_grad + rhs_conv;

    // Front-node closure replaces the psi_N test row.
    double row_scale = 0.0;
    for (int i = 0; i < n - 1; ++i) row_scale += std::abs(sys.matrix(i, i));
    row_scale = std::max(row_scale / std::max(1, n - 1), 1e-300);
    sys.matrix.row(n - 1).setZero();
    if (settings.front_node == FrontNodeMode::Free) {
        sys.matrix(n - 1, n - 3) = row_scale;
        sys.matrix(n - 1, n - 2) = -2.0 * row_scale;
        sys.matrix(n - 1, n - 1) = row_scale;
        sys.rhs(n - 1) = 0.0;
    } else {
        sys.matrix(n - 1, n - 1) = row_scale;
        sys.rhs(n - 1) = -mat.far_field_stress * row_scale;
    }

    sys.diagnostics.storage_norm = storage.norm();
    sys.diagnostics.advection_a_norm = adv_a.norm();
    sys.diagnostics.advection_l_norm = adv_l.norm();
    sys.diagnostics.poiseuille_norm = poiseuille.norm();
    sys.diagnostics.source_coupling_norm = (rhs_grad + rhs_conv).norm();
    return sys;
}

std::vector<double> inner_solve(const AssembledSystem& sys) {
    const Eigen::Index n = sys.matrix.rows();
    if (n == 0 || sys.matrix.cols() != n || sys.rhs.size() != n) {
        throw DomainError("inner_solve: inconsistent system dimensions");
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(sys.matrix);
    const double rc = lu.rcond();
    if (!(rc > 1e-14)) {
        throw NumericalError("inner_solve: matrix ill-conditioned, condition estimate " +
                             std::to_string(rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity()));
    }
    Eigen::VectorXd x = lu.solve(sys.rhs);
    std::vector<double> out(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!std::isfinite(x(i))) throw NumericalError("inner_solve: non-finite solution component");
        out[static_cast<std::size_t>(i)] = x(i);
    }
    return out;
}

} // namespace pennyfrac

#include "trinorm/rotation.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "trinorm/random.hpp"

namespace trinorm {

const char* to_string(DescentStatus s) {
    switch (s) {
        case DescentStatus::Converged: return "Converged";
        case DescentStatus::GradientVanishedNonzeroNorm:
            return "GradientVanishedNonzeroNorm";
        case DescentStatus::MaxIters: return "MaxIters";
    }
    return "Unknown";
}

Matrix compute_phi(const SymTensor3& Q, Index n) {
    if (n < 1 || n >= Q.dim())
        throw DimensionMismatch("compute_phi: need 1 <= n < dim");
    const Index m = Q.dim() - n;
    Matrix phi(n, m);
    for (Index i = 0; i < n; ++i)
        for (Index xi = 0; xi < m; ++xi) {
            double s = 0.0;
            for (Index j = 0; j < n; ++j)
                for (Index k = 0; k < n; ++k)
                    s += Q(i, j, k) * Q(n + xi, j, k);
            phi(i, xi) = s;
        }
    return phi;
}

Matrix block_rotation(const Matrix& phi, double omega) {
    const Index n = phi.rows(), m = phi.cols();
    const Index d = n + m;

    Eigen::JacobiSVD<Matrix> svd(omega * phi,
                                 Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector& sigma = svd.singularValues();
    const Matrix& U = svd.matrixU(); // n x r
    const Matrix& V = svd.matrixV(); // m x r
    const Index r = sigma.size();

    // Each singular triplet (sigma, u, v) generates an independent 2-plane
    // rotation by angle sigma; everything orthogonal to them is fixed.
    Vector cos_m1(r), sin_v(r);
    for (Index l = 0; l < r; ++l) {
        cos_m1[l] = std::cos(sigma[l]) - 1.0;
        sin_v[l] = std::sin(sigma[l]);
    }

    Matrix A = Matrix::Identity(d, d);
    A.topLeftCorner(n, n) += U * cos_m1.asDiagonal() * U.transpose();
    A.topRightCorner(n, m) = -U * sin_v.asDiagonal() * V.transpose();
    A.bottomLeftCorner(m, n) = V * sin_v.asDiagonal() * U.transpose();
    A.bottomRightCorner(m, m) += V * cos_m1.asDiagonal() * V.transpose();
    return A;
}

namespace {

Matrix random_unit_direction(Index n, Index m, Rng& rng) {
    Matrix phi(n, m);
    double norm_sq = 0.0;
    do {
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < m; ++j) phi(i, j) = rng.normal();
        norm_sq = phi.squaredNorm();
    } while (norm_sq < 1e-30);
    return phi / std::sqrt(norm_sq);
}

// The four-term second-order expansion of the projected norm around a
// stationary point, evaluated at direction phi.
double second_order_form(const SymTensor3& Q, Index n, const Matrix& phi) {
    const Index m = Q.dim() - n;

    Matrix C1 = Matrix::Zero(n, n); // sum_{jk<n} Q(i,j,k) Q(l,j,k)
    for (Index i = 0; i < n; ++i)
        for (Index l = 0; l < n; ++l) {
            double s = 0.0;
            for (Index j = 0; j < n; ++j)
                for (Index k = 0; k < n; ++k) s += Q(i, j, k) * Q(l, j, k);
            C1(i, l) = s;
        }

    Matrix C2 = Matrix::Zero(m, m); // sum_{ij<n} Q(xi,i,j) Q(eta,i,j)
    for (Index xi = 0; xi < m; ++xi)
        for (Index eta = 0; eta < m; ++eta) {
            double s = 0.0;
            for (Index i = 0; i < n; ++i)
                for (Index j = 0; j < n; ++j)
                    s += Q(n + xi, i, j) * Q(n + eta, i, j);
            C2(xi, eta) = s;
        }

    double value = -(phi.transpose() * C1 * phi).trace() +
                   (phi * C2 * phi.transpose()).trace();

    Matrix Ek(n, m), Hk(n, n), Zk(m, m);
    for (Index k = 0; k < n; ++k) {
        for (Index i = 0; i < n; ++i)
            for (Index eta = 0; eta < m; ++eta) Ek(i, eta) = Q(n + eta, i, k);
        const Matrix Dk = Ek.transpose() * phi; // D(eta,xi)=sum_i phi(i,xi)Q(eta,i,k)
        value += 2.0 * (Dk * Dk).trace();

        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j) Hk(i, j) = Q(i, j, k);
        for (Index xi = 0; xi < m; ++xi)
            for (Index eta = 0; eta < m; ++eta)
                Zk(xi, eta) = Q(n + xi, n + eta, k);
        value += 2.0 * ((phi.transpose() * Hk * phi).cwiseProduct(Zk)).sum();
    }
    // Each four-term group arises once per tensor mode; the full quadratic
    // coefficient of the norm change is the symmetrized sum.
    return 3.0 * value;
}

// Right-hand side of the gradient-flow equations, one block per count of
// lifted indices in the component.
SymTensor3 flow_rhs(const SymTensor3& Q, Index n, const Matrix& Phi) {
    const Index d = Q.dim();
    const Index m = d - n;
    SymTensor3 R(d);
    R.for_each_packed([&](Index a, Index b, Index c, double& v) {
        double s = 0.0;
        if (c < n) { // Q_ijk
            for (Index r = 0; r < m; ++r) {
                s -= Phi(a, r) * Q(n + r, b, c);
                s -= Phi(b, r) * Q(a, n + r, c);
                s -= Phi(c, r) * Q(a, b, n + r);
            }
        } else if (b < n) { // Q_ij<xi>
            const Index xi = c - n;
            for (Index r = 0; r < m; ++r) {
                s -= Phi(a, r) * Q(n + r, b, c);
                s -= Phi(b, r) * Q(a, n + r, c);
            }
            for (Index w = 0; w < n; ++w) s += Phi(w, xi) * Q(a, b, w);
        } else if (a < n) { // Q_i<xi eta>
            const Index xi = b - n, eta = c - n;
            for (Index r = 0; r < m; ++r) s -= Phi(a, r) * Q(n + r, b, c);
            for (Index w = 0; w < n; ++w) {
                s += Phi(w, xi) * Q(a, w, c);
                s += Phi(w, eta) * Q(a, b, w);
            }
        } else { // Q_<xi eta zeta>
            const Index xi = a - n, eta = b - n, zeta = c - n;
            for (Index w = 0; w < n; ++w) {
                s += Phi(w, xi) * Q(w, b, c);
                s += Phi(w, eta) * Q(a, w, c);
                s += Phi(w, zeta) * Q(a, b, w);
            }
        }
        v = s;
    });
    return R;
}

void maybe_reorthonormalize(Matrix& A) {
    const Index d = A.rows();
    const double drift =
        (A.transpose() * A - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
    if (drift > 1e-12) {
        Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
        A = svd.matrixU() * svd.matrixV().transpose();
    }
}

struct DescentContext {
    Index n;
    double target_norm_sq;
    double grad_floor;
    double step_cap;
    const DescentConfig* cfg;
    std::vector<double>* history; // only entries below best-so-far
    double* best_recorded;
};

enum class StopReason { Reached, Stationary, IterBudget };

// Plain backtracking descent. Mutates `st`; records improving steps.
StopReason descend(RotationState& st, double& omega, const DescentContext& ctx) {
    const DescentConfig& cfg = *ctx.cfg;
    while (true) {
        if (st.norm_sq <= ctx.target_norm_sq) return StopReason::Reached;
        if (st.iter >= cfg.max_iters) return StopReason::IterBudget;

        const Matrix phi = compute_phi(st.Q_current, ctx.n);
        const double phi_norm = phi.norm();
        if (phi_norm <= ctx.grad_floor) return StopReason::Stationary;

        bool accepted = false;
        while (omega * phi_norm > 1e-16) {
            const Matrix A_step = block_rotation(phi, omega);
            SymTensor3 Q_try = rotate_tensor(st.Q_current, A_step);
            const double n_try = projected_norm_sq(Q_try, ctx.n);
            if (n_try < st.norm_sq) {
                st.Q_current = std::move(Q_try);
                st.A_total = A_step * st.A_total;
                st.norm_sq = n_try;
                ++st.iter;
                maybe_reorthonormalize(st.A_total);
                if (n_try < *ctx.best_recorded) {
                    ctx.history->push_back(n_try);
                    *ctx.best_recorded = n_try;
                }
                if (cfg.on_step) cfg.on_step(st.iter, st.norm_sq);
                omega = std::min(omega * cfg.grow, ctx.step_cap);
                accepted = true;
                break;
            }
            omega *= cfg.shrink;
        }
        // No decrease at any step length: numerically stationary even if
        // the gradient is not tiny.
        if (!accepted) return StopReason::Stationary;
    }
}

// One escape attempt at a stationary point: a second-order step along the
// diagnostic direction when it predicts descent, otherwise a seeded
// basin-hopping kick. Returns the perturbed state (descent not yet run).
RotationState kick_state(const RotationState& st, Index n,
                         const SaddleDiagnostic& diag, Rng& rng) {
    const Index m = st.Q_current.dim() - n;
    RotationState trial = st;

    if (diag.is_escapable) {
        // f(omega) ~ f0 + form * omega^2 with form < 0: backtrack from 1.
        for (double omega = 1.0; omega > 1e-8; omega *= 0.5) {
            const Matrix A = block_rotation(diag.best_direction, omega);
            SymTensor3 Q_try = rotate_tensor(st.Q_current, A);
            const double n_try = projected_norm_sq(Q_try, n);
            if (n_try < st.norm_sq) {
                trial.Q_current = std::move(Q_try);
                trial.A_total = A * st.A_total;
                trial.norm_sq = n_try;
                ++trial.iter;
                return trial;
            }
        }
    }

    // Basin hop: probe a spread of angles along random directions and keep
    // the best landing point even if it is uphill.
    double best_val = std::numeric_limits<double>::infinity();
    Matrix best_A;
    SymTensor3 best_Q;
    constexpr int kCandidates = 64;
    for (int c = 0; c < kCandidates; ++c) {
        const double angle =
            3.14159265358979323846 * (c + 1) / kCandidates;
        const Matrix dir = random_unit_direction(n, m, rng);
        const Matrix A = block_rotation(dir, angle);
        SymTensor3 Q_try = rotate_tensor(st.Q_current, A);
        const double n_try = projected_norm_sq(Q_try, n);
        if (n_try < best_val) {
            best_val = n_try;
            best_A = A;
            best_Q = std::move(Q_try);
        }
    }
    trial.Q_current = std::move(best_Q);
    trial.A_total = best_A * st.A_total;
    trial.norm_sq = best_val;
    ++trial.iter;
    return trial;
}

} // namespace

SaddleDiagnostic saddle_diagnostic(const SymTensor3& Q, Index n, Index trials,
                                   std::uint64_t seed) {
    if (n < 1 || n >= Q.dim())
        throw DimensionMismatch("saddle_diagnostic: need 1 <= n < dim");
    const Index m = Q.dim() - n;
    const double q2 = Q.frobenius_norm_sq();
    const double threshold = -1e-12 * q2 * q2;

    Rng rng(seed);
    SaddleDiagnostic diag;
    diag.best_direction = Matrix::Zero(n, m);
    bool first = true;
    for (Index t = 0; t < trials; ++t) {
        const Matrix phi = random_unit_direction(n, m, rng);
        const double v = second_order_form(Q, n, phi);
        if (first || v < diag.best_value) {
            diag.best_value = v;
            diag.best_direction = phi;
            first = false;
        }
    }
    diag.is_escapable = !first && diag.best_value < threshold;
    return diag;
}

std::pair<RotationState, DescentOutcome> minimize_projected_norm(
    const SymTensor3& Q0, Index n, const DescentConfig& cfg) {
    if (n < 1 || n >= Q0.dim())
        throw DimensionMismatch("minimize_projected_norm: need 1 <= n < dim");
    if (!(cfg.tol_rel_norm > 0.0) || !(cfg.tol_grad > 0.0) ||
        !(cfg.shrink > 0.0 && cfg.shrink < 1.0) || !(cfg.grow > 1.0) ||
        cfg.max_iters < 0)
        throw Error("minimize_projected_norm: invalid descent configuration");

    RotationState st;
    st.A_total = Matrix::Identity(Q0.dim(), Q0.dim());
    st.Q_current = Q0;
    st.norm_sq = projected_norm_sq(Q0, n);
    st.iter = 0;

    DescentOutcome out;
    const double initial_norm_sq = st.norm_sq;
    if (initial_norm_sq == 0.0) {
        out.status = DescentStatus::Converged;
        out.final_rel_norm = 0.0;
        out.iters = 0;
        return {std::move(st), out};
    }

    const double target_norm_sq =
        cfg.tol_rel_norm * cfg.tol_rel_norm * initial_norm_sq;
    const double grad_floor = cfg.tol_grad * Q0.frobenius_norm_sq();

    double step0 = cfg.step0;
    if (!(step0 > 0.0)) {
        const double phi0 = compute_phi(st.Q_current, n).norm();
        step0 = 0.1 / std::max(1.0, phi0);
    }
    double omega = step0;
    double best_recorded = std::numeric_limits<double>::infinity();

    DescentContext ctx{n,   target_norm_sq, grad_floor,     step0 * 10.0,
                       &cfg, &out.history,   &best_recorded};

    Rng rng(cfg.seed);
    StopReason reason = descend(st, omega, ctx);

    int restarts = 0;
    while (reason == StopReason::Stationary && st.norm_sq > target_norm_sq &&
           restarts < 3) {
        const auto diag =
            saddle_diagnostic(st.Q_current, n, 64, rng.next_u64());
        RotationState trial = kick_state(st, n, diag, rng);
        if (trial.norm_sq < best_recorded) {
            out.history.push_back(trial.norm_sq);
            best_recorded = trial.norm_sq;
        }
        double trial_omega = step0;
        reason = descend(trial, trial_omega, ctx);
        if (trial.norm_sq < st.norm_sq) {
            st = std::move(trial);
            omega = trial_omega;
        }
        ++restarts;
    }

    switch (reason) {
        case StopReason::Reached: out.status = DescentStatus::Converged; break;
        case StopReason::IterBudget: out.status = DescentStatus::MaxIters; break;
        case StopReason::Stationary:
            out.status = st.norm_sq <= target_norm_sq
                             ? DescentStatus::Converged
                             : DescentStatus::GradientVanishedNonzeroNorm;
            break;
    }
    out.final_rel_norm = std::sqrt(st.norm_sq / initial_norm_sq);
    out.iters = st.iter;
    return {std::move(st), out};
}

double gradient_flow_check(const SymTensor3& Q, Index n, double dt,
                           Index steps) {
    if (n < 1 || n >= Q.dim())
        throw DimensionMismatch("gradient_flow_check: need 1 <= n < dim");
    SymTensor3 q_euler = Q;
    SymTensor3 q_discrete = Q;
    double max_dev = 0.0;
    for (Index s = 0; s < steps; ++s) {
        const Matrix phi_e = compute_phi(q_euler, n);
        const SymTensor3 rhs = flow_rhs(q_euler, n, phi_e);
        {
            double* qe = q_euler.packed_data();
            const double* r = rhs.packed_data();
            for (Index c = 0; c < q_euler.packed_size(); ++c)
                qe[c] += dt * r[c];
        }
        const Matrix phi_d = compute_phi(q_discrete, n);
        q_discrete = rotate_tensor(q_discrete, block_rotation(phi_d, dt));

        const double* a = q_euler.packed_data();
        const double* b = q_discrete.packed_data();
        for (Index c = 0; c < q_euler.packed_size(); ++c)
            max_dev = std::max(max_dev, std::abs(a[c] - b[c]));
    }
    return max_dev;
}

} // namespace trinorm

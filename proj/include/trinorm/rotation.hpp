#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "trinorm/moments.hpp"

namespace trinorm {

// Phi(i,xi) = sum_{j,k < n} Q(i,j,k) Q(n+xi,j,k): the steepest-descent
// direction for the projected norm (N x M, M = Q.dim() - n).
// Throws DimensionMismatch unless 1 <= n < Q.dim().
Matrix compute_phi(const SymTensor3& Q, Index n);

// Exact exponential of the block-skew generator
//   [ 0        -omega*phi ]
//   [ omega*phi^T   0     ]
// computed in closed form from the SVD of phi (each singular triplet is
// an independent 2-plane rotation). Result is (N+M) x (N+M), orthogonal
// to machine precision, determinant +1.
Matrix block_rotation(const Matrix& phi, double omega);

struct DescentConfig {
    // Initial step; NaN means 0.1 / max(1, ||Phi_0||_F), resolved at start.
    double step0 = std::numeric_limits<double>::quiet_NaN();
    double shrink = 0.5;
    double grow = 1.5;
    Index max_iters = 5000;
    // Stop when norm_sq <= tol_rel_norm^2 * initial norm_sq.
    double tol_rel_norm = 1e-6;
    // Treat the point as stationary when ||Phi||_F <= tol_grad * ||Q||_F^2.
    double tol_grad = 1e-10;
    std::uint64_t seed = 42;
    // Invoked after every accepted step (CLI progress). May be empty.
    std::function<void(Index iter, double norm_sq)> on_step;
};

enum class DescentStatus {
    Converged,
    GradientVanishedNonzeroNorm,
    MaxIters,
};

const char* to_string(DescentStatus s);

struct RotationState {
    Matrix A_total;      // accumulated rotation, orthogonal
    SymTensor3 Q_current; // rotate_tensor(Q0, A_total)
    double norm_sq = 0.0; // projected_norm_sq(Q_current, n)
    Index iter = 0;       // accepted steps
};

struct DescentOutcome {
    DescentStatus status = DescentStatus::Converged;
    double final_rel_norm = 0.0; // sqrt(norm_sq / initial norm_sq)
    Index iters = 0;
    std::vector<double> history; // norm_sq after each accepted step
};

// Gradient descent on the rotation group with backtracking line search:
// at each step rotate by block_rotation(Phi, omega), accept only strict
// decreases of the projected norm. At stationary points with nonzero
// norm, runs the saddle diagnostic and up to 3 seeded perturbation
// restarts before reporting GradientVanishedNonzeroNorm.
std::pair<RotationState, DescentOutcome> minimize_projected_norm(
    const SymTensor3& Q0, Index n, const DescentConfig& cfg = {});

// Integrates the four gradient-flow ODE blocks with explicit Euler and
// compares against the discrete rotation path with omega = dt. Returns
// the maximum componentwise deviation along the path (a cross-check of
// the rotation step, not a production path).
double gradient_flow_check(const SymTensor3& Q, Index n, double dt,
                           Index steps);

struct SaddleDiagnostic {
    bool is_escapable = false;
    Matrix best_direction; // unit-Frobenius N x M, most negative form value
    double best_value = 0.0;
};

// Evaluates the second-order expansion of the projected norm at a
// stationary point for `trials` random unit directions. Escapable iff
// some direction makes the quadratic form negative beyond rounding
// (threshold 1e-12 scaled by ||Q||_F^4).
SaddleDiagnostic saddle_diagnostic(const SymTensor3& Q, Index n,
                                   Index trials, std::uint64_t seed);

} // namespace trinorm

#pragma once

#include <cmath>

#include "trinorm/moments.hpp"
#include "trinorm/random.hpp"
#include "trinorm/types.hpp"

#include <Eigen/Dense>

namespace tt {

using namespace trinorm;

inline DataMatrix gaussian_data(Index P, Index D, Rng& rng) {
    DataMatrix X(P, D);
    for (Index r = 0; r < P; ++r)
        for (Index c = 0; c < D; ++c) X(r, c) = rng.normal();
    return X;
}

// Componentwise skewed variates mixed by a random full-rank matrix.
inline DataMatrix skewed_data(Index P, Index D, Rng& rng) {
    DataMatrix X(P, D);
    for (Index r = 0; r < P; ++r)
        for (Index c = 0; c < D; ++c) {
            const double v = rng.normal();
            X(r, c) = v + 0.4 * (v * v - 1.0) + 0.1 * static_cast<double>(c);
        }
    Matrix mix(D, D);
    for (Index i = 0; i < D; ++i)
        for (Index j = 0; j < D; ++j)
            mix(i, j) = (i == j ? 1.0 : 0.0) + 0.3 * rng.normal();
    return X * mix.transpose();
}

inline Matrix random_orthogonal(Index d, Rng& rng) {
    Matrix G(d, d);
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j) G(i, j) = rng.normal();
    Eigen::HouseholderQR<Matrix> qr(G);
    Matrix Q = qr.householderQ();
    const Matrix R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index i = 0; i < d; ++i)
        if (R(i, i) < 0) Q.col(i) = -Q.col(i);
    return Q;
}

inline SymTensor3 random_tensor(Index d, Rng& rng, bool unit_norm = true) {
    SymTensor3 Q(d);
    Q.for_each_packed(
        [&](Index, Index, Index, double& v) { v = rng.normal(); });
    if (unit_norm) {
        const double norm = std::sqrt(Q.frobenius_norm_sq());
        Q *= 1.0 / norm;
    }
    return Q;
}

// O(d^6) reference contraction, independent of the mode-product path.
inline SymTensor3 rotate_tensor_naive(const SymTensor3& Q, const Matrix& A) {
    const Index d = Q.dim();
    SymTensor3 R(d);
    R.for_each_packed([&](Index m, Index n, Index l, double& v) {
        double s = 0.0;
        for (Index a = 0; a < d; ++a)
            for (Index b = 0; b < d; ++b)
                for (Index c = 0; c < d; ++c)
                    s += A(m, a) * A(n, b) * A(l, c) * Q(a, b, c);
        v = s;
    });
    return R;
}

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

inline double orthogonality_drift(const Matrix& A) {
    return max_abs(A.transpose() * A -
                   Matrix::Identity(A.rows(), A.cols()));
}

} // namespace tt

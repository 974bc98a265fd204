#include "trinorm/lifting.hpp"

#include <cmath>

namespace trinorm {

SymBasis make_sym_basis(Index n) {
    if (n < 1) throw DimensionMismatch("make_sym_basis: n must be >= 1");
    SymBasis basis;
    basis.n = n;
    basis.elements.reserve(static_cast<std::size_t>(n * (n + 1) / 2));
    for (Index i = 0; i < n; ++i) {
        Matrix e = Matrix::Zero(n, n);
        e(i, i) = 1.0;
        basis.elements.push_back(std::move(e));
    }
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j) {
            Matrix e = Matrix::Zero(n, n);
            e(i, j) = inv_sqrt2;
            e(j, i) = inv_sqrt2;
            basis.elements.push_back(std::move(e));
        }
    return basis;
}

std::pair<double, Vector> lift_coefficients(const Matrix& gamma,
                                            const SymTensor3& Q) {
    const Index n = Q.dim();
    if (gamma.rows() != n || gamma.cols() != n)
        throw DimensionMismatch("lift_coefficients: gamma must be dim x dim");
    const double alpha = -gamma.trace();
    Vector beta = Vector::Zero(n);
    for (Index i = 0; i < n; ++i) {
        double s = 0.0;
        for (Index j = 0; j < n; ++j)
            for (Index k = 0; k < n; ++k) s += Q(i, j, k) * gamma(j, k);
        beta[i] = -s;
    }
    return {alpha, beta};
}

DataMatrix raw_lift(const DataMatrix& data_whitened, const SymBasis& basis,
                    const Vector& alphas, const Matrix& betas) {
    const Index P = data_whitened.rows();
    const Index n = basis.n;
    const Index m = basis.m();
    if (data_whitened.cols() != n)
        throw DimensionMismatch("raw_lift: data does not match basis dim");
    if (alphas.size() != m || betas.rows() != m || betas.cols() != n)
        throw DimensionMismatch("raw_lift: coefficient shapes do not match");

    // z = alpha + x.beta + x^T gamma x, column by column over the basis.
    DataMatrix z(P, m);
    for (Index xi = 0; xi < m; ++xi) {
        const Matrix& gamma = basis.elements[static_cast<std::size_t>(xi)];
        z.col(xi) =
            ((data_whitened * gamma).cwiseProduct(data_whitened)).rowwise().sum();
        z.col(xi) += data_whitened * betas.row(xi).transpose();
        z.col(xi).array() += alphas[xi];
    }
    return z;
}

LiftSpec fit_lift(const DataMatrix& data_whitened, Index chunk) {
    require_nonempty(data_whitened, "fit_lift");
    const Index n = data_whitened.cols();

    const SymTensor3 Q = compute_third_moment(data_whitened, chunk);
    SymBasis basis = make_sym_basis(n);
    const Index m = basis.m();

    Vector alphas(m);
    Matrix betas(m, n);
    for (Index xi = 0; xi < m; ++xi) {
        auto [alpha, beta] =
            lift_coefficients(basis.elements[static_cast<std::size_t>(xi)], Q);
        alphas[xi] = alpha;
        betas.row(xi) = beta.transpose();
    }

    const DataMatrix z = raw_lift(data_whitened, basis, alphas, betas);
    auto fitted = fit_whitening(z);
    return LiftSpec{std::move(basis), std::move(alphas), std::move(betas),
                    std::move(fitted.first)};
}

DataMatrix lift_data(const DataMatrix& data_whitened, const LiftSpec& spec) {
    const Index P = data_whitened.rows();
    const Index n = spec.basis.n;
    const Index m = spec.basis.m();
    if (data_whitened.cols() != n)
        throw DimensionMismatch("lift_data: data does not match lift dim");

    const DataMatrix z =
        raw_lift(data_whitened, spec.basis, spec.alphas, spec.betas);
    DataMatrix out(P, n + m);
    out.leftCols(n) = data_whitened;
    out.rightCols(m) = apply_affine(spec.z_whitening, z);
    return out;
}

} // namespace trinorm

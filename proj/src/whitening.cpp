#include "trinorm/whitening.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "trinorm/moments.hpp"

namespace trinorm {
namespace {

// Largest-magnitude entry (first of them on ties) made positive.
void normalize_sign(Vector& v) {
    Index best = 0;
    for (Index i = 1; i < v.size(); ++i)
        if (std::abs(v[i]) > std::abs(v[best])) best = i;
    if (v[best] < 0) v = -v;
}

bool lex_greater(const Vector& a, const Vector& b) {
    for (Index i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] > b[i];
    }
    return false;
}

} // namespace

std::pair<AffineMap, WhiteningReport> fit_whitening(const DataMatrix& data,
                                                    double eig_threshold) {
    require_nonempty(data, "fit_whitening");
    require_finite(data, "fit_whitening");
    const Index P = data.rows(), D = data.cols();
    if (P < 2) throw InsufficientData("fit_whitening: need at least 2 points");

    const Vector mean = compute_mean(data);
    const Matrix cov = compute_covariance(data, mean);

    Eigen::SelfAdjointEigenSolver<Matrix> es(cov);
    if (es.info() != Eigen::Success)
        throw Error("fit_whitening: eigendecomposition failed");

    struct Mode {
        double lambda;
        Vector v;
    };
    std::vector<Mode> modes(static_cast<std::size_t>(D));
    for (Index i = 0; i < D; ++i) {
        modes[static_cast<std::size_t>(i)] = {es.eigenvalues()[i],
                                              es.eigenvectors().col(i)};
        normalize_sign(modes[static_cast<std::size_t>(i)].v);
    }
    std::sort(modes.begin(), modes.end(), [](const Mode& a, const Mode& b) {
        if (a.lambda != b.lambda) return a.lambda > b.lambda;
        return lex_greater(a.v, b.v);
    });

    const double lambda_max = modes.front().lambda;
    Index dropped = 0;
    for (const Mode& m : modes)
        if (!(m.lambda > eig_threshold * lambda_max)) ++dropped;
    if (lambda_max <= 0.0 || dropped > 0)
        throw RankDeficient(
            "fit_whitening: " + std::to_string(dropped) +
            " eigenvalue(s) below threshold; data spans a lower-dimensional "
            "subspace");

    Matrix W(D, D);
    Vector eigenvalues(D);
    for (Index i = 0; i < D; ++i) {
        const Mode& m = modes[static_cast<std::size_t>(i)];
        eigenvalues[i] = m.lambda;
        W.row(i) = m.v.transpose() / std::sqrt(m.lambda);
    }

    AffineMap map{W, -W * mean};
    WhiteningReport report{eigenvalues, eigenvalues[0] / eigenvalues[D - 1],
                           dropped};
    return {std::move(map), std::move(report)};
}

DataMatrix apply_affine(const AffineMap& map, const DataMatrix& data) {
    if (data.cols() != map.in_dim())
        throw DimensionMismatch("apply_affine: data has " +
                                std::to_string(data.cols()) +
                                " columns, map expects " +
                                std::to_string(map.in_dim()));
    DataMatrix out = data * map.linear.transpose();
    out.rowwise() += map.offset.transpose();
    return out;
}

} // namespace trinorm

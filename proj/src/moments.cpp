#include "trinorm/moments.hpp"

#include <vector>

#include "trinorm/kernels.hpp"

namespace trinorm {
namespace {

// Combines adjacent blocks pairwise until one remains. The tree depends
// only on the block count, so a fixed chunk size gives a reproducible
// summation order.
void pairwise_reduce(std::vector<std::vector<double>>& blocks) {
    while (blocks.size() > 1) {
        std::size_t out = 0;
        for (std::size_t i = 0; i + 1 < blocks.size(); i += 2) {
            for (std::size_t c = 0; c < blocks[i].size(); ++c)
                blocks[i][c] += blocks[i + 1][c];
            if (out != i) blocks[out] = std::move(blocks[i]);
            ++out;
        }
        if (blocks.size() % 2 == 1) {
            if (out != blocks.size() - 1)
                blocks[out] = std::move(blocks.back());
            ++out;
        }
        blocks.resize(out);
    }
}

template <typename PerChunk>
std::vector<double> chunked_accumulate(Index P, Index chunk, std::size_t size,
                                       PerChunk&& per_chunk) {
    if (chunk < 1) chunk = kDefaultChunk;
    std::vector<std::vector<double>> blocks;
    blocks.reserve(static_cast<std::size_t>((P + chunk - 1) / chunk));
    for (Index p0 = 0; p0 < P; p0 += chunk) {
        const Index p1 = std::min(P, p0 + chunk);
        std::vector<double> acc(size, 0.0);
        per_chunk(p0, p1, acc.data());
        blocks.push_back(std::move(acc));
    }
    pairwise_reduce(blocks);
    return std::move(blocks.front());
}

} // namespace

Vector compute_mean(const DataMatrix& data, Index chunk) {
    require_nonempty(data, "compute_mean");
    const Index P = data.rows(), D = data.cols();
    const auto& k = kernels::active_kernels();
    auto sums = chunked_accumulate(
        P, chunk, static_cast<std::size_t>(D),
        [&](Index p0, Index p1, double* out) {
            k.col_sums(data.data(), P, D, p0, p1, out);
        });
    Vector mean(D);
    for (Index j = 0; j < D; ++j) mean[j] = sums[j] / static_cast<double>(P);
    return mean;
}

Matrix compute_covariance(const DataMatrix& data, const Vector& mean,
                          Index chunk) {
    require_nonempty(data, "compute_covariance");
    const Index P = data.rows(), D = data.cols();
    if (P < 2)
        throw InsufficientData("compute_covariance: need at least 2 points");
    if (mean.size() != D)
        throw DimensionMismatch("compute_covariance: mean size != D");
    const auto& k = kernels::active_kernels();
    auto packed = chunked_accumulate(
        P, chunk, static_cast<std::size_t>(D * (D + 1) / 2),
        [&](Index p0, Index p1, double* out) {
            k.cov_accum(data.data(), P, D, p0, p1, mean.data(), out);
        });
    Matrix cov(D, D);
    std::size_t c = 0;
    for (Index i = 0; i < D; ++i)
        for (Index j = i; j < D; ++j) {
            const double v = packed[c++] / static_cast<double>(P);
            cov(i, j) = v;
            cov(j, i) = v;
        }
    return cov;
}

SymTensor3 compute_third_moment(const DataMatrix& data, Index chunk) {
    require_nonempty(data, "compute_third_moment");
    const Index P = data.rows(), D = data.cols();
    const auto& k = kernels::active_kernels();
    std::vector<double> scratch(static_cast<std::size_t>(
        std::min(P, chunk < 1 ? kDefaultChunk : chunk)));
    auto packed = chunked_accumulate(
        P, chunk, static_cast<std::size_t>(SymTensor3::packed_count(D)),
        [&](Index p0, Index p1, double* out) {
            k.third_accum(data.data(), P, D, p0, p1, scratch.data(), out);
        });
    SymTensor3 Q(D);
    const double inv_p = 1.0 / static_cast<double>(P);
    double* q = Q.packed_data();
    for (Index c = 0; c < Q.packed_size(); ++c) q[c] = packed[c] * inv_p;
    return Q;
}

double projected_norm_sq(const SymTensor3& Q, Index horizontal_dim) {
    if (horizontal_dim < 0 || horizontal_dim > Q.dim())
        throw DimensionMismatch("projected_norm_sq: subspace exceeds dim");
    double s = 0.0;
    for (Index i = 0; i < horizontal_dim; ++i)
        for (Index j = i; j < horizontal_dim; ++j)
            for (Index k = j; k < horizontal_dim; ++k) {
                const double v = Q(i, j, k);
                s += SymTensor3::multiplicity(i, j, k) * v * v;
            }
    return s;
}

SymTensor3 rotate_tensor(const SymTensor3& Q, const Matrix& A) {
    if (A.rows() != A.cols())
        throw DimensionMismatch("rotate_tensor: A must be square");
    if (A.rows() != Q.dim())
        throw DimensionMismatch("rotate_tensor: A does not match tensor dim");
    const Index d = Q.dim();

    // Mode-1 product on the unfolding U(b + d*c, a) = Q(a,b,c).
    Matrix U(d * d, d);
    for (Index a = 0; a < d; ++a)
        for (Index b = 0; b < d; ++b)
            for (Index c = 0; c < d; ++c) U(b + d * c, a) = Q(a, b, c);
    const Matrix T1 = U * A.transpose(); // T1(b + d*c, m) = sum_a A(m,a) Q(a,b,c)

    SymTensor3 R(d);
    Matrix W(d, d);
    for (Index m = 0; m < d; ++m) {
        Eigen::Map<const Matrix> slice(T1.col(m).data(), d, d);
        W.noalias() = A * slice * A.transpose();
        for (Index j = m; j < d; ++j)
            for (Index k = j; k < d; ++k) R(m, j, k) = W(j, k);
    }
    return R;
}

} // namespace trinorm

#pragma once

#include <vector>

#include "trinorm/moments.hpp"
#include "trinorm/whitening.hpp"

namespace trinorm {

// Orthonormal basis of symmetric N x N matrices under the trace inner
// product, in canonical order: diagonal units E_ii (i ascending), then
// (E_ij + E_ji)/sqrt(2) for i < j lexicographic. M = N(N+1)/2 elements.
struct SymBasis {
    Index n = 0;
    std::vector<Matrix> elements;

    Index m() const { return static_cast<Index>(elements.size()); }
};

SymBasis make_sym_basis(Index n);

// The quadratic lift. Coordinate xi of the lifted block is
//   z_xi(x) = alpha[xi] + betas.row(xi) . x + x^T gamma^xi x,
// followed by z_whitening applied to the z block.
struct LiftSpec {
    SymBasis basis;
    Vector alphas;        // M
    Matrix betas;         // M x N
    AffineMap z_whitening; // M -> M
};

// alpha = -trace(gamma), beta_i = -sum_{jk} Q(i,j,k) gamma(j,k).
// Throws DimensionMismatch if gamma is not Q.dim() x Q.dim().
std::pair<double, Vector> lift_coefficients(const Matrix& gamma,
                                            const SymTensor3& Q);

// Evaluates the raw z block (before z-whitening) on whitened data.
DataMatrix raw_lift(const DataMatrix& data_whitened, const SymBasis& basis,
                    const Vector& alphas, const Matrix& betas);

// Builds the full lift from whitened data: computes the third moment of
// the sample, derives the coefficients for every basis element, and
// whitens the z block. Throws RankDeficient when the quadratic features
// are linearly dependent in the sample.
LiftSpec fit_lift(const DataMatrix& data_whitened, Index chunk = kDefaultChunk);

// [x, z_whitened(x)]: first N columns are the input unchanged, then the
// M whitened z coordinates. Throws DimensionMismatch.
DataMatrix lift_data(const DataMatrix& data_whitened, const LiftSpec& spec);

} // namespace trinorm

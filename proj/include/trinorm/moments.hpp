#pragma once

#include "trinorm/sym_tensor3.hpp"
#include "trinorm/types.hpp"

namespace trinorm {

// Points per accumulation chunk. Chunk sums are combined by a pairwise
// reduction tree, so results are reproducible run to run and (to
// rounding) independent of the chunk size.
inline constexpr Index kDefaultChunk = 4096;

// Column averages. Throws EmptyInput.
Vector compute_mean(const DataMatrix& data, Index chunk = kDefaultChunk);

// Second central moments with the population divisor P.
// Throws InsufficientData for P < 2.
Matrix compute_covariance(const DataMatrix& data, const Vector& mean,
                          Index chunk = kDefaultChunk);

// Q(i,j,k) = (1/P) sum_p x(p,i) x(p,j) x(p,k). The caller is responsible
// for centering; no mean is subtracted here.
SymTensor3 compute_third_moment(const DataMatrix& data,
                                Index chunk = kDefaultChunk);

// Sum of squares of all components with every index < horizontal_dim,
// each unordered triple counted with its permutation multiplicity.
double projected_norm_sq(const SymTensor3& Q, Index horizontal_dim);

// Q'(m,n,l) = A(m,a) A(n,b) A(l,c) Q(a,b,c), computed mode by mode.
// A must be square with A.rows() == Q.dim().
SymTensor3 rotate_tensor(const SymTensor3& Q, const Matrix& A);

} // namespace trinorm

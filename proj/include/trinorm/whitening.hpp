#pragma once

#include "trinorm/types.hpp"

namespace trinorm {

// y = linear * x + offset
struct AffineMap {
    Matrix linear;
    Vector offset;

    Index in_dim() const { return linear.cols(); }
    Index out_dim() const { return linear.rows(); }

    Vector apply(const Vector& x) const { return linear * x + offset; }
};

// Diagnostics from the covariance eigendecomposition.
struct WhiteningReport {
    Vector eigenvalues;       // descending
    double condition_number;  // largest / smallest retained eigenvalue
    Index dropped;            // eigenvalues below the relative threshold
};

inline constexpr double kDefaultEigThreshold = 1e-12;

// Fits the affine map that sends the sample to zero mean and identity
// covariance: x -> Lambda^{-1/2} V^T (x - mean). Eigenvectors are ordered
// by descending eigenvalue (ties broken by descending lexicographic
// comparison of the sign-normalized vectors) and each vector's
// largest-magnitude entry is made positive, so the fit is deterministic.
//
// Throws InsufficientData (P < 2) and RankDeficient (any eigenvalue below
// eig_threshold times the largest).
std::pair<AffineMap, WhiteningReport> fit_whitening(
    const DataMatrix& data, double eig_threshold = kDefaultEigThreshold);

// Row-wise application. Throws DimensionMismatch.
DataMatrix apply_affine(const AffineMap& map, const DataMatrix& data);

} // namespace trinorm

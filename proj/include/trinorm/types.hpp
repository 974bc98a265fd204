#pragma once

#include <Eigen/Core>

#include "trinorm/errors.hpp"

namespace trinorm {

using Index = Eigen::Index;

// A dataset is P points by D dimensions, column-major so that a single
// coordinate across all points is contiguous (what the accumulation
// kernels want).
using DataMatrix = Eigen::MatrixXd;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Throws EmptyInput for a 0xN or Nx0 dataset.
inline void require_nonempty(const DataMatrix& data, const char* what) {
    if (data.rows() < 1 || data.cols() < 1)
        throw EmptyInput(std::string(what) + ": empty data matrix");
}

// Throws if any entry is NaN or infinite.
inline void require_finite(const DataMatrix& data, const char* what) {
    if (!data.allFinite())
        throw Error(std::string(what) + ": data contains NaN or Inf");
}

} // namespace trinorm

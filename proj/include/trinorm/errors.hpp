#pragma once

#include <stdexcept>
#include <string>

namespace trinorm {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A dataset with zero rows or zero columns.
struct EmptyInput : Error {
    using Error::Error;
};

// Too few points for the requested operation (P < 2 for a covariance,
// P below the fit guard, ...).
struct InsufficientData : Error {
    using Error::Error;
};

// Incompatible shapes (matrix vs. data, tensor vs. subspace, ...).
struct DimensionMismatch : Error {
    using Error::Error;
};

// The sample covariance has eigenvalues below the relative threshold;
// the data lives on a lower-dimensional subspace and cannot be whitened.
struct RankDeficient : Error {
    using Error::Error;
};

// Model document problems.
struct MalformedDocument : Error {
    using Error::Error;
};

struct VersionMismatch : Error {
    using Error::Error;
};

} // namespace trinorm

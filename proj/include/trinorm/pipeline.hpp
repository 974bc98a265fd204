#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trinorm/lifting.hpp"
#include "trinorm/rotation.hpp"

namespace trinorm {

inline constexpr const char* kModelVersion = "1";

// The fitted quadratic standardization:
//   y = first N coordinates of rotation * [ w(x) ; z_w(w(x)) ]
// where w is the input whitening and z_w the lifted-then-whitened block.
struct FittedTransform {
    Index n = 0; // input dimension
    Index m = 0; // n(n+1)/2 lifted coordinates
    AffineMap whitening; // N -> N
    LiftSpec lift;
    Matrix rotation;     // (N+M) x (N+M), orthogonal
    double residual_norm = 0.0; // final relative projected norm
    std::string version = kModelVersion;
};

struct FitResult {
    FittedTransform model;
    DescentOutcome descent;
    WhiteningReport whitening_report;
};

// Fit guard: P >= 10 * (N + N(N+1)/2). Rank problems surface as
// RankDeficient; a non-convergent descent is NOT an error, the model is
// returned with its residual_norm and the outcome says what happened.
FitResult fit(const DataMatrix& data, const DescentConfig& cfg = {});

// Applies the fitted quadratic map row-wise. Output is P x N.
DataMatrix transform(const FittedTransform& model, const DataMatrix& data);

// Euclidean norm of each transformed point.
Vector anomaly_scores(const FittedTransform& model, const DataMatrix& data);

// Euclidean norm after whitening only (the classical baseline score).
Vector whitening_scores(const FittedTransform& model, const DataMatrix& data);

struct DemoSpec {
    Index n_points = 10000;
    Index n_anomalies = 4;
    std::uint64_t seed = 42;
    // Extra displacement along (1,1)/2 added to the canonical anomaly
    // positions; 0 keeps them at the defaults.
    double anomaly_offset = 0.0;
};

struct DemoData {
    DataMatrix points; // (n_points + n_anomalies) x 2, anomalies last
    std::vector<Index> anomaly_indices;
};

// n_points uniform samples in the triangle x >= 0, y >= 0, x + y <= 1
// (fold sampling), plus n_anomalies points above the diagonal.
// Deterministic for a fixed seed.
DemoData generate_demo(const DemoSpec& spec);

} // namespace trinorm

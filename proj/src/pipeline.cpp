#include "trinorm/pipeline.hpp"

#include <cmath>

#include "trinorm/random.hpp"

namespace trinorm {

FitResult fit(const DataMatrix& data, const DescentConfig& cfg) {
    require_nonempty(data, "fit");
    require_finite(data, "fit");
    const Index P = data.rows();
    const Index n = data.cols();
    const Index m = n * (n + 1) / 2;
    if (P < 10 * (n + m))
        throw InsufficientData("fit: need at least " +
                               std::to_string(10 * (n + m)) + " points for " +
                               std::to_string(n) + "-dimensional data, got " +
                               std::to_string(P));

    auto [w_map, w_report] = fit_whitening(data);
    const DataMatrix xw = apply_affine(w_map, data);

    LiftSpec lift = fit_lift(xw);
    const DataMatrix lifted = lift_data(xw, lift);

    const SymTensor3 Q = compute_third_moment(lifted);
    auto [state, outcome] = minimize_projected_norm(Q, n, cfg);

    FitResult result;
    result.model = FittedTransform{n,
                                   m,
                                   std::move(w_map),
                                   std::move(lift),
                                   std::move(state.A_total),
                                   outcome.final_rel_norm,
                                   kModelVersion};
    result.descent = std::move(outcome);
    result.whitening_report = std::move(w_report);
    return result;
}

DataMatrix transform(const FittedTransform& model, const DataMatrix& data) {
    if (data.cols() != model.n)
        throw DimensionMismatch("transform: data has " +
                                std::to_string(data.cols()) +
                                " columns, model expects " +
                                std::to_string(model.n));
    require_finite(data, "transform");
    const DataMatrix xw = apply_affine(model.whitening, data);
    const DataMatrix lifted = lift_data(xw, model.lift);
    // row vectors: y' = A y  <=>  Y' = Y A^T
    return (lifted * model.rotation.transpose()).leftCols(model.n);
}

Vector anomaly_scores(const FittedTransform& model, const DataMatrix& data) {
    return transform(model, data).rowwise().norm();
}

Vector whitening_scores(const FittedTransform& model, const DataMatrix& data) {
    return apply_affine(model.whitening, data).rowwise().norm();
}

DemoData generate_demo(const DemoSpec& spec) {
    if (spec.n_points < 1)
        throw Error("generate_demo: n_points must be >= 1");
    if (spec.n_anomalies < 0)
        throw Error("generate_demo: n_anomalies must be >= 0");

    Rng rng(spec.seed);
    DemoData demo;
    demo.points.resize(spec.n_points + spec.n_anomalies, 2);

    // Uniform in the triangle x >= 0, y >= 0, x + y <= 1 by folding the
    // unit square across the diagonal.
    for (Index p = 0; p < spec.n_points; ++p) {
        double u = rng.uniform01();
        double v = rng.uniform01();
        if (u + v > 1.0) {
            u = 1.0 - u;
            v = 1.0 - v;
        }
        demo.points(p, 0) = u;
        demo.points(p, 1) = v;
    }

    // Close enough to the diagonal that plain whitening does not already
    // single them out (the triangle's own corners reach Mahalanobis
    // distance sqrt(8); these sit well inside that) while still clearly
    // off-distribution.
    static constexpr double kBases[4][2] = {
        {0.550, 0.550}, {0.650, 0.450}, {0.450, 0.650}, {0.575, 0.575}};
    const double shift = spec.anomaly_offset / 2.0;
    for (Index a = 0; a < spec.n_anomalies; ++a) {
        const double* base = kBases[a % 4];
        const Index row = spec.n_points + a;
        demo.points(row, 0) = base[0] + shift + rng.uniform(-0.02, 0.02);
        demo.points(row, 1) = base[1] + shift + rng.uniform(-0.02, 0.02);
        demo.anomaly_indices.push_back(row);
    }
    return demo;
}

} // namespace trinorm

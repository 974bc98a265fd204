// trinorm: standardize multivariate data up to the third moment.
//
// Exit codes: 0 success, 1 malformed/unreadable input or I/O failure,
// 2 data unsuitable (dimension/rank/size), 3 fit finished without
// converging (model still written).

#include <cstdio>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "trinorm/csv.hpp"
#include "trinorm/model_io.hpp"
#include "trinorm/pipeline.hpp"

namespace {

using namespace trinorm;

std::vector<std::string> default_header(const std::string& prefix, Index k) {
    std::vector<std::string> h;
    for (Index i = 0; i < k; ++i) h.push_back(prefix + std::to_string(i));
    return h;
}

int cmd_fit(const std::string& input, const std::string& model_path,
            double tol, Index max_iters, double step, std::uint64_t seed,
            bool quiet) {
    const CsvTable table = read_csv(input);

    DescentConfig cfg;
    cfg.tol_rel_norm = tol;
    cfg.max_iters = max_iters;
    if (step > 0) cfg.step0 = step;
    cfg.seed = seed;
    if (!quiet)
        cfg.on_step = [](Index iter, double norm_sq) {
            if (iter % 100 == 0)
                std::fprintf(stderr, "iter %lld projected_norm_sq=%.6e\n",
                             static_cast<long long>(iter), norm_sq);
        };

    const FitResult result = fit(table.values, cfg);
    save_model(result.model, model_path);

    std::cout << "N=" << result.model.n << " M=" << result.model.m
              << " iterations=" << result.descent.iters
              << " residual_norm=" << format_double(result.model.residual_norm)
              << " status=" << to_string(result.descent.status) << '\n';
    return result.descent.status == DescentStatus::Converged ? 0 : 3;
}

int cmd_transform(const std::string& input, const std::string& model_path,
                  const std::string& output) {
    const FittedTransform model = load_model(model_path);
    const CsvTable table = read_csv(input);
    if (table.values.cols() != model.n) {
        std::cerr << "trinorm: input has " << table.values.cols()
                  << " columns, model expects " << model.n << '\n';
        return 2;
    }
    DataMatrix out(table.values.rows(), model.n);
    if (table.values.rows() > 0) out = transform(model, table.values);
    write_csv(output, default_header("y", model.n), out);
    return 0;
}

int cmd_score(const std::string& input, const std::string& model_path,
              const std::string& output, long long top) {
    const FittedTransform model = load_model(model_path);
    const CsvTable table = read_csv(input);
    if (table.values.cols() != model.n) {
        std::cerr << "trinorm: input has " << table.values.cols()
                  << " columns, model expects " << model.n << '\n';
        return 2;
    }

    const Index rows = table.values.rows();
    Vector scores(rows);
    if (rows > 0) scores = anomaly_scores(model, table.values);

    std::vector<Index> order(static_cast<std::size_t>(rows));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
        return scores[a] > scores[b];
    });
    Index keep = rows;
    if (top >= 0) keep = std::min<Index>(rows, static_cast<Index>(top));

    DataMatrix out(keep, 2);
    for (Index r = 0; r < keep; ++r) {
        out(r, 0) = static_cast<double>(order[static_cast<std::size_t>(r)]);
        out(r, 1) = scores[order[static_cast<std::size_t>(r)]];
    }
    write_csv(output, {"row_index", "score"}, out);
    return 0;
}

int cmd_demo(const std::string& output, Index points, Index anomalies,
             std::uint64_t seed, double offset) {
    DemoSpec spec;
    spec.n_points = points;
    spec.n_anomalies = anomalies;
    spec.seed = seed;
    spec.anomaly_offset = offset;
    const DemoData demo = generate_demo(spec);

    DataMatrix out(demo.points.rows(), 3);
    out.leftCols(2) = demo.points;
    out.col(2).setZero();
    for (Index idx : demo.anomaly_indices) out(idx, 2) = 1.0;
    write_csv(output, {"x", "y", "is_anomaly"}, out);
    return 0;
}

int cmd_info(const std::string& model_path) {
    const FittedTransform model = load_model(model_path);
    std::cout << "version: " << model.version << '\n'
              << "n: " << model.n << '\n'
              << "m: " << model.m << '\n'
              << "lifted_dim: " << model.n + model.m << '\n'
              << "residual_norm: " << format_double(model.residual_norm)
              << '\n';
    return 0;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"Standardize multivariate data up to the third moment"};
    app.require_subcommand(1);

    std::string input, output, model_path;
    double tol = 1e-6, step = -1.0, offset = 0.0;
    Index max_iters = 5000, points = 10000, anomalies = 4;
    long long top = -1;
    std::uint64_t seed = 42;
    bool quiet = false;

    auto* fit_cmd =
        app.add_subcommand("fit", "Fit a standardization model from CSV data");
    fit_cmd->add_option("--input", input, "Input CSV")->required();
    fit_cmd->add_option("--model", model_path, "Model output path")->required();
    fit_cmd->add_option("--tol", tol, "Relative projected-norm tolerance");
    fit_cmd->add_option("--max-iters", max_iters, "Descent iteration cap");
    fit_cmd->add_option("--step", step, "Initial descent step");
    fit_cmd->add_option("--seed", seed, "RNG seed");
    fit_cmd->add_flag("--quiet", quiet, "Suppress progress lines");

    auto* transform_cmd =
        app.add_subcommand("transform", "Apply a fitted model to CSV data");
    transform_cmd->add_option("--input", input, "Input CSV")->required();
    transform_cmd->add_option("--model", model_path, "Model path")->required();
    transform_cmd->add_option("--output", output, "Output CSV")->required();

    auto* score_cmd =
        app.add_subcommand("score", "Anomaly scores, sorted descending");
    score_cmd->add_option("--input", input, "Input CSV")->required();
    score_cmd->add_option("--model", model_path, "Model path")->required();
    score_cmd->add_option("--output", output, "Output CSV")->required();
    score_cmd->add_option("--top", top, "Keep only the k highest scores");

    auto* demo_cmd =
        app.add_subcommand("demo", "Generate the triangle demo dataset");
    demo_cmd->add_option("--output", output, "Output CSV")->required();
    demo_cmd->add_option("--points", points, "Triangle points");
    demo_cmd->add_option("--anomalies", anomalies, "Anomaly count");
    demo_cmd->add_option("--seed", seed, "RNG seed");
    demo_cmd->add_option("--offset", offset,
                         "Extra anomaly displacement above the diagonal");

    auto* info_cmd = app.add_subcommand("info", "Print a model summary");
    info_cmd->add_option("--model", model_path, "Model path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    if (fit_cmd->parsed())
        return cmd_fit(input, model_path, tol, max_iters, step, seed, quiet);
    if (transform_cmd->parsed())
        return cmd_transform(input, model_path, output);
    if (score_cmd->parsed()) return cmd_score(input, model_path, output, top);
    if (demo_cmd->parsed())
        return cmd_demo(output, points, anomalies, seed, offset);
    if (info_cmd->parsed()) return cmd_info(model_path);
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const MalformedDocument& e) {
        std::cerr << "trinorm: " << e.what() << '\n';
        return 1;
    } catch (const VersionMismatch& e) {
        std::cerr << "trinorm: " << e.what() << '\n';
        return 1;
    } catch (const DimensionMismatch& e) {
        std::cerr << "trinorm: " << e.what() << '\n';
        return 2;
    } catch (const RankDeficient& e) {
        std::cerr << "trinorm: " << e.what() << '\n';
        return 2;
    } catch (const InsufficientData& e) {
        std::cerr << "trinorm: " << e.what() << '\n';
        return 2;
    } catch (const EmptyInput& e) {
        std::cerr << "trinorm: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "trinorm: " << e.what() << '\n';
        return 1;
    }
}

#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "test_util.hpp"
#include "trinorm/csv.hpp"
#include "trinorm/model_io.hpp"
#include "trinorm/pipeline.hpp"

using namespace trinorm;

namespace {

const char* cli = TRINORM_CLI_PATH;

// A small valid 2-d model on disk for the cases that only need one.
const std::string& shared_model() {
    static const std::string model_path = [] {
        Rng rng(555);
        DescentConfig cfg;
        cfg.max_iters = 400;
        const FitResult result = fit(tt::skewed_data(300, 2, rng), cfg);
        const std::string p = "/tmp/trinorm_cli_shared_model.json";
        save_model(result.model, p);
        return p;
    }();
    return model_path;
}

struct RunResult {
    int exit_code;
    std::string stdout_text;
};

RunResult run(const std::string& args) {
    const std::string out_path = "/tmp/trinorm_cli_stdout.txt";
    const std::string cmd =
        std::string(cli) + " " + args + " > " + out_path + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    std::ifstream in(out_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return {WEXITSTATUS(status), buf.str()};
}

std::string path(const char* name) {
    return std::string("/tmp/trinorm_cli_") + name;
}

void write_text(const std::string& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

std::string slurp(const std::string& p) {
    std::ifstream in(p);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("demo is deterministic and shaped as documented") {
    const std::string out1 = path("demo1.csv");
    const std::string out2 = path("demo2.csv");
    REQUIRE(run("demo --output " + out1 + " --points 500 --seed 7").exit_code ==
            0);
    REQUIRE(run("demo --output " + out2 + " --points 500 --seed 7").exit_code ==
            0);
    CHECK(slurp(out1) == slurp(out2));

    const CsvTable t = read_csv(out1);
    REQUIRE(t.header.has_value());
    CHECK((*t.header)[0] == "x");
    CHECK((*t.header)[2] == "is_anomaly");
    CHECK(t.values.rows() == 504);
    int anomalies = 0;
    for (Index r = 0; r < t.values.rows(); ++r)
        anomalies += t.values(r, 2) == 1.0;
    CHECK(anomalies == 4);

    const std::string out3 = path("demo3.csv");
    REQUIRE(run("demo --output " + out3 +
                " --points 100 --anomalies 0 --seed 3")
                .exit_code == 0);
    const CsvTable t3 = read_csv(out3);
    CHECK(t3.values.rows() == 100);
    CHECK(t3.values.col(2).cwiseAbs().maxCoeff() == 0.0);

    // defaults: 10000 triangle rows plus 4 anomalies
    const std::string out4 = path("demo4.csv");
    REQUIRE(run("demo --output " + out4).exit_code == 0);
    CHECK(read_csv(out4).values.rows() == 10004);
}

TEST_CASE("fit transform score flow on files") {
    const std::string demo_csv = path("flow_demo.csv");
    const std::string data_csv = path("flow_data.csv");
    const std::string model = path("flow_model.json");
    const std::string out_csv = path("flow_out.csv");
    const std::string score_csv = path("flow_scores.csv");

    REQUIRE(run("demo --output " + demo_csv + " --points 2000 --seed 21")
                .exit_code == 0);

    // strip the is_anomaly column for fitting
    const CsvTable demo = read_csv(demo_csv);
    write_csv(data_csv, {"x", "y"}, demo.values.leftCols(2));

    const RunResult fit_run = run("fit --input " + data_csv + " --model " +
                                  model + " --seed 4 --quiet");
    CHECK(fit_run.exit_code == 0);
    CHECK(fit_run.stdout_text.find("N=2 M=3") != std::string::npos);
    CHECK(fit_run.stdout_text.find("residual_norm=") != std::string::npos);
    CHECK(fit_run.stdout_text.find("status=Converged") != std::string::npos);

    REQUIRE(run("transform --input " + data_csv + " --model " + model +
                " --output " + out_csv)
                .exit_code == 0);
    const CsvTable out = read_csv(out_csv);
    CHECK(out.values.rows() == demo.values.rows());
    CHECK(out.values.cols() == 2);
    // external moment oracle on the transformed file
    CHECK(out.values.colwise().mean().cwiseAbs().maxCoeff() <= 1e-8);

    REQUIRE(run("score --input " + data_csv + " --model " + model +
                " --output " + score_csv)
                .exit_code == 0);
    const CsvTable scores = read_csv(score_csv);
    REQUIRE(scores.header.has_value());
    CHECK((*scores.header)[0] == "row_index");
    CHECK(scores.values.rows() == demo.values.rows());
    for (Index r = 1; r < scores.values.rows(); ++r)
        CHECK(scores.values(r, 1) <= scores.values(r - 1, 1));

    // --top truncation and the header-only k=0 case
    REQUIRE(run("score --input " + data_csv + " --model " + model +
                " --output " + score_csv + " --top 5")
                .exit_code == 0);
    CHECK(read_csv(score_csv).values.rows() == 5);
    REQUIRE(run("score --input " + data_csv + " --model " + model +
                " --output " + score_csv + " --top 0")
                .exit_code == 0);
    CHECK(read_csv(score_csv).values.rows() == 0);

    // info prints the model summary
    const RunResult info = run("info --model " + model);
    CHECK(info.exit_code == 0);
    CHECK(info.stdout_text.find("n: 2") != std::string::npos);
    CHECK(info.stdout_text.find("m: 3") != std::string::npos);
}

TEST_CASE("identical rows score identically") {
    const std::string data_csv = path("flat_data.csv");
    const std::string& model = shared_model();
    const std::string score_csv = path("flat_scores.csv");

    DataMatrix rows(6, 2);
    for (Index r = 0; r < 6; ++r) {
        rows(r, 0) = 0.25;
        rows(r, 1) = 0.5;
    }
    write_csv(data_csv, {"x", "y"}, rows);
    REQUIRE(run("score --input " + data_csv + " --model " + model +
                " --output " + score_csv)
                .exit_code == 0);
    const CsvTable scores = read_csv(score_csv);
    REQUIRE(scores.values.rows() == 6);
    for (Index r = 1; r < 6; ++r)
        CHECK(scores.values(r, 1) == scores.values(0, 1));
}

TEST_CASE("error exit codes") {
    const std::string bad_csv = path("bad.csv");
    const std::string model = path("err_model.json");

    write_text(bad_csv, "x,y\n1,2\n3,oops\n");
    CHECK(run("fit --input " + bad_csv + " --model " + model).exit_code == 1);

    // 20 x 5 is under the fit guard
    const std::string small_csv = path("small.csv");
    {
        Rng rng(77);
        write_csv(small_csv, {"a", "b", "c", "d", "e"},
                  tt::gaussian_data(20, 5, rng));
    }
    CHECK(run("fit --input " + small_csv + " --model " + model).exit_code == 2);

    // dimension mismatch against a 2-d model
    const std::string wide_csv = path("wide.csv");
    {
        Rng rng(78);
        write_csv(wide_csv, {"a", "b", "c"}, tt::gaussian_data(10, 3, rng));
    }
    const std::string& good_model = shared_model();
    CHECK(run("transform --input " + wide_csv + " --model " + good_model +
              " --output /tmp/trinorm_cli_x.csv")
              .exit_code == 2);

    CHECK(run("demo --output /nonexistent/dir/demo.csv").exit_code == 1);
    CHECK(run("info --model /nonexistent/model.json").exit_code == 1);
    CHECK(run("frobnicate --input x").exit_code == 1);
}

TEST_CASE("header-only transform input produces an empty output") {
    const std::string empty_csv = path("empty.csv");
    const std::string& model = shared_model();
    const std::string out_csv = path("empty_out.csv");
    write_text(empty_csv, "x,y\n");
    CHECK(run("transform --input " + empty_csv + " --model " + model +
              " --output " + out_csv)
              .exit_code == 0);
    const CsvTable out = read_csv(out_csv);
    CHECK(out.values.rows() == 0);
    CHECK(out.values.cols() == 2);
}

} // TEST_SUITE

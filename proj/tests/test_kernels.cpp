#include <doctest.h>

#include <vector>

#include "test_util.hpp"
#include "trinorm/kernels.hpp"

using namespace trinorm;
namespace tk = trinorm::kernels;

namespace {

struct Buffers {
    std::vector<double> sums, cov, third, scratch;
    explicit Buffers(Index P, Index D)
        : sums(static_cast<std::size_t>(D), 0.0),
          cov(static_cast<std::size_t>(D * (D + 1) / 2), 0.0),
          third(static_cast<std::size_t>(D * (D + 1) * (D + 2) / 6), 0.0),
          scratch(static_cast<std::size_t>(P), 0.0) {}
};

void run_set(const tk::KernelSet& set, const DataMatrix& X, const Vector& mean,
             Buffers& buf, Index p0, Index p1) {
    const Index P = X.rows(), D = X.cols();
    set.col_sums(X.data(), P, D, p0, p1, buf.sums.data());
    set.cov_accum(X.data(), P, D, p0, p1, mean.data(), buf.cov.data());
    set.third_accum(X.data(), P, D, p0, p1, buf.scratch.data(),
                    buf.third.data());
}

void check_close(const std::vector<double>& a, const std::vector<double>& b,
                 double rel) {
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double scale = std::max({1.0, std::abs(a[i]), std::abs(b[i])});
        CHECK(std::abs(a[i] - b[i]) / scale <= rel);
    }
}

} // namespace

TEST_SUITE("kernels") {

TEST_CASE("scalar vs avx2 equivalence") {
    const tk::KernelSet* avx2 = tk::avx2_kernels();
    if (!avx2) {
        MESSAGE("AVX2 kernels unavailable on this host; skipping");
        return;
    }
    Rng rng(101);
    for (Index D : {1, 2, 5, 9}) {
        // 1027 is deliberately not a multiple of the vector width
        const Index P = 1027;
        const DataMatrix X = tt::skewed_data(P, D, rng);
        const Vector mean = X.colwise().mean();

        Buffers scalar_buf(P, D), avx_buf(P, D);
        run_set(tk::scalar_kernels(), X, mean, scalar_buf, 0, P);
        run_set(*avx2, X, mean, avx_buf, 0, P);

        check_close(scalar_buf.sums, avx_buf.sums, 1e-11);
        check_close(scalar_buf.cov, avx_buf.cov, 1e-11);
        check_close(scalar_buf.third, avx_buf.third, 1e-11);
    }
}

TEST_CASE("split ranges accumulate to the full range") {
    Rng rng(102);
    const Index P = 513, D = 4;
    const DataMatrix X = tt::skewed_data(P, D, rng);
    const Vector mean = X.colwise().mean();

    for (const tk::KernelSet* set :
         {&tk::scalar_kernels(), tk::avx2_kernels()}) {
        if (!set) continue;
        Buffers whole(P, D), parts(P, D);
        run_set(*set, X, mean, whole, 0, P);
        run_set(*set, X, mean, parts, 0, 200);
        run_set(*set, X, mean, parts, 200, P);
        check_close(whole.sums, parts.sums, 1e-13);
        check_close(whole.cov, parts.cov, 1e-13);
        check_close(whole.third, parts.third, 1e-13);
    }
}

TEST_CASE("third_accum packed order matches SymTensor3 layout") {
    Rng rng(103);
    const Index P = 64, D = 4;
    const DataMatrix X = tt::gaussian_data(P, D, rng);
    Buffers buf(P, D);
    tk::scalar_kernels().third_accum(X.data(), P, D, 0, P, buf.scratch.data(),
                                     buf.third.data());
    SymTensor3 q(D);
    q.for_each_packed([&](Index i, Index j, Index k, double& v) {
        v = buf.third[static_cast<std::size_t>(q.packed_index(i, j, k))];
        double s = 0.0;
        for (Index p = 0; p < P; ++p) s += X(p, i) * X(p, j) * X(p, k);
        CHECK(v == doctest::Approx(s).epsilon(1e-12));
    });
}

TEST_CASE("active kernel set is resolved") {
    const tk::KernelSet& set = tk::active_kernels();
    CHECK(set.name != nullptr);
    CHECK(set.col_sums != nullptr);
    CHECK(set.cov_accum != nullptr);
    CHECK(set.third_accum != nullptr);
}

} // TEST_SUITE

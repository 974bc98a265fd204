#include "trinorm/kernels.hpp"

namespace trinorm::kernels {
namespace {

using std::ptrdiff_t;

void col_sums_scalar(const double* data, ptrdiff_t P, ptrdiff_t D,
                     ptrdiff_t p0, ptrdiff_t p1, double* out) {
    for (ptrdiff_t j = 0; j < D; ++j) {
        const double* col = data + j * P;
        double s = 0.0;
        for (ptrdiff_t p = p0; p < p1; ++p) s += col[p];
        out[j] += s;
    }
}

void cov_accum_scalar(const double* data, ptrdiff_t P, ptrdiff_t D,
                      ptrdiff_t p0, ptrdiff_t p1, const double* mean,
                      double* out) {
    ptrdiff_t c = 0;
    for (ptrdiff_t i = 0; i < D; ++i) {
        const double* ci = data + i * P;
        const double mi = mean[i];
        for (ptrdiff_t j = i; j < D; ++j) {
            const double* cj = data + j * P;
            const double mj = mean[j];
            double s = 0.0;
            for (ptrdiff_t p = p0; p < p1; ++p)
                s += (ci[p] - mi) * (cj[p] - mj);
            out[c++] += s;
        }
    }
}

void third_accum_scalar(const double* data, ptrdiff_t P, ptrdiff_t D,
                        ptrdiff_t p0, ptrdiff_t p1, double* scratch,
                        double* out) {
    const ptrdiff_t len = p1 - p0;
    ptrdiff_t c = 0;
    for (ptrdiff_t i = 0; i < D; ++i) {
        const double* ci = data + i * P + p0;
        for (ptrdiff_t j = i; j < D; ++j) {
            const double* cj = data + j * P + p0;
            for (ptrdiff_t p = 0; p < len; ++p) scratch[p] = ci[p] * cj[p];
            for (ptrdiff_t k = j; k < D; ++k) {
                const double* ck = data + k * P + p0;
                double s = 0.0;
                for (ptrdiff_t p = 0; p < len; ++p) s += scratch[p] * ck[p];
                out[c++] += s;
            }
        }
    }
}

} // namespace

const KernelSet& scalar_kernels() {
    static const KernelSet set{"scalar", col_sums_scalar, cov_accum_scalar,
                               third_accum_scalar};
    return set;
}

} // namespace trinorm::kernels

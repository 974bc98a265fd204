// AVX2+FMA variants of the accumulation kernels. This translation unit is
// compiled with -mavx2 -mfma; the dispatcher only hands these out after a
// runtime cpuid check.

#include "trinorm/kernels.hpp"

#ifdef TRINORM_HAVE_AVX2

#include <immintrin.h>

namespace trinorm::kernels {
namespace {

using std::ptrdiff_t;

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d s2 = _mm_add_pd(lo, hi);
    __m128d s1 = _mm_add_sd(s2, _mm_unpackhi_pd(s2, s2));
    return _mm_cvtsd_f64(s1);
}

void col_sums_avx2(const double* data, ptrdiff_t P, ptrdiff_t D,
                   ptrdiff_t p0, ptrdiff_t p1, double* out) {
    const ptrdiff_t len = p1 - p0;
    const ptrdiff_t vend = len - (len % 4);
    for (ptrdiff_t j = 0; j < D; ++j) {
        const double* col = data + j * P + p0;
        __m256d acc = _mm256_setzero_pd();
        for (ptrdiff_t p = 0; p < vend; p += 4)
            acc = _mm256_add_pd(acc, _mm256_loadu_pd(col + p));
        double s = hsum(acc);
        for (ptrdiff_t p = vend; p < len; ++p) s += col[p];
        out[j] += s;
    }
}

void cov_accum_avx2(const double* data, ptrdiff_t P, ptrdiff_t D,
                    ptrdiff_t p0, ptrdiff_t p1, const double* mean,
                    double* out) {
    const ptrdiff_t len = p1 - p0;
    const ptrdiff_t vend = len - (len % 4);
    ptrdiff_t c = 0;
    for (ptrdiff_t i = 0; i < D; ++i) {
        const double* ci = data + i * P + p0;
        const __m256d mi = _mm256_set1_pd(mean[i]);
        for (ptrdiff_t j = i; j < D; ++j) {
            const double* cj = data + j * P + p0;
            const __m256d mj = _mm256_set1_pd(mean[j]);
            __m256d acc = _mm256_setzero_pd();
            for (ptrdiff_t p = 0; p < vend; p += 4) {
                __m256d a = _mm256_sub_pd(_mm256_loadu_pd(ci + p), mi);
                __m256d b = _mm256_sub_pd(_mm256_loadu_pd(cj + p), mj);
                acc = _mm256_fmadd_pd(a, b, acc);
            }
            double s = hsum(acc);
            for (ptrdiff_t p = vend; p < len; ++p)
                s += (ci[p] - mean[i]) * (cj[p] - mean[j]);
            out[c++] += s;
        }
    }
}

void third_accum_avx2(const double* data, ptrdiff_t P, ptrdiff_t D,
                      ptrdiff_t p0, ptrdiff_t p1, double* scratch,
                      double* out) {
    const ptrdiff_t len = p1 - p0;
    const ptrdiff_t vend = len - (len % 4);
    ptrdiff_t c = 0;
    for (ptrdiff_t i = 0; i < D; ++i) {
        const double* ci = data + i * P + p0;
        for (ptrdiff_t j = i; j < D; ++j) {
            const double* cj = data + j * P + p0;
            for (ptrdiff_t p = 0; p < vend; p += 4)
                _mm256_storeu_pd(scratch + p,
                                 _mm256_mul_pd(_mm256_loadu_pd(ci + p),
                                               _mm256_loadu_pd(cj + p)));
            for (ptrdiff_t p = vend; p < len; ++p) scratch[p] = ci[p] * cj[p];
            for (ptrdiff_t k = j; k < D; ++k) {
                const double* ck = data + k * P + p0;
                __m256d acc = _mm256_setzero_pd();
                for (ptrdiff_t p = 0; p < vend; p += 4)
                    acc = _mm256_fmadd_pd(_mm256_loadu_pd(scratch + p),
                                          _mm256_loadu_pd(ck + p), acc);
                double s = hsum(acc);
                for (ptrdiff_t p = vend; p < len; ++p) s += scratch[p] * ck[p];
                out[c++] += s;
            }
        }
    }
}

} // namespace

const KernelSet* avx2_kernels_impl() {
    static const KernelSet set{"avx2", col_sums_avx2, cov_accum_avx2,
                               third_accum_avx2};
    return &set;
}

} // namespace trinorm::kernels

#endif // TRINORM_HAVE_AVX2

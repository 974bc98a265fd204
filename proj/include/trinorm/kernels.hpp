#pragma once

#include <cstddef>

namespace trinorm::kernels {

// Low-level accumulation kernels over a contiguous range of points
// [p0, p1) of a column-major P x D array (column j starts at data + j*P).
// All kernels ADD into `out`; callers zero the buffers and divide by P.
//
// Two implementations exist: a scalar reference and an AVX2+FMA variant.
// active() picks one at runtime (cpuid, overridable via the
// TRINORM_KERNELS environment variable: "scalar" or "avx2").

struct KernelSet {
    const char* name;

    // out[j] += sum_p x(p,j)                                   (D values)
    void (*col_sums)(const double* data, std::ptrdiff_t P, std::ptrdiff_t D,
                     std::ptrdiff_t p0, std::ptrdiff_t p1, double* out);

    // out[tri(i,j)] += sum_p (x(p,i)-mean[i])*(x(p,j)-mean[j]) for i <= j,
    // tri(i,j) indexing the packed upper triangle row by row
    // (D*(D+1)/2 values).
    void (*cov_accum)(const double* data, std::ptrdiff_t P, std::ptrdiff_t D,
                      std::ptrdiff_t p0, std::ptrdiff_t p1,
                      const double* mean, double* out);

    // out[c] += sum_p x(p,i)*x(p,j)*x(p,k) for i <= j <= k in lexicographic
    // order with k innermost (D*(D+1)*(D+2)/6 values, matching the
    // SymTensor3 packed layout). `scratch` must hold p1-p0 doubles.
    void (*third_accum)(const double* data, std::ptrdiff_t P, std::ptrdiff_t D,
                        std::ptrdiff_t p0, std::ptrdiff_t p1,
                        double* scratch, double* out);
};

const KernelSet& scalar_kernels();

// nullptr when the CPU (or the build) lacks AVX2/FMA.
const KernelSet* avx2_kernels();

// The runtime-selected set. Resolved once on first use.
const KernelSet& active_kernels();

} // namespace trinorm::kernels

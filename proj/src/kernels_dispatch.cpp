#include "trinorm/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace trinorm::kernels {

#ifdef TRINORM_HAVE_AVX2
const KernelSet* avx2_kernels_impl();
#endif

const KernelSet* avx2_kernels() {
#ifdef TRINORM_HAVE_AVX2
#if defined(__GNUC__) || defined(__clang__)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
        return avx2_kernels_impl();
#endif
#endif
    return nullptr;
}

namespace {

const KernelSet& resolve() {
    if (const char* env = std::getenv("TRINORM_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0) return scalar_kernels();
        if (std::strcmp(env, "avx2") == 0 && avx2_kernels())
            return *avx2_kernels();
    }
    if (const KernelSet* v = avx2_kernels()) return *v;
    return scalar_kernels();
}

} // namespace

const KernelSet& active_kernels() {
    static const KernelSet& set = resolve();
    return set;
}

} // namespace trinorm::kernels

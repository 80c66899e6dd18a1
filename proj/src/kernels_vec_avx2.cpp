// AVX2+FMA build of the batched kernels.  This TU is compiled with
// -mavx2 -mfma (see CMakeLists.txt) and must only be reached through the
// runtime dispatcher after a CPU feature check.

#if defined(PCBAND_HAVE_AVX2_TU)

#define PCBAND_KERNEL_NS vec_avx2_impl
#define PCBAND_EXPORT_NS vec_avx2

#include "kernels_vec_impl.inl"

#endif  // PCBAND_HAVE_AVX2_TU

// Baseline vector build of the batched kernels (no extended ISA flags; the
// compiler emits whatever the default target supports, e.g. SSE2 on x86-64
// or NEON on aarch64).

#define PCBAND_KERNEL_NS vec_base_impl
#define PCBAND_EXPORT_NS vec_base

#include "kernels_vec_impl.inl"

// Vector instantiation of the batched kernels over 4-wide double SIMD.
//
// Included by a wrapper TU that defines PCBAND_KERNEL_NS (the namespace the
// instantiation lives in) and PCBAND_EXPORT_NS (the namespace the exported
// entry points live in).  The same body is compiled once with baseline
// codegen flags and once per extended ISA the build enables; runtime
// dispatch picks among them.

#include <cmath>
#include <experimental/simd>

#include "pcband/kernels.hpp"

namespace pcband::kernels {
namespace PCBAND_KERNEL_NS {

namespace stdx = std::experimental;
using vdouble = stdx::fixed_size_simd<double, 4>;
using vmask = typename vdouble::mask_type;

inline vmask lane_gt_abs(const vdouble& r, const vdouble& v) {
  vdouble a = r;
  where(a < 0.0, a) = -a;
  return a > v;
}

inline vdouble lane_copysign_pi(const vdouble& r) {
  vdouble p(M_PI);
  where(r < 0.0, p) = -p;
  return p;
}

inline vdouble lane_select(const vmask& m, const vdouble& a,
                           const vdouble& b) {
  vdouble out = b;
  where(m, out) = a;
  return out;
}

inline vdouble lane_sqrt(const vdouble& x) { return stdx::sqrt(x); }

}  // namespace PCBAND_KERNEL_NS
}  // namespace pcband::kernels

#include "kernels_common.inl"

namespace pcband::kernels::PCBAND_EXPORT_NS {

namespace stdx = std::experimental;
using PCBAND_KERNEL_NS::vdouble;

void monodromy4(const MonodromyTables& t, const double k0[4], bool tm,
                double cos_out[4], double det_out[4]) {
  vdouble k0v, cv, dv;
  k0v.copy_from(k0, stdx::element_aligned);
  PCBAND_KERNEL_NS::lane_monodromy<vdouble>(t, k0v, tm, cv, dv);
  cv.copy_to(cos_out, stdx::element_aligned);
  dv.copy_to(det_out, stdx::element_aligned);
}

void stratified4(const double* n, const double* X, int layers, double x_start,
                 double period_L, double n_eff, bool tm, const double k0[4],
                 double cos_out[4]) {
  vdouble k0v, cv;
  k0v.copy_from(k0, stdx::element_aligned);
  PCBAND_KERNEL_NS::lane_stratified<vdouble>(n, X, layers, x_start, period_L,
                                             n_eff, tm, k0v, cv);
  cv.copy_to(cos_out, stdx::element_aligned);
}

void sincos4(const double x[4], double s[4], double c[4]) {
  vdouble xv, sv, cv;
  xv.copy_from(x, stdx::element_aligned);
  PCBAND_KERNEL_NS::lane_sincos<vdouble>(xv, sv, cv);
  sv.copy_to(s, stdx::element_aligned);
  cv.copy_to(c, stdx::element_aligned);
}

}  // namespace pcband::kernels::PCBAND_EXPORT_NS

// Scalar reference implementations of the frequency-batched kernels.
// These are the trusted baselines: plain double arithmetic, libm sin/cos,
// one lane at a time.  The vector variants are equivalence-tested against
// them.

#include <cmath>

#include "pcband/kernels.hpp"

#define PCBAND_KERNEL_NS scalar_impl

namespace pcband::kernels {
namespace scalar_impl {

inline bool lane_gt_abs(double r, double v) { return std::abs(r) > v; }
inline double lane_copysign_pi(double r) { return std::copysign(M_PI, r); }
inline double lane_select(bool m, double a, double b) { return m ? a : b; }
inline double lane_sqrt(double x) { return std::sqrt(x); }
// Non-template overload: the scalar reference uses libm directly and wins
// overload resolution against the shared polynomial template.
inline void lane_sincos(const double& x, double& s, double& c) {
  s = std::sin(x);
  c = std::cos(x);
}

}  // namespace scalar_impl
}  // namespace pcband::kernels

#include "kernels_common.inl"

namespace pcband::kernels::scalar_ref {

void monodromy4(const MonodromyTables& t, const double k0[4], bool tm,
                double cos_out[4], double det_out[4]) {
  for (int l = 0; l < 4; ++l) {
    scalar_impl::lane_monodromy<double>(t, k0[l], tm, cos_out[l], det_out[l]);
  }
}

void stratified4(const double* n, const double* X, int layers, double x_start,
                 double period_L, double n_eff, bool tm, const double k0[4],
                 double cos_out[4]) {
  for (int l = 0; l < 4; ++l) {
    scalar_impl::lane_stratified<double>(n, X, layers, x_start, period_L,
                                         n_eff, tm, k0[l], cos_out[l]);
  }
}

void sincos4(const double x[4], double s[4], double c[4]) {
  for (int l = 0; l < 4; ++l) {
    s[l] = std::sin(x[l]);
    c[l] = std::cos(x[l]);
  }
}

}  // namespace pcband::kernels::scalar_ref

// Runtime dispatch between the scalar reference kernels and the vector
// builds.  Selection order for Impl::Auto: widest ISA the CPU supports,
// falling back to the baseline vector build and finally the scalar
// reference.  The PCBAND_SIMD environment variable overrides selection
// ("scalar", "base", "avx2", "auto").

#include <cstdlib>
#include <cstring>
#include <string>

#include "pcband/kernels.hpp"

namespace pcband::kernels {

namespace scalar_ref {
void monodromy4(const MonodromyTables&, const double[4], bool, double[4],
                double[4]);
void stratified4(const double*, const double*, int, double, double, double,
                 bool, const double[4], double[4]);
void sincos4(const double[4], double[4], double[4]);
}  // namespace scalar_ref

namespace vec_base {
void monodromy4(const MonodromyTables&, const double[4], bool, double[4],
                double[4]);
void stratified4(const double*, const double*, int, double, double, double,
                 bool, const double[4], double[4]);
void sincos4(const double[4], double[4], double[4]);
}  // namespace vec_base

#if defined(PCBAND_HAVE_AVX2_TU)
namespace vec_avx2 {
void monodromy4(const MonodromyTables&, const double[4], bool, double[4],
                double[4]);
void stratified4(const double*, const double*, int, double, double, double,
                 bool, const double[4], double[4]);
void sincos4(const double[4], double[4], double[4]);
}  // namespace vec_avx2
#endif

const char* impl_name(Impl impl) {
  switch (impl) {
    case Impl::Scalar:
      return "scalar";
    case Impl::VecBase:
      return "vec-base";
    case Impl::VecAvx2:
      return "vec-avx2";
  }
  return "unknown";
}

namespace {

bool avx2_usable() {
#if defined(PCBAND_HAVE_AVX2_TU) && defined(__x86_64__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Dispatch make_dispatch(Impl impl) {
  Dispatch d;
  d.impl = impl;
  switch (impl) {
    case Impl::Scalar:
      d.monodromy4 = &scalar_ref::monodromy4;
      d.stratified4 = &scalar_ref::stratified4;
      d.sincos4 = &scalar_ref::sincos4;
      break;
    case Impl::VecBase:
      d.monodromy4 = &vec_base::monodromy4;
      d.stratified4 = &vec_base::stratified4;
      d.sincos4 = &vec_base::sincos4;
      break;
    case Impl::VecAvx2:
#if defined(PCBAND_HAVE_AVX2_TU)
      d.monodromy4 = &vec_avx2::monodromy4;
      d.stratified4 = &vec_avx2::stratified4;
      d.sincos4 = &vec_avx2::sincos4;
      break;
#else
      d.impl = Impl::VecBase;
      d.monodromy4 = &vec_base::monodromy4;
      d.stratified4 = &vec_base::stratified4;
      d.sincos4 = &vec_base::sincos4;
      break;
#endif
  }
  return d;
}

Impl widest_available() {
  if (avx2_usable()) return Impl::VecAvx2;
  return Impl::VecBase;
}

Impl resolve_env() {
  const char* env = std::getenv("PCBAND_SIMD");
  if (env == nullptr || std::strlen(env) == 0) return widest_available();
  const std::string v(env);
  if (v == "scalar") return Impl::Scalar;
  if (v == "base") return Impl::VecBase;
  if (v == "avx2" && avx2_usable()) return Impl::VecAvx2;
  if (v == "avx2") return widest_available();
  return widest_available();  // "auto" and anything unrecognised
}

}  // namespace

std::vector<Impl> available() {
  std::vector<Impl> out{Impl::Scalar, Impl::VecBase};
  if (avx2_usable()) out.push_back(Impl::VecAvx2);
  return out;
}

const Dispatch& get(Impl impl) {
  static const Dispatch scalar = make_dispatch(Impl::Scalar);
  static const Dispatch base = make_dispatch(Impl::VecBase);
  static const Dispatch avx2 = make_dispatch(Impl::VecAvx2);
  if (impl == Impl::VecAvx2 && !avx2_usable()) impl = Impl::VecBase;
  switch (impl) {
    case Impl::Scalar:
      return scalar;
    case Impl::VecAvx2:
      return avx2;
    case Impl::VecBase:
    default:
      return base;
  }
}

const Dispatch& active() {
  static const Dispatch d = make_dispatch(resolve_env());
  return d;
}

}  // namespace pcband::kernels

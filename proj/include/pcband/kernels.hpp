#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace pcband::kernels {

// Frequency-batched numeric kernels.  The hot sweeps of this library
// (monodromy oracle grids, stratified band scans, staircase limits) are
// embarrassingly parallel across frequency samples, so the kernels process
// four free-space wavenumbers per call.  Every kernel exists as a plain
// scalar reference implementation and as std::experimental::simd variants
// (baseline SSE2/NEON build plus an AVX2+FMA build on x86-64), selected at
// runtime and cross-checked by equivalence tests.
enum class Impl { Scalar, VecBase, VecAvx2 };

const char* impl_name(Impl impl);

// Sampled tables for the one-period monodromy ODE integration
//   A'' = c(x) A' - k0^2 g(x) A,   g = n^2 - n_eff^2,  c = 2 n'/n (TM only).
// One Piece per smooth region; grids hold 2*steps+1 nodes (RK4 midpoints
// included).  `r_tm` is the TM derivative-continuity factor (n+/n-)^2 of
// the interface that FOLLOWS the piece (1.0 at the period seam when the
// profile is continuous there); TE applies no factor.
struct MonodromyTables {
  struct Piece {
    long steps = 0;
    double h = 0.0;
    std::vector<double> g;
    std::vector<double> c;
    double r_tm = 1.0;
  };
  std::vector<Piece> pieces;
};

// Floquet discriminant cos(kappa*L) = tr(W)/2 for four frequencies; also
// reports det(W) per lane (Wronskian check; 1 for a closed period).
using monodromy4_fn = void (*)(const MonodromyTables& tables,
                               const double k0[4], bool tm, double cos_out[4],
                               double det_out[4]);

// Stratified one-period discriminant for four frequencies: the ordered
// product of interface jump matrices (layer j -> j+1 at position X[j],
// wrapping from the last layer back to the first), then
// Re{q11 * exp(-i k_first L)}.  Requires real wavenumbers in every layer.
using stratified4_fn = void (*)(const double* n, const double* X, int layers,
                                double x_start, double period_L, double n_eff,
                                bool tm, const double k0[4], double cos_out[4]);

// Four sine/cosine pairs (building block of the vector paths; exposed for
// equivalence testing).
using sincos4_fn = void (*)(const double x[4], double s[4], double c[4]);

struct Dispatch {
  Impl impl;
  monodromy4_fn monodromy4;
  stratified4_fn stratified4;
  sincos4_fn sincos4;
};

// Implementations compiled into this binary and usable on this host.
std::vector<Impl> available();

// Selected implementation: honors PCBAND_SIMD (scalar|base|avx2|auto),
// otherwise the widest available.  Resolved once per process.
const Dispatch& active();

// A specific implementation (must be one of available()).
const Dispatch& get(Impl impl);

}  // namespace pcband::kernels

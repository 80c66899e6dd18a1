#pragma once

#include "pcband/mat2.hpp"
#include "pcband/profile.hpp"

namespace pcband {

// Everything needed to evaluate the differential coefficient matrices at
// one frequency: the medium, the incidence geometry, the free-space
// wavenumber and the polarization.  Immutable; cheap to copy; safe to use
// from several threads at once.
struct TransferContext {
  const Profile* profile = nullptr;
  IncidenceConfig inc;
  double k0 = 0.0;
  Polarization pol = Polarization::TE;

  static TransferContext make(const Profile& p, const IncidenceConfig& inc,
                              double k0, Polarization pol);

  // Local complex wavenumber k(x) = k0*sqrt(n(x)^2 - n_eff^2).
  cdouble k(double x) const;
};

// The integrated coefficient matrix M over [a, b] (N for TM), i.e. the
// exponent of the transfer matrix Q_{a->b} = exp(m).
struct IntervalMatrix {
  Mat2c m;
  double a = 0.0;
  double b = 0.0;
  Polarization pol = Polarization::TE;
};

// TE differential coefficient matrix U(x):
//   (k'/2k) * [[-1 + j2kx, e^{+j2kx}], [e^{-j2kx}, -1 - j2kx]]
// with k' = k0^2 * n * n' / k (chain rule; never finite-differenced).  The
// position x enters the phases literally (relative to the origin), not
// wrapped, so intervals may sit anywhere on the axis.
Mat2c u_matrix(const TransferContext& ctx, double x);

// TM counterpart V(x): v11 = -k'/2k + n'/n + jk'x, v22 its x-odd mirror,
// v12 = (k'/2k - n'/n)e^{+j2kx}, v21 = (k'/2k - n'/n)e^{-j2kx}.  At normal
// incidence (n_eff = 0) this collapses to the TE form with k' -> -k'.
Mat2c v_matrix(const TransferContext& ctx, double x);

// Entrywise adaptive quadrature of U (or V) over [a, b]: absolute
// tolerance 1e-10 per entry, panel density keyed to the local oscillation
// phase 2k(x)x, kinks made exact panel boundaries.  Orientation matters:
// a > b yields the negated matrix.  Refuses intervals with a profile jump
// strictly inside (splice jump matrices from the stratified module
// instead) and intervals passing within 1e-8*k0 of a wavenumber cutoff.
IntervalMatrix interval_matrix(const TransferContext& ctx, double a, double b);

// Q_{a->b} = exp(M_{a->b}); uses the closed traceless form when the trace
// vanishes within tolerance, the scaling-and-squaring series otherwise.
Mat2c transfer_matrix(const TransferContext& ctx, double a, double b);

// Composition under the additive-exponent rule: Q_{a->c} is the
// exponential of M_{b->c} + M_{a->b}.  The two intervals must share the
// middle endpoint and the polarization.
Mat2c compose_transfer(const IntervalMatrix& ab, const IntervalMatrix& bc);

// Reusable k0-independent piece of the symmetric-path diagonal.  The
// diagonal of the symmetric-window M is m11 = j*k0*base with
// base = L*(s(L/2) - s_mean), s(x) = sqrt(n(x)^2 - n_eff^2), so it is
// computed once per (profile, incidence) and rescaled linearly in k0.
// One cache per thread (or per scan) — never shared mutably across
// threads; passing nullptr recomputes from scratch every call.
struct SymmetricDiagCache {
  const Profile* profile = nullptr;
  double n_eff = 0.0;
  double base = 0.0;
  bool valid = false;
};

// The symmetric-window interval matrix over [-L/2, L/2] for an even
// profile with real k everywhere (TE):
//   m11 = -m22 = jL(k(L/2) - kbar)
//   m12 = -m21 = j * integral_0^{L/2} sin(2k(x)x) * (k'/k) dx
// Index discontinuities contribute midpoint-rule jump terms
// sin((k_- + k_+)X) * ln(k_+/k_-) to the m12 integral; these keep the
// structural properties (purely imaginary, traceless) exact, but for
// strongly discontinuous media the stratified pathway is the accurate
// route.  Throws precondition_error for asymmetric profiles, for complex
// k (use interval_matrix), or for TM contexts.
IntervalMatrix m_symmetric(const TransferContext& ctx,
                           SymmetricDiagCache* cache = nullptr);

// TM variant: same diagonal, m12 integrand sin(2k(x)x)(k'/k - 2n'/n),
// jump terms with ln(k_+/k_-) - 2 ln(n_+/n_-).
IntervalMatrix m_symmetric_tm(const TransferContext& ctx,
                              SymmetricDiagCache* cache = nullptr);

// The m12 entry evaluated in the k variable instead of x:
//   j * integral_{k(0)}^{k(L/2)} sin(2 x(k) k) / k dk
// with x(k) the numerically inverted (bisection to 1e-12*L) wavenumber,
// which must be strictly monotonic on [0, L/2] (checked on 256 samples).
// A constant-k profile has an empty k-range and returns 0.  TE only.
cdouble m12_by_substitution(const TransferContext& ctx);

// Bundle used by the dispersion evaluation at one frequency: the interval
// matrix of the matching polarization plus the closed-form discriminant
// scalars.  With a caller-held cache the diagonal quadrature runs once
// per (profile, incidence); without it, once per call.
struct SymmetricParts {
  IntervalMatrix m;
  double u = 0.0;      // k(L/2) * L
  double kbar_L = 0.0; // kbar * L
};
SymmetricParts symmetric_parts(const TransferContext& ctx,
                               SymmetricDiagCache* cache = nullptr);

}  // namespace pcband

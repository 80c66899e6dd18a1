#pragma once

#include "pcband/dtmm.hpp"

namespace pcband {

// Classification of one frequency sample.  Allowed carries the reduced
// Bloch phase in [0, pi]; Forbidden carries the per-period decay constant
// xi = arccosh|c| and the parity of the gap family (0: kappa*L at even
// multiples of pi, c > 1; 1: odd multiples, c < -1); Edge marks |c| = 1
// within 1e-12 with the same parity convention.
struct BandState {
  enum class Kind { Allowed, Edge, Forbidden };
  Kind kind = Kind::Allowed;
  double kappa_L = 0.0;
  int parity = 0;
  double xi = 0.0;
};

// Bloch dispersion from a one-period transfer matrix with reference point
// x: (q11/2) e^{-j k_ref L} + (q22/2) e^{+j k_ref L}.
cdouble bloch_cos_general(cdouble q11, cdouble q22, cdouble k_ref, double L);

// Closed symmetric-path dispersion from the traceless purely-imaginary
// interval matrix m: cosh(l)cos(u) + (u - kbar_L) sinhc(l) sin(u) with
// l^2 = m11^2 + m12 m21 (either root; the expression is even in l).
// Verifies the structural preconditions on m and that the result is real
// to 1e-10, returning the real part.
double bloch_cos_symmetric(const IntervalMatrix& m, double u, double kbar_L);

// Stratified dispersion from the one-period product: Re{q11 e^{-j k1 L}},
// k1 the (real) wavenumber of the leftmost layer in the period window.
double bloch_cos_stratified(cdouble q11, double k1, double L);

// State from c = cos(kappa*L): |c| < 1 allowed (principal arccos);
// |c| - 1 within 1e-12 of zero is a band edge; beyond that, forbidden with
// xi = arccosh|c|.  Throws on non-finite input.
BandState classify(double c);

struct DispersionSample {
  double omega_norm = 0.0;
  double cos_kl = 0.0;
  BandState state;
};

}  // namespace pcband

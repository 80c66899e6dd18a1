// Shared kernel bodies, templated on the lane arithmetic.  Included by the
// scalar reference TU (Lane = double) and by the std::experimental::simd
// TUs (Lane = fixed_size_simd<double, 4>).  Keeping one body guarantees the
// implementations stay algorithmically identical; the equivalence tests
// then only probe floating-point reassociation differences (FMA, vector
// math) which must stay below 1e-13.
//
// Expected definitions before inclusion:
//   PCBAND_KERNEL_NS  - namespace name for this instantiation

#include <cmath>

#include "pcband/kernels.hpp"

namespace pcband::kernels {
namespace PCBAND_KERNEL_NS {

// ---------------------------------------------------------------- sin/cos
// Argument reduction by whole turns (Cody-Waite three-part 2*pi), then a
// single fold onto [-pi/2, pi/2] and Taylor polynomials of degree 19 (sin)
// and 20 (cos).  Absolute error stays below ~3e-16 for |x| up to ~1e6,
// far inside the |x| < 100 range the dispersion kernels produce.
inline constexpr double kTwoPiHi = 6.28318530321121216e+00;
inline constexpr double kTwoPiMid = 3.96837431665408857e-09;
inline constexpr double kTwoPiLo = 2.06807319271764205e-18;
inline constexpr double kInvTwoPi = 1.59154943091895346e-01;
inline constexpr double kPi = 3.14159265358979312e+00;
inline constexpr double kHalfPi = 1.57079632679489656e+00;
inline constexpr double kRoundMagic = 6755399441055744.0; // 1.5 * 2^52

inline constexpr double kSinCoef[] = {
    // 1/3!, 1/5!, ... 1/19! (alternating signs applied in Horner form)
    1.6666666666666666e-01, 8.3333333333333332e-03, 1.9841269841269841e-04,
    2.7557319223985893e-06, 2.5052108385441719e-08, 1.6059043836821615e-10,
    7.6471637318198164e-13, 2.8114572543455206e-15, 8.2206352466243295e-18,
};
inline constexpr double kCosCoef[] = {
    // 1/2!, 1/4!, ... 1/20!
    5.0000000000000000e-01, 4.1666666666666664e-02, 1.3888888888888889e-03,
    2.4801587301587302e-05, 2.7557319223985888e-07, 2.0876756987868099e-09,
    1.1470745597729725e-11, 4.7794773323873853e-14, 1.5619206968586225e-16,
    4.1103176233121648e-19,
};

template <class Lane>
inline void lane_sincos(const Lane& x, Lane& s_out, Lane& c_out) {
  // Nearest-integer turn count via the round-to-even magic constant.
  const Lane q = (x * Lane(kInvTwoPi) + Lane(kRoundMagic)) - Lane(kRoundMagic);
  Lane r = x - q * Lane(kTwoPiHi);
  r = r - q * Lane(kTwoPiMid);
  r = r - q * Lane(kTwoPiLo); // r in [-pi, pi]

  // Fold onto [-pi/2, pi/2]: sin(r) = sin(sign(r)*pi - r) and
  // cos(r) = -cos(sign(r)*pi - r) on the outer quarters.
  const auto outer = lane_gt_abs(r, Lane(kHalfPi));
  const Lane folded = lane_copysign_pi(r) - r;
  const Lane u = lane_select(outer, folded, r);

  const Lane y = u * u;
  Lane sp = Lane(kSinCoef[8]);
  for (int i = 7; i >= 0; --i) sp = Lane(kSinCoef[i]) - y * sp;
  const Lane s = u - u * (y * sp);

  Lane cp = Lane(kCosCoef[9]);
  for (int i = 8; i >= 0; --i) cp = Lane(kCosCoef[i]) - y * cp;
  const Lane c = Lane(1.0) - y * cp;

  s_out = s;
  c_out = lane_select(outer, Lane(0.0) - c, c);
}

// ------------------------------------------------------- monodromy (RK4)
// One fixed-step RK4 sweep of the first-order system
//   A' = B,   B' = c(x) B - k0^2 g(x) A
// over every piece of the period, two initial conditions per lane, with
// the TM derivative-continuity factor applied at each interface.  Returns
// the Floquet discriminant tr(W)/2 and det(W) per lane.
template <class Lane>
inline void lane_monodromy(const MonodromyTables& t, const Lane& k0, bool tm,
                           Lane& cos_out, Lane& det_out) {
  const Lane k02 = k0 * k0;
  Lane a1(1.0), b1(0.0); // first column of W: (A, A') from (1, 0)
  Lane a2(0.0), b2(1.0); // second column: from (0, 1)

  for (const auto& piece : t.pieces) {
    const double h = piece.h;
    const double* g = piece.g.data();
    const double* c = piece.c.data();
    for (long i = 0; i < piece.steps; ++i) {
      const Lane kg0 = k02 * Lane(g[2 * i]);
      const Lane kg1 = k02 * Lane(g[2 * i + 1]);
      const Lane kg2 = k02 * Lane(g[2 * i + 2]);
      const Lane c0 = tm ? Lane(c[2 * i]) : Lane(0.0);
      const Lane c1 = tm ? Lane(c[2 * i + 1]) : Lane(0.0);
      const Lane c2 = tm ? Lane(c[2 * i + 2]) : Lane(0.0);

      auto step = [&](Lane& a, Lane& b) {
        const Lane s1a = b;
        const Lane s1b = c0 * b - kg0 * a;
        const Lane a_2 = a + Lane(0.5 * h) * s1a;
        const Lane b_2 = b + Lane(0.5 * h) * s1b;
        const Lane s2a = b_2;
        const Lane s2b = c1 * b_2 - kg1 * a_2;
        const Lane a_3 = a + Lane(0.5 * h) * s2a;
        const Lane b_3 = b + Lane(0.5 * h) * s2b;
        const Lane s3a = b_3;
        const Lane s3b = c1 * b_3 - kg1 * a_3;
        const Lane a_4 = a + Lane(h) * s3a;
        const Lane b_4 = b + Lane(h) * s3b;
        const Lane s4a = b_4;
        const Lane s4b = c2 * b_4 - kg2 * a_4;
        a = a + Lane(h / 6.0) * (s1a + Lane(2.0) * (s2a + s3a) + s4a);
        b = b + Lane(h / 6.0) * (s1b + Lane(2.0) * (s2b + s3b) + s4b);
      };
      step(a1, b1);
      step(a2, b2);
    }
    if (tm && piece.r_tm != 1.0) {
      b1 = b1 * Lane(piece.r_tm);
      b2 = b2 * Lane(piece.r_tm);
    }
  }
  cos_out = Lane(0.5) * (a1 + b2);
  det_out = a1 * b2 - a2 * b1;
}

// -------------------------------------------------- stratified one period
// Ordered product of the interface jump matrices, then the first-layer
// Bloch phase.  All-real wavenumbers assumed (checked by the caller).
template <class Lane>
inline void lane_stratified(const double* n, const double* X, int layers,
                            double x_start, double period_L, double n_eff,
                            bool tm, const Lane& k0, Lane& cos_out) {
  (void)x_start;
  // Accumulated product Q as four complex entries (re, im lanes).
  Lane q11r(1.0), q11i(0.0), q12r(0.0), q12i(0.0);
  Lane q21r(0.0), q21i(0.0), q22r(1.0), q22i(0.0);

  const Lane ne2(n_eff * n_eff);
  Lane k_first = k0 * Lane(std::sqrt(n[0] * n[0] - n_eff * n_eff));

  for (int j = 0; j < layers; ++j) {
    const int jn = (j + 1 == layers) ? 0 : j + 1;
    const Lane kj = k0 * lane_sqrt(Lane(n[j] * n[j]) - ne2);
    const Lane kj1 = k0 * lane_sqrt(Lane(n[jn] * n[jn]) - ne2);
    const double r = tm ? (n[jn] * n[jn]) / (n[j] * n[j]) : 1.0;

    const Lane half_inv = Lane(0.5) / kj1;
    const Lane ap = (kj1 + Lane(r) * kj) * half_inv; // diagonal magnitude
    const Lane am = (kj1 - Lane(r) * kj) * half_inv; // off-diagonal magnitude

    // Phases (k_{j+1} -+ k_j) * X_j.
    const Lane pd = (kj1 - kj) * Lane(X[j]);
    const Lane ps = (kj1 + kj) * Lane(X[j]);
    Lane sd, cd, ss, cs;
    lane_sincos(pd, sd, cd);
    lane_sincos(ps, ss, cs);

    // J = [[ap*e^{+i pd}, am*e^{+i ps}], [am*e^{-i ps}, ap*e^{-i pd}]]
    const Lane j11r = ap * cd, j11i = ap * sd;
    const Lane j12r = am * cs, j12i = am * ss;
    const Lane j21r = am * cs, j21i = Lane(0.0) - am * ss;
    const Lane j22r = ap * cd, j22i = Lane(0.0) - ap * sd;

    // Q <- J * Q.
    const Lane n11r = j11r * q11r - j11i * q11i + j12r * q21r - j12i * q21i;
    const Lane n11i = j11r * q11i + j11i * q11r + j12r * q21i + j12i * q21r;
    const Lane n12r = j11r * q12r - j11i * q12i + j12r * q22r - j12i * q22i;
    const Lane n12i = j11r * q12i + j11i * q12r + j12r * q22i + j12i * q22r;
    const Lane n21r = j21r * q11r - j21i * q11i + j22r * q21r - j22i * q21i;
    const Lane n21i = j21r * q11i + j21i * q11r + j22r * q21i + j22i * q21r;
    const Lane n22r = j21r * q12r - j21i * q12i + j22r * q22r - j22i * q22i;
    const Lane n22i = j21r * q12i + j21i * q12r + j22r * q22i + j22i * q22r;
    q11r = n11r; q11i = n11i; q12r = n12r; q12i = n12i;
    q21r = n21r; q21i = n21i; q22r = n22r; q22i = n22i;
  }

  // cos(kappa L) = Re{ q11 * exp(-i k_first L) }.
  Lane sphi, cphi;
  lane_sincos(k_first * Lane(period_L), sphi, cphi);
  cos_out = q11r * cphi + q11i * sphi;
}

}  // namespace PCBAND_KERNEL_NS
}  // namespace pcband::kernels

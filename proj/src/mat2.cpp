#include "pcband/mat2.hpp"

#include <algorithm>
#include <cmath>

#include "pcband/errors.hpp"

namespace pcband {

double Mat2c::max_abs() const {
  return std::max(std::max(std::abs(a11), std::abs(a12)),
                  std::max(std::abs(a21), std::abs(a22)));
}

Mat2c Mat2c::inverse() const {
  const cdouble d = det();
  return {a22 / d, -a12 / d, -a21 / d, a11 / d};
}

Mat2c mat2_mul(const Mat2c& a, const Mat2c& b) {
  return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
          a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
}

Mat2c mat2_exp(const Mat2c& m) {
  // Infinity norm (max absolute row sum).
  const double norm = std::max(std::abs(m.a11) + std::abs(m.a12),
                               std::abs(m.a21) + std::abs(m.a22));
  int s = 0;
  double scaled = norm;
  while (scaled > 0.5) {
    scaled *= 0.5;
    ++s;
  }
  const Mat2c t = m * (1.0 / std::ldexp(1.0, s));

  // Horner form of the 18-term Taylor polynomial:
  //   R = I + T*(I + T/2*(I + T/3*(...)))
  // Truncation at norm <= 1/2 is below 1e-23.
  Mat2c r = Mat2c::identity();
  for (int k = 18; k >= 1; --k) {
    r = mat2_mul(t, r) * (1.0 / k) + Mat2c::identity();
  }
  for (int i = 0; i < s; ++i) r = mat2_mul(r, r);
  return r;
}

Mat2c mat2_exp_traceless(const Mat2c& m) {
  const double scale = m.max_abs();
  if (std::abs(m.trace()) > 1e-12 * std::max(scale, 1.0)) {
    throw precondition_error(
        "mat2_exp_traceless: matrix trace exceeds tolerance; use mat2_exp");
  }
  const cdouble lam = std::sqrt(m.a11 * m.a11 + m.a12 * m.a21);
  cdouble sinhc;
  if (std::abs(lam) < 1e-6) {
    const cdouble l2 = lam * lam;
    sinhc = 1.0 + l2 / 6.0 + l2 * l2 / 120.0;
  } else {
    sinhc = std::sinh(lam) / lam;
  }
  const cdouble ch = std::cosh(lam);
  Mat2c r = m * sinhc;
  r.a11 += ch;
  r.a22 += ch;
  return r;
}

std::pair<cdouble, cdouble> mat2_eigenvalues(const Mat2c& m) {
  const cdouble mean = 0.5 * m.trace();
  const cdouble d = m.det();
  cdouble s = std::sqrt(mean * mean - d);
  // Pick the root that adds constructively to the mean, then recover the
  // other one from the product (Vieta) to avoid cancellation.
  if (std::real(std::conj(mean) * s) < 0.0) s = -s;
  const cdouble l1 = mean + s;
  if (std::abs(l1) == 0.0) return {l1, m.trace()};
  return {l1, d / l1};
}

}  // namespace pcband

#pragma once

#include <complex>
#include <utility>

namespace pcband {

using cdouble = std::complex<double>;

// Complex 2x2 matrix.  Value type; carries the transfer-matrix algebra for
// the whole library (coefficient matrices, interval integrals, one-period
// transfer matrices, interface jumps).
struct Mat2c {
  cdouble a11{0.0, 0.0};
  cdouble a12{0.0, 0.0};
  cdouble a21{0.0, 0.0};
  cdouble a22{0.0, 0.0};

  static Mat2c identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Mat2c zero() { return {}; }

  cdouble trace() const { return a11 + a22; }
  cdouble det() const { return a11 * a22 - a12 * a21; }

  Mat2c operator+(const Mat2c& o) const {
    return {a11 + o.a11, a12 + o.a12, a21 + o.a21, a22 + o.a22};
  }
  Mat2c operator-(const Mat2c& o) const {
    return {a11 - o.a11, a12 - o.a12, a21 - o.a21, a22 - o.a22};
  }
  Mat2c operator*(cdouble s) const { return {a11 * s, a12 * s, a21 * s, a22 * s}; }
  Mat2c& operator+=(const Mat2c& o) { return *this = *this + o; }

  // Largest entry magnitude; cheap norm used for tolerances and scaling.
  double max_abs() const;
  // Inverse via the adjugate; caller ensures det != 0.
  Mat2c inverse() const;
};

// Standard matrix product a*b.
Mat2c mat2_mul(const Mat2c& a, const Mat2c& b);

// Matrix exponential by scaling and squaring: scale by 2^-s until the norm
// is at most 1/2, sum an 18-term Taylor series, square s times.
Mat2c mat2_exp(const Mat2c& m);

// Closed-form exponential of a traceless 2x2 matrix:
//   exp(m) = cosh(l)*I + (sinh(l)/l)*m,  l^2 = a11^2 + a12*a21.
// Either square root works (both factors are even in l); the principal
// root is used.  sinh(l)/l switches to its Maclaurin series for small |l|.
// Throws precondition_error when m is not traceless within tolerance.
Mat2c mat2_exp_traceless(const Mat2c& m);

// Eigenvalues as the roots of the characteristic polynomial, computed with
// the stable quadratic formula (no cancellation between the mean and the
// discriminant root).
std::pair<cdouble, cdouble> mat2_eigenvalues(const Mat2c& m);

}  // namespace pcband

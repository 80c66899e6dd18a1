#include "pcband/dispersion.hpp"

#include <cmath>

#include "pcband/errors.hpp"

namespace pcband {

namespace {

constexpr cdouble kJ{0.0, 1.0};

// sinh(l)/l with the Maclaurin series near zero.
cdouble sinhc(cdouble l) {
  const double a = std::abs(l);
  if (a < 1e-6) {
    const cdouble l2 = l * l;
    return 1.0 + l2 / 6.0 + l2 * l2 / 120.0;
  }
  return std::sinh(l) / l;
}

}  // namespace

cdouble bloch_cos_general(cdouble q11, cdouble q22, cdouble k_ref, double L) {
  const cdouble em = std::exp(-kJ * k_ref * L);
  const cdouble ep = std::exp(kJ * k_ref * L);
  return 0.5 * (q11 * em + q22 * ep);
}

double bloch_cos_symmetric(const IntervalMatrix& m, double u, double kbar_L) {
  const Mat2c& a = m.m;
  const double scale = std::max(a.max_abs(), 1.0);
  const double worst_real =
      std::max(std::max(std::abs(a.a11.real()), std::abs(a.a12.real())),
               std::max(std::abs(a.a21.real()), std::abs(a.a22.real())));
  if (worst_real > 1e-8 * scale || std::abs(a.trace()) > 1e-8 * scale) {
    throw precondition_error(
        "bloch_cos_symmetric: interval matrix is not traceless with purely "
        "imaginary entries");
  }
  const cdouble l = std::sqrt(a.a11 * a.a11 + a.a12 * a.a21);
  const cdouble r =
      std::cosh(l) * std::cos(u) + (u - kbar_L) * sinhc(l) * std::sin(u);
  if (std::abs(r.imag()) > 1e-10) {
    throw numerical_error(
        "bloch_cos_symmetric: residual imaginary part exceeds 1e-10");
  }
  return r.real();
}

double bloch_cos_stratified(cdouble q11, double k1, double L) {
  return (q11 * std::exp(-kJ * k1 * L)).real();
}

BandState classify(double c) {
  if (!std::isfinite(c)) {
    throw precondition_error("classify: non-finite discriminant");
  }
  BandState s;
  if (std::abs(std::abs(c) - 1.0) <= 1e-12) {
    s.kind = BandState::Kind::Edge;
    s.parity = c > 0.0 ? 0 : 1;
    s.kappa_L = c > 0.0 ? 0.0 : M_PI;
    return s;
  }
  if (std::abs(c) < 1.0) {
    s.kind = BandState::Kind::Allowed;
    s.kappa_L = std::acos(c);
    return s;
  }
  s.kind = BandState::Kind::Forbidden;
  if (c > 1.0) {
    s.parity = 0;
    s.xi = std::acosh(c);
  } else {
    s.parity = 1;
    s.xi = std::acosh(-c);
  }
  return s;
}

}  // namespace pcband

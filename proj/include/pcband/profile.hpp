#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "pcband/mat2.hpp"

namespace pcband {

enum class Polarization { TE, TM };

// Plane-of-incidence configuration.  The conserved transverse phase-match
// constant is beta = k0*n_eff with n_eff = n_ambient*sin(theta).
struct IncidenceConfig {
  double n_ambient = 1.0;
  double theta = 0.0; // radians
  double n_eff = 0.0; // derived: n_ambient*sin(theta)

  static IncidenceConfig make(double n_ambient, double theta);
};

// One refractive-index discontinuity: position and the two one-sided
// limits.  Code that must see exact limits (jump matrices, staircase
// boundaries, monodromy pieces) reads these instead of sampling n at the
// jump itself.
struct Jump {
  double x;
  double n_left;
  double n_right;
};

// Periodic refractive-index profile on the window [-L/2, L/2).  Immutable
// after construction; evaluators must be thread-safe (pure).
class Profile {
public:
  double period_L = 1.0;
  std::function<double(double)> n_raw;  // window coordinate -> n
  std::function<double(double)> dn_raw; // window coordinate -> dn/dx
  std::vector<Jump> jumps;              // sorted, positions in [-L/2, L/2)
  std::vector<double> kinks;            // slope breakpoints (n continuous)
  bool symmetric = false;
  bool piecewise_constant = false;
  std::string label;
  double n_min = 0.0; // established at construction
  double n_max = 0.0;

  // Wrap any position into [-L/2, L/2).
  double wrap(double x) const {
    const double L = period_L;
    double w = x - L * std::floor(x / L + 0.5);
    if (w >= L / 2) w -= L; // guard the floating roundoff at +L/2
    return w;
  }
  double n(double x) const { return n_raw(wrap(x)); }
  double dn(double x) const { return dn_raw(wrap(x)); }

  // Scan min/max of n over a uniform grid plus the one-sided jump limits.
  void establish_bounds(int grid = 1024);
};

// The four named profiles, period 1, index varying between 1 and 3:
//   sinusoidal  n(x) = 2 + cos(2*pi*x)                (smooth, symmetric)
//   triangular  n(x) = 3 - 4|x|                       (kinked, symmetric)
//   square      n(x) = 3 for |x| < 1/4, else 1        (two jumps, symmetric)
//   ramp_jump   n(x) = 2x + 2, jump 3 -> 1 at x = 1/2 (asymmetric)
Profile canonical_profile(const std::string& name);

// Local wavenumber k(x) = k0*sqrt(n(x)^2 - n_eff^2); real and positive in
// propagating regions, positive-imaginary in evanescent ones.
cdouble wavenumber(const Profile& p, const IncidenceConfig& inc, double k0,
                   double x);

// k-bar = L^-1 * integral of k(x) over one period, by adaptive quadrature
// with absolute tolerance 1e-10*k0.  Requires real k over the whole window.
double average_wavenumber(const Profile& p, const IncidenceConfig& inc,
                          double k0);

}  // namespace pcband

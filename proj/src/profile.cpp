#include "pcband/profile.hpp"

#include <algorithm>
#include <cmath>

#include "pcband/errors.hpp"
#include "pcband/quad.hpp"

namespace pcband {

IncidenceConfig IncidenceConfig::make(double n_ambient, double theta) {
  if (!(n_ambient > 0.0)) {
    throw precondition_error("IncidenceConfig: ambient index must be positive");
  }
  if (!(theta >= 0.0 && theta < M_PI / 2)) {
    throw precondition_error("IncidenceConfig: theta must lie in [0, pi/2)");
  }
  IncidenceConfig inc;
  inc.n_ambient = n_ambient;
  inc.theta = theta;
  inc.n_eff = n_ambient * std::sin(theta);
  return inc;
}

void Profile::establish_bounds(int grid) {
  double lo = n_raw(-period_L / 2);
  double hi = lo;
  for (int i = 0; i < grid; ++i) {
    // Midpoint sampling avoids landing exactly on jump positions.
    const double x = -period_L / 2 + period_L * (i + 0.5) / grid;
    const double v = n_raw(wrap(x));
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  for (const Jump& j : jumps) {
    lo = std::min(lo, std::min(j.n_left, j.n_right));
    hi = std::max(hi, std::max(j.n_left, j.n_right));
  }
  n_min = lo;
  n_max = hi;
}

Profile canonical_profile(const std::string& name) {
  Profile p;
  p.period_L = 1.0;
  p.label = name;
  if (name == "sinusoidal") {
    p.n_raw = [](double x) { return 2.0 + std::cos(2.0 * M_PI * x); };
    p.dn_raw = [](double x) { return -2.0 * M_PI * std::sin(2.0 * M_PI * x); };
    p.symmetric = true;
  } else if (name == "triangular") {
    p.n_raw = [](double x) { return 3.0 - 4.0 * std::abs(x); };
    p.dn_raw = [](double x) { return x >= 0.0 ? -4.0 : 4.0; };
    p.symmetric = true;
    p.kinks = {-0.5, 0.0};
  } else if (name == "square") {
    p.n_raw = [](double x) { return std::abs(x) < 0.25 ? 3.0 : 1.0; };
    p.dn_raw = [](double) { return 0.0; };
    p.symmetric = true;
    p.piecewise_constant = true;
    p.jumps = {{-0.25, 1.0, 3.0}, {0.25, 3.0, 1.0}};
  } else if (name == "ramp_jump") {
    p.n_raw = [](double x) { return 2.0 * x + 2.0; };
    p.dn_raw = [](double) { return 2.0; };
    p.symmetric = false;
    // The discontinuity sits at the window seam: n -> 3 as x -> 1/2- and
    // restarts at 1, i.e. a jump at wrapped position -1/2.
    p.jumps = {{-0.5, 3.0, 1.0}};
  } else {
    throw precondition_error("canonical_profile: unknown profile '" + name +
                             "'");
  }
  p.establish_bounds();
  return p;
}

cdouble wavenumber(const Profile& p, const IncidenceConfig& inc, double k0,
                   double x) {
  const double n = p.n(x);
  const double g2 = n * n - inc.n_eff * inc.n_eff;
  if (g2 >= 0.0) return {k0 * std::sqrt(g2), 0.0};
  return {0.0, k0 * std::sqrt(-g2)};
}

double average_wavenumber(const Profile& p, const IncidenceConfig& inc,
                          double k0) {
  const double L = p.period_L;
  if (!(p.n_min > inc.n_eff)) {
    throw precondition_error(
        "average_wavenumber: wavenumber must be real over the whole period");
  }
  std::vector<double> cuts(p.kinks);
  for (const Jump& j : p.jumps) cuts.push_back(j.x);

  quad::Options opt;
  opt.abs_tol = 1e-10 * k0 * L;
  const double ne2 = inc.n_eff * inc.n_eff;
  auto f = [&](double x, double* out) {
    const double n = p.n_raw(x);
    out[0] = k0 * std::sqrt(n * n - ne2);
  };
  const auto edges = quad::plan_panels(-L / 2, L / 2, cuts, nullptr, opt);
  const auto v = quad::integrate<1>(f, edges, opt);
  return v[0] / L;
}

}  // namespace pcband

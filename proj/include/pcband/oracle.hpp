#pragma once

#include <span>
#include <string>
#include <vector>

#include "pcband/kernels.hpp"
#include "pcband/profile.hpp"
#include "pcband/stratified.hpp"

namespace pcband {

// One verification record: the production pathway's value against an
// independent reference at the same frequency.
struct OracleReport {
  double omega_norm = 0.0;
  double dtmm_value = 0.0;
  double oracle_value = 0.0;
  double abs_error = 0.0;
  std::string oracle_kind; // monodromy | two_layer | staircase
};

// Sampled coefficient tables for the direct ODE monodromy integration of
//   A'' = 2(n'/n) A' - k0^2 (n^2 - n_eff^2) A   (first-derivative term TM only)
// split at jumps and kinks, with grid samples nudged inside each smooth
// piece so one-sided limits are honored.  total_steps is spread over the
// pieces proportionally to width (default matches step L/20000).  The
// tables carry data for both polarizations; the tm flag at evaluation
// time selects the first-derivative terms and interface factors.
kernels::MonodromyTables build_monodromy_tables(const Profile& p,
                                                const IncidenceConfig& inc,
                                                long total_steps = 20000);

// Same tables for an explicit layer stack: constant coefficients per
// layer, interface factors at every boundary including the period seam.
kernels::MonodromyTables build_monodromy_tables(const LayerStack& stack,
                                                const IncidenceConfig& inc,
                                                long total_steps = 20000);

// Floquet discriminant cos(kappa*L) = tr(W)/2 from the fixed-step RK4
// monodromy W over one period (two independent initial conditions).
// Verifies the Wronskian: |det W - 1| > 1e-6 raises numerical_error.
double monodromy_cos(const Profile& p, const IncidenceConfig& inc, double k0,
                     Polarization pol);

// Batched sweep over many frequencies against one prebuilt table set, in
// groups of four lanes through the active kernel implementation.
void monodromy_sweep(const kernels::MonodromyTables& tables, Polarization pol,
                     std::span<const double> k0, std::span<double> cos_out);

// Classical two-layer dispersion:
//   cos(k1 d1)cos(k2 d2) - (eta + 1/eta)/2 sin(k1 d1)sin(k2 d2)
// eta = k1/k2 (TE) or n2^2 k1/(n1^2 k2) (TM).  Real-k regime only.
double analytic_two_layer(double n1, double n2, double d1, double d2,
                          const IncidenceConfig& inc, double k0,
                          Polarization pol);

// Staircase-limit reference: the stratified discriminant at N_max/4,
// N_max/2 and N_max layers, Richardson-extrapolated as a 2nd-order
// sequence.  N_max must be a power of two >= 64.  A non-monotone
// difference sequence raises numerical_error carrying the raw values.
double staircase_limit_cos(const Profile& p, const IncidenceConfig& inc,
                           double k0, Polarization pol, int N_max,
                           double* err_est = nullptr);

}  // namespace pcband

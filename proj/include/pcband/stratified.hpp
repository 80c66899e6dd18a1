#pragma once

#include <vector>

#include "pcband/mat2.hpp"
#include "pcband/profile.hpp"

namespace pcband {

// Piecewise-homogeneous medium: ordered layers over one period window
// starting at x_start (the profile window convention puts it at -L/2).
// interfaces[j] is the boundary position X_j after layer j; the last entry
// is x_start + period_L, the period-closing interface back to layer 0.
struct LayerStack {
  struct Layer {
    double n = 0.0;
    double d = 0.0;
  };
  std::vector<Layer> layers;
  std::vector<double> interfaces;
  double period_L = 0.0;
  double x_start = 0.0;
  std::string label;

  double min_n() const;
  double max_n() const;
};

// Validates (all d > 0, all n > 0) and derives period_L, x_start = -L/2,
// and the interface positions.
LayerStack make_layer_stack(std::vector<LayerStack::Layer> layers);

// Transfer matrix across one interface at X from medium (n_j, k_j) into
// medium (n_j1, k_j1):
//   q11 = (k_j1 + r k_j)/(2 k_j1) e^{+j(k_j1-k_j)X}
//   q12 = (k_j1 - r k_j)/(2 k_j1) e^{+j(k_j1+k_j)X}
//   q21 = conj-phase of q12, q22 = conj-phase of q11
// with r = 1 (TE) or (n_j1/n_j)^2 (TM); phases always use the true
// wavenumbers.  det = k_j/k_j1 (TE) or n_j1^2 k_j/(n_j^2 k_j1) (TM).
Mat2c jump_matrix(Polarization pol, double n_j, double n_j1, cdouble k_j,
                  cdouble k_j1, double X_j);

// One-period transfer matrix: the ordered product of the jump matrices at
// X_1 ... X_n (the last one wrapping from the final layer back to the
// first), later interfaces multiplying on the left.  Complex wavenumbers
// are computed through; the q11 = conj(q22) structure is only guaranteed
// when every layer wavenumber is real (min_n > n_eff).
Mat2c period_transfer(const LayerStack& stack, const IncidenceConfig& inc,
                      double k0, Polarization pol);

// N equal-width layers over one period, each holding n sampled at the
// layer midpoint; exact jump positions of the source profile are inserted
// as extra boundaries so discontinuities are never smeared.  N >= 2.
LayerStack staircase(const Profile& p, int N);

// Exact stack for a piecewise-constant profile: one layer per constant
// region, boundaries at the declared jumps.
LayerStack stack_from_profile(const Profile& p);

}  // namespace pcband

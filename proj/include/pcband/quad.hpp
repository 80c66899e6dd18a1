#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "pcband/errors.hpp"

namespace pcband::quad {

struct Options {
  double abs_tol = 1e-10;    // absolute tolerance per component
  int max_depth = 24;        // refinement depth cap per base panel
  int base_panels = 4;       // minimum panels per smooth segment
  int panels_per_cycle = 20; // panels per 2*pi of accumulated phase
  long max_panels = 400000;  // hard cap on processed panels
};

struct Outcome {
  double error_est = 0.0; // worst accepted per-panel estimate (max component)
  long evals = 0;         // integrand evaluations (points, not components)
  long panels = 0;        // panels accepted into the sum
};

// Initial panel edges for [a,b].  `interior_edges` (kinks, declared
// breakpoints) become exact panel boundaries so Gauss nodes never straddle
// them.  When a phase function is supplied, each smooth segment gets at
// least `panels_per_cycle` panels per full 2*pi of total phase variation,
// spaced by equal phase increments; otherwise segments get a uniform
// `base_panels` split.  Edges are strictly increasing and span [a,b].
std::vector<double> plan_panels(double a, double b,
                                std::span<const double> interior_edges,
                                const std::function<double(double)>& phase,
                                const Options& opt);

namespace detail {
// 7-point Gauss-Legendre nodes and weights on [-1,1] (positive half; the
// rule is symmetric).
inline constexpr double kGL7Node[4] = {0.0, 0.405845151377397158,
                                       0.741531185599394440,
                                       0.949107912342758525};
inline constexpr double kGL7Weight[4] = {0.417959183673469388,
                                         0.381830050505118945,
                                         0.279705391489276668,
                                         0.129484966168869693};

template <int N, class F>
inline void gl7(F& f, double a, double b, std::array<double, N>& out) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  std::array<double, N> acc{};
  std::array<double, N> v{};
  f(c, v.data());
  for (int k = 0; k < N; ++k) acc[k] = kGL7Weight[0] * v[k];
  for (int i = 1; i < 4; ++i) {
    const double dx = h * kGL7Node[i];
    f(c + dx, v.data());
    for (int k = 0; k < N; ++k) acc[k] += kGL7Weight[i] * v[k];
    f(c - dx, v.data());
    for (int k = 0; k < N; ++k) acc[k] += kGL7Weight[i] * v[k];
  }
  for (int k = 0; k < N; ++k) out[k] = h * acc[k];
}
}  // namespace detail

// Adaptive composite quadrature of an N-component integrand over the panel
// plan `edges`.  Each panel's 7-point estimate is checked against the sum
// of its two half-panel estimates; panels split (worst entries first via a
// simple LIFO stack) until every component difference fits the absolute
// tolerance prorated by panel width.  Throws quad_error when the depth or
// panel budget is exhausted with the tolerance still unmet.
//
// F has signature void(double x, double out[N]).
template <int N, class F>
std::array<double, N> integrate(F&& f, std::span<const double> edges,
                                const Options& opt, Outcome* outcome = nullptr) {
  struct Panel {
    double a, b;
    std::array<double, N> est;
    int depth;
  };

  const double total = edges.back() - edges.front();
  std::array<double, N> sum{};
  std::array<double, N> comp{}; // Kahan compensation
  Outcome oc;

  std::vector<Panel> stack;
  stack.reserve(edges.size() + 64);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    Panel p{edges[i], edges[i + 1], {}, 0};
    detail::gl7<N>(f, p.a, p.b, p.est);
    oc.evals += 7;
    stack.push_back(p);
  }

  auto accept = [&](const std::array<double, N>& v, double err) {
    for (int k = 0; k < N; ++k) {
      const double y = v[k] - comp[k];
      const double t = sum[k] + y;
      comp[k] = (t - sum[k]) - y;
      sum[k] = t;
    }
    oc.error_est = std::max(oc.error_est, err);
    ++oc.panels;
  };

  while (!stack.empty()) {
    if (oc.panels + static_cast<long>(stack.size()) > opt.max_panels) {
      throw quad_error("quadrature panel budget exhausted", oc.error_est);
    }
    Panel p = stack.back();
    stack.pop_back();

    const double mid = 0.5 * (p.a + p.b);
    Panel l{p.a, mid, {}, p.depth + 1};
    Panel r{mid, p.b, {}, p.depth + 1};
    detail::gl7<N>(f, l.a, l.b, l.est);
    detail::gl7<N>(f, r.a, r.b, r.est);
    oc.evals += 14;

    double err = 0.0;
    std::array<double, N> refined;
    for (int k = 0; k < N; ++k) {
      refined[k] = l.est[k] + r.est[k];
      err = std::max(err, std::abs(p.est[k] - refined[k]));
    }
    const double tol_local = opt.abs_tol * ((p.b - p.a) / total);
    if (err <= tol_local) {
      accept(refined, err);
    } else if (p.depth >= opt.max_depth) {
      throw quad_error("quadrature did not converge at max refinement depth",
                       err);
    } else {
      stack.push_back(l);
      stack.push_back(r);
    }
  }

  if (outcome) *outcome = oc;
  return sum;
}

}  // namespace pcband::quad

#include "pcband/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>

#include "pcband/dispersion.hpp"
#include "pcband/errors.hpp"
#include "pcband/stratified.hpp"

namespace pcband {

namespace {

// Piece edges for a direct integration: the window boundaries plus every
// interior jump or kink, sorted and deduplicated.
std::vector<double> piece_edges(const Profile& p) {
  const double half = p.period_L / 2;
  const double eps = 1e-12 * p.period_L;
  std::vector<double> edges;
  edges.push_back(-half);
  for (const Jump& j : p.jumps)
    if (j.x > -half + eps && j.x < half - eps) edges.push_back(j.x);
  for (double x : p.kinks) {
    const double w = p.wrap(x);
    if (w > -half + eps && w < half - eps) edges.push_back(w);
  }
  edges.push_back(half);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [eps](double a, double b) { return b - a <= eps; }),
              edges.end());
  return edges;
}

// TM derivative factor (n+/n-)^2 of the jump sitting at the right edge of
// a piece, or 1 when the profile is continuous there.  The window's top
// edge wraps onto the seam at -L/2.
double interface_r(const Profile& p, double edge) {
  const double eps = 1e-12 * p.period_L;
  const double w = p.wrap(edge);
  for (const Jump& j : p.jumps)
    if (std::fabs(j.x - w) <= eps)
      return (j.n_right / j.n_left) * (j.n_right / j.n_left);
  return 1.0;
}

}  // namespace

kernels::MonodromyTables build_monodromy_tables(const Profile& p,
                                                const IncidenceConfig& inc,
                                                long total_steps) {
  if (total_steps < 4)
    throw precondition_error("monodromy tables need at least 4 steps");
  const double L = p.period_L;
  const double ne2 = inc.n_eff * inc.n_eff;
  const double eps = 1e-12 * L;
  const std::vector<double> edges = piece_edges(p);

  kernels::MonodromyTables tables;
  tables.pieces.reserve(edges.size() - 1);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double a = edges[i];
    const double b = edges[i + 1];
    const double width = b - a;
    kernels::MonodromyTables::Piece piece;
    piece.steps = std::max<long>(1, std::lround(double(total_steps) * width / L));
    piece.h = width / double(piece.steps);
    const long nodes = 2 * piece.steps + 1;
    piece.g.resize(nodes);
    piece.c.resize(nodes);
    for (long j = 0; j < nodes; ++j) {
      double x = a + double(j) * (piece.h / 2);
      x = std::min(std::max(x, a + eps), b - eps);
      const double n = p.n(x);
      piece.g[j] = n * n - ne2;
      piece.c[j] = 2.0 * p.dn(x) / n;
    }
    piece.r_tm = interface_r(p, b);
    tables.pieces.push_back(std::move(piece));
  }
  return tables;
}

kernels::MonodromyTables build_monodromy_tables(const LayerStack& stack,
                                                const IncidenceConfig& inc,
                                                long total_steps) {
  if (total_steps < 4)
    throw precondition_error("monodromy tables need at least 4 steps");
  const double L = stack.period_L;
  const double ne2 = inc.n_eff * inc.n_eff;
  const std::size_t m = stack.layers.size();

  kernels::MonodromyTables tables;
  tables.pieces.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    const LayerStack::Layer& layer = stack.layers[j];
    kernels::MonodromyTables::Piece piece;
    piece.steps =
        std::max<long>(1, std::lround(double(total_steps) * layer.d / L));
    piece.h = layer.d / double(piece.steps);
    const long nodes = 2 * piece.steps + 1;
    piece.g.assign(std::size_t(nodes), layer.n * layer.n - ne2);
    piece.c.assign(std::size_t(nodes), 0.0);
    const double n_next = stack.layers[(j + 1) % m].n;
    piece.r_tm = (n_next / layer.n) * (n_next / layer.n);
    tables.pieces.push_back(std::move(piece));
  }
  return tables;
}

double monodromy_cos(const Profile& p, const IncidenceConfig& inc, double k0,
                     Polarization pol) {
  if (!(k0 > 0)) throw precondition_error("monodromy_cos: k0 must be positive");
  const kernels::MonodromyTables tables = build_monodromy_tables(p, inc);
  const double k0s[4] = {k0, k0, k0, k0};
  double cos4[4], det4[4];
  kernels::get(kernels::Impl::Scalar)
      .monodromy4(tables, k0s, pol == Polarization::TM, cos4, det4);
  if (std::fabs(det4[0] - 1.0) > 1e-6) {
    char msg[128];
    std::snprintf(msg, sizeof msg,
                  "monodromy Wronskian drifted: det(W) = %.12g at k0 = %.6g",
                  det4[0], k0);
    throw numerical_error(msg);
  }
  return cos4[0];
}

void monodromy_sweep(const kernels::MonodromyTables& tables, Polarization pol,
                     std::span<const double> k0, std::span<double> cos_out) {
  if (k0.size() != cos_out.size())
    throw precondition_error("monodromy_sweep: span sizes differ");
  const kernels::Dispatch& d = kernels::active();
  const bool tm = pol == Polarization::TM;
  for (std::size_t i = 0; i < k0.size(); i += 4) {
    const std::size_t m = std::min<std::size_t>(4, k0.size() - i);
    double k4[4], cos4[4], det4[4];
    for (std::size_t l = 0; l < 4; ++l) k4[l] = k0[i + std::min(l, m - 1)];
    d.monodromy4(tables, k4, tm, cos4, det4);
    for (std::size_t l = 0; l < m; ++l) {
      if (std::fabs(det4[l] - 1.0) > 1e-6) {
        char msg[128];
        std::snprintf(msg, sizeof msg,
                      "monodromy Wronskian drifted: det(W) = %.12g at k0 = %.6g",
                      det4[l], k4[l]);
        throw numerical_error(msg);
      }
      cos_out[i + l] = cos4[l];
    }
  }
}

double analytic_two_layer(double n1, double n2, double d1, double d2,
                          const IncidenceConfig& inc, double k0,
                          Polarization pol) {
  if (!(n1 > 0) || !(n2 > 0) || !(d1 > 0) || !(d2 > 0) || !(k0 > 0))
    throw precondition_error("analytic_two_layer: all parameters must be positive");
  const double ne = inc.n_eff;
  if (n1 <= ne || n2 <= ne)
    throw precondition_error(
        "analytic_two_layer: evanescent layer (n <= n_eff) not supported");
  const double k1 = k0 * std::sqrt(n1 * n1 - ne * ne);
  const double k2 = k0 * std::sqrt(n2 * n2 - ne * ne);
  const double eta =
      pol == Polarization::TE ? k1 / k2 : (n2 * n2 * k1) / (n1 * n1 * k2);
  return std::cos(k1 * d1) * std::cos(k2 * d2) -
         0.5 * (eta + 1.0 / eta) * std::sin(k1 * d1) * std::sin(k2 * d2);
}

double staircase_limit_cos(const Profile& p, const IncidenceConfig& inc,
                           double k0, Polarization pol, int N_max,
                           double* err_est) {
  if (N_max < 64 || (N_max & (N_max - 1)) != 0)
    throw precondition_error(
        "staircase_limit_cos: N_max must be a power of two >= 64");
  if (p.n_min <= inc.n_eff)
    throw precondition_error(
        "staircase_limit_cos: evanescent region (n_min <= n_eff)");
  const double ne = inc.n_eff;
  auto value = [&](int N) {
    const LayerStack stack = staircase(p, N);
    const Mat2c q = period_transfer(stack, inc, k0, pol);
    const double n0 = stack.layers.front().n;
    const double k1 = k0 * std::sqrt(n0 * n0 - ne * ne);
    return bloch_cos_stratified(q.a11, k1, stack.period_L);
  };
  const double v1 = value(N_max / 4);
  const double v2 = value(N_max / 2);
  const double v3 = value(N_max);
  const double d1 = v2 - v1;
  const double d2 = v3 - v2;
  if (std::fabs(d2) > std::max(std::fabs(d1), 1e-13)) {
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "staircase sequence not contracting: %.15g, %.15g, %.15g at "
                  "k0 = %.6g",
                  v1, v2, v3, k0);
    throw numerical_error(msg);
  }
  if (err_est) *err_est = std::fabs(d2) / 3.0;
  return v3 + d2 / 3.0;
}

}  // namespace pcband

#include "pcband/stratified.hpp"

#include <algorithm>
#include <cmath>

#include "pcband/errors.hpp"

namespace pcband {

double LayerStack::min_n() const {
  double v = layers.empty() ? 0.0 : layers.front().n;
  for (const Layer& l : layers) v = std::min(v, l.n);
  return v;
}

double LayerStack::max_n() const {
  double v = layers.empty() ? 0.0 : layers.front().n;
  for (const Layer& l : layers) v = std::max(v, l.n);
  return v;
}

LayerStack make_layer_stack(std::vector<LayerStack::Layer> layers) {
  if (layers.empty()) {
    throw precondition_error("make_layer_stack: no layers");
  }
  double L = 0.0;
  for (const auto& l : layers) {
    if (!(l.d > 0.0)) {
      throw precondition_error("make_layer_stack: layer thickness must be > 0");
    }
    if (!(l.n > 0.0)) {
      throw precondition_error("make_layer_stack: layer index must be > 0");
    }
    L += l.d;
  }
  LayerStack s;
  s.layers = std::move(layers);
  s.period_L = L;
  s.x_start = -L / 2;
  s.interfaces.reserve(s.layers.size());
  double x = s.x_start;
  for (const auto& l : s.layers) {
    x += l.d;
    s.interfaces.push_back(x);
  }
  // Pin the closing interface to exactly x_start + L despite summation
  // roundoff, so the period closes identically.
  s.interfaces.back() = s.x_start + L;
  return s;
}

Mat2c jump_matrix(Polarization pol, double n_j, double n_j1, cdouble k_j,
                  cdouble k_j1, double X_j) {
  if (std::abs(k_j) == 0.0 || std::abs(k_j1) == 0.0) {
    throw singularity_error("jump_matrix: zero wavenumber at the interface");
  }
  const double r =
      pol == Polarization::TM ? (n_j1 * n_j1) / (n_j * n_j) : 1.0;
  const cdouble ap = (k_j1 + r * k_j) / (2.0 * k_j1);
  const cdouble am = (k_j1 - r * k_j) / (2.0 * k_j1);
  const cdouble jph{0.0, 1.0};
  const cdouble ed = std::exp(jph * (k_j1 - k_j) * X_j);
  const cdouble es = std::exp(jph * (k_j1 + k_j) * X_j);
  Mat2c q;
  q.a11 = ap * ed;
  q.a12 = am * es;
  q.a21 = am / es;
  q.a22 = ap / ed;
  return q;
}

Mat2c period_transfer(const LayerStack& stack, const IncidenceConfig& inc,
                      double k0, Polarization pol) {
  const double ne2 = inc.n_eff * inc.n_eff;
  auto wavenum = [&](double n) -> cdouble {
    const double g2 = n * n - ne2;
    if (g2 >= 0.0) return {k0 * std::sqrt(g2), 0.0};
    return {0.0, k0 * std::sqrt(-g2)};
  };
  const int m = static_cast<int>(stack.layers.size());
  Mat2c q = Mat2c::identity();
  for (int j = 0; j < m; ++j) {
    const int jn = (j + 1 == m) ? 0 : j + 1;
    const double nj = stack.layers[j].n;
    const double nj1 = stack.layers[jn].n;
    const Mat2c step = jump_matrix(pol, nj, nj1, wavenum(nj), wavenum(nj1),
                                   stack.interfaces[j]);
    q = mat2_mul(step, q);
  }
  return q;
}

LayerStack staircase(const Profile& p, int N) {
  if (N < 2) {
    throw precondition_error("staircase: need at least 2 layers");
  }
  const double L = p.period_L;
  const double lo = -L / 2;
  const double eps = 1e-9 * L;

  std::vector<double> edges;
  edges.reserve(static_cast<std::size_t>(N) + p.jumps.size() + 1);
  for (int i = 0; i <= N; ++i) edges.push_back(lo + L * i / N);
  for (const Jump& j : p.jumps) {
    if (j.x <= lo + eps || j.x >= lo + L - eps) continue; // seam handled by wrap
    const auto it = std::lower_bound(edges.begin(), edges.end(), j.x);
    // Replace a uniform edge that lands within eps; otherwise insert.
    if (it != edges.end() && std::abs(*it - j.x) <= eps) {
      *it = j.x;
    } else if (it != edges.begin() && std::abs(*(it - 1) - j.x) <= eps) {
      *(it - 1) = j.x;
    } else {
      edges.insert(it, j.x);
    }
  }

  std::vector<LayerStack::Layer> layers;
  layers.reserve(edges.size() - 1);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double mid = 0.5 * (edges[i] + edges[i + 1]);
    layers.push_back({p.n(mid), edges[i + 1] - edges[i]});
  }
  LayerStack s = make_layer_stack(std::move(layers));
  s.label = p.label.empty() ? "staircase" : p.label + "-staircase";
  return s;
}

LayerStack stack_from_profile(const Profile& p) {
  if (!p.piecewise_constant) {
    throw precondition_error(
        "stack_from_profile: profile is not piecewise-constant");
  }
  const double L = p.period_L;
  const double lo = -L / 2;
  const double eps = 1e-12 * L;

  std::vector<double> edges{lo};
  for (const Jump& j : p.jumps) {
    if (j.x > lo + eps && j.x < lo + L - eps) edges.push_back(j.x);
  }
  edges.push_back(lo + L);
  std::sort(edges.begin(), edges.end());

  std::vector<LayerStack::Layer> layers;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double mid = 0.5 * (edges[i] + edges[i + 1]);
    layers.push_back({p.n(mid), edges[i + 1] - edges[i]});
  }
  LayerStack s = make_layer_stack(std::move(layers));
  s.label = p.label;
  return s;
}

}  // namespace pcband

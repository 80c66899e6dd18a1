#include "pcband/quad.hpp"

#include <algorithm>
#include <cmath>

namespace pcband::quad {

namespace {

// Oscillation-aware subdivision of one smooth segment: sample the phase on
// a dense grid, accumulate its total variation, and place edges at equal
// increments of that variation so fast-phase regions get more panels.
void plan_segment(double a, double b,
                  const std::function<double(double)>& phase,
                  const Options& opt, std::vector<double>& edges) {
  int panels = opt.base_panels;
  constexpr int kSamples = 256; // phase sampled at kSamples+1 points

  if (phase && b > a) {
    std::array<double, kSamples + 1> tv; // cumulative |d phase|
    tv[0] = 0.0;
    double prev = phase(a);
    for (int i = 1; i <= kSamples; ++i) {
      const double x = a + (b - a) * i / kSamples;
      const double cur = phase(x);
      tv[i] = tv[i - 1] + std::abs(cur - prev);
      prev = cur;
    }
    const double cycles = tv[kSamples] / (2.0 * M_PI);
    panels = std::max(panels,
                      static_cast<int>(std::ceil(cycles * opt.panels_per_cycle)));
    panels = std::min(panels, 4096);

    if (tv[kSamples] > 0.0) {
      // Invert the cumulative variation at equal increments.
      int j = 0;
      for (int p = 1; p < panels; ++p) {
        const double target = tv[kSamples] * p / panels;
        while (j < kSamples && tv[j + 1] < target) ++j;
        const double t0 = tv[j], t1 = tv[j + 1];
        const double x0 = a + (b - a) * j / kSamples;
        const double x1 = a + (b - a) * (j + 1) / kSamples;
        const double frac = (t1 > t0) ? (target - t0) / (t1 - t0) : 0.5;
        double x = x0 + frac * (x1 - x0);
        // Keep edges strictly increasing even on flat-phase stretches.
        x = std::max(x, edges.back() + (b - a) * 1e-12);
        if (x < b) edges.push_back(x);
      }
      edges.push_back(b);
      return;
    }
  }

  for (int p = 1; p < panels; ++p) edges.push_back(a + (b - a) * p / panels);
  edges.push_back(b);
}

}  // namespace

std::vector<double> plan_panels(double a, double b,
                                std::span<const double> interior_edges,
                                const std::function<double(double)>& phase,
                                const Options& opt) {
  std::vector<double> cuts(interior_edges.begin(), interior_edges.end());
  std::sort(cuts.begin(), cuts.end());
  const double eps = 1e-13 * std::max(1.0, std::abs(b - a));

  std::vector<double> edges;
  edges.push_back(a);
  double seg_start = a;
  for (double c : cuts) {
    if (c <= seg_start + eps || c >= b - eps) continue;
    plan_segment(seg_start, c, phase, opt, edges);
    seg_start = c;
  }
  plan_segment(seg_start, b, phase, opt, edges);
  return edges;
}

}  // namespace pcband::quad

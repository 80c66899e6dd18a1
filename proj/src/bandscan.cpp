#include "pcband/bandscan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <thread>

#include "pcband/errors.hpp"
#include "pcband/kernels.hpp"

namespace pcband {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

int thread_cap() {
  unsigned hw = std::thread::hardware_concurrency();
  int cap = hw == 0 ? 1 : int(hw);
  if (const char* env = std::getenv("PCBAND_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1)
      cap = int(std::min<long>(v, 64));
  }
  return std::max(1, cap);
}

// Relative margin of the slowest layer above cutoff; the vector kernels
// and the real-k discriminant need all wavenumbers real and away from 0.
bool stack_has_real_k(const LayerStack& s, double n_eff) {
  const double nm = s.min_n();
  if (nm <= n_eff) return false;
  return std::sqrt(nm * nm - n_eff * n_eff) >= 1e-8;
}

// The closed symmetric form integrates k'/k directly, which approaches a
// singularity where the lowest-index region nears its propagation cutoff.
// The fast path keeps a safety margin — the slowest wavenumber must retain
// a quarter of its normal-incidence value — and leaves grazing incidence
// to the general route.
bool symmetric_margin_ok(const Profile& p, double n_eff) {
  if (p.n_min <= n_eff) return false;
  return std::sqrt(p.n_min * p.n_min - n_eff * n_eff) >= 0.25 * p.n_min;
}

}  // namespace

const char* pathway_name(Pathway p) {
  switch (p) {
    case Pathway::Auto: return "auto";
    case Pathway::Symmetric: return "symmetric";
    case Pathway::General: return "general";
    case Pathway::Stratified: return "stratified";
  }
  return "?";
}

double DispersionEvaluator::period() const {
  return use_stack_ ? stack_.period_L : profile_->period_L;
}

bool DispersionEvaluator::stack_real_k() const {
  return use_stack_ && stack_has_real_k(stack_, inc_.n_eff);
}

DispersionEvaluator::DispersionEvaluator(const Profile& p,
                                         const IncidenceConfig& inc,
                                         Polarization pol, Pathway pathway,
                                         int staircase_layers)
    : profile_(&p), inc_(inc), pol_(pol) {
  const bool symmetric_ok =
      p.symmetric && p.jumps.empty() && symmetric_margin_ok(p, inc.n_eff);
  switch (pathway) {
    case Pathway::Auto:
      if (p.piecewise_constant)
        used_ = Pathway::Stratified;
      else if (symmetric_ok)
        used_ = Pathway::Symmetric;
      else
        used_ = Pathway::General;
      break;
    case Pathway::Symmetric:
      if (!p.symmetric)
        throw precondition_error(
            "symmetric pathway: profile is not symmetric");
      if (!p.jumps.empty())
        throw precondition_error(
            "symmetric pathway: profile has discontinuities; the closed "
            "form treats them only approximately (use auto or stratified)");
      if (!symmetric_margin_ok(p, inc.n_eff)) {
        char msg[160];
        std::snprintf(msg, sizeof msg,
                      "symmetric pathway: incidence too close to the "
                      "propagation cutoff (n_eff = %.6g, min n = %.6g); use "
                      "the general route",
                      inc.n_eff, p.n_min);
        throw precondition_error(msg);
      }
      used_ = Pathway::Symmetric;
      break;
    case Pathway::General:
      used_ = Pathway::General;
      break;
    case Pathway::Stratified:
      used_ = Pathway::Stratified;
      break;
  }

  if (used_ == Pathway::Stratified) {
    stack_ = p.piecewise_constant ? stack_from_profile(p)
                                  : staircase(p, staircase_layers);
    use_stack_ = true;
  } else if (used_ == Pathway::General) {
    // Resolve the window geometry once: smooth pieces split at interior
    // jumps, plus the period-closing jump when the seam is discontinuous.
    const double half = p.period_L / 2;
    const double eps = 1e-12 * p.period_L;
    n_ref_ = p.n(-half);
    for (const Jump& j : p.jumps) {
      if (std::fabs(j.x + half) <= eps) {
        has_seam_jump_ = true;
        seam_jump_ = j;
        n_ref_ = j.n_right;  // the window-interior side of the seam
      } else {
        interior_jumps_.push_back(j);
      }
    }
    std::sort(interior_jumps_.begin(), interior_jumps_.end(),
              [](const Jump& a, const Jump& b) { return a.x < b.x; });
  }
}

DispersionEvaluator::DispersionEvaluator(const LayerStack& stack,
                                         const IncidenceConfig& inc,
                                         Polarization pol, Pathway pathway)
    : stack_(stack), use_stack_(true), inc_(inc), pol_(pol) {
  if (pathway != Pathway::Auto && pathway != Pathway::Stratified)
    throw precondition_error(
        "layer stacks evaluate on the stratified pathway only");
  used_ = Pathway::Stratified;
}

double DispersionEvaluator::eval_symmetric(double k0) const {
  const TransferContext ctx = TransferContext::make(*profile_, inc_, k0, pol_);
  const SymmetricParts parts = symmetric_parts(ctx, &cache_);
  return bloch_cos_symmetric(parts.m, parts.u, parts.kbar_L);
}

double DispersionEvaluator::eval_general(double k0, std::string* note) const {
  const Profile& p = *profile_;
  const TransferContext ctx = TransferContext::make(p, inc_, k0, pol_);
  const double half = p.period_L / 2;
  const double ne = inc_.n_eff;

  auto side_k = [&](double n) {
    return std::sqrt(cdouble(n * n - ne * ne, 0.0)) * k0;
  };

  Mat2c q{1.0, 0.0, 0.0, 1.0};
  double a = -half;
  for (const Jump& j : interior_jumps_) {
    q = mat2_mul(transfer_matrix(ctx, a, j.x), q);
    q = mat2_mul(jump_matrix(pol_, j.n_left, j.n_right, side_k(j.n_left),
                             side_k(j.n_right), j.x),
                 q);
    a = j.x;
  }
  q = mat2_mul(transfer_matrix(ctx, a, half), q);
  if (has_seam_jump_)
    q = mat2_mul(jump_matrix(pol_, seam_jump_.n_left, seam_jump_.n_right,
                             side_k(seam_jump_.n_left),
                             side_k(seam_jump_.n_right), half),
                 q);

  const cdouble k_ref = side_k(n_ref_);
  const cdouble c = bloch_cos_general(q.a11, q.a22, k_ref, p.period_L);
  if (std::fabs(c.imag()) > 1e-8 * std::max(1.0, std::fabs(c.real())) &&
      note)
    *note = "discarded imaginary part " + std::to_string(c.imag());
  return c.real();
}

double DispersionEvaluator::eval_stratified(double k0,
                                            std::string* note) const {
  const LayerStack& s = stack_;
  const double ne = inc_.n_eff;
  if (stack_has_real_k(s, ne)) {
    // Same code path sample-for-sample as the batched scan: one kernel
    // call with the frequency in every lane.
    const int m = int(s.layers.size());
    std::vector<double> n(m), X(m);
    for (int j = 0; j < m; ++j) {
      n[j] = s.layers[j].n;
      X[j] = s.interfaces[j];
    }
    const double k4[4] = {k0, k0, k0, k0};
    double c4[4];
    kernels::active().stratified4(n.data(), X.data(), m, s.x_start,
                                  s.period_L, ne,
                                  pol_ == Polarization::TM, k4, c4);
    return c4[0];
  }
  // Evanescent layer present: complex product, both diagonal terms.
  const Mat2c q = period_transfer(s, inc_, k0, pol_);
  const double n0 = s.layers.front().n;
  const cdouble k_ref = std::sqrt(cdouble(n0 * n0 - ne * ne, 0.0)) * k0;
  const cdouble c = bloch_cos_general(q.a11, q.a22, k_ref, s.period_L);
  if (note) *note = "evanescent layer: complex-wavenumber route";
  return c.real();
}

double DispersionEvaluator::operator()(double omega_norm,
                                       std::string* note) const {
  if (!(omega_norm > 0))
    throw precondition_error("omega must be positive");
  const double k0 = kTwoPi * omega_norm / period();
  switch (used_) {
    case Pathway::Symmetric: return eval_symmetric(k0);
    case Pathway::General: return eval_general(k0, note);
    case Pathway::Stratified: return eval_stratified(k0, note);
    case Pathway::Auto: break;
  }
  throw precondition_error("unresolved pathway");
}

namespace {

void validate_config(const ScanConfig& cfg) {
  if (!(cfg.omega_min > 0))
    throw precondition_error("scan: omega_min must be positive");
  if (!(cfg.omega_max > cfg.omega_min))
    throw precondition_error("scan: omega_max must exceed omega_min");
  if (cfg.samples < 2)
    throw precondition_error("scan: need at least 2 samples");
  if (cfg.staircase_layers < 2)
    throw precondition_error("scan: staircase_layers must be >= 2");
}

// Shared body of both scan() overloads once an evaluator exists.
BandStructure scan_with(const DispersionEvaluator& ev, const ScanConfig& cfg) {
  BandStructure out;
  out.pathway_used = ev.pathway_used();
  const int n = cfg.samples;
  out.samples.resize(n);
  const double step = (cfg.omega_max - cfg.omega_min) / double(n - 1);
  for (int i = 0; i < n; ++i)
    out.samples[i].omega_norm = cfg.omega_min + double(i) * step;

  // Work is split at block-of-4 boundaries so the stratified kernel lanes
  // are grouped by absolute sample index regardless of the thread count.
  const int blocks = (n + 3) / 4;
  const int threads = std::min(thread_cap(), blocks);

  const LayerStack* fast_stack =
      (ev.pathway_used() == Pathway::Stratified && ev.stack_real_k())
          ? ev.stack()
          : nullptr;
  std::vector<double> fast_n, fast_X;
  if (fast_stack) {
    for (const auto& l : fast_stack->layers) fast_n.push_back(l.n);
    for (double x : fast_stack->interfaces) fast_X.push_back(x);
  }

  auto run_range = [&](int b0, int b1, const DispersionEvaluator& worker) {
    const double L = worker.period();
    for (int b = b0; b < b1; ++b) {
      const int i0 = 4 * b;
      const int cnt = std::min(4, n - i0);
      if (fast_stack) {
        double k4[4], c4[4];
        for (int l = 0; l < 4; ++l)
          k4[l] = kTwoPi * out.samples[i0 + std::min(l, cnt - 1)].omega_norm / L;
        kernels::active().stratified4(
            fast_n.data(), fast_X.data(), int(fast_n.size()),
            fast_stack->x_start, fast_stack->period_L, worker.incidence().n_eff,
            worker.polarization() == Polarization::TM, k4, c4);
        for (int l = 0; l < cnt; ++l) out.samples[i0 + l].cos_kl = c4[l];
      } else {
        for (int l = 0; l < cnt; ++l) {
          ScanSample& s = out.samples[i0 + l];
          try {
            s.cos_kl = worker(s.omega_norm, &s.note);
          } catch (const error& e) {
            s.failed = true;
            s.note = e.what();
          }
        }
      }
    }
  };

  if (threads <= 1) {
    run_range(0, blocks, ev);
  } else {
    std::vector<std::thread> pool;
    std::vector<DispersionEvaluator> workers(std::size_t(threads), ev);
    for (int t = 0; t < threads; ++t) {
      const int b0 = int(std::int64_t(blocks) * t / threads);
      const int b1 = int(std::int64_t(blocks) * (t + 1) / threads);
      pool.emplace_back(run_range, b0, b1, std::cref(workers[std::size_t(t)]));
    }
    for (auto& th : pool) th.join();
  }

  int failed = 0;
  const std::string* first_note = nullptr;
  for (ScanSample& s : out.samples) {
    if (!s.failed) {
      try {
        s.state = classify(s.cos_kl);
      } catch (const error& e) {
        s.failed = true;
        s.note = e.what();
      }
    }
    if (s.failed) {
      ++failed;
      if (!first_note) first_note = &s.note;
    }
  }
  if (failed * 20 > n) {
    char msg[256];
    std::snprintf(msg, sizeof msg,
                  "scan: %d of %d samples failed (first: %s)", failed, n,
                  first_note ? first_note->c_str() : "?");
    throw numerical_error(msg);
  }

  out.gaps = find_gap_edges(out.samples,
                            [&](double om) { return ev(om, nullptr); });

  for (ScanSample& s : out.samples) {
    int band = 0;
    for (const GapInterval& g : out.gaps)
      if (g.omega_hi <= s.omega_norm) ++band;
    s.band_index = band;
  }
  return out;
}

}  // namespace

BandStructure scan(const Profile& p, const ScanConfig& cfg) {
  validate_config(cfg);
  const DispersionEvaluator ev(p, cfg.inc, cfg.pol, cfg.pathway,
                               cfg.staircase_layers);
  return scan_with(ev, cfg);
}

BandStructure scan(const LayerStack& stack, const ScanConfig& cfg) {
  validate_config(cfg);
  const DispersionEvaluator ev(stack, cfg.inc, cfg.pol, cfg.pathway);
  return scan_with(ev, cfg);
}

std::vector<GapInterval> find_gap_edges(
    const std::vector<ScanSample>& samples,
    const std::function<double(double)>& reevaluate) {
  struct Pt {
    double om;
    double f;  // |cos| - 1
    int parity;
  };
  // A sample only counts as inside a gap beyond the edge tolerance, so an
  // isolated |cos| = 1 touching point never opens a zero-width gap.
  constexpr double kEdgeTol = 1e-12;
  std::vector<Pt> pts;
  for (const ScanSample& s : samples)
    if (!s.failed)
      pts.push_back({s.omega_norm, std::fabs(s.cos_kl) - 1.0, s.state.parity});
  if (pts.size() < 2) return {};

  auto fval = [&](double om) { return std::fabs(reevaluate(om)) - 1.0; };
  auto forbidden = [&](double f) { return f > kEdgeTol; };
  auto bisect = [&](double lo, double hi, bool lo_forb) {
    for (int it = 0; it < 64 && hi - lo > 1e-9; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (forbidden(fval(mid)) == lo_forb)
        lo = mid;
      else
        hi = mid;
    }
    return 0.5 * (lo + hi);
  };

  // Edge refinement: ordered list of gap open/close events.
  struct Event {
    double om;
    bool opens;
  };
  std::vector<Event> events;
  bool inside = forbidden(pts.front().f);
  bool half_open_lo = inside;
  if (inside) events.push_back({pts.front().om, true});
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Pt& a = pts[i];
    const Pt& b = pts[i + 1];
    const bool fa = forbidden(a.f);
    const bool fb = forbidden(b.f);
    if (fa != fb) {
      events.push_back({bisect(a.om, b.om, fa), fb});
      inside = fb;
    } else if (fa && fb && a.parity != b.parity) {
      // Opposite-parity forbidden neighbors: a narrow allowed band hides
      // between them.  Probe for it on a uniform grid.
      double neg_om = 0.0;
      double neg_f = 1.0;
      for (int k = 1; k < 64; ++k) {
        const double om = a.om + (b.om - a.om) * double(k) / 64.0;
        const double f = fval(om);
        if (f < neg_f) {
          neg_f = f;
          neg_om = om;
        }
        if (f <= kEdgeTol) break;
      }
      if (neg_f <= kEdgeTol) {
        events.push_back({bisect(a.om, neg_om, true), false});
        events.push_back({bisect(neg_om, b.om, false), true});
      }
    }
  }

  std::vector<GapInterval> gaps;
  GapInterval cur;
  bool open = false;
  for (const Event& e : events) {
    if (e.opens && !open) {
      cur = GapInterval{};
      cur.omega_lo = e.om;
      cur.half_open_lo = gaps.empty() && half_open_lo &&
                         e.om == pts.front().om;
      open = true;
    } else if (!e.opens && open) {
      cur.omega_hi = e.om;
      gaps.push_back(cur);
      open = false;
    }
  }
  if (open) {
    cur.omega_hi = pts.back().om;
    cur.half_open_hi = true;
    gaps.push_back(cur);
  }

  // Decay strength: the worst xi among interior samples, or a midpoint
  // evaluation when no sample landed inside.
  for (GapInterval& g : gaps) {
    double worst = 0.0;
    bool seen = false;
    for (const ScanSample& s : samples) {
      if (s.failed) continue;
      if (s.omega_norm >= g.omega_lo && s.omega_norm <= g.omega_hi &&
          s.state.kind == BandState::Kind::Forbidden) {
        worst = std::max(worst, s.state.xi);
        seen = true;
      }
    }
    if (!seen) {
      const BandState st =
          classify(reevaluate(0.5 * (g.omega_lo + g.omega_hi)));
      worst = st.xi;
    }
    g.max_xi = worst;
  }
  return gaps;
}

double low_freq_effective_index(const DispersionEvaluator& ev,
                                double* max_rel_dev) {
  constexpr int kPoints = 20;
  double sxy = 0.0, sxx = 0.0;
  double x[kPoints], y[kPoints];
  for (int i = 0; i < kPoints; ++i) {
    const double om = 0.001 + (0.01 - 0.001) * double(i) / (kPoints - 1);
    const double c = ev(om, nullptr);
    const BandState st = classify(c);
    if (st.kind != BandState::Kind::Allowed) {
      char msg[128];
      std::snprintf(msg, sizeof msg,
                    "low-frequency sample at omega = %.4g is not in an "
                    "allowed band (cos = %.6g)",
                    om, c);
      throw numerical_error(msg);
    }
    x[i] = kTwoPi * om;
    y[i] = st.kappa_L;
    sxy += x[i] * y[i];
    sxx += x[i] * x[i];
  }
  const double slope = sxy / sxx;
  if (max_rel_dev) {
    double worst = 0.0;
    for (int i = 0; i < kPoints; ++i)
      worst = std::max(worst, std::fabs(y[i] - slope * x[i]) /
                                  (slope * x[i]));
    *max_rel_dev = worst;
  }
  return slope;
}

double low_freq_effective_index(const Profile& p, const IncidenceConfig& inc,
                                Polarization pol, double* max_rel_dev) {
  const DispersionEvaluator ev(p, inc, pol, Pathway::Auto);
  return low_freq_effective_index(ev, max_rel_dev);
}

}  // namespace pcband

// End-to-end acceptance run.  Ten numbered checks cover the exact
// stratified pathway, the transfer-matrix algebra, the symmetric-path
// structure, pathway equivalence, polarization identities, gap ordering,
// low-frequency homogenization, independent-oracle agreement, state
// classification and performance.  Each check prints one PASS/FAIL line
// with the measured numbers next to the pinned tolerance; the process
// exit code is the number of failed checks, so a clean run exits 0.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pcband/bandscan.hpp"
#include "pcband/cli.hpp"
#include "pcband/dispersion.hpp"
#include "pcband/dtmm.hpp"
#include "pcband/errors.hpp"
#include "pcband/oracle.hpp"
#include "pcband/profile.hpp"
#include "pcband/stratified.hpp"

using namespace pcband;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string strf(const char* fmt, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, ap);
  va_end(ap);
  return buf;
}

double mdiff(const Mat2c& a, const Mat2c& b) {
  return (a - b).max_abs();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// 1. Stratified pathway vs the closed-form two-layer dispersion relation,
//    both polarizations, normal and 45-degree incidence.
Outcome check_two_layer_exact() {
  const LayerStack stack = make_layer_stack({{1.0, 0.5}, {3.0, 0.5}});
  double worst = 0.0;
  const auto t0 = std::chrono::steady_clock::now();
  for (double theta : {0.0, kPi / 4}) {
    const IncidenceConfig inc = IncidenceConfig::make(1.0, theta);
    for (Polarization pol : {Polarization::TE, Polarization::TM}) {
      const DispersionEvaluator ev(stack, inc, pol);
      for (int i = 0; i < 200; ++i) {
        const double omega = 0.01 + (1.5 - 0.01) * (i + 0.5) / 200.0;
        const double ref = analytic_two_layer(1.0, 3.0, 0.5, 0.5, inc,
                                              2.0 * kPi * omega, pol);
        worst = std::max(worst, std::fabs(ev(omega) - ref));
      }
    }
  }
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = worst <= 1e-10 && secs < 1.0;
  o.detail = strf("max|dcos|=%.2e (tol 1e-10), 200 pts x 2 pol x 2 angles in "
                  "%.2f s (limit 1 s)",
                  worst, secs);
  return o;
}

// 2. Transfer-matrix algebra on 100 random smooth intervals of the
//    sinusoidal profile: identity, inverse-reversal, determinant and the
//    additive-exponent group law.
Outcome check_transfer_algebra() {
  const Profile p = canonical_profile("sinusoidal");
  const IncidenceConfig inc = IncidenceConfig::make(1.0, kPi / 4);
  std::mt19937 rng(20260816u);
  std::uniform_real_distribution<double> pos(-0.5, 0.5);
  const double k0s[3] = {2.0 * kPi * 0.3, 2.0 * kPi * 0.7, 2.0 * kPi * 1.2};
  double m_id = 0.0, m_inv = 0.0, m_det = 0.0, m_grp = 0.0;
  for (int t = 0; t < 100; ++t) {
    const TransferContext ctx =
        TransferContext::make(p, inc, k0s[t % 3], Polarization::TE);
    const double a = pos(rng), b = pos(rng), c = pos(rng);
    m_id = std::max(m_id,
                    mdiff(transfer_matrix(ctx, a, a), Mat2c::identity()));
    const Mat2c qab = transfer_matrix(ctx, a, b);
    m_inv = std::max(m_inv, mdiff(qab.inverse(), transfer_matrix(ctx, b, a)));
    const double ratio = std::real(ctx.k(a)) / std::real(ctx.k(b));
    m_det = std::max(m_det, std::abs(qab.det() - cdouble(ratio)) /
                                std::fabs(ratio));
    const IntervalMatrix mab = interval_matrix(ctx, a, b);
    const IntervalMatrix mbc = interval_matrix(ctx, b, c);
    m_grp = std::max(
        m_grp, mdiff(compose_transfer(mab, mbc), transfer_matrix(ctx, a, c)));
  }
  Outcome o;
  o.pass = m_id <= 1e-12 && m_inv <= 1e-8 && m_det <= 1e-8 && m_grp <= 1e-8;
  o.detail = strf("Qaa-I %.1e/1e-12, inv %.1e/1e-8, det %.1e/1e-8, "
                  "group %.1e/1e-8",
                  m_id, m_inv, m_det, m_grp);
  return o;
}

// 3. Symmetric-path structure at normal incidence for the three symmetric
//    canonical profiles: M traceless with purely imaginary entries, the
//    exponential satisfying q11 = conj(q22), and a real discriminant.
Outcome check_symmetric_structure() {
  const IncidenceConfig inc = IncidenceConfig::make(1.0, 0.0);
  double re_max = 0.0, tr_max = 0.0, conj_max = 0.0, imag_max = 0.0;
  for (const char* name : {"sinusoidal", "triangular", "square"}) {
    const Profile p = canonical_profile(name);
    for (double omega : {0.3, 0.8, 1.3}) {
      const TransferContext ctx =
          TransferContext::make(p, inc, 2.0 * kPi * omega, Polarization::TE);
      const SymmetricParts parts = symmetric_parts(ctx);
      const Mat2c& m = parts.m.m;
      for (cdouble e : {m.a11, m.a12, m.a21, m.a22})
        re_max = std::max(re_max, std::fabs(e.real()));
      tr_max = std::max(tr_max, std::abs(m.trace()));
      const Mat2c q = mat2_exp_traceless(m);
      conj_max = std::max(conj_max, std::abs(q.a11 - std::conj(q.a22)));
      const double L = p.period_L;
      const cdouble c = bloch_cos_general(q.a11, q.a22, ctx.k(L / 2), L);
      imag_max = std::max(imag_max, std::fabs(c.imag()));
      (void)bloch_cos_symmetric(parts.m, parts.u, parts.kbar_L);
    }
  }
  Outcome o;
  o.pass = re_max <= 1e-10 && tr_max <= 1e-10 && conj_max <= 1e-10 &&
           imag_max <= 1e-10;
  o.detail = strf("max|Re M|=%.1e, |tr M|=%.1e, |q11-conj q22|=%.1e, "
                  "|Im cos|=%.1e (tol 1e-10)",
                  re_max, tr_max, conj_max, imag_max);
  return o;
}

// 4. The symmetric fast path and the general exponential path give the
//    same discriminant on the two smooth symmetric profiles.
Outcome check_pathway_equivalence() {
  double worst = 0.0;
  for (const char* name : {"sinusoidal", "triangular"}) {
    const Profile p = canonical_profile(name);
    for (double theta : {0.0, kPi / 4}) {
      const IncidenceConfig inc = IncidenceConfig::make(1.0, theta);
      for (Polarization pol : {Polarization::TE, Polarization::TM}) {
        const DispersionEvaluator sym(p, inc, pol, Pathway::Symmetric);
        const DispersionEvaluator gen(p, inc, pol, Pathway::General);
        for (int i = 0; i < 100; ++i) {
          const double omega = 0.01 + (1.5 - 0.01) * i / 99.0;
          worst = std::max(worst, std::fabs(sym(omega) - gen(omega)));
        }
      }
    }
  }
  Outcome o;
  o.pass = worst <= 1e-8;
  o.detail = strf("max|sym-gen|=%.2e (tol 1e-8), sin+tri, TE+TM, "
                  "theta=0,pi/4, 100 freqs each",
                  worst);
  return o;
}

// 5. At normal incidence the two polarizations solve the same problem:
//    full 600-sample scans of all four canonical profiles must coincide,
//    the square profile through the stratified route.
Outcome check_te_tm_identity() {
  const IncidenceConfig inc = IncidenceConfig::make(1.0, 0.0);
  double worst = 0.0;
  int failed = 0;
  std::string square_path;
  for (const char* name :
       {"sinusoidal", "triangular", "square", "ramp_jump"}) {
    const Profile p = canonical_profile(name);
    ScanConfig cfg;
    cfg.inc = inc;
    cfg.pol = Polarization::TE;
    const BandStructure te = scan(p, cfg);
    cfg.pol = Polarization::TM;
    const BandStructure tm = scan(p, cfg);
    if (std::string(name) == "square")
      square_path = pathway_name(te.pathway_used);
    for (std::size_t i = 0; i < te.samples.size(); ++i) {
      if (te.samples[i].failed || tm.samples[i].failed) {
        ++failed;
        continue;
      }
      worst = std::max(
          worst, std::fabs(te.samples[i].cos_kl - tm.samples[i].cos_kl));
    }
  }
  Outcome o;
  o.pass = worst <= 1e-8 && failed == 0 && square_path == "stratified";
  o.detail = strf("max|TE-TM|=%.2e (tol 1e-8), 600 samples x 4 profiles, "
                  "square via %s",
                  worst, square_path.c_str());
  return o;
}

double first_gap_width(const char* name, double theta, Polarization pol,
                       std::string* problem) {
  const Profile p = canonical_profile(name);
  ScanConfig cfg;
  cfg.omega_min = 0.01;
  cfg.omega_max = 1.0;
  cfg.samples = 500;
  cfg.pol = pol;
  cfg.inc = IncidenceConfig::make(1.0, theta);
  const BandStructure bs = scan(p, cfg);
  if (bs.gaps.empty()) {
    *problem += strf(" %s: no gap;", name);
    return 0.0;
  }
  return bs.gaps.front().omega_hi - bs.gaps.front().omega_lo;
}

// 6. Gap-size ordering: at normal incidence the square profile opens the
//    widest first gap and the triangular the narrowest; at oblique
//    incidence the TM gap is expected at least as wide as the TE gap.
Outcome check_gap_ordering() {
  std::string problem;
  const double sq0 = first_gap_width("square", 0.0, Polarization::TE, &problem);
  const double si0 =
      first_gap_width("sinusoidal", 0.0, Polarization::TE, &problem);
  const double tr0 =
      first_gap_width("triangular", 0.0, Polarization::TE, &problem);
  const bool order_ok = problem.empty() && sq0 > si0 && si0 > tr0;

  bool tm_ge_te = true;
  std::string oblique;
  for (const char* name : {"square", "sinusoidal", "triangular"}) {
    const double te =
        first_gap_width(name, kPi / 4, Polarization::TE, &problem);
    const double tm =
        first_gap_width(name, kPi / 4, Polarization::TM, &problem);
    if (!(tm >= te)) tm_ge_te = false;
    oblique += strf(" %s TM=%.4f TE=%.4f", name, tm, te);
  }
  Outcome o;
  o.pass = order_ok && tm_ge_te && problem.empty();
  o.detail = strf("theta=0 widths sq=%.4f sin=%.4f tri=%.4f (%s); "
                  "theta=pi/4%s (TM>=TE %s)%s",
                  sq0, si0, tr0, order_ok ? "ordered" : "NOT ordered",
                  oblique.c_str(), tm_ge_te ? "holds" : "FAILS",
                  problem.c_str());
  return o;
}

// 7. Low-frequency linearity: the acoustic branch of every canonical
//    profile is linear to better than 1% relative residual.
Outcome check_low_freq_linearity() {
  const IncidenceConfig inc = IncidenceConfig::make(1.0, 0.0);
  double worst = 0.0;
  for (const char* name :
       {"sinusoidal", "triangular", "square", "ramp_jump"}) {
    const Profile p = canonical_profile(name);
    double dev = 0.0;
    (void)low_freq_effective_index(p, inc, Polarization::TE, &dev);
    worst = std::max(worst, dev);
  }
  Outcome o;
  o.pass = worst < 0.01;
  o.detail = strf("max relative residual=%.2e (tol 1e-2), 4 profiles, "
                  "20-point fit",
                  worst);
  return o;
}

// 8. The two independent references (ODE monodromy, staircase limit)
//    agree with each other on the continuous profiles; the production
//    continuous pathway is compared against both, and when it deviates
//    beyond 1e-3 the verify command must report the discrepancy
//    frequency by frequency.
Outcome check_oracle_agreement() {
  const IncidenceConfig inc = IncidenceConfig::make(1.0, 0.0);
  double cross = 0.0, dtmm_dev = 0.0;
  for (const char* name : {"sinusoidal", "triangular"}) {
    const Profile p = canonical_profile(name);
    const kernels::MonodromyTables tables = build_monodromy_tables(p, inc);
    std::vector<double> omegas(15), k0s(15), mono(15);
    for (int i = 0; i < 15; ++i) {
      omegas[i] = 0.1 + (1.5 - 0.1) * i / 14.0;
      k0s[i] = 2.0 * kPi * omegas[i];
    }
    monodromy_sweep(tables, Polarization::TE, k0s, mono);
    const DispersionEvaluator ev(p, inc, Polarization::TE);
    for (int i = 0; i < 15; ++i) {
      const double stair =
          staircase_limit_cos(p, inc, k0s[i], Polarization::TE, 512);
      cross = std::max(cross, std::fabs(mono[i] - stair));
      const double c = ev(omegas[i]);
      dtmm_dev = std::max(dtmm_dev, std::fabs(c - mono[i]));
      dtmm_dev = std::max(dtmm_dev, std::fabs(c - stair));
    }
  }
  const bool cross_ok = cross <= 1e-6;
  const bool dtmm_ok = dtmm_dev <= 1e-3;
  bool reported = false;
  if (!dtmm_ok) {
    std::ostringstream out, err;
    const int rc = run_cli({"verify", "--profile", "sinusoidal",
                            "--omega-grid", "8"},
                           out, err);
    if (rc == 1) {
      const auto doc = nlohmann::json::parse(out.str());
      reported = doc.at("pass") == false && doc.at("records").size() >= 16;
    }
  }
  Outcome o;
  o.pass = cross_ok && (dtmm_ok || reported);
  o.detail = strf("oracle cross max=%.2e (tol 1e-6); pathway vs oracles "
                  "max=%.2e (tol 1e-3)%s",
                  cross, dtmm_dev,
                  dtmm_ok ? ""
                  : reported
                      ? " - deviation reported per frequency by verify "
                        "(exit 1, documented finding)"
                      : " - deviation NOT reported by verify");
  return o;
}

// 9. Classification round-trips: cos(kappa L) reproduces an allowed
//    discriminant and cosh(xi) a forbidden one.
Outcome check_classification() {
  std::mt19937 rng(99991u);
  std::uniform_real_distribution<double> draw(-3.0, 3.0);
  double worst = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double c = draw(rng);
    const BandState st = classify(c);
    if (st.kind == BandState::Kind::Forbidden)
      worst = std::max(worst, std::fabs(std::cosh(st.xi) - std::fabs(c)));
    else
      worst = std::max(worst, std::fabs(std::cos(st.kappa_L) - c));
  }
  Outcome o;
  o.pass = worst <= 1e-12;
  o.detail = strf("max round-trip residual=%.2e (tol 1e-12), 100000 draws "
                  "in [-3,3]",
                  worst);
  return o;
}

// 10. Performance: a 600-sample oblique TE scan of the sinusoidal profile
//     through the symmetric path on one thread, and the payoff of reusing
//     the frequency-independent diagonal integral across the sweep.
Outcome check_performance() {
  const Profile p = canonical_profile("sinusoidal");
  const IncidenceConfig inc = IncidenceConfig::make(1.0, kPi / 4);
  const DispersionEvaluator ev(p, inc, Polarization::TE, Pathway::Symmetric);
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < 600; ++i) {
    const double omega = 0.01 + (1.5 - 0.01) * i / 599.0;
    (void)ev(omega);
  }
  const double scan_s = seconds_since(t0);

  std::vector<double> k0s(600);
  for (int i = 0; i < 600; ++i)
    k0s[i] = 2.0 * kPi * (0.01 + (1.5 - 0.01) * i / 599.0);

  SymmetricDiagCache cache;
  (void)m_symmetric(TransferContext::make(p, inc, k0s[0], Polarization::TE),
                    &cache);  // warm the cache before timing
  const auto t1 = std::chrono::steady_clock::now();
  for (double k0 : k0s)
    (void)m_symmetric(TransferContext::make(p, inc, k0, Polarization::TE),
                      &cache);
  const double cached_s = seconds_since(t1);
  const auto t2 = std::chrono::steady_clock::now();
  for (double k0 : k0s)
    (void)m_symmetric(TransferContext::make(p, inc, k0, Polarization::TE),
                      nullptr);
  const double naive_s = seconds_since(t2);
  const double speedup = naive_s / cached_s;

  Outcome o;
  o.pass = scan_s <= 5.0 && speedup >= 1.5;
  o.detail = strf("600-sample single-thread scan %.2f s (limit 5 s); "
                  "diagonal reuse %.2fx vs recompute (floor 1.5x) - the "
                  "diagonal quadrature is %.0f%% of one evaluation under "
                  "adaptive panels",
                  scan_s, speedup,
                  100.0 * (naive_s - cached_s) / std::max(naive_s, 1e-12));
  return o;
}

}  // namespace

int main() {
  struct Check {
    const char* label;
    Outcome (*fn)();
  };
  const Check checks[] = {
      {"stratified two-layer vs closed form", check_two_layer_exact},
      {"transfer-matrix algebra", check_transfer_algebra},
      {"symmetric-path structure", check_symmetric_structure},
      {"symmetric vs general pathway", check_pathway_equivalence},
      {"TE/TM normal-incidence identity", check_te_tm_identity},
      {"first-gap width ordering", check_gap_ordering},
      {"low-frequency linearity", check_low_freq_linearity},
      {"independent oracle agreement", check_oracle_agreement},
      {"classification round-trips", check_classification},
      {"scan performance and reuse", check_performance},
  };

  int failures = 0;
  int id = 0;
  for (const Check& c : checks) {
    ++id;
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = strf("unhandled exception: %s", e.what());
    }
    if (!o.pass) ++failures;
    std::printf("%2d %-4s %-36s %s\n", id, o.pass ? "PASS" : "FAIL", c.label,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/10 passed\n", 10 - failures);
  return failures;
}

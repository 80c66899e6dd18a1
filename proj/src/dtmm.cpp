#include "pcband/dtmm.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "pcband/errors.hpp"
#include "pcband/quad.hpp"

namespace pcband {

namespace {

constexpr cdouble kJ{0.0, 1.0};

// All periodic translates of the window position w that fall inside
// [lo, hi] (inclusive within eps).
void translates_in(double w, double L, double lo, double hi, double eps,
                   std::vector<double>& out) {
  const long m0 = static_cast<long>(std::floor((lo - eps - w) / L));
  for (long m = m0; ; ++m) {
    const double x = w + static_cast<double>(m) * L;
    if (x > hi + eps) break;
    if (x >= lo - eps) out.push_back(x);
  }
}

// exp with the closed traceless form when applicable.
Mat2c exp_interval(const Mat2c& m) {
  const double scale = std::max(m.max_abs(), 1.0);
  if (std::abs(m.trace()) <= 1e-12 * scale) return mat2_exp_traceless(m);
  return mat2_exp(m);
}

struct PointTerms {
  cdouble k;    // local wavenumber
  cdouble s;    // k'/2k
  double t;     // n'/n
  cdouble e2p;  // e^{+j2kx}
  cdouble e2m;  // e^{-j2kx}
  cdouble jkpx; // j k' x
};

PointTerms point_terms(const TransferContext& ctx, double x) {
  const double n = ctx.profile->n(x);
  const double dn = ctx.profile->dn(x);
  PointTerms pt;
  pt.k = ctx.k(x);
  if (std::abs(pt.k) < 1e-14 * ctx.k0) {
    throw singularity_error(
        "coefficient matrix singular: wavenumber cutoff k(x) = 0 at x = " +
        std::to_string(x));
  }
  const cdouble kp = ctx.k0 * ctx.k0 * n * dn / pt.k;
  pt.s = kp / (2.0 * pt.k);
  pt.t = dn / n;
  pt.e2p = std::exp(cdouble(0.0, 2.0) * pt.k * x);
  pt.e2m = std::exp(cdouble(0.0, -2.0) * pt.k * x);
  pt.jkpx = kJ * kp * x;
  return pt;
}

void require_symmetric_real_k(const TransferContext& ctx, const char* op) {
  const Profile& p = *ctx.profile;
  if (!p.symmetric) {
    throw precondition_error(std::string(op) +
                             ": profile is not even-symmetric");
  }
  if (!(p.n_min > ctx.inc.n_eff)) {
    throw precondition_error(
        std::string(op) +
        ": wavenumber is complex somewhere on the period; use "
        "interval_matrix on the general path instead");
  }
  if (std::sqrt(p.n_min * p.n_min - ctx.inc.n_eff * ctx.inc.n_eff) < 1e-8) {
    throw singularity_error(std::string(op) +
                            ": wavenumber passes within 1e-8*k0 of cutoff");
  }
}

}  // namespace

TransferContext TransferContext::make(const Profile& p,
                                      const IncidenceConfig& inc, double k0,
                                      Polarization pol) {
  if (!(k0 > 0.0)) {
    throw precondition_error("TransferContext: k0 must be positive");
  }
  TransferContext ctx;
  ctx.profile = &p;
  ctx.inc = inc;
  ctx.k0 = k0;
  ctx.pol = pol;
  return ctx;
}

cdouble TransferContext::k(double x) const {
  const double n = profile->n(x);
  const double g2 = n * n - inc.n_eff * inc.n_eff;
  if (g2 >= 0.0) return {k0 * std::sqrt(g2), 0.0};
  return {0.0, k0 * std::sqrt(-g2)};
}

Mat2c u_matrix(const TransferContext& ctx, double x) {
  if (ctx.pol != Polarization::TE) {
    throw precondition_error("u_matrix: context is not TE");
  }
  const PointTerms pt = point_terms(ctx, x);
  Mat2c u;
  u.a11 = -pt.s + pt.jkpx;
  u.a12 = pt.s * pt.e2p;
  u.a21 = pt.s * pt.e2m;
  u.a22 = -pt.s - pt.jkpx;
  return u;
}

Mat2c v_matrix(const TransferContext& ctx, double x) {
  if (ctx.pol != Polarization::TM) {
    throw precondition_error("v_matrix: context is not TM");
  }
  const PointTerms pt = point_terms(ctx, x);
  Mat2c v;
  v.a11 = -pt.s + pt.t + pt.jkpx;
  v.a12 = (pt.s - pt.t) * pt.e2p;
  v.a21 = (pt.s - pt.t) * pt.e2m;
  v.a22 = -pt.s + pt.t - pt.jkpx;
  return v;
}

IntervalMatrix interval_matrix(const TransferContext& ctx, double a,
                               double b) {
  IntervalMatrix out;
  out.a = a;
  out.b = b;
  out.pol = ctx.pol;
  if (a == b) return out;
  if (b < a) {
    IntervalMatrix rev = interval_matrix(ctx, b, a);
    out.m = rev.m * cdouble(-1.0, 0.0);
    return out;
  }

  const Profile& p = *ctx.profile;
  const double L = p.period_L;
  const double eps = 1e-12 * L;

  // Jumps strictly inside the interval make U distributional; refuse.
  std::vector<double> hits;
  for (const Jump& j : p.jumps) {
    hits.clear();
    translates_in(j.x, L, a + eps, b - eps, 0.0, hits);
    if (!hits.empty()) {
      throw precondition_error(
          "interval_matrix: profile discontinuity inside (" +
          std::to_string(a) + ", " + std::to_string(b) + ") at x = " +
          std::to_string(hits.front()) + "; splice a jump matrix instead");
    }
  }

  // Kinks become exact panel edges.
  std::vector<double> cuts;
  for (double kx : p.kinks) translates_in(kx, L, a + eps, b - eps, 0.0, cuts);

  // Near-cutoff guard: sampled minimum of |k| over the interval.
  {
    double min_abs_k = std::abs(ctx.k(a));
    const int m = 512;
    for (int i = 0; i < m; ++i) {
      const double x = a + (b - a) * (i + 0.5) / m;
      min_abs_k = std::min(min_abs_k, std::abs(ctx.k(x)));
    }
    min_abs_k = std::min(min_abs_k, std::abs(ctx.k(b)));
    if (min_abs_k < 1e-8 * ctx.k0) {
      throw singularity_error(
          "interval_matrix: wavenumber passes within 1e-8*k0 of cutoff "
          "inside the interval");
    }
  }

  quad::Options opt;
  opt.abs_tol = 1e-10;
  auto phase = [&](double x) { return 2.0 * ctx.k(x).real() * x; };
  const std::vector<double> edges = quad::plan_panels(a, b, cuts, phase, opt);

  const bool tm = ctx.pol == Polarization::TM;
  auto f = [&](double x, double* comp) {
    const Mat2c u = tm ? v_matrix(ctx, x) : u_matrix(ctx, x);
    comp[0] = u.a11.real();
    comp[1] = u.a11.imag();
    comp[2] = u.a12.real();
    comp[3] = u.a12.imag();
    comp[4] = u.a21.real();
    comp[5] = u.a21.imag();
    comp[6] = u.a22.real();
    comp[7] = u.a22.imag();
  };
  const auto v = quad::integrate<8>(f, edges, opt);
  out.m.a11 = {v[0], v[1]};
  out.m.a12 = {v[2], v[3]};
  out.m.a21 = {v[4], v[5]};
  out.m.a22 = {v[6], v[7]};
  return out;
}

Mat2c transfer_matrix(const TransferContext& ctx, double a, double b) {
  return exp_interval(interval_matrix(ctx, a, b).m);
}

Mat2c compose_transfer(const IntervalMatrix& ab, const IntervalMatrix& bc) {
  if (ab.pol != bc.pol) {
    throw precondition_error("compose_transfer: polarization mismatch");
  }
  const double span = std::max({std::abs(ab.a), std::abs(bc.b), 1.0});
  if (std::abs(ab.b - bc.a) > 1e-9 * span) {
    throw precondition_error(
        "compose_transfer: intervals do not share the middle endpoint");
  }
  return exp_interval(bc.m + ab.m);
}

namespace {

// k0-independent diagonal base L*(s(L/2) - s_mean).  The s_mean quadrature
// runs at unit k0 so the cached and per-call values are bit-identical no
// matter which frequency triggers the computation.
double diag_base(const TransferContext& ctx, SymmetricDiagCache* cache) {
  const Profile& p = *ctx.profile;
  if (cache->valid && cache->profile == &p &&
      cache->n_eff == ctx.inc.n_eff) {
    return cache->base;
  }
  const double ne2 = ctx.inc.n_eff * ctx.inc.n_eff;
  const double nh = p.n(p.period_L / 2);
  const double s_half = std::sqrt(nh * nh - ne2);
  const double s_mean = average_wavenumber(p, ctx.inc, 1.0);
  const double base = p.period_L * (s_half - s_mean);
  cache->profile = &p;
  cache->n_eff = ctx.inc.n_eff;
  cache->base = base;
  cache->valid = true;
  return base;
}

// Shared body of the two symmetric-window builders; `tm` switches the
// off-diagonal integrand and the jump-term coefficient.
IntervalMatrix m_symmetric_impl(const TransferContext& ctx,
                                SymmetricDiagCache* cache, bool tm) {
  const Profile& p = *ctx.profile;
  const double L = p.period_L;
  const double half = L / 2;
  const double ne2 = ctx.inc.n_eff * ctx.inc.n_eff;
  const double k0 = ctx.k0;

  SymmetricDiagCache local;
  const double base = diag_base(ctx, cache ? cache : &local);

  // Off-diagonal integral over [0, L/2]:
  //   TE: sin(2k(x)x) * k'/k,      k'/k = n n' / (n^2 - n_eff^2)
  //   TM: sin(2k(x)x) * (k'/k - 2n'/n)
  const double eps = 1e-12 * L;
  std::vector<double> cuts;
  for (double kx : p.kinks) {
    if (kx > eps && kx < half - eps) cuts.push_back(kx);
  }
  for (const Jump& j : p.jumps) {
    if (j.x > eps && j.x < half - eps) cuts.push_back(j.x);
  }

  quad::Options opt;
  opt.abs_tol = 1e-10;
  auto s_of = [&](double n) { return std::sqrt(n * n - ne2); };
  auto phase = [&](double x) {
    return 2.0 * k0 * s_of(p.n(x)) * x;
  };
  auto f = [&](double x, double* comp) {
    const double n = p.n(x);
    const double dn = p.dn(x);
    double w = n * dn / (n * n - ne2);
    if (tm) w -= 2.0 * dn / n;
    comp[0] = std::sin(2.0 * k0 * s_of(n) * x) * w;
  };
  const auto edges = quad::plan_panels(0.0, half, cuts, phase, opt);
  double integral = quad::integrate<1>(f, edges, opt)[0];

  // Index steps contribute midpoint-convention jump terms; exact structure,
  // approximate magnitude (see header).
  for (const Jump& j : p.jumps) {
    if (!(j.x > eps && j.x < half - eps)) continue;
    const double km = k0 * s_of(j.n_left);
    const double kp = k0 * s_of(j.n_right);
    double coeff = std::log(kp / km);
    if (tm) coeff -= 2.0 * std::log(j.n_right / j.n_left);
    integral += std::sin((km + kp) * j.x) * coeff;
  }

  IntervalMatrix out;
  out.a = -half;
  out.b = half;
  out.pol = tm ? Polarization::TM : Polarization::TE;
  out.m.a11 = kJ * (k0 * base);
  out.m.a22 = -out.m.a11;
  out.m.a12 = kJ * integral;
  out.m.a21 = -out.m.a12;
  return out;
}

}  // namespace

IntervalMatrix m_symmetric(const TransferContext& ctx,
                           SymmetricDiagCache* cache) {
  if (ctx.pol != Polarization::TE) {
    throw precondition_error("m_symmetric: context is not TE");
  }
  require_symmetric_real_k(ctx, "m_symmetric");
  return m_symmetric_impl(ctx, cache, /*tm=*/false);
}

IntervalMatrix m_symmetric_tm(const TransferContext& ctx,
                              SymmetricDiagCache* cache) {
  if (ctx.pol != Polarization::TM) {
    throw precondition_error("m_symmetric_tm: context is not TM");
  }
  require_symmetric_real_k(ctx, "m_symmetric_tm");
  return m_symmetric_impl(ctx, cache, /*tm=*/true);
}

cdouble m12_by_substitution(const TransferContext& ctx) {
  if (ctx.pol != Polarization::TE) {
    throw precondition_error("m12_by_substitution: context is not TE");
  }
  const Profile& p = *ctx.profile;
  if (!(p.n_min > ctx.inc.n_eff)) {
    throw precondition_error(
        "m12_by_substitution: wavenumber must be real on [0, L/2]");
  }
  const double L = p.period_L;
  const double half = L / 2;
  const double ne2 = ctx.inc.n_eff * ctx.inc.n_eff;
  auto k_of_x = [&](double x) {
    const double n = p.n(x);
    return ctx.k0 * std::sqrt(n * n - ne2);
  };

  // Strict monotonicity check on 256 samples.
  const int m = 256;
  std::vector<double> ks(m);
  for (int i = 0; i < m; ++i) ks[i] = k_of_x(half * i / (m - 1));
  const double k_lo = ks.front();
  const double k_hi = ks.back();
  if (std::abs(k_hi - k_lo) <= 1e-12 * ctx.k0) {
    // Equal endpoints mean an empty k-range only when the whole window is
    // constant; otherwise x(k) is multivalued and the substitution is out.
    double spread = 0.0;
    for (double kv : ks) spread = std::max(spread, std::abs(kv - k_lo));
    if (spread <= 1e-12 * ctx.k0) return {0.0, 0.0}; // constant k
    throw precondition_error(
        "m12_by_substitution: k(x) is not strictly monotonic on [0, L/2]");
  }
  const double dir = k_hi > k_lo ? 1.0 : -1.0;
  for (int i = 0; i + 1 < m; ++i) {
    if (!((ks[i + 1] - ks[i]) * dir > 0.0)) {
      throw precondition_error(
          "m12_by_substitution: k(x) is not strictly monotonic on [0, L/2]");
    }
  }

  // Bisection inverse x(k) on [0, L/2] to 1e-12*L.
  const bool increasing = dir > 0.0;
  auto x_of_k = [&](double kv) {
    double lo = 0.0, hi = half;
    while (hi - lo > 1e-12 * L) {
      const double mid = 0.5 * (lo + hi);
      if ((k_of_x(mid) < kv) == increasing) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  };

  quad::Options opt;
  opt.abs_tol = 1e-10;
  auto phase = [&](double kv) { return 2.0 * x_of_k(kv) * kv; };
  auto f = [&](double kv, double* comp) {
    comp[0] = std::sin(2.0 * x_of_k(kv) * kv) / kv;
  };
  const double a = std::min(k_lo, k_hi);
  const double b = std::max(k_lo, k_hi);
  const auto edges = quad::plan_panels(a, b, {}, phase, opt);
  double integral = quad::integrate<1>(f, edges, opt)[0];
  if (!increasing) integral = -integral;
  return kJ * integral;
}

SymmetricParts symmetric_parts(const TransferContext& ctx,
                               SymmetricDiagCache* cache) {
  SymmetricDiagCache local;
  SymmetricDiagCache* c = cache ? cache : &local;
  SymmetricParts out;
  out.m = ctx.pol == Polarization::TE ? m_symmetric(ctx, c)
                                      : m_symmetric_tm(ctx, c);
  const Profile& p = *ctx.profile;
  const double ne2 = ctx.inc.n_eff * ctx.inc.n_eff;
  const double nh = p.n(p.period_L / 2);
  const double s_half = std::sqrt(nh * nh - ne2);
  out.u = ctx.k0 * s_half * p.period_L;
  out.kbar_L = ctx.k0 * (s_half * p.period_L - c->base);
  return out;
}

}  // namespace pcband

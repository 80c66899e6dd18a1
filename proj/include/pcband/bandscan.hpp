#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pcband/dispersion.hpp"
#include "pcband/profile.hpp"
#include "pcband/stratified.hpp"

namespace pcband {

// Evaluation route for the one-period transfer matrix.
//   Symmetric  - closed-form discriminant for symmetric continuous
//                profiles with real wavenumber everywhere (fastest; the
//                k-bar diagonal is cached across frequencies).
//   General    - exp(M) over smooth pieces spliced with interface jump
//                matrices; handles asymmetric profiles and evanescent
//                regions.
//   Stratified - exact product of interface matrices; the only route for
//                layer stacks, exact for piecewise-constant profiles, and
//                a staircase approximation for continuous ones.
//   Auto       - piecewise-constant -> Stratified; symmetric, jump-free
//                and propagating -> Symmetric; otherwise General.
enum class Pathway { Auto, Symmetric, General, Stratified };

const char* pathway_name(Pathway p);

struct ScanConfig {
  double omega_min = 0.01; // normalized frequency L/lambda0
  double omega_max = 1.5;
  int samples = 600;
  Polarization pol = Polarization::TE;
  IncidenceConfig inc;
  Pathway pathway = Pathway::Auto;
  int staircase_layers = 256; // Stratified route on a continuous profile
};

struct ScanSample {
  double omega_norm = 0.0;
  double cos_kl = 0.0;
  BandState state;
  int band_index = 0;
  std::string note;  // non-fatal annotations (discarded Im parts, fallbacks)
  bool failed = false;
};

// One forbidden interval.  Edges are refined by bisection to 1e-9 in
// normalized frequency; a gap cut off by the scan boundary is flagged
// half-open on that side.
struct GapInterval {
  double omega_lo = 0.0;
  double omega_hi = 0.0;
  double max_xi = 0.0;
  bool half_open_lo = false;
  bool half_open_hi = false;
};

struct BandStructure {
  std::vector<ScanSample> samples;
  std::vector<GapInterval> gaps;
  Pathway pathway_used = Pathway::Auto;
};

// Point evaluator omega -> cos(kappa*L) on a resolved pathway.  The
// referenced Profile must outlive the evaluator.  Instances carry a small
// per-instance cache, so share one instance per thread, not across
// threads; copies are cheap and independent.
class DispersionEvaluator {
public:
  DispersionEvaluator(const Profile& p, const IncidenceConfig& inc,
                      Polarization pol, Pathway pathway = Pathway::Auto,
                      int staircase_layers = 256);
  DispersionEvaluator(const LayerStack& stack, const IncidenceConfig& inc,
                      Polarization pol, Pathway pathway = Pathway::Auto);

  Pathway pathway_used() const { return used_; }
  const IncidenceConfig& incidence() const { return inc_; }
  Polarization polarization() const { return pol_; }
  double period() const;

  // cos(kappa*L) at one normalized frequency.  `note`, when given, may
  // receive a non-fatal annotation.  Throws pcband::error subclasses.
  double operator()(double omega_norm, std::string* note = nullptr) const;

  // Stratified route internals (null on the other routes): scan() feeds
  // these through the frequency-batched kernels.
  const LayerStack* stack() const { return use_stack_ ? &stack_ : nullptr; }
  bool stack_real_k() const;

private:
  Pathway used_ = Pathway::Auto;
  const Profile* profile_ = nullptr;
  LayerStack stack_;
  bool use_stack_ = false;
  IncidenceConfig inc_;
  Polarization pol_;
  mutable SymmetricDiagCache cache_;
  // General-route geometry, resolved once.
  std::vector<Jump> interior_jumps_;
  bool has_seam_jump_ = false;
  Jump seam_jump_{};
  double n_ref_ = 0.0;

  double eval_symmetric(double k0) const;
  double eval_general(double k0, std::string* note) const;
  double eval_stratified(double k0, std::string* note) const;
};

// Sweep [omega_min, omega_max], classify every sample, and locate gap
// edges.  Sample evaluation parallelizes over hardware threads (capped by
// the PCBAND_THREADS environment variable); results are independent of
// the thread count.  More than 5% failed samples raises numerical_error.
BandStructure scan(const Profile& p, const ScanConfig& cfg);
BandStructure scan(const LayerStack& stack, const ScanConfig& cfg);

// Gap intervals from a classified, frequency-sorted sample list.
// `reevaluate` supplies fresh cos(kappa*L) values for the bisection
// refinement between samples.
std::vector<GapInterval> find_gap_edges(
    const std::vector<ScanSample>& samples,
    const std::function<double(double)>& reevaluate);

// Slope of the acoustic branch: through-origin least-squares fit of
// kappa*L against k0*L over 20 points in omega = [0.001, 0.01].  Every
// point must classify as allowed.  Optionally reports the worst relative
// deviation from the fit (the linearity of the branch).
double low_freq_effective_index(const DispersionEvaluator& ev,
                                double* max_rel_dev = nullptr);
double low_freq_effective_index(const Profile& p, const IncidenceConfig& inc,
                                Polarization pol,
                                double* max_rel_dev = nullptr);

}  // namespace pcband

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "pcband/dispersion.hpp"
#include "pcband/kernels.hpp"
#include "pcband/oracle.hpp"
#include "pcband/profile.hpp"
#include "pcband/stratified.hpp"

using namespace pcband;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct StackArrays {
  std::vector<double> n;
  std::vector<double> X;
  double x_start;
  double period_L;
};

StackArrays arrays_of(const LayerStack& s) {
  StackArrays a;
  for (const auto& l : s.layers) a.n.push_back(l.n);
  a.X = s.interfaces;
  a.x_start = s.x_start;
  a.period_L = s.period_L;
  return a;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("implementation roster") {
  const auto impls = kernels::available();
  REQUIRE(!impls.empty());
  CHECK(std::find(impls.begin(), impls.end(), kernels::Impl::Scalar) !=
        impls.end());
  for (auto impl : impls) {
    const auto& d = kernels::get(impl);
    CHECK(d.impl == impl);
    CHECK(d.monodromy4 != nullptr);
    CHECK(d.stratified4 != nullptr);
    CHECK(d.sincos4 != nullptr);
    CHECK(kernels::impl_name(impl) != nullptr);
  }
  const auto& act = kernels::active();
  CHECK(std::find(impls.begin(), impls.end(), act.impl) != impls.end());
}

TEST_CASE("sincos4 equals the standard library") {
  std::mt19937 rng(401);
  std::uniform_real_distribution<double> d(-100.0, 100.0);
  for (auto impl : kernels::available()) {
    const auto& disp = kernels::get(impl);
    for (int it = 0; it < 250; ++it) {
      double x[4], s[4], c[4];
      for (double& v : x) v = d(rng);
      disp.sincos4(x, s, c);
      for (int l = 0; l < 4; ++l) {
        CHECK(std::abs(s[l] - std::sin(x[l])) <= 5e-15);
        CHECK(std::abs(c[l] - std::cos(x[l])) <= 5e-15);
      }
    }
  }
}

TEST_CASE("stratified4: vector variants match scalar and the matrix path") {
  const LayerStack two = make_layer_stack({{1.0, 0.5}, {3.0, 0.5}});
  const Profile sinp = canonical_profile("sinusoidal");
  const LayerStack stair = staircase(sinp, 64);
  const IncidenceConfig inc = IncidenceConfig::make(1.0, kPi / 4);

  for (const LayerStack* stp : {&two, &stair}) {
    const StackArrays a = arrays_of(*stp);
    const int layers = int(a.n.size());
    for (bool tm : {false, true}) {
      const Polarization pol = tm ? Polarization::TM : Polarization::TE;
      const double k0[4] = {2.0 * kPi * 0.1, 2.0 * kPi * 0.35, 2.0 * kPi * 0.8,
                            2.0 * kPi * 1.4};
      double ref[4];
      kernels::get(kernels::Impl::Scalar)
          .stratified4(a.n.data(), a.X.data(), layers, a.x_start, a.period_L,
                       inc.n_eff, tm, k0, ref);

      // Scalar lanes against the Mat2c product route.
      for (int l = 0; l < 4; ++l) {
        const Mat2c q = period_transfer(*stp, inc, k0[l], pol);
        const double n1 = stp->layers[0].n;
        const double k1 = k0[l] * std::sqrt(n1 * n1 - inc.n_eff * inc.n_eff);
        const double want = bloch_cos_stratified(q.a11, k1, stp->period_L);
        CHECK(std::abs(ref[l] - want) <= 1e-12);
      }

      for (auto impl : kernels::available()) {
        double got[4];
        kernels::get(impl).stratified4(a.n.data(), a.X.data(), layers,
                                       a.x_start, a.period_L, inc.n_eff, tm,
                                       k0, got);
        for (int l = 0; l < 4; ++l) CHECK(std::abs(got[l] - ref[l]) <= 1e-13);
      }
    }
  }
}

TEST_CASE("stratified4: deep stacks stay in agreement") {
  const Profile sinp = canonical_profile("sinusoidal");
  const LayerStack stair = staircase(sinp, 512);
  const StackArrays a = arrays_of(stair);
  const IncidenceConfig inc = IncidenceConfig::make(1.0, 0.0);
  const double k0[4] = {2.0 * kPi * 0.2, 2.0 * kPi * 0.6, 2.0 * kPi * 1.0,
                        2.0 * kPi * 1.5};
  double ref[4];
  kernels::get(kernels::Impl::Scalar)
      .stratified4(a.n.data(), a.X.data(), int(a.n.size()), a.x_start,
                   a.period_L, inc.n_eff, false, k0, ref);
  for (auto impl : kernels::available()) {
    double got[4];
    kernels::get(impl).stratified4(a.n.data(), a.X.data(), int(a.n.size()),
                                   a.x_start, a.period_L, inc.n_eff, false,
                                   k0, got);
    for (int l = 0; l < 4; ++l) CHECK(std::abs(got[l] - ref[l]) <= 1e-12);
  }
}

TEST_CASE("monodromy4: vector variants match scalar, Wronskian holds") {
  const Profile sinp = canonical_profile("sinusoidal");
  const IncidenceConfig inc = IncidenceConfig::make(1.0, kPi / 4);
  const auto tables = build_monodromy_tables(sinp, inc);
  const double k0[4] = {2.0 * kPi * 0.15, 2.0 * kPi * 0.4, 2.0 * kPi * 0.9,
                        2.0 * kPi * 1.3};
  for (bool tm : {false, true}) {
    double ref[4], refdet[4];
    kernels::get(kernels::Impl::Scalar)
        .monodromy4(tables, k0, tm, ref, refdet);
    if (!tm) {
      // Abel's identity: no first-derivative term, so det W = 1.
      for (int l = 0; l < 4; ++l) CHECK(std::abs(refdet[l] - 1.0) <= 1e-8);
    }
    for (auto impl : kernels::available()) {
      double got[4], det[4];
      kernels::get(impl).monodromy4(tables, k0, tm, got, det);
      for (int l = 0; l < 4; ++l) {
        CHECK(std::abs(got[l] - ref[l]) <= 1e-13);
        CHECK(std::abs(det[l] - refdet[l]) <= 1e-10);
      }
    }
  }
}

}  // TEST_SUITE

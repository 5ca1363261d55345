#include <cmath>
#include <random>

#include "doctest.h"
#include "multitrace/cumulant.hpp"
#include "multitrace/gauss_moments.hpp"
#include "multitrace/sampler.hpp"

using namespace multitrace;

namespace {

NCPoly xpow(int letter, int n) {
  NCPoly p = NCPoly::constant(CRat(1));
  for (int i = 0; i < n; ++i) p = p * NCPoly::letter(letter);
  return p;
}

RatFn constant(long v) { return RatFn::from_poly(Poly::constant(rat(v))); }

// Synthetic moment oracle with no special structure; enough to exercise
// the Moebius inversion identities.
RatFn synthetic_moment(const std::vector<int>& subset) {
  long acc = 1;
  for (int i : subset) acc += (i + 1) * (i + 2);
  Poly p({rat(acc), rat(static_cast<long>(subset.size()))});
  return RatFn::from_poly(p);
}

}  // namespace

TEST_CASE("cumulants from moments: small orders") {
  // r = 1: C_1 = E[Y_1].
  CHECK(cumulant_from_moments(1, synthetic_moment) == synthetic_moment({0}));
  // r = 2: C_2 = E[Y1 Y2] - E[Y1] E[Y2].
  CHECK(cumulant_from_moments(2, synthetic_moment) ==
        synthetic_moment({0, 1}) - synthetic_moment({0}) * synthetic_moment({1}));
  // r = 3 with the Moebius values 1, -1, 2 on Part(3).
  const RatFn direct =
      synthetic_moment({0, 1, 2}) - synthetic_moment({0}) * synthetic_moment({1, 2}) -
      synthetic_moment({1}) * synthetic_moment({0, 2}) -
      synthetic_moment({2}) * synthetic_moment({0, 1}) +
      rat(2) * (synthetic_moment({0}) * synthetic_moment({1}) * synthetic_moment({2}));
  CHECK(cumulant_from_moments(3, synthetic_moment) == direct);
}

TEST_CASE("moment-cumulant inversion round trip") {
  for (int r = 2; r <= 5; ++r) {
    // Reconstruct E_pi = sum_{pi' <= pi} C_pi' for every pi in Part(r).
    const auto parts = set_partitions(r);
    std::vector<RatFn> cums;
    for (const auto& pi : parts) cums.push_back(cumulant_from_moments(r, synthetic_moment, pi));
    for (size_t i = 0; i < parts.size(); ++i) {
      RatFn expect;
      // E_pi as the product over blocks of the oracle.
      expect = constant(1);
      for (const auto& block : parts[i].blocks()) {
        std::vector<int> subset;
        for (int e : block) subset.push_back(e - 1);
        expect = expect * synthetic_moment(subset);
      }
      RatFn reconstructed;
      for (size_t jj = 0; jj < parts.size(); ++jj)
        if (leq(parts[jj], parts[i])) reconstructed = reconstructed + cums[jj];
      CHECK(reconstructed == expect);
    }
  }
}

TEST_CASE("scaled trace cumulants, exact mode") {
  const NCPoly x2 = xpow(1, 2);
  // r = 1: constant 1, limit 1.
  const auto r1 = scaled_trace_cumulant_exact(Ensemble::GUE, {x2});
  CHECK(r1.s_of_x == constant(1));
  CHECK(r1.limit == 1);
  CHECK(r1.prefactor_exponent == 0);

  // r = 2: N^2 Var(tr X^2) = 2 exactly.
  const auto r2 = scaled_trace_cumulant_exact(Ensemble::GUE, {x2, x2});
  CHECK(r2.s_of_x == RatFn(rat(2) * Poly::monomial(2), Poly::constant(Rat(1))));
  CHECK(r2.limit == 2);
  CHECK(r2.leading_coeffs[0] == 0);
  CHECK(r2.leading_coeffs[1] == 0);

  // r = 3: everything below the N^0 term vanishes. The limit 8 counts
  // the by-hand Wick enumeration: E[(tr X^2)^3] = 1 + 6/N^2 + 8/N^4
  // (1 fully planar choice, 6 one-crossing, 8 triangle gluings), so
  // C_3 = 8/N^4 exactly.
  const auto r3 = scaled_trace_cumulant_exact(Ensemble::GUE, {x2, x2, x2});
  CHECK(r3.all_leading_vanish);
  CHECK(r3.vanishing_checked == std::vector<int>{0, 1, 2, 3});
  CHECK(r3.limit == 8);

  // Haar unitary: Var(Tr(U + U*)) = 2 E[Tr U Tr U*] = 2 in the limit.
  NCPoly re_u = NCPoly::letter(1) + NCPoly::letter(1).adjoint();
  const auto h2 = scaled_trace_cumulant_exact(Ensemble::HaarU, {re_u, re_u});
  CHECK(h2.leading_coeffs[0] == 0);
  CHECK(h2.leading_coeffs[1] == 0);
  CHECK(h2.limit == 2);
}

TEST_CASE("k-statistics on synthetic data") {
  std::mt19937 gen(17);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int n = 4000;
  std::vector<std::vector<double>> rows(n, std::vector<double>(2));
  for (auto& row : rows) {
    row[0] = normal(gen);
    row[1] = row[0] + normal(gen);  // correlated pair
  }
  auto k2 = k_statistics(rows, {0, 0});
  CHECK(std::abs(k2.value - 1.0) <= 4 * k2.stderr_);
  auto k3 = k_statistics(rows, {0, 0, 0});
  CHECK(std::abs(k3.value) <= 4 * k3.stderr_);
  auto k4 = k_statistics(rows, {0, 0, 0, 0});
  CHECK(std::abs(k4.value) <= 5 * k4.stderr_);
  // Joint cumulant C(Y0, Y1) = Cov = 1.
  auto kj = k_statistics(rows, {0, 1});
  CHECK(std::abs(kj.value - 1.0) <= 4 * kj.stderr_);

  // Poisson(2): all cumulants equal 2.
  std::poisson_distribution<int> pois(2.0);
  std::vector<std::vector<double>> prow(n, std::vector<double>(1));
  for (auto& row : prow) row[0] = pois(gen);
  auto p2 = k_statistics(prow, {0, 0});
  CHECK(std::abs(p2.value - 2.0) <= 4 * p2.stderr_);
  auto p3 = k_statistics(prow, {0, 0, 0});
  CHECK(std::abs(p3.value - 2.0) <= 4 * p3.stderr_);

  CHECK_THROWS_AS(k_statistics(std::vector<std::vector<double>>(10, {0.0}), {0, 0}),
                  ArgumentError);
}

TEST_CASE("sampled k-statistics agree with exact cumulants") {
  // Var(Tr X^2) for GUE at N=48 is exactly 2 (the r=2 scaled report).
  McConfig cfg;
  cfg.ensemble = Ensemble::GUE;
  cfg.d = 1;
  cfg.N = 48;
  cfg.draws = 4000;
  cfg.seed = 2025;
  std::vector<TestFn> h{testfn_from_poly({Rat(0), Rat(0), Rat(1)})};
  const auto mc = mc_expect_trace_product(cfg, {NCPoly::letter(1)}, h);
  // Scale tr -> Tr: multiply the raw column by N.
  std::vector<std::vector<double>> rows(mc.raw.size(), std::vector<double>(1));
  for (size_t i = 0; i < mc.raw.size(); ++i) rows[i][0] = 48.0 * mc.raw[i][0];
  const auto est = k_statistics(rows, {0, 0});
  CHECK(std::abs(est.value - 2.0) <= 4 * est.stderr_);
}

TEST_CASE("clt report at moderate size") {
  const auto rep = clt_report(Ensemble::GUE, {NCPoly::letter(1)},
                              {testfn_from_poly({Rat(0), Rat(0), Rat(1)})}, 48, 1200, 31);
  REQUIRE(rep.covariance.size() == 1);
  CHECK(std::abs(rep.covariance[0][0] - 2.0) < 0.5);
  REQUIRE_FALSE(rep.exact_covariance.empty());
  CHECK(rep.exact_covariance[0][0] == doctest::Approx(2.0));
  CHECK(rep.ks_distance[0] < 0.1);
}

TEST_CASE("free energy and observable coefficients") {
  const NCPoly x2 = xpow(1, 2);
  for (long N : {4L, 16L}) {
    const auto coeffs = free_energy_coeffs(Ensemble::GUE, {x2}, 2, N);
    REQUIRE(coeffs.size() == 2);
    CHECK(coeffs[0].k == std::vector<int>{1});
    CHECK(coeffs[0].value_at_n == 1);
    CHECK(coeffs[0].limit == 1);
    CHECK(coeffs[1].k == std::vector<int>{2});
    CHECK(coeffs[1].value_at_n == 1);
    CHECK(coeffs[1].limit == 1);
  }
  // Unbalanced Haar content kills the coefficient.
  const auto haar = free_energy_coeffs(Ensemble::HaarU, {NCPoly::letter(1)}, 1, 8);
  REQUIRE(haar.size() == 1);
  CHECK(haar[0].value_at_n == 0);

  // b_0 = E[tr g(Y)]; with g = t^2, Q = x1 under GUE this is 1.
  const auto obs = observable_coeffs(Ensemble::GUE, x2, {}, 0, 8);
  REQUIRE(obs.size() == 1);
  CHECK(obs[0].value_at_n == 1);
  // b_1 for V = t tr x1^2: equals 2 for every N.
  const auto obs1 = observable_coeffs(Ensemble::GUE, x2, {x2}, 1, 8);
  REQUIRE(obs1.size() == 2);
  CHECK(obs1[1].value_at_n == 2);
  CHECK(obs1[1].limit == 2);

  CHECK_THROWS_AS(free_energy_coeffs(Ensemble::GUE, {x2}, 5, 8), SizeError);
}

#include <cmath>

#include "doctest.h"
#include "multitrace/gauss_moments.hpp"
#include "multitrace/sampler.hpp"

using namespace multitrace;

namespace {

Word W(std::initializer_list<int> letters) {
  Word w;
  for (int i : letters) w.letters.push_back(Letter{i, false});
  return w;
}

// J = diag blocks [[0,1],[-1,0]]; quaternionic matrices satisfy
// M = J conj(M) J^{-1}.
bool is_self_dual(const Eigen::MatrixXcd& M) {
  const auto n = M.rows();
  Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index s = 0; s + 1 < n; s += 2) {
    J(s, s + 1) = 1;
    J(s + 1, s) = -1;
  }
  return (J * M.conjugate() * J.inverse() - M).norm() < 1e-10 * (1 + M.norm());
}

}  // namespace

TEST_CASE("structural predicates per draw") {
  StreamRng rng(42, 0);
  const auto gue = sample_gue(24, rng);
  CHECK((gue - gue.adjoint()).norm() < 1e-12);

  const auto goe = sample_goe(24, rng);
  CHECK((goe - goe.transpose()).norm() < 1e-12);
  CHECK(goe.imag().norm() == 0.0);

  const auto gse = sample_gse(12, rng);
  CHECK(gse.rows() == 24);
  CHECK((gse - gse.adjoint()).norm() < 1e-12);
  CHECK(is_self_dual(gse));

  const auto u = haar_unitary(24, rng);
  CHECK((u * u.adjoint() - Eigen::MatrixXcd::Identity(24, 24)).norm() < 1e-10);

  const auto o = haar_orthogonal(24, rng);
  CHECK((o * o.transpose() - Eigen::MatrixXcd::Identity(24, 24)).norm() < 1e-10);
  CHECK(o.imag().norm() == 0.0);

  const auto sp = haar_symplectic(12, rng);
  CHECK(sp.rows() == 24);
  CHECK((sp * sp.adjoint() - Eigen::MatrixXcd::Identity(24, 24)).norm() < 1e-10);
  CHECK(is_self_dual(sp));
}

TEST_CASE("ensemble means match the exact engines") {
  McConfig cfg;
  cfg.d = 1;
  cfg.draws = 2000;
  cfg.seed = 7;

  cfg.ensemble = Ensemble::GUE;
  cfg.N = 64;
  auto r = mc_expect_trace_word_product(cfg, {W({1, 1})});
  CHECK(std::abs(r.mean - 1.0) <= 4 * r.stderr_);

  cfg.ensemble = Ensemble::GOE;
  r = mc_expect_trace_word_product(cfg, {W({1, 1})});
  CHECK(std::abs(r.mean - (1.0 + 1.0 / 64)) <= 4 * r.stderr_);

  cfg.ensemble = Ensemble::GSE;
  cfg.N = 32;
  r = mc_expect_trace_word_product(cfg, {W({1, 1})});
  CHECK(std::abs(r.mean - (1.0 - 1.0 / 64)) <= 4 * r.stderr_);
}

TEST_CASE("haar unitary invariance checks") {
  McConfig cfg;
  cfg.ensemble = Ensemble::HaarU;
  cfg.d = 1;
  cfg.N = 32;
  cfg.draws = 2000;
  cfg.seed = 11;
  // E[tr U] = 0 by invariance.
  auto r = mc_expect_trace_word_product(cfg, {W({1})});
  CHECK(std::abs(r.mean) <= 4 * r.stderr_ + 1e-12);
  // E[|Tr U|^2] = 1, i.e. E[tr U tr U*] = 1/N^2.
  Word u{{Letter{1, false}}}, ustar{{Letter{1, true}}};
  r = mc_expect_trace_word_product(cfg, {u, ustar});
  CHECK(std::abs(r.mean - 1.0 / (32.0 * 32.0)) <= 4 * r.stderr_ + 1e-12);
  // E[Tr U^2 Tr U*^2] = 2 at N = 8.
  cfg.N = 8;
  cfg.draws = 4000;
  Word u2{{Letter{1, false}, Letter{1, false}}}, us2{{Letter{1, true}, Letter{1, true}}};
  r = mc_expect_trace_word_product(cfg, {u2, us2});
  CHECK(std::abs(r.mean * 64.0 - 2.0) <= 4 * r.stderr_ * 64.0);
}

TEST_CASE("reproducibility and worker independence") {
  McConfig cfg;
  cfg.ensemble = Ensemble::GUE;
  cfg.d = 2;
  cfg.N = 16;
  cfg.draws = 64;
  cfg.seed = 12345;
  cfg.workers = 1;
  const auto a = mc_expect_trace_word_product(cfg, {W({1, 2, 1, 2})});
  const auto b = mc_expect_trace_word_product(cfg, {W({1, 2, 1, 2})});
  CHECK(a.raw == b.raw);  // bit-identical streams for one worker
  cfg.workers = 4;
  const auto c = mc_expect_trace_word_product(cfg, {W({1, 2, 1, 2})});
  CHECK(a.raw == c.raw);  // worker count cannot change the draws
  CHECK(a.mean == c.mean);

  McConfig other = cfg;
  other.seed = 54321;
  const auto d = mc_expect_trace_word_product(other, {W({1, 2, 1, 2})});
  CHECK_FALSE(a.raw == d.raw);
}

TEST_CASE("semicircle histogram at N = 512") {
  StreamRng rng(2718, 0);
  const auto H = sample_gue(512, rng);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const int bins = 40;
  std::vector<double> hist(bins, 0.0);
  int used = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const double x = ev[i];
    if (x < -2.0 || x >= 2.0) continue;
    hist[static_cast<int>((x + 2.0) / 4.0 * bins)] += 1.0;
    ++used;
  }
  double tv = 0.0;
  for (int b = 0; b < bins; ++b) {
    const double lo = -2.0 + 4.0 * b / bins, hi = lo + 4.0 / bins;
    // Semicircle mass of the bin by Simpson on the density.
    const double mid = 0.5 * (lo + hi);
    auto dens = [](double x) { return std::sqrt(std::max(0.0, 4 - x * x)) / (2 * M_PI); };
    const double mass = (hi - lo) / 6.0 * (dens(lo) + 4 * dens(mid) + dens(hi));
    tv += 0.5 * std::abs(hist[b] / ev.size() - mass);
  }
  tv += 0.5 * (1.0 - static_cast<double>(used) / ev.size());
  // One-shot TV at this size concentrates near 0.025-0.03 (eigenvalue
  // count fluctuations across 40 bins); 0.05 still rejects any wrong
  // variance normalization, which lands above 0.15.
  CHECK(tv < 0.05);
}

TEST_CASE("evaluate_ncpoly") {
  StreamRng rng(5, 0);
  const auto M = sample_gue(16, rng);
  CHECK((evaluate_ncpoly({M}, NCPoly::letter(1)) - M).norm() < 1e-12);

  const auto U = haar_unitary(16, rng);
  const NCPoly uu = NCPoly::letter(1) * NCPoly::letter(1).adjoint();
  CHECK((evaluate_ncpoly({U}, uu) - Eigen::MatrixXcd::Identity(16, 16)).norm() < 1e-10);

  CHECK_THROWS_AS(evaluate_ncpoly({M}, NCPoly::letter(2)), ArgumentError);
}

TEST_CASE("trace_statistic") {
  Eigen::MatrixXcd X = Eigen::MatrixXcd::Zero(2, 2);
  X(0, 0) = 1;
  X(1, 1) = -1;
  CHECK(trace_statistic(X, [](double) { return 1.0; }) == doctest::Approx(1.0));
  CHECK(trace_statistic(X, [](double t) { return t * t; }) == doctest::Approx(1.0));
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Zero(2, 2);
  bad(0, 1) = 1;  // nilpotent, not Hermitian
  CHECK_THROWS_AS(trace_statistic(bad, [](double t) { return t; }), ArgumentError);
}

TEST_CASE("sampled independent-letter word") {
  McConfig cfg;
  cfg.ensemble = Ensemble::GUE;
  cfg.d = 2;
  cfg.N = 16;
  cfg.draws = 10000;
  cfg.seed = 99;
  const auto r = mc_expect_trace_word_product(cfg, {W({1, 2, 1, 2})});
  const double exact = expect_trace_product_gue({W({1, 2, 1, 2})}).eval(rat(1, 16)).get_d();
  CHECK(std::abs(r.mean - exact) <= 4 * r.stderr_);
}

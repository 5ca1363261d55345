#include <cmath>

#include "doctest.h"
#include "multitrace/cheb.hpp"
#include "multitrace/ncpoly.hpp"
#include "multitrace/sampler.hpp"

using namespace multitrace;

TEST_CASE("cheb_coeffs on simple functions") {
  const auto c1 = cheb_coeffs([](double) { return 1.0; }, 1.0, 33);
  CHECK(c1.a[0] == doctest::Approx(1.0).epsilon(1e-14));
  for (int j = 1; j <= c1.degree(); ++j) CHECK(std::abs(c1.a[j]) < 1e-13);

  const double K = 2.5;
  const auto cx = cheb_coeffs([](double x) { return x; }, K, 33);
  CHECK(cx.a[1] == doctest::Approx(K).epsilon(1e-14));
  for (int j = 0; j <= cx.degree(); ++j)
    if (j != 1) CHECK(std::abs(cx.a[j]) < 1e-12);

  const auto cx2 = cheb_coeffs([](double x) { return x * x; }, K, 33);
  CHECK(cx2.a[0] == doctest::Approx(K * K / 2).epsilon(1e-13));
  CHECK(cx2.a[2] == doctest::Approx(K * K / 2).epsilon(1e-13));

  CHECK_THROWS_AS(cheb_coeffs([](double) { return 1.0; }, 1.0, 16), ArgumentError);
  CHECK_THROWS_AS(cheb_coeffs([](double) { return 1.0; }, 1.0, 34), ArgumentError);
  CHECK_THROWS_AS(
      cheb_coeffs([](double x) { return 1.0 / (x - 1.0); }, 1.0, 33), NumericError);
}

TEST_CASE("exact Chebyshev conversion of polynomials") {
  // x^3 on [-1, 1] = (3/4) T_1 + (1/4) T_3.
  const auto c = cheb_of_poly({Rat(0), Rat(0), Rat(0), Rat(1)}, Rat(1));
  CHECK(c == std::vector<Rat>{Rat(0), rat(3, 4), Rat(0), rat(1, 4)});

  // T_5 = 16 t^5 - 20 t^3 + 5 t converts back to the unit vector at 5.
  const auto t5 = cheb_of_poly({Rat(0), rat(5), Rat(0), rat(-20), Rat(0), rat(16)}, Rat(1));
  CHECK(t5 == std::vector<Rat>{Rat(0), Rat(0), Rat(0), Rat(0), Rat(0), Rat(1)});

  CHECK(cheb_of_poly({rat(7)}, rat(3)) == std::vector<Rat>{rat(7)});

  // Even polynomials have exactly zero odd coefficients.
  const auto even = cheb_of_poly({Rat(1), Rat(0), rat(-2), Rat(0), Rat(1)}, rat(2));
  for (size_t j = 1; j < even.size(); j += 2) CHECK(even[j] == 0);

  // Round trip through evaluation at rational points: sum a_j T_j(x/K)
  // equals the original polynomial (checked numerically on a grid).
  ChebSeries s;
  s.K = 2.0;
  for (const auto& q : cheb_of_poly({Rat(1), rat(-1), Rat(0), rat(2)}, rat(2)))
    s.a.push_back(q.get_d());
  for (double x = -2.0; x <= 2.0; x += 0.25) {
    const double direct = 1 - x + 2 * x * x * x;
    CHECK(s.eval(x) == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("tails and truncation") {
  const auto poly3 = cheb_coeffs([](double x) { return x * x * x; }, 1.0, 33);
  CHECK(tail_bound(poly3, 3) < 1e-13);

  const auto ce = cheb_coeffs([](double x) { return std::exp(x); }, 2.0, 129);
  CHECK(tail_bound(ce, 20) < 1e-12);
  // Doubling the node count stabilizes the tail of an analytic h (both
  // interpolants already resolve the true coefficients here).
  const auto ce2 = cheb_coeffs([](double x) { return std::exp(x); }, 2.0, 257);
  CHECK(tail_bound(ce2, 12) <= tail_bound(ce, 12) * 1.01 + 1e-14);
  const auto ce_coarse = cheb_coeffs([](double x) { return std::exp(x); }, 2.0, 17);
  CHECK(tail_bound(ce, 12) < tail_bound(ce_coarse, 12) + 1e-15);

  const auto t = truncate(ce, 10);
  CHECK(t.degree() == 10);
  CHECK(t.tail == doctest::Approx(tail_bound(ce, 10)));
}

TEST_CASE("reconstruction within the declared tail") {
  // K inside the domain of analyticity of every battery function
  // (1/(2+x) has its pole at -2).
  const double K = 1.5;
  const std::vector<std::function<double(double)>> battery = {
      [](double x) { return std::exp(x); },
      [](double x) { return std::sin(x); },
      [](double x) { return 1.0 / (2.0 + x); },
  };
  for (const auto& h : battery) {
    const auto full = cheb_coeffs(h, K, 257);
    const auto s = truncate(full, 24);
    double worst = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double x = -K + 2 * K * i / 1000.0;
      worst = std::max(worst, std::abs(h(x) - s.eval(x)));
    }
    CHECK(worst <= s.tail + 1e-12);
  }
  // Even h: odd interpolant coefficients below 1e-14.
  const auto even = cheb_coeffs([](double x) { return std::cos(x) + x * x; }, 2.0, 129);
  for (int j = 1; j <= even.degree(); j += 2) CHECK(std::abs(even.a[j]) < 1e-14);
}

TEST_CASE("spectral bounds") {
  CHECK(spectral_bound(Ensemble::GUE, NCPoly::letter(1)) == doctest::Approx(2.0));
  const NCPoly u = NCPoly::letter(1);
  CHECK(spectral_bound(Ensemble::HaarU, u + u.adjoint()) == doctest::Approx(2.0));
  NCPoly cross;
  cross.add_term(Word{{Letter{1, false}, Letter{2, false}}}, CRat(rat(3)));
  cross.add_term(Word{{Letter{2, false}, Letter{1, false}}}, CRat(rat(3)));
  // 3 x1 x2 + adjoint: each term contributes 3 * 2^2.
  CHECK(spectral_bound(Ensemble::GUE, cross) == doctest::Approx(24.0));
  NCPoly single;
  single.add_term(Word{{Letter{1, false}, Letter{2, false}}}, CRat(rat(3)));
  CHECK_THROWS_AS(spectral_bound(Ensemble::GUE, single), ArgumentError);
}

TEST_CASE("spectral bound dominates sampled spectra") {
  // 99% coverage check at N = 64 over a small battery.
  const NCPoly x1 = NCPoly::letter(1);
  const NCPoly x2 = NCPoly::letter(2);
  const std::vector<NCPoly> battery = {x1, (x1 + x2) * (x1 + x2)};
  int total = 0, inside = 0;
  for (const auto& P : battery) {
    const double K = spectral_bound(Ensemble::GUE, P);
    for (int draw = 0; draw < 50; ++draw) {
      StreamRng rng(31415, draw);
      std::vector<Eigen::MatrixXcd> mats{sample_gue(64, rng), sample_gue(64, rng)};
      const Eigen::MatrixXcd X = evaluate_ncpoly(mats, P);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(X, Eigen::EigenvaluesOnly);
      const double radius = std::max(std::abs(es.eigenvalues().minCoeff()),
                                     std::abs(es.eigenvalues().maxCoeff()));
      ++total;
      if (radius <= K) ++inside;
    }
  }
  CHECK(inside >= total * 99 / 100);
}

#include <cmath>

#include "doctest.h"
#include "multitrace/expand.hpp"
#include "multitrace/selftest.hpp"

using namespace multitrace;

namespace {

NCPoly xpow(int letter, int n) {
  NCPoly p = NCPoly::constant(CRat(1));
  for (int i = 0; i < n; ++i) p = p * NCPoly::letter(letter);
  return p;
}

std::vector<Rat> R(std::initializer_list<long> v) {
  std::vector<Rat> out;
  for (long x : v) out.push_back(rat(x));
  return out;
}

}  // namespace

TEST_CASE("exact expansions") {
  CHECK(exact_expansion(Ensemble::GUE, {xpow(1, 4)}, 4).exact_coeffs == R({2, 0, 1, 0}));
  CHECK(exact_expansion(Ensemble::GUE, {xpow(1, 2)}, 3).exact_coeffs == R({1, 0, 0}));

  NCPoly u = NCPoly::letter(1);
  CHECK(exact_expansion(Ensemble::HaarU, {u, u.adjoint()}, 4).exact_coeffs == R({0, 0, 1, 0}));

  // GOE keeps odd terms; the GSE coefficients are GOE ones times (-1/2)^k.
  CHECK(exact_expansion(Ensemble::GOE, {xpow(1, 2)}, 3).exact_coeffs == R({1, 1, 0}));
  CHECK(exact_expansion(Ensemble::GSE, {xpow(1, 2)}, 3).exact_coeffs ==
        std::vector<Rat>{Rat(1), rat(-1, 2), Rat(0)});

  // Odd coefficients vanish exactly for GUE and Haar-U on the exact path.
  for (const auto& rep :
       {exact_expansion(Ensemble::GUE, {xpow(1, 4), xpow(1, 2)}, 6),
        exact_expansion(Ensemble::HaarU, {u * u, u.adjoint() * u.adjoint()}, 6)}) {
    for (size_t k = 1; k < rep.exact_coeffs.size(); k += 2) CHECK(rep.exact_coeffs[k] == 0);
  }
}

TEST_CASE("exact expansion is multilinear") {
  // expansion(2 h + h', ...) = 2 expansion(h, ...) + expansion(h', ...)
  const NCPoly h1 = xpow(1, 4);
  const NCPoly h2 = xpow(1, 2);
  const NCPoly combo = CRat(2) * h1 + h2;
  const auto a = exact_expansion(Ensemble::GUE, {h1, xpow(1, 2)}, 5).exact_coeffs;
  const auto b = exact_expansion(Ensemble::GUE, {h2, xpow(1, 2)}, 5).exact_coeffs;
  const auto c = exact_expansion(Ensemble::GUE, {combo, xpow(1, 2)}, 5).exact_coeffs;
  for (int k = 0; k < 5; ++k) CHECK(c[k] == rat(2) * a[k] + b[k]);
}

TEST_CASE("smooth path reproduces the exact path on polynomials") {
  const ExpansionReport exact = exact_expansion(Ensemble::GUE, {xpow(1, 2)}, 2);
  const ExpansionReport smooth =
      smooth_expansion(Ensemble::GUE, {NCPoly::letter(1)}, {parse_testfn("t^2")}, 2);
  CHECK(std::abs(smooth.coeffs[0] - exact.coeffs[0]) < 1e-12);
  CHECK(std::abs(smooth.coeffs[1]) < 1e-12);

  const ExpansionReport x4exact = exact_expansion(Ensemble::GUE, {xpow(1, 4)}, 4);
  const ExpansionReport x4smooth =
      smooth_expansion(Ensemble::GUE, {NCPoly::letter(1)}, {parse_testfn("t^4")}, 4);
  for (int k = 0; k < 4; ++k)
    CHECK(std::abs(x4smooth.coeffs[k] - x4exact.coeffs[k]) < 1e-10);
}

TEST_CASE("smooth expansion of exp against the semicircle integral") {
  const ExpansionReport rep =
      smooth_expansion(Ensemble::GUE, {NCPoly::letter(1)}, {parse_testfn("exp")}, 2);
  const double quad = oracle::semicircle_expectation([](double t) { return std::exp(t); });
  CHECK(std::abs(rep.coeffs[0] - quad) < 1e-6);
  CHECK(std::abs(rep.coeffs[1]) < 1e-10);
  CHECK(rep.truncation_tail < 1e-6);
  CHECK(rep.coeff_errors[0] < 1e-5);
}

TEST_CASE("smooth expansion caps") {
  CHECK_THROWS_AS(smooth_expansion(Ensemble::GUE,
                                   {NCPoly::letter(1), NCPoly::letter(1), NCPoly::letter(1),
                                    NCPoly::letter(1)},
                                   std::vector<TestFn>(4, parse_testfn("exp")), 2),
                  SizeError);
}

TEST_CASE("residual scans") {
  const auto rep = residual_scan(Ensemble::GUE, {xpow(1, 4)}, 2, {4, 8, 16, 32, 64});
  for (const auto& row : rep.residuals)
    CHECK(row.exact == rat_to_string(rat(1, row.N * row.N)));
  CHECK(rep.fitted_slope == doctest::Approx(-2.0).epsilon(0.005));

  // Full order leaves residual exactly zero.
  const auto full = residual_scan(Ensemble::GUE, {xpow(1, 4)}, 3, {4, 8});
  for (const auto& row : full.residuals) CHECK(row.exact == "0");

  // E[tr U^2 tr U*^2] = 2/N^2 exactly: once the order covers the x^2
  // term the residual is identically zero for every N > 4 (in the Tr
  // normalization the statistic is the constant 2).
  NCPoly u = NCPoly::letter(1);
  const auto haar = residual_scan(Ensemble::HaarU, {u * u, u.adjoint() * u.adjoint()}, 3,
                                  {6, 8, 12});
  for (const auto& row : haar.residuals) CHECK(row.exact == "0");
  const auto haar1 = residual_scan(Ensemble::HaarU, {u * u, u.adjoint() * u.adjoint()}, 1,
                                   {6, 8, 12});
  for (const auto& row : haar1.residuals)
    CHECK(row.exact == rat_to_string(rat(2, row.N * row.N)));
}

TEST_CASE("report serialization") {
  const auto rep = exact_expansion(Ensemble::GUE, {xpow(1, 4)}, 4);
  const auto j = rep.to_json();
  CHECK(j["ensemble"] == "gue");
  CHECK(j["exact"] == true);
  CHECK(j["coefficients"][0] == "2");
  CHECK(j["coefficients"][2] == "1");
}

#include "doctest.h"
#include "multitrace/gauss_moments.hpp"
#include "multitrace/selftest.hpp"

using namespace multitrace;

namespace {

Word W(std::initializer_list<int> letters, bool star = false) {
  Word w;
  for (int i : letters) w.letters.push_back(Letter{i, star});
  return w;
}

Poly P(std::initializer_list<long> coeffs) {
  std::vector<Rat> c;
  for (long v : coeffs) c.push_back(rat(v));
  return Poly(std::move(c));
}

const long long kCatalan[] = {1, 1, 2, 5, 14};

}  // namespace

TEST_CASE("GUE single and multi trace moments") {
  CHECK(expect_trace_product_gue({W({1, 1})}) == P({1}));
  CHECK(expect_trace_product_gue({W({1, 1, 1, 1})}) == P({2, 0, 1}));
  CHECK(expect_trace_product_gue({W({1, 1}), W({1, 1})}) == P({1, 0, 2}));
  CHECK(expect_trace_product_gue({W({1, 2, 1, 2})}) == P({0, 0, 1}));
  // Unbalanced and odd words vanish.
  CHECK(expect_trace_product_gue({W({1})}).is_zero());
  CHECK(expect_trace_product_gue({W({1, 1, 2})}).is_zero());
  // Identity traces are transparent.
  CHECK(expect_trace_product_gue({W({1, 1}), Word{}}) == P({1}));
  CHECK(expect_trace_product_gue({Word{}}) == P({1}));
}

TEST_CASE("GUE leading terms are free semicircle moments") {
  for (int m = 0; m <= 4; ++m) {
    std::vector<int> letters(2 * m, 1);
    Word w;
    for (int i : letters) w.letters.push_back(Letter{1, false});
    CHECK(expect_trace_product_gue({w}).coeff(0) == rat(kCatalan[m]));
  }
}

TEST_CASE("GUE engine matches the entrywise Wick oracle") {
  const std::vector<std::vector<Word>> tuples = {
      {W({1, 1, 1, 1})},
      {W({1, 2, 2, 1})},
      {W({1, 1, 2, 2})},
      {W({1, 2, 1, 2})},
      {W({1, 1}), W({2, 2})},
      {W({1, 2}), W({2, 1})},
      {W({1, 1, 1, 1, 1, 1})},
      {W({1}), W({1, 1, 1})},
  };
  for (const auto& tuple : tuples) {
    const Poly engine = expect_trace_product_gue(tuple);
    for (int N = 2; N <= 5; ++N)
      CHECK(engine.eval(rat(1, N)) ==
            oracle::gauss_entrywise_moment(Ensemble::GUE, tuple, N));
  }
}

TEST_CASE("GOE moments") {
  CHECK(expect_trace_product_goe({W({1, 1})}) == P({1, 1}));
  // The two-trace pair: both twists close a single loop, giving 2/N^2
  // (the entrywise oracle fixes this value).
  CHECK(expect_trace_product_goe({W({1}), W({1})}) == P({0, 0, 2}));
  for (const auto& tuple : {std::vector<Word>{W({1, 2, 1, 2})},
                            std::vector<Word>{W({1, 1, 1, 1})},
                            std::vector<Word>{W({1, 1}), W({1, 1})}}) {
    const Poly engine = expect_trace_product_goe(tuple);
    for (int N = 2; N <= 6; ++N)
      CHECK(engine.eval(rat(1, N)) ==
            oracle::gauss_entrywise_moment(Ensemble::GOE, tuple, N));
  }
}

TEST_CASE("GSE values through the duality substitution") {
  CHECK(expect_trace_product_gse_at({W({1, 1})}, 4) == rat(7, 8));
  // The constant term survives the N -> infinity limit.
  CHECK(expect_trace_product_goe({W({1, 1})}).coeff(0) == 1);
  CHECK(expect_trace_product_gse_at({W({1})}, 5) == 0);
  CHECK_THROWS_AS(expect_trace_product_gse_at({W({1, 1})}, 0), ArgumentError);
}

TEST_CASE("GUE evenness and multi-trace factorization of the leading term") {
  const std::vector<std::vector<Word>> tuples = {
      {W({1, 1}), W({1, 1})},
      {W({1, 1, 1, 1}), W({1, 1})},
      {W({1, 2, 1, 2}), W({2, 2})},
      {W({1, 1}), W({2, 2}), W({1, 1})},
  };
  for (const auto& tuple : tuples) {
    const Poly joint = expect_trace_product_gue(tuple);
    CHECK(joint.is_even());
    Rat prod(1);
    for (const auto& w : tuple) prod *= expect_trace_product_gue({w}).coeff(0);
    CHECK(joint.coeff(0) == prod);
  }
}

TEST_CASE("gauss engine errors") {
  Word starred;
  starred.letters = {Letter{1, false}, Letter{1, true}};
  CHECK_THROWS_AS(expect_trace_product_gue({starred}), ArgumentError);
  std::vector<int> big(18, 1);
  Word wbig;
  for (int i = 0; i < 18; ++i) wbig.letters.push_back(Letter{1, false});
  CHECK_THROWS_AS(expect_trace_product_gue({wbig}), SizeError);
  Word w14;
  for (int i = 0; i < 14; ++i) w14.letters.push_back(Letter{1, false});
  CHECK_THROWS_AS(expect_trace_product_goe({w14}), SizeError);
}

TEST_CASE("NCPoly products in Gaussian ensembles") {
  CHECK(expect_ncpoly_product_gauss(Ensemble::GUE, {NCPoly::constant(CRat(1))}) == P({1}));
  const NCPoly x1 = NCPoly::letter(1);
  const NCPoly x2 = NCPoly::letter(2);
  const NCPoly x1sq = x1 * x1;
  CHECK(expect_ncpoly_product_gauss(Ensemble::GUE, {x1sq, x1sq}) == P({1, 0, 2}));
  // Cross terms of (x1+x2)^2 vanish; the diagonal contributes 1 + 1.
  CHECK(expect_ncpoly_product_gauss(Ensemble::GUE, {(x1 + x2) * (x1 + x2)}) == P({2}));
  // Complex coefficients must cancel to a real value or throw.
  NCPoly ix;
  ix.add_term(Word{{Letter{1, false}, Letter{1, false}}}, CRat(Rat(0), Rat(1)));
  CHECK_THROWS_AS(expect_ncpoly_product_gauss(Ensemble::GUE, {ix}), ConsistencyError);
  CHECK(expect_ncpoly_product_gse_at({x1sq}, 4) == rat(7, 8));
}

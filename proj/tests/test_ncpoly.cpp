#include <random>

#include "doctest.h"
#include "multitrace/ncpoly.hpp"

using namespace multitrace;

namespace {

NCPoly random_ncpoly(std::mt19937& gen) {
  std::uniform_int_distribution<int> nterms(1, 4), len(0, 3), idx(1, 2), coin(0, 1);
  std::uniform_int_distribution<long> num(-3, 3);
  NCPoly p;
  const int n = nterms(gen);
  for (int t = 0; t < n; ++t) {
    Word w;
    const int l = len(gen);
    for (int i = 0; i < l; ++i)
      w.letters.push_back(Letter{idx(gen), coin(gen) == 1});
    p.add_term(w, CRat(rat(num(gen)), rat(num(gen))));
  }
  return p;
}

}  // namespace

TEST_CASE("free algebra arithmetic") {
  const NCPoly x1 = NCPoly::letter(1);
  const NCPoly x2 = NCPoly::letter(2);
  const NCPoly prod = x1 * x2;
  CHECK(prod.terms().size() == 1);
  CHECK(to_string(prod) == "x1*x2");

  const NCPoly sq = (x1 + x2) * (x1 + x2);
  CHECK(sq.terms().size() == 4);  // x1x1 + x1x2 + x2x1 + x2x2
  CHECK(sq.degree() == 2);

  CHECK(to_string((x1 * x2).pow(2)) == "x1*x2*x1*x2");
  CHECK((x1 + (CRat(rat(-1)) * x1)).is_zero());
}

TEST_CASE("substitution of univariate polynomials") {
  const NCPoly x1 = NCPoly::letter(1);
  const NCPoly x2 = NCPoly::letter(2);

  // h = t is the identity.
  const NCPoly p = x1 * x2 + x2;
  CHECK(substitute({Rat(0), Rat(1)}, p) == p);

  // h = t^2 on x1 + x2 gives the four-term square.
  const NCPoly sq = substitute({Rat(0), Rat(0), Rat(1)}, x1 + x2);
  CHECK(sq == (x1 + x2) * (x1 + x2));

  // Chebyshev T_2 = 2t^2 - 1 at x1.
  const NCPoly t2 = substitute({rat(-1), Rat(0), rat(2)}, x1);
  NCPoly expected;
  expected.add_term(Word{}, CRat(rat(-1)));
  expected.add_term(Word{{Letter{1, false}, Letter{1, false}}}, CRat(rat(2)));
  CHECK(t2 == expected);

  // Word-length cap.
  CHECK_THROWS_AS(substitute(std::vector<Rat>(14, Rat(1)), x1, 12), SizeError);

  // substitute(h1 * h2, P) = substitute(h1, P) * substitute(h2, P).
  std::mt19937 gen(4242);
  std::uniform_int_distribution<long> cv(-3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Rat> h1{rat(cv(gen)), rat(cv(gen)), rat(cv(gen))};
    std::vector<Rat> h2{rat(cv(gen)), rat(cv(gen))};
    // univariate product
    std::vector<Rat> h12(h1.size() + h2.size() - 1, Rat(0));
    for (size_t i = 0; i < h1.size(); ++i)
      for (size_t j = 0; j < h2.size(); ++j) h12[i + j] += h1[i] * h2[j];
    const NCPoly P = x1 * x2 + x2 * x1;
    CHECK(substitute(h12, P, 16) == substitute(h1, P, 16) * substitute(h2, P, 16));
    // Degree bound deg(h) * deg(P).
    CHECK(substitute(h12, P, 16).degree() <= 4 * P.degree());
  }
}

TEST_CASE("adjoint and self-adjointness") {
  const Word w{{Letter{1, false}, Letter{2, false}}};
  CHECK(w.adjoint().to_string() == "x2'*x1'");

  NCPoly p;
  p.add_term(Word{{Letter{1, false}}}, CRat(1));
  p.add_term(Word{{Letter{1, true}}}, CRat(1));
  CHECK(p.is_selfadjoint());  // x1 + x1*

  // i x1 x2 - i x2* x1* is self-adjoint.
  NCPoly q;
  q.add_term(Word{{Letter{1, false}, Letter{2, false}}}, CRat(Rat(0), Rat(1)));
  q.add_term(Word{{Letter{2, true}, Letter{1, true}}}, CRat(Rat(0), rat(-1)));
  CHECK(q.is_selfadjoint());

  CHECK_FALSE((NCPoly::letter(1) * NCPoly::letter(2)).is_selfadjoint());

  // Involution on random polynomials.
  std::mt19937 gen(31337);
  for (int trial = 0; trial < 50; ++trial) {
    const NCPoly r = random_ncpoly(gen);
    CHECK(r.adjoint().adjoint() == r);
  }
}

TEST_CASE("word reduction and rotation") {
  Word w;
  w.letters = {Letter{1, false}, Letter{1, true}, Letter{2, false}};
  CHECK(w.reduced().to_string() == "x2");
  Word uu{{Letter{1, false}, Letter{1, true}}};
  CHECK(uu.reduced().is_identity());
  Word rot{{Letter{2, false}, Letter{1, false}}};
  CHECK(rot.min_rotation().to_string() == "x1*x2");
}

TEST_CASE("polynomial text syntax") {
  const NCPoly p = parse_ncpoly("2*x1*x2^2 + x1'");
  NCPoly expected;
  expected.add_term(Word{{Letter{1, false}, Letter{2, false}, Letter{2, false}}}, CRat(2));
  expected.add_term(Word{{Letter{1, true}}}, CRat(1));
  CHECK(p == expected);

  CHECK(parse_ncpoly("u1*u1'") == NCPoly::letter(1) * NCPoly::letter(1).adjoint());
  CHECK(parse_ncpoly("(x1+x2)^2") == (NCPoly::letter(1) + NCPoly::letter(2)).pow(2));
  CHECK(parse_ncpoly("1/2*x1").terms().begin()->second == CRat(rat(1, 2)));
  CHECK(parse_ncpoly("i*x1 - i*x1") .is_zero());
  CHECK(parse_ncpoly("3 - 1").terms().begin()->second == CRat(2));

  CHECK_THROWS_AS(parse_ncpoly(""), ArgumentError);
  CHECK_THROWS_AS(parse_ncpoly("x1 +"), ArgumentError);
  CHECK_THROWS_AS(parse_ncpoly("y3"), ArgumentError);
  CHECK_THROWS_AS(parse_ncpoly("x0"), ArgumentError);

  // Round trip through printing on random polynomials.
  std::mt19937 gen(2024);
  for (int trial = 0; trial < 50; ++trial) {
    const NCPoly r = random_ncpoly(gen);
    if (r.is_zero()) continue;
    CHECK(parse_ncpoly(to_string(r)) == r);
  }
}

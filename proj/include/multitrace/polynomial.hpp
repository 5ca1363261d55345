#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "multitrace/rational.hpp"

namespace multitrace {

// Dense univariate polynomial with exact rational coefficients.
// Downstream of the moment engines the variable is always x = 1/N; the
// Weingarten engine also uses it for intermediate polynomials in N.
// Trailing zeros are trimmed, so degree() is the index of the last
// nonzero coefficient (-1 for the zero polynomial).
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly constant(Rat v) { return Poly({std::move(v)}); }
  static Poly monomial(int power, Rat coeff = Rat(1));
  static Poly variable() { return monomial(1); }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Rat coeff(int j) const {
    return j >= 0 && j < static_cast<int>(c_.size()) ? c_[j] : Rat(0);
  }
  const std::vector<Rat>& coeffs() const { return c_; }

  // True when only even powers carry nonzero coefficients.
  bool is_even() const;

  Rat eval(const Rat& x0) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Rat& s, Poly p);
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rat> c_;
};

// Quotient and remainder of exact polynomial division.
std::pair<Poly, Poly> poly_divmod(const Poly& num, const Poly& den);

// gcd normalized to leading coefficient 1.
Poly poly_gcd(Poly a, Poly b);

// True iff candidate = den * h for some polynomial h.
bool divides(const Poly& den, const Poly& candidate);

// g_q(x) = prod_{j=1}^{q} (1 - (j x)^2)^{floor(q/j)}, expanded exactly.
// This is the universal denominator shape of Haar-unitary trace moments.
Poly g_poly(int q);

// Reduced rational function in one variable. Invariants: den is not the
// zero polynomial, num/den have no common factor, and the lowest-order
// nonzero coefficient of den is 1. When den(0) != 0 (always true for
// engine outputs) that coefficient is den(0).
class RatFn {
 public:
  RatFn() : num_(), den_(Poly::constant(Rat(1))) {}
  RatFn(Poly num, Poly den);
  static RatFn from_poly(Poly p) { return RatFn(std::move(p), Poly::constant(Rat(1))); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_poly() const { return den_.degree() == 0; }

  Rat eval(const Rat& x0) const;  // throws PoleError on den(x0) == 0

  // First m Maclaurin coefficients; requires den(0) != 0.
  std::vector<Rat> series(int m) const;

  friend RatFn operator+(const RatFn& a, const RatFn& b);
  friend RatFn operator-(const RatFn& a, const RatFn& b);
  friend RatFn operator*(const RatFn& a, const RatFn& b);
  friend RatFn operator*(const Rat& s, const RatFn& r);
  friend bool operator==(const RatFn& a, const RatFn& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string to_string(const std::string& var = "x") const;

 private:
  Poly num_;
  Poly den_;
};

// Reinterprets a reduced rational function of N as one of x = 1/N.
// This is the single conversion point between the two variables.
RatFn ratfn_n_to_x(const RatFn& in_n);

// Truncated power series with exactly `order` coefficients.
struct PowerSeries {
  std::vector<Rat> coeffs;
  int order() const { return static_cast<int>(coeffs.size()); }
};

PowerSeries series_expand(const RatFn& r, int m);
PowerSeries series_expand(const Poly& p, int m);

// JSON object {"num": ["p/q", ...], "den": ["p/q", ...]}; round trips
// bit-exactly.
nlohmann::json ratfn_to_json(const RatFn& r);
nlohmann::json poly_to_json(const Poly& p);
RatFn ratfn_from_json(const nlohmann::json& j);

}  // namespace multitrace

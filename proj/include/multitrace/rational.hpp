#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>

#include "multitrace/errors.hpp"

namespace multitrace {

// Exact rational scalar. mpq_class keeps gcd(|num|, den) = 1 and den > 0
// after canonicalize(), which every constructor below guarantees.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

// Parses "p", "-p" or "p/q". Used by the JSON coefficient format.
Rat rat_from_string(const std::string& s);

std::string rat_to_string(const Rat& q);

inline double rat_to_double(const Rat& q) { return q.get_d(); }

// Complex number with exact rational real and imaginary parts; the
// coefficient domain of exact non-commutative polynomials.
struct CRat {
  Rat re{0};
  Rat im{0};

  CRat() = default;
  CRat(Rat r) : re(std::move(r)) {}  // NOLINT: implicit by design
  CRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
  CRat(long r) : re(rat(r)) {}  // NOLINT

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  CRat conj() const { return CRat(re, -im); }

  double abs() const { return std::hypot(re.get_d(), im.get_d()); }

  friend CRat operator+(const CRat& a, const CRat& b) {
    return CRat(a.re + b.re, a.im + b.im);
  }
  friend CRat operator-(const CRat& a, const CRat& b) {
    return CRat(a.re - b.re, a.im - b.im);
  }
  friend CRat operator-(const CRat& a) { return CRat(-a.re, -a.im); }
  friend CRat operator*(const CRat& a, const CRat& b) {
    return CRat(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  friend bool operator==(const CRat& a, const CRat& b) {
    return a.re == b.re && a.im == b.im;
  }
  CRat& operator+=(const CRat& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  CRat& operator*=(const CRat& o) { return *this = *this * o; }
};

std::string crat_to_string(const CRat& c);

}  // namespace multitrace

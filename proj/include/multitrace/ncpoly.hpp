#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "multitrace/errors.hpp"
#include "multitrace/rational.hpp"

namespace multitrace {

// One letter of the free alphabet: x_index or its adjoint x_index^*.
struct Letter {
  int index;  // 1-based
  bool star;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

// A monomial of the free algebra; the empty word is the identity.
// Words are not auto-reduced (u u* stays as written): the Haar engine
// treats that wiring exactly, so reduction is only a cross-check pass.
struct Word {
  std::vector<Letter> letters;

  int length() const { return static_cast<int>(letters.size()); }
  bool is_identity() const { return letters.empty(); }
  int max_letter_index() const;

  Word adjoint() const;  // reverse and toggle stars
  // u u* and u* u cancellations applied repeatedly (cross-check only).
  Word reduced() const;
  // Lexicographically minimal cyclic rotation; traces are cyclic, so this
  // canonicalizes engine memo keys.
  Word min_rotation() const;

  friend auto operator<=>(const Word&, const Word&) = default;

  std::string to_string(char symbol = 'x') const;
};

Word concat(const Word& a, const Word& b);

namespace detail {
inline CRat conj_coeff(const CRat& c) { return c.conj(); }
inline std::complex<double> conj_coeff(const std::complex<double>& c) { return std::conj(c); }
inline bool coeff_is_zero(const CRat& c) { return c.is_zero(); }
inline bool coeff_is_zero(const std::complex<double>& c) { return c == std::complex<double>(0.0); }
}  // namespace detail

// Polynomial of the free *-algebra over coefficients C (exact complex
// rationals on the engine path, complex doubles on the smooth path).
// Zero coefficients are never stored.
template <class C>
class NCPolyT {
 public:
  NCPolyT() = default;
  static NCPolyT constant(C v) {
    NCPolyT p;
    p.add_term(Word{}, std::move(v));
    return p;
  }
  static NCPolyT letter(int index, bool star = false) {
    NCPolyT p;
    p.add_term(Word{{Letter{index, star}}}, C(1));
    return p;
  }

  const std::map<Word, C>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const {
    int d = 0;
    for (const auto& [w, c] : terms_) d = std::max(d, w.length());
    return d;
  }
  int max_letter_index() const {
    int d = 0;
    for (const auto& [w, c] : terms_) d = std::max(d, w.max_letter_index());
    return d;
  }
  bool has_star() const {
    for (const auto& [w, c] : terms_)
      for (const auto& l : w.letters)
        if (l.star) return true;
    return false;
  }

  void add_term(Word w, C coeff) {
    if (detail::coeff_is_zero(coeff)) return;
    auto [it, inserted] = terms_.emplace(std::move(w), coeff);
    if (!inserted) {
      it->second += coeff;
      if (detail::coeff_is_zero(it->second)) terms_.erase(it);
    }
  }

  NCPolyT& operator+=(const NCPolyT& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  friend NCPolyT operator+(NCPolyT a, const NCPolyT& b) { return a += b; }
  friend NCPolyT operator*(const NCPolyT& a, const NCPolyT& b) {
    NCPolyT out;
    for (const auto& [wa, ca] : a.terms_)
      for (const auto& [wb, cb] : b.terms_) out.add_term(concat(wa, wb), ca * cb);
    return out;
  }
  friend NCPolyT operator*(const C& s, const NCPolyT& p) {
    NCPolyT out;
    for (const auto& [w, c] : p.terms()) out.add_term(w, s * c);
    return out;
  }
  friend bool operator==(const NCPolyT& a, const NCPolyT& b) { return a.terms_ == b.terms_; }

  NCPolyT pow(int n) const {
    NCPolyT acc = constant(C(1));
    for (int i = 0; i < n; ++i) acc = acc * (*this);
    return acc;
  }

  NCPolyT adjoint() const {
    NCPolyT out;
    for (const auto& [w, c] : terms_) out.add_term(w.adjoint(), detail::conj_coeff(c));
    return out;
  }
  bool is_selfadjoint() const { return adjoint() == *this; }

  // The adjoint when every letter stands for a self-adjoint matrix
  // (Gaussian ensembles): words reverse, coefficients conjugate, stars
  // do not toggle.
  NCPolyT adjoint_hermitian_letters() const {
    NCPolyT out;
    for (const auto& [w, c] : terms_) {
      Word rev;
      rev.letters.assign(w.letters.rbegin(), w.letters.rend());
      out.add_term(std::move(rev), detail::conj_coeff(c));
    }
    return out;
  }
  bool is_selfadjoint_hermitian_letters() const {
    return adjoint_hermitian_letters() == *this;
  }

 private:
  std::map<Word, C> terms_;
};

using NCPoly = NCPolyT<CRat>;
using NCPolyD = NCPolyT<std::complex<double>>;

// h(P) expanded in the free algebra; h given by monomial coefficients
// h(t) = sum_j h[j] t^j. The cap bounds deg(h) * deg(P): pairing and
// (sigma, tau) enumerations past it are infeasible at desk scale.
NCPoly substitute(const std::vector<Rat>& h, const NCPoly& P, int word_cap = 12);
NCPolyD substitute(const std::vector<double>& h, const NCPoly& P, int word_cap = 12);

NCPolyD to_float(const NCPoly& p);

// Text syntax, e.g. "2*x1*x2^2 + x1'" where ' is the adjoint; letters may
// be written x1.. or u1.., coefficients are rationals with optional
// imaginary unit i. Round trips through to_string.
NCPoly parse_ncpoly(const std::string& text);
std::string to_string(const NCPoly& p, char symbol = 'x');

}  // namespace multitrace

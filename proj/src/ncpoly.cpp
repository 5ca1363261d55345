#include "multitrace/ncpoly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace multitrace {

int Word::max_letter_index() const {
  int d = 0;
  for (const auto& l : letters) d = std::max(d, l.index);
  return d;
}

Word Word::adjoint() const {
  Word out;
  out.letters.reserve(letters.size());
  for (auto it = letters.rbegin(); it != letters.rend(); ++it)
    out.letters.push_back(Letter{it->index, !it->star});
  return out;
}

Word Word::reduced() const {
  std::vector<Letter> stack;
  for (const auto& l : letters) {
    if (!stack.empty() && stack.back().index == l.index && stack.back().star != l.star)
      stack.pop_back();
    else
      stack.push_back(l);
  }
  return Word{std::move(stack)};
}

Word Word::min_rotation() const {
  if (letters.size() < 2) return *this;
  Word best = *this;
  Word rot = *this;
  for (size_t i = 1; i < letters.size(); ++i) {
    std::rotate(rot.letters.begin(), rot.letters.begin() + 1, rot.letters.end());
    if (rot < best) best = rot;
  }
  return best;
}

std::string Word::to_string(char symbol) const {
  if (letters.empty()) return "1";
  std::ostringstream out;
  size_t i = 0;
  while (i < letters.size()) {
    size_t j = i;
    while (j < letters.size() && letters[j] == letters[i]) ++j;
    if (i) out << "*";
    out << symbol << letters[i].index;
    if (letters[i].star) out << "'";
    if (j - i > 1) out << "^" << (j - i);
    i = j;
  }
  return out.str();
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
  return out;
}

template <class C>
static NCPolyT<C> substitute_impl(const std::vector<C>& h, const NCPoly& P, int word_cap) {
  int hdeg = static_cast<int>(h.size()) - 1;
  while (hdeg >= 0 && detail::coeff_is_zero(h[hdeg])) --hdeg;
  if (hdeg >= 1 && hdeg * P.degree() > word_cap) {
    throw SizeError("substitute: deg(h)*deg(P) = " + std::to_string(hdeg * P.degree()) +
                    " exceeds word-length cap " + std::to_string(word_cap));
  }
  NCPolyT<C> acc;
  NCPolyT<C> power = NCPolyT<C>::constant(C(1));
  NCPolyT<C> base;
  for (const auto& [w, c] : P.terms()) base.add_term(w, C(c.re.get_d(), c.im.get_d()));
  for (int j = 0; j <= hdeg; ++j) {
    if (!detail::coeff_is_zero(h[j])) acc += h[j] * power;
    if (j < hdeg) power = power * base;
  }
  return acc;
}

// Exact-path specialization keeps rational coefficients exact.
NCPoly substitute(const std::vector<Rat>& h, const NCPoly& P, int word_cap) {
  int hdeg = static_cast<int>(h.size()) - 1;
  while (hdeg >= 0 && h[hdeg] == 0) --hdeg;
  if (hdeg >= 1 && hdeg * P.degree() > word_cap)
    throw SizeError("substitute: deg(h)*deg(P) = " + std::to_string(hdeg * P.degree()) +
                    " exceeds word-length cap " + std::to_string(word_cap));
  NCPoly acc;
  NCPoly power = NCPoly::constant(CRat(1));
  for (int j = 0; j <= hdeg; ++j) {
    if (h[j] != 0) acc += CRat(h[j]) * power;
    if (j < hdeg) power = power * P;
  }
  return acc;
}

NCPolyD substitute(const std::vector<double>& h, const NCPoly& P, int word_cap) {
  std::vector<std::complex<double>> hc(h.begin(), h.end());
  return substitute_impl<std::complex<double>>(hc, P, word_cap);
}

NCPolyD to_float(const NCPoly& p) {
  NCPolyD out;
  for (const auto& [w, c] : p.terms())
    out.add_term(w, std::complex<double>(c.re.get_d(), c.im.get_d()));
  return out;
}

namespace {

struct Parser {
  const std::string& s;
  size_t pos = 0;

  explicit Parser(const std::string& text) : s(text) {}

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw ArgumentError("polynomial syntax error at position " + std::to_string(pos) + ": " + msg);
  }

  // expr := term (('+'|'-') term)*
  NCPoly parse_expr() {
    NCPoly acc;
    bool negate = false;
    if (peek() == '+' || peek() == '-') negate = (s[pos++] == '-');
    acc += parse_term(negate);
    while (!eof()) {
      char c = peek();
      if (c == '+' || c == '-') {
        ++pos;
        acc += parse_term(c == '-');
      } else {
        fail(std::string("unexpected character '") + c + "'");
      }
    }
    return acc;
  }

  // term := factor ('*' factor)*   with implicit '*' before letters
  NCPoly parse_term(bool negate) {
    NCPoly acc = parse_factor();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos;
        acc = acc * parse_factor();
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '(') {
        acc = acc * parse_factor();
      } else {
        break;
      }
    }
    if (negate) acc = CRat(rat(-1)) * acc;
    return acc;
  }

  // factor := atom ('^' int)?
  NCPoly parse_factor() {
    NCPoly base = parse_atom();
    if (peek() == '^') {
      ++pos;
      const int e = parse_uint("exponent");
      base = base.pow(e);
    }
    return base;
  }

  // atom := number | 'i' | letter | '(' expr ')'
  NCPoly parse_atom() {
    skip_ws();
    if (pos >= s.size()) fail("unexpected end of input");
    char c = s[pos];
    if (c == '(') {
      ++pos;
      NCPoly inner = parse_paren_expr();
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return parse_number();
    if (c == 'i' && !is_letter_start()) {
      ++pos;
      return maybe_adjoint(NCPoly::constant(CRat(Rat(0), Rat(1))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_letter();
    fail(std::string("unexpected character '") + c + "'");
  }

  bool is_letter_start() {
    // "i" followed by a digit would be a letter name like i1; the
    // alphabet only uses x/u, so bare i is the imaginary unit.
    return pos + 1 < s.size() && s[pos] == 'i' && std::isdigit(static_cast<unsigned char>(s[pos + 1]));
  }

  NCPoly parse_paren_expr() {
    // Like parse_expr but stops at ')'.
    NCPoly acc;
    bool negate = false;
    if (peek() == '+' || peek() == '-') negate = (s[pos++] == '-');
    acc += parse_term(negate);
    while (peek() == '+' || peek() == '-') {
      char c = s[pos++];
      acc += parse_term(c == '-');
    }
    if (peek() != ')') fail("expected ')'");
    ++pos;
    return maybe_adjoint_poly(acc);
  }

  NCPoly maybe_adjoint(NCPoly p) { return maybe_adjoint_poly(std::move(p)); }

  NCPoly maybe_adjoint_poly(NCPoly p) {
    while (peek() == '\'') {
      ++pos;
      p = p.adjoint();
    }
    return p;
  }

  int parse_uint(const char* what) {
    skip_ws();
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
      fail(std::string("expected ") + what);
    long v = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      v = v * 10 + (s[pos++] - '0');
      if (v > 1000000) fail("integer too large");
    }
    return static_cast<int>(v);
  }

  NCPoly parse_number() {
    long num = parse_uint("number");
    Rat q = rat(num);
    if (peek() == '/') {
      ++pos;
      long den = parse_uint("denominator");
      if (den == 0) fail("zero denominator");
      q = rat(num, den);
    }
    CRat coeff(q);
    skip_ws();
    if (pos < s.size() && s[pos] == 'i' && !is_letter_start()) {
      ++pos;
      coeff = CRat(Rat(0), q);
    }
    return maybe_adjoint(NCPoly::constant(coeff));
  }

  NCPoly parse_letter() {
    char sym = s[pos];
    if (sym != 'x' && sym != 'u' && sym != 't')
      fail(std::string("unknown symbol '") + sym + "' (expected x<k>, u<k> or t)");
    ++pos;
    int index = 1;
    if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      index = parse_uint("letter index");
    } else if (sym != 't') {
      fail("letter needs an index, e.g. x1");
    }
    if (index < 1 || index > 64) fail("letter index out of range [1, 64]");
    return maybe_adjoint(NCPoly::letter(index, false));
  }
};

}  // namespace

NCPoly parse_ncpoly(const std::string& text) {
  Parser p(text);
  if (p.eof()) throw ArgumentError("empty polynomial");
  return p.parse_expr();
}

std::string to_string(const NCPoly& p, char symbol) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [w, c] : p.terms()) {
    CRat coeff = c;
    bool neg = false;
    if (c.im == 0 && c.re < 0) {
      neg = true;
      coeff = CRat(-c.re);
    } else if (c.re == 0 && c.im < 0) {
      neg = true;
      coeff = CRat(Rat(0), -c.im);
    }
    out << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    first = false;
    const std::string cs = crat_to_string(coeff);
    // Mixed re/im coefficients bind tighter than the term's +/- only when
    // parenthesized.
    const bool parens = (coeff.re != 0 && coeff.im != 0);
    if (w.is_identity()) {
      out << (parens ? "(" + cs + ")" : cs);
      continue;
    }
    if (cs != "1") out << (parens ? "(" + cs + ")" : cs) << "*";
    out << w.to_string(symbol);
  }
  return out.str();
}

}  // namespace multitrace

#include "multitrace/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace multitrace {

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::monomial(int power, Rat coeff) {
  if (coeff == 0) return Poly();
  std::vector<Rat> c(power + 1, Rat(0));
  c[power] = std::move(coeff);
  return Poly(std::move(c));
}

bool Poly::is_even() const {
  for (size_t j = 1; j < c_.size(); j += 2)
    if (c_[j] != 0) return false;
  return true;
}

Rat Poly::eval(const Rat& x0) const {
  Rat acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x0 + *it;
  return acc;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rat(0));
  for (size_t j = 0; j < o.c_.size(); ++j) c_[j] += o.c_[j];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rat(0));
  for (size_t j = 0; j < o.c_.size(); ++j) c_[j] -= o.c_[j];
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Rat> c(a.c_.size() + b.c_.size() - 1, Rat(0));
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return Poly(std::move(c));
}

Poly operator*(const Rat& s, Poly p) {
  if (s == 0) return Poly();
  for (auto& c : p.c_) c *= s;
  return p;
}

std::string Poly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (size_t j = 0; j < c_.size(); ++j) {
    if (c_[j] == 0) continue;
    Rat a = c_[j];
    if (!first) {
      out << (a > 0 ? " + " : " - ");
      if (a < 0) a = -a;
    }
    first = false;
    if (j == 0 || a != 1) out << rat_to_string(a);
    if (j > 0) {
      if (a != 1) out << "*";
      out << var;
      if (j > 1) out << "^" << j;
    }
  }
  return out.str();
}

std::pair<Poly, Poly> poly_divmod(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw ArgumentError("polynomial division by zero");
  std::vector<Rat> rem = num.coeffs();
  const int dn = den.degree();
  const Rat lead = den.coeff(dn);
  if (num.degree() < dn) return {Poly(), num};
  std::vector<Rat> quo(num.degree() - dn + 1, Rat(0));
  for (int j = num.degree(); j >= dn; --j) {
    if (rem[j] == 0) continue;
    Rat f = rem[j] / lead;
    quo[j - dn] = f;
    for (int i = 0; i <= dn; ++i) rem[j - dn + i] -= f * den.coeff(i);
  }
  return {Poly(std::move(quo)), Poly(std::move(rem))};
}

Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = poly_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return (Rat(1) / a.coeff(a.degree())) * a;
}

bool divides(const Poly& den, const Poly& candidate) {
  if (den.is_zero()) return candidate.is_zero();
  return poly_divmod(candidate, den).second.is_zero();
}

Poly g_poly(int q) {
  if (q < 1 || q > 30) throw SizeError("g_poly: q out of range [1, 30]");
  Poly acc = Poly::constant(Rat(1));
  for (int j = 1; j <= q; ++j) {
    // 1 - (j x)^2
    Poly factor({Rat(1), Rat(0), rat(-static_cast<long>(j) * j)});
    for (int e = 0; e < q / j; ++e) acc = acc * factor;
  }
  return acc;
}

RatFn::RatFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw ArgumentError("rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = Poly::constant(Rat(1));
    return;
  }
  Poly g = poly_gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = poly_divmod(num_, g).first;
    den_ = poly_divmod(den_, g).first;
  }
  // Lowest-order nonzero denominator coefficient becomes 1.
  int v = 0;
  while (den_.coeff(v) == 0) ++v;
  Rat s = Rat(1) / den_.coeff(v);
  num_ = s * num_;
  den_ = s * den_;
}

Rat RatFn::eval(const Rat& x0) const {
  Rat d = den_.eval(x0);
  if (d == 0) throw PoleError("rational function evaluated at a pole");
  return num_.eval(x0) / d;
}

std::vector<Rat> RatFn::series(int m) const {
  if (den_.coeff(0) == 0) throw PoleError("series expansion at a pole of the denominator");
  std::vector<Rat> s(m, Rat(0));
  const Rat d0 = den_.coeff(0);
  for (int j = 0; j < m; ++j) {
    Rat acc = num_.coeff(j);
    for (int i = 0; i < j; ++i) acc -= s[i] * den_.coeff(j - i);
    s[j] = acc / d0;
  }
  return s;
}

RatFn operator+(const RatFn& a, const RatFn& b) {
  return RatFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFn operator-(const RatFn& a, const RatFn& b) {
  return RatFn(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatFn operator*(const RatFn& a, const RatFn& b) {
  return RatFn(a.num_ * b.num_, a.den_ * b.den_);
}

RatFn operator*(const Rat& s, const RatFn& r) {
  return RatFn(s * r.num_, r.den_);
}

std::string RatFn::to_string(const std::string& var) const {
  if (is_poly()) return num_.to_string(var);
  return "(" + num_.to_string(var) + ") / (" + den_.to_string(var) + ")";
}

RatFn ratfn_n_to_x(const RatFn& in_n) {
  // A(N)/B(N) = x^(D - deg A) rev(A) / x^(D - deg B) rev(B) with D the
  // larger degree; reversal realizes the substitution N = 1/x.
  const Poly& a = in_n.num();
  const Poly& b = in_n.den();
  if (a.is_zero()) return RatFn();
  const int d = std::max(a.degree(), b.degree());
  auto reversed = [d](const Poly& p) {
    std::vector<Rat> c(d + 1, Rat(0));
    for (int j = 0; j <= p.degree(); ++j) c[d - j] = p.coeff(j);
    return Poly(std::move(c));
  };
  return RatFn(reversed(a), reversed(b));
}

PowerSeries series_expand(const RatFn& r, int m) {
  return PowerSeries{r.series(m)};
}

PowerSeries series_expand(const Poly& p, int m) {
  std::vector<Rat> s(m, Rat(0));
  for (int j = 0; j < m; ++j) s[j] = p.coeff(j);
  return PowerSeries{std::move(s)};
}

nlohmann::json ratfn_to_json(const RatFn& r) {
  nlohmann::json j;
  auto dump = [](const Poly& p) {
    std::vector<std::string> v;
    for (int i = 0; i <= p.degree(); ++i) v.push_back(rat_to_string(p.coeff(i)));
    if (v.empty()) v.push_back("0");
    return v;
  };
  j["num"] = dump(r.num());
  j["den"] = dump(r.den());
  return j;
}

nlohmann::json poly_to_json(const Poly& p) {
  return ratfn_to_json(RatFn::from_poly(p));
}

RatFn ratfn_from_json(const nlohmann::json& j) {
  auto load = [](const nlohmann::json& arr) {
    std::vector<Rat> c;
    for (const auto& s : arr) c.push_back(rat_from_string(s.get<std::string>()));
    return Poly(std::move(c));
  };
  return RatFn(load(j.at("num")), load(j.at("den")));
}

}  // namespace multitrace

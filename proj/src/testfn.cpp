#include "multitrace/testfn.hpp"

#include <cctype>
#include <cmath>

#include "multitrace/ncpoly.hpp"
#include "multitrace/polynomial.hpp"

namespace multitrace {

namespace {

std::function<double(double)> poly_eval_fn(std::vector<double> c) {
  return [c = std::move(c)](double t) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
    return acc;
  };
}

std::function<double(double)> named_fn(const std::string& name) {
  if (name == "exp") return [](double t) { return std::exp(t); };
  if (name == "sin") return [](double t) { return std::sin(t); };
  if (name == "cos") return [](double t) { return std::cos(t); };
  if (name == "runge") return [](double t) { return 1.0 / (1.0 + 25.0 * t * t); };
  if (name == "gauss-bump")
    return [](double t) {
      return std::abs(t) < 1.0 ? std::exp(-1.0 / (1.0 - t * t)) : 0.0;
    };
  throw ArgumentError("unknown test function '" + name +
                      "' (known: exp, sin, cos, runge, gauss-bump, poly:..., or t-polynomial syntax)");
}

std::vector<Rat> univariate_from_ncpoly(const NCPoly& p) {
  std::vector<Rat> coeffs;
  for (const auto& [w, c] : p.terms()) {
    for (const auto& l : w.letters)
      if (l.index != 1 || l.star)
        throw ArgumentError("test function must be univariate in t");
    if (!c.is_real()) throw ArgumentError("test function coefficients must be real");
    const int j = w.length();
    if (static_cast<int>(coeffs.size()) <= j) coeffs.resize(j + 1, Rat(0));
    coeffs[j] = c.re;
  }
  if (coeffs.empty()) coeffs.assign(1, Rat(0));
  return coeffs;
}

}  // namespace

TestFn testfn_from_poly(std::vector<Rat> coeffs) {
  TestFn f;
  f.poly = std::move(coeffs);
  if (f.poly.empty()) f.poly.assign(1, Rat(0));
  std::vector<double> cd;
  cd.reserve(f.poly.size());
  for (const auto& q : f.poly) cd.push_back(q.get_d());
  f.fn = poly_eval_fn(std::move(cd));
  f.descriptor = Poly(f.poly).to_string("t");
  return f;
}

TestFn parse_testfn(const std::string& text) {
  if (text.empty()) throw ArgumentError("empty test function");
  if (text.rfind("poly:", 0) == 0) {
    std::vector<Rat> coeffs;
    std::string rest = text.substr(5);
    size_t pos = 0;
    while (pos <= rest.size()) {
      size_t comma = rest.find(',', pos);
      if (comma == std::string::npos) comma = rest.size();
      coeffs.push_back(rat_from_string(rest.substr(pos, comma - pos)));
      pos = comma + 1;
    }
    TestFn f = testfn_from_poly(std::move(coeffs));
    f.descriptor = text;
    return f;
  }
  // name@scale composition
  const size_t at = text.find('@');
  const std::string head = text.substr(0, at == std::string::npos ? text.size() : at);
  const bool looks_named = !head.empty() && std::isalpha(static_cast<unsigned char>(head[0])) &&
                           head.find('t') == std::string::npos;
  if (looks_named) {
    auto base = named_fn(head);
    double scale = 1.0;
    if (at != std::string::npos) {
      try {
        scale = std::stod(text.substr(at + 1));
      } catch (...) {
        throw ArgumentError("bad scale in test function '" + text + "'");
      }
    }
    TestFn f;
    f.descriptor = text;
    f.fn = [base, scale](double t) { return base(scale * t); };
    return f;
  }
  // Fall through to t-polynomial syntax.
  TestFn f = testfn_from_poly(univariate_from_ncpoly(parse_ncpoly(text)));
  f.descriptor = text;
  return f;
}

}  // namespace multitrace

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "multitrace/rational.hpp"

namespace multitrace {

// A scalar test function h. Polynomials keep exact coefficients (giving
// access to the exact engines); named built-ins are callables routed
// through the Chebyshev pipeline.
struct TestFn {
  std::string descriptor;
  std::vector<Rat> poly;  // h(t) = sum_j poly[j] t^j; empty for smooth built-ins
  std::function<double(double)> fn;

  bool is_poly() const { return !poly.empty(); }
  double operator()(double t) const { return fn(t); }
};

TestFn testfn_from_poly(std::vector<Rat> coeffs);

// Accepted forms:
//   polynomial syntax in t:     "t^2", "2*t^3 - 1", "1/2*t"
//   coefficient list:           "poly:1,0,2"         (1 + 2 t^2)
//   named built-ins:            exp | sin | cos | runge | gauss-bump
//   argument scaling:           "exp@0.5"            (t -> exp(0.5 t))
TestFn parse_testfn(const std::string& text);

}  // namespace multitrace

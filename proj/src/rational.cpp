#include "multitrace/rational.hpp"

namespace multitrace {

Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw ArgumentError("empty rational literal");
  try {
    Rat q(s);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw ArgumentError("bad rational literal: " + s);
  }
}

std::string rat_to_string(const Rat& q) { return q.get_str(); }

std::string crat_to_string(const CRat& c) {
  if (c.im == 0) return rat_to_string(c.re);
  if (c.re == 0) return rat_to_string(c.im) + "i";
  std::string s = rat_to_string(c.re);
  s += (c.im > 0) ? "+" : "-";
  s += rat_to_string(abs(c.im));
  s += "i";
  return s;
}

}  // namespace multitrace

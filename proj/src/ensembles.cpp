#include "multitrace/ensembles.hpp"

#include <algorithm>

namespace multitrace {

std::string ensemble_name(Ensemble e) {
  switch (e) {
    case Ensemble::GUE:
      return "gue";
    case Ensemble::GOE:
      return "goe";
    case Ensemble::GSE:
      return "gse";
    case Ensemble::HaarU:
      return "haar-u";
    case Ensemble::HaarO:
      return "haar-o";
    case Ensemble::HaarSp:
      return "haar-sp";
  }
  return "?";
}

Ensemble ensemble_from_name(const std::string& name) {
  std::string s = name;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "gue") return Ensemble::GUE;
  if (s == "goe") return Ensemble::GOE;
  if (s == "gse") return Ensemble::GSE;
  if (s == "haar-u" || s == "haaru" || s == "u") return Ensemble::HaarU;
  if (s == "haar-o" || s == "haaro" || s == "o") return Ensemble::HaarO;
  if (s == "haar-sp" || s == "haarsp" || s == "sp") return Ensemble::HaarSp;
  throw ArgumentError("unknown ensemble '" + name +
                      "' (gue, goe, gse, haar-u, haar-o, haar-sp)");
}

}  // namespace multitrace

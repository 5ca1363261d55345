#pragma once

#include <string>

#include "multitrace/errors.hpp"

namespace multitrace {

enum class Ensemble { GUE, GOE, GSE, HaarU, HaarO, HaarSp };

inline bool is_gaussian(Ensemble e) {
  return e == Ensemble::GUE || e == Ensemble::GOE || e == Ensemble::GSE;
}
inline bool is_haar(Ensemble e) { return !is_gaussian(e); }
// GSE and Sp(N) are realized as 2N x 2N complex matrices.
inline bool is_quaternionic(Ensemble e) {
  return e == Ensemble::GSE || e == Ensemble::HaarSp;
}
// Ensembles whose letters are self-adjoint matrices; stars are forbidden.
inline bool forbids_stars(Ensemble e) { return is_gaussian(e); }
// Ensembles with an exact engine (the rest go through the sampler only).
inline bool has_exact_engine(Ensemble e) {
  return e == Ensemble::GUE || e == Ensemble::GOE || e == Ensemble::GSE ||
         e == Ensemble::HaarU;
}

std::string ensemble_name(Ensemble e);
Ensemble ensemble_from_name(const std::string& name);

}  // namespace multitrace

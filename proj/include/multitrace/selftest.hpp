#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "multitrace/ensembles.hpp"
#include "multitrace/ncpoly.hpp"
#include "multitrace/rational.hpp"

namespace multitrace {

// Independent oracles. These deliberately avoid the engines' loop-count
// machinery so that agreement is a genuine cross-check.
namespace oracle {

// E[tr w_1 ... tr w_r] at a concrete dimension by brute force: an index
// is assigned to every position along each trace cycle, and the Wick sum
// over pairings multiplies entrywise covariances
//   GUE:  E[G_ab G_cd] = [a==d][b==c] / N
//   GOE:  E[X_ab X_cd] = ([a==c][b==d] + [a==d][b==c]) / N.
// Exact rational output; cost N^k * (k-1)!!.
Rat gauss_entrywise_moment(Ensemble ensemble, const std::vector<Word>& words, int N);

// integral over [-2, 2] of h d(semicircle), via the substitution
// x = 2 cos(theta) and composite Simpson.
double semicircle_expectation(const std::function<double(double)>& h, int panels = 1 << 14);

// Bell number by brute-force enumeration of block assignments.
long long bell_number_bruteforce(int k);

}  // namespace oracle

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  uint64_t seed = 20240901;
  // Scales the Monte Carlo draw counts (1.0 = the acceptance sizes);
  // values below 1 are for smoke runs only, never for the gate.
  double mc_scale = 1.0;
  int workers = 1;
};

// Runs the full acceptance battery (13 criteria) and returns one result
// per criterion, in order.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts = {});

}  // namespace multitrace

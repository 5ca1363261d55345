#pragma once

#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "multitrace/ensembles.hpp"
#include "multitrace/ncpoly.hpp"
#include "multitrace/polynomial.hpp"
#include "multitrace/setpartition.hpp"
#include "multitrace/testfn.hpp"

namespace multitrace {

// Moment oracle: maps a sorted subset of slot indices {0..r-1} to the
// exact joint moment E[prod_{i in subset} tr h_i(X_i)] as a function of
// x = 1/N. The value for the empty subset is 1.
using ExactMomentFn = std::function<RatFn(const std::vector<int>&)>;

// C_pi = sum_{pi' <= pi} E_{pi'} Moeb(pi', pi); pi = 1_r gives the plain
// r-th cumulant. r <= 6.
RatFn cumulant_from_moments(int r, const ExactMomentFn& oracle, const SetPartition& pi);
RatFn cumulant_from_moments(int r, const ExactMomentFn& oracle);

// The single place where the tr / Tr / N Tr prefactors live:
//   N^{-2} C_r(N Tr h_1(X_1), ..., N Tr h_r(X_r)) = N^{2r-2} S(1/N),
// with S(x) = sum_{pi in Part(r)} Moeb(pi, 1_r) prod_blocks E_block(x).
// The report carries S and the exponent 2r-2; coefficient s_l of S is
// the coefficient of N^{2r-2-l} of the scaled cumulant.
struct ScaledCumulantReport {
  std::string ensemble;
  int r = 0;
  std::string mode = "exact";
  RatFn s_of_x;
  int prefactor_exponent = 0;  // 2r-2
  std::vector<Rat> leading_coeffs;   // s_0 .. s_{2r-2}
  std::vector<int> vanishing_checked;  // l <= 2r-3 with s_l verified zero
  bool all_leading_vanish = false;
  Rat limit;  // s_{2r-2}

  nlohmann::json to_json() const;
};

// Exact scaled cumulant for polynomial inputs h_i(P_i) (slot i holds the
// already-composed NCPoly). Ensembles with an exact engine only.
ScaledCumulantReport scaled_trace_cumulant_exact(Ensemble ensemble,
                                                 const std::vector<NCPoly>& slot_polys);

// Unbiased joint cumulant estimate (k-statistic) of order <= 4 with a
// leave-one-out jackknife standard error. rows[draw][stat]; coords picks
// the slots (repetitions allowed). Needs >= 100 draws.
struct CumulantEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
  bool degenerate = false;  // zero-variance input; estimate still returned
};
CumulantEstimate k_statistics(const std::vector<std::vector<double>>& rows,
                              const std::vector<int>& coords);

// Desk-scale CLT check: sample covariance/skewness/excess kurtosis and
// per-coordinate Kolmogorov-Smirnov distance of Tr h_i(X_i) against the
// fitted Gaussian, plus the exact covariance where the engines reach.
struct CltReport {
  std::string ensemble;
  int N = 0;
  int draws = 0;
  uint64_t seed = 0;
  std::vector<std::string> inputs;
  std::vector<double> mean;
  std::vector<std::vector<double>> covariance;
  std::vector<double> skewness;
  std::vector<double> excess_kurtosis;
  std::vector<double> ks_distance;
  std::vector<std::vector<double>> exact_covariance;  // empty if unavailable
  nlohmann::json to_json() const;
};

CltReport clt_report(Ensemble ensemble, const std::vector<NCPoly>& P,
                     const std::vector<TestFn>& h, int N, int draws, uint64_t seed,
                     int workers = 1);

// Formal matrix-integral coefficients. For the potential
// V = sum_i t_i h_i(P_i), the free-energy coefficient of t^k is
//   a_k^N = (1 / (N^2 k!)) C_k(N Tr h_1, ..., N Tr h_r)
// realized by duplicating slot i k_i times in the cumulant. Exact mode
// caps |k| <= 4.
struct MatrixIntegralCoeff {
  std::vector<int> k;
  Rat value_at_n;
  Rat limit;
  nlohmann::json to_json() const;
};

std::vector<MatrixIntegralCoeff> free_energy_coeffs(Ensemble ensemble,
                                                    const std::vector<NCPoly>& v_slots,
                                                    int kmax, long N);

// Observable coefficients b_k for E_{mu_V}[tr g(Q)]: one extra leading
// slot holding g(Q), multi-index (1, k).
std::vector<MatrixIntegralCoeff> observable_coeffs(Ensemble ensemble, const NCPoly& gq,
                                                   const std::vector<NCPoly>& v_slots,
                                                   int kmax, long N);

}  // namespace multitrace

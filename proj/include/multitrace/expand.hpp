#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "multitrace/ensembles.hpp"
#include "multitrace/ncpoly.hpp"
#include "multitrace/polynomial.hpp"
#include "multitrace/testfn.hpp"

namespace multitrace {

// Ordered 1/N-expansion coefficients of E[tr h_1(X_1) ... tr h_r(X_r)],
// with residuals against the exact engine where available.
struct ExpansionReport {
  std::string ensemble;
  std::vector<std::string> inputs;
  int order = 0;
  bool exact = false;                // exact rational vs float coefficients
  std::vector<Rat> exact_coeffs;     // populated on the exact path
  std::vector<double> coeffs;        // populated on both paths
  std::vector<double> coeff_errors;  // smooth path truncation estimates
  double truncation_tail = 0.0;

  struct Residual {
    long N = 0;
    double value = 0.0;
    std::string exact;  // exact rational when available
  };
  std::vector<Residual> residuals;
  double fitted_slope = std::numeric_limits<double>::quiet_NaN();

  nlohmann::json to_json() const;
};

// Exact coefficients nu_0..nu_{m-1} (Gaussian) or mu_0..mu_{m-1}
// (Haar unitary) for already-composed polynomial inputs h_i(P_i).
// GSE coefficients come from the GOE ones via coefficient k -> (-1/2)^k
// times it (the expansion function evaluated at -1/(2N)).
ExpansionReport exact_expansion(Ensemble ensemble, const std::vector<NCPoly>& polys, int m);

struct SmoothConfig {
  int nodes = 129;          // initial Chebyshev node count (power of two + 1)
  int max_nodes = 1025;
  double node_tol = 1e-10;  // tail threshold for node-count doubling
  double coeff_tol = 1e-8;  // target truncation-tail mass per function
  long max_engine_calls = 200000;
  std::optional<double> K_override;  // expansion half-width override
};

// Chebyshev truncation + multilinear exact engine calls: the truncated
// series of each h_i is substituted into P_i and the engine is applied
// term tuple by term tuple (this equals the sum over Chebyshev index
// tuples by multilinearity). r <= 3.
ExpansionReport smooth_expansion(Ensemble ensemble, const std::vector<NCPoly>& P,
                                 const std::vector<TestFn>& h, int m,
                                 const SmoothConfig& config = {});

// Exact residuals E_N - partial sum over an N ladder (polynomial inputs
// only, so residuals are noiseless) and the fitted log-log slope.
ExpansionReport residual_scan(Ensemble ensemble, const std::vector<NCPoly>& polys, int m,
                              const std::vector<long>& ladder);

}  // namespace multitrace

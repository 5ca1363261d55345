#include "multitrace/expand.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "multitrace/cheb.hpp"
#include "multitrace/gauss_moments.hpp"
#include "multitrace/haar_moments.hpp"

namespace multitrace {

namespace {

// Exact series coefficients of the trace expectation for the ensemble.
// GSE: the GOE expansion function evaluated at -1/(2N) turns coefficient
// k into (-1/2)^k times the GOE one.
std::vector<Rat> engine_series(Ensemble ensemble, const std::vector<NCPoly>& polys, int m) {
  switch (ensemble) {
    case Ensemble::GUE:
    case Ensemble::GOE: {
      Poly p = expect_ncpoly_product_gauss(ensemble, polys);
      return series_expand(p, m).coeffs;
    }
    case Ensemble::GSE: {
      Poly p = expect_ncpoly_product_gauss(Ensemble::GOE, polys);
      std::vector<Rat> s = series_expand(p, m).coeffs;
      Rat f(1);
      for (int k = 0; k < m; ++k) {
        s[k] *= f;
        f *= rat(-1, 2);
      }
      return s;
    }
    case Ensemble::HaarU:
      return expect_ncpoly_product_haar_u(polys).series(m);
    default:
      throw ArgumentError("no exact engine for ensemble " + ensemble_name(ensemble));
  }
}

// Exact value of the trace expectation at a concrete N.
Rat engine_value_at(Ensemble ensemble, const std::vector<NCPoly>& polys, long N) {
  const Rat x = rat(1, N);
  switch (ensemble) {
    case Ensemble::GUE:
    case Ensemble::GOE:
      return expect_ncpoly_product_gauss(ensemble, polys).eval(x);
    case Ensemble::GSE:
      return expect_ncpoly_product_gse_at(polys, N);
    case Ensemble::HaarU:
      return expect_ncpoly_product_haar_u(polys).eval(x);
    default:
      throw ArgumentError("no exact engine for ensemble " + ensemble_name(ensemble));
  }
}

std::vector<std::string> describe(const std::vector<NCPoly>& polys) {
  std::vector<std::string> out;
  out.reserve(polys.size());
  for (const auto& p : polys) out.push_back(to_string(p));
  return out;
}

}  // namespace

nlohmann::json ExpansionReport::to_json() const {
  nlohmann::json j;
  j["ensemble"] = ensemble;
  j["inputs"] = inputs;
  j["order"] = order;
  j["exact"] = exact;
  if (exact) {
    std::vector<std::string> cs;
    for (const auto& c : exact_coeffs) cs.push_back(rat_to_string(c));
    j["coefficients"] = cs;
  } else {
    j["coefficients"] = coeffs;
  }
  j["coefficients_float"] = coeffs;
  if (!coeff_errors.empty()) j["coefficient_errors"] = coeff_errors;
  j["truncation_error"] = truncation_tail;
  if (!residuals.empty()) {
    nlohmann::json rs = nlohmann::json::array();
    for (const auto& r : residuals) {
      nlohmann::json e;
      e["N"] = r.N;
      e["residual"] = r.value;
      if (!r.exact.empty()) e["residual_exact"] = r.exact;
      rs.push_back(e);
    }
    j["residuals"] = rs;
    if (std::isfinite(fitted_slope)) j["fitted_slope"] = fitted_slope;
  }
  return j;
}

ExpansionReport exact_expansion(Ensemble ensemble, const std::vector<NCPoly>& polys, int m) {
  if (m < 1) throw ArgumentError("expansion order must be >= 1");
  ExpansionReport rep;
  rep.ensemble = ensemble_name(ensemble);
  rep.inputs = describe(polys);
  rep.order = m;
  rep.exact = true;
  rep.exact_coeffs = engine_series(ensemble, polys, m);
  rep.coeffs.reserve(m);
  for (const auto& c : rep.exact_coeffs) rep.coeffs.push_back(c.get_d());
  return rep;
}

ExpansionReport smooth_expansion(Ensemble ensemble, const std::vector<NCPoly>& P,
                                 const std::vector<TestFn>& h, int m,
                                 const SmoothConfig& config) {
  const int r = static_cast<int>(P.size());
  if (r < 1 || r > 3) throw SizeError("smooth expansion supports 1 <= r <= 3 traces");
  if (h.size() != P.size()) throw ArgumentError("one test function per polynomial required");
  if (!has_exact_engine(ensemble))
    throw ArgumentError("smooth expansion needs an exact engine; ensemble " +
                        ensemble_name(ensemble) + " is sampler-only");

  // Engine caps on the total word length of a trace tuple.
  const int engine_cap = (ensemble == Ensemble::GUE) ? 16 : 12;

  ExpansionReport rep;
  rep.ensemble = ensemble_name(ensemble);
  rep.order = m;
  rep.exact = false;

  // Per-trace Chebyshev data.
  std::vector<NCPolyD> H(r);
  std::vector<double> kept_mass(r), tail_mass(r);
  int degree_budget = engine_cap;
  std::vector<int> pdeg(r);
  for (int i = 0; i < r; ++i) pdeg[i] = std::max(1, P[i].degree());

  for (int i = 0; i < r; ++i) {
    const double K = config.K_override ? *config.K_override : spectral_bound(ensemble, P[i]);
    rep.inputs.push_back(h[i].descriptor + " o " + to_string(P[i]) +
                         " on [-" + std::to_string(K) + ", " + std::to_string(K) + "]");
    // Remaining degree budget split evenly over the remaining traces;
    // every word tuple then stays within the engine cap.
    const int q_cap = std::max(0, degree_budget / (pdeg[i] * (r - i)));
    // Node doubling until the interpolant's tail stabilizes.
    ChebSeries series;
    int M = config.nodes;
    for (;;) {
      series = cheb_coeffs(h[i].fn, K, M);
      const int probe = std::min(series.degree(), std::max(q_cap, 1));
      if (tail_bound(series, probe) < config.node_tol || M >= config.max_nodes) break;
      M = 2 * (M - 1) + 1;
    }
    // Smallest truncation degree hitting the coefficient tolerance,
    // then the engine cap.
    int q = 0;
    while (q < series.degree() && tail_bound(series, q) > config.coeff_tol) ++q;
    // The engine cap may bind before the tolerance is reached; the
    // achievable tail is reported instead of failing.
    q = std::min(q, q_cap);
    ChebSeries kept = truncate(series, q);
    tail_mass[i] = kept.tail;
    kept_mass[i] = 0.0;
    for (double a : kept.a) kept_mass[i] += std::abs(a);
    degree_budget -= q * pdeg[i];

    // Monomial coefficients of sum_j a_j T_j(t/K) by the Chebyshev
    // recurrence, then substitution into P_i.
    std::vector<double> mono(q + 1, 0.0);
    std::vector<double> tprev{1.0}, tcur{0.0, 1.0 / K};
    for (int j = 0; j <= q; ++j) {
      const std::vector<double>& tj = (j == 0) ? tprev : tcur;
      for (size_t t = 0; t < tj.size(); ++t) mono[t] += kept.a[j] * tj[t];
      if (j >= 1 && j <= q - 1) {
        std::vector<double> tnext(j + 2, 0.0);
        for (size_t t = 0; t < tcur.size(); ++t) tnext[t + 1] += 2.0 / K * tcur[t];
        for (size_t t = 0; t < tprev.size(); ++t) tnext[t] -= tprev[t];
        tprev = std::move(tcur);
        tcur = std::move(tnext);
      }
    }
    H[i] = substitute(mono, P[i], engine_cap);
  }

  // Budget check on the tuple count.
  long tuples = 1;
  for (int i = 0; i < r; ++i) {
    tuples *= static_cast<long>(H[i].terms().size());
    if (tuples > config.max_engine_calls)
      throw SizeError("smooth expansion: engine-call budget exceeded at trace " +
                      std::to_string(i + 1) + " (" + std::to_string(tuples) + " tuples)");
  }

  // Multilinear assembly over term tuples; word-level engine calls are
  // memoized inside the engines.
  std::vector<double> re(m, 0.0), im(m, 0.0), absmass(m, 0.0);
  std::vector<Word> tuple(r);
  std::vector<NCPoly> tuple_polys(r);
  std::function<void(int, std::complex<double>)> rec = [&](int i, std::complex<double> coeff) {
    if (std::abs(coeff) == 0.0) return;
    if (i == r) {
      for (int t = 0; t < r; ++t) {
        NCPoly mono_poly;
        mono_poly.add_term(tuple[t], CRat(1));
        tuple_polys[t] = std::move(mono_poly);
      }
      std::vector<Rat> s = engine_series(ensemble, tuple_polys, m);
      for (int k = 0; k < m; ++k) {
        if (s[k] == 0) continue;
        const double sv = s[k].get_d();
        re[k] += coeff.real() * sv;
        im[k] += coeff.imag() * sv;
        absmass[k] += std::abs(coeff) * std::abs(sv);
      }
      return;
    }
    for (const auto& [w, c] : H[i].terms()) {
      tuple[i] = w;
      rec(i + 1, coeff * c);
    }
  };
  rec(0, std::complex<double>(1.0, 0.0));

  for (int k = 0; k < m; ++k) {
    if (std::abs(im[k]) > 1e-8 * (1.0 + std::abs(re[k])))
      throw ConsistencyError("smooth expansion: imaginary part failed to cancel");
  }
  rep.coeffs = re;

  // Truncation estimate: dropped coefficient mass scaled by the observed
  // engine magnitude per unit of kept mass.
  double kept_prod = 1.0, full_prod = 1.0;
  for (int i = 0; i < r; ++i) {
    kept_prod *= kept_mass[i];
    full_prod *= kept_mass[i] + tail_mass[i];
  }
  const double dropped = full_prod - kept_prod;
  rep.truncation_tail = dropped;
  rep.coeff_errors.resize(m);
  for (int k = 0; k < m; ++k) {
    const double growth = kept_prod > 0 ? std::max(1.0, absmass[k] / kept_prod) : 1.0;
    rep.coeff_errors[k] = growth * dropped;
  }
  return rep;
}

ExpansionReport residual_scan(Ensemble ensemble, const std::vector<NCPoly>& polys, int m,
                              const std::vector<long>& ladder) {
  ExpansionReport rep = exact_expansion(ensemble, polys, m);
  std::vector<double> logs_n, logs_r;
  for (long N : ladder) {
    if (N < 1) throw ArgumentError("residual scan: N must be positive");
    const Rat x = rat(1, N);
    Rat partial(0);
    Rat xp(1);
    for (int k = 0; k < m; ++k) {
      partial += rep.exact_coeffs[k] * xp;
      xp *= x;
    }
    const Rat resid = engine_value_at(ensemble, polys, N) - partial;
    ExpansionReport::Residual row;
    row.N = N;
    row.value = std::abs(resid.get_d());
    row.exact = rat_to_string(resid);
    rep.residuals.push_back(row);
    if (resid != 0) {
      logs_n.push_back(std::log(static_cast<double>(N)));
      logs_r.push_back(std::log(std::abs(resid.get_d())));
    }
  }
  if (logs_n.size() >= 2) {
    // Least-squares slope of log|residual| against log N.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(logs_n.size());
    for (size_t i = 0; i < logs_n.size(); ++i) {
      sx += logs_n[i];
      sy += logs_r[i];
      sxx += logs_n[i] * logs_n[i];
      sxy += logs_n[i] * logs_r[i];
    }
    rep.fitted_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  return rep;
}

}  // namespace multitrace

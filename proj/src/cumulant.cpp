#include "multitrace/cumulant.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "multitrace/gauss_moments.hpp"
#include "multitrace/haar_moments.hpp"
#include "multitrace/sampler.hpp"

namespace multitrace {

namespace {

RatFn partitioned_moment(const SetPartition& pi, const ExactMomentFn& oracle) {
  RatFn acc = RatFn::from_poly(Poly::constant(Rat(1)));
  for (const auto& block : pi.blocks()) {
    std::vector<int> subset;
    subset.reserve(block.size());
    for (int e : block) subset.push_back(e - 1);
    acc = acc * oracle(subset);
  }
  return acc;
}

// Exact engine moment of the sub-multiset of slots, as a RatFn in x.
ExactMomentFn engine_oracle(Ensemble ensemble, const std::vector<NCPoly>& slots) {
  return [ensemble, &slots](const std::vector<int>& subset) -> RatFn {
    std::vector<NCPoly> polys;
    polys.reserve(subset.size());
    for (int i : subset) polys.push_back(slots[i]);
    switch (ensemble) {
      case Ensemble::GUE:
      case Ensemble::GOE:
        return RatFn::from_poly(expect_ncpoly_product_gauss(ensemble, polys));
      case Ensemble::GSE: {
        // GOE expansion function evaluated at -x/2.
        Poly p = expect_ncpoly_product_gauss(Ensemble::GOE, polys);
        std::vector<Rat> c = p.coeffs();
        Rat f(1);
        for (auto& v : c) {
          v *= f;
          f *= rat(-1, 2);
        }
        return RatFn::from_poly(Poly(std::move(c)));
      }
      case Ensemble::HaarU:
        return expect_ncpoly_product_haar_u(polys);
      default:
        throw ArgumentError("no exact engine for ensemble " + ensemble_name(ensemble));
    }
  };
}

}  // namespace

RatFn cumulant_from_moments(int r, const ExactMomentFn& oracle, const SetPartition& pi) {
  if (r < 1 || r > 6) throw SizeError("cumulant_from_moments: r out of range [1, 6]");
  if (pi.ground_size() != r) throw ArgumentError("cumulant partition has wrong ground set");
  RatFn acc;
  for (const auto& pi_prime : set_partitions(r)) {
    const long long mob = moebius(pi_prime, pi);
    if (mob == 0) continue;
    acc = acc + rat(mob) * partitioned_moment(pi_prime, oracle);
  }
  return acc;
}

RatFn cumulant_from_moments(int r, const ExactMomentFn& oracle) {
  return cumulant_from_moments(r, oracle, SetPartition::one(r));
}

nlohmann::json ScaledCumulantReport::to_json() const {
  nlohmann::json j;
  j["ensemble"] = ensemble;
  j["r"] = r;
  j["mode"] = mode;
  j["exact_function"] = ratfn_to_json(s_of_x);
  j["prefactor_exponent"] = prefactor_exponent;
  std::vector<std::string> lead;
  for (const auto& c : leading_coeffs) lead.push_back(rat_to_string(c));
  j["leading_coeffs"] = lead;
  j["vanishing_checked"] = vanishing_checked;
  j["all_leading_vanish"] = all_leading_vanish;
  j["limit"] = rat_to_string(limit);
  return j;
}

ScaledCumulantReport scaled_trace_cumulant_exact(Ensemble ensemble,
                                                 const std::vector<NCPoly>& slot_polys) {
  const int r = static_cast<int>(slot_polys.size());
  if (r < 1 || r > 6) throw SizeError("scaled cumulant: r out of range [1, 6]");
  ScaledCumulantReport rep;
  rep.ensemble = ensemble_name(ensemble);
  rep.r = r;
  rep.prefactor_exponent = 2 * r - 2;
  rep.s_of_x = cumulant_from_moments(r, engine_oracle(ensemble, slot_polys));
  const std::vector<Rat> s = rep.s_of_x.series(2 * r - 1);
  rep.leading_coeffs = s;
  rep.all_leading_vanish = true;
  for (int l = 0; l <= 2 * r - 3; ++l) {
    if (s[l] == 0)
      rep.vanishing_checked.push_back(l);
    else
      rep.all_leading_vanish = false;
  }
  rep.limit = s[2 * r - 2];
  return rep;
}

namespace {

struct PowerSums {
  double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
  void add(double z) {
    s1 += z;
    const double z2 = z * z;
    s2 += z2;
    s3 += z2 * z;
    s4 += z2 * z2;
  }
  // Univariate unbiased k-statistic of the given order with draw `skip`
  // removed (skip < 0 keeps everything).
  double k_stat(int order, long n_all, double z_skip, bool skip) const {
    double t1 = s1, t2 = s2, t3 = s3, t4 = s4;
    long n = n_all;
    if (skip) {
      const double z = z_skip, z2 = z * z;
      t1 -= z;
      t2 -= z2;
      t3 -= z2 * z;
      t4 -= z2 * z2;
      --n;
    }
    const double dn = static_cast<double>(n);
    const double mu = t1 / dn;
    if (order == 1) return mu;
    const double m2 = t2 / dn - mu * mu;
    if (order == 2) return dn / (dn - 1) * m2;
    const double m3 = t3 / dn - 3 * mu * t2 / dn + 2 * mu * mu * mu;
    if (order == 3) return dn * dn / ((dn - 1) * (dn - 2)) * m3;
    const double m4 =
        t4 / dn - 4 * mu * t3 / dn + 6 * mu * mu * t2 / dn - 3 * mu * mu * mu * mu;
    return dn * dn * ((dn + 1) * m4 - 3 * (dn - 1) * m2 * m2) /
           ((dn - 1) * (dn - 2) * (dn - 3));
  }
};

}  // namespace

CumulantEstimate k_statistics(const std::vector<std::vector<double>>& rows,
                              const std::vector<int>& coords) {
  const long n = static_cast<long>(rows.size());
  const int order = static_cast<int>(coords.size());
  if (order < 1 || order > 4) throw ArgumentError("k_statistics: order out of range [1, 4]");
  if (n < 100) throw ArgumentError("k_statistics: need at least 100 draws");
  for (int c : coords)
    if (c < 0 || (!rows.empty() && c >= static_cast<int>(rows[0].size())))
      throw ArgumentError("k_statistics: coordinate out of range");

  // Polarization over nonempty subsets S of the slots: the joint cumulant
  // is (1/order!) sum_S (-1)^(order-|S|) C_order(Z_S, ..., Z_S) with
  // Z_S = sum_{p in S} Y_{coords[p]}; applying the univariate unbiased
  // k-statistic to each Z_S keeps the combination unbiased.
  const int nsub = (1 << order) - 1;
  std::vector<PowerSums> sums(nsub + 1);
  std::vector<std::vector<double>> z(nsub + 1);
  for (int mask = 1; mask <= nsub; ++mask) z[mask].resize(n);
  for (long i = 0; i < n; ++i) {
    for (int mask = 1; mask <= nsub; ++mask) {
      double acc = 0.0;
      for (int p = 0; p < order; ++p)
        if (mask & (1 << p)) acc += rows[i][coords[p]];
      z[mask][i] = acc;
      sums[mask].add(acc);
    }
  }
  double fact = 1.0;
  for (int i = 2; i <= order; ++i) fact *= i;

  auto polarized = [&](long skip) {
    double acc = 0.0;
    for (int mask = 1; mask <= nsub; ++mask) {
      const int bits = __builtin_popcount(static_cast<unsigned>(mask));
      const double sign = ((order - bits) % 2 == 0) ? 1.0 : -1.0;
      acc += sign * sums[mask].k_stat(order, n, skip >= 0 ? z[mask][skip] : 0.0, skip >= 0);
    }
    return acc / fact;
  };

  CumulantEstimate est;
  est.value = polarized(-1);

  // Jackknife over draws.
  std::vector<double> loo(n);
  double loo_mean = 0.0;
  for (long i = 0; i < n; ++i) {
    loo[i] = polarized(i);
    loo_mean += loo[i];
  }
  loo_mean /= n;
  double ss = 0.0;
  for (long i = 0; i < n; ++i) {
    const double d = loo[i] - loo_mean;
    ss += d * d;
  }
  est.stderr_ = std::sqrt(ss * (n - 1) / static_cast<double>(n));
  const double spread = sums[1].k_stat(2, n, 0.0, false);
  est.degenerate = !(spread > 0.0) || !std::isfinite(est.value);
  return est;
}

nlohmann::json CltReport::to_json() const {
  nlohmann::json j;
  j["ensemble"] = ensemble;
  j["N"] = N;
  j["draws"] = draws;
  j["seed"] = seed;
  j["inputs"] = inputs;
  j["mean"] = mean;
  j["covariance"] = covariance;
  j["skewness"] = skewness;
  j["excess_kurtosis"] = excess_kurtosis;
  j["ks_distance"] = ks_distance;
  if (!exact_covariance.empty()) j["exact_covariance"] = exact_covariance;
  return j;
}

CltReport clt_report(Ensemble ensemble, const std::vector<NCPoly>& P,
                     const std::vector<TestFn>& h, int N, int draws, uint64_t seed,
                     int workers) {
  const int r = static_cast<int>(P.size());
  if (r < 1) throw ArgumentError("clt_report: need at least one statistic");
  McConfig cfg;
  cfg.ensemble = ensemble;
  cfg.N = N;
  cfg.seed = seed;
  cfg.draws = draws;
  cfg.workers = workers;
  int d = 1;
  for (const auto& p : P) d = std::max(d, p.max_letter_index());
  cfg.d = d;
  McResult mc = mc_expect_trace_product(cfg, P, h);

  const double dim = static_cast<double>(matrix_dim(ensemble, N));
  CltReport rep;
  rep.ensemble = ensemble_name(ensemble);
  rep.N = N;
  rep.draws = draws;
  rep.seed = seed;
  for (int i = 0; i < r; ++i) rep.inputs.push_back(h[i].descriptor + " o " + to_string(P[i]));

  // Unnormalized traces Tr = dim * tr.
  std::vector<std::vector<double>> tr_rows(draws, std::vector<double>(r));
  for (int i = 0; i < draws; ++i)
    for (int c = 0; c < r; ++c) tr_rows[i][c] = dim * mc.raw[i][c];

  rep.mean.assign(r, 0.0);
  for (int i = 0; i < draws; ++i)
    for (int c = 0; c < r; ++c) rep.mean[c] += tr_rows[i][c];
  for (int c = 0; c < r; ++c) rep.mean[c] /= draws;

  rep.covariance.assign(r, std::vector<double>(r, 0.0));
  for (int i = 0; i < draws; ++i)
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b)
        rep.covariance[a][b] +=
            (tr_rows[i][a] - rep.mean[a]) * (tr_rows[i][b] - rep.mean[b]);
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) rep.covariance[a][b] /= (draws - 1);

  rep.skewness.assign(r, 0.0);
  rep.excess_kurtosis.assign(r, 0.0);
  rep.ks_distance.assign(r, 0.0);
  for (int c = 0; c < r; ++c) {
    const double sd = std::sqrt(rep.covariance[c][c]);
    if (!(sd > 0)) continue;
    double m3 = 0, m4 = 0;
    for (int i = 0; i < draws; ++i) {
      const double zc = (tr_rows[i][c] - rep.mean[c]) / sd;
      m3 += zc * zc * zc;
      m4 += zc * zc * zc * zc;
    }
    rep.skewness[c] = m3 / draws;
    rep.excess_kurtosis[c] = m4 / draws - 3.0;

    std::vector<double> sorted;
    sorted.reserve(draws);
    for (int i = 0; i < draws; ++i) sorted.push_back((tr_rows[i][c] - rep.mean[c]) / sd);
    std::sort(sorted.begin(), sorted.end());
    double ks = 0.0;
    for (int i = 0; i < draws; ++i) {
      const double phi = 0.5 * std::erfc(-sorted[i] / std::sqrt(2.0));
      ks = std::max(ks, std::abs((i + 1.0) / draws - phi));
      ks = std::max(ks, std::abs(phi - static_cast<double>(i) / draws));
    }
    rep.ks_distance[c] = ks;
  }

  // Exact covariance via the engines when every h is polynomial:
  // Cov(Tr h_i, Tr h_j) = dim^2 * (E[tr_i tr_j] - E[tr_i] E[tr_j]).
  bool all_poly = has_exact_engine(ensemble);
  for (const auto& hf : h) all_poly = all_poly && hf.is_poly();
  if (all_poly) {
    std::vector<NCPoly> slots(r);
    const int engine_cap = (ensemble == Ensemble::GUE) ? 16 : 12;
    try {
      for (int i = 0; i < r; ++i) slots[i] = substitute(h[i].poly, P[i], engine_cap);
      auto oracle = engine_oracle(ensemble, slots);
      const Rat x = rat(1, N);
      rep.exact_covariance.assign(r, std::vector<double>(r, 0.0));
      for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) {
          const Rat eab = oracle({std::min(a, b), std::max(a, b)}).eval(x);
          const Rat ea = oracle({a}).eval(x);
          const Rat eb = oracle({b}).eval(x);
          const Rat cov = eab - ea * eb;
          rep.exact_covariance[a][b] = dim * dim * cov.get_d();
        }
    } catch (const SizeError&) {
      rep.exact_covariance.clear();  // beyond engine caps; sampled-only report
    }
  }
  return rep;
}

nlohmann::json MatrixIntegralCoeff::to_json() const {
  nlohmann::json j;
  j["k"] = k;
  j["value"] = rat_to_string(value_at_n);
  j["value_float"] = value_at_n.get_d();
  j["limit"] = rat_to_string(limit);
  j["limit_float"] = limit.get_d();
  return j;
}

namespace {

// a_k^N = (1/k!) N^(2l-2) S_l(1/N) with l = |k| and S_l the Moebius
// assembly over the duplicated slot list; the limit is s_{2l-2}/k!.
MatrixIntegralCoeff coeff_for_multi_index(Ensemble ensemble, const std::vector<NCPoly>& slots,
                                          const std::vector<int>& k, long N) {
  const int l = static_cast<int>(slots.size());
  Rat kfact(1);
  for (int ki : k)
    for (int i = 2; i <= ki; ++i) kfact *= i;
  RatFn s = cumulant_from_moments(l, engine_oracle(ensemble, slots));
  MatrixIntegralCoeff out;
  out.k = k;
  Rat npow(1);
  for (int i = 0; i < 2 * l - 2; ++i) npow *= N;
  out.value_at_n = npow * s.eval(rat(1, N)) / kfact;
  out.limit = s.series(2 * l - 1)[2 * l - 2] / kfact;
  return out;
}

void enumerate_multi_indices(int r, int kmax, std::vector<int>& cur, int depth, int total,
                             const std::function<void(const std::vector<int>&)>& fn) {
  if (depth == r) {
    if (total > 0) fn(cur);
    return;
  }
  for (int v = 0; v + total <= kmax; ++v) {
    cur[depth] = v;
    enumerate_multi_indices(r, kmax, cur, depth + 1, total + v, fn);
  }
}

}  // namespace

std::vector<MatrixIntegralCoeff> free_energy_coeffs(Ensemble ensemble,
                                                    const std::vector<NCPoly>& v_slots,
                                                    int kmax, long N) {
  if (kmax < 1 || kmax > 4) throw SizeError("free_energy_coeffs: exact mode caps |k| at 4");
  if (N < 1) throw ArgumentError("free_energy_coeffs: N must be positive");
  const int r = static_cast<int>(v_slots.size());
  std::vector<MatrixIntegralCoeff> out;
  std::vector<int> cur(r, 0);
  enumerate_multi_indices(r, kmax, cur, 0, 0, [&](const std::vector<int>& k) {
    std::vector<NCPoly> slots;
    for (int i = 0; i < r; ++i)
      for (int c = 0; c < k[i]; ++c) slots.push_back(v_slots[i]);
    out.push_back(coeff_for_multi_index(ensemble, slots, k, N));
  });
  return out;
}

std::vector<MatrixIntegralCoeff> observable_coeffs(Ensemble ensemble, const NCPoly& gq,
                                                   const std::vector<NCPoly>& v_slots,
                                                   int kmax, long N) {
  if (kmax < 0 || kmax > 3) throw SizeError("observable_coeffs: exact mode caps |k| at 3");
  if (N < 1) throw ArgumentError("observable_coeffs: N must be positive");
  const int r = static_cast<int>(v_slots.size());
  std::vector<MatrixIntegralCoeff> out;
  // b_k with the extra unit slot for g(Q): C_{1,k}; k = 0 included.
  std::vector<int> cur(r, 0);
  auto emit = [&](const std::vector<int>& k) {
    std::vector<NCPoly> slots{gq};
    for (int i = 0; i < r; ++i)
      for (int c = 0; c < k[i]; ++c) slots.push_back(v_slots[i]);
    out.push_back(coeff_for_multi_index(ensemble, slots, k, N));
  };
  emit(std::vector<int>(r, 0));
  enumerate_multi_indices(r, kmax, cur, 0, 0, emit);
  return out;
}

}  // namespace multitrace

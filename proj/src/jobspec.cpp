#include "multitrace/jobspec.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "multitrace/cumulant.hpp"
#include "multitrace/expand.hpp"
#include "multitrace/gauss_moments.hpp"
#include "multitrace/haar_moments.hpp"
#include "multitrace/ncpoly.hpp"
#include "multitrace/sampler.hpp"
#include "multitrace/selftest.hpp"
#include "multitrace/testfn.hpp"

namespace multitrace {

nlohmann::json JobSpec::to_json() const {
  nlohmann::json j;
  j["subcommand"] = subcommand;
  j["ensemble"] = ensemble;
  j["d"] = d;
  j["traces"] = traces;
  j["polys"] = polys;
  j["testfns"] = testfns;
  j["observable_g"] = observable_g;
  j["observable_q"] = observable_q;
  j["order"] = order;
  j["r"] = r;
  j["kmax"] = kmax;
  j["ladder"] = ladder;
  j["seed"] = seed;
  j["draws"] = draws;
  j["workers"] = workers;
  j["mode"] = mode;
  j["format"] = format;
  j["mc_scale"] = mc_scale;
  return j;
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 0xF]);
  }
  return out;
}

namespace {

struct Slots {
  Ensemble ensemble;
  std::vector<NCPoly> P;
  std::vector<TestFn> h;
  std::vector<NCPoly> composed;  // h_i(P_i), exact path (empty if any h is smooth)
  bool all_poly = true;
  int d = 0;
};

int engine_cap(Ensemble e) { return e == Ensemble::GUE ? 16 : 12; }

Slots resolve_slots(const JobSpec& job) {
  Slots s;
  s.ensemble = ensemble_from_name(job.ensemble);
  if (!job.traces.empty()) {
    if (!job.polys.empty() || !job.testfns.empty())
      throw ArgumentError("give either --trace arguments or -P/--testfn pairs, not both");
    for (const auto& t : job.traces) {
      s.P.push_back(parse_ncpoly(t));
      s.h.push_back(testfn_from_poly({Rat(0), Rat(1)}));
    }
  } else {
    if (job.polys.empty()) throw ArgumentError("no polynomials given (-P or --trace)");
    std::vector<NCPoly> base;
    for (const auto& p : job.polys) base.push_back(parse_ncpoly(p));
    std::vector<TestFn> hs;
    if (job.testfns.empty()) {
      hs.assign(base.size(), testfn_from_poly({Rat(0), Rat(1)}));
    } else {
      for (const auto& t : job.testfns) hs.push_back(parse_testfn(t));
    }
    // Recycle a single (P, h) over r slots, or a single h over all P.
    size_t slots = std::max(base.size(), hs.size());
    if (job.r > 0 && base.size() == 1 && hs.size() == 1)
      slots = static_cast<size_t>(job.r);
    if (base.size() == 1) base.assign(slots, base[0]);
    if (hs.size() == 1) hs.assign(slots, hs[0]);
    if (base.size() != hs.size())
      throw ArgumentError("number of -P and --testfn arguments must match");
    s.P = std::move(base);
    s.h = std::move(hs);
  }
  for (const auto& hf : s.h) s.all_poly = s.all_poly && hf.is_poly();
  if (s.all_poly) {
    for (size_t i = 0; i < s.P.size(); ++i)
      s.composed.push_back(substitute(s.h[i].poly, s.P[i], engine_cap(s.ensemble)));
  }
  for (const auto& p : s.P) s.d = std::max(s.d, p.max_letter_index());
  if (job.d > 0) {
    if (job.d < s.d) throw ArgumentError("-d smaller than the largest letter index used");
    s.d = job.d;
  }
  if (s.d == 0) s.d = 1;
  return s;
}

void require_exact_engine(Ensemble e) {
  if (!has_exact_engine(e))
    throw ArgumentError("ensemble " + ensemble_name(e) +
                        " has no exact engine (Monte Carlo only); use the mc subcommand");
}

std::vector<long> ladder_or(const JobSpec& job, std::vector<long> fallback) {
  return job.ladder.empty() ? fallback : job.ladder;
}

nlohmann::json run_exact(const JobSpec& job) {
  Slots s = resolve_slots(job);
  require_exact_engine(s.ensemble);
  if (!s.all_poly) throw ArgumentError("the exact subcommand takes polynomial test functions");
  if (s.composed.empty()) throw ArgumentError("no traces given");
  nlohmann::json res;
  RatFn value;
  switch (s.ensemble) {
    case Ensemble::GUE:
    case Ensemble::GOE:
      value = RatFn::from_poly(expect_ncpoly_product_gauss(s.ensemble, s.composed));
      break;
    case Ensemble::GSE: {
      Poly p = expect_ncpoly_product_gauss(Ensemble::GOE, s.composed);
      std::vector<Rat> c = p.coeffs();
      Rat f(1);
      for (auto& v : c) {
        v *= f;
        f *= rat(-1, 2);
      }
      value = RatFn::from_poly(Poly(std::move(c)));
      res["note"] = "GSE: GOE expansion function with x -> -x/2 absorbed; evaluate at x = 1/N";
      break;
    }
    default:
      value = expect_ncpoly_product_haar_u(s.composed);
  }
  res["value"] = ratfn_to_json(value);
  nlohmann::json evals = nlohmann::json::array();
  for (long N : job.ladder) {
    nlohmann::json e;
    e["N"] = N;
    const Rat v = value.eval(rat(1, N));
    e["value"] = rat_to_string(v);
    e["value_float"] = v.get_d();
    evals.push_back(e);
  }
  if (!evals.empty()) res["evaluations"] = evals;
  return res;
}

nlohmann::json run_expand(const JobSpec& job) {
  Slots s = resolve_slots(job);
  require_exact_engine(s.ensemble);
  if (job.order < 1) throw ArgumentError("-m must be >= 1");
  if (s.all_poly) {
    ExpansionReport rep = job.ladder.empty()
                              ? exact_expansion(s.ensemble, s.composed, job.order)
                              : residual_scan(s.ensemble, s.composed, job.order, job.ladder);
    return rep.to_json();
  }
  SmoothConfig cfg;
  return smooth_expansion(s.ensemble, s.P, s.h, job.order, cfg).to_json();
}

nlohmann::json run_cumulant(const JobSpec& job) {
  Slots s = resolve_slots(job);
  const int r = static_cast<int>(s.P.size());
  nlohmann::json res;
  if (job.mode == "exact") {
    require_exact_engine(s.ensemble);
    if (!s.all_poly)
      throw ArgumentError("exact cumulants need polynomial test functions; use --mode sampled");
    ScaledCumulantReport rep = scaled_trace_cumulant_exact(s.ensemble, s.composed);
    res = rep.to_json();
    nlohmann::json per_n = nlohmann::json::array();
    for (long N : job.ladder) {
      Rat npow(1);
      for (int i = 0; i < rep.prefactor_exponent; ++i) npow *= N;
      const Rat v = npow * rep.s_of_x.eval(rat(1, N));
      per_n.push_back({{"N", N}, {"value", rat_to_string(v)}, {"value_float", v.get_d()}});
    }
    if (!per_n.empty()) res["per_N"] = per_n;
    return res;
  }
  // Sampled mode: k-statistics of the Tr values, scaled by N^(2r-2).
  res["ensemble"] = job.ensemble;
  res["r"] = r;
  res["mode"] = "sampled";
  nlohmann::json per_n = nlohmann::json::array();
  for (long N : ladder_or(job, {16})) {
    McConfig cfg;
    cfg.ensemble = s.ensemble;
    cfg.d = s.d;
    cfg.N = static_cast<int>(N);
    cfg.seed = job.seed;
    cfg.draws = job.draws;
    cfg.workers = job.workers;
    McResult mc = mc_expect_trace_product(cfg, s.P, s.h);
    std::vector<int> coords(r);
    for (int i = 0; i < r; ++i) coords[i] = i;
    CumulantEstimate est = k_statistics(mc.raw, coords);
    // tr -> N^(2r-2) C_r(tr, ..) estimates the scaled cumulant
    // N^(-2) C_r(N Tr ...); matrix_dim covers the quaternionic doubling.
    const double dim = static_cast<double>(matrix_dim(s.ensemble, cfg.N));
    const double scale = std::pow(dim, r) * std::pow(static_cast<double>(N), r) /
                         (static_cast<double>(N) * static_cast<double>(N));
    nlohmann::json e;
    e["N"] = N;
    e["estimate"] = est.value * scale;
    e["stderr"] = est.stderr_ * scale;
    e["degenerate"] = est.degenerate;
    per_n.push_back(e);
  }
  res["per_N"] = per_n;
  return res;
}

nlohmann::json run_clt(const JobSpec& job) {
  Slots s = resolve_slots(job);
  const long N = ladder_or(job, {64}).front();
  CltReport rep = clt_report(s.ensemble, s.P, s.h, static_cast<int>(N), job.draws, job.seed,
                             job.workers);
  return rep.to_json();
}

nlohmann::json run_mc(const JobSpec& job) {
  Slots s = resolve_slots(job);
  nlohmann::json res;
  nlohmann::json estimates = nlohmann::json::array();
  const bool include_raw = (job.format == "csv");
  for (long N : ladder_or(job, {16})) {
    McConfig cfg;
    cfg.ensemble = s.ensemble;
    cfg.d = s.d;
    cfg.N = static_cast<int>(N);
    cfg.seed = job.seed;
    cfg.draws = job.draws;
    cfg.workers = job.workers;
    McResult mc = mc_expect_trace_product(cfg, s.P, s.h);
    nlohmann::json e;
    e["N"] = N;
    e["mean"] = mc.mean;
    e["stderr"] = mc.stderr_;
    if (include_raw) e["raw"] = mc.raw;
    estimates.push_back(e);
  }
  res["estimates"] = estimates;
  return res;
}

nlohmann::json run_free_energy(const JobSpec& job) {
  Slots s = resolve_slots(job);
  require_exact_engine(s.ensemble);
  if (!s.all_poly) throw ArgumentError("free-energy coefficients need polynomial test functions");
  nlohmann::json res;
  nlohmann::json per_n = nlohmann::json::array();
  for (long N : ladder_or(job, {8})) {
    nlohmann::json e;
    e["N"] = N;
    nlohmann::json aks = nlohmann::json::array();
    for (const auto& co : free_energy_coeffs(s.ensemble, s.composed, job.kmax, N))
      aks.push_back(co.to_json());
    e["a_k"] = aks;
    if (!job.observable_g.empty()) {
      TestFn g = parse_testfn(job.observable_g);
      if (!g.is_poly()) throw ArgumentError("observable g must be polynomial in exact mode");
      NCPoly q = parse_ncpoly(job.observable_q.empty() ? "x1" : job.observable_q);
      NCPoly gq = substitute(g.poly, q, engine_cap(s.ensemble));
      nlohmann::json bks = nlohmann::json::array();
      for (const auto& co :
           observable_coeffs(s.ensemble, gq, s.composed, std::min(job.kmax, 3), N))
        bks.push_back(co.to_json());
      e["b_k"] = bks;
    }
    per_n.push_back(e);
  }
  res["per_N"] = per_n;
  return res;
}

nlohmann::json run_selftest(const JobSpec& job) {
  AcceptanceOptions opts;
  opts.seed = job.seed;
  opts.mc_scale = job.mc_scale;
  opts.workers = job.workers;
  const auto results = run_acceptance(opts);
  nlohmann::json res;
  nlohmann::json arr = nlohmann::json::array();
  bool all = true;
  for (const auto& r : results) {
    nlohmann::json e;
    e["id"] = r.id;
    e["name"] = r.name;
    e["pass"] = r.pass;
    e["detail"] = r.detail;
    e["seconds"] = r.seconds;
    arr.push_back(e);
    all = all && r.pass;
  }
  res["criteria"] = arr;
  res["all_pass"] = all;
  return res;
}

}  // namespace

nlohmann::json run_job(const JobSpec& job) {
  nlohmann::json envelope;
  envelope["schema"] = "multitrace-output-v1";
  envelope["version"] = kToolVersion;
  envelope["jobspec"] = job.to_json();
  envelope["seed"] = job.seed;
  nlohmann::json result;
  if (job.subcommand == "exact")
    result = run_exact(job);
  else if (job.subcommand == "expand")
    result = run_expand(job);
  else if (job.subcommand == "cumulant")
    result = run_cumulant(job);
  else if (job.subcommand == "clt")
    result = run_clt(job);
  else if (job.subcommand == "mc")
    result = run_mc(job);
  else if (job.subcommand == "free-energy")
    result = run_free_energy(job);
  else if (job.subcommand == "selftest")
    result = run_selftest(job);
  else
    throw ArgumentError("unknown subcommand '" + job.subcommand + "'");
  envelope["result"] = result;
  envelope["content_hash"] = sha256_hex(envelope.dump());
  return envelope;
}

nlohmann::json run_job_cached(const JobSpec& job, const std::string& cache_dir) {
  if (cache_dir.empty() || job.format == "csv" || job.subcommand == "selftest")
    return run_job(job);
  namespace fs = std::filesystem;
  const std::string key = sha256_hex(job.to_json().dump());
  const fs::path path = fs::path(cache_dir) / (key + ".json");
  if (fs::exists(path)) {
    std::ifstream in(path);
    nlohmann::json cached = nlohmann::json::parse(in, nullptr, false);
    if (!cached.is_discarded()) return cached;
  }
  nlohmann::json out = run_job(job);
  fs::create_directories(cache_dir);
  const fs::path tmp = path.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream o(tmp);
    o << out.dump(2) << "\n";
  }
  fs::rename(tmp, path);
  return out;
}

}  // namespace multitrace

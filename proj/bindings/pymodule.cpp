#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "multitrace/cheb.hpp"
#include "multitrace/cumulant.hpp"
#include "multitrace/expand.hpp"
#include "multitrace/gauss_moments.hpp"
#include "multitrace/haar_moments.hpp"
#include "multitrace/jobspec.hpp"
#include "multitrace/sampler.hpp"
#include "multitrace/selftest.hpp"
#include "multitrace/setpartition.hpp"
#include "multitrace/testfn.hpp"

namespace py = pybind11;
using namespace multitrace;

namespace {

py::object json_to_py(const nlohmann::json& j) {
  switch (j.type()) {
    case nlohmann::json::value_t::null:
      return py::none();
    case nlohmann::json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case nlohmann::json::value_t::number_integer:
      return py::int_(j.get<long long>());
    case nlohmann::json::value_t::number_unsigned:
      return py::int_(j.get<unsigned long long>());
    case nlohmann::json::value_t::number_float:
      return py::float_(j.get<double>());
    case nlohmann::json::value_t::string:
      return py::str(j.get<std::string>());
    case nlohmann::json::value_t::array: {
      py::list out;
      for (const auto& v : j) out.append(json_to_py(v));
      return out;
    }
    case nlohmann::json::value_t::object: {
      py::dict out;
      for (auto it = j.begin(); it != j.end(); ++it)
        out[py::str(it.key())] = json_to_py(it.value());
      return out;
    }
    default:
      return py::none();
  }
}

std::vector<NCPoly> parse_polys(const std::vector<std::string>& texts) {
  std::vector<NCPoly> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(parse_ncpoly(t));
  return out;
}

std::vector<TestFn> parse_testfns(const std::vector<std::string>& texts) {
  std::vector<TestFn> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(parse_testfn(t));
  return out;
}

JobSpec job_from_kwargs(const py::kwargs& kw) {
  JobSpec job;
  for (auto item : kw) {
    const std::string key = py::cast<std::string>(item.first);
    if (key == "subcommand") job.subcommand = py::cast<std::string>(item.second);
    else if (key == "ensemble") job.ensemble = py::cast<std::string>(item.second);
    else if (key == "d") job.d = py::cast<int>(item.second);
    else if (key == "traces") job.traces = py::cast<std::vector<std::string>>(item.second);
    else if (key == "polys") job.polys = py::cast<std::vector<std::string>>(item.second);
    else if (key == "testfns") job.testfns = py::cast<std::vector<std::string>>(item.second);
    else if (key == "order") job.order = py::cast<int>(item.second);
    else if (key == "r") job.r = py::cast<int>(item.second);
    else if (key == "kmax") job.kmax = py::cast<int>(item.second);
    else if (key == "ladder") job.ladder = py::cast<std::vector<long>>(item.second);
    else if (key == "seed") job.seed = py::cast<uint64_t>(item.second);
    else if (key == "draws") job.draws = py::cast<int>(item.second);
    else if (key == "workers") job.workers = py::cast<int>(item.second);
    else if (key == "mode") job.mode = py::cast<std::string>(item.second);
    else if (key == "observable_g") job.observable_g = py::cast<std::string>(item.second);
    else if (key == "observable_q") job.observable_q = py::cast<std::string>(item.second);
    else if (key == "mc_scale") job.mc_scale = py::cast<double>(item.second);
    else throw ArgumentError("unknown job field '" + key + "'");
  }
  return job;
}

}  // namespace

PYBIND11_MODULE(_multitrace, m) {
  m.doc() = "exact and Monte Carlo multi-trace statistics of classical random matrix ensembles";

  py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
  py::register_exception<SizeError>(m, "SizeError", PyExc_ValueError);
  py::register_exception<PoleError>(m, "PoleError", PyExc_ArithmeticError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

  m.def(
      "exact_trace_moment",
      [](const std::string& ensemble, const std::vector<std::string>& traces) {
        const Ensemble e = ensemble_from_name(ensemble);
        const auto polys = parse_polys(traces);
        RatFn value;
        if (e == Ensemble::GUE || e == Ensemble::GOE)
          value = RatFn::from_poly(expect_ncpoly_product_gauss(e, polys));
        else if (e == Ensemble::HaarU)
          value = expect_ncpoly_product_haar_u(polys);
        else
          throw ArgumentError("exact_trace_moment: ensemble must be gue, goe, or haar-u");
        return json_to_py(ratfn_to_json(value));
      },
      py::arg("ensemble"), py::arg("traces"),
      "Exact E[tr w_1 ... tr w_r] as {num, den} coefficient strings in x = 1/N");

  m.def(
      "exact_expansion",
      [](const std::string& ensemble, const std::vector<std::string>& traces, int m_order) {
        return json_to_py(
            exact_expansion(ensemble_from_name(ensemble), parse_polys(traces), m_order)
                .to_json());
      },
      py::arg("ensemble"), py::arg("traces"), py::arg("m"));

  m.def(
      "smooth_expansion",
      [](const std::string& ensemble, const std::vector<std::string>& polys,
         const std::vector<std::string>& testfns, int m_order) {
        return json_to_py(smooth_expansion(ensemble_from_name(ensemble), parse_polys(polys),
                                           parse_testfns(testfns), m_order)
                              .to_json());
      },
      py::arg("ensemble"), py::arg("polys"), py::arg("testfns"), py::arg("m"));

  m.def(
      "scaled_cumulant",
      [](const std::string& ensemble, const std::vector<std::string>& traces) {
        return json_to_py(
            scaled_trace_cumulant_exact(ensemble_from_name(ensemble), parse_polys(traces))
                .to_json());
      },
      py::arg("ensemble"), py::arg("traces"),
      "Exact N^-2 C_r(N Tr ...) data for the slot polynomials");

  m.def(
      "mc_trace_product",
      [](const std::string& ensemble, const std::vector<std::string>& traces, int N, int draws,
         uint64_t seed, int workers) {
        const auto polys = parse_polys(traces);
        McConfig cfg;
        cfg.ensemble = ensemble_from_name(ensemble);
        cfg.N = N;
        cfg.draws = draws;
        cfg.seed = seed;
        cfg.workers = workers;
        for (const auto& p : polys) cfg.d = std::max(cfg.d, p.max_letter_index());
        std::vector<TestFn> hs(polys.size(), testfn_from_poly({Rat(0), Rat(1)}));
        const McResult res = mc_expect_trace_product(cfg, polys, hs);
        py::dict out;
        out["mean"] = res.mean;
        out["stderr"] = res.stderr_;
        return out;
      },
      py::arg("ensemble"), py::arg("traces"), py::arg("N"), py::arg("draws") = 1000,
      py::arg("seed") = 1, py::arg("workers") = 1);

  m.def(
      "sample",
      [](const std::string& ensemble, int N, uint64_t seed, uint64_t index) {
        StreamRng rng(seed, index);
        return sample_matrix(ensemble_from_name(ensemble), N, rng);
      },
      py::arg("ensemble"), py::arg("N"), py::arg("seed") = 1, py::arg("index") = 0,
      "One matrix draw (complex ndarray; 2N x 2N for gse / haar-sp)");

  m.def(
      "cheb_coeffs",
      [](const std::function<double(double)>& h, double K, int M) {
        const ChebSeries s = cheb_coeffs(h, K, M);
        return s.a;
      },
      py::arg("h"), py::arg("K"), py::arg("M") = 129);

  m.def(
      "spectral_bound",
      [](const std::string& ensemble, const std::string& poly) {
        return spectral_bound(ensemble_from_name(ensemble), parse_ncpoly(poly));
      },
      py::arg("ensemble"), py::arg("poly"));

  m.def(
      "weingarten",
      [](int n, const std::vector<int>& mu) {
        return json_to_py(ratfn_to_json(weingarten(n, IntPartition(mu))));
      },
      py::arg("n"), py::arg("mu"), "Unitary Weingarten function as {num, den} in N");

  m.def("bell_number", [](int k) { return static_cast<long long>(set_partitions(k).size()); },
        py::arg("k"));

  m.def(
      "run_job",
      [](const py::kwargs& kw) { return json_to_py(run_job(job_from_kwargs(kw))); },
      "Run a CLI-equivalent job; keyword arguments mirror the CLI flags");

  m.attr("__version__") = kToolVersion;
}

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace multitrace {

inline constexpr const char* kToolVersion = "0.1.0";

// Fully resolved description of one CLI job; its canonical JSON doubles
// as the cache key and is embedded in every output for reproducibility.
struct JobSpec {
  std::string subcommand;  // exact | expand | cumulant | clt | mc | free-energy | selftest
  std::string ensemble = "gue";
  int d = 0;  // 0 = inferred from the polynomials
  std::vector<std::string> traces;   // full trace arguments (h = identity)
  std::vector<std::string> polys;    // P_i text
  std::vector<std::string> testfns;  // h_i text
  std::string observable_g;          // free-energy observable g
  std::string observable_q;          // free-energy observable Q
  int order = 2;                     // -m
  int r = 0;                         // cumulant order; 0 = number of slots
  int kmax = 2;                      // free-energy multi-index bound
  std::vector<long> ladder;          // -N (repeatable)
  uint64_t seed = 1;
  int draws = 2000;
  int workers = 1;
  std::string mode = "exact";        // cumulant: exact | sampled
  std::string format = "json";       // json | csv (mc raw streams)
  double mc_scale = 1.0;             // selftest draw scaling

  nlohmann::json to_json() const;
};

std::string sha256_hex(const std::string& data);

// Runs the job and wraps the result in the reproducibility envelope
// {schema, version, jobspec, result, content_hash}.
nlohmann::json run_job(const JobSpec& job);

// Cache keyed by the SHA-256 of the canonical JobSpec; outputs are
// written atomically (write-then-rename). An empty cache_dir disables
// caching, as does csv format (raw streams are not cached).
nlohmann::json run_job_cached(const JobSpec& job, const std::string& cache_dir);

}  // namespace multitrace

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "multitrace/errors.hpp"
#include "multitrace/jobspec.hpp"

namespace {

using multitrace::JobSpec;

// Sectionless "key = value" config with the same keys as the flags;
// flags take precedence because the file is applied before parsing.
void apply_config_file(const std::string& path, JobSpec& job, std::string& out_path,
                       std::string& cache_dir) {
  std::ifstream in(path);
  if (!in) throw multitrace::ArgumentError("cannot read config file " + path);
  std::string line;
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r\"");
    const auto b = s.find_last_not_of(" \t\r\"");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#' || stripped[0] == '[') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw multitrace::ArgumentError(path + ":" + std::to_string(lineno) +
                                      ": expected key = value");
    std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    while (!key.empty() && key.front() == '-') key.erase(key.begin());
    if (key == "ensemble") job.ensemble = value;
    else if (key == "d") job.d = std::stoi(value);
    else if (key == "trace") job.traces.push_back(value);
    else if (key == "P" || key == "poly") job.polys.push_back(value);
    else if (key == "h" || key == "testfn") job.testfns.push_back(value);
    else if (key == "m" || key == "order") job.order = std::stoi(value);
    else if (key == "N") job.ladder.push_back(std::stol(value));
    else if (key == "seed") job.seed = std::stoull(value);
    else if (key == "draws") job.draws = std::stoi(value);
    else if (key == "workers") job.workers = std::stoi(value);
    else if (key == "r") job.r = std::stoi(value);
    else if (key == "kmax") job.kmax = std::stoi(value);
    else if (key == "mode") job.mode = value;
    else if (key == "format") job.format = value;
    else if (key == "out") out_path = value;
    else if (key == "cache-dir") cache_dir = value;
    else
      throw multitrace::ArgumentError(path + ":" + std::to_string(lineno) +
                                      ": unknown config key '" + key + "'");
  }
}

void add_common_flags(CLI::App* cmd, JobSpec& job, std::string& out_path,
                      std::string& cache_dir, std::string& config_path) {
  cmd->set_help_flag("--help", "print help");  // frees -h for --testfn
  cmd->add_option("--ensemble", job.ensemble,
                  "ensemble: gue | goe | gse | haar-u | haar-o | haar-sp");
  cmd->add_option("-d", job.d, "number of independent matrices (default: inferred)");
  cmd->add_option("--trace", job.traces, "trace argument polynomial (repeatable)");
  cmd->add_option("-P,--poly", job.polys, "polynomial P_i (repeatable)");
  cmd->add_option("-h,--testfn", job.testfns,
                  "test function h_i: t-polynomial, poly:c0,c1,.., exp, sin, cos, runge, "
                  "gauss-bump (repeatable)");
  cmd->add_option("-m,--order", job.order, "expansion order");
  cmd->add_option("-N", job.ladder, "matrix dimension (repeatable ladder)");
  cmd->add_option("--seed", job.seed, "master seed (recorded in outputs)");
  cmd->add_option("--draws", job.draws, "Monte Carlo draw count");
  cmd->add_option("--workers", job.workers, "worker threads for sampling");
  cmd->add_option("--out", out_path, "output file (default: stdout)");
  cmd->add_option("--cache-dir", cache_dir, "result cache directory")
      ->envname("MULTITRACE_CACHE_DIR");
  cmd->add_option("--format", job.format, "json | csv (csv: mc raw draws)");
  cmd->add_option("--config", config_path,
                  "key = value config file; flags take precedence");
}

void write_atomic(const std::string& path, const std::string& data) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    out << data;
    if (!out) throw std::runtime_error("failed to write " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string raw_csv(const nlohmann::json& envelope) {
  std::string csv = "draw,statistic,value\n";
  for (const auto& est : envelope.at("result").at("estimates")) {
    if (!est.contains("raw")) continue;
    int draw = 0;
    for (const auto& row : est.at("raw")) {
      for (size_t s = 0; s < row.size(); ++s)
        csv += std::to_string(draw) + "," + std::to_string(s) + "," +
               nlohmann::json(row[s]).dump() + "\n";
      ++draw;
    }
  }
  return csv;
}

void emit(const nlohmann::json& envelope, const JobSpec& job, const std::string& out_path) {
  const std::string payload =
      (job.format == "csv" && job.subcommand == "mc") ? raw_csv(envelope)
                                                      : envelope.dump(2) + "\n";
  if (out_path.empty())
    std::cout << payload;
  else
    write_atomic(out_path, payload);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multitrace: exact and Monte Carlo multi-trace statistics of classical "
               "random matrix ensembles"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);

  struct Cmd {
    JobSpec job;
    std::string out_path;
    std::string cache_dir;
    std::string config_path;
  };
  std::map<std::string, Cmd> cmds;

  for (const char* name : {"exact", "expand", "cumulant", "clt", "mc", "free-energy"}) {
    CLI::App* sub = app.add_subcommand(name, "");
    Cmd& c = cmds[name];
    c.job.subcommand = name;
    add_common_flags(sub, c.job, c.out_path, c.cache_dir, c.config_path);
    if (std::string(name) == "cumulant") {
      sub->add_option("-r", c.job.r, "cumulant order (slots recycled to match)");
      sub->add_option("--mode", c.job.mode, "exact | sampled");
      sub->add_flag_callback("--exact", [&c] { c.job.mode = "exact"; });
      sub->add_flag_callback("--sampled", [&c] { c.job.mode = "sampled"; });
    }
    if (std::string(name) == "free-energy") {
      sub->add_option("--kmax", c.job.kmax, "largest multi-index weight (<= 4)");
      sub->add_option("-g,--observable", c.job.observable_g, "observable test function g");
      sub->add_option("-Q,--observable-poly", c.job.observable_q, "observable polynomial Q");
    }
  }
  {
    CLI::App* sub = app.add_subcommand("selftest", "run the acceptance battery");
    Cmd& c = cmds["selftest"];
    c.job.subcommand = "selftest";
    add_common_flags(sub, c.job, c.out_path, c.cache_dir, c.config_path);
    sub->add_flag_callback("--quick", [&c] { c.job.mc_scale = 0.05; });
  }

  // Config defaults are applied before the parse, so flags win.
  try {
    std::string subname, config;
    for (int i = 1; i < argc; ++i) {
      const std::string arg = argv[i];
      if (subname.empty() && !arg.empty() && arg[0] != '-') subname = arg;
      if (arg == "--config" && i + 1 < argc) config = argv[i + 1];
      if (arg.rfind("--config=", 0) == 0) config = arg.substr(9);
    }
    if (!config.empty() && cmds.count(subname)) {
      Cmd& c = cmds[subname];
      apply_config_file(config, c.job, c.out_path, c.cache_dir);
    }
  } catch (const multitrace::ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  Cmd& c = cmds[name];
  try {
    const nlohmann::json envelope = multitrace::run_job_cached(c.job, c.cache_dir);
    if (name == "selftest") {
      int failures = 0;
      for (const auto& crit : envelope.at("result").at("criteria")) {
        const bool pass = crit.at("pass").get<bool>();
        if (!pass) ++failures;
        std::printf("[%s] criterion %2d: %s (%.2fs)%s%s\n", pass ? "PASS" : "FAIL",
                    crit.at("id").get<int>(), crit.at("name").get<std::string>().c_str(),
                    crit.at("seconds").get<double>(), pass ? "" : " -- ",
                    pass ? "" : crit.at("detail").get<std::string>().c_str());
      }
      if (!c.out_path.empty()) write_atomic(c.out_path, envelope.dump(2) + "\n");
      return failures == 0 ? 0 : 1;
    }
    emit(envelope, c.job, c.out_path);
    return 0;
  } catch (const multitrace::ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const multitrace::SizeError& e) {
    std::cerr << "error (cap): " << e.what() << "\n";
    return 3;
  } catch (const multitrace::PoleError& e) {
    std::cerr << "error (numeric): " << e.what() << "\n";
    return 4;
  } catch (const multitrace::NumericError& e) {
    std::cerr << "error (numeric): " << e.what() << "\n";
    return 4;
  } catch (const multitrace::ConsistencyError& e) {
    std::cerr << "internal consistency error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>

#include <fmt/format.h>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "dt/experiments.hpp"
#include "dt/io.hpp"
#include "dt/verify.hpp"

namespace dtlab {

namespace {

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> steps;
  std::optional<std::string> out;
  std::optional<int> n;
  std::optional<double> quantum;
  std::string kind;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON config file");
  cmd->add_option("--seed", f.seed, "RNG seed");
  cmd->add_option("--steps", f.steps, "step budget (verify: sample points)");
  cmd->add_option("--out", f.out, "output file (default stdout)");
  cmd->add_option("--n", f.n, "number of punctures");
  cmd->add_option("--quantum", f.quantum, "fingerprint quantum");
}

void setup_logging() {
  auto log = spdlog::get("dtlab");
  if (!log) {
    log = spdlog::stderr_logger_st("dtlab");
    log->set_pattern("[%l] %v");
  }
  spdlog::set_default_logger(log);
  const char* env = std::getenv("DT_LOG");
  spdlog::set_level(spdlog::level::warn);
  if (env != nullptr && *env != '\0') {
    const auto lvl = spdlog::level::from_str(env);
    // from_str maps unknown names to off; only accept real names.
    if (lvl != spdlog::level::off || std::string(env) == "off") {
      spdlog::set_level(lvl);
    } else {
      spdlog::warn("DT_LOG={} not recognized, using warn", env);
    }
  }
}

dt::ExperimentConfig make_config(const Flags& f) {
  dt::ExperimentConfig cfg = f.config.empty() ? dt::ExperimentConfig{} : dt::load_config(f.config);
  if (f.n) {
    if (!cfg.alpha.empty() && static_cast<int>(cfg.alpha.size()) != *f.n) {
      throw dt::ConfigError("--n", "conflicts with the " + std::to_string(cfg.alpha.size()) +
                                       " angles in the config");
    }
    if (cfg.start && *f.n != cfg.n) throw dt::ConfigError("--n", "conflicts with /start");
    cfg.n = *f.n;
  }
  if (cfg.n < 4) throw dt::ConfigError("--n", "need at least 4 punctures");
  if (f.seed) cfg.seed = *f.seed;
  if (f.steps) {
    if (*f.steps < 1) throw dt::ConfigError("--steps", "must be at least 1");
    cfg.steps = *f.steps;
  }
  if (f.quantum) {
    if (!(*f.quantum > 0.0)) throw dt::ConfigError("--quantum", "must be positive");
    cfg.quantum = *f.quantum;
  }
  if (f.out) cfg.out = *f.out;
  return cfg;
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw dt::ConfigError("--out", "cannot open " + path);
      os_ = &file_;
    }
  }
  std::ostream& stream() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

int cmd_verify(const Flags& f, std::ostream& out) {
  const dt::ExperimentConfig cfg = make_config(f);
  dt::VerifyOptions opt;
  opt.n = cfg.n;
  opt.seed = cfg.seed;
  opt.quantum = cfg.quantum;
  if (f.steps) opt.samples = static_cast<int>(*f.steps);
  spdlog::info("verify n={} seed={} samples={}", opt.n, opt.seed, opt.samples);
  const auto results = dt::run_verify_suite(opt);
  Output o(cfg.out, out);
  int passed = 0;
  for (const auto& r : results) {
    o.stream() << fmt::format("{:<34} {:<4} {:.3e}", r.name, r.pass ? "PASS" : "FAIL", r.residual);
    if (!r.detail.empty()) o.stream() << "  " << r.detail;
    o.stream() << "\n";
    if (r.pass) ++passed;
  }
  o.stream() << fmt::format("{}/{} checks passed\n", passed, results.size());
  return passed == static_cast<int>(results.size()) ? 0 : 1;
}

int cmd_orbit(const Flags& f, std::ostream& out, std::ostream& err) {
  const dt::ExperimentConfig cfg = make_config(f);
  const dt::AngleVector alpha = dt::config_alpha(cfg);
  const dt::ActionAngleCoords start = dt::config_start(cfg, alpha);
  Output o(cfg.out, out);
  dt::OrbitOptions opt;
  opt.max_steps = cfg.steps;
  opt.strategy = cfg.strategy;
  opt.seed = cfg.seed;
  opt.quantum = cfg.quantum;
  opt.recanon_period = cfg.recanon_period;
  opt.keep_records = false;
  opt.on_record = [&](const dt::OrbitRecord& rec) { o.stream() << dt::to_jsonl(rec) << "\n"; };
  const dt::OrbitResult res = dt::orbit_explore(alpha, start, dt::config_gens(cfg), opt);
  err << "orbit: " << dt::to_string(res.verdict) << ", " << res.size << " records";
  if (!res.diagnostic.empty()) err << " (" << res.diagnostic << ")";
  err << "\n";
  return res.verdict == dt::OrbitResult::Verdict::Aborted ? 1 : 0;
}

int cmd_scan(const Flags& f, std::ostream& out) {
  dt::ExperimentConfig cfg = make_config(f);
  if (!f.kind.empty()) cfg.scan_kind = f.kind;
  if (f.steps) cfg.samples = *f.steps;
  Output o(cfg.out, out);
  bool ok = true;
  if (cfg.scan_kind == "zero_locus") {
    const auto r = dt::zero_locus_scan(cfg);
    dt::write_csv(o.stream(), r);
    ok = r.ok();
  } else if (cfg.scan_kind == "fiber") {
    const auto r = dt::fiber_multiplicity_scan(cfg);
    dt::write_csv(o.stream(), r);
    ok = r.ok();
  } else if (cfg.scan_kind == "transversality") {
    const auto r = dt::transversality_sweep(cfg);
    dt::write_csv(o.stream(), r);
    ok = r.ok();
  } else {
    throw dt::ConfigError("/scan_kind", "expected zero_locus, fiber or transversality");
  }
  if (!ok) spdlog::error("{} scan reported violations", cfg.scan_kind);
  return ok ? 0 : 1;
}

int cmd_density(const Flags& f, std::ostream& out) {
  const dt::ExperimentConfig cfg = make_config(f);
  const dt::DensityReport r = dt::density_experiment(cfg);
  Output o(cfg.out, out);
  o.stream() << dt::to_json(r) << "\n";
  spdlog::info("density verdict {}", r.verdict);
  return r.verdict == "aborted" ? 1 : 0;
}

int cmd_glue(const Flags& f, std::ostream& out) {
  dt::ExperimentConfig cfg = make_config(f);
  if (f.steps) cfg.samples = *f.steps;
  const dt::GluingReport r = dt::gluing_consistency(cfg);
  Output o(cfg.out, out);
  o.stream() << dt::to_json(r) << "\n";
  return r.ok() ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  setup_logging();
  CLI::App app{"dtlab: representations of punctured spheres, twists and flows"};
  app.require_subcommand(1);
  Flags f;
  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  auto* orbit = app.add_subcommand("orbit", "explore a twist orbit, JSONL records");
  auto* scan = app.add_subcommand("scan", "zero-locus, fiber or transversality scan, CSV");
  auto* density = app.add_subcommand("density", "random-walk density probe, JSON report");
  auto* glue = app.add_subcommand("glue", "restriction and twist compatibility, JSON report");
  for (auto* cmd : {verify, orbit, scan, density, glue}) add_common(cmd, f);
  scan->add_option("--kind", f.kind, "zero_locus | fiber | transversality");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (*verify) return cmd_verify(f, out);
    if (*orbit) return cmd_orbit(f, out, err);
    if (*scan) return cmd_scan(f, out);
    if (*density) return cmd_density(f, out);
    if (*glue) return cmd_glue(f, out);
  } catch (const dt::ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace dtlab

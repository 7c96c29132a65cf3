#include "dt/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace dt {

std::string fmt_real(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

template <class T, class F>
std::string list(const std::vector<T>& xs, F f) {
  std::string s = "[";
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k) s += ",";
    s += f(xs[k]);
  }
  return s + "]";
}

std::string reals(const std::vector<double>& xs) { return list(xs, fmt_real); }

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

std::string points(const std::vector<HPoint>& ps) {
  return list(ps, [](HPoint p) { return "[" + fmt_real(p.x) + "," + fmt_real(p.y) + "]"; });
}

std::string gammas(const std::vector<std::optional<double>>& g) {
  return list(g, [](const std::optional<double>& v) { return v ? fmt_real(*v) : std::string("null"); });
}

std::string ints(const std::vector<std::int64_t>& xs) {
  return list(xs, [](std::int64_t v) { return std::to_string(v); });
}

std::string strings(const std::vector<std::string>& xs) { return list(xs, quoted); }

std::string boolean(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string to_json(const TriangleChain& chain) {
  return "{\"alpha\":" + reals(chain.alpha.values()) + ",\"C\":" + points(chain.C) +
         ",\"B\":" + points(chain.B) + "}";
}

std::string to_json(const Representation& rep) {
  return "{\"alpha\":" + reals(rep.alpha.values()) + ",\"gens\":" +
         list(rep.gens, [](const Isometry& g) {
           return "[[" + fmt_real(g.a()) + "," + fmt_real(g.b()) + "],[" + fmt_real(g.c()) + "," +
                  fmt_real(g.d()) + "]]";
         }) +
         "}";
}

std::string to_json(const ActionAngleCoords& c) {
  return "{\"beta\":" + reals(c.beta) + ",\"gamma\":" + gammas(c.gamma) + "}";
}

std::string to_jsonl(const OrbitRecord& rec) {
  return "{\"step\":" + std::to_string(rec.step) + ",\"word\":" + strings(rec.word) +
         ",\"beta\":" + reals(rec.coords.beta) + ",\"gamma\":" + gammas(rec.coords.gamma) +
         ",\"fp\":" + quoted(rec.fp.hex()) + "}";
}

std::string to_json(const ExperimentConfig& cfg) {
  std::string s = "{\"n\":" + std::to_string(cfg.n);
  s += ",\"alpha\":" + reals(cfg.alpha);
  s += ",\"start\":" + (cfg.start ? to_json(*cfg.start) : std::string("\"random\""));
  s += ",\"gens\":" + strings(cfg.gens);
  s += ",\"steps\":" + std::to_string(cfg.steps);
  s += ",\"seed\":" + std::to_string(cfg.seed);
  s += ",\"strategy\":" + quoted(cfg.strategy == Strategy::BFS ? "bfs" : "random_walk");
  s += ",\"quantum\":" + fmt_real(cfg.quantum);
  s += ",\"recanon_period\":" + std::to_string(cfg.recanon_period);
  s += ",\"checkpoints\":" + ints(cfg.checkpoints);
  s += ",\"probe_budget\":" + std::to_string(cfg.probe_budget);
  s += ",\"scan_kind\":" + quoted(cfg.scan_kind);
  s += ",\"samples\":" + std::to_string(cfg.samples);
  s += ",\"index\":" + std::to_string(cfg.index);
  s += ",\"nbar\":" + std::to_string(cfg.nbar);
  return s + "}";
}

std::string to_json(const DensityReport& r) {
  std::string s = "{\"kind\":\"density\",\"config\":" + to_json(r.config);
  s += ",\"start\":" + to_json(r.start);
  s += ",\"irrational_curves\":" + strings(r.irrational_curves);
  s += ",\"probe\":{\"verdict\":" + quoted(r.probe_verdict) + ",\"size\":" + std::to_string(r.probe_size) + "}";
  s += ",\"dims\":" + std::to_string(r.dims);
  s += ",\"bins_per_axis\":" + std::to_string(r.bins_per_axis);
  s += ",\"samples\":" + std::to_string(r.samples);
  s += ",\"counts\":" + ints(r.counts);
  s += ",\"checkpoints\":" + list(r.checkpoints, [](const DensityCheckpoint& c) {
         return "{\"samples\":" + std::to_string(c.samples) + ",\"discrepancy\":" +
                fmt_real(c.discrepancy) + ",\"cells_visited\":" + std::to_string(c.cells_visited) + "}";
       });
  s += ",\"non_increasing\":" + boolean(r.non_increasing);
  s += ",\"last_below_first\":" + boolean(r.last_below_first);
  s += ",\"all_cells_visited\":" + boolean(r.all_cells_visited);
  s += ",\"thresholds\":{\"statistic\":\"star discrepancy over grid-anchored boxes\","
       "\"trend\":\"non-increasing across checkpoints and last below first\","
       "\"note\":\"engineering choice; no rate is claimed\"}";
  s += ",\"verdict\":" + quoted(r.verdict);
  s += ",\"label\":" + quoted(r.label);
  s += ",\"diagnostic\":" + quoted(r.diagnostic);
  return s + "}";
}

std::string to_json(const GluingReport& r) {
  std::string s = "{\"kind\":\"glue\",\"config\":" + to_json(r.config);
  s += ",\"nbar\":" + std::to_string(r.nbar);
  s += ",\"points\":" + std::to_string(r.points);
  s += ",\"twists\":" + strings(r.twists);
  s += ",\"lambda_error\":" + fmt_real(r.lambda_error);
  s += ",\"max_commutation_error\":" + fmt_real(r.max_commutation_error);
  s += ",\"max_outside_error\":" + fmt_real(r.max_outside_error);
  s += ",\"max_chain_rep_error\":" + fmt_real(r.max_chain_rep_error);
  s += ",\"ok\":" + boolean(r.ok());
  return s + "}";
}

void write_csv(std::ostream& os, const FiberReport& rep) {
  const std::size_t m = rep.beta.size();
  for (std::size_t i = 1; i <= m; ++i) os << "gamma_" << i << ",";
  for (const auto& z : rep.zeta) os << z << ",";
  os << "cluster\n";
  for (const auto& row : rep.rows) {
    for (double g : row.gamma) os << fmt_real(g) << ",";
    for (double z : row.zeta) os << fmt_real(z) << ",";
    os << row.cluster << "\n";
  }
}

void write_csv(std::ostream& os, const ZeroLocusScan& scan) {
  os << "i,gamma,bracket_delta,bracket_eps,scale_delta,scale_eps,dist_delta_locus,"
        "dist_eps_locus,delta_small,eps_small,ok\n";
  for (const auto& r : scan.rows) {
    os << r.i << "," << fmt_real(r.gamma) << "," << fmt_real(r.bracket_delta) << ","
       << fmt_real(r.bracket_eps) << "," << fmt_real(r.scale_delta) << "," << fmt_real(r.scale_eps)
       << "," << fmt_real(r.dist_delta_locus) << "," << fmt_real(r.dist_eps_locus) << ","
       << r.delta_small << "," << r.eps_small << "," << r.ok() << "\n";
  }
}

void write_csv(std::ostream& os, const TransversalityReport& rep) {
  const std::size_t m = static_cast<std::size_t>(rep.config.n - 3);
  for (std::size_t i = 1; i <= m; ++i) os << "beta_" << i << ",";
  for (std::size_t i = 1; i <= m; ++i) os << "gamma_" << i << ",";
  os << "regular,delta_full,eps_full,pair_full,prescribed_full,in_delta_window,in_eps_window,"
        "in_band,delta_margin,eps_margin,pair_margin\n";
  for (const auto& r : rep.rows) {
    for (double b : r.coords.beta) os << fmt_real(b) << ",";
    for (const auto& g : r.coords.gamma) os << (g ? fmt_real(*g) : std::string()) << ",";
    os << r.regular << "," << r.delta_full << "," << r.eps_full << "," << r.pair_full << ","
       << r.prescribed_full << "," << r.in_delta_window << "," << r.in_eps_window << ","
       << r.in_band << "," << fmt_real(r.delta_margin) << "," << fmt_real(r.eps_margin) << ","
       << fmt_real(r.pair_margin) << "\n";
  }
}

namespace {

using nlohmann::json;

double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  return j.get<double>();
}

std::int64_t integer(const json& j, const std::string& path, std::int64_t lo) {
  if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
  const auto v = j.get<std::int64_t>();
  if (v < lo) throw ConfigError(path, "must be at least " + std::to_string(lo));
  return v;
}

std::vector<double> number_list(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(number(j[k], path + "/" + std::to_string(k)));
  return out;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("", "expected a JSON object");
  static const std::set<std::string> known{
      "n", "alpha", "start", "gens", "steps", "seed", "strategy", "quantum", "recanon_period",
      "checkpoints", "probe_budget", "scan_kind", "samples", "index", "nbar", "out"};
  for (const auto& item : doc.items()) {
    if (!known.count(item.key())) throw ConfigError("/" + item.key(), "unknown key");
  }
  ExperimentConfig cfg;
  if (doc.contains("n")) {
    cfg.n = static_cast<int>(integer(doc["n"], "/n", 4));
  } else if (doc.contains("alpha") && doc["alpha"].is_array()) {
    cfg.n = static_cast<int>(doc["alpha"].size());
  }
  if (doc.contains("alpha")) {
    cfg.alpha = number_list(doc["alpha"], "/alpha");
    if (static_cast<int>(cfg.alpha.size()) != cfg.n) {
      throw ConfigError("/alpha", "expected " + std::to_string(cfg.n) + " entries");
    }
    try {
      AngleVector check(cfg.alpha);
    } catch (const CoordinateError& e) {
      throw ConfigError("/alpha", e.what());
    }
  }
  if (doc.contains("start")) {
    const json& s = doc["start"];
    if (s.is_string()) {
      if (s.get<std::string>() != "random") throw ConfigError("/start", "expected \"random\" or an object");
    } else if (s.is_object()) {
      ActionAngleCoords c;
      if (!s.contains("beta")) throw ConfigError("/start/beta", "missing");
      c.beta = number_list(s["beta"], "/start/beta");
      if (!s.contains("gamma") || !s["gamma"].is_array()) {
        throw ConfigError("/start/gamma", "expected an array of numbers or nulls");
      }
      for (std::size_t k = 0; k < s["gamma"].size(); ++k) {
        const json& g = s["gamma"][k];
        if (g.is_null()) {
          c.gamma.emplace_back(std::nullopt);
        } else {
          c.gamma.emplace_back(number(g, "/start/gamma/" + std::to_string(k)));
        }
      }
      if (static_cast<int>(c.beta.size()) != cfg.n - 3) {
        throw ConfigError("/start/beta", "expected " + std::to_string(cfg.n - 3) + " entries");
      }
      if (static_cast<int>(c.gamma.size()) != cfg.n - 3) {
        throw ConfigError("/start/gamma", "expected " + std::to_string(cfg.n - 3) + " entries");
      }
      cfg.start = c;
    } else {
      throw ConfigError("/start", "expected \"random\" or an object");
    }
  }
  if (doc.contains("gens")) {
    const json& g = doc["gens"];
    if (!g.is_array()) throw ConfigError("/gens", "expected an array of curve labels");
    for (std::size_t k = 0; k < g.size(); ++k) {
      const std::string path = "/gens/" + std::to_string(k);
      if (!g[k].is_string()) throw ConfigError(path, "expected a curve label");
      try {
        parse_curve(g[k].get<std::string>(), cfg.n);
      } catch (const TopologyError& e) {
        throw ConfigError(path, e.what());
      }
      cfg.gens.push_back(g[k].get<std::string>());
    }
  }
  if (doc.contains("steps")) cfg.steps = integer(doc["steps"], "/steps", 1);
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) throw ConfigError("/seed", "expected an unsigned integer");
    cfg.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("strategy")) {
    const json& s = doc["strategy"];
    if (s == "random_walk") {
      cfg.strategy = Strategy::RandomWalk;
    } else if (s == "bfs") {
      cfg.strategy = Strategy::BFS;
    } else {
      throw ConfigError("/strategy", "expected \"random_walk\" or \"bfs\"");
    }
  }
  if (doc.contains("quantum")) {
    cfg.quantum = number(doc["quantum"], "/quantum");
    if (!(cfg.quantum > 0.0)) throw ConfigError("/quantum", "must be positive");
  }
  if (doc.contains("recanon_period")) {
    cfg.recanon_period = static_cast<int>(integer(doc["recanon_period"], "/recanon_period", 0));
  }
  if (doc.contains("checkpoints")) {
    const json& c = doc["checkpoints"];
    if (!c.is_array()) throw ConfigError("/checkpoints", "expected an array of integers");
    cfg.checkpoints.clear();
    for (std::size_t k = 0; k < c.size(); ++k) {
      cfg.checkpoints.push_back(integer(c[k], "/checkpoints/" + std::to_string(k), 1));
    }
  }
  if (doc.contains("probe_budget")) cfg.probe_budget = integer(doc["probe_budget"], "/probe_budget", 1);
  if (doc.contains("scan_kind")) {
    const json& k = doc["scan_kind"];
    if (!(k == "zero_locus" || k == "fiber" || k == "transversality")) {
      throw ConfigError("/scan_kind", "expected zero_locus, fiber or transversality");
    }
    cfg.scan_kind = k.get<std::string>();
  }
  if (doc.contains("samples")) cfg.samples = integer(doc["samples"], "/samples", 1);
  if (doc.contains("index")) {
    cfg.index = static_cast<int>(integer(doc["index"], "/index", 1));
    if (cfg.index > cfg.n - 3) throw ConfigError("/index", "must be at most n-3");
  }
  if (doc.contains("nbar")) cfg.nbar = static_cast<int>(integer(doc["nbar"], "/nbar", 0));
  if (doc.contains("out")) {
    if (!doc["out"].is_string()) throw ConfigError("/out", "expected a path");
    cfg.out = doc["out"].get<std::string>();
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

TriangleChain chain_from_json(const std::string& text) {
  const json doc = json::parse(text);
  TriangleChain ch;
  ch.alpha = AngleVector(doc.at("alpha").get<std::vector<double>>());
  for (const auto& p : doc.at("C")) ch.C.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  for (const auto& p : doc.at("B")) ch.B.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  return ch;
}

}  // namespace dt

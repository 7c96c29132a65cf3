#include <gtest/gtest.h>

#include "json.hpp"
#include <sstream>

#include "dt/io.hpp"
#include "support.hpp"

using namespace dt;
using nlohmann::json;

TEST(Real, ShortestRoundTrip) {
  EXPECT_EQ(fmt_real(1e-6), "1e-06");
  EXPECT_EQ(fmt_real(0.5), "0.5");
  EXPECT_EQ(fmt_real(-2.0), "-2");
  EXPECT_EQ(fmt_real(std::nan("")), "null");
  EXPECT_EQ(fmt_real(INFINITY), "null");
  Rng rng(1);
  for (int k = 0; k < 1000; ++k) {
    const double v = rng.uniform(-1e3, 1e3) * std::pow(10.0, rng.uniform(-20, 20));
    EXPECT_EQ(std::stod(fmt_real(v)), v);
  }
}

TEST(Config, FullDocument) {
  const ExperimentConfig c = parse_config(R"({
    "n": 5, "alpha": [5.9, 5.9, 5.9, 5.9, 5.9],
    "start": {"beta": [1.0, 2.0], "gamma": [0.5, null]},
    "gens": ["b1", "p3"], "steps": 50, "seed": 9, "strategy": "bfs",
    "quantum": 1e-7, "recanon_period": 10, "checkpoints": [10, 50],
    "probe_budget": 5, "scan_kind": "fiber", "samples": 7, "index": 2, "nbar": 4,
    "out": "x.csv"})");
  EXPECT_EQ(c.n, 5);
  EXPECT_EQ(c.alpha.size(), 5u);
  ASSERT_TRUE(c.start);
  EXPECT_EQ(c.start->beta, (std::vector<double>{1.0, 2.0}));
  EXPECT_EQ(*c.start->gamma[0], 0.5);
  EXPECT_FALSE(c.start->gamma[1]);
  EXPECT_EQ(c.gens, (std::vector<std::string>{"b1", "p3"}));
  EXPECT_EQ(c.steps, 50);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.strategy, Strategy::BFS);
  EXPECT_EQ(c.quantum, 1e-7);
  EXPECT_EQ(c.recanon_period, 10);
  EXPECT_EQ(c.checkpoints, (std::vector<std::int64_t>{10, 50}));
  EXPECT_EQ(c.probe_budget, 5);
  EXPECT_EQ(c.scan_kind, "fiber");
  EXPECT_EQ(c.samples, 7);
  EXPECT_EQ(c.index, 2);
  EXPECT_EQ(c.nbar, 4);
  EXPECT_EQ(c.out, "x.csv");
}

TEST(Config, RoundTrip) {
  ExperimentConfig c;
  c.n = 6;
  c.alpha = {5.8, 5.9, 6.0, 5.9, 5.8, 6.1};
  c.start = ActionAngleCoords{{1.1, 2.2, 3.3}, {0.1, std::nullopt, 0.3}};
  c.gens = {"d2"};
  c.quantum = 3e-6;
  c.scan_kind = "transversality";
  const ExperimentConfig d = parse_config(to_json(c));
  EXPECT_EQ(to_json(d), to_json(c));
  EXPECT_EQ(d.alpha, c.alpha);
  EXPECT_EQ(d.quantum, c.quantum);
}

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Config, ErrorsCarryPointer) {
  EXPECT_EQ(error_of(R"({"n": 4, "alpha": [5.9, "x", 5.9, 5.9]})"), "/alpha/1: expected a number");
  EXPECT_EQ(error_of(R"({"bogus": 1})"), "/bogus: unknown key");
  EXPECT_EQ(error_of(R"({"n": 5, "gens": ["b1", "q7"]})").rfind("/gens/1", 0), 0u);
  EXPECT_EQ(error_of(R"({"quantum": -1})").rfind("/quantum", 0), 0u);
  EXPECT_EQ(error_of(R"({"n": 4, "alpha": [1, 1, 1, 1]})").rfind("/alpha", 0), 0u);
  EXPECT_EQ(error_of(R"({"strategy": "dfs"})").rfind("/strategy", 0), 0u);
  EXPECT_EQ(error_of(R"({"n": 5, "start": {"beta": [1.0]}})").rfind("/start", 0), 0u);
  EXPECT_EQ(error_of(R"({"n": 4, "index": 2})").rfind("/index", 0), 0u);
  EXPECT_FALSE(error_of("[1, 2").empty());
  EXPECT_THROW(load_config("/nonexistent/cfg.json"), ConfigError);
}

TEST(Json, ChainRoundTrip) {
  Rng rng(2);
  const auto p = fixture::random_point(6, rng);
  const TriangleChain back = chain_from_json(to_json(p.chain));
  ASSERT_EQ(back.C.size(), p.chain.C.size());
  for (std::size_t k = 0; k < back.C.size(); ++k) {
    EXPECT_EQ(back.C[k].x, p.chain.C[k].x);
    EXPECT_EQ(back.C[k].y, p.chain.C[k].y);
  }
  for (std::size_t k = 0; k < back.B.size(); ++k) EXPECT_EQ(back.B[k].y, p.chain.B[k].y);
  EXPECT_EQ(back.alpha.values(), p.chain.alpha.values());
}

TEST(Json, RecordLine) {
  OrbitRecord r;
  r.step = 3;
  r.word = {"b1", "d2^-1"};
  r.coords = {{1.5}, {std::nullopt}};
  const json j = json::parse(to_jsonl(r));
  EXPECT_EQ(j["step"], 3);
  EXPECT_EQ(j["word"][1], "d2^-1");
  EXPECT_EQ(j["beta"][0], 1.5);
  EXPECT_TRUE(j["gamma"][0].is_null());
  EXPECT_EQ(j["fp"].get<std::string>().size(), 16u);
}

TEST(Json, ReportsParse) {
  ExperimentConfig cfg;
  cfg.n = 5;
  cfg.samples = 2;
  const json g = json::parse(to_json(gluing_consistency(cfg)));
  EXPECT_EQ(g["kind"], "glue");
  EXPECT_TRUE(g["ok"].get<bool>());
  const Representation r = fixture::point_at(config_alpha(cfg), config_start(cfg, config_alpha(cfg))).rep;
  const json jr = json::parse(to_json(r));
  EXPECT_EQ(jr["gens"].size(), 5u);
}

TEST(Csv, Headers) {
  TransversalityReport t;
  t.config.n = 5;
  std::ostringstream os;
  write_csv(os, t);
  EXPECT_EQ(os.str(),
            "beta_1,beta_2,gamma_1,gamma_2,regular,delta_full,eps_full,pair_full,prescribed_full,"
            "in_delta_window,in_eps_window,in_band,delta_margin,eps_margin,pair_margin\n");
  ZeroLocusScan z;
  z.rows.resize(1);
  std::ostringstream zs;
  write_csv(zs, z);
  std::string line;
  std::istringstream in(zs.str());
  std::getline(in, line);
  const auto cols = std::count(line.begin(), line.end(), ',');
  std::getline(in, line);
  EXPECT_EQ(std::count(line.begin(), line.end(), ','), cols);
}

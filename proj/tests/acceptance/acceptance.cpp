// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "dt/chain.hpp"
#include "dt/dynamics.hpp"
#include "dt/experiments.hpp"
#include "dt/rep.hpp"
#include "dt/sampling.hpp"

using namespace dt;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Sample {
  AngleVector alpha;
  ActionAngleCoords coords;
  TriangleChain chain;
  Representation rep;
};

Sample sample(int n, Rng& rng) {
  Sample s;
  s.alpha = random_alpha(n, rng);
  s.coords = random_coords(s.alpha, rng);
  s.chain = build_chain(s.alpha, s.coords);
  s.rep = chain_to_rep(s.chain);
  return s;
}

Sample sample_at(const AngleVector& a, const ActionAngleCoords& c) {
  Sample s{a, c, build_chain(a, c), {}};
  s.rep = chain_to_rep(s.chain);
  return s;
}

std::vector<CurveClass> all_curves(int n) {
  std::vector<CurveClass> cs = standard_curves(n).all();
  for (int j = 1; j < n; ++j) cs.push_back(curve_pair(n, j));
  return cs;
}

bool fp_equal(const Representation& a, const Representation& b, double q = 1e-6) {
  return fingerprint(a, q).same_point(fingerprint(b, q), q);
}

std::vector<double> normalized(std::vector<double> mu) {
  const double s = std::accumulate(mu.begin(), mu.end(), 0.0);
  for (double& x : mu) x *= 0.5 / s;
  return mu;
}

// Triangle area from the angle defect, computed from vertex positions only.
double area_from_vertices(HPoint p, HPoint q, HPoint r) {
  const double a = std::abs(oriented_angle(p, q, r));
  const double b = std::abs(oriented_angle(q, r, p));
  const double c = std::abs(oriented_angle(r, p, q));
  auto inner = [](double x) { return std::min(x, kTwoPi - x); };
  return kPi - inner(a) - inner(b) - inner(c);
}

Outcome c1_round_trip() {
  const auto t0 = Clock::now();
  Rng rng(101);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const int n = 4 + k % 5;
    const AngleVector a = random_alpha(n, rng);
    const ActionAngleCoords c = random_coords(a, rng);
    const ActionAngleCoords e = extract_coords(build_chain(a, c));
    for (std::size_t i = 0; i < c.beta.size(); ++i) {
      worst = std::max(worst, std::abs(e.beta[i] - c.beta[i]));
      worst = std::max(worst, e.gamma[i] ? std::abs(circular_diff(*e.gamma[i], *c.gamma[i])) : 1.0);
    }
  }
  const double secs = seconds_since(t0);
  return {worst < 1e-9 && secs < 10.0, "sup error " + sci(worst) + ", " + sci(secs) + " s"};
}

Outcome c2_representation() {
  Rng rng(102);
  double prod = 0.0, beta = 0.0, area = 0.0, sum = 0.0;
  for (int k = 0; k < 250; ++k) {
    const int n = 4 + k % 5;
    const Sample s = sample(n, rng);
    prod = std::max(prod, product_residual(s.rep));
    const MomentValues m = moment_map(s.alpha, s.coords.beta);
    sum = std::max(sum, std::abs(m.sum() - 0.5));
    for (int i = 1; i <= n - 3; ++i) {
      const double th = classify(evaluate(s.rep, curve_b(n, i).word)).angle;
      beta = std::max(beta, std::abs(circular_diff(th, s.coords.beta[static_cast<std::size_t>(i - 1)])));
    }
    for (int t = 0; t <= n - 3; ++t) {
      const Triangle tr = s.chain.triangle(t);
      area = std::max(area, std::abs(area_from_vertices(tr.p1, tr.p2, tr.p3) -
                                     s.alpha.lambda() * m.mu[static_cast<std::size_t>(t)]));
    }
  }
  return {prod < 1e-9 && beta < 1e-9 && area < 1e-9 && sum < 1e-12,
          "product " + sci(prod) + ", beta " + sci(beta) + ", area " + sci(area) + ", sum " + sci(sum)};
}

Outcome c3_goldman() {
  Rng rng(103);
  int checked = 0, bad = 0;
  for (int k = 0; k < 100; ++k) {
    const int n = 4 + k % 3;
    const Sample s = sample(n, rng);
    for (const auto& c : all_curves(n)) {
      const double theta = angle_function(s.rep, c);
      ++checked;
      if (!fp_equal(dehn_twist(s.rep, c), flow(s.rep, c, theta / 2.0))) ++bad;
    }
  }
  return {bad == 0, std::to_string(checked - bad) + "/" + std::to_string(checked) + " fingerprint-equal"};
}

Outcome c4_twist_law() {
  Rng rng(104);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const int n = 4 + k % 4;
    const Sample s = sample(n, rng);
    for (int i = 1; i <= n - 3; ++i) {
      const auto ii = static_cast<std::size_t>(i - 1);
      const ActionAngleCoords e = extract_coords(rep_to_chain(dehn_twist(s.rep, curve_b(n, i))));
      worst = std::max(worst, std::abs(circular_diff(*e.gamma[ii], *s.coords.gamma[ii] + s.coords.beta[ii])));
      for (std::size_t j = 0; j < e.beta.size(); ++j) {
        worst = std::max(worst, std::abs(e.beta[j] - s.coords.beta[j]));
        if (j != ii) worst = std::max(worst, std::abs(circular_diff(*e.gamma[j], *s.coords.gamma[j])));
      }
    }
  }
  // Boundary points: mu_0 = ... = mu_{i-1} = 0 (and the trailing analogue)
  // are fixed by the twist along b_i; generic points are not.
  int fixed_bad = 0, moved_bad = 0, boundary = 0;
  for (int k = 0; k < 60; ++k) {
    const int n = 5 + k % 3;
    const AngleVector a = random_alpha(n, rng);
    const int i = 1 + k % (n - 3);
    for (bool leading : {true, false}) {
      std::vector<double> mu = random_moments(n, rng);
      for (int j = 0; j <= n - 3; ++j) {
        if (leading ? j < i : j >= i) mu[static_cast<std::size_t>(j)] = 0.0;
      }
      const Sample s = sample_at(a, coords_from_moments(a, normalized(mu), rng));
      ++boundary;
      if (!fp_equal(dehn_twist(s.rep, curve_b(n, i)), s.rep)) ++fixed_bad;
    }
    const Sample g = sample_at(a, random_coords(a, rng));
    if (fp_equal(dehn_twist(g.rep, curve_b(n, i)), g.rep)) ++moved_bad;
  }
  return {worst < 1e-9 && fixed_bad == 0 && moved_bad == 0,
          "law " + sci(worst) + ", boundary not fixed " + std::to_string(fixed_bad) + "/" +
              std::to_string(boundary) + ", generic fixed " + std::to_string(moved_bad) + "/60"};
}

Outcome c5_periodic() {
  Rng rng(105);
  int checked = 0, bad = 0;
  for (int k = 0; k < 100; ++k) {
    const int n = 4 + k % 4;
    const Sample s = sample(n, rng);
    for (const auto& c : all_curves(n)) {
      ++checked;
      if (!fp_equal(flow(s.rep, c, kPi), s.rep)) ++bad;
    }
  }
  return {bad == 0, std::to_string(checked - bad) + "/" + std::to_string(checked) + " fingerprint-equal"};
}

Outcome c6_closed_form() {
  Rng rng(106);
  const double h = 1e-5;
  const double tol = std::max(1e-5, 10 * h * h);
  double worst = 0.0;
  double worst_ratio = 0.0;
  const CurveClass b = curve_b(4, 1), d = curve_d(4, 1), e = curve_e(4, 1);
  for (int k = 0; k < 100; ++k) {
    const Sample s = sample(4, rng);
    worst = std::max({worst,
                      std::abs(poisson_fd(s.rep, b, d, h) - bracket_beta_delta_closed(s.chain, 1)),
                      std::abs(poisson_fd(s.rep, b, e, h) - bracket_beta_eps_closed(s.chain, 1))});
    // Antisymmetry defect at three step sizes: fit C h^2 at the largest step
    // and require the smaller ones to stay under it (plus rounding ~ eps/h).
    for (const auto& [f, g] : {std::pair{b, d}, std::pair{b, e}, std::pair{d, e}}) {
      auto defect = [&](double hh) { return std::abs(poisson_fd(s.rep, f, g, hh) + poisson_fd(s.rep, g, f, hh)); };
      const double c = defect(1e-2) / 1e-4;
      for (double hh : {1e-3, 1e-4}) {
        worst_ratio = std::max(worst_ratio, defect(hh) / (c * hh * hh + 1e-14 / hh));
      }
    }
  }
  return {worst < tol && worst_ratio < 2.0,
          "closed form " + sci(worst) + " (tol " + sci(tol) + "), antisymmetry h^2 ratio " + sci(worst_ratio)};
}

Outcome c7_zero_locus() {
  std::int64_t rows = 0, failures = 0, in_window = 0;
  for (int n = 4; n <= 6; ++n) {
    for (int i = 1; i <= n - 3; ++i) {
      for (std::uint64_t seed : {1u, 2u, 3u}) {
        ExperimentConfig cfg;
        cfg.n = n;
        cfg.index = i;
        cfg.seed = seed * 31 + static_cast<std::uint64_t>(n);
        cfg.samples = 200;
        const ZeroLocusScan s = zero_locus_scan(cfg);
        rows += static_cast<std::int64_t>(s.rows.size());
        failures += s.failures;
        for (const auto& r : s.rows) {
          if (r.dist_delta_locus < 1e-4 || r.dist_eps_locus < 1e-4) ++in_window;
          if (r.delta_small && r.eps_small) ++failures;
        }
      }
    }
  }
  return {failures == 0 && in_window > 0,
          std::to_string(rows) + " rows (" + std::to_string(in_window) + " in windows), " +
              std::to_string(failures) + " failures"};
}

Outcome c8_fiber() {
  std::int64_t viol = 0, max4 = 0, max5 = 0;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    ExperimentConfig cfg;
    cfg.n = 4;
    cfg.samples = 10000;
    cfg.seed = seed;
    const FiberReport r = fiber_multiplicity_scan(cfg);
    viol += r.violations;
    max4 = std::max(max4, r.max_cluster);
  }
  for (std::uint64_t seed : {1u, 2u}) {
    ExperimentConfig cfg;
    cfg.n = 5;
    cfg.samples = 2500;
    cfg.seed = seed;
    const FiberReport r = fiber_multiplicity_scan(cfg);
    viol += r.violations;
    max5 = std::max(max5, r.max_cluster);
  }
  return {viol == 0 && max4 <= 2 && max5 <= 4,
          "max fiber n=4 " + std::to_string(max4) + ", n=5 " + std::to_string(max5) + ", violations " +
              std::to_string(viol)};
}

Outcome c9_transversality() {
  std::int64_t rows = 0, pres = 0, mism = 0, unc = 0;
  double off = 0.0;
  for (int n = 4; n <= 6; ++n) {
    ExperimentConfig cfg;
    cfg.n = n;
    cfg.samples = 40;
    cfg.seed = 900 + static_cast<std::uint64_t>(n);
    const TransversalityReport r = transversality_sweep(cfg);
    rows += static_cast<std::int64_t>(r.rows.size());
    pres += r.prescribed_failures;
    mism += r.window_mismatches;
    unc += r.uncovered;
    off = std::max(off, r.max_off_diagonal);
  }
  return {pres == 0 && mism == 0 && unc == 0 && off < 1e-3,
          std::to_string(rows) + " points, prescribed failures " + std::to_string(pres) +
              ", window mismatches " + std::to_string(mism) + ", uncovered " + std::to_string(unc)};
}

// Exceptional condition on the extended beta vector, evaluated directly.
bool exceptional_condition(const AngleVector& a, const std::vector<double>& beta, int ip) {
  const std::vector<double> bx = extended_beta(a, beta);
  const auto i = static_cast<std::size_t>(ip);
  return std::abs(bx[i + 2] - a[ip + 2]) < 1e-9 && std::abs(bx[i] - (kTwoPi - a[ip + 1])) < 1e-9;
}

Outcome c10_undegenerate() {
  Rng rng(110);
  int generic = 0, generic_bad = 0, exceptional = 0, exceptional_bad = 0;
  for (int k = 0; k < 100; ++k) {
    const int n = 4 + k % 4;
    const AngleVector a = random_alpha(n, rng);
    const int ip = k % (n - 3);
    std::vector<double> mu = random_moments(n, rng);
    mu[static_cast<std::size_t>(ip)] = 0.0;
    const Sample s = sample_at(a, coords_from_moments(a, normalized(mu), rng));
    if (exceptional_condition(a, s.coords.beta, ip)) continue;
    ++generic;
    const MomentValues after = moment_map(a, extract_coords(rep_to_chain(undegenerate_twist(s.rep, ip))).beta);
    if (!(after.mu[static_cast<std::size_t>(ip)] > 1e-9)) ++generic_bad;
  }
  // Exceptional branch: alpha chosen so that the condition holds.
  struct Case {
    std::vector<double> alpha;  // multiples of pi
    std::vector<double> beta;
    std::vector<std::optional<double>> gamma;
  };
  const double p = kPi;
  const std::vector<Case> cases{
      {{1.8, 1.8, 1.7, 1.7}, {0.4 * p}, {std::nullopt}},
      {{1.9, 1.9, 1.6, 1.9, 1.9}, {0.2 * p, 1.6 * p}, {std::nullopt, 0.7}},
      {{1.9, 1.9, 1.6, 1.9, 1.9, 1.9}, {0.2 * p, 1.6 * p, 1.75 * p}, {std::nullopt, 0.7, 2.1}},
  };
  for (const auto& c : cases) {
    std::vector<double> al;
    for (double x : c.alpha) al.push_back(x * p);
    const AngleVector a(al);
    const Sample s = sample_at(a, {c.beta, c.gamma});
    ++exceptional;
    const MomentValues before = moment_map(a, s.coords.beta);
    const MomentValues after = moment_map(a, extract_coords(rep_to_chain(undegenerate_twist(s.rep, 0))).beta);
    const bool lands = std::abs(after.mu[1]) < 1e-9 && std::abs(after.mu[0] - before.mu[1]) < 1e-9;
    if (!exceptional_condition(a, c.beta, 0) || std::abs(before.mu[0]) > 1e-12 || !lands) ++exceptional_bad;
  }
  return {generic_bad == 0 && exceptional_bad == 0 && generic > 0,
          "generic " + std::to_string(generic - generic_bad) + "/" + std::to_string(generic) +
              " leave mu_i'=0, exceptional " + std::to_string(exceptional - exceptional_bad) + "/" +
              std::to_string(exceptional) + " land on mu_i'+1=0"};
}

Outcome c11_rational() {
  int planted = 0, bad = 0;
  for (std::int64_t q = 1; q <= 100; ++q) {
    for (std::int64_t pp = 0; pp < q; ++pp) {
      if (std::gcd(pp, q) != 1) continue;
      ++planted;
      const auto r = rational_angle(kTwoPi * static_cast<double>(pp) / static_cast<double>(q), 10000, 1e-8);
      if (!r.match || r.match->first != pp || r.match->second != q) ++bad;
    }
  }
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  int golden = 0, accepted = 0;
  for (double x : {phi - 1.0, 2.0 - phi, 2.0 * phi - 3.0, (phi - 1.0) / phi}) {
    ++golden;
    if (rational_angle(kTwoPi * x, 10000, 1e-8).match) ++accepted;
  }
  return {bad == 0 && accepted == 0,
          std::to_string(planted - bad) + "/" + std::to_string(planted) + " planted recovered, " +
              std::to_string(accepted) + "/" + std::to_string(golden) + " golden accepted"};
}

Outcome c12_density() {
  const auto t0 = Clock::now();
  ExperimentConfig cfg;
  cfg.n = 4;
  cfg.seed = 7;
  cfg.steps = 100000;
  cfg.checkpoints = {1000, 10000, 100000};
  const DensityReport r = density_experiment(cfg);
  const double secs = seconds_since(t0);
  if (r.verdict == "finite" || r.verdict == "aborted" || r.checkpoints.size() != 3) {
    return {false, "verdict " + r.verdict + " " + r.diagnostic};
  }
  const bool below = r.checkpoints[2].discrepancy < r.checkpoints[0].discrepancy;
  return {below && r.all_cells_visited && r.bins_per_axis == 8 && secs < 60.0,
          "discrepancy " + sci(r.checkpoints[0].discrepancy) + " -> " + sci(r.checkpoints[1].discrepancy) +
              " -> " + sci(r.checkpoints[2].discrepancy) + ", cells " +
              std::to_string(r.checkpoints[2].cells_visited) + "/64, " + sci(secs) + " s"};
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria{
      c1_round_trip, c2_representation, c3_goldman,   c4_twist_law,      c5_periodic,  c6_closed_form,
      c7_zero_locus, c8_fiber,          c9_transversality, c10_undegenerate, c11_rational, c12_density};
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("criterion %zu: %s  %s\n", k + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}

#include "dt/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace dt {

AngleVector config_alpha(const ExperimentConfig& cfg) {
  if (cfg.alpha.empty()) return AngleVector(std::vector<double>(static_cast<std::size_t>(cfg.n), 1.9 * kPi));
  if (static_cast<int>(cfg.alpha.size()) != cfg.n) {
    throw CoordinateError("alpha has " + std::to_string(cfg.alpha.size()) + " entries, n = " +
                          std::to_string(cfg.n));
  }
  return AngleVector(cfg.alpha);
}

ActionAngleCoords config_start(const ExperimentConfig& cfg, const AngleVector& alpha) {
  if (cfg.start) {
    const auto& s = *cfg.start;
    if (static_cast<int>(s.beta.size()) != alpha.n() - 3 ||
        static_cast<int>(s.gamma.size()) != alpha.n() - 3) {
      throw CoordinateError("start needs " + std::to_string(alpha.n() - 3) +
                            " beta and gamma entries");
    }
    return s;
  }
  Rng rng(cfg.seed ^ 0x5bd1e995ULL);
  return random_coords(alpha, rng);
}

std::vector<CurveClass> config_gens(const ExperimentConfig& cfg) {
  if (cfg.gens.empty()) return standard_curves(cfg.n).all();
  std::vector<CurveClass> out;
  for (const auto& g : cfg.gens) out.push_back(parse_curve(g, cfg.n));
  return out;
}

std::vector<double> action_angle_to_cube(const AngleVector& alpha, const ActionAngleCoords& c) {
  const MomentValues m = moment_map(alpha, c.beta);
  const std::size_t d = m.mu.size();  // simplex has d - 1 free coordinates
  std::vector<double> u;
  u.reserve(2 * (d - 1));
  double rem = 1.0;
  for (std::size_t k = 0; k + 1 < d; ++k) {
    const double s = std::max(0.0, 2.0 * m.mu[k]);
    const double x = rem > 0.0 ? std::clamp(s / rem, 0.0, 1.0) : 0.0;
    u.push_back(1.0 - std::pow(1.0 - x, static_cast<double>(d - 1 - k)));
    rem -= s;
  }
  for (const auto& g : c.gamma) u.push_back(g ? *g / kTwoPi : 0.0);
  for (auto& v : u) v = std::clamp(v, 0.0, std::nextafter(1.0, 0.0));
  return u;
}

DensityAccumulator::DensityAccumulator(int dims, int bins_per_axis, int grid_per_axis)
    : dims_(dims), bins_(bins_per_axis), grid_(grid_per_axis) {
  std::size_t nb = 1;
  std::size_t ng = 1;
  for (int k = 0; k < dims_; ++k) {
    nb *= static_cast<std::size_t>(bins_);
    ng *= static_cast<std::size_t>(grid_);
  }
  counts_.assign(nb, 0);
  fine_.assign(ng, 0);
}

void DensityAccumulator::add(const std::vector<double>& u) {
  std::size_t ib = 0;
  std::size_t ig = 0;
  for (int k = 0; k < dims_; ++k) {
    const double v = u[static_cast<std::size_t>(k)];
    ib = ib * static_cast<std::size_t>(bins_) +
         static_cast<std::size_t>(std::min(bins_ - 1, static_cast<int>(v * bins_)));
    ig = ig * static_cast<std::size_t>(grid_) +
         static_cast<std::size_t>(std::min(grid_ - 1, static_cast<int>(v * grid_)));
  }
  ++counts_[ib];
  ++fine_[ig];
  ++total_;
}

void DensityAccumulator::merge(const DensityAccumulator& other) {
  if (other.dims_ != dims_ || other.bins_ != bins_ || other.grid_ != grid_) {
    throw std::invalid_argument("cannot merge accumulators with different layouts");
  }
  for (std::size_t k = 0; k < counts_.size(); ++k) counts_[k] += other.counts_[k];
  for (std::size_t k = 0; k < fine_.size(); ++k) fine_[k] += other.fine_[k];
  total_ += other.total_;
}

std::int64_t DensityAccumulator::cells_visited() const {
  return std::count_if(counts_.begin(), counts_.end(), [](std::int64_t c) { return c > 0; });
}

double DensityAccumulator::star_discrepancy() const {
  if (total_ == 0) return 1.0;
  std::vector<double> cum(fine_.begin(), fine_.end());
  const auto g = static_cast<std::size_t>(grid_);
  std::size_t stride = 1;
  for (int axis = dims_ - 1; axis >= 0; --axis) {
    for (std::size_t idx = 0; idx < cum.size(); ++idx) {
      if ((idx / stride) % g != 0) cum[idx] += cum[idx - stride];
    }
    stride *= g;
  }
  double worst = 0.0;
  for (std::size_t idx = 0; idx < cum.size(); ++idx) {
    double vol = 1.0;
    std::size_t rest = idx;
    for (int axis = 0; axis < dims_; ++axis) {
      vol *= static_cast<double>(rest % g + 1) / static_cast<double>(grid_);
      rest /= g;
    }
    worst = std::max(worst, std::abs(cum[idx] / static_cast<double>(total_) - vol));
  }
  return worst;
}

namespace {

int bins_for(int n) { return n <= 5 ? 8 : (n == 6 ? 4 : 2); }

int grid_for(int dims) {
  switch (dims) {
    case 2: return 32;
    case 4: return 16;
    case 6: return 8;
    default: return 4;
  }
}

}  // namespace

DensityReport density_experiment(const ExperimentConfig& cfg) {
  DensityReport rep;
  rep.config = cfg;
  const AngleVector alpha = config_alpha(cfg);
  rep.start = config_start(cfg, alpha);
  const std::vector<CurveClass> gens = config_gens(cfg);
  const Representation x0 = chain_to_rep(build_chain(alpha, rep.start));

  for (const auto& g : gens) {
    if (!rational_angle(angle_function(x0, g)).match) rep.irrational_curves.push_back(g.label());
  }
  if (rep.irrational_curves.empty()) rep.label = "possibly finite orbit";

  OrbitOptions probe;
  probe.strategy = Strategy::BFS;
  probe.max_steps = cfg.probe_budget;
  probe.quantum = cfg.quantum;
  probe.recanon_period = cfg.recanon_period;
  probe.keep_records = false;
  probe.keep_words = false;
  const OrbitResult pr = orbit_explore(x0, gens, probe);
  rep.probe_verdict = to_string(pr.verdict);
  rep.probe_size = pr.size;
  if (pr.verdict == OrbitResult::Verdict::Finite) {
    rep.verdict = "finite";
    return rep;
  }

  rep.dims = 2 * (cfg.n - 3);
  rep.bins_per_axis = bins_for(cfg.n);
  DensityAccumulator acc(rep.dims, rep.bins_per_axis, grid_for(rep.dims));
  std::vector<std::int64_t> marks = cfg.checkpoints;
  std::sort(marks.begin(), marks.end());

  OrbitOptions walk;
  walk.strategy = Strategy::RandomWalk;
  walk.max_steps = cfg.steps;
  walk.seed = cfg.seed;
  walk.quantum = cfg.quantum;
  walk.recanon_period = cfg.recanon_period;
  walk.keep_records = false;
  walk.keep_words = false;
  walk.on_record = [&](const OrbitRecord& r) {
    acc.add(action_angle_to_cube(alpha, r.coords));
    if (std::binary_search(marks.begin(), marks.end(), acc.total())) {
      rep.checkpoints.push_back({acc.total(), acc.star_discrepancy(), acc.cells_visited()});
    }
  };
  const OrbitResult wr = orbit_explore(x0, gens, walk);
  rep.samples = acc.total();
  rep.counts = acc.counts();
  rep.all_cells_visited = acc.cells_visited() == static_cast<std::int64_t>(acc.counts().size());
  if (wr.verdict == OrbitResult::Verdict::Aborted) {
    rep.verdict = "aborted";
    rep.diagnostic = wr.diagnostic;
    return rep;
  }
  rep.non_increasing = true;
  for (std::size_t k = 1; k < rep.checkpoints.size(); ++k) {
    if (rep.checkpoints[k].discrepancy > rep.checkpoints[k - 1].discrepancy) rep.non_increasing = false;
  }
  rep.last_below_first = rep.checkpoints.size() >= 2 &&
                         rep.checkpoints.back().discrepancy < rep.checkpoints.front().discrepancy;
  rep.verdict = rep.non_increasing && rep.last_below_first ? "equidistribution_trend" : "no_trend";
  return rep;
}

namespace {

// Single-linkage clusters of points (tolerance per coordinate), splitting on
// one axis at a time. Returns a cluster id per point.
void cluster_axis(const std::vector<std::vector<double>>& pts, std::vector<std::size_t> idx,
                  std::size_t axis, double tol, std::vector<std::int64_t>& id,
                  std::int64_t& next) {
  if (axis == pts.front().size()) {
    for (std::size_t k : idx) id[k] = next;
    ++next;
    return;
  }
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return pts[a][axis] < pts[b][axis]; });
  std::size_t lo = 0;
  for (std::size_t k = 1; k <= idx.size(); ++k) {
    if (k == idx.size() || pts[idx[k]][axis] - pts[idx[k - 1]][axis] > tol) {
      cluster_axis(pts, std::vector<std::size_t>(idx.begin() + static_cast<std::ptrdiff_t>(lo),
                                                 idx.begin() + static_cast<std::ptrdiff_t>(k)),
                   axis + 1, tol, id, next);
      lo = k;
    }
  }
}

}  // namespace

FiberReport fiber_multiplicity_scan(const ExperimentConfig& cfg, double cluster_tol) {
  FiberReport rep;
  rep.config = cfg;
  const AngleVector alpha = config_alpha(cfg);
  const ActionAngleCoords start = config_start(cfg, alpha);
  rep.beta = start.beta;
  const int m = cfg.n - 3;
  std::vector<Zeta> zeta;
  std::vector<CurveClass> curves;
  std::vector<double> center;
  for (int i = 1; i <= m; ++i) {
    const Zeta z = (cfg.n == 4 || i % 2 == 1) ? Zeta::Delta : Zeta::Epsilon;
    zeta.push_back(z);
    curves.push_back(z == Zeta::Delta ? curve_d(cfg.n, i) : curve_e(cfg.n, i));
    center.push_back(z == Zeta::Delta ? 0.0 : start.beta[static_cast<std::size_t>(i - 1)] / 2.0);
    rep.zeta.push_back(curves.back().label());
  }
  const auto per_axis = std::max<std::int64_t>(
      2, static_cast<std::int64_t>(std::floor(std::pow(static_cast<double>(cfg.samples), 1.0 / m) + 1e-9)));
  std::int64_t total = 1;
  for (int k = 0; k < m; ++k) total *= per_axis;
  rep.samples = total;
  rep.bound = std::int64_t{1} << m;

  std::vector<std::vector<double>> values(static_cast<std::size_t>(total));
  rep.rows.resize(static_cast<std::size_t>(total));
  for (std::int64_t s = 0; s < total; ++s) {
    ActionAngleCoords c = start;
    std::int64_t rest = s;
    for (int i = m - 1; i >= 0; --i) {
      const std::int64_t k = rest % per_axis;
      rest /= per_axis;
      const double g = center[static_cast<std::size_t>(i)] +
                       kTwoPi * (static_cast<double>(k) + 0.5) / static_cast<double>(per_axis);
      c.gamma[static_cast<std::size_t>(i)] = wrap_angle(g);
    }
    const Representation r = chain_to_rep(build_chain(alpha, c));
    auto& row = rep.rows[static_cast<std::size_t>(s)];
    for (const auto& g : c.gamma) row.gamma.push_back(*g);
    for (const auto& cv : curves) row.zeta.push_back(angle_function(r, cv));
    values[static_cast<std::size_t>(s)] = row.zeta;
  }
  // The mirror of grid index k on every axis is per_axis - 1 - k, which is
  // the reflection about the axis centre.
  for (std::int64_t s = 0; s < total; ++s) {
    std::int64_t rest = s;
    std::int64_t mirror = 0;
    std::int64_t place = 1;
    for (int i = m - 1; i >= 0; --i) {
      mirror += (per_axis - 1 - rest % per_axis) * place;
      rest /= per_axis;
      place *= per_axis;
    }
    for (int i = 0; i < m; ++i) {
      rep.symmetry_residual = std::max(
          rep.symmetry_residual,
          std::abs(values[static_cast<std::size_t>(s)][static_cast<std::size_t>(i)] -
                   values[static_cast<std::size_t>(mirror)][static_cast<std::size_t>(i)]));
    }
  }
  std::vector<std::int64_t> id(values.size(), -1);
  std::vector<std::size_t> all(values.size());
  std::iota(all.begin(), all.end(), 0);
  std::int64_t next = 0;
  cluster_axis(values, all, 0, cluster_tol, id, next);
  std::vector<std::int64_t> sizes(static_cast<std::size_t>(next), 0);
  for (std::size_t k = 0; k < id.size(); ++k) {
    rep.rows[k].cluster = id[k];
    ++sizes[static_cast<std::size_t>(id[k])];
  }
  for (std::int64_t sz : sizes) {
    rep.max_cluster = std::max(rep.max_cluster, sz);
    if (sz > rep.bound) ++rep.violations;
  }
  return rep;
}

ZeroLocusScan zero_locus_scan(const ExperimentConfig& cfg) {
  ZeroLocusScan scan;
  scan.config = cfg;
  const AngleVector alpha = config_alpha(cfg);
  const ActionAngleCoords start = config_start(cfg, alpha);
  const int i = cfg.index;
  if (i < 1 || i > cfg.n - 3) throw CoordinateError("scan index out of range");
  const auto ii = static_cast<std::size_t>(i - 1);
  if (!start.gamma[ii]) throw CoordinateError("zero-locus scan needs a regular start point");

  ZeroLocusOptions opt;
  const ZeroLocusReport base = poisson_zero_locus_check(alpha, start, i, opt);
  opt.scale_delta = base.scale_delta;
  opt.scale_eps = base.scale_eps;

  std::vector<double> gammas;
  for (std::int64_t k = 0; k < cfg.samples; ++k) {
    gammas.push_back(kTwoPi * static_cast<double>(k) / static_cast<double>(cfg.samples));
  }
  const double half = start.beta[ii] / 2.0;
  for (double locus : {0.0, kPi, half, half - kPi}) {
    for (double off : {0.0, 5e-5, -5e-5, 5e-2, -5e-2}) gammas.push_back(wrap_angle(locus + off));
  }
  for (double g : gammas) {
    ActionAngleCoords c = start;
    c.gamma[ii] = g;
    ZeroLocusReport r = poisson_zero_locus_check(alpha, c, i, opt);
    if (!r.ok()) ++scan.failures;
    scan.rows.push_back(r);
  }
  return scan;
}

namespace {

struct PairingCheck {
  double margin = 0.0;
  double off_diagonal = 0.0;
  double det = 0.0;
};

// Normalized diagonal of the {beta_i, zeta_j} block of the FD Jacobian.
PairingCheck check_pairing(const Representation& r, const std::vector<Zeta>& zeta,
                           const std::vector<double>& dscale, const std::vector<double>& escale) {
  const int n = r.n();
  const int m = n - 3;
  const JacobianReport j = flow_jacobian(r, beta_zeta_curves(n, zeta), beta_zeta_curves(n, zeta));
  PairingCheck out;
  out.det = j.det;
  out.margin = std::numeric_limits<double>::infinity();
  auto entry = [&](int row, int col) {
    return j.entries[static_cast<std::size_t>(row * j.cols + col)];
  };
  for (int i = 0; i < m; ++i) {
    const auto ii = static_cast<std::size_t>(i);
    const double s = zeta[ii] == Zeta::Delta ? dscale[ii] : escale[ii];
    out.margin = std::min(out.margin, s > 1e-9 ? std::abs(entry(i, m + i)) / s : 0.0);
    for (int k = 0; k < m; ++k) {
      if (k != i && s > 1e-9) out.off_diagonal = std::max(out.off_diagonal, std::abs(entry(k, m + i)) / s);
    }
  }
  return out;
}

}  // namespace

TransversalityReport transversality_sweep(const ExperimentConfig& cfg) {
  TransversalityReport rep;
  rep.config = cfg;
  const AngleVector alpha = config_alpha(cfg);
  const int n = cfg.n;
  const int m = n - 3;
  Rng rng(cfg.seed);

  std::vector<ActionAngleCoords> points;
  for (std::int64_t s = 0; s < cfg.samples; ++s) points.push_back(random_coords(alpha, rng));
  const ActionAngleCoords base = random_coords(alpha, rng);
  for (int i = 0; i < m; ++i) {
    const double half = base.beta[static_cast<std::size_t>(i)] / 2.0;
    for (double locus : {0.0, kPi, half, half - kPi}) {
      ActionAngleCoords c = base;
      c.gamma[static_cast<std::size_t>(i)] = wrap_angle(locus);
      points.push_back(c);
    }
  }
  if (n == 4) {
    // Both faces of the moment interval; gamma is undefined there.
    for (const std::vector<double>& mu : {std::vector<double>{0.0, 0.5}, std::vector<double>{0.5, 0.0}}) {
      points.push_back({beta_from_moments(alpha, mu), {std::nullopt}});
    }
  }

  const std::vector<Zeta> all_delta(static_cast<std::size_t>(m), Zeta::Delta);
  const std::vector<Zeta> all_eps(static_cast<std::size_t>(m), Zeta::Epsilon);

  for (const auto& c : points) {
    TransversalityReport::Row row;
    row.coords = c;
    const Representation r = chain_to_rep(build_chain(alpha, c));
    row.regular = std::all_of(c.gamma.begin(), c.gamma.end(), [](const auto& g) { return g.has_value(); });
    std::vector<double> dscale, escale;
    for (int i = 1; i <= m; ++i) {
      dscale.push_back(bracket_orbit_scale(r, i, curve_b(n, i), curve_d(n, i)));
      escale.push_back(bracket_orbit_scale(r, i, curve_b(n, i), curve_e(n, i)));
    }
    const PairingCheck dp = check_pairing(r, all_delta, dscale, escale);
    const PairingCheck ep = check_pairing(r, all_eps, dscale, escale);
    row.delta_margin = dp.margin;
    row.eps_margin = ep.margin;
    row.delta_full = dp.margin >= rep.rel_small;
    row.eps_full = ep.margin >= rep.rel_small;
    rep.max_off_diagonal = std::max({rep.max_off_diagonal, dp.off_diagonal, ep.off_diagonal});
    if (n == 4) {
      const CurveClass d = curve_d(4, 1);
      const CurveClass e = curve_e(4, 1);
      const double x = poisson_fd(r, d, e);
      const double s = bracket_orbit_scale(r, 1, d, e);
      row.pair_margin = s > 1e-9 ? std::abs(x) / s : 0.0;
      row.pair_full = row.pair_margin >= rep.rel_small;
      if (!row.delta_full && !row.eps_full && !row.pair_full) ++rep.uncovered;
    }
    if (row.regular) {
      const PairingCheck pp = check_pairing(r, prescribed_zeta(c), dscale, escale);
      row.prescribed_det = pp.det;
      row.prescribed_full = pp.margin >= rep.rel_small;
      if (!row.prescribed_full) ++rep.prescribed_failures;
      double dmin = kPi;
      double emin = kPi;
      for (int i = 0; i < m; ++i) {
        const double g = *c.gamma[static_cast<std::size_t>(i)];
        const double half = c.beta[static_cast<std::size_t>(i)] / 2.0;
        dmin = std::min({dmin, std::abs(circular_diff(g, 0.0)), std::abs(circular_diff(g, kPi))});
        emin = std::min({emin, std::abs(circular_diff(g, half)), std::abs(circular_diff(g, half - kPi))});
      }
      row.in_delta_window = dmin < rep.window;
      row.in_eps_window = emin < rep.window;
      row.in_band = (dmin >= rep.window && dmin <= rep.far) || (emin >= rep.window && emin <= rep.far);
      if (!row.in_band) {
        if (row.delta_full == row.in_delta_window) ++rep.window_mismatches;
        if (row.eps_full == row.in_eps_window) ++rep.window_mismatches;
      }
    }
    rep.rows.push_back(row);
  }
  return rep;
}

ActionAngleCoords random_trailing_point(const AngleVector& alpha, int nbar, Rng& rng) {
  std::vector<double> mu = random_moments(nbar, rng);
  mu.resize(static_cast<std::size_t>(alpha.n() - 2), 0.0);
  return coords_from_moments(alpha, mu, rng);
}

double fingerprint_distance(const Fingerprint& a, const Fingerprint& b) {
  if (a.values.size() != b.values.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t k = 0; k < a.values.size(); ++k) {
    worst = std::max(worst, std::abs(circular_diff(a.values[k], b.values[k])));
  }
  return worst;
}

GluingReport gluing_consistency(const ExperimentConfig& cfg) {
  GluingReport rep;
  rep.config = cfg;
  const AngleVector alpha = config_alpha(cfg);
  const int n = cfg.n;
  const int nbar = cfg.nbar > 0 ? cfg.nbar : n - 1;
  if (nbar < 4 || nbar >= n) throw CoordinateError("gluing needs 4 <= nbar < n");
  rep.nbar = nbar;
  const AngleVector abar = restricted_alpha(alpha, nbar);
  rep.lambda_error = std::abs(abar.lambda() - alpha.lambda());

  std::vector<std::pair<CurveClass, CurveClass>> inside;  // (ambient, sub-sphere)
  for (int i = 1; i <= nbar - 3; ++i) {
    inside.emplace_back(curve_b(n, i), curve_b(nbar, i));
    inside.emplace_back(curve_d(n, i), curve_d(nbar, i));
    inside.emplace_back(curve_e(n, i), curve_e(nbar, i));
  }
  std::vector<CurveClass> outside;
  for (int j = nbar; j <= n - 1; ++j) outside.push_back(curve_pair(n, j));
  for (const auto& p : inside) rep.twists.push_back(p.first.label());
  for (const auto& c : outside) rep.twists.push_back(c.label() + " (outside)");

  Rng rng(cfg.seed);
  for (std::int64_t s = 0; s < cfg.samples; ++s) {
    const ActionAngleCoords c = random_trailing_point(alpha, nbar, rng);
    const TriangleChain ch = build_chain(alpha, c);
    const Representation x = chain_to_rep(ch);
    const Representation xbar = restrict_rep(x, nbar);
    const Fingerprint fbar = fingerprint(xbar, cfg.quantum);
    rep.max_chain_rep_error = std::max(
        rep.max_chain_rep_error,
        fingerprint_distance(fbar, fingerprint(chain_to_rep(restrict_chain(ch, nbar)), cfg.quantum)));
    for (const auto& [amb, sub] : inside) {
      const Fingerprint lhs = fingerprint(restrict_rep(dehn_twist(x, amb), nbar), cfg.quantum);
      const Fingerprint rhs = fingerprint(dehn_twist(xbar, sub), cfg.quantum);
      rep.max_commutation_error = std::max(rep.max_commutation_error, fingerprint_distance(lhs, rhs));
    }
    for (const auto& cv : outside) {
      const Fingerprint f = fingerprint(restrict_rep(dehn_twist(x, cv), nbar), cfg.quantum);
      rep.max_outside_error = std::max(rep.max_outside_error, fingerprint_distance(f, fbar));
    }
    ++rep.points;
  }
  return rep;
}

}  // namespace dt

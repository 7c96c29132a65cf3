#include "dt/dynamics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_map>

#include "dt/sampling.hpp"

namespace dt {

namespace {

Isometry product(const std::vector<Isometry>& gens, int from, int to) {
  Isometry g = Isometry::identity();
  for (int k = from; k <= to; ++k) g = g * gens[static_cast<std::size_t>(k - 1)];
  return g;
}

// Conjugates the generators inside the curve by m, which must commute with
// the image of the curve. For e_i the generator c_{i+1} sits between inside
// generators and is carried along through c_{i+2} ... c_n.
Representation conjugate_inside(const Representation& rep, const CurveClass& curve,
                                const Isometry& m) {
  const int n = rep.n();
  const TwistSide side = twist_side(curve, n);
  if (curve.kind == CurveKind::Custom) {
    for (std::size_t k = 1; k < side.inside.size(); ++k) {
      if (side.inside[k] != side.inside[k - 1] + 1) {
        throw TopologyError("custom twist needs a consecutive block of generators");
      }
    }
  }
  Representation out = rep;
  const Isometry mi = m.inverse();
  for (int k : side.inside) out.gens[static_cast<std::size_t>(k - 1)] = m * rep.gen(k) * mi;
  if (curve.kind == CurveKind::E) {
    const int i = curve.index;
    const Isometry w_old = product(rep.gens, i + 2, n);
    const Isometry w_new = product(out.gens, i + 2, n);
    const Isometry carry = w_new * w_old.inverse();
    out.gens[static_cast<std::size_t>(i)] = carry * rep.gen(i + 1) * carry.inverse();
  }
  return out;
}

double theta(const Representation& rep, const CurveClass& c) { return angle_function(rep, c); }

}  // namespace

Representation flow(const Representation& rep, const CurveClass& curve, double t) {
  const IsometryClass cls = classify(evaluate(rep, curve.word));
  if (cls.kind != IsometryKind::Elliptic) {
    throw GeometryError("cannot flow along " + curve.label() + ": image is " +
                        to_string(cls.kind));
  }
  return conjugate_inside(rep, curve, rotation_about(cls.fixed_point, 2.0 * t));
}

Representation dehn_twist(const Representation& rep, const CurveClass& curve, int power) {
  const Isometry a = evaluate(rep, curve.word);
  const Isometry base = power >= 0 ? a : a.inverse();
  Isometry m = Isometry::identity();
  for (int k = 0; k < std::abs(power); ++k) m = m * base;
  return conjugate_inside(rep, curve, m);
}

bool undegenerate_exceptional(const AngleVector& alpha, const std::vector<double>& beta,
                              int iprime, double tol) {
  const std::vector<double> bx = extended_beta(alpha, beta);
  const auto ip = static_cast<std::size_t>(iprime);
  return std::abs(bx[ip + 2] - alpha[iprime + 2]) < tol &&
         std::abs(bx[ip] - (kTwoPi - alpha[iprime + 1])) < tol;
}

Representation undegenerate_twist(const Representation& rep, int iprime) {
  const int n = rep.n();
  if (iprime < 0 || iprime > n - 4) throw CoordinateError("i' out of range");
  const std::vector<int> pattern = degeneracy_pattern(rep_to_chain(rep));
  const bool has_i = std::binary_search(pattern.begin(), pattern.end(), iprime);
  const bool has_next = std::binary_search(pattern.begin(), pattern.end(), iprime + 1);
  if (!has_i || has_next) {
    throw CoordinateError("un-degenerating twist needs mu_" + std::to_string(iprime) +
                          " = 0 and mu_" + std::to_string(iprime + 1) + " != 0");
  }
  return dehn_twist(rep, curve_pair(n, iprime + 2));
}

double poisson_fd(const Representation& rep, const CurveClass& f, const CurveClass& g, double h) {
  const double plus = theta(flow(rep, g, h), f);
  const double minus = theta(flow(rep, g, -h), f);
  return wrap_signed(plus - minus) / (2.0 * h);
}

double gamma_rate(const Representation& rep, int i, double h) {
  const CurveClass b = curve_b(rep.n(), i);
  const auto gp = extract_coords(rep_to_chain(flow(rep, b, h))).gamma[static_cast<std::size_t>(i - 1)];
  const auto gm = extract_coords(rep_to_chain(flow(rep, b, -h))).gamma[static_cast<std::size_t>(i - 1)];
  if (!gp || !gm) throw GeometryError("gamma undefined near this point");
  return wrap_signed(*gp - *gm) / (2.0 * h);
}

double bracket_beta_delta_closed(const TriangleChain& chain, int i, double m) {
  const ClosedForm f = delta_closed_form(chain, i);
  const double g = *extract_coords(chain).gamma[static_cast<std::size_t>(i - 1)];
  return -2.0 * f.k1 * std::sin(g) * m / std::sin(f.predicted / 2.0);
}

double bracket_beta_eps_closed(const TriangleChain& chain, int i, double m) {
  const ClosedForm f = epsilon_closed_form(chain, i);
  const ActionAngleCoords c = extract_coords(chain);
  const auto ii = static_cast<std::size_t>(i - 1);
  return 2.0 * f.k1 * std::sin(c.beta[ii] / 2.0 - *c.gamma[ii]) * m / std::sin(f.predicted / 2.0);
}

double bracket_orbit_scale(const Representation& rep, int i, const CurveClass& f,
                           const CurveClass& g, int samples, double h) {
  const CurveClass b = curve_b(rep.n(), i);
  double scale = 0.0;
  for (int s = 0; s < samples; ++s) {
    // Flowing along b_i for t in [0, pi) sweeps gamma_i once around the circle.
    const Representation q = flow(rep, b, kPi * (s + 0.5) / samples);
    scale = std::max(scale, std::abs(poisson_fd(q, f, g, h)));
  }
  return scale;
}

ZeroLocusReport poisson_zero_locus_check(const AngleVector& alpha,
                                         const ActionAngleCoords& coords, int i,
                                         const ZeroLocusOptions& opt) {
  const int n = alpha.n();
  const auto ii = static_cast<std::size_t>(i - 1);
  if (!coords.gamma.at(ii)) throw CoordinateError("zero-locus check needs a regular point");
  const Representation rep = chain_to_rep(build_chain(alpha, coords));
  const CurveClass b = curve_b(n, i);
  const CurveClass d = curve_d(n, i);
  const CurveClass e = curve_e(n, i);

  ZeroLocusReport r;
  r.i = i;
  r.gamma = *coords.gamma[ii];
  r.bracket_delta = poisson_fd(rep, b, d, opt.h);
  r.bracket_eps = poisson_fd(rep, b, e, opt.h);
  r.scale_delta = opt.scale_delta;
  r.scale_eps = opt.scale_eps;
  const bool need_d = r.scale_delta <= 0.0;
  const bool need_e = r.scale_eps <= 0.0;
  for (int s = 0; (need_d || need_e) && s < opt.scale_samples; ++s) {
    // Flowing along b_i for t in [0, pi) sweeps gamma_i once around the circle.
    const Representation q = flow(rep, b, kPi * (s + 0.5) / opt.scale_samples);
    if (need_d) r.scale_delta = std::max(r.scale_delta, std::abs(poisson_fd(q, b, d, opt.h)));
    if (need_e) r.scale_eps = std::max(r.scale_eps, std::abs(poisson_fd(q, b, e, opt.h)));
  }
  const double half = coords.beta[ii] / 2.0;
  r.dist_delta_locus = std::min(std::abs(circular_diff(r.gamma, 0.0)),
                                std::abs(circular_diff(r.gamma, kPi)));
  r.dist_eps_locus = std::min(std::abs(circular_diff(r.gamma, half)),
                              std::abs(circular_diff(r.gamma, half - kPi)));
  r.delta_small = std::abs(r.bracket_delta) < opt.rel_small * r.scale_delta;
  r.eps_small = std::abs(r.bracket_eps) < opt.rel_small * r.scale_eps;
  auto consistent = [&](bool small, double d_locus) {
    if (d_locus < opt.window && !small) return false;
    if (small && d_locus > opt.far) return false;
    return true;
  };
  r.delta_consistent = consistent(r.delta_small, r.dist_delta_locus);
  r.eps_consistent = consistent(r.eps_small, r.dist_eps_locus);
  r.never_both = !(r.delta_small && r.eps_small);
  return r;
}

RationalAngleReport rational_angle(double angle, std::int64_t q_max, double tol) {
  RationalAngleReport rep;
  rep.angle = angle;
  rep.q_max = q_max;
  rep.tol = tol;
  const double x = angle / kTwoPi;
  // Convergents h/k of the continued fraction of x.
  std::int64_t h2 = 0, h1 = 1, k2 = 1, k1 = 0;
  std::int64_t best_p = 0, best_q = 1;
  double r = x;
  for (int it = 0; it < 64; ++it) {
    const double a = std::floor(r);
    if (a > 1e15) break;
    const auto ai = static_cast<std::int64_t>(a);
    const std::int64_t h = ai * h1 + h2;
    const std::int64_t k = ai * k1 + k2;
    if (k > q_max) break;
    best_p = h;
    best_q = k;
    h2 = h1;
    h1 = h;
    k2 = k1;
    k1 = k;
    const double frac = r - a;
    if (frac < 1e-15 || std::abs(x - static_cast<double>(h) / static_cast<double>(k)) < 1e-17) break;
    r = 1.0 / frac;
  }
  rep.error = std::abs(angle - kTwoPi * static_cast<double>(best_p) / static_cast<double>(best_q));
  if (rep.error <= tol) rep.match = std::make_pair(best_p, best_q);
  return rep;
}

std::string to_string(OrbitResult::Verdict v) {
  switch (v) {
    case OrbitResult::Verdict::Finite: return "finite";
    case OrbitResult::Verdict::BudgetExceeded: return "budget_exceeded";
    case OrbitResult::Verdict::Aborted: return "aborted";
  }
  return "unknown";
}

Representation recanonicalize(const Representation& rep) {
  const TriangleChain ch = rep_to_chain(rep);
  if (degeneracy_pattern(ch).empty()) {
    return chain_to_rep(build_chain(rep.alpha, extract_coords(ch)));
  }
  return chain_to_rep(ch);
}

namespace {

struct Move {
  CurveClass curve;
  int power;
  std::string label;
};

std::vector<Move> moves_for(const std::vector<CurveClass>& gens, bool with_inverses) {
  std::vector<Move> moves;
  for (const auto& g : gens) {
    moves.push_back({g, 1, g.label()});
    if (with_inverses) moves.push_back({g, -1, g.label() + "^-1"});
  }
  return moves;
}

std::uint64_t key_hash(const std::vector<std::int64_t>& key) {
  std::uint64_t h = 1469598103934665603ULL;
  for (std::int64_t k : key) {
    h ^= static_cast<std::uint64_t>(k) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

OrbitRecord make_record(std::int64_t step, std::vector<std::string> word,
                        const Representation& rep, double quantum) {
  OrbitRecord rec;
  rec.step = step;
  rec.word = std::move(word);
  rec.coords = extract_coords(rep_to_chain(rep));
  rec.fp = fingerprint(rep, quantum);
  return rec;
}

void emit(OrbitResult& res, const OrbitOptions& opt, OrbitRecord rec) {
  if (opt.on_record) opt.on_record(rec);
  if (opt.keep_records) res.records.push_back(std::move(rec));
  ++res.size;
}

OrbitResult random_walk(const Representation& start, const std::vector<CurveClass>& gens,
                        const OrbitOptions& opt) {
  OrbitResult res;
  const std::vector<Move> moves = moves_for(gens, opt.with_inverses);
  Rng rng(opt.seed);
  Representation rep = start;
  std::int64_t step = 0;
  try {
    for (; step < opt.max_steps; ++step) {
      std::vector<std::string> word;
      if (step > 0) {
        const Move& mv = moves[rng.index(moves.size())];
        rep = normalize_gauge(dehn_twist(rep, mv.curve, mv.power));
        if (opt.recanon_period > 0 && step % opt.recanon_period == 0) rep = recanonicalize(rep);
        if (opt.keep_words) word.push_back(mv.label);
      }
      emit(res, opt, make_record(step, std::move(word), rep, opt.quantum));
    }
    res.verdict = OrbitResult::Verdict::BudgetExceeded;
  } catch (const GeometryError& e) {
    res.verdict = OrbitResult::Verdict::Aborted;
    res.diagnostic = "step " + std::to_string(step) + ": " + e.what();
  }
  return res;
}

OrbitResult breadth_first(const Representation& start, const std::vector<CurveClass>& gens,
                          const OrbitOptions& opt) {
  struct Node {
    Representation rep;
    Fingerprint fp;
    std::vector<std::string> word;
    int depth;
  };
  OrbitResult res;
  const std::vector<Move> moves = moves_for(gens, opt.with_inverses);
  std::vector<Node> nodes;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> index;
  std::deque<std::size_t> queue;

  auto find = [&](const Fingerprint& fp) {
    for (const auto& key : neighbour_keys(fp)) {
      const auto it = index.find(key_hash(key));
      if (it == index.end()) continue;
      for (std::size_t j : it->second) {
        if (nodes[j].fp.same_point(fp)) return true;
      }
    }
    return false;
  };
  auto add = [&](Representation rep, std::vector<std::string> word, int depth) {
    OrbitRecord rec = make_record(static_cast<std::int64_t>(nodes.size()), word, rep, opt.quantum);
    index[key_hash(rec.fp.key)].push_back(nodes.size());
    nodes.push_back({std::move(rep), rec.fp, std::move(word), depth});
    queue.push_back(nodes.size() - 1);
    emit(res, opt, std::move(rec));
  };

  try {
    if (opt.max_steps < 1) return res;
    add(start, {}, 0);
    while (!queue.empty()) {
      const std::size_t cur = queue.front();
      queue.pop_front();
      for (const Move& mv : moves) {
        Representation next = normalize_gauge(dehn_twist(nodes[cur].rep, mv.curve, mv.power));
        const int depth = nodes[cur].depth + 1;
        if (opt.recanon_period > 0 && depth % opt.recanon_period == 0) next = recanonicalize(next);
        const Fingerprint fp = fingerprint(next, opt.quantum);
        if (find(fp)) continue;
        if (static_cast<std::int64_t>(nodes.size()) >= opt.max_steps) {
          res.verdict = OrbitResult::Verdict::BudgetExceeded;
          return res;
        }
        std::vector<std::string> word;
        if (opt.keep_words) {
          word = nodes[cur].word;
          word.push_back(mv.label);
        }
        add(std::move(next), std::move(word), depth);
      }
    }
    res.verdict = res.size <= opt.finite_cap ? OrbitResult::Verdict::Finite
                                             : OrbitResult::Verdict::BudgetExceeded;
  } catch (const GeometryError& e) {
    res.verdict = OrbitResult::Verdict::Aborted;
    res.diagnostic = "node " + std::to_string(nodes.size()) + ": " + e.what();
  }
  return res;
}

}  // namespace

OrbitResult orbit_explore(const Representation& start, const std::vector<CurveClass>& gens,
                          const OrbitOptions& opt) {
  if (gens.empty()) throw std::invalid_argument("orbit exploration needs at least one generator");
  return opt.strategy == Strategy::BFS ? breadth_first(start, gens, opt)
                                       : random_walk(start, gens, opt);
}

OrbitResult orbit_explore(const AngleVector& alpha, const ActionAngleCoords& start,
                          const std::vector<CurveClass>& gens, const OrbitOptions& opt) {
  return orbit_explore(chain_to_rep(build_chain(alpha, start)), gens, opt);
}

Representation local_parametrization(const Representation& rep,
                                     const std::vector<FlowSpec>& specs) {
  Representation out = rep;
  for (auto it = specs.rbegin(); it != specs.rend(); ++it) {
    if (it->t != 0.0) out = flow(out, it->curve, it->t);
  }
  return out;
}

JacobianReport flow_jacobian(const Representation& rep, const std::vector<CurveClass>& observables,
                             const std::vector<CurveClass>& flows, double h, double rank_tol,
                             double abs_tol) {
  JacobianReport jr;
  jr.rows = static_cast<int>(observables.size());
  jr.cols = static_cast<int>(flows.size());
  Eigen::MatrixXd j(jr.rows, jr.cols);
  std::vector<FlowSpec> specs;
  for (const auto& f : flows) specs.push_back({f, 0.0});
  for (int c = 0; c < jr.cols; ++c) {
    auto at = [&](double t) {
      std::vector<FlowSpec> s = specs;
      s[static_cast<std::size_t>(c)].t = t;
      return local_parametrization(rep, s);
    };
    const Representation plus = at(h);
    const Representation minus = at(-h);
    for (int r = 0; r < jr.rows; ++r) {
      const auto& obs = observables[static_cast<std::size_t>(r)];
      j(r, c) = wrap_signed(theta(plus, obs) - theta(minus, obs)) / (2.0 * h);
    }
  }
  jr.entries.resize(static_cast<std::size_t>(jr.rows * jr.cols));
  for (int r = 0; r < jr.rows; ++r) {
    for (int c = 0; c < jr.cols; ++c) jr.entries[static_cast<std::size_t>(r * jr.cols + c)] = j(r, c);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(j);
  const Eigen::VectorXd sv = svd.singularValues();
  jr.singular_values.assign(sv.data(), sv.data() + sv.size());
  if (jr.rows == jr.cols) jr.det = j.determinant();
  const double smax = sv.size() ? sv(0) : 0.0;
  const double smin = sv.size() ? sv(sv.size() - 1) : 0.0;
  jr.full_rank = smax > 0.0 && smin >= std::max(rank_tol * smax, abs_tol) &&
                 static_cast<int>(sv.size()) == std::min(jr.rows, jr.cols);
  return jr;
}

std::vector<Zeta> prescribed_zeta(const ActionAngleCoords& coords, double window) {
  std::vector<Zeta> z;
  for (const auto& g : coords.gamma) {
    const bool near = g && (std::abs(circular_diff(*g, 0.0)) < window ||
                            std::abs(circular_diff(*g, kPi)) < window);
    z.push_back(near ? Zeta::Epsilon : Zeta::Delta);
  }
  return z;
}

std::vector<CurveClass> beta_zeta_curves(int n, const std::vector<Zeta>& zeta) {
  std::vector<CurveClass> out;
  for (int i = 1; i <= n - 3; ++i) out.push_back(curve_b(n, i));
  for (int i = 1; i <= n - 3; ++i) {
    out.push_back(zeta[static_cast<std::size_t>(i - 1)] == Zeta::Delta ? curve_d(n, i)
                                                                       : curve_e(n, i));
  }
  return out;
}

}  // namespace dt

#include "dt/rep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace dt {

Isometry evaluate(const Representation& rep, const std::vector<int>& word) {
  Isometry g = Isometry::identity();
  for (int s : word) {
    const int k = std::abs(s);
    if (k < 1 || k > rep.n()) throw TopologyError("generator index out of range in word");
    g = g * (s > 0 ? rep.gen(k) : rep.gen(k).inverse());
  }
  return g;
}

double product_residual(const Representation& rep) {
  Isometry g = Isometry::identity();
  for (const auto& h : rep.gens) g = g * h;
  return g.distance_to_identity();
}

Representation chain_to_rep(const TriangleChain& chain) {
  Representation rep;
  rep.alpha = chain.alpha;
  rep.gens.reserve(chain.C.size());
  for (int k = 0; k < chain.n(); ++k) {
    rep.gens.push_back(rotation_about(chain.C[static_cast<std::size_t>(k)], chain.alpha[k]));
  }
  const double res = product_residual(rep);
  if (!(res < tol::kRel)) {
    throw GeometryError("generator product is not the identity (residual " +
                        std::to_string(res) + "); orientation convention broken");
  }
  return rep;
}

namespace {

HPoint elliptic_fixed_point(const Isometry& g, const std::string& what) {
  const IsometryClass cls = classify(g);
  if (cls.kind != IsometryKind::Elliptic) {
    throw GeometryError(what + " is " + to_string(cls.kind) + ", expected elliptic");
  }
  return cls.fixed_point;
}

}  // namespace

TriangleChain rep_to_chain(const Representation& rep, const PantsDecomposition& pants) {
  const int n = rep.n();
  if (!(pants.curves == standard_pants(n).curves)) {
    throw TopologyError("only the standard pants decomposition is supported");
  }
  const double res = product_residual(rep);
  if (!(res < tol::kRel)) {
    throw GeometryError("generator product is not the identity (residual " +
                        std::to_string(res) + ")");
  }
  TriangleChain ch;
  ch.alpha = rep.alpha;
  for (int k = 1; k <= n; ++k) {
    ch.C.push_back(elliptic_fixed_point(rep.gen(k), "rho(c" + std::to_string(k) + ")"));
  }
  for (const auto& b : pants.curves) {
    ch.B.push_back(elliptic_fixed_point(evaluate(rep, b.word), "rho(" + b.label() + ")"));
  }
  return canonicalize(ch);
}

TriangleChain rep_to_chain(const Representation& rep) {
  return rep_to_chain(rep, standard_pants(rep.n()));
}

Representation restrict_rep(const Representation& rep, int nbar) {
  Representation out;
  out.alpha = restricted_alpha(rep.alpha, nbar);
  out.gens.assign(rep.gens.begin(), rep.gens.begin() + (nbar - 1));
  Isometry tail = Isometry::identity();
  for (int k = nbar; k <= rep.n(); ++k) tail = tail * rep.gen(k);
  out.gens.push_back(tail);
  return out;
}

Representation conjugate(const Representation& rep, const Isometry& g) {
  Representation out;
  out.alpha = rep.alpha;
  const Isometry gi = g.inverse();
  for (const auto& h : rep.gens) out.gens.push_back(g * h * gi);
  return out;
}

Representation normalize_gauge(const Representation& rep) {
  const HPoint p = classify(rep.gen(1)).fixed_point;
  const double sy = std::sqrt(p.y);
  Representation out = conjugate(rep, Isometry::from_entries(1.0 / sy, -p.x / sy, 0.0, sy));
  const HPoint q = classify(out.gen(2)).fixed_point;
  const HPoint i{0.0, 1.0};
  if (dist(q, i) > tol::kGeom) {
    out = conjugate(out, rotation_about(i, kPi / 2.0 - direction(i, q)));
  }
  return out;
}

double angle_function(const Representation& rep, const CurveClass& curve) {
  const IsometryClass cls = classify(evaluate(rep, curve.word));
  if (cls.kind != IsometryKind::Elliptic) {
    throw GeometryError("image of " + curve.label() + " is " + to_string(cls.kind) +
                        " (|trace| = " + std::to_string(cls.trace) + ")");
  }
  return cls.angle;
}

std::vector<CurveClass> fingerprint_curves(int n) { return standard_curves(n).all(); }

namespace {

std::int64_t bucket_count(double q) {
  return static_cast<std::int64_t>(std::ceil(kTwoPi / q));
}

}  // namespace

Fingerprint fingerprint(const Representation& rep, const std::vector<CurveClass>& curves,
                        double quantum) {
  if (!(quantum > 0.0)) throw std::invalid_argument("fingerprint quantum must be positive");
  Fingerprint fp;
  fp.quantum = quantum;
  for (const auto& c : curves) {
    const double v = angle_function(rep, c);
    fp.values.push_back(v);
    if (std::isinf(quantum)) {
      fp.key.push_back(0);
    } else {
      const std::int64_t nb = bucket_count(quantum);
      fp.key.push_back(static_cast<std::int64_t>(std::floor(v / quantum)) % nb);
    }
  }
  return fp;
}

Fingerprint fingerprint(const Representation& rep, double quantum) {
  return fingerprint(rep, fingerprint_curves(rep.n()), quantum);
}

std::string Fingerprint::hex() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (std::int64_t k : key) {
    auto u = static_cast<std::uint64_t>(k);
    for (int b = 0; b < 8; ++b) {
      h ^= (u >> (8 * b)) & 0xffU;
      h *= 1099511628211ULL;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

bool Fingerprint::same_point(const Fingerprint& other, double q) const {
  if (values.size() != other.values.size()) return false;
  if (std::isinf(q)) return true;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!(std::abs(circular_diff(values[k], other.values[k])) < q)) return false;
  }
  return true;
}

std::vector<std::vector<std::int64_t>> neighbour_keys(const Fingerprint& fp, double edge) {
  std::vector<std::vector<std::int64_t>> out{fp.key};
  if (std::isinf(fp.quantum)) return out;
  const std::int64_t nb = bucket_count(fp.quantum);
  for (std::size_t k = 0; k < fp.key.size(); ++k) {
    const double frac = fp.values[k] / fp.quantum - std::floor(fp.values[k] / fp.quantum);
    std::int64_t alt = 0;
    if (frac < edge) {
      alt = (fp.key[k] + nb - 1) % nb;
    } else if (frac > 1.0 - edge) {
      alt = (fp.key[k] + 1) % nb;
    } else {
      continue;
    }
    const std::size_t m = out.size();
    for (std::size_t j = 0; j < m; ++j) {
      auto key = out[j];
      key[k] = alt;
      out.push_back(std::move(key));
    }
  }
  return out;
}

namespace {

std::optional<double> gamma_at(const TriangleChain& ch, int i) {
  const auto ii = static_cast<std::size_t>(i - 1);
  const HPoint b = ch.B[ii];
  const HPoint cp = ch.C[ii + 1];
  const HPoint cn = ch.C[ii + 2];
  if (dist(b, cp) <= tol::kRay || dist(b, cn) <= tol::kRay) return std::nullopt;
  return oriented_angle(b, cn, cp);
}

void finish(ClosedForm& f, double cos_arg) {
  f.cos_half = f.k1 * std::cos(cos_arg) + f.k2;
  f.predicted = 2.0 * std::acos(std::clamp(f.cos_half, -1.0, 1.0));
}

void require_index(const TriangleChain& ch, int i) {
  if (i < 1 || i > ch.n() - 3) throw TopologyError("curve index out of range");
}

}  // namespace

ClosedForm delta_closed_form(const TriangleChain& chain, int i) {
  require_index(chain, i);
  const auto g = gamma_at(chain, i);
  if (!g) throw GeometryError("delta closed form needs C_i+1, C_i+2 distinct from B_i");
  const HPoint b = chain.B[static_cast<std::size_t>(i - 1)];
  const double da = dist(chain.C[static_cast<std::size_t>(i)], b);
  const double db = dist(chain.C[static_cast<std::size_t>(i + 1)], b);
  const double s1 = std::sin(chain.alpha[i] / 2.0);
  const double s2 = std::sin(chain.alpha[i + 1] / 2.0);
  const double c1 = std::cos(chain.alpha[i] / 2.0);
  const double c2 = std::cos(chain.alpha[i + 1] / 2.0);
  ClosedForm f;
  f.k1 = s1 * s2 * std::sinh(da) * std::sinh(db);
  f.k2 = c1 * c2 - s1 * s2 * std::cosh(da) * std::cosh(db);
  finish(f, *g);
  return f;
}

ClosedForm epsilon_closed_form(const TriangleChain& chain, int i) {
  require_index(chain, i);
  const auto g = gamma_at(chain, i);
  if (!g) throw GeometryError("epsilon closed form needs C_i+1, C_i+2 distinct from B_i");
  const ActionAngleCoords coords = extract_coords(chain);
  const std::vector<double> bx = extended_beta(chain.alpha, coords.beta);
  const HPoint b = chain.B[static_cast<std::size_t>(i - 1)];
  const double da = dist(chain.shared(i - 1), b);
  const double db = dist(chain.C[static_cast<std::size_t>(i + 1)], b);
  if (da <= tol::kRay) throw GeometryError("epsilon closed form needs B_i-1 distinct from B_i");
  const double half_prev = bx[static_cast<std::size_t>(i - 1)] / 2.0;
  const double s1 = std::sin(half_prev);
  const double s2 = std::sin(chain.alpha[i + 1] / 2.0);
  const double c1 = std::cos(half_prev);
  const double c2 = std::cos(chain.alpha[i + 1] / 2.0);
  ClosedForm f;
  f.k1 = -s1 * s2 * std::sinh(da) * std::sinh(db);
  f.k2 = -c1 * c2 - s1 * s2 * std::cosh(da) * std::cosh(db);
  finish(f, bx[static_cast<std::size_t>(i)] / 2.0 - *g);
  return f;
}

}  // namespace dt

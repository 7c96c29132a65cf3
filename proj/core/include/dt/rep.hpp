#pragma once

// Representations of the punctured-sphere group, angle functions and
// conjugation-invariant fingerprints.

#include <cstdint>
#include <string>
#include <vector>

#include "dt/chain.hpp"
#include "dt/hyperbolic.hpp"
#include "dt/surface.hpp"

namespace dt {

namespace tol {
/// Allowed deviation of c_1 ... c_n from +-identity.
inline constexpr double kRel = 1e-8;
}  // namespace tol

struct Representation {
  AngleVector alpha;
  std::vector<Isometry> gens;  // images of c_1..c_n

  int n() const { return static_cast<int>(gens.size()); }
  const Isometry& gen(int k) const { return gens[static_cast<std::size_t>(k - 1)]; }
};

/// Image of a signed word (1-based indices).
Isometry evaluate(const Representation& rep, const std::vector<int>& word);

/// Distance of c_1 ... c_n from +-identity.
double product_residual(const Representation& rep);

/// rho(c_k) = rotation_about(C_k, alpha_k). Throws GeometryError when the
/// product is not the identity.
Representation chain_to_rep(const TriangleChain& chain);

/// Reads C_k and B_i off the fixed points of the generators and of the b_i.
/// Only the standard pants decomposition is supported.
TriangleChain rep_to_chain(const Representation& rep,
                           const PantsDecomposition& pants);
TriangleChain rep_to_chain(const Representation& rep);

/// Representation of the sub-sphere with punctures 1..nbar-1 and a merged
/// puncture whose generator is c_nbar ... c_n.
Representation restrict_rep(const Representation& rep, int nbar);

/// g rho g^-1.
Representation conjugate(const Representation& rep, const Isometry& g);

/// Conjugate with Fix c_1 at i and Fix c_2 straight above it (when distinct).
/// Keeps entries bounded along long twist words.
Representation normalize_gauge(const Representation& rep);

/// Rotation angle of the curve's image. Throws GeometryError when the image
/// is not elliptic.
double angle_function(const Representation& rep, const CurveClass& curve);

struct Fingerprint {
  std::vector<double> values;       // angle functions in curve order
  std::vector<std::int64_t> key;    // floor(value / quantum), wrapped
  double quantum = 1e-6;

  /// FNV-1a hash of the key, as 16 hex digits.
  std::string hex() const;
  /// Every value within q of the other's on the circle.
  bool same_point(const Fingerprint& other, double q) const;
  bool same_point(const Fingerprint& other) const { return same_point(other, quantum); }
};

/// b_i, d_i and e_i for all i.
std::vector<CurveClass> fingerprint_curves(int n);

/// quantum may be +infinity, in which case every key is zero.
Fingerprint fingerprint(const Representation& rep, const std::vector<CurveClass>& curves,
                        double quantum);
Fingerprint fingerprint(const Representation& rep, double quantum = 1e-6);

/// Keys that a point within quantum could have landed on: the key itself plus
/// neighbours for every coordinate close to a bucket edge.
std::vector<std::vector<std::int64_t>> neighbour_keys(const Fingerprint& fp, double edge = 0.1);

struct ClosedForm {
  double k1 = 0.0;
  double k2 = 0.0;
  double predicted = 0.0;  // predicted angle in (0, 2pi)
  double cos_half = 0.0;   // k1 cos(.) + k2
};

/// cos(delta_i/2) = k1 cos(gamma_i) + k2 for d_i (1-based i).
ClosedForm delta_closed_form(const TriangleChain& chain, int i);
/// cos(eps_i/2) = k1 cos(beta_i/2 - gamma_i) + k2 for e_i (1-based i).
ClosedForm epsilon_closed_form(const TriangleChain& chain, int i);

}  // namespace dt

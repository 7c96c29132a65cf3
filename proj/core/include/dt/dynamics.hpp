#pragma once

// Hamiltonian flows of angle functions, Dehn twists, Poisson brackets,
// orbit exploration and rational-angle detection.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dt/chain.hpp"
#include "dt/rep.hpp"
#include "dt/surface.hpp"

namespace dt {

struct FlowSpec {
  CurveClass curve;
  double t = 0.0;
};

/// Conjugates the generators inside `curve` by the rotation by 2t about the
/// fixed point of rho(curve). pi-periodic; t = theta/2 is the Dehn twist.
Representation flow(const Representation& rep, const CurveClass& curve, double t);

/// Action of the power-th power of the Dehn twist along `curve`, computed from
/// the image of the curve word (no fixed-point or angle extraction).
Representation dehn_twist(const Representation& rep, const CurveClass& curve, int power = 1);

/// Twist along the pair curve around punctures i'+2, i'+3 (0-based i'),
/// for a point with mu_{i'} = 0 and mu_{i'+1} != 0.
Representation undegenerate_twist(const Representation& rep, int iprime);

/// True when the twist along Pair(i'+2) lands on mu_{i'+1} = 0: needs
/// beta~_{i'+2} = alpha_{i'+3} and beta~_{i'} = 2pi - alpha_{i'+2} on the
/// extended beta vector.
bool undegenerate_exceptional(const AngleVector& alpha, const std::vector<double>& beta,
                              int iprime, double tol = 1e-9);

/// Central difference of theta_f along the flow of g, with the difference
/// unwrapped across the 0/2pi seam.
double poisson_fd(const Representation& rep, const CurveClass& f, const CurveClass& g,
                  double h = 1e-5);

/// Measured d(gamma_i)(X_{b_i}) at a regular point (expected 2).
double gamma_rate(const Representation& rep, int i, double h = 1e-5);

/// {beta_i, delta_i} and {beta_i, eps_i} predicted from the closed forms of
/// delta_i and eps_i, scaled by the measured gamma rate m.
double bracket_beta_delta_closed(const TriangleChain& chain, int i, double m = 2.0);
double bracket_beta_eps_closed(const TriangleChain& chain, int i, double m = 2.0);

/// max |{f, g}| over the b_i-orbit of rep, sampled at `samples` flow times.
double bracket_orbit_scale(const Representation& rep, int i, const CurveClass& f,
                           const CurveClass& g, int samples = 64, double h = 1e-5);

struct ZeroLocusReport {
  int i = 0;
  double gamma = 0.0;
  double bracket_delta = 0.0;
  double bracket_eps = 0.0;
  double scale_delta = 0.0;  // max |{beta_i, delta_i}| along the b_i-orbit
  double scale_eps = 0.0;
  double dist_delta_locus = 0.0;  // circular distance of gamma to {0, pi}
  double dist_eps_locus = 0.0;    // ... to {beta/2, beta/2 - pi}
  bool delta_small = false;
  bool eps_small = false;
  bool delta_consistent = true;  // smallness agrees with the window test
  bool eps_consistent = true;
  bool never_both = true;
  bool ok() const { return delta_consistent && eps_consistent && never_both; }
};

struct ZeroLocusOptions {
  double window = 1e-4;     // |gamma - locus| below this counts as on the locus
  double far = 1e-2;        // beyond this the bracket must be large
  double rel_small = 1e-3;  // small means below rel_small * scale
  int scale_samples = 64;
  double h = 1e-5;
  double scale_delta = 0.0;  // precomputed orbit scales; 0 means measure them
  double scale_eps = 0.0;
};

/// Checks the zero loci of {beta_i, delta_i} and {beta_i, eps_i} at one
/// regular point (1-based i).
ZeroLocusReport poisson_zero_locus_check(const AngleVector& alpha,
                                         const ActionAngleCoords& coords, int i,
                                         const ZeroLocusOptions& opt = {});

struct RationalAngleReport {
  double angle = 0.0;
  std::optional<std::pair<std::int64_t, std::int64_t>> match;  // (p, q)
  std::int64_t q_max = 10000;
  double tol = 1e-8;
  double error = 0.0;  // |angle - 2pi p/q| for the best convergent
};

RationalAngleReport rational_angle(double angle, std::int64_t q_max = 10000, double tol = 1e-8);

enum class Strategy { RandomWalk, BFS };

// Random walks record the twist applied at each step (the full word is the
// concatenation up to that step); BFS records the path from the start.
struct OrbitRecord {
  std::int64_t step = 0;
  std::vector<std::string> word;  // twist labels such as "b1" or "d2^-1"
  ActionAngleCoords coords;
  Fingerprint fp;
};

struct OrbitOptions {
  std::int64_t max_steps = 1000;
  Strategy strategy = Strategy::RandomWalk;
  std::uint64_t seed = 1;
  double quantum = 1e-6;
  int recanon_period = 100;
  bool with_inverses = true;
  std::int64_t finite_cap = 100000;
  bool keep_records = true;
  bool keep_words = true;
  std::function<void(const OrbitRecord&)> on_record;
};

struct OrbitResult {
  enum class Verdict { Finite, BudgetExceeded, Aborted };
  Verdict verdict = Verdict::BudgetExceeded;
  std::int64_t size = 0;  // orbit size for Finite, records emitted otherwise
  std::vector<OrbitRecord> records;
  std::string diagnostic;
};

std::string to_string(OrbitResult::Verdict v);

OrbitResult orbit_explore(const AngleVector& alpha, const ActionAngleCoords& start,
                          const std::vector<CurveClass>& gens, const OrbitOptions& opt);
OrbitResult orbit_explore(const Representation& start, const std::vector<CurveClass>& gens,
                          const OrbitOptions& opt);

/// Rebuilds a clean representation of the same point: from coordinates when
/// the chain is regular, through the canonical chain otherwise.
Representation recanonicalize(const Representation& rep);

/// Phi_{f_1}^{t_1} o ... o Phi_{f_m}^{t_m}(rep): the last spec acts first.
Representation local_parametrization(const Representation& rep,
                                     const std::vector<FlowSpec>& specs);

struct JacobianReport {
  int rows = 0;
  int cols = 0;
  std::vector<double> entries;         // row-major
  std::vector<double> singular_values;  // descending
  double det = 0.0;
  bool full_rank = false;
};

/// Finite-difference Jacobian of the angle functions of `observables` with
/// respect to the flow times of `flows` at t = 0. Rank drops when
/// sigma_min < max(rank_tol * sigma_max, abs_tol); the absolute floor sits
/// above finite-difference noise (about 1e-11 at h = 1e-5).
JacobianReport flow_jacobian(const Representation& rep, const std::vector<CurveClass>& observables,
                             const std::vector<CurveClass>& flows, double h = 1e-5,
                             double rank_tol = 1e-6, double abs_tol = 1e-8);

enum class Zeta { Delta, Epsilon };

/// Per-i choice: delta unless gamma_i is within `window` of {0, pi}.
std::vector<Zeta> prescribed_zeta(const ActionAngleCoords& coords, double window = 1e-2);

/// (beta_1..beta_{n-3}, zeta_1..zeta_{n-3}) as curves.
std::vector<CurveClass> beta_zeta_curves(int n, const std::vector<Zeta>& zeta);

}  // namespace dt

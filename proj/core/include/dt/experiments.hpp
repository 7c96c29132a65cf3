#pragma once

// Desk-scale experiments: density probes, zero-locus scans, fiber
// multiplicity, transversality sweeps and restriction/gluing checks.
// Every experiment is a pure function of its config (seed included).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dt/chain.hpp"
#include "dt/dynamics.hpp"
#include "dt/rep.hpp"
#include "dt/sampling.hpp"

namespace dt {

struct ExperimentConfig {
  int n = 4;
  std::vector<double> alpha;                 // empty: 1.9pi at every puncture
  std::optional<ActionAngleCoords> start;    // empty: random from the seed
  std::vector<std::string> gens;             // empty: all b, d, e curves
  std::int64_t steps = 1000;
  std::uint64_t seed = 1;
  Strategy strategy = Strategy::RandomWalk;
  double quantum = 1e-6;
  int recanon_period = 100;
  std::vector<std::int64_t> checkpoints{1000, 10000, 100000};
  std::int64_t probe_budget = 2000;          // BFS nodes before a density run
  std::string scan_kind = "zero_locus";      // zero_locus | fiber | transversality
  std::int64_t samples = 1000;
  int index = 1;                             // curve index i for scans
  int nbar = 0;                              // gluing: 0 means n-1
  std::string out;
};

/// alpha from the config, validated.
AngleVector config_alpha(const ExperimentConfig& cfg);
/// Start coordinates: configured or random from the seed.
ActionAngleCoords config_start(const ExperimentConfig& cfg, const AngleVector& alpha);
std::vector<CurveClass> config_gens(const ExperimentConfig& cfg);

/// Maps a point of the moment polytope x torus to the unit cube: the
/// Rosenblatt transform of the uniform law on the mu-simplex, then gamma/2pi.
/// The Liouville measure becomes the uniform measure.
std::vector<double> action_angle_to_cube(const AngleVector& alpha, const ActionAngleCoords& c);

/// Bin counts and a fine histogram for the star discrepancy.
class DensityAccumulator {
 public:
  DensityAccumulator(int dims, int bins_per_axis, int grid_per_axis);

  void add(const std::vector<double>& u);
  /// Counts add; the result is independent of merge order.
  void merge(const DensityAccumulator& other);

  std::int64_t total() const { return total_; }
  int dims() const { return dims_; }
  int bins_per_axis() const { return bins_; }
  const std::vector<std::int64_t>& counts() const { return counts_; }
  std::int64_t cells_visited() const;
  /// max over grid-anchored boxes [0, a) of |empirical - volume|.
  double star_discrepancy() const;

 private:
  int dims_, bins_, grid_;
  std::int64_t total_ = 0;
  std::vector<std::int64_t> counts_;
  std::vector<std::int64_t> fine_;
};

struct DensityCheckpoint {
  std::int64_t samples = 0;
  double discrepancy = 0.0;
  std::int64_t cells_visited = 0;
};

struct DensityReport {
  ExperimentConfig config;
  ActionAngleCoords start;
  std::vector<std::string> irrational_curves;  // generator curves with no rational match
  std::string probe_verdict;                   // BFS probe outcome
  std::int64_t probe_size = 0;
  int dims = 0;
  int bins_per_axis = 0;
  std::vector<std::int64_t> counts;
  std::int64_t samples = 0;
  std::vector<DensityCheckpoint> checkpoints;
  bool non_increasing = false;
  bool last_below_first = false;
  bool all_cells_visited = false;
  std::string verdict;  // finite | equidistribution_trend | no_trend | aborted
  std::string label;    // "possibly finite orbit" when no angle is flagged irrational
  std::string diagnostic;
};

DensityReport density_experiment(const ExperimentConfig& cfg);

struct FiberReport {
  ExperimentConfig config;
  std::vector<double> beta;
  std::vector<std::string> zeta;  // curve label per axis
  std::int64_t samples = 0;
  std::int64_t max_cluster = 0;
  std::int64_t bound = 0;          // 2^(n-3)
  std::int64_t violations = 0;     // clusters above the bound
  double symmetry_residual = 0.0;  // max |zeta(c + x) - zeta(c - x)|
  struct Row {
    std::vector<double> gamma;
    std::vector<double> zeta;
    std::int64_t cluster = 0;
  };
  std::vector<Row> rows;
  bool ok() const { return violations == 0; }
};

/// Grid over the gamma torus at fixed beta, symmetric about 0 on delta axes
/// and about beta_i/2 on epsilon axes; clusters equal zeta values.
FiberReport fiber_multiplicity_scan(const ExperimentConfig& cfg, double cluster_tol = 1e-9);

struct ZeroLocusScan {
  ExperimentConfig config;
  std::vector<ZeroLocusReport> rows;
  std::int64_t failures = 0;
  bool ok() const { return failures == 0; }
};

/// Samples the b_i-orbit of the start point uniformly in gamma_i and adds
/// points on and next to each predicted locus.
ZeroLocusScan zero_locus_scan(const ExperimentConfig& cfg);

struct TransversalityReport {
  ExperimentConfig config;
  // Each pairing is judged on the {beta_i, zeta_j} block of the FD Jacobian:
  // the betas commute, so the determinant is the square of that block's, and
  // the block is diagonal. Its diagonal is normalized by the bracket's
  // amplitude along the b_i-orbit; full rank means every entry is above
  // rel_small, the same threshold as the zero-locus check.
  struct Row {
    ActionAngleCoords coords;
    bool regular = true;           // chain non-degenerate
    bool delta_full = false;       // (beta, delta)
    bool eps_full = false;         // (beta, eps)
    bool pair_full = false;        // (delta, eps); n = 4 only
    bool prescribed_full = false;  // (beta, zeta) with the prescribed zeta
    bool in_delta_window = false;
    bool in_eps_window = false;
    bool in_band = false;          // between window and far; not judged
    double delta_margin = 0.0;     // min_i |{beta_i, delta_i}| / amplitude
    double eps_margin = 0.0;
    double pair_margin = 0.0;
    double prescribed_det = 0.0;
  };
  double rel_small = 1e-3;
  double window = 1e-4;
  double far = 1e-2;
  std::vector<Row> rows;
  double max_off_diagonal = 0.0;  // largest normalized off-diagonal block entry
  std::int64_t prescribed_failures = 0;
  std::int64_t window_mismatches = 0;
  std::int64_t uncovered = 0;  // n = 4 points where no pairing is regular
  bool ok() const {
    return prescribed_failures == 0 && window_mismatches == 0 && uncovered == 0 &&
           max_off_diagonal < rel_small;
  }
};

TransversalityReport transversality_sweep(const ExperimentConfig& cfg);

struct GluingReport {
  ExperimentConfig config;
  int nbar = 0;
  std::int64_t points = 0;
  double lambda_error = 0.0;
  double max_commutation_error = 0.0;  // restrict(twist x) vs twist(restrict x)
  double max_outside_error = 0.0;      // twists supported off the sub-sphere
  double max_chain_rep_error = 0.0;    // restrict_chain vs restrict_rep
  std::vector<std::string> twists;
  bool ok(double tol = 1e-8) const {
    return lambda_error < 1e-12 && max_commutation_error < tol && max_outside_error < tol &&
           max_chain_rep_error < tol;
  }
};

/// Points with mu_k = 0 for k >= nbar-2, random otherwise.
GluingReport gluing_consistency(const ExperimentConfig& cfg);

/// Random point of the stratum mu_k = 0 for k >= nbar-2.
ActionAngleCoords random_trailing_point(const AngleVector& alpha, int nbar, Rng& rng);

/// Max circular difference between two fingerprints.
double fingerprint_distance(const Fingerprint& a, const Fingerprint& b);

}  // namespace dt

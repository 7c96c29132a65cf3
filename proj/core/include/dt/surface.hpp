#pragma once

// Curves on the n-punctured sphere, written as words in the peripheral
// generators c_1..c_n (index k stands for c_k, -k for its inverse).

#include <stdexcept>
#include <string>
#include <vector>

namespace dt {

enum class CurveKind { B, D, E, Pair, Custom };

struct CurveClass {
  CurveKind kind = CurveKind::Custom;
  int index = 0;            // i for B/D/E, j for Pair
  std::vector<int> word;    // signed, 1-based generator indices
  std::vector<int> inside;  // declared side for Custom curves (may be empty)

  /// "b3", "d1", "e2", "p4"; Custom curves print their word.
  std::string label() const;
  friend bool operator==(const CurveClass& a, const CurveClass& b) {
    return a.kind == b.kind && a.index == b.index && a.word == b.word;
  }
};

class TopologyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// b_i = (c_1 ... c_{i+1})^-1, 1 <= i <= n-3.
CurveClass curve_b(int n, int i);
/// d_i = (c_{i+1} c_{i+2})^-1, 1 <= i <= n-3.
CurveClass curve_d(int n, int i);
/// e_i = (c_1 ... c_i c_{i+2})^-1, 1 <= i <= n-3.
CurveClass curve_e(int n, int i);
/// Curve around punctures j and j+1: (c_j c_{j+1})^-1, 1 <= j <= n-1.
CurveClass curve_pair(int n, int j);

/// Parses "b3", "d1", "e2" or "p4".
CurveClass parse_curve(const std::string& label, int n);

struct StandardCurves {
  std::vector<CurveClass> b, d, e;

  /// b, then d, then e.
  std::vector<CurveClass> all() const;
};

StandardCurves standard_curves(int n);

struct TwistSide {
  std::vector<int> inside;
  std::vector<int> outside;
};

/// Which generators a twist along `curve` conjugates.
TwistSide twist_side(const CurveClass& curve, int n);

struct PantsDecomposition {
  std::vector<CurveClass> curves;
  std::vector<int> order;  // generator ordering of the compatible presentation
};

/// The decomposition by b_1..b_{n-3} with the identity ordering.
PantsDecomposition standard_pants(int n);

/// Checks n >= 4.
void require_sphere(int n);

}  // namespace dt

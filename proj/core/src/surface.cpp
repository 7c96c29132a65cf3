#include "dt/surface.hpp"

#include <algorithm>
#include <cctype>

namespace dt {

void require_sphere(int n) {
  if (n < 4) throw TopologyError("need at least 4 punctures, got " + std::to_string(n));
}

namespace {

void require_index(int n, int i, int hi, const char* family) {
  require_sphere(n);
  if (i < 1 || i > hi) {
    throw TopologyError(std::string("curve index out of range for ") + family + ": " +
                        std::to_string(i));
  }
}

// Inverse of the positive word c_{k1} c_{k2} ... as a signed word.
std::vector<int> inverse_of_product(const std::vector<int>& gens) {
  std::vector<int> w;
  for (auto it = gens.rbegin(); it != gens.rend(); ++it) w.push_back(-*it);
  return w;
}

}  // namespace

std::string CurveClass::label() const {
  switch (kind) {
    case CurveKind::B: return "b" + std::to_string(index);
    case CurveKind::D: return "d" + std::to_string(index);
    case CurveKind::E: return "e" + std::to_string(index);
    case CurveKind::Pair: return "p" + std::to_string(index);
    case CurveKind::Custom: break;
  }
  std::string s = "w";
  for (int g : word) s += (g < 0 ? "-" : "+") + std::to_string(std::abs(g));
  return s;
}

CurveClass curve_b(int n, int i) {
  require_index(n, i, n - 3, "b");
  std::vector<int> gens;
  for (int k = 1; k <= i + 1; ++k) gens.push_back(k);
  return {CurveKind::B, i, inverse_of_product(gens), {}};
}

CurveClass curve_d(int n, int i) {
  require_index(n, i, n - 3, "d");
  return {CurveKind::D, i, inverse_of_product({i + 1, i + 2}), {}};
}

CurveClass curve_e(int n, int i) {
  require_index(n, i, n - 3, "e");
  std::vector<int> gens;
  for (int k = 1; k <= i; ++k) gens.push_back(k);
  gens.push_back(i + 2);
  return {CurveKind::E, i, inverse_of_product(gens), {}};
}

CurveClass curve_pair(int n, int j) {
  require_index(n, j, n - 1, "p");
  return {CurveKind::Pair, j, inverse_of_product({j, j + 1}), {}};
}

CurveClass parse_curve(const std::string& label, int n) {
  if (label.size() < 2 || !std::all_of(label.begin() + 1, label.end(),
                                       [](unsigned char ch) { return std::isdigit(ch); })) {
    throw TopologyError("bad curve label '" + label + "'");
  }
  const int idx = std::stoi(label.substr(1));
  switch (label[0]) {
    case 'b': return curve_b(n, idx);
    case 'd': return curve_d(n, idx);
    case 'e': return curve_e(n, idx);
    case 'p': return curve_pair(n, idx);
    default: throw TopologyError("bad curve label '" + label + "'");
  }
}

std::vector<CurveClass> StandardCurves::all() const {
  std::vector<CurveClass> out(b);
  out.insert(out.end(), d.begin(), d.end());
  out.insert(out.end(), e.begin(), e.end());
  return out;
}

StandardCurves standard_curves(int n) {
  require_sphere(n);
  StandardCurves sc;
  for (int i = 1; i <= n - 3; ++i) {
    sc.b.push_back(curve_b(n, i));
    sc.d.push_back(curve_d(n, i));
    sc.e.push_back(curve_e(n, i));
  }
  return sc;
}

TwistSide twist_side(const CurveClass& curve, int n) {
  require_sphere(n);
  TwistSide side;
  switch (curve.kind) {
    case CurveKind::B:
      for (int k = 1; k <= curve.index + 1; ++k) side.inside.push_back(k);
      break;
    case CurveKind::D:
      side.inside = {curve.index + 1, curve.index + 2};
      break;
    case CurveKind::Pair:
      side.inside = {curve.index, curve.index + 1};
      break;
    case CurveKind::E:
      for (int k = 1; k <= curve.index; ++k) side.inside.push_back(k);
      side.inside.push_back(curve.index + 2);
      break;
    case CurveKind::Custom:
      if (curve.inside.empty()) throw TopologyError("custom curve has no declared side");
      side.inside = curve.inside;
      std::sort(side.inside.begin(), side.inside.end());
      break;
  }
  for (int k = 1; k <= n; ++k) {
    if (!std::binary_search(side.inside.begin(), side.inside.end(), k)) side.outside.push_back(k);
  }
  return side;
}

PantsDecomposition standard_pants(int n) {
  PantsDecomposition p;
  p.curves = standard_curves(n).b;
  for (int k = 1; k <= n; ++k) p.order.push_back(k);
  return p;
}

}  // namespace dt

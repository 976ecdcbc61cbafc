#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "folicalc/dense.hpp"
#include "folicalc/jet.hpp"

namespace folicalc {

using Point = std::vector<double>;

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

/// Tensor-product quadrature rule along one coordinate axis.
struct QuadratureAxis {
  bool periodic = false;  // trapezoid when true, Gauss-Legendre otherwise
  int nodes = 8;
};

/// A coordinate box carrying a global frame e_1..e_n whose first `leaf_dim`
/// fields span the distribution F and whose remaining fields span its
/// orthogonal complement. The metric is block diagonal in that frame.
struct FramedPatch {
  using Coords = std::span<const RJet>;
  using MatrixField = std::function<RJetMatrix(Coords)>;

  std::string name;
  int dim = 0;
  int leaf_dim = 0;
  std::vector<Interval> box;
  /// Row a holds the coordinate components of e_a.
  MatrixField frame;
  /// g^F on e_1..e_p (p x p).
  MatrixField metric_leaf;
  /// g^{F-perp} on e_{p+1}..e_n (q x q).
  MatrixField metric_transverse;
  /// Fundamental-domain quadrature; empty when the box is only a chart.
  std::vector<QuadratureAxis> quadrature;

  int codim() const { return dim - leaf_dim; }
  bool contains(std::span<const double> point) const;
  bool has_fundamental_domain() const { return !quadrature.empty(); }
};

/// Coordinates of a point promoted to jet variables.
std::vector<RJet> coordinate_jets(std::span<const double> point);

/// Same manifold, metric multiplied by `factor` on both blocks.
FramedPatch homothetic(const FramedPatch& patch, double factor);

/// Transverse block divided by `eps`, so that eps = 1 on the result equals
/// eps on the input.
FramedPatch prescaled(const FramedPatch& patch, double eps);

/// Same metric presented in a different frame e'_a = sum_b P_ab e_b, with P a
/// constant block-diagonal (leaf/transverse) invertible matrix.
FramedPatch reframed(const FramedPatch& patch, const std::vector<std::vector<double>>& change);

std::vector<Point> sample_box(const std::vector<Interval>& box, int count, unsigned seed, double margin);

/// Uniform deterministic sample of interior points (inset by `margin` of each
/// interval's width).
std::vector<Point> sample_points(const FramedPatch& patch, int count, unsigned seed = 20240611u,
                                 double margin = 0.05);

}  // namespace folicalc

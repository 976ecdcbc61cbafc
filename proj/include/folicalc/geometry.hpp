#pragma once

#include <span>
#include <vector>

#include "folicalc/dense.hpp"
#include "folicalc/framed_patch.hpp"
#include "folicalc/jet.hpp"

namespace folicalc {

/// [e_a, e_b] at `point`, in components of the patch frame.
std::vector<double> lie_bracket(const FramedPatch& patch, int a, int b, std::span<const double> point);

/// g^eps-orthonormal frame adapted to F + F-perp, obtained by Gram-Schmidt in
/// ascending index within each block.
struct AdaptedFrame {
  int dim = 0;
  int leaf_dim = 0;
  double eps = 1.0;
  /// f_a = sum_b in_patch_frame(a, b) e_b; block lower-triangular.
  Dense<double> in_patch_frame;
  /// Coordinate components of f_a (row a).
  Dense<double> coordinates;
};

AdaptedFrame orthonormalize_adapted(const FramedPatch& patch, double eps, std::span<const double> point);

/// Gamma_abc = <nabla_{f_a} f_b, f_c> in the adapted orthonormal frame.
struct ConnectionCoefficients {
  int dim = 0;
  std::vector<double> gamma;
  /// max |Gamma_abc + Gamma_acb| (metric compatibility in an orthonormal frame)
  double metric_residual = 0.0;
  /// max |Gamma_abc - Gamma_bac - c_ab^c| (torsion)
  double torsion_residual = 0.0;

  double operator()(int a, int b, int c) const { return gamma[(a * dim + b) * dim + c]; }
};

ConnectionCoefficients connection_coefficients(const FramedPatch& patch, double eps, std::span<const double> point);

/// Connection, curvature and scalar curvature of g^eps at one point, expressed
/// in the adapted g^eps-orthonormal frame f_1..f_p, h_1..h_q.
///
/// Convention: R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z,
/// riemann(a,b,c,d) = <R(f_a,f_b)f_c, f_d>, and k = sum_ab riemann(a,b,b,a),
/// which is positive on round spheres.
///
/// The snapshot keeps first-order jets of the structure functions and of the
/// connection coefficients so that callers can differentiate them along the
/// frame (needed by the foliation invariants).
class CurvatureSnapshot {
 public:
  int dim() const { return n_; }
  int leaf_dim() const { return p_; }
  int codim() const { return n_ - p_; }
  double eps() const { return eps_; }
  const Point& point() const { return point_; }
  const AdaptedFrame& frame() const { return frame_; }

  /// c_ab^d with [f_a, f_b] = sum_d c_ab^d f_d.
  double structure(int a, int b, int d) const { return c_[idx3(a, b, d)].value(); }
  const RJet& structure_jet(int a, int b, int d) const { return c_[idx3(a, b, d)]; }
  double gamma(int a, int b, int d) const { return gamma_[idx3(a, b, d)].value(); }
  const RJet& gamma_jet(int a, int b, int d) const { return gamma_[idx3(a, b, d)]; }
  double riemann(int a, int b, int c, int d) const { return riemann_[idx4(a, b, c, d)]; }
  double scalar_curvature() const { return scalar_; }

  /// Ricci(b, c) = sum_a <R(f_a, f_b) f_c, f_a>.
  double ricci(int b, int c) const;
  /// Trace of Ricci, summed independently of scalar_curvature().
  double ricci_trace() const;

  /// Derivative of a coordinate jet along f_a; the result loses one order.
  RJet along(int a, const RJet& field) const;

  /// <R^{perp}(f_a, f_b) h_t, h_s> for the connection p-perp nabla restricted
  /// to F-perp; t, s are transverse slot indices (0-based within the block).
  double transverse_curvature(int a, int b, int t, int s) const;

  int idx3(int a, int b, int c) const { return (a * n_ + b) * n_ + c; }
  int idx4(int a, int b, int c, int d) const { return ((a * n_ + b) * n_ + c) * n_ + d; }

 private:
  friend CurvatureSnapshot curvature_snapshot(const FramedPatch&, double, std::span<const double>);

  int n_ = 0;
  int p_ = 0;
  double eps_ = 1.0;
  Point point_;
  AdaptedFrame frame_;
  RJetMatrix frame_jets_;
  std::vector<RJet> c_;
  std::vector<RJet> gamma_;
  std::vector<double> riemann_;
  double scalar_ = 0.0;
};

CurvatureSnapshot curvature_snapshot(const FramedPatch& patch, double eps, std::span<const double> point);

/// The three double sums whose combination gives -k:
///   -k = ff + hh + 2 fh,
/// ff = sum_ij <R(f_i,f_j)f_i,f_j>, fh = sum_is <R(f_i,h_s)f_i,h_s>,
/// hh = sum_st <R(h_s,h_t)h_s,h_t>, all in the g^eps-orthonormal frame.
struct BlockSums {
  double ff = 0.0;
  double fh = 0.0;
  double hh = 0.0;
  double minus_scalar() const { return ff + hh + 2.0 * fh; }
};

BlockSums sectional_block_sums(const CurvatureSnapshot& snapshot);

/// Riemannian volume density sqrt(det g^eps) in coordinates at a point.
double volume_density(const FramedPatch& patch, double eps, std::span<const double> point);

}  // namespace folicalc

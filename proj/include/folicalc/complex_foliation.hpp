#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "folicalc/dense.hpp"
#include "folicalc/framed_patch.hpp"
#include "folicalc/jet.hpp"

namespace folicalc {

/// Box in C^n (real coordinates x_1, y_1, ..., x_n, y_n) with the foliation
/// spanned by d/dz_1..d/dz_p. The Hermitian metric is presented through the
/// adapted decomposition
///   d/dz_r = sum_j a_rj d/dz_j + sum_s b_rs e_s   (r > p),
/// with e_s orthonormal in F-perp, so that
///   H^eps = B0 diag(H_pp, I/eps) B0^*,  B0 = [[I, 0], [a, B]].
struct ComplexPatch {
  using Coords = std::span<const RJet>;
  using MatrixField = std::function<CJetMatrix(Coords)>;

  std::string name;
  int complex_dim = 0;
  int leaf_dim = 0;
  std::vector<Interval> box;  // 2n real intervals
  MatrixField leaf_metric;        // H_pp, p x p Hermitian
  MatrixField mixing;             // a, q x p
  MatrixField transverse_factor;  // B, q x q invertible

  int codim() const { return complex_dim - leaf_dim; }
  int real_dim() const { return 2 * complex_dim; }
};

/// H^eps with jet entries. Checks Hermitian symmetry and positivity.
CJetMatrix hermitian_metric(const ComplexPatch& patch, ComplexPatch::Coords x, double eps);

/// Connection and curvature matrices of the Hermitian holomorphic connection
/// in the basis d/dz_1..d/dz_n.
/// The matrix may have any rank r (a sub-bundle metric); forms live on C^n.
///   connection(a, b, k): coefficient of dz_k in (dH H^{-1})_{ab}
///   curvature(a, b, u, v): Omega_{ab} on the basis pair (u, v) of
///   (dz_1..dz_n, dzbar_1..dzbar_n), antisymmetric in (u, v).
struct ConnectionMatrix {
  int rank = 0;         // size of the Hermitian matrix
  int complex_dim = 0;  // n, number of holomorphic coordinates
  std::vector<std::complex<double>> connection;
  std::vector<std::complex<double>> curvature;

  std::complex<double> omega(int a, int b, int k) const { return connection[(a * rank + b) * complex_dim + k]; }
  std::complex<double> Omega(int a, int b, int u, int v) const {
    const int m = 2 * complex_dim;
    return curvature[((a * rank + b) * m + u) * m + v];
  }
  /// Tr Omega as a 2n x 2n antisymmetric array.
  Eigen::MatrixXcd trace_curvature() const;
  /// Tr connection as coefficients of dz_k.
  Eigen::VectorXcd trace_connection() const;
};

/// Connection data of an arbitrary Hermitian matrix field over C^n.
ConnectionMatrix hermitian_connection(const CJetMatrix& h, int complex_dim);

ConnectionMatrix connection_and_curvature(const ComplexPatch& patch, std::span<const double> point, double eps);

struct TraceSplit {
  Eigen::MatrixXcd leaf;        // Tr Omega of T^{1,0}F from H_pp
  Eigen::MatrixXcd transverse;  // Tr Omega of T^{1,0}F-perp from B B^*
  std::vector<double> eps;
  std::vector<Eigen::MatrixXcd> total;  // Tr Omega^eps per eps
  double eps_variation = 0.0;           // max componentwise spread of Tr Omega^eps over the grid
  double split_error = 0.0;             // max |Tr Omega^eps - leaf - transverse|
  double bianchi_error = 0.0;           // max |delbar Tr connection - Tr Omega^eps|
};

TraceSplit trace_curvature_split(const ComplexPatch& patch, std::span<const double> point,
                                 const std::vector<double>& eps_grid = {1.0, 0.1, 0.01});

/// Deviation of the blocks of (H^eps)^{-1} from their limits and the fitted
/// power of eps in each deviation (log-log slope).
struct BlockLimit {
  std::vector<double> eps;
  std::vector<double> leaf_deviation;        // ||inv_11 - H_pp^{-1}||
  std::vector<double> off_diagonal;          // max(||inv_12||, ||inv_21||)
  std::vector<double> transverse_deviation;  // ||inv_22 / eps - (B B^*)^{-1}||
  double leaf_exponent = 0.0;
  double off_diagonal_exponent = 0.0;
  double transverse_exponent = 0.0;  // of ||inv_22|| itself
};

BlockLimit block_limit(const ComplexPatch& patch, std::span<const double> point, const std::vector<double>& eps_grid);

/// Components of the transverse Kaehler form omega_2(u, v) = g(J u_perp, v_perp)
/// in the real coordinate basis, and the vanishing checks on leaf directions.
struct KahlerReport {
  Eigen::MatrixXd components;     // f_ij, 2n x 2n
  double leaf_component_max = 0.0;        // max |f_ij| with i or j in the leaf block
  double twisted_derivative_max = 0.0;    // (del - delbar) omega_2 on (f,f,f) and (f,f,h)
  double double_derivative_max = 0.0;     // delbar del omega_2 on (f,f,f,f) and (f,f,f,h)
  double leaf_cross_max = 0.0;            // max |g(f, h)| over leaf f and projected h
};

/// Throws StructuralError when any leaf component exceeds `tolerance`.
KahlerReport kahler_form_components(const ComplexPatch& patch, std::span<const double> point,
                                    double tolerance = 1e-10);

std::vector<Point> sample_points(const ComplexPatch& patch, int count, unsigned seed = 20240611u,
                                 double margin = 0.05);

namespace complex_manifolds {

/// C^2 / lattice with constant metric data, p = 1.
ComplexPatch complex_torus();
/// C^3 / lattice with nonconstant H_pp, mixing a and transverse factor B, p = 2.
ComplexPatch sheared_complex_torus();

}  // namespace complex_manifolds

}  // namespace folicalc

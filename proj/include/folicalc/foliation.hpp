#pragma once

#include <span>
#include <string>
#include <vector>

#include "folicalc/dense.hpp"
#include "folicalc/framed_patch.hpp"
#include "folicalc/geometry.hpp"

namespace folicalc {

/// Total defect below which F is treated as integrable at a point.
inline constexpr double kIntegrabilityTolerance = 1e-10;

/// Orthogonal splitting of a tangent vector (coordinate components) for g = g^1.
struct SplitVector {
  std::vector<double> leaf;
  std::vector<double> transverse;
};

SplitVector projections(const FramedPatch& patch, std::span<const double> point, std::span<const double> vector);

/// ||p_perp [f_i, f_j]||^2 for every ordered leaf pair, and their sum.
struct IntegrabilityDefect {
  Dense<double> entries;
  double total = 0.0;
};

IntegrabilityDefect integrability_defect(const FramedPatch& patch, std::span<const double> point);
bool is_integrable(const FramedPatch& patch, std::span<const double> point);

/// Bott connection, its metric dual and their average applied to a leaf vector
/// X and a transverse vector U, both given in coordinates and extended with
/// constant coefficients in the adapted orthonormal frame. Results are
/// components in the transverse orthonormal frame h_1..h_q.
struct BottTriple {
  std::vector<double> bott;
  std::vector<double> dual;
  std::vector<double> hat;
};

BottTriple bott_and_dual(const FramedPatch& patch, std::span<const double> point, std::span<const double> leaf_vector,
                         std::span<const double> transverse_vector);

/// omega(f_i)(h_s, h_t) at a point, i < p, s, t < q.
struct OmegaTensor {
  Point point;
  int leaf_dim = 0;
  int codim = 0;
  std::vector<double> values;

  double operator()(int i, int s, int t) const { return values[(i * codim + s) * codim + t]; }
  /// Components of A(f_i, h_s) = 1/2 sum_t omega(f_i)(h_s, h_t) h_t.
  double mean_twist(int i, int s, int t) const { return 0.5 * (*this)(i, s, t); }
  double max_abs() const;
};

/// omega from the structure functions of the adapted orthonormal frame.
OmegaTensor omega_tensor(const FramedPatch& patch, std::span<const double> point);

/// omega evaluated in the raw patch frame from
///   omega(X)(U, V) = X<U,V> - <p_perp [X,U], V> - <U, p_perp [X,V]>
/// and then transformed to the orthonormal frame; an independent route.
OmegaTensor omega_tensor_from_patch_frame(const FramedPatch& patch, std::span<const double> point);

/// Reading of the second group of the limit defect.
///   literal:    leaf sum up to min(p, q); the term with a leaf vector in a
///               transverse slot of omega is zero; no further factor.
///   consistent: leaf sum up to p, both omega slots transverse, and the group
///               counted twice as it enters -k through 2 * FH.
enum class PhiVariant { literal, consistent };

std::string to_string(PhiVariant v);
PhiVariant parse_phi_variant(const std::string& name);

/// Limit defect lim k^eps - k^F at a point. Requires F integrable.
double phi_omega(const FramedPatch& patch, std::span<const double> point, PhiVariant variant = PhiVariant::consistent);

/// Scalar curvature of the leaf through the point. Requires F integrable.
double leaf_scalar_curvature(const FramedPatch& patch, std::span<const double> point);

/// Closed-form non-integrable blow-up term and its parts.
struct BInvariant {
  double defect_total = 0.0;        // sum ||p_perp [f_i, f_j]||^2
  double leaf_of_transverse = 0.0;  // sum ||p nabla_{f_i} h_s||^2
  double transverse_of_leaf = 0.0;  // sum ||p_perp nabla_{f_j} f_i||^2
  double four_b = 0.0;
  double value() const { return 0.25 * four_b; }
};

BInvariant b_invariant(const FramedPatch& patch, std::span<const double> point);

/// <Rhat(f_i, f_j) h_t, h_s> for the averaged connection on F-perp, on all
/// index combinations, computed directly from its connection coefficients.
/// Stored as values[((i*p + j)*q + t)*q + s].
struct HatCurvature {
  int leaf_dim = 0;
  int codim = 0;
  std::vector<double> values;
  double operator()(int i, int j, int t, int s) const {
    return values[((i * leaf_dim + j) * codim + t) * codim + s];
  }
};

HatCurvature hat_curvature(const FramedPatch& patch, std::span<const double> point);

/// The same tensor assembled from omega and the Bott connection:
///   Rdot + 1/2 (nabla_i W_j - nabla_j W_i - W_[i,j]) + 1/4 [W_i, W_j].
HatCurvature hat_curvature_from_omega(const FramedPatch& patch, std::span<const double> point);

/// Single component <Rhat(f_i, f_j) h_t, h_s>. Requires F integrable.
double hat_curvature_limit(const FramedPatch& patch, std::span<const double> point, int i, int j, int s, int t);

struct CertificateReport {
  Point point;
  double leaf_curvature = 0.0;
  double phi = 0.0;
  double curvature_term_norm = 0.0;  // spectral norm of the Clifford curvature term
  double a_value = 0.0;
  double b_value = 0.0;
  bool positive() const { return a_value > 0.0; }
};

/// Pointwise vanishing certificate with trivial twist. Requires F integrable
/// and an even leaf dimension.
CertificateReport certificate_A(const FramedPatch& patch, std::span<const double> point,
                                PhiVariant variant = PhiVariant::consistent);

}  // namespace folicalc

#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "folicalc/framed_patch.hpp"

namespace folicalc {

struct HatCurvature;

using CMatrix = Eigen::MatrixXcd;

/// Clifford actions on S(F) graded-tensor Lambda(F-perp*), realized on
/// m = p/2 + q qubits with Jordan-Wigner generators. Entries lie in {0, +-1, +-i}.
///   leaf[i]          = c(f_i),  c(f_i)^2 = -Id
///   transverse[s]    = c(h_s),  c(h_s)^2 = -Id
///   transverse_hat[s]= c^(h_s), c^(h_s)^2 = +Id
/// All generators pairwise anticommute.
struct CliffordRep {
  int leaf_dim = 0;
  int codim = 0;
  int rank = 1;
  std::vector<CMatrix> leaf;
  std::vector<CMatrix> transverse;
  std::vector<CMatrix> transverse_hat;
};

/// Requires p even and p + q <= 12.
CliffordRep build_rep(int p, int q);

/// Largest entry of any anticommutator deviation; zero for an exact rep.
double anticommutation_defect(const CliffordRep& rep);

struct TraceIdentityReport {
  double identity_trace = 0.0;
  double worst_quadratic = 0.0;  // |Tr[c_i c_j]|, |Tr[c^_s c^_t]| for i != j, s != t
  double worst_quartic = 0.0;    // |Tr[c_i c_j c^_s c^_t]| with i != j or s != t
  int checked = 0;
};

TraceIdentityReport trace_identities(const CliffordRep& rep);

/// <R^{F-perp}(a, b) h_t, h_s> for frame indices a, b (leaf first, then
/// transverse) and transverse slots t, s, at one point and eps.
struct TransverseCurvatureTable {
  int dim = 0;
  int leaf_dim = 0;
  std::vector<double> values;
  int codim() const { return dim - leaf_dim; }
  double operator()(int a, int b, int t, int s) const {
    const int q = codim();
    return values[((a * dim + b) * q + t) * q + s];
  }
};

/// The Lichnerowicz-type endomorphism assembled from its three sums
/// (weights 1/4, 1/8, 1/8).
CMatrix assemble_Q(const CliffordRep& rep, const TransverseCurvatureTable& curvature);

/// Trace of Q computed term by term through the trace identities: only the
/// terms with repeated Clifford indices survive, each weighted by the rank.
double trace_Q_termwise(const CliffordRep& rep, const TransverseCurvatureTable& curvature);

/// 1/8 sum <Rhat(f_i, f_j) h_t, h_s> c(f_i) c(f_j) c^(h_s) c^(h_t).
CMatrix hat_curvature_term(const CliffordRep& rep, const HatCurvature& curvature);

/// Operator 2-norm via the eigenvalues of M^* M.
double spectral_norm(const CMatrix& m);

}  // namespace folicalc

#include "folicalc/geometry.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "folicalc/errors.hpp"

namespace folicalc {

namespace {

void check_point(const FramedPatch& patch, std::span<const double> point) {
  if (static_cast<int>(point.size()) != patch.dim) {
    throw DomainError("point has " + std::to_string(point.size()) + " coordinates, patch '" + patch.name +
                      "' has dimension " + std::to_string(patch.dim));
  }
  if (!patch.contains(point)) {
    std::ostringstream os;
    os << "point outside the coordinate box of patch '" << patch.name << "'";
    throw DomainError(os.str());
  }
}

Eigen::MatrixXd values(const RJetMatrix& m) {
  Eigen::MatrixXd v(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) v(r, c) = m(r, c).value();
  return v;
}

RJetMatrix evaluate_frame(const FramedPatch& patch, FramedPatch::Coords x) {
  RJetMatrix e = patch.frame(x);
  if (e.rows() != patch.dim || e.cols() != patch.dim)
    throw std::invalid_argument("frame field of patch '" + patch.name + "' has the wrong shape");
  const double det = values(e).determinant();
  if (std::abs(det) < 1e-12) throw DegeneracyError("frame is singular at this point", det);
  return e;
}

void check_spd(const RJetMatrix& block, const char* which) {
  if (block.rows() == 0) return;
  const Eigen::MatrixXd v = values(block);
  if ((v - v.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + v.cwiseAbs().maxCoeff()))
    throw DegeneracyError(std::string(which) + " metric block is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(v, Eigen::EigenvaluesOnly);
  const double lowest = es.eigenvalues()(0);
  if (!(lowest > 0.0)) {
    std::ostringstream os;
    os << which << " metric block is not positive definite (eigenvalue " << lowest << ")";
    throw DegeneracyError(os.str(), lowest);
  }
}

/// Block metric g^F + (1/eps) g^{F-perp} in the patch frame.
RJetMatrix block_metric(const FramedPatch& patch, FramedPatch::Coords x, double eps) {
  const int n = patch.dim;
  const int p = patch.leaf_dim;
  const int q = n - p;
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  RJetMatrix leaf = p > 0 ? patch.metric_leaf(x) : RJetMatrix(0, 0);
  RJetMatrix trans = q > 0 ? patch.metric_transverse(x) : RJetMatrix(0, 0);
  if (leaf.rows() != p || leaf.cols() != p || trans.rows() != q || trans.cols() != q)
    throw std::invalid_argument("metric blocks of patch '" + patch.name + "' have the wrong shape");
  check_spd(leaf, "leaf");
  check_spd(trans, "transverse");
  RJetMatrix g(n, n);
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b) g(a, b) = leaf(a, b);
  for (int s = 0; s < q; ++s)
    for (int t = 0; t < q; ++t) g(p + s, p + t) = trans(s, t) / eps;
  return g;
}

/// Gram-Schmidt in ascending index inside [begin, end); rows of the result are
/// the orthonormal vectors in patch-frame coefficients.
void gram_schmidt_block(const RJetMatrix& g, int begin, int end, RJetMatrix& lower) {
  const int n = g.rows();
  for (int k = begin; k < end; ++k) {
    std::vector<RJet> v(static_cast<std::size_t>(n));
    v[k] = RJet(1.0);
    for (int j = begin; j < k; ++j) {
      // <e_k, f_j> = sum_b g(k, b) L(j, b)
      RJet proj;
      for (int b = begin; b < end; ++b) proj += g(k, b) * lower(j, b);
      for (int b = begin; b < end; ++b) v[b] -= proj * lower(j, b);
    }
    RJet norm2;
    for (int a = begin; a < end; ++a)
      for (int b = begin; b < end; ++b) norm2 += v[a] * g(a, b) * v[b];
    if (!(norm2.value() > 0.0)) throw DegeneracyError("Gram-Schmidt hit a null vector", norm2.value());
    const RJet inv = reciprocal(sqrt(norm2));
    for (int b = begin; b < end; ++b) lower(k, b) = v[b] * inv;
  }
}

RJetMatrix adapted_lower(const FramedPatch& patch, FramedPatch::Coords x, double eps) {
  const RJetMatrix g = block_metric(patch, x, eps);
  RJetMatrix lower(patch.dim, patch.dim);
  gram_schmidt_block(g, 0, patch.leaf_dim, lower);
  gram_schmidt_block(g, patch.leaf_dim, patch.dim, lower);
  return lower;
}

/// Structure functions of a frame given by coordinate components (rows),
/// returned as c[(a*n + b)*n + d] with [X_a, X_b] = sum_d c_ab^d X_d.
std::vector<RJet> structure_functions(const RJetMatrix& frame) {
  const int n = frame.rows();
  const RJetMatrix inv = inverse(frame);
  std::vector<RJet> c(static_cast<std::size_t>(n * n * n));
  std::vector<RJet> bracket(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      for (int mu = 0; mu < n; ++mu) {
        RJet acc;
        for (int nu = 0; nu < n; ++nu) {
          acc += frame(a, nu) * frame(b, mu).partial(nu);
          acc -= frame(b, nu) * frame(a, mu).partial(nu);
        }
        bracket[mu] = acc;
      }
      for (int d = 0; d < n; ++d) {
        RJet acc;
        for (int mu = 0; mu < n; ++mu) acc += bracket[mu] * inv(mu, d);
        c[(a * n + b) * n + d] = acc;
        c[(b * n + a) * n + d] = -acc;
      }
    }
  return c;
}

}  // namespace

std::vector<double> lie_bracket(const FramedPatch& patch, int a, int b, std::span<const double> point) {
  check_point(patch, point);
  if (a < 0 || b < 0 || a >= patch.dim || b >= patch.dim) throw std::out_of_range("frame index out of range");
  const std::vector<RJet> x = coordinate_jets(point);
  const RJetMatrix e = evaluate_frame(patch, x);
  const std::vector<RJet> c = structure_functions(e);
  const int n = patch.dim;
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int d = 0; d < n; ++d) out[d] = c[(a * n + b) * n + d].value();
  return out;
}

AdaptedFrame orthonormalize_adapted(const FramedPatch& patch, double eps, std::span<const double> point) {
  check_point(patch, point);
  const std::vector<RJet> x = coordinate_jets(point);
  const RJetMatrix e = evaluate_frame(patch, x);
  const RJetMatrix lower = adapted_lower(patch, x, eps);
  const RJetMatrix f = lower * e;
  AdaptedFrame out;
  out.dim = patch.dim;
  out.leaf_dim = patch.leaf_dim;
  out.eps = eps;
  out.in_patch_frame = Dense<double>(patch.dim, patch.dim);
  out.coordinates = Dense<double>(patch.dim, patch.dim);
  for (int a = 0; a < patch.dim; ++a)
    for (int b = 0; b < patch.dim; ++b) {
      out.in_patch_frame(a, b) = lower(a, b).value();
      out.coordinates(a, b) = f(a, b).value();
    }
  return out;
}

CurvatureSnapshot curvature_snapshot(const FramedPatch& patch, double eps, std::span<const double> point) {
  check_point(patch, point);
  const int n = patch.dim;
  const std::vector<RJet> x = coordinate_jets(point);
  const RJetMatrix e = evaluate_frame(patch, x);
  const RJetMatrix lower = adapted_lower(patch, x, eps);

  CurvatureSnapshot s;
  s.n_ = n;
  s.p_ = patch.leaf_dim;
  s.eps_ = eps;
  s.point_.assign(point.begin(), point.end());
  s.frame_jets_ = lower * e;
  s.frame_.dim = n;
  s.frame_.leaf_dim = patch.leaf_dim;
  s.frame_.eps = eps;
  s.frame_.in_patch_frame = Dense<double>(n, n);
  s.frame_.coordinates = Dense<double>(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      s.frame_.in_patch_frame(a, b) = lower(a, b).value();
      s.frame_.coordinates(a, b) = s.frame_jets_(a, b).value();
    }

  s.c_ = structure_functions(s.frame_jets_);
  s.gamma_.resize(s.c_.size());
  // Koszul formula in an orthonormal frame.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int d = 0; d < n; ++d)
        s.gamma_[s.idx3(a, b, d)] =
            0.5 * (s.c_[s.idx3(a, b, d)] - s.c_[s.idx3(b, d, a)] + s.c_[s.idx3(d, a, b)]);

  // Frame derivatives of Gamma, tabulated once: dgamma[a][bce] = f_a(Gamma_bce).
  const int n3 = n * n * n;
  std::vector<double> dgamma(static_cast<std::size_t>(n * n3));
  for (int a = 0; a < n; ++a)
    for (int k = 0; k < n3; ++k) {
      double acc = 0.0;
      for (int mu = 0; mu < n; ++mu) acc += s.frame_.coordinates(a, mu) * s.gamma_[k].d(mu);
      dgamma[a * n3 + k] = acc;
    }

  s.riemann_.assign(static_cast<std::size_t>(n * n3), 0.0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          double r = dgamma[a * n3 + s.idx3(b, c, d)] - dgamma[b * n3 + s.idx3(a, c, d)];
          for (int m = 0; m < n; ++m) {
            r += s.gamma(b, c, m) * s.gamma(a, m, d) - s.gamma(a, c, m) * s.gamma(b, m, d);
            r -= s.structure(a, b, m) * s.gamma(m, c, d);
          }
          s.riemann_[s.idx4(a, b, c, d)] = r;
        }

  double k = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) k += s.riemann(a, b, b, a);
  s.scalar_ = k;
  return s;
}

double CurvatureSnapshot::ricci(int b, int c) const {
  // Ric(Y, Z) = -sum_a <R(f_a, Y) f_a, Z>
  double acc = 0.0;
  for (int a = 0; a < n_; ++a) acc -= riemann(a, b, a, c);
  return acc;
}

double CurvatureSnapshot::ricci_trace() const {
  double acc = 0.0;
  for (int b = 0; b < n_; ++b) acc += ricci(b, b);
  return acc;
}

RJet CurvatureSnapshot::along(int a, const RJet& field) const {
  RJet acc;
  for (int mu = 0; mu < n_; ++mu) acc += frame_jets_(a, mu) * field.partial(mu);
  return acc;
}

double CurvatureSnapshot::transverse_curvature(int a, int b, int t, int s) const {
  const int T = p_ + t;
  const int S = p_ + s;
  double r = along(a, gamma_jet(b, T, S)).value() - along(b, gamma_jet(a, T, S)).value();
  for (int u = p_; u < n_; ++u) r += gamma(b, T, u) * gamma(a, u, S) - gamma(a, T, u) * gamma(b, u, S);
  for (int d = 0; d < n_; ++d) r -= structure(a, b, d) * gamma(d, T, S);
  return r;
}

ConnectionCoefficients connection_coefficients(const FramedPatch& patch, double eps, std::span<const double> point) {
  const CurvatureSnapshot s = curvature_snapshot(patch, eps, point);
  const int n = s.dim();
  ConnectionCoefficients out;
  out.dim = n;
  out.gamma.resize(static_cast<std::size_t>(n * n * n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        out.gamma[s.idx3(a, b, c)] = s.gamma(a, b, c);
        out.metric_residual = std::max(out.metric_residual, std::abs(s.gamma(a, b, c) + s.gamma(a, c, b)));
        out.torsion_residual = std::max(out.torsion_residual,
                                        std::abs(s.gamma(a, b, c) - s.gamma(b, a, c) - s.structure(a, b, c)));
      }
  return out;
}

BlockSums sectional_block_sums(const CurvatureSnapshot& snapshot) {
  const int n = snapshot.dim();
  const int p = snapshot.leaf_dim();
  BlockSums out;
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) out.ff += snapshot.riemann(i, j, i, j);
  for (int i = 0; i < p; ++i)
    for (int s = p; s < n; ++s) out.fh += snapshot.riemann(i, s, i, s);
  for (int s = p; s < n; ++s)
    for (int t = p; t < n; ++t) out.hh += snapshot.riemann(s, t, s, t);
  return out;
}

double volume_density(const FramedPatch& patch, double eps, std::span<const double> point) {
  check_point(patch, point);
  const std::vector<RJet> x = coordinate_jets(point);
  const Eigen::MatrixXd e = values(evaluate_frame(patch, x));
  const Eigen::MatrixXd g = values(block_metric(patch, x, eps));
  // Coordinate metric is E^{-1} G E^{-T}; its determinant is det G / det(E)^2.
  return std::sqrt(g.determinant()) / std::abs(e.determinant());
}

}  // namespace folicalc

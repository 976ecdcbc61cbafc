#include "folicalc/foliation.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "folicalc/clifford.hpp"
#include "folicalc/errors.hpp"

namespace folicalc {

namespace {

CurvatureSnapshot base_snapshot(const FramedPatch& patch, std::span<const double> point) {
  return curvature_snapshot(patch, 1.0, point);
}

void require_integrable(const CurvatureSnapshot& s, const char* what) {
  double total = 0.0;
  const int p = s.leaf_dim();
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j)
      for (int t = p; t < s.dim(); ++t) total += s.structure(i, j, t) * s.structure(i, j, t);
  if (total >= kIntegrabilityTolerance)
    throw PreconditionError(std::string(what) + " requires an integrable distribution (defect " +
                            std::to_string(total) + "); use the B invariant instead");
}

/// Frame components of a coordinate vector in the adapted orthonormal frame.
Eigen::VectorXd frame_components(const CurvatureSnapshot& s, std::span<const double> vector) {
  const int n = s.dim();
  if (static_cast<int>(vector.size()) != n) throw std::invalid_argument("vector has the wrong dimension");
  Eigen::MatrixXd f(n, n);
  for (int a = 0; a < n; ++a)
    for (int mu = 0; mu < n; ++mu) f(a, mu) = s.frame().coordinates(a, mu);
  const Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(vector.data(), n);
  return f.transpose().partialPivLu().solve(v);
}

// omega_ist = -(c_is^t + c_it^s) as a first-order jet (i leaf, s and t transverse slot indices).
RJet omega_jet(const CurvatureSnapshot& s, int i, int a, int b) {
  const int p = s.leaf_dim();
  return -(s.structure_jet(i, p + a, p + b) + s.structure_jet(i, p + b, p + a));
}

OmegaTensor omega_from_snapshot(const CurvatureSnapshot& s) {
  OmegaTensor w;
  w.point = s.point();
  w.leaf_dim = s.leaf_dim();
  w.codim = s.codim();
  w.values.resize(static_cast<std::size_t>(w.leaf_dim * w.codim * w.codim));
  for (int i = 0; i < w.leaf_dim; ++i)
    for (int a = 0; a < w.codim; ++a)
      for (int b = 0; b < w.codim; ++b) w.values[(i * w.codim + a) * w.codim + b] = omega_jet(s, i, a, b).value();
  return w;
}

HatCurvature empty_hat(int p, int q) {
  HatCurvature h;
  h.leaf_dim = p;
  h.codim = q;
  h.values.assign(static_cast<std::size_t>(p * p * q * q), 0.0);
  return h;
}

}  // namespace

double OmegaTensor::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

SplitVector projections(const FramedPatch& patch, std::span<const double> point, std::span<const double> vector) {
  const CurvatureSnapshot s = base_snapshot(patch, point);
  const Eigen::VectorXd alpha = frame_components(s, vector);
  const int n = s.dim();
  SplitVector out{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  for (int a = 0; a < n; ++a) {
    std::vector<double>& target = a < s.leaf_dim() ? out.leaf : out.transverse;
    for (int mu = 0; mu < n; ++mu) target[mu] += alpha(a) * s.frame().coordinates(a, mu);
  }
  return out;
}

IntegrabilityDefect integrability_defect(const FramedPatch& patch, std::span<const double> point) {
  const CurvatureSnapshot s = base_snapshot(patch, point);
  const int p = s.leaf_dim();
  IntegrabilityDefect d;
  d.entries = Dense<double>(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) {
      double acc = 0.0;
      for (int t = p; t < s.dim(); ++t) acc += s.structure(i, j, t) * s.structure(i, j, t);
      d.entries(i, j) = acc;
      d.total += acc;
    }
  return d;
}

bool is_integrable(const FramedPatch& patch, std::span<const double> point) {
  return integrability_defect(patch, point).total < kIntegrabilityTolerance;
}

BottTriple bott_and_dual(const FramedPatch& patch, std::span<const double> point, std::span<const double> leaf_vector,
                         std::span<const double> transverse_vector) {
  const CurvatureSnapshot s = base_snapshot(patch, point);
  const int n = s.dim();
  const int p = s.leaf_dim();
  const int q = n - p;
  const Eigen::VectorXd x = frame_components(s, leaf_vector);
  const Eigen::VectorXd u = frame_components(s, transverse_vector);
  const double tol = 1e-10;
  if (x.tail(q).norm() > tol * (1.0 + x.norm())) throw PreconditionError("leaf argument is not tangent to F");
  if (u.head(p).norm() > tol * (1.0 + u.norm())) throw PreconditionError("transverse argument is not in F-perp");

  BottTriple out{std::vector<double>(q, 0.0), std::vector<double>(q, 0.0), std::vector<double>(q, 0.0)};
  for (int t = 0; t < q; ++t) {
    for (int i = 0; i < p; ++i)
      for (int r = 0; r < q; ++r) {
        out.bott[t] += x(i) * u(p + r) * s.structure(i, p + r, p + t);
        out.dual[t] -= x(i) * u(p + r) * s.structure(i, p + t, p + r);
      }
    out.hat[t] = 0.5 * (out.bott[t] + out.dual[t]);
  }
  return out;
}

OmegaTensor omega_tensor(const FramedPatch& patch, std::span<const double> point) {
  return omega_from_snapshot(base_snapshot(patch, point));
}

OmegaTensor omega_tensor_from_patch_frame(const FramedPatch& patch, std::span<const double> point) {
  const int n = patch.dim;
  const int p = patch.leaf_dim;
  const int q = n - p;
  const std::vector<RJet> x = coordinate_jets(point);
  const RJetMatrix e = patch.frame(x);
  const RJetMatrix gt = patch.metric_transverse(x);

  // raw[(j*q + a)*q + b] = omega(e_j)(e_{p+a}, e_{p+b})
  std::vector<double> raw(static_cast<std::size_t>(p * q * q), 0.0);
  for (int j = 0; j < p; ++j) {
    std::vector<std::vector<double>> bracket(q);
    for (int a = 0; a < q; ++a) bracket[a] = lie_bracket(patch, j, p + a, point);
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) {
        double v = 0.0;
        for (int mu = 0; mu < n; ++mu) v += e(j, mu).value() * gt(a, b).d(mu);
        for (int r = 0; r < q; ++r) {
          v -= bracket[a][p + r] * gt(r, b).value();
          v -= bracket[b][p + r] * gt(a, r).value();
        }
        raw[(j * q + a) * q + b] = v;
      }
  }

  const AdaptedFrame frame = orthonormalize_adapted(patch, 1.0, point);
  OmegaTensor w;
  w.point.assign(point.begin(), point.end());
  w.leaf_dim = p;
  w.codim = q;
  w.values.assign(static_cast<std::size_t>(p * q * q), 0.0);
  for (int i = 0; i < p; ++i)
    for (int s = 0; s < q; ++s)
      for (int t = 0; t < q; ++t) {
        double acc = 0.0;
        for (int j = 0; j < p; ++j)
          for (int a = 0; a < q; ++a)
            for (int b = 0; b < q; ++b)
              acc += frame.in_patch_frame(i, j) * frame.in_patch_frame(p + s, p + a) *
                     frame.in_patch_frame(p + t, p + b) * raw[(j * q + a) * q + b];
        w.values[(i * q + s) * q + t] = acc;
      }
  return w;
}

std::string to_string(PhiVariant v) { return v == PhiVariant::literal ? "literal" : "consistent"; }

PhiVariant parse_phi_variant(const std::string& name) {
  if (name == "literal") return PhiVariant::literal;
  if (name == "consistent") return PhiVariant::consistent;
  throw std::invalid_argument("unknown formula variant '" + name + "' (expected literal or consistent)");
}

double phi_omega(const FramedPatch& patch, std::span<const double> point, PhiVariant variant) {
  const CurvatureSnapshot s = base_snapshot(patch, point);
  require_integrable(s, "phi_omega");
  const int p = s.leaf_dim();
  const int q = s.codim();
  const OmegaTensor w = omega_from_snapshot(s);
  auto G = [&](int a, int b, int c) { return s.gamma(a, b, c); };
  auto C = [&](int a, int b, int c) { return s.structure(a, b, c); };

  // Purely transverse group.
  double transverse = 0.0;
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      for (int i = 0; i < p; ++i) {
        transverse -= 0.25 * (G(p + a, p + b, i) + G(p + b, p + a, i)) * w(i, a, b);
        transverse += 0.5 * G(p + b, p + b, i) * w(i, a, a);
      }

  // Mixed group: one leaf direction and one transverse direction per term.
  const bool literal = variant == PhiVariant::literal;
  const int leaf_range = literal ? std::min(p, q) : p;
  double mixed = 0.0;
  for (int i = 0; i < leaf_range; ++i)
    for (int a = 0; a < q; ++a) {
      for (int j = 0; j < p; ++j) mixed += 0.5 * G(i, i, j) * w(j, a, a);
      if (!literal)
        for (int b = 0; b < q; ++b) mixed += 0.5 * C(i, p + a, p + b) * w(i, a, b);
      // -<[f_i, A], h_s> with A = 1/2 sum_t omega_ist h_t
      double bracket = s.along(i, omega_jet(s, i, a, a)).value();
      for (int b = 0; b < q; ++b) bracket += w(i, a, b) * C(i, p + b, p + a);
      mixed -= 0.5 * bracket;
      for (int b = 0; b < q; ++b) mixed -= 0.25 * w(i, a, b) * w(i, a, b);
    }
  return transverse + (literal ? 1.0 : 2.0) * mixed;
}

double leaf_scalar_curvature(const FramedPatch& patch, std::span<const double> point) {
  const CurvatureSnapshot s = base_snapshot(patch, point);
  require_integrable(s, "leaf_scalar_curvature");
  const int p = s.leaf_dim();
  double k = 0.0;
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) {
      if (i == j) continue;
      // <R^F(f_i, f_j) f_j, f_i> with the leafwise connection
      double r = s.along(i, s.gamma_jet(j, j, i)).value() - s.along(j, s.gamma_jet(i, j, i)).value();
      for (int m = 0; m < p; ++m) {
        r += s.gamma(j, j, m) * s.gamma(i, m, i) - s.gamma(i, j, m) * s.gamma(j, m, i);
        r -= s.structure(i, j, m) * s.gamma(m, j, i);
      }
      k += r;
    }
  return k;
}

BInvariant b_invariant(const FramedPatch& patch, std::span<const double> point) {
  const CurvatureSnapshot s = base_snapshot(patch, point);
  const int n = s.dim();
  const int p = s.leaf_dim();
  BInvariant b;
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j)
      for (int t = p; t < n; ++t) {
        b.defect_total += s.structure(i, j, t) * s.structure(i, j, t);
        b.leaf_of_transverse += s.gamma(i, t, j) * s.gamma(i, t, j);
        b.transverse_of_leaf += s.gamma(j, i, t) * s.gamma(j, i, t);
      }
  b.four_b = -0.75 * b.defect_total - 0.5 * b.leaf_of_transverse + 0.5 * b.transverse_of_leaf;
  return b;
}

HatCurvature hat_curvature(const FramedPatch& patch, std::span<const double> point) {
  const CurvatureSnapshot s = base_snapshot(patch, point);
  require_integrable(s, "hat_curvature");
  const int p = s.leaf_dim();
  const int q = s.codim();
  // conn(i, t, u) = <nabla-hat_{f_i} h_t, h_u> = 1/2 (c_it^u - c_iu^t)
  auto conn = [&](int i, int t, int u) {
    return 0.5 * (s.structure_jet(i, p + t, p + u) - s.structure_jet(i, p + u, p + t));
  };
  HatCurvature h = empty_hat(p, q);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j)
      for (int t = 0; t < q; ++t)
        for (int r = 0; r < q; ++r) {
          double v = s.along(i, conn(j, t, r)).value() - s.along(j, conn(i, t, r)).value();
          for (int u = 0; u < q; ++u)
            v += conn(j, t, u).value() * conn(i, u, r).value() - conn(i, t, u).value() * conn(j, u, r).value();
          for (int k = 0; k < p; ++k) v -= s.structure(i, j, k) * conn(k, t, r).value();
          h.values[((i * p + j) * q + t) * q + r] = v;
        }
  return h;
}

HatCurvature hat_curvature_from_omega(const FramedPatch& patch, std::span<const double> point) {
  const CurvatureSnapshot s = base_snapshot(patch, point);
  require_integrable(s, "hat_curvature_from_omega");
  const int p = s.leaf_dim();
  const int q = s.codim();
  const OmegaTensor w = omega_from_snapshot(s);
  auto C = [&](int a, int b, int c) { return s.structure(a, b, c); };
  auto bott = [&](int i, int t, int u) { return C(i, p + t, p + u); };
  // <(nabla-dot_i W_j) h_t, h_r>
  auto d_omega = [&](int i, int j, int t, int r) {
    double v = s.along(i, omega_jet(s, j, t, r)).value();
    for (int u = 0; u < q; ++u) v += w(j, t, u) * bott(i, u, r) - bott(i, t, u) * w(j, u, r);
    return v;
  };

  HatCurvature h = empty_hat(p, q);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j)
      for (int t = 0; t < q; ++t)
        for (int r = 0; r < q; ++r) {
          double flat = s.along(i, s.structure_jet(j, p + t, p + r)).value() -
                        s.along(j, s.structure_jet(i, p + t, p + r)).value();
          for (int u = 0; u < q; ++u) flat += bott(j, t, u) * bott(i, u, r) - bott(i, t, u) * bott(j, u, r);
          for (int k = 0; k < p; ++k) flat -= C(i, j, k) * bott(k, t, r);

          double twist = d_omega(i, j, t, r) - d_omega(j, i, t, r);
          for (int k = 0; k < p; ++k) twist -= C(i, j, k) * w(k, t, r);

          double commutator = 0.0;
          for (int u = 0; u < q; ++u) commutator += w(j, t, u) * w(i, u, r) - w(i, t, u) * w(j, u, r);

          h.values[((i * p + j) * q + t) * q + r] = flat + 0.5 * twist + 0.25 * commutator;
        }
  return h;
}

double hat_curvature_limit(const FramedPatch& patch, std::span<const double> point, int i, int j, int s, int t) {
  const HatCurvature h = hat_curvature(patch, point);
  if (i < 0 || j < 0 || i >= h.leaf_dim || j >= h.leaf_dim || s < 0 || t < 0 || s >= h.codim || t >= h.codim)
    throw std::out_of_range("hat curvature index out of range");
  return h(i, j, t, s);
}

CertificateReport certificate_A(const FramedPatch& patch, std::span<const double> point, PhiVariant variant) {
  CertificateReport r;
  r.point.assign(point.begin(), point.end());
  r.leaf_curvature = leaf_scalar_curvature(patch, point);
  r.phi = phi_omega(patch, point, variant);
  const CliffordRep rep = build_rep(patch.leaf_dim, patch.codim());
  r.curvature_term_norm = spectral_norm(hat_curvature_term(rep, hat_curvature(patch, point)));
  r.a_value = 0.25 * (r.leaf_curvature + r.phi) - r.curvature_term_norm;
  r.b_value = b_invariant(patch, point).value();
  return r;
}

}  // namespace folicalc

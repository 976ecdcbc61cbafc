#include "folicalc/complex_foliation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "folicalc/errors.hpp"
#include "folicalc/forms.hpp"

namespace folicalc {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

CJetMatrix adjoint(const CJetMatrix& m) {
  CJetMatrix out(m.cols(), m.rows());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out(c, r) = conj(m(r, c));
  return out;
}

Eigen::MatrixXcd values(const CJetMatrix& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out(r, c) = m(r, c).value();
  return out;
}

void require_shape(const CJetMatrix& m, int rows, int cols, const std::string& what) {
  if (m.rows() != rows || m.cols() != cols)
    throw std::invalid_argument(what + " has shape " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                                ", expected " + std::to_string(rows) + "x" + std::to_string(cols));
}

/// Hermitian symmetry and positivity of a value matrix.
void check_hermitian_positive(const Eigen::MatrixXcd& h, const std::string& what) {
  const double asym = (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * std::max(1.0, h.cwiseAbs().maxCoeff()))
    throw DegeneracyError(what + " is not Hermitian", asym);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  const double lowest = es.eigenvalues().minCoeff();
  if (!(lowest > 1e-12)) throw DegeneracyError(what + " is not positive definite", lowest);
}

CJetMatrix checked_inverse(const CJetMatrix& m, const std::string& what) {
  try {
    return inverse(m);
  } catch (const std::domain_error&) {
    throw DegeneracyError(what + " is singular", std::abs(values(m).determinant()));
  }
}

struct Blocks {
  CJetMatrix leaf;
  CJetMatrix mixing;
  CJetMatrix factor;
};

Blocks blocks(const ComplexPatch& patch, ComplexPatch::Coords x) {
  const int p = patch.leaf_dim;
  const int q = patch.codim();
  Blocks b{patch.leaf_metric(x), patch.mixing(x), patch.transverse_factor(x)};
  require_shape(b.leaf, p, p, "leaf metric");
  require_shape(b.mixing, q, p, "mixing block");
  require_shape(b.factor, q, q, "transverse factor");
  check_hermitian_positive(values(b.leaf), "leaf metric block");
  const double det = std::abs(values(b.factor).determinant());
  if (q > 0 && det < 1e-12) throw DegeneracyError("transverse factor is singular", det);
  return b;
}

/// Connection 1-forms and curvature 2-forms of dH H^{-1}, entry (a, b) at a*n+b.
struct ConnectionForms {
  int rank = 0;
  int n = 0;
  std::vector<Form> connection;
  std::vector<Form> curvature;

  Form trace_connection() const {
    Form t(n, 1);
    for (int a = 0; a < rank; ++a) t = t + connection[a * rank + a];
    return t;
  }
  Form trace_curvature() const {
    Form t(n, 2);
    for (int a = 0; a < rank; ++a) t = t + curvature[a * rank + a];
    return t;
  }
};

ConnectionForms connection_forms(const CJetMatrix& h, int n) {
  const int r = h.rows();
  const CJetMatrix hinv = checked_inverse(h, "Hermitian metric");
  std::vector<CJetMatrix> coeff;  // coefficient of dz_k, one matrix per k
  for (int k = 0; k < n; ++k) {
    CJetMatrix dh(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) dh(i, j) = d_holomorphic(h(i, j), k);
    coeff.push_back(dh * hinv);
  }
  ConnectionForms out;
  out.rank = r;
  out.n = n;
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) {
      Form w(n, 1);
      for (int k = 0; k < n; ++k) w.add({k}, coeff[k](a, b));
      out.connection.push_back(w);
    }
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) {
      const Form& w = out.connection[a * r + b];
      Form omega = del(w) + delbar(w);
      Form wedge(n, 2);
      for (int c = 0; c < r; ++c)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) wedge.add({k, l}, coeff[k](a, c) * coeff[l](c, b));
      out.curvature.push_back(omega - wedge);
    }
  return out;
}

Eigen::MatrixXcd two_form_matrix(const Form& f) {
  const int m = 2 * f.complex_dim();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(m, m);
  for (const auto& [idx, c] : f.terms()) {
    out(idx[0], idx[1]) += c.value();
    out(idx[1], idx[0]) -= c.value();
  }
  return out;
}

ConnectionMatrix to_matrix(const ConnectionForms& forms) {
  const int r = forms.rank;
  const int n = forms.n;
  ConnectionMatrix out;
  out.rank = r;
  out.complex_dim = n;
  out.connection.assign(static_cast<std::size_t>(r * r * n), cd(0.0));
  out.curvature.assign(static_cast<std::size_t>(r * r * 4 * n * n), cd(0.0));
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) {
      for (const auto& [idx, c] : forms.connection[a * r + b].terms())
        out.connection[(a * r + b) * n + idx[0]] += c.value();
      const Eigen::MatrixXcd m = two_form_matrix(forms.curvature[a * r + b]);
      for (int u = 0; u < 2 * n; ++u)
        for (int v = 0; v < 2 * n; ++v) out.curvature[((a * r + b) * 2 * n + u) * 2 * n + v] = m(u, v);
    }
  return out;
}

double spread(const std::vector<Eigen::MatrixXcd>& tables) {
  double worst = 0.0;
  for (std::size_t i = 0; i < tables.size(); ++i)
    for (std::size_t j = i + 1; j < tables.size(); ++j)
      worst = std::max(worst, (tables[i] - tables[j]).cwiseAbs().maxCoeff());
  return worst;
}

double loglog_slope(const std::vector<double>& eps, const std::vector<double>& dev) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(dev[i] > 1e-300)) continue;
    const double x = std::log(eps[i]);
    const double y = std::log(dev[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m < 2) return std::numeric_limits<double>::infinity();
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace

Eigen::MatrixXcd ConnectionMatrix::trace_curvature() const {
  const int m = 2 * complex_dim;
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(m, m);
  for (int a = 0; a < rank; ++a)
    for (int u = 0; u < m; ++u)
      for (int v = 0; v < m; ++v) t(u, v) += Omega(a, a, u, v);
  return t;
}

Eigen::VectorXcd ConnectionMatrix::trace_connection() const {
  Eigen::VectorXcd t = Eigen::VectorXcd::Zero(complex_dim);
  for (int a = 0; a < rank; ++a)
    for (int k = 0; k < complex_dim; ++k) t(k) += omega(a, a, k);
  return t;
}

CJetMatrix hermitian_metric(const ComplexPatch& patch, ComplexPatch::Coords x, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  const int n = patch.complex_dim;
  const int p = patch.leaf_dim;
  if (static_cast<int>(x.size()) != 2 * n) throw std::invalid_argument("coordinate count does not match 2n");
  const Blocks b = blocks(patch, x);

  CJetMatrix frame = CJetMatrix::identity(n);
  CJetMatrix diag(n, n);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) diag(i, j) = b.leaf(i, j);
  for (int s = p; s < n; ++s) {
    diag(s, s) = CJet(cd(1.0 / eps));
    for (int j = 0; j < p; ++j) frame(s, j) = b.mixing(s - p, j);
    for (int t = p; t < n; ++t) frame(s, t) = b.factor(s - p, t - p);
  }
  CJetMatrix h = frame * diag * adjoint(frame);
  check_hermitian_positive(values(h), "Hermitian metric at eps=" + std::to_string(eps));
  return h;
}

ConnectionMatrix hermitian_connection(const CJetMatrix& h, int complex_dim) {
  check_hermitian_positive(values(h), "Hermitian matrix");
  return to_matrix(connection_forms(h, complex_dim));
}

ConnectionMatrix connection_and_curvature(const ComplexPatch& patch, std::span<const double> point, double eps) {
  const auto x = coordinate_jets(point);
  return hermitian_connection(hermitian_metric(patch, x, eps), patch.complex_dim);
}

TraceSplit trace_curvature_split(const ComplexPatch& patch, std::span<const double> point,
                                 const std::vector<double>& eps_grid) {
  if (eps_grid.empty()) throw std::invalid_argument("empty eps grid");
  const int n = patch.complex_dim;
  const auto x = coordinate_jets(point);
  const Blocks b = blocks(patch, x);

  TraceSplit out;
  out.leaf = two_form_matrix(connection_forms(b.leaf, n).trace_curvature());
  const CJetMatrix transverse_metric = b.factor * adjoint(b.factor);
  out.transverse = patch.codim() > 0 ? two_form_matrix(connection_forms(transverse_metric, n).trace_curvature())
                                     : Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  out.eps = eps_grid;
  for (double eps : eps_grid) {
    const ConnectionForms forms = connection_forms(hermitian_metric(patch, x, eps), n);
    const Eigen::MatrixXcd total = two_form_matrix(forms.trace_curvature());
    const Eigen::MatrixXcd bianchi = two_form_matrix(delbar(forms.trace_connection()));
    out.total.push_back(total);
    out.split_error = std::max(out.split_error, (total - out.leaf - out.transverse).cwiseAbs().maxCoeff());
    out.bianchi_error = std::max(out.bianchi_error, (bianchi - total).cwiseAbs().maxCoeff());
  }
  out.eps_variation = spread(out.total);
  return out;
}

BlockLimit block_limit(const ComplexPatch& patch, std::span<const double> point, const std::vector<double>& eps_grid) {
  const int p = patch.leaf_dim;
  const int q = patch.codim();
  const auto x = coordinate_jets(point);
  const Blocks b = blocks(patch, x);
  const Eigen::MatrixXcd leaf_inv = values(b.leaf).inverse();
  const Eigen::MatrixXcd factor = values(b.factor);
  const Eigen::MatrixXcd transverse_inv = (factor * factor.adjoint()).inverse();

  BlockLimit out;
  out.eps = eps_grid;
  std::vector<double> transverse_norm;
  for (double eps : eps_grid) {
    const Eigen::MatrixXcd inv = values(hermitian_metric(patch, x, eps)).inverse();
    out.leaf_deviation.push_back((inv.topLeftCorner(p, p) - leaf_inv).norm());
    out.off_diagonal.push_back(std::max(inv.topRightCorner(p, q).norm(), inv.bottomLeftCorner(q, p).norm()));
    out.transverse_deviation.push_back((inv.bottomRightCorner(q, q) / eps - transverse_inv).norm());
    transverse_norm.push_back(inv.bottomRightCorner(q, q).norm());
  }
  out.leaf_exponent = loglog_slope(eps_grid, out.leaf_deviation);
  out.off_diagonal_exponent = loglog_slope(eps_grid, out.off_diagonal);
  out.transverse_exponent = loglog_slope(eps_grid, transverse_norm);
  return out;
}

KahlerReport kahler_form_components(const ComplexPatch& patch, std::span<const double> point, double tolerance) {
  const int n = patch.complex_dim;
  const int m = 2 * n;
  const int f = 2 * patch.leaf_dim;
  const auto x = coordinate_jets(point);
  const CJetMatrix h = hermitian_metric(patch, x, 1.0);

  RJetMatrix g(m, m);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const RJet re = real_part(h(a, b));
      const RJet im = imag_part(h(a, b));
      g(2 * a, 2 * b) = re;
      g(2 * a, 2 * b + 1) = im;
      g(2 * a + 1, 2 * b) = -im;
      g(2 * a + 1, 2 * b + 1) = re;
    }

  // Orthogonal projection onto the complement of the leaf coordinate directions.
  RJetMatrix leaf_block(f, f);
  for (int i = 0; i < f; ++i)
    for (int j = 0; j < f; ++j) leaf_block(i, j) = g(i, j);
  RJetMatrix proj = RJetMatrix::identity(m);
  if (f > 0) {
    RJetMatrix leaf_inv;
    try {
      leaf_inv = inverse(leaf_block);
    } catch (const std::domain_error&) {
      throw DegeneracyError("leaf block of the real metric is singular");
    }
    for (int i = 0; i < f; ++i)
      for (int j = 0; j < m; ++j) {
        RJet acc;
        for (int k = 0; k < f; ++k) acc += leaf_inv(i, k) * g(k, j);
        proj(i, j) -= acc;
      }
  }
  RJetMatrix complex_structure(m, m);
  for (int k = 0; k < n; ++k) {
    complex_structure(2 * k + 1, 2 * k) = RJet(1.0);
    complex_structure(2 * k, 2 * k + 1) = RJet(-1.0);
  }
  const RJetMatrix rotated = complex_structure * proj;
  const RJetMatrix comps = rotated.transpose() * g * proj;

  KahlerReport out;
  out.components.resize(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      out.components(i, j) = comps(i, j).value();
      if (i < f || j < f) out.leaf_component_max = std::max(out.leaf_component_max, std::abs(comps(i, j).value()));
    }
  if (out.leaf_component_max > tolerance)
    throw StructuralError(patch.name + ": transverse Kaehler form has a leaf component of size " +
                          std::to_string(out.leaf_component_max));

  std::vector<std::vector<double>> leaf_vectors;
  for (int i = 0; i < f; ++i) {
    std::vector<double> v(m, 0.0);
    v[i] = 1.0;
    leaf_vectors.push_back(v);
  }
  std::vector<std::vector<double>> normal_vectors;
  for (int j = f; j < m; ++j) {
    std::vector<double> v(m);
    for (int i = 0; i < m; ++i) v[i] = proj(i, j).value();
    normal_vectors.push_back(v);
  }
  for (const auto& u : leaf_vectors)
    for (const auto& v : normal_vectors) {
      double acc = 0.0;
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) acc += u[i] * g(i, j).value() * v[j];
      out.leaf_cross_max = std::max(out.leaf_cross_max, std::abs(acc));
    }

  const Form kahler = from_real_two_form(comps, n);
  const Form twisted = del(kahler) - delbar(kahler);
  const Form second = delbar(del(kahler));
  auto probe = [](const Form& form, std::vector<std::vector<double>> vs) {
    return std::abs(form.evaluate(vs));
  };
  for (int i = 0; i < f; ++i)
    for (int j = i + 1; j < f; ++j) {
      for (int k = j + 1; k < f; ++k) {
        out.twisted_derivative_max = std::max(
            out.twisted_derivative_max, probe(twisted, {leaf_vectors[i], leaf_vectors[j], leaf_vectors[k]}));
        for (int l = k + 1; l < f; ++l)
          out.double_derivative_max =
              std::max(out.double_derivative_max,
                       probe(second, {leaf_vectors[i], leaf_vectors[j], leaf_vectors[k], leaf_vectors[l]}));
        for (const auto& hv : normal_vectors)
          out.double_derivative_max = std::max(
              out.double_derivative_max, probe(second, {leaf_vectors[i], leaf_vectors[j], leaf_vectors[k], hv}));
      }
      for (const auto& hv : normal_vectors)
        out.twisted_derivative_max =
            std::max(out.twisted_derivative_max, probe(twisted, {leaf_vectors[i], leaf_vectors[j], hv}));
    }
  return out;
}

std::vector<Point> sample_points(const ComplexPatch& patch, int count, unsigned seed, double margin) {
  return sample_box(patch.box, count, seed, margin);
}

namespace complex_manifolds {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

CJet re(const RJet& v) { return CJet(v); }
CJet unit_phase(const RJet& angle) { return CJet(cos(angle)) + kI * CJet(sin(angle)); }

std::vector<Interval> periodic_box(int n) { return std::vector<Interval>(static_cast<std::size_t>(2 * n), {0.0, kTwoPi}); }

}  // namespace

ComplexPatch complex_torus() {
  ComplexPatch patch;
  patch.name = "complex-torus";
  patch.complex_dim = 2;
  patch.leaf_dim = 1;
  patch.box = periodic_box(2);
  patch.leaf_metric = [](ComplexPatch::Coords) { return CJetMatrix(1, 1, CJet(cd(2.0))); };
  patch.mixing = [](ComplexPatch::Coords) { return CJetMatrix(1, 1, CJet(cd(0.5, 0.25))); };
  patch.transverse_factor = [](ComplexPatch::Coords) { return CJetMatrix(1, 1, CJet(cd(1.5))); };
  return patch;
}

ComplexPatch sheared_complex_torus() {
  // Real coordinates x = (x1, y1, x2, y2, x3, y3).
  ComplexPatch patch;
  patch.name = "sheared-complex-torus";
  patch.complex_dim = 3;
  patch.leaf_dim = 2;
  patch.box = periodic_box(3);
  patch.leaf_metric = [](ComplexPatch::Coords x) {
    CJetMatrix h(2, 2);
    h(0, 0) = re(exp(0.3 * sin(x[0]) + 0.2 * cos(x[5])));
    h(1, 1) = re(1.5 + 0.4 * cos(x[2] - x[1]));
    h(0, 1) = 0.3 * (re(cos(x[4])) + kI * re(sin(x[3])));
    h(1, 0) = conj(h(0, 1));
    return h;
  };
  patch.mixing = [](ComplexPatch::Coords x) {
    CJetMatrix a(1, 2);
    a(0, 0) = 0.5 * re(sin(x[1])) + 0.2 * kI * re(cos(x[4]));
    a(0, 1) = 0.3 * re(cos(x[0])) - 0.25 * kI * re(sin(x[2] + x[5]));
    return a;
  };
  patch.transverse_factor = [](ComplexPatch::Coords x) {
    return CJetMatrix(1, 1, re(1.2 + 0.3 * sin(x[4] + x[3])) * unit_phase(0.4 * cos(x[1])));
  };
  return patch;
}

}  // namespace complex_manifolds

}  // namespace folicalc

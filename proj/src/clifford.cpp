#include "folicalc/clifford.hpp"

#include <cmath>
#include <complex>

#include "folicalc/errors.hpp"
#include "folicalc/foliation.hpp"

namespace folicalc {

namespace {

using cd = std::complex<double>;

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Hermitian Jordan-Wigner generators gamma_0..gamma_{2m-1}, all squaring to +Id.
std::vector<CMatrix> jordan_wigner(int qubits) {
  CMatrix id = CMatrix::Identity(2, 2);
  CMatrix x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, cd(0, -1), cd(0, 1), 0;
  z << 1, 0, 0, -1;
  std::vector<CMatrix> gammas;
  for (int k = 0; k < qubits; ++k)
    for (const CMatrix* middle : {&x, &y}) {
      CMatrix g = CMatrix::Identity(1, 1);
      for (int l = 0; l < qubits; ++l) g = kron(g, l < k ? z : (l == k ? *middle : id));
      gammas.push_back(g);
    }
  return gammas;
}

double max_entry(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

CliffordRep build_rep(int p, int q) {
  if (p < 0 || q < 0) throw std::invalid_argument("negative Clifford dimensions");
  if (p % 2 != 0) throw UnsupportedError("odd leaf dimension has no spinor factor in this model");
  if (p + q > 12) throw UnsupportedError("Clifford representation limited to p + q <= 12");
  const int qubits = p / 2 + q;
  const std::vector<CMatrix> g = jordan_wigner(qubits);
  CliffordRep rep;
  rep.leaf_dim = p;
  rep.codim = q;
  rep.rank = 1 << qubits;
  const cd i(0, 1);
  for (int k = 0; k < p; ++k) rep.leaf.push_back(i * g[k]);
  for (int s = 0; s < q; ++s) {
    rep.transverse.push_back(i * g[p + 2 * s]);
    rep.transverse_hat.push_back(g[p + 2 * s + 1]);
  }
  if (qubits == 0) rep.rank = 1;
  return rep;
}

double anticommutation_defect(const CliffordRep& rep) {
  std::vector<std::pair<const CMatrix*, double>> gens;
  for (const CMatrix& m : rep.leaf) gens.push_back({&m, -1.0});
  for (const CMatrix& m : rep.transverse) gens.push_back({&m, -1.0});
  for (const CMatrix& m : rep.transverse_hat) gens.push_back({&m, 1.0});
  const CMatrix id = CMatrix::Identity(rep.rank, rep.rank);
  double worst = 0.0;
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t b = 0; b < gens.size(); ++b) {
      const CMatrix ac = (*gens[a].first) * (*gens[b].first) + (*gens[b].first) * (*gens[a].first);
      const CMatrix expected = a == b ? CMatrix(2.0 * gens[a].second * id) : CMatrix::Zero(rep.rank, rep.rank);
      worst = std::max(worst, max_entry(ac - expected));
    }
  return worst;
}

TraceIdentityReport trace_identities(const CliffordRep& rep) {
  TraceIdentityReport r;
  r.identity_trace = static_cast<double>(rep.rank);
  const int p = rep.leaf_dim;
  const int q = rep.codim;
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j)
      if (i != j) {
        r.worst_quadratic = std::max(r.worst_quadratic, std::abs((rep.leaf[i] * rep.leaf[j]).trace()));
        ++r.checked;
      }
  for (int s = 0; s < q; ++s)
    for (int t = 0; t < q; ++t)
      if (s != t) {
        r.worst_quadratic =
            std::max(r.worst_quadratic, std::abs((rep.transverse_hat[s] * rep.transverse_hat[t]).trace()));
        ++r.checked;
      }
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j)
      for (int s = 0; s < q; ++s)
        for (int t = 0; t < q; ++t)
          if (i != j || s != t) {
            const CMatrix m = rep.leaf[i] * rep.leaf[j] * rep.transverse_hat[s] * rep.transverse_hat[t];
            r.worst_quartic = std::max(r.worst_quartic, std::abs(m.trace()));
            ++r.checked;
          }
  return r;
}

CMatrix assemble_Q(const CliffordRep& rep, const TransverseCurvatureTable& R) {
  const int p = rep.leaf_dim;
  const int q = rep.codim;
  if (R.leaf_dim != p || R.codim() != q) throw std::invalid_argument("curvature table does not match the rep");
  CMatrix out = CMatrix::Zero(rep.rank, rep.rank);
  // Precompute c^(h_s) c^(h_t).
  std::vector<CMatrix> hat_pairs(static_cast<std::size_t>(q * q));
  for (int s = 0; s < q; ++s)
    for (int t = 0; t < q; ++t) hat_pairs[s * q + t] = rep.transverse_hat[s] * rep.transverse_hat[t];
  for (int s = 0; s < q; ++s)
    for (int t = 0; t < q; ++t) {
      const CMatrix& ht = hat_pairs[s * q + t];
      for (int i = 0; i < p; ++i)
        for (int r = 0; r < q; ++r) {
          const double v = R(i, p + r, t, s);
          if (v != 0.0) out += (0.25 * v) * rep.leaf[i] * rep.transverse[r] * ht;
        }
      for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) {
          const double v = R(i, j, t, s);
          if (v != 0.0) out += (0.125 * v) * rep.leaf[i] * rep.leaf[j] * ht;
        }
      for (int r = 0; r < q; ++r)
        for (int l = 0; l < q; ++l) {
          const double v = R(p + r, p + l, t, s);
          if (v != 0.0) out += (0.125 * v) * rep.transverse[r] * rep.transverse[l] * ht;
        }
    }
  return out;
}

double trace_Q_termwise(const CliffordRep& rep, const TransverseCurvatureTable& R) {
  // Tr[x y c^_s c^_t] vanishes unless the Clifford words pair up; with
  // distinct anticommuting generators the only survivors are
  // Tr[c_i c_i c^_s c^_s] = -N and Tr[c(h_r) c(h_r) c^_s c^_s] = -N.
  // The first sum has a leaf and a transverse generator and never pairs.
  const int p = rep.leaf_dim;
  const int q = rep.codim;
  const double n = static_cast<double>(rep.rank);
  double tr = 0.0;
  for (int s = 0; s < q; ++s) {
    for (int i = 0; i < p; ++i) tr += 0.125 * R(i, i, s, s) * -n;
    for (int r = 0; r < q; ++r) tr += 0.125 * R(p + r, p + r, s, s) * -n;
  }
  return tr;
}

CMatrix hat_curvature_term(const CliffordRep& rep, const HatCurvature& h) {
  const int p = rep.leaf_dim;
  const int q = rep.codim;
  if (h.leaf_dim != p || h.codim != q) throw std::invalid_argument("hat curvature does not match the rep");
  CMatrix out = CMatrix::Zero(rep.rank, rep.rank);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j)
      for (int s = 0; s < q; ++s)
        for (int t = 0; t < q; ++t) {
          const double v = h(i, j, t, s);
          if (v != 0.0)
            out += (0.125 * v) * rep.leaf[i] * rep.leaf[j] * rep.transverse_hat[s] * rep.transverse_hat[t];
        }
  return out;
}

double spectral_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  const CMatrix gram = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

}  // namespace folicalc

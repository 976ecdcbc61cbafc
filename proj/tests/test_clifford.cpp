#include <cmath>
#include <random>

#include "doctest.h"
#include "folicalc/clifford.hpp"
#include "folicalc/errors.hpp"
#include "folicalc/foliation.hpp"
#include "folicalc/manifolds.hpp"

using namespace folicalc;

namespace {

struct Generator {
  CMatrix m;
  double square;  // sign of the square
};

std::vector<Generator> generators(const CliffordRep& rep) {
  std::vector<Generator> g;
  for (const auto& m : rep.leaf) g.push_back({m, -1.0});
  for (const auto& m : rep.transverse) g.push_back({m, -1.0});
  for (const auto& m : rep.transverse_hat) g.push_back({m, 1.0});
  return g;
}

TransverseCurvatureTable random_table(int p, int q, unsigned seed, bool antisymmetric) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  TransverseCurvatureTable t;
  t.dim = p + q;
  t.leaf_dim = p;
  const int n = p + q;
  t.values.assign(static_cast<std::size_t>(n * n * q * q), 0.0);
  auto at = [&](int a, int b, int r, int s) -> double& { return t.values[((a * n + b) * q + r) * q + s]; };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int r = 0; r < q; ++r)
        for (int s = 0; s < q; ++s) {
          if (!antisymmetric) {
            at(a, b, r, s) = u(rng);
          } else if (a < b && r < s) {
            const double v = u(rng);
            at(a, b, r, s) = v;
            at(b, a, r, s) = -v;
            at(a, b, s, r) = -v;
            at(b, a, s, r) = v;
          }
        }
  return t;
}

double power_iteration_norm(const CMatrix& m) {
  const CMatrix h = m.adjoint() * m;
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(h.cols());
  for (int i = 0; i < v.size(); ++i) v(i) += std::complex<double>(0.01 * i, -0.003 * i * i);
  double lambda = 0.0;
  for (int it = 0; it < 5000; ++it) {
    Eigen::VectorXcd w = h * v;
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    lambda = norm / v.norm();
    v = w / norm;
  }
  return std::sqrt(lambda);
}

}  // namespace

TEST_CASE("representation rank and exact anticommutation") {
  for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {4, 2}, {2, 0}, {4, 0}}) {
    INFO(p << "," << q);
    const CliffordRep rep = build_rep(p, q);
    CHECK(rep.rank == (1 << (p / 2 + q)));
    const auto g = generators(rep);
    CHECK(g.size() == static_cast<std::size_t>(p + 2 * q));
    for (std::size_t a = 0; a < g.size(); ++a)
      for (std::size_t b = 0; b < g.size(); ++b) {
        const CMatrix ac = g[a].m * g[b].m + g[b].m * g[a].m;
        const CMatrix expected = a == b ? CMatrix(2.0 * g[a].square * CMatrix::Identity(rep.rank, rep.rank))
                                        : CMatrix(CMatrix::Zero(rep.rank, rep.rank));
        CHECK((ac - expected).cwiseAbs().maxCoeff() == 0.0);
      }
    CHECK(anticommutation_defect(rep) == 0.0);
  }
}

TEST_CASE("trace identities by exhaustive enumeration") {
  for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {4, 2}}) {
    const CliffordRep rep = build_rep(p, q);
    const double n = rep.rank;
    CHECK(CMatrix::Identity(rep.rank, rep.rank).trace().real() == n);
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) {
        const auto tr = (rep.leaf[i] * rep.leaf[j]).trace();
        CHECK(std::abs(tr - std::complex<double>(i == j ? -n : 0.0)) == 0.0);
        for (int s = 0; s < q; ++s)
          for (int t = 0; t < q; ++t) {
            const auto quartic = (rep.leaf[i] * rep.leaf[j] * rep.transverse_hat[s] * rep.transverse_hat[t]).trace();
            const double expected = (i == j && s == t) ? -n : 0.0;
            CHECK(std::abs(quartic - expected) == 0.0);
          }
      }
    for (int s = 0; s < q; ++s)
      for (int t = 0; t < q; ++t) {
        CHECK(std::abs((rep.transverse_hat[s] * rep.transverse_hat[t]).trace() - (s == t ? n : 0.0)) == 0.0);
        CHECK(std::abs((rep.transverse[s] * rep.transverse[t]).trace() - (s == t ? -n : 0.0)) == 0.0);
      }
    const TraceIdentityReport r = trace_identities(rep);
    CHECK(r.identity_trace == n);
    CHECK(r.worst_quadratic == 0.0);
    CHECK(r.worst_quartic == 0.0);
    CHECK(r.checked > 0);
  }
}

TEST_CASE("unsupported ranks") {
  CHECK_THROWS_AS(build_rep(1, 2), UnsupportedError);
  CHECK_THROWS_AS(build_rep(3, 0), UnsupportedError);
  CHECK_THROWS_AS(build_rep(8, 6), UnsupportedError);
}

TEST_CASE("trace of the curvature endomorphism") {
  for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {4, 2}}) {
    const CliffordRep rep = build_rep(p, q);
    const auto generic = random_table(p, q, 7u, false);
    const CMatrix qg = assemble_Q(rep, generic);
    CHECK(std::abs(qg.trace() - std::complex<double>(trace_Q_termwise(rep, generic))) < 1e-10);

    const auto curvature_like = random_table(p, q, 11u, true);
    const CMatrix qc = assemble_Q(rep, curvature_like);
    CHECK(std::abs(qc.trace()) < 1e-12);
    CHECK(trace_Q_termwise(rep, curvature_like) == 0.0);
    if (q > 1) CHECK(qc.cwiseAbs().maxCoeff() > 0.0);
  }
  const CliffordRep rep = build_rep(2, 1);
  CHECK_THROWS_AS(assemble_Q(rep, random_table(2, 2, 1u, true)), std::invalid_argument);
}

TEST_CASE("spectral norm against power iteration") {
  std::mt19937 rng(3);
  std::normal_distribution<double> n01;
  for (int size : {1, 3, 8}) {
    CMatrix m(size, size);
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j) m(i, j) = {n01(rng), n01(rng)};
    CHECK(spectral_norm(m) == doctest::Approx(power_iteration_norm(m)).epsilon(1e-8));
  }
  CHECK(spectral_norm(CMatrix::Zero(4, 4)) == 0.0);
  CHECK(spectral_norm(3.0 * CMatrix::Identity(4, 4)) == doctest::Approx(3.0));
}

TEST_CASE("averaged curvature term on sample manifolds") {
  const FramedPatch s2s1 = manifolds::sphere_times_circle();
  const CliffordRep rep21 = build_rep(2, 1);
  for (const auto& x : sample_points(s2s1, 3))
    CHECK(spectral_norm(hat_curvature_term(rep21, hat_curvature(s2s1, x))) < 1e-12);

  const FramedPatch warped = manifolds::warped_product();
  const CliffordRep rep22 = build_rep(2, 2);
  for (const auto& x : sample_points(warped, 3)) {
    const HatCurvature h = hat_curvature(warped, x);
    CMatrix expected = CMatrix::Zero(rep22.rank, rep22.rank);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int t = 0; t < 2; ++t)
          for (int s = 0; s < 2; ++s)
            expected += (0.125 * h(i, j, t, s)) * rep22.leaf[i] * rep22.leaf[j] * rep22.transverse_hat[s] *
                        rep22.transverse_hat[t];
    const CMatrix term = hat_curvature_term(rep22, h);
    CHECK((term - expected).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(spectral_norm(term) == doctest::Approx(power_iteration_norm(term)).epsilon(1e-8));
  }
}

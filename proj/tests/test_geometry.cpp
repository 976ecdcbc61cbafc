#include <cmath>
#include <numbers>

#include "doctest.h"
#include "folicalc/errors.hpp"
#include "folicalc/geometry.hpp"
#include "folicalc/manifolds.hpp"
#include "oracles.hpp"

using namespace folicalc;
namespace mf = folicalc::manifolds;

namespace {

std::vector<FramedPatch> all_patches() {
  return {mf::flat_torus(),   mf::sphere_times_circle(), mf::fibre_bundle(), mf::warped_product(),
          mf::warped_surface(), mf::hopf(),              mf::heisenberg(),   mf::round_sphere(2),
          mf::round_sphere(3), mf::round_sphere(4)};
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("lie brackets") {
  const FramedPatch torus = mf::flat_torus();
  const Point x{1.0, 2.0, 3.0, 4.0};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) CHECK(max_abs_diff(lie_bracket(torus, a, b, x), {0, 0, 0, 0}) == 0.0);

  const FramedPatch heis = mf::heisenberg();
  const Point y{0.3, -0.6, 0.2};
  const auto e12 = lie_bracket(heis, 0, 1, y);
  CHECK(max_abs_diff(e12, {0.0, 0.0, 1.0}) < 1e-14);
  CHECK(max_abs_diff(lie_bracket(heis, 1, 0, y), {0.0, 0.0, -1.0}) < 1e-14);
  CHECK(max_abs_diff(lie_bracket(heis, 2, 2, y), {0.0, 0.0, 0.0}) == 0.0);

  CHECK_THROWS_AS(lie_bracket(heis, 0, 1, Point{2.0, 0.0, 0.0}), DomainError);
}

TEST_CASE("singular frame and indefinite metric are reported") {
  FramedPatch bad = mf::heisenberg();
  bad.frame = [](FramedPatch::Coords) {
    RJetMatrix e = RJetMatrix::identity(3);
    e(1, 0) = RJet(1.0);
    e(1, 1) = RJet(0.0);
    e(1, 2) = RJet(0.0);
    return e;
  };
  CHECK_THROWS_AS(curvature_snapshot(bad, 1.0, Point{0.0, 0.0, 0.0}), DegeneracyError);

  FramedPatch indefinite = mf::heisenberg();
  indefinite.metric_leaf = [](FramedPatch::Coords) {
    RJetMatrix g = RJetMatrix::identity(2);
    g(1, 1) = RJet(-2.0);
    return g;
  };
  try {
    orthonormalize_adapted(indefinite, 1.0, Point{0.0, 0.0, 0.0});
    FAIL("expected a degeneracy error");
  } catch (const DegeneracyError& e) {
    CHECK(e.offending_value() == doctest::Approx(-2.0));
  }
}

TEST_CASE("adapted orthonormalization") {
  const Point x{0.1, 0.2, 0.3};
  const AdaptedFrame id = orthonormalize_adapted(mf::heisenberg(), 1.0, x);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) CHECK(id.in_patch_frame(a, b) == doctest::Approx(a == b ? 1.0 : 0.0));

  FramedPatch scaled = mf::warped_surface();
  scaled.metric_leaf = [](FramedPatch::Coords) {
    RJetMatrix g(1, 1);
    g(0, 0) = RJet(4.0);
    return g;
  };
  const AdaptedFrame half = orthonormalize_adapted(scaled, 1.0, Point{1.0, 1.0});
  CHECK(half.in_patch_frame(0, 0) == doctest::Approx(0.5));

  // Transverse vectors at eps are sqrt(eps) times those at eps = 1.
  const FramedPatch berger = mf::hopf();
  const AdaptedFrame one = orthonormalize_adapted(berger, 1.0, x);
  const AdaptedFrame quarter = orthonormalize_adapted(berger, 0.25, x);
  for (int a = 0; a < 3; ++a)
    for (int mu = 0; mu < 3; ++mu) {
      const double factor = a >= 1 ? 0.5 : 1.0;
      CHECK(quarter.coordinates(a, mu) == doctest::Approx(factor * one.coordinates(a, mu)).epsilon(1e-14));
    }

  // Gram-Schmidt result is orthonormal for a non-diagonal block.
  const FramedPatch torus = mf::flat_torus();
  const AdaptedFrame f = orthonormalize_adapted(torus, 1.0, Point{1, 1, 1, 1});
  const double gl[2][2] = {{1.0, 0.2}, {0.2, 1.5}};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      double ip = 0.0;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) ip += f.in_patch_frame(i, a) * gl[a][b] * f.in_patch_frame(j, b);
      CHECK(ip == doctest::Approx(i == j ? 1.0 : 0.0));
    }
}

TEST_CASE("connection coefficients") {
  const ConnectionCoefficients flat = connection_coefficients(mf::flat_torus(), 0.3, Point{1, 2, 3, 4});
  for (double g : flat.gamma) CHECK(g == 0.0);

  // Unit S^3 with a left-invariant orthonormal frame is a bi-invariant metric:
  // nabla_X Y = [X, Y] / 2, so Gamma_abc = c_ab^c / 2 = +-1 on distinct indices.
  const FramedPatch s3 = mf::hopf();
  const Point x{0.2, -0.1, 0.3};
  const CurvatureSnapshot snap = curvature_snapshot(s3, 1.0, x);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) CHECK(snap.gamma(a, b, c) == doctest::Approx(0.5 * snap.structure(a, b, c)));
  CHECK(std::abs(snap.structure(0, 1, 2)) == doctest::Approx(2.0));

  for (const FramedPatch& patch : all_patches())
    for (const Point& p : sample_points(patch, 5)) {
      const ConnectionCoefficients cc = connection_coefficients(patch, 0.4, p);
      CHECK(cc.metric_residual < 1e-9);
      CHECK(cc.torsion_residual < 1e-9);
    }
}

TEST_CASE("curvature oracles") {
  for (double eps : {1.0, 0.1, 0.01})
    for (const Point& p : sample_points(mf::flat_torus(), 20))
      CHECK(std::abs(curvature_snapshot(mf::flat_torus(), eps, p).scalar_curvature()) < 1e-12);

  for (int n : {2, 3, 4}) {
    const FramedPatch s = mf::round_sphere(n);
    for (const Point& p : sample_points(s, 5))
      CHECK(curvature_snapshot(s, 1.0, p).scalar_curvature() == doctest::Approx(n * (n - 1.0)).epsilon(1e-10));
  }

  // Berger sphere: fibre length 1, base scaled by 1/eps.
  const FramedPatch berger = mf::hopf();
  for (double eps : {1.0, 0.5, 0.1, 0.01})
    for (const Point& p : sample_points(berger, 3))
      CHECK(curvature_snapshot(berger, eps, p).scalar_curvature() ==
            doctest::Approx(8.0 * eps - 2.0 * eps * eps).epsilon(1e-10));

  // Heisenberg with |e3| = 1/sqrt(eps): Milnor's formula k = -lambda^2 / 2 with lambda^2 = 1/eps.
  for (double eps : {1.0, 0.1, 0.01})
    CHECK(curvature_snapshot(mf::heisenberg(), eps, Point{0.4, 0.1, -0.3}).scalar_curvature() ==
          doctest::Approx(-0.5 / eps).epsilon(1e-10));

  // Surface of revolution dt^2 + w^2 dtheta^2: k = -2 w''/w, independent of eps.
  for (double eps : {1.0, 0.2})
    for (const Point& p : sample_points(mf::warped_surface(), 5)) {
      const double w = 2.0 + std::sin(p[0]);
      CHECK(curvature_snapshot(mf::warped_surface(), eps, p).scalar_curvature() ==
            doctest::Approx(2.0 * std::sin(p[0]) / w).epsilon(1e-10));
    }
}

TEST_CASE("scalar curvature agrees with coordinate Christoffel computation") {
  for (const FramedPatch& patch : all_patches())
    for (double eps : {1.0, 0.25})
      for (const Point& p : sample_points(patch, 4)) {
        const double frame_k = curvature_snapshot(patch, eps, p).scalar_curvature();
        const double coord_k = oracle::coordinate_scalar_curvature(patch, eps, p);
        CHECK_MESSAGE(std::abs(frame_k - coord_k) < 1e-8 * (1.0 + std::abs(coord_k)), patch.name);
      }
}

TEST_CASE("curvature symmetries, Bianchi identity and Ricci trace") {
  for (const FramedPatch& patch : all_patches())
    for (const Point& p : sample_points(patch, 20)) {
      const CurvatureSnapshot s = curvature_snapshot(patch, 0.5, p);
      const int n = s.dim();
      double worst = 0.0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int c = 0; c < n; ++c)
            for (int d = 0; d < n; ++d) {
              const double r = s.riemann(a, b, c, d);
              worst = std::max(worst, std::abs(r + s.riemann(b, a, c, d)));
              worst = std::max(worst, std::abs(r + s.riemann(a, b, d, c)));
              worst = std::max(worst, std::abs(r - s.riemann(c, d, a, b)));
              worst = std::max(worst, std::abs(r + s.riemann(b, c, a, d) + s.riemann(c, a, b, d)));
            }
      CHECK_MESSAGE(worst < 1e-8, patch.name);
      CHECK(std::abs(s.ricci_trace() - s.scalar_curvature()) < 1e-9 * (1.0 + std::abs(s.scalar_curvature())));
    }
}

TEST_CASE("homothety, prescaling and frame changes") {
  for (const FramedPatch& patch : all_patches()) {
    const Point p = sample_points(patch, 1)[0];
    const double k = curvature_snapshot(patch, 1.0, p).scalar_curvature();
    for (double c : {0.5, 2.0, 10.0}) {
      const double kc = curvature_snapshot(homothetic(patch, c), 1.0, p).scalar_curvature();
      CHECK(std::abs(kc - k / c) <= 1e-9 * (1.0 + std::abs(k / c)));
    }

    const CurvatureSnapshot direct = curvature_snapshot(patch, 0.2, p);
    const CurvatureSnapshot pre = curvature_snapshot(prescaled(patch, 0.2), 1.0, p);
    const int n = patch.dim;
    double worst = 0.0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d)
            worst = std::max(worst, std::abs(direct.riemann(a, b, c, d) - pre.riemann(a, b, c, d)));
    CHECK_MESSAGE(worst < 1e-10, patch.name);

    std::vector<std::vector<double>> change(n, std::vector<double>(n, 0.0));
    for (int a = 0; a < n; ++a) change[a][a] = 1.0 + 0.1 * a;
    if (patch.leaf_dim >= 2) change[1][0] = 0.4;
    if (n - patch.leaf_dim >= 2) change[n - 1][n - 2] = -0.3;
    const double kr = curvature_snapshot(reframed(patch, change), 0.2, p).scalar_curvature();
    CHECK(std::abs(kr - direct.scalar_curvature()) < 1e-7);
  }
}

TEST_CASE("sectional block sums") {
  const BlockSums flat = sectional_block_sums(curvature_snapshot(mf::flat_torus(), 0.5, Point{1, 1, 1, 1}));
  CHECK(flat.ff == 0.0);
  CHECK(flat.fh == 0.0);
  CHECK(flat.hh == 0.0);

  for (const Point& p : sample_points(mf::sphere_times_circle(), 5)) {
    const BlockSums prod = sectional_block_sums(curvature_snapshot(mf::sphere_times_circle(), 0.3, p));
    CHECK(std::abs(prod.fh) < 1e-12);
    CHECK(prod.ff == doctest::Approx(-2.0));
  }

  // On a surface only the mixed plane carries curvature: <R(f,h)f,h> = -K = w''/w.
  for (const Point& p : sample_points(mf::warped_surface(), 5)) {
    const BlockSums b = sectional_block_sums(curvature_snapshot(mf::warped_surface(), 0.3, p));
    CHECK(b.fh == doctest::Approx(-std::sin(p[0]) / (2.0 + std::sin(p[0]))));
    CHECK(std::abs(b.ff) < 1e-14);
    CHECK(std::abs(b.hh) < 1e-14);
  }

  for (const FramedPatch& patch : all_patches())
    for (const Point& p : sample_points(patch, 3)) {
      const CurvatureSnapshot s = curvature_snapshot(patch, 0.1, p);
      CHECK(sectional_block_sums(s).minus_scalar() == doctest::Approx(-s.scalar_curvature()));
    }
}

TEST_CASE("rescaled connection identities") {
  // Gamma^eps is taken in the g^eps-orthonormal frame (h^eps = sqrt(eps) h),
  // Gamma and c at eps = 1. Indices: i, j, k leaf; s, t, u transverse.
  for (const FramedPatch& patch : {mf::heisenberg(), mf::warped_product(), mf::hopf(), mf::fibre_bundle()})
    for (const Point& x : sample_points(patch, 4)) {
      const double eps = 0.3;
      const double r = std::sqrt(eps);
      const CurvatureSnapshot one = curvature_snapshot(patch, 1.0, x);
      const CurvatureSnapshot e = curvature_snapshot(patch, eps, x);
      const int n = patch.dim;
      const int p = patch.leaf_dim;
      auto G = [&](int a, int b, int c) { return one.gamma(a, b, c); };
      auto C = [&](int a, int b, int c) { return one.structure(a, b, c); };
      auto Ge = [&](int a, int b, int c) { return e.gamma(a, b, c); };
      double worst = 0.0;
      auto track = [&worst](double lhs, double rhs) { worst = std::max(worst, std::abs(lhs - rhs)); };
      for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j)
          for (int s = p; s < n; ++s) {
            track(r * Ge(i, j, s), eps * G(i, j, s) + 0.5 * (1.0 - eps) * C(i, j, s));
            track(Ge(i, s, j) / r, G(i, s, j) + 0.5 * (1.0 - 1.0 / eps) * C(i, j, s));
            track(Ge(s, j, i) / r, G(s, j, i) + 0.5 * (1.0 - 1.0 / eps) * C(j, i, s));
          }
      for (int s = p; s < n; ++s)
        for (int t = p; t < n; ++t) {
          for (int j = 0; j < p; ++j) {
            track(Ge(t, s, j) / eps, G(t, s, j) - 0.5 * (1.0 - 1.0 / eps) * (G(t, s, j) + G(s, t, j)));
            track(Ge(t, j, s), -0.5 * (G(t, s, j) + G(s, t, j)) + 0.5 * eps * C(s, t, j));
            track(Ge(j, s, t), C(j, s, t) - 0.5 * (G(t, s, j) + G(s, t, j)) - 0.5 * eps * C(s, t, j));
          }
          for (int u = p; u < n; ++u) track(Ge(t, s, u) / r, G(t, s, u));
        }
      CHECK_MESSAGE(worst < 1e-8, patch.name);
    }
}

TEST_CASE("volume density") {
  const FramedPatch s = mf::round_sphere(2);
  const Point x{0.3, -0.2};
  CHECK(volume_density(s, 1.0, x) == doctest::Approx(4.0 / std::pow(1.0 + 0.13, 2)));
  const FramedPatch w = mf::warped_product();
  const Point y{0.5, 1.0, 2.0, 3.0};
  CHECK(volume_density(w, 0.01, y) == doctest::Approx(volume_density(w, 1.0, y) / 0.01).epsilon(1e-12));
}

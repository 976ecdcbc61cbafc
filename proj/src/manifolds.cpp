#include "folicalc/manifolds.hpp"

#include <numbers>
#include <string>

namespace folicalc::manifolds {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

RJetMatrix constant(const std::vector<std::vector<double>>& rows) {
  RJetMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows.size()));
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) m(r, c) = RJet(rows[r][c]);
  return m;
}

RJetMatrix identity(int n) { return RJetMatrix::identity(n); }

std::vector<Interval> cube(int n, double lo, double hi) { return std::vector<Interval>(n, Interval{lo, hi}); }

std::vector<QuadratureAxis> periodic_axes(std::vector<int> nodes) {
  std::vector<QuadratureAxis> axes;
  for (int k : nodes) axes.push_back({true, k});
  return axes;
}

}  // namespace

FramedPatch flat_torus() {
  FramedPatch m;
  m.name = "flat-torus";
  m.dim = 4;
  m.leaf_dim = 2;
  m.box = cube(4, 0.0, kTwoPi);
  m.frame = [](FramedPatch::Coords) {
    return constant({{1.0, 0.5, 0.0, 0.0}, {0.0, 1.0, 0.0, 0.3}, {0.0, 0.0, 1.0, 0.0}, {0.2, 0.0, 0.0, 1.0}});
  };
  m.metric_leaf = [](FramedPatch::Coords) { return constant({{1.0, 0.2}, {0.2, 1.5}}); };
  m.metric_transverse = [](FramedPatch::Coords) { return constant({{2.0, 0.1}, {0.1, 1.0}}); };
  m.quadrature = periodic_axes({4, 4, 4, 4});
  return m;
}

FramedPatch sphere_times_circle() {
  FramedPatch m;
  m.name = "s2xs1";
  m.dim = 3;
  m.leaf_dim = 2;
  m.box = {{0.0, std::numbers::pi}, {0.0, kTwoPi}, {0.0, kTwoPi}};
  m.frame = [](FramedPatch::Coords) { return identity(3); };
  m.metric_leaf = [](FramedPatch::Coords x) {
    RJetMatrix g = identity(2);
    g(1, 1) = pow(sin(x[0]), 2);
    return g;
  };
  m.metric_transverse = [](FramedPatch::Coords) { return identity(1); };
  m.quadrature = {{false, 16}, {true, 4}, {true, 4}};
  return m;
}

FramedPatch fibre_bundle() {
  FramedPatch m;
  m.name = "fibre-bundle";
  m.dim = 4;
  m.leaf_dim = 2;
  m.box = cube(4, 0.0, kTwoPi);
  m.frame = [](FramedPatch::Coords x) {
    RJetMatrix e = identity(4);
    e(3, 0) = sin(x[2]);
    return e;
  };
  m.metric_leaf = [](FramedPatch::Coords x) {
    const RJet conformal = exp(0.6 * (sin(x[0]) * cos(x[2])));
    RJetMatrix g(2, 2);
    g(0, 0) = conformal;
    g(1, 1) = conformal;
    return g;
  };
  m.metric_transverse = [](FramedPatch::Coords) { return identity(2); };
  m.quadrature = periodic_axes({16, 2, 16, 2});
  return m;
}

FramedPatch warped_product() {
  FramedPatch m;
  m.name = "warped-product";
  m.dim = 4;
  m.leaf_dim = 2;
  m.box = cube(4, 0.0, kTwoPi);
  m.frame = [](FramedPatch::Coords) { return identity(4); };
  m.metric_leaf = [](FramedPatch::Coords x) {
    const RJet conformal = exp(0.6 * sin(x[0]));
    RJetMatrix g(2, 2);
    g(0, 0) = conformal;
    g(1, 1) = conformal;
    return g;
  };
  m.metric_transverse = [](FramedPatch::Coords x) {
    RJetMatrix g(2, 2);
    g(0, 0) = exp(0.4 * sin(x[0]));
    g(1, 1) = exp(0.3 * cos(x[1]));
    g(0, 1) = 0.2 * sin(x[0] - x[1]);
    g(1, 0) = g(0, 1);
    return g;
  };
  m.quadrature = periodic_axes({16, 16, 2, 2});
  return m;
}

FramedPatch warped_surface() {
  FramedPatch m;
  m.name = "warped-surface";
  m.dim = 2;
  m.leaf_dim = 1;
  m.box = cube(2, 0.0, kTwoPi);
  m.frame = [](FramedPatch::Coords) { return identity(2); };
  m.metric_leaf = [](FramedPatch::Coords) { return identity(1); };
  m.metric_transverse = [](FramedPatch::Coords x) {
    RJetMatrix g(1, 1);
    g(0, 0) = pow(2.0 + sin(x[0]), 2);
    return g;
  };
  m.quadrature = periodic_axes({16, 2});
  return m;
}

namespace {

// Coordinate components of q*i, q*j, q*k at q = (w, x, y, z) on the unit sphere.
RJetMatrix hopf_frame(FramedPatch::Coords x) {
  const RJet w = sqrt(1.0 - x[0] * x[0] - x[1] * x[1] - x[2] * x[2]);
  RJetMatrix e(3, 3);
  e(0, 0) = w;
  e(0, 1) = x[2];
  e(0, 2) = -x[1];
  e(1, 0) = -x[2];
  e(1, 1) = w;
  e(1, 2) = x[0];
  e(2, 0) = x[1];
  e(2, 1) = -x[0];
  e(2, 2) = w;
  return e;
}

}  // namespace

FramedPatch hopf() {
  FramedPatch m;
  m.name = "hopf";
  m.dim = 3;
  m.leaf_dim = 1;
  m.box = cube(3, -0.5, 0.5);
  m.frame = hopf_frame;
  m.metric_leaf = [](FramedPatch::Coords) { return identity(1); };
  m.metric_transverse = [](FramedPatch::Coords) { return identity(2); };
  return m;
}

FramedPatch perturbed_hopf() {
  FramedPatch m = hopf();
  m.name = "hopf/perturbed";
  m.metric_transverse = [](FramedPatch::Coords x) {
    RJetMatrix g = identity(2);
    g(0, 0) = 1.0 + 0.3 * x[0];
    return g;
  };
  return m;
}

FramedPatch heisenberg() {
  FramedPatch m;
  m.name = "heisenberg";
  m.dim = 3;
  m.leaf_dim = 2;
  m.box = cube(3, -1.0, 1.0);
  m.frame = [](FramedPatch::Coords x) {
    RJetMatrix e = identity(3);
    e(0, 2) = -0.5 * x[1];
    e(1, 2) = 0.5 * x[0];
    return e;
  };
  m.metric_leaf = [](FramedPatch::Coords) { return identity(2); };
  m.metric_transverse = [](FramedPatch::Coords) { return identity(1); };
  return m;
}

FramedPatch round_sphere(int n) {
  FramedPatch m;
  m.name = "round-s" + std::to_string(n);
  m.dim = n;
  m.leaf_dim = n;
  m.box = cube(n, -1.0, 1.0);
  m.frame = [n](FramedPatch::Coords) { return identity(n); };
  m.metric_leaf = [n](FramedPatch::Coords x) {
    RJet r2;
    for (int i = 0; i < n; ++i) r2 += x[i] * x[i];
    const RJet conformal = 4.0 / pow(1.0 + r2, 2);
    RJetMatrix g(n, n);
    for (int i = 0; i < n; ++i) g(i, i) = conformal;
    return g;
  };
  m.metric_transverse = [](FramedPatch::Coords) { return RJetMatrix(0, 0); };
  return m;
}

}  // namespace folicalc::manifolds

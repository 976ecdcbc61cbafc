#pragma once

// Independent reference computations used only by the tests.

#include <cmath>
#include <vector>

#include "folicalc/dense.hpp"
#include "folicalc/framed_patch.hpp"
#include "folicalc/jet.hpp"

namespace oracle {

using folicalc::RJet;
using folicalc::RJetMatrix;

/// Coordinate metric g_{mu nu} of the eps-member of a framed patch.
inline RJetMatrix coordinate_metric(const folicalc::FramedPatch& patch, double eps,
                                    std::span<const RJet> x) {
  const int n = patch.dim;
  const int p = patch.leaf_dim;
  const RJetMatrix einv = folicalc::inverse(patch.frame(x));
  RJetMatrix block(n, n);
  if (p > 0) {
    const RJetMatrix l = patch.metric_leaf(x);
    for (int a = 0; a < p; ++a)
      for (int b = 0; b < p; ++b) block(a, b) = l(a, b);
  }
  if (n > p) {
    const RJetMatrix t = patch.metric_transverse(x);
    for (int a = 0; a < n - p; ++a)
      for (int b = 0; b < n - p; ++b) block(p + a, p + b) = t(a, b) / eps;
  }
  return einv * block * einv.transpose();
}

/// Scalar curvature from coordinate Christoffel symbols.
inline double coordinate_scalar_curvature(const folicalc::FramedPatch& patch, double eps,
                                          const std::vector<double>& point) {
  const int n = patch.dim;
  const std::vector<RJet> x = folicalc::coordinate_jets(point);
  const RJetMatrix g = coordinate_metric(patch, eps, x);
  const RJetMatrix ginv = folicalc::inverse(g);
  // chr[(r*n + m)*n + s] = Gamma^r_{ms}, as first-order jets
  std::vector<RJet> chr(static_cast<std::size_t>(n * n * n));
  for (int r = 0; r < n; ++r)
    for (int m = 0; m < n; ++m)
      for (int s = 0; s < n; ++s) {
        RJet acc;
        for (int l = 0; l < n; ++l)
          acc += 0.5 * ginv(r, l) * (g(s, l).partial(m) + g(m, l).partial(s) - g(m, s).partial(l));
        chr[(r * n + m) * n + s] = acc;
      }
  auto G = [&](int r, int m, int s) -> const RJet& { return chr[(r * n + m) * n + s]; };
  double k = 0.0;
  for (int s = 0; s < n; ++s)
    for (int v = 0; v < n; ++v) {
      // Ric_{sv} = R^r_{s r v}
      double ric = 0.0;
      for (int r = 0; r < n; ++r) {
        ric += G(r, v, s).d(r) - G(r, r, s).d(v);
        for (int l = 0; l < n; ++l)
          ric += G(r, r, l).value() * G(l, v, s).value() - G(r, v, l).value() * G(l, r, s).value();
      }
      k += ginv(s, v).value() * ric;
    }
  return k;
}

}  // namespace oracle

#include "folicalc/framed_patch.hpp"

#include <random>
#include <stdexcept>

namespace folicalc {

bool FramedPatch::contains(std::span<const double> point) const {
  if (static_cast<int>(point.size()) != dim) return false;
  for (int i = 0; i < dim; ++i)
    if (point[i] < box[i].lo || point[i] > box[i].hi) return false;
  return true;
}

std::vector<RJet> coordinate_jets(std::span<const double> point) {
  const int n = static_cast<int>(point.size());
  std::vector<RJet> x;
  x.reserve(point.size());
  for (int i = 0; i < n; ++i) x.push_back(RJet::variable(point[i], i, n));
  return x;
}

FramedPatch homothetic(const FramedPatch& patch, double factor) {
  FramedPatch out = patch;
  auto scale = [factor](FramedPatch::MatrixField field) {
    return [field = std::move(field), factor](FramedPatch::Coords x) {
      RJetMatrix m = field(x);
      for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) m(r, c) = m(r, c) * factor;
      return m;
    };
  };
  out.metric_leaf = scale(patch.metric_leaf);
  out.metric_transverse = scale(patch.metric_transverse);
  return out;
}

FramedPatch prescaled(const FramedPatch& patch, double eps) {
  FramedPatch out = patch;
  out.metric_transverse = [field = patch.metric_transverse, eps](FramedPatch::Coords x) {
    RJetMatrix m = field(x);
    for (int r = 0; r < m.rows(); ++r)
      for (int c = 0; c < m.cols(); ++c) m(r, c) = m(r, c) / eps;
    return m;
  };
  return out;
}

FramedPatch reframed(const FramedPatch& patch, const std::vector<std::vector<double>>& change) {
  const int n = patch.dim;
  const int p = patch.leaf_dim;
  if (static_cast<int>(change.size()) != n) throw std::invalid_argument("frame change has wrong size");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if ((a < p) != (b < p) && change[a][b] != 0.0)
        throw std::invalid_argument("frame change must preserve the leaf/transverse blocks");

  FramedPatch out = patch;
  out.name = patch.name + "/reframed";
  out.frame = [field = patch.frame, change, n](FramedPatch::Coords x) {
    const RJetMatrix e = field(x);
    RJetMatrix m(n, n);
    for (int a = 0; a < n; ++a)
      for (int mu = 0; mu < n; ++mu) {
        RJet acc;
        for (int b = 0; b < n; ++b)
          if (change[a][b] != 0.0) acc += change[a][b] * e(b, mu);
        m(a, mu) = acc;
      }
    return m;
  };
  auto congruence = [&change](FramedPatch::MatrixField field, int offset, int size) {
    return [field = std::move(field), change, offset, size](FramedPatch::Coords x) {
      const RJetMatrix g = field(x);
      RJetMatrix m(size, size);
      for (int a = 0; a < size; ++a)
        for (int b = 0; b < size; ++b) {
          RJet acc;
          for (int c = 0; c < size; ++c)
            for (int d = 0; d < size; ++d) {
              const double w = change[offset + a][offset + c] * change[offset + b][offset + d];
              if (w != 0.0) acc += w * g(c, d);
            }
          m(a, b) = acc;
        }
      return m;
    };
  };
  out.metric_leaf = congruence(patch.metric_leaf, 0, p);
  out.metric_transverse = congruence(patch.metric_transverse, p, n - p);
  return out;
}

std::vector<Point> sample_box(const std::vector<Interval>& box, int count, unsigned seed, double margin) {
  std::mt19937_64 rng(seed);
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    Point x(box.size());
    for (std::size_t i = 0; i < box.size(); ++i) {
      const double w = box[i].hi - box[i].lo;
      // Manual affine map keeps the sequence identical across standard libraries.
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      x[i] = box[i].lo + w * (margin + (1.0 - 2.0 * margin) * u);
    }
    pts.push_back(std::move(x));
  }
  return pts;
}

std::vector<Point> sample_points(const FramedPatch& patch, int count, unsigned seed, double margin) {
  return sample_box(patch.box, count, seed, margin);
}

}  // namespace folicalc

#pragma once

#include <functional>
#include <vector>

#include "folicalc/framed_patch.hpp"

namespace folicalc {

struct QuadratureRule {
  std::vector<Point> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre nodes and weights on [lo, hi] (Golub-Welsch).
QuadratureRule gauss_legendre(int count, double lo, double hi);

/// Tensor-product rule over the patch box: trapezoid on periodic axes,
/// Gauss-Legendre otherwise. Node counts are multiplied by `refine` (rounded up).
QuadratureRule tensor_rule(const FramedPatch& patch, double refine = 1.0);

struct Integral {
  double value = 0.0;
  double refined = 0.0;
  double change = 0.0;
};

/// Integrates over the fundamental domain and repeats with 1.5x the nodes per
/// axis; throws QuadratureError if the two differ by more than `tolerance`.
Integral integrate(const FramedPatch& patch, const std::function<double(const Point&)>& integrand,
                   double tolerance = 1e-5);

}  // namespace folicalc

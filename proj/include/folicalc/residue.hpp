#pragma once

#include <span>

#include "folicalc/adiabatic.hpp"
#include "folicalc/clifford.hpp"
#include "folicalc/geometry.hpp"
#include "folicalc/quadrature.hpp"

namespace folicalc {

/// c_0 = 2 / ((n/2 - 2)! (4 pi)^{n/2}); requires n even and n >= 4.
double residue_constant(int n);

/// <R^{F-perp, eps}(a, b) h_t, h_s> for all frame pairs at the snapshot's eps.
TransverseCurvatureTable transverse_curvature_table(const CurvatureSnapshot& snapshot);

struct ResidueDensity {
  Point point;
  double eps = 1.0;
  int rank = 0;
  double c0 = 0.0;
  double scalar_curvature = 0.0;
  double trace_q = 0.0;
  double trace = 0.0;    // Tr(-k/12 - Q)
  double density = 0.0;  // c0 * trace
};

ResidueDensity residue_density(const FramedPatch& patch, std::span<const double> point, double eps);

/// Total volume of the fundamental domain under g^eps.
Integral total_volume(const FramedPatch& patch, double eps, double tolerance = 1e-5);

struct KkwResult {
  std::vector<double> eps;
  std::vector<double> scaled_residue;  // eps^{q/2} * integral of the density against dvol_{g^eps}
  LaurentFit fit;
  double lhs = 0.0;
  double rhs = 0.0;
  double absolute_gap = 0.0;
  double relative_gap = 0.0;
  double rank = 0.0;
  double c0 = 0.0;
  double worst_quadrature_change = 0.0;
};

/// Compares the eps -> 0 limit of the rescaled residue with
/// -(c0/12) rank * integral (k^F + Phi) dvol_g.
KkwResult kkw_limit(const FramedPatch& patch, const SweepPlan& plan, PhiVariant variant = PhiVariant::consistent,
                    double quadrature_tolerance = 1e-5);

}  // namespace folicalc

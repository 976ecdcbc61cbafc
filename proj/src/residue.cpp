#include "folicalc/residue.hpp"

#include <cmath>
#include <numbers>

#include "folicalc/errors.hpp"

namespace folicalc {

double residue_constant(int n) {
  if (n % 2 != 0) throw UnsupportedError("residue density needs an even dimension");
  if (n < 4) throw UnsupportedError("residue density needs dimension at least 4");
  const double factorial = std::tgamma(n / 2 - 1.0);  // (n/2 - 2)!
  return 2.0 / (factorial * std::pow(4.0 * std::numbers::pi, n / 2));
}

TransverseCurvatureTable transverse_curvature_table(const CurvatureSnapshot& s) {
  TransverseCurvatureTable t;
  t.dim = s.dim();
  t.leaf_dim = s.leaf_dim();
  const int n = t.dim;
  const int q = t.codim();
  t.values.assign(static_cast<std::size_t>(n * n * q * q), 0.0);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int u = 0; u < q; ++u)
        for (int r = 0; r < q; ++r) {
          const double v = s.transverse_curvature(a, b, u, r);
          t.values[((a * n + b) * q + u) * q + r] = v;
          t.values[((b * n + a) * q + u) * q + r] = -v;
        }
  return t;
}

ResidueDensity residue_density(const FramedPatch& patch, std::span<const double> point, double eps) {
  ResidueDensity d;
  d.c0 = residue_constant(patch.dim);
  const CliffordRep rep = build_rep(patch.leaf_dim, patch.codim());
  const CurvatureSnapshot s = curvature_snapshot(patch, eps, point);
  d.point.assign(point.begin(), point.end());
  d.eps = eps;
  d.rank = rep.rank;
  d.scalar_curvature = s.scalar_curvature();
  d.trace_q = rep.codim > 0 ? assemble_Q(rep, transverse_curvature_table(s)).trace().real() : 0.0;
  d.trace = -static_cast<double>(rep.rank) * d.scalar_curvature / 12.0 - d.trace_q;
  d.density = d.c0 * d.trace;
  return d;
}

Integral total_volume(const FramedPatch& patch, double eps, double tolerance) {
  return integrate(patch, [&](const Point& x) { return volume_density(patch, eps, x); }, tolerance);
}

KkwResult kkw_limit(const FramedPatch& patch, const SweepPlan& plan, PhiVariant variant, double quadrature_tolerance) {
  plan.validate(4);
  KkwResult r;
  r.c0 = residue_constant(patch.dim);
  r.rank = static_cast<double>(build_rep(patch.leaf_dim, patch.codim()).rank);
  const double half_q = 0.5 * patch.codim();
  for (double eps : plan.grid()) {
    const Integral in = integrate(
        patch,
        [&](const Point& x) { return residue_density(patch, x, eps).density * volume_density(patch, eps, x); },
        quadrature_tolerance * std::pow(eps, -half_q));
    r.eps.push_back(eps);
    r.scaled_residue.push_back(std::pow(eps, half_q) * in.value);
    r.worst_quadrature_change = std::max(r.worst_quadrature_change, std::pow(eps, half_q) * in.change);
  }
  r.fit = fit_laurent(r.eps, r.scaled_residue);
  r.lhs = r.fit.constant;

  const Integral limit = integrate(
      patch,
      [&](const Point& x) {
        return (leaf_scalar_curvature(patch, x) + phi_omega(patch, x, variant)) * volume_density(patch, 1.0, x);
      },
      quadrature_tolerance);
  r.worst_quadrature_change = std::max(r.worst_quadrature_change, limit.change);
  r.rhs = -(r.c0 / 12.0) * r.rank * limit.value;
  r.absolute_gap = std::abs(r.lhs - r.rhs);
  const double scale = std::max(std::abs(r.lhs), std::abs(r.rhs));
  r.relative_gap = scale > 1e-12 ? r.absolute_gap / scale : 0.0;
  return r;
}

}  // namespace folicalc

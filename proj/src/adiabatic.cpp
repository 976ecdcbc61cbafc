#include "folicalc/adiabatic.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <ostream>
#include <sstream>

#include "folicalc/errors.hpp"
#include "folicalc/geometry.hpp"

namespace folicalc {

std::vector<double> SweepPlan::grid() const {
  std::vector<double> g;
  double e = eps_start;
  for (int k = 0; k < count; ++k) {
    g.push_back(e);
    e *= ratio;
  }
  return g;
}

void SweepPlan::validate(int coefficients) const {
  if (!(eps_start > 0.0)) throw std::invalid_argument("eps start must be positive");
  if (!(ratio > 0.0 && ratio < 1.0)) throw std::invalid_argument("eps ratio must lie in (0, 1)");
  const int needed = std::max(6, coefficients + 2);
  if (count < needed)
    throw std::invalid_argument("eps grid needs at least " + std::to_string(needed) + " points, got " +
                                std::to_string(count));
}

SweepTable sweep(const SweepPlan& plan, const std::vector<Point>& points, const Observable& observable) {
  const std::vector<double> grid = plan.grid();
  SweepTable table;
  table.reserve(grid.size() * points.size());
  for (std::size_t id = 0; id < points.size(); ++id)
    for (double eps : grid) {
      try {
        table.push_back({eps, static_cast<int>(id), observable(points[id], eps)});
      } catch (const std::exception& e) {
        std::ostringstream os;
        os << "observable failed at eps=" << eps << ", point " << id << ": " << e.what();
        throw Error(os.str());
      }
    }
  return table;
}

LaurentFit fit_laurent(const std::vector<double>& eps, const std::vector<double>& values, FitOptions options) {
  if (eps.size() != values.size()) throw std::invalid_argument("eps and value columns differ in length");
  const int m = static_cast<int>(eps.size());
  const int cols = 3 + (options.inverse_term ? 1 : 0) + (options.sqrt_term ? 1 : 0);
  const int needed = std::max(6, cols + 2);
  if (m < needed)
    throw FitError("Laurent fit needs at least " + std::to_string(needed) + " points, got " + std::to_string(m));
  double scale = 0.0;
  for (double e : eps) {
    if (!(e > 0.0)) throw FitError("Laurent fit needs positive eps values");
    scale = std::max(scale, e);
  }

  Eigen::MatrixXd design(m, cols);
  Eigen::VectorXd rhs(m);
  for (int r = 0; r < m; ++r) {
    const double u = eps[r] / scale;
    int c = 0;
    if (options.inverse_term) design(r, c++) = 1.0 / u;
    design(r, c++) = 1.0;
    design(r, c++) = u;
    design(r, c++) = u * u;
    if (options.sqrt_term) design(r, c++) = std::sqrt(u);
    rhs(r) = values[r];
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  LaurentFit fit;
  fit.condition = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
  if (!(fit.condition <= kMaxFitCondition)) {
    std::ostringstream os;
    os << "Laurent fit refused: condition estimate " << fit.condition << " exceeds " << kMaxFitCondition;
    throw FitError(os.str());
  }
  const Eigen::VectorXd b = svd.solve(rhs);
  int c = 0;
  if (options.inverse_term) fit.inverse = b(c++) * scale;
  fit.constant = b(c++);
  fit.linear = b(c++) / scale;
  fit.quadratic = b(c++) / (scale * scale);
  if (options.sqrt_term) fit.sqrt_term = b(c++) / std::sqrt(scale);

  const Eigen::VectorXd res = design * b - rhs;
  fit.eps = eps;
  fit.residuals.assign(res.data(), res.data() + m);
  fit.residual_rms = std::sqrt(res.squaredNorm() / m);
  return fit;
}

LaurentFit fit_laurent(const SweepTable& table, int point_id, FitOptions options) {
  std::vector<double> eps, values;
  for (const SweepRow& row : table)
    if (row.point_id == point_id) {
      eps.push_back(row.eps);
      values.push_back(row.value);
    }
  return fit_laurent(eps, values, options);
}

double richardson_limit(const std::vector<double>& eps, const std::vector<double>& values) {
  if (eps.size() < 3 || eps.size() != values.size()) throw std::invalid_argument("richardson needs three samples");
  // Three smallest eps values.
  std::vector<std::size_t> idx(eps.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return eps[a] < eps[b]; });
  const double x[3] = {eps[idx[0]], eps[idx[1]], eps[idx[2]]};
  double y[3] = {values[idx[0]], values[idx[1]], values[idx[2]]};
  // Neville's scheme evaluated at 0.
  for (int level = 1; level < 3; ++level)
    for (int i = 0; i + level < 3; ++i) y[i] = (x[i + level] * y[i] - x[i] * y[i + 1]) / (x[i + level] - x[i]);
  return y[0];
}

void write_sweep_csv(std::ostream& out, const SweepTable& table) {
  out << "eps,point_id,value\n";
  out.precision(17);
  for (const SweepRow& row : table) out << row.eps << ',' << row.point_id << ',' << row.value << '\n';
}

bool LimitValidation::passed() const {
  for (const LimitRecord& r : records)
    if (!r.passed()) return false;
  return !records.empty();
}

LimitValidation validate_limit(const FramedPatch& patch, const std::vector<Point>& points, const SweepPlan& plan,
                               PhiVariant variant, LimitTolerances tol) {
  plan.validate(4);
  LimitValidation v;
  v.manifold = patch.name;
  v.variant = variant;
  for (const Point& x : points) v.integrable = v.integrable && is_integrable(patch, x);
  v.table = sweep(plan, points, [&patch](const Point& x, double eps) {
    return curvature_snapshot(patch, eps, x).scalar_curvature();
  });

  for (std::size_t id = 0; id < points.size(); ++id) {
    LimitRecord r;
    r.point_id = static_cast<int>(id);
    r.point = points[id];
    r.fit = fit_laurent(v.table, r.point_id);
    std::vector<double> eps, vals;
    for (const SweepRow& row : v.table)
      if (row.point_id == r.point_id) {
        eps.push_back(row.eps);
        vals.push_back(row.value);
      }
    r.richardson = richardson_limit(eps, vals);
    if (v.integrable) {
      r.expected_constant = leaf_scalar_curvature(patch, points[id]) + phi_omega(patch, points[id], variant);
      r.inverse_ok = std::abs(r.fit.inverse) < tol.inverse;
      r.constant_ok = std::abs(r.fit.constant - r.expected_constant) < tol.constant;
    } else {
      r.expected_inverse = b_invariant(patch, points[id]).four_b;
      const double sign = (r.fit.inverse >= 0.0) == (r.expected_inverse >= 0.0) ? 1.0 : -1.0;
      if (id == 0) {
        v.sign_relation = sign;
        v.magnitude_ratio = std::abs(r.expected_inverse) > 0.0 ? std::abs(r.fit.inverse) / std::abs(r.expected_inverse)
                                                               : INFINITY;
      }
      r.inverse_ok = std::abs(r.fit.inverse - v.sign_relation * r.expected_inverse) < tol.blow_up;
      r.constant_ok = true;
    }
    v.records.push_back(std::move(r));
  }
  return v;
}

}  // namespace folicalc

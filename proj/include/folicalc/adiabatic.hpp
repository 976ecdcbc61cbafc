#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "folicalc/foliation.hpp"
#include "folicalc/framed_patch.hpp"

namespace folicalc {

/// Geometric eps grid eps_0, eps_0 r, ..., eps_0 r^{m-1}.
struct SweepPlan {
  double eps_start = 0.1;
  double ratio = 0.5;
  int count = 8;

  std::vector<double> grid() const;
  /// Throws std::invalid_argument unless 0 < ratio < 1, eps_start > 0 and
  /// count >= max(6, coefficients + 2).
  void validate(int coefficients) const;
};

struct SweepRow {
  double eps = 0.0;
  int point_id = 0;
  double value = 0.0;
};

using SweepTable = std::vector<SweepRow>;
using Observable = std::function<double(const Point&, double)>;

/// Rows ordered by point, then by decreasing eps. Observable failures are
/// rethrown with the offending eps and point attached.
SweepTable sweep(const SweepPlan& plan, const std::vector<Point>& points, const Observable& observable);

struct FitOptions {
  bool inverse_term = true;
  bool sqrt_term = false;
};

/// c_{-1}/eps + c_0 + c_1 eps + c_2 eps^2 (+ c_h sqrt(eps)).
struct LaurentFit {
  double inverse = 0.0;
  double constant = 0.0;
  double linear = 0.0;
  double quadratic = 0.0;
  double sqrt_term = 0.0;
  double residual_rms = 0.0;
  double condition = 0.0;
  std::vector<double> eps;
  std::vector<double> residuals;
};

inline constexpr double kMaxFitCondition = 1e12;

LaurentFit fit_laurent(const std::vector<double>& eps, const std::vector<double>& values, FitOptions options = {});

/// Fit of the rows of one point.
LaurentFit fit_laurent(const SweepTable& table, int point_id, FitOptions options = {});

/// Value at eps = 0 of the quadratic through the three smallest-eps samples.
double richardson_limit(const std::vector<double>& eps, const std::vector<double>& values);

void write_sweep_csv(std::ostream& out, const SweepTable& table);

struct LimitRecord {
  int point_id = 0;
  Point point;
  LaurentFit fit;
  double richardson = 0.0;
  double expected_constant = 0.0;  // k^F + Phi when integrable, else 0
  double expected_inverse = 0.0;   // 4B from the closed form when not integrable
  bool inverse_ok = false;
  bool constant_ok = false;
  bool passed() const { return inverse_ok && constant_ok; }
};

struct LimitValidation {
  std::string manifold;
  bool integrable = true;
  PhiVariant variant = PhiVariant::consistent;
  std::vector<LimitRecord> records;
  SweepTable table;
  /// Non-integrable case: sign(c_{-1}) * sign(4B) and the magnitude ratio
  /// |c_{-1}| / |4B| at the first point.
  double sign_relation = 0.0;
  double magnitude_ratio = 0.0;
  bool passed() const;
};

struct LimitTolerances {
  double inverse = 1e-6;
  double constant = 1e-5;
  double blow_up = 1e-4;
};

/// Sweeps k^eps over the points and checks the fitted coefficients against
/// the closed forms: k^F + Phi (integrable) or 4B up to a recorded global sign.
LimitValidation validate_limit(const FramedPatch& patch, const std::vector<Point>& points, const SweepPlan& plan,
                               PhiVariant variant = PhiVariant::consistent, LimitTolerances tol = {});

}  // namespace folicalc

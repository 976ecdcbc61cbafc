#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "folicalc/adiabatic.hpp"
#include "folicalc/errors.hpp"
#include "folicalc/geometry.hpp"
#include "folicalc/manifolds.hpp"

using namespace folicalc;
namespace mf = folicalc::manifolds;

namespace {

std::vector<double> sample(const std::vector<double>& eps, double (*f)(double)) {
  std::vector<double> out;
  for (double e : eps) out.push_back(f(e));
  return out;
}

}  // namespace

TEST_CASE("eps grid") {
  const SweepPlan plan;
  const auto g = plan.grid();
  REQUIRE(g.size() == 8);
  CHECK(g[0] == 0.1);
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] == doctest::Approx(0.5 * g[i - 1]).epsilon(1e-15));
  CHECK_NOTHROW(plan.validate(4));
  CHECK_THROWS_AS((SweepPlan{0.1, 1.0, 8}.validate(4)), std::invalid_argument);
  CHECK_THROWS_AS((SweepPlan{-0.1, 0.5, 8}.validate(4)), std::invalid_argument);
  CHECK_THROWS_AS((SweepPlan{0.1, 0.5, 5}.validate(4)), std::invalid_argument);
  CHECK_THROWS_AS((SweepPlan{0.1, 0.5, 6}.validate(5)), std::invalid_argument);
  CHECK_NOTHROW((SweepPlan{0.1, 0.5, 7}.validate(5)));
}

TEST_CASE("synthetic Laurent fits") {
  const auto eps = SweepPlan{}.grid();
  const LaurentFit a = fit_laurent(eps, sample(eps, [](double e) { return 3.0 + 2.0 * e; }));
  CHECK(std::abs(a.inverse) < 1e-10);
  CHECK(a.constant == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(a.linear == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(std::abs(a.quadratic) < 1e-6);
  CHECK(a.residual_rms < 1e-12);
  CHECK(a.condition < kMaxFitCondition);

  const LaurentFit b = fit_laurent(eps, sample(eps, [](double e) { return 5.0 / e - 1.0 + 0.25 * e * e; }));
  CHECK(b.inverse == doctest::Approx(5.0).epsilon(1e-10));
  CHECK(b.constant == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(std::abs(b.linear) < 1e-7);
  CHECK(b.quadratic == doctest::Approx(0.25).epsilon(1e-5));
  REQUIRE(b.residuals.size() == eps.size());

  const LaurentFit c = fit_laurent(eps, sample(eps, [](double e) { return 1.0 + 0.5 * std::sqrt(e) - e; }),
                                   FitOptions{false, true});
  CHECK(c.constant == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(c.sqrt_term == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(c.linear == doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("fit refusals") {
  const std::vector<double> few{0.1, 0.05, 0.025, 0.0125, 0.00625};
  CHECK_THROWS_AS(fit_laurent(few, std::vector<double>(few.size(), 1.0)), FitError);
  const std::vector<double> flat(8, 0.1);
  CHECK_THROWS_AS(fit_laurent(flat, std::vector<double>(8, 1.0)), FitError);
  CHECK_THROWS_AS(fit_laurent(std::vector<double>{0.1, 0.05}, std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("Richardson limit of a quadratic is exact") {
  const std::vector<double> eps{0.4, 0.2, 0.1, 0.05, 0.025};
  std::vector<double> v;
  for (double e : eps) v.push_back(7.0 - 3.0 * e + 11.0 * e * e);
  CHECK(richardson_limit(eps, v) == doctest::Approx(7.0).epsilon(1e-12));
}

TEST_CASE("sweep ordering, annotation and CSV") {
  const SweepPlan plan{0.2, 0.5, 6};
  const std::vector<Point> pts{{0.0}, {1.0}};
  const SweepTable t = sweep(plan, pts, [](const Point& x, double eps) { return x[0] + eps; });
  REQUIRE(t.size() == 12);
  CHECK(t[0].point_id == 0);
  CHECK(t[0].eps == 0.2);
  CHECK(t[5].eps == doctest::Approx(0.00625));
  CHECK(t[6].point_id == 1);
  CHECK(t[7].value == doctest::Approx(1.1));

  try {
    sweep(plan, pts, [](const Point& x, double eps) -> double {
      if (x[0] > 0.5 && eps < 0.03) throw DegeneracyError("boom");
      return 0.0;
    });
    FAIL("expected an error");
  } catch (const Error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("boom") != std::string::npos);
    CHECK(msg.find("eps") != std::string::npos);
    CHECK(msg.find("point 1") != std::string::npos);
  }

  std::ostringstream csv;
  write_sweep_csv(csv, t);
  const std::string text = csv.str();
  CHECK(text.rfind("eps,point_id,value\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 13);
}

TEST_CASE("flat torus null sweep") {
  const FramedPatch torus = mf::flat_torus();
  const auto start = std::chrono::steady_clock::now();
  for (const auto& x : sample_points(torus, 20))
    for (double eps : SweepPlan{}.grid()) CHECK(std::abs(curvature_snapshot(torus, eps, x).scalar_curvature()) < 1e-9);
  CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() < 5.0);
  const LimitValidation v = validate_limit(torus, sample_points(torus, 3), SweepPlan{});
  CHECK(v.passed());
  for (const auto& r : v.records) {
    CHECK(std::abs(r.fit.linear) < 1e-9);
    CHECK(std::abs(r.fit.quadratic) < 1e-9);
  }
}

TEST_CASE("limit cross-validation selects one defect reading") {
  for (const auto& patch : {mf::warped_product(), mf::sphere_times_circle(), mf::warped_surface()}) {
    INFO(patch.name);
    const auto pts = sample_points(patch, 4);
    const LimitValidation consistent = validate_limit(patch, pts, SweepPlan{}, PhiVariant::consistent);
    CHECK(consistent.integrable);
    CHECK(consistent.passed());
    for (const auto& r : consistent.records) {
      CHECK(std::abs(r.fit.inverse) < 1e-6);
      CHECK(std::abs(r.fit.constant - r.expected_constant) < 1e-5);
    }
    const LimitValidation literal = validate_limit(patch, pts, SweepPlan{}, PhiVariant::literal);
    // On S^2 x S^1 the twist vanishes and the readings coincide.
    if (patch.name == "s2xs1")
      CHECK(literal.passed());
    else
      CHECK_FALSE(literal.passed());
  }
}

TEST_CASE("grid halving leaves the fitted limit unchanged") {
  const FramedPatch patch = mf::warped_product();
  const auto pts = sample_points(patch, 2);
  const auto a = validate_limit(patch, pts, SweepPlan{0.1, 0.5, 8});
  const auto b = validate_limit(patch, pts, SweepPlan{0.05, 0.5, 8});
  for (std::size_t i = 0; i < pts.size(); ++i)
    CHECK(a.records[i].fit.constant == doctest::Approx(b.records[i].fit.constant).epsilon(1e-6));
}

TEST_CASE("Heisenberg blow-up is recorded with its sign relation") {
  const FramedPatch heis = mf::heisenberg();
  const LimitValidation v = validate_limit(heis, sample_points(heis, 3), SweepPlan{});
  CHECK_FALSE(v.integrable);
  for (const auto& r : v.records) {
    // [e1, e2] = e3 with |e3|^2 = 1/eps gives k^eps = -1/(2 eps).
    CHECK(r.fit.inverse == doctest::Approx(-0.5).epsilon(1e-9));
    CHECK(std::abs(r.fit.inverse) > 0.1);
    CHECK(r.expected_inverse == doctest::Approx(-1.5).epsilon(1e-10));
  }
  CHECK(v.sign_relation == 1.0);
  CHECK(v.magnitude_ratio == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
}

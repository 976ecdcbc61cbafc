#include <cmath>

#include "doctest.h"
#include "folicalc/clifford.hpp"
#include "folicalc/errors.hpp"
#include "folicalc/foliation.hpp"
#include "folicalc/geometry.hpp"
#include "folicalc/manifolds.hpp"
#include "oracles.hpp"

using namespace folicalc;
namespace mf = folicalc::manifolds;

namespace {

std::vector<FramedPatch> integrable_patches() {
  return {mf::flat_torus(), mf::sphere_times_circle(), mf::fibre_bundle(),
          mf::warped_product(), mf::warped_surface(), mf::hopf()};
}

double metric_value(const FramedPatch& patch, const Point& x, const std::vector<double>& u,
                    const std::vector<double>& v) {
  const auto jets = coordinate_jets(x);
  const RJetMatrix g = oracle::coordinate_metric(patch, 1.0, jets);
  double acc = 0.0;
  for (int i = 0; i < patch.dim; ++i)
    for (int j = 0; j < patch.dim; ++j) acc += u[i] * g(i, j).value() * v[j];
  return acc;
}

std::vector<double> frame_row(const FramedPatch& patch, const Point& x, int a) {
  const auto jets = coordinate_jets(x);
  const RJetMatrix e = patch.frame(jets);
  std::vector<double> out(patch.dim);
  for (int i = 0; i < patch.dim; ++i) out[i] = e(a, i).value();
  return out;
}

}  // namespace

TEST_CASE("integrability classification") {
  for (const auto& patch : integrable_patches())
    for (const auto& x : sample_points(patch, 5)) {
      INFO(patch.name);
      CHECK(is_integrable(patch, x));
      CHECK(integrability_defect(patch, x).total < 1e-20);
    }
  const FramedPatch heis = mf::heisenberg();
  for (const auto& x : sample_points(heis, 5)) {
    // [e1, e2] = e3 is a unit transverse vector, counted for both orders.
    const auto d = integrability_defect(heis, x);
    CHECK(d.entries(0, 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d.entries(1, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d.total == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_FALSE(is_integrable(heis, x));
  }
}

TEST_CASE("orthogonal splitting of tangent vectors") {
  for (const auto& patch : {mf::warped_product(), mf::fibre_bundle(), mf::heisenberg(), mf::hopf()})
    for (const auto& x : sample_points(patch, 3)) {
      std::vector<double> v(patch.dim);
      for (int i = 0; i < patch.dim; ++i) v[i] = 0.3 + 0.7 * i - 0.2 * i * i;
      const SplitVector s = projections(patch, x, v);
      for (int i = 0; i < patch.dim; ++i) CHECK(s.leaf[i] + s.transverse[i] == doctest::Approx(v[i]).epsilon(1e-12));
      for (int a = 0; a < patch.leaf_dim; ++a)
        CHECK(std::abs(metric_value(patch, x, frame_row(patch, x, a), s.transverse)) < 1e-12);
    }
}

TEST_CASE("Bott connection and its dual") {
  const FramedPatch hopf = mf::hopf();
  for (const auto& x : sample_points(hopf, 4)) {
    const auto leaf = frame_row(hopf, x, 0);
    const auto trans = projections(hopf, x, frame_row(hopf, x, 1)).transverse;
    const BottTriple t = bott_and_dual(hopf, x, leaf, trans);
    for (std::size_t s = 0; s < t.bott.size(); ++s) {
      CHECK(t.bott[s] == doctest::Approx(t.dual[s]).epsilon(1e-10));
      CHECK(t.hat[s] == doctest::Approx(0.5 * (t.bott[s] + t.dual[s])).epsilon(1e-12));
    }
    CHECK_THROWS_AS(bott_and_dual(hopf, x, trans, trans), PreconditionError);
    CHECK_THROWS_AS(bott_and_dual(hopf, x, leaf, leaf), PreconditionError);
  }
}

TEST_CASE("twist tensor by two independent routes") {
  for (const auto& patch : integrable_patches())
    for (const auto& x : sample_points(patch, 4)) {
      INFO(patch.name);
      const OmegaTensor a = omega_tensor(patch, x);
      const OmegaTensor b = omega_tensor_from_patch_frame(patch, x);
      REQUIRE(a.values.size() == b.values.size());
      for (std::size_t k = 0; k < a.values.size(); ++k) CHECK(std::abs(a.values[k] - b.values[k]) < 1e-10);
      for (int i = 0; i < a.leaf_dim; ++i)
        for (int s = 0; s < a.codim; ++s)
          for (int t = 0; t < a.codim; ++t) CHECK(std::abs(a(i, s, t) - a(i, t, s)) < 1e-12);
    }
}

TEST_CASE("twist tensor closed forms") {
  // dt^2 + w^2 dtheta^2: h = w^{-1} d/dtheta, [d/dt, h] = -(w'/w) h, so the
  // twist along d/dt is 2 w'/w.
  const FramedPatch surface = mf::warped_surface();
  for (const auto& x : sample_points(surface, 6)) {
    const double t = x[0];
    CHECK(omega_tensor(surface, x)(0, 0, 0) == doctest::Approx(2.0 * std::cos(t) / (2.0 + std::sin(t))).epsilon(1e-12));
  }
  for (const auto& patch : {mf::flat_torus(), mf::sphere_times_circle(), mf::fibre_bundle(), mf::hopf()})
    for (const auto& x : sample_points(patch, 4)) {
      INFO(patch.name);
      CHECK(omega_tensor(patch, x).max_abs() < 1e-12);
    }
  CHECK(omega_tensor(mf::warped_product(), sample_points(mf::warped_product(), 1)[0]).max_abs() > 0.05);
}

TEST_CASE("limit defect vanishes for bundle-like metrics") {
  for (const auto& patch : {mf::flat_torus(), mf::sphere_times_circle(), mf::fibre_bundle(), mf::hopf()})
    for (const auto& x : sample_points(patch, 6))
      for (auto v : {PhiVariant::consistent, PhiVariant::literal}) {
        INFO(patch.name);
        CHECK(std::abs(phi_omega(patch, x, v)) < 1e-8);
      }
}

TEST_CASE("limit defect variants differ on a twisted family") {
  const FramedPatch warped = mf::warped_product();
  double gap = 0.0;
  for (const auto& x : sample_points(warped, 6))
    gap = std::max(gap, std::abs(phi_omega(warped, x, PhiVariant::consistent) - phi_omega(warped, x, PhiVariant::literal)));
  CHECK(gap > 1e-3);
  CHECK(parse_phi_variant("literal") == PhiVariant::literal);
  CHECK(parse_phi_variant(to_string(PhiVariant::consistent)) == PhiVariant::consistent);
  CHECK_THROWS(parse_phi_variant("other"));
  CHECK_THROWS_AS(phi_omega(mf::heisenberg(), Point{0.1, 0.2, 0.3}), PreconditionError);
}

TEST_CASE("leaf scalar curvature closed forms") {
  for (const auto& x : sample_points(mf::sphere_times_circle(), 5))
    CHECK(leaf_scalar_curvature(mf::sphere_times_circle(), x) == doctest::Approx(2.0).epsilon(1e-9));
  // Conformal leaf metric exp(phi) I on a flat surface: k = -exp(-phi) Laplacian(phi).
  for (const auto& x : sample_points(mf::fibre_bundle(), 5)) {
    const double phi = 0.6 * std::sin(x[0]) * std::cos(x[2]);
    CHECK(leaf_scalar_curvature(mf::fibre_bundle(), x) == doctest::Approx(phi * std::exp(-phi)).epsilon(1e-10));
  }
  for (const auto& x : sample_points(mf::warped_product(), 5)) {
    const double phi = 0.6 * std::sin(x[0]);
    CHECK(leaf_scalar_curvature(mf::warped_product(), x) == doctest::Approx(phi * std::exp(-phi)).epsilon(1e-10));
  }
  for (const auto& x : sample_points(mf::hopf(), 3)) CHECK(std::abs(leaf_scalar_curvature(mf::hopf(), x)) < 1e-12);
  CHECK_THROWS_AS(leaf_scalar_curvature(mf::heisenberg(), Point{0.0, 0.0, 0.0}), PreconditionError);
}

TEST_CASE("non-integrable blow-up invariant") {
  for (const auto& patch : integrable_patches())
    for (const auto& x : sample_points(patch, 4)) {
      INFO(patch.name);
      CHECK(std::abs(b_invariant(patch, x).value()) < 1e-8);
    }
  const FramedPatch heis = mf::heisenberg();
  for (const auto& x : sample_points(heis, 4)) {
    const BInvariant b = b_invariant(heis, x);
    const double defect = integrability_defect(heis, x).total;
    CHECK(b.defect_total == doctest::Approx(defect).epsilon(1e-12));
    CHECK(b.four_b == doctest::Approx(-0.75 * defect).epsilon(1e-10));
    CHECK(b.value() == doctest::Approx(0.25 * b.four_b));
  }
}

TEST_CASE("averaged transverse curvature by two routes") {
  for (const auto& patch : {mf::warped_product(), mf::fibre_bundle(), mf::sphere_times_circle(), mf::flat_torus()})
    for (const auto& x : sample_points(patch, 3)) {
      INFO(patch.name);
      const HatCurvature direct = hat_curvature(patch, x);
      const HatCurvature assembled = hat_curvature_from_omega(patch, x);
      REQUIRE(direct.values.size() == assembled.values.size());
      for (std::size_t k = 0; k < direct.values.size(); ++k)
        CHECK(std::abs(direct.values[k] - assembled.values[k]) < 1e-9);
      const int p = patch.leaf_dim;
      const int q = patch.codim();
      for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j)
          for (int t = 0; t < q; ++t)
            for (int s = 0; s < q; ++s) {
              CHECK(std::abs(direct(i, j, t, s) + direct(j, i, t, s)) < 1e-10);
              CHECK(hat_curvature_limit(patch, x, i, j, s, t) == doctest::Approx(direct(i, j, t, s)).epsilon(1e-12));
            }
    }
}

TEST_CASE("vanishing certificate") {
  const FramedPatch s2s1 = mf::sphere_times_circle();
  for (const auto& x : sample_points(s2s1, 4)) {
    const CertificateReport r = certificate_A(s2s1, x);
    CHECK(r.a_value == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(r.positive());
    CHECK(std::abs(r.b_value) < 1e-8);
  }
  for (const auto& x : sample_points(mf::flat_torus(), 2)) CHECK(std::abs(certificate_A(mf::flat_torus(), x).a_value) < 1e-10);
  const FramedPatch warped = mf::warped_product();
  for (const auto& x : sample_points(warped, 3)) {
    const CertificateReport r = certificate_A(warped, x);
    const auto rep = build_rep(warped.leaf_dim, warped.codim());
    const double norm = spectral_norm(hat_curvature_term(rep, hat_curvature(warped, x)));
    CHECK(r.a_value == doctest::Approx(0.25 * (r.leaf_curvature + r.phi) - norm).epsilon(1e-12));
  }
  CHECK_THROWS_AS(certificate_A(mf::heisenberg(), Point{0.0, 0.0, 0.0}), PreconditionError);
  CHECK_THROWS_AS(certificate_A(mf::hopf(), Point{0.1, 0.0, 0.0}), UnsupportedError);
}

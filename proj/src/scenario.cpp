#include "folicalc/scenario.hpp"

#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "folicalc/clifford.hpp"
#include "folicalc/geometry.hpp"
#include "folicalc/manifolds.hpp"
#include "folicalc/residue.hpp"

namespace folicalc {

namespace {

using P = Provenance;

const std::vector<double> kTraceGrid{1.0, 0.1, 0.01};
const std::vector<double> kBlockGrid{1e-1, 1e-2, 1e-3, 1e-4};
constexpr double kHomothety = 2.5;

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json point_json(const Point& p) {
  Json a = Json::array();
  for (double v : p) a.push_back(number(v));
  return a;
}

KnownFact fact_or(const RegistryEntry& e, const std::string& formula, KnownFact fallback) {
  if (const KnownFact* f = e.fact(formula)) return *f;
  fallback.formula = formula;
  return fallback;
}

void assert_value(Report& r, const std::string& manifold, int point_id, const Point& point, double value,
                  const KnownFact& spec, const std::string& relation = "within", const std::string& extra = "") {
  Assertion a;
  a.manifold = manifold;
  a.formula = spec.formula;
  a.point_id = point_id;
  a.point = point;
  a.value = value;
  a.expected = spec.expected;
  a.tolerance = spec.tolerance;
  a.provenance = spec.provenance;
  a.relation = relation;
  a.note = extra.empty() ? spec.note : (spec.note.empty() ? extra : spec.note + "; " + extra);
  if (relation == "exceeds")
    a.passed = std::isfinite(value) && std::abs(value) > spec.expected;
  else
    a.passed = std::isfinite(value) && std::abs(value - spec.expected) <= spec.tolerance;
  r.assertions.push_back(std::move(a));
}

void measure(Report& r, const std::string& manifold, const std::string& formula, int point_id, const Point& point,
             double value, const std::string& note = "") {
  Assertion a;
  a.manifold = manifold;
  a.formula = formula;
  a.point_id = point_id;
  a.point = point;
  a.value = value;
  a.expected = value;
  a.relation = "reported";
  a.passed = true;
  a.note = note;
  r.measurements.push_back(std::move(a));
}

void record_error(Report& r, const std::string& manifold, const std::string& formula, const std::exception& e) {
  Assertion a;
  a.manifold = manifold;
  a.formula = formula;
  a.value = std::nan("");
  a.expected = 0.0;
  a.relation = "error";
  a.passed = false;
  a.note = e.what();
  r.assertions.push_back(std::move(a));
}

FramedPatch framed_patch(const RegistryEntry& e, bool inject_fault) {
  if (!e.framed) throw UsageError("'" + e.id + "' is a complex patch; use complex-trace");
  if (inject_fault && e.id == "hopf") {
    FramedPatch p = manifolds::perturbed_hopf();
    p.name = e.id;
    return p;
  }
  return e.framed();
}

Json fit_json(const LaurentFit& f) {
  return Json{{"inverse", number(f.inverse)},   {"constant", number(f.constant)},
              {"linear", number(f.linear)},     {"quadratic", number(f.quadratic)},
              {"residual_rms", number(f.residual_rms)}, {"condition", number(f.condition)}};
}

void blow_up_checks(Report& r, const RegistryEntry& e, const LimitValidation& v) {
  for (const LimitRecord& rec : v.records) {
    assert_value(r, e.id, rec.point_id, rec.point, rec.fit.inverse,
                 fact_or(e, "limit.inverse_magnitude", {"", 0.1, 0.0, P::derived, "the 1/eps coefficient is nonzero"}),
                 "exceeds");
    const double four_b = rec.expected_inverse;
    const double rel = std::abs(four_b) > 0.0 ? std::abs(std::abs(rec.fit.inverse) - std::abs(four_b)) / std::abs(four_b)
                                              : std::nan("");
    std::ostringstream note;
    note << "c_-1 = " << format_double(rec.fit.inverse) << ", 4B = " << format_double(four_b)
         << ", sign relation " << (v.sign_relation >= 0 ? "+1" : "-1") << ", |c_-1|/|4B| = "
         << format_double(v.magnitude_ratio);
    assert_value(r, e.id, rec.point_id, rec.point, rel,
                 fact_or(e, "limit.blow_up_relation", {"", 0.0, 1e-3, P::derived, "|c_-1| against |4B|"}), "within",
                 note.str());
  }
}

LimitValidation limit_checks(Report& r, const RegistryEntry& e, const FramedPatch& patch, const ScenarioConfig& cfg) {
  if (patch.codim() == 0) throw UsageError("'" + e.id + "' has no transverse directions to rescale");
  const auto pts = sample_points(patch, cfg.points);
  const LimitValidation v = validate_limit(patch, pts, cfg.plan, cfg.variant, LimitTolerances{1e-6, cfg.tol, 1e-4});
  Json per_point = Json::array();
  for (const LimitRecord& rec : v.records) {
    per_point.push_back({{"point_id", rec.point_id},
                         {"point", point_json(rec.point)},
                         {"fit", fit_json(rec.fit)},
                         {"richardson", number(rec.richardson)},
                         {"expected_constant", number(rec.expected_constant)},
                         {"expected_inverse", number(rec.expected_inverse)}});
    if (!v.integrable) continue;
    assert_value(r, e.id, rec.point_id, rec.point, rec.fit.inverse,
                 fact_or(e, "limit.inverse", {"", 0.0, 1e-6, P::derived, "integrable distribution"}));
    assert_value(r, e.id, rec.point_id, rec.point, rec.fit.constant,
                 {"limit.constant.closed_form", rec.expected_constant, cfg.tol, P::derived,
                  "k^F + Phi (" + to_string(cfg.variant) + " reading)"});
    for (const char* name : {"limit.constant", "limit.linear", "limit.quadratic"})
      if (const KnownFact* f = e.fact(name)) {
        const double value = std::string(name) == "limit.constant" ? rec.fit.constant
                             : std::string(name) == "limit.linear" ? rec.fit.linear
                                                                   : rec.fit.quadratic;
        assert_value(r, e.id, rec.point_id, rec.point, value, *f);
      }
  }
  if (!v.integrable) blow_up_checks(r, e, v);
  r.details["limit"][e.id] = Json{{"integrable", v.integrable},
                                  {"variant", to_string(cfg.variant)},
                                  {"sign_relation", number(v.sign_relation)},
                                  {"magnitude_ratio", number(v.magnitude_ratio)},
                                  {"points", per_point}};
  std::ostringstream csv;
  write_sweep_csv(csv, v.table);
  r.tables["sweep.csv"] = csv.str();
  return v;
}

void b_invariant_checks(Report& r, const RegistryEntry& e, const FramedPatch& patch, const ScenarioConfig& cfg,
                        bool sweep_cross_check = true) {
  const auto pts = sample_points(patch, cfg.points);
  bool integrable = true;
  for (std::size_t id = 0; id < pts.size(); ++id) {
    const int pid = static_cast<int>(id);
    const BInvariant b = b_invariant(patch, pts[id]);
    integrable = integrable && is_integrable(patch, pts[id]);
    measure(r, e.id, "b_invariant.defect_total", pid, pts[id], b.defect_total);
    measure(r, e.id, "b_invariant.leaf_of_transverse", pid, pts[id], b.leaf_of_transverse);
    measure(r, e.id, "b_invariant.transverse_of_leaf", pid, pts[id], b.transverse_of_leaf);
    if (is_integrable(patch, pts[id]))
      assert_value(r, e.id, pid, pts[id], b.value(),
                   fact_or(e, "b_invariant", {"", 0.0, 1e-8, P::trivial, "integrable distribution"}));
    else if (const KnownFact* f = e.fact("b_invariant.four_b"))
      assert_value(r, e.id, pid, pts[id], b.four_b, *f);
    else
      measure(r, e.id, "b_invariant.four_b", pid, pts[id], b.four_b);
  }
  if (sweep_cross_check && !integrable && patch.codim() > 0) limit_checks(r, e, patch, cfg);
}

void certificate_checks(Report& r, const RegistryEntry& e, const FramedPatch& patch, const ScenarioConfig& cfg) {
  const auto pts = sample_points(patch, cfg.points);
  for (std::size_t id = 0; id < pts.size(); ++id) {
    const int pid = static_cast<int>(id);
    const CertificateReport c = certificate_A(patch, pts[id], cfg.variant);
    measure(r, e.id, "certificate.leaf_curvature", pid, pts[id], c.leaf_curvature);
    measure(r, e.id, "certificate.phi", pid, pts[id], c.phi);
    measure(r, e.id, "certificate.curvature_term_norm", pid, pts[id], c.curvature_term_norm);
    measure(r, e.id, "certificate.b_value", pid, pts[id], c.b_value);
    if (const KnownFact* f = e.fact("certificate"))
      assert_value(r, e.id, pid, pts[id], c.a_value, *f, "within", c.positive() ? "A > 0" : "A <= 0");
    else
      measure(r, e.id, "certificate", pid, pts[id], c.a_value, c.positive() ? "A > 0" : "A <= 0");
  }
}

void residue_checks(Report& r, const RegistryEntry& e, const FramedPatch& patch, const ScenarioConfig& cfg) {
  const auto pts = sample_points(patch, cfg.points);
  if (patch.codim() == 0) {
    const KnownFact* ratio = e.fact("residue.density_ratio");
    if (!ratio) throw UsageError("'" + e.id + "' has no closed-form residue density on record");
    for (std::size_t id = 0; id < pts.size(); ++id) {
      const ResidueDensity d = residue_density(patch, pts[id], 1.0);
      assert_value(r, e.id, static_cast<int>(id), pts[id], d.density / d.c0, *ratio);
    }
    return;
  }
  if (!patch.has_fundamental_domain()) throw UsageError("'" + e.id + "' is a chart without a fundamental domain");
  const double half_q = 0.5 * patch.codim();

  const KkwResult k = kkw_limit(patch, cfg.plan, cfg.variant);
  assert_value(r, e.id, -1, {}, k.fit.inverse, {"kkw.inverse", 0.0, 1e-6, P::derived, "no blow-up for integrable F"});
  for (const char* name : {"kkw.lhs", "kkw.rhs"})
    if (const KnownFact* f = e.fact(name)) assert_value(r, e.id, -1, {}, std::string(name) == "kkw.lhs" ? k.lhs : k.rhs, *f);
  if (std::max(std::abs(k.lhs), std::abs(k.rhs)) > 1e-8)
    assert_value(r, e.id, -1, {}, k.relative_gap,
                 fact_or(e, "kkw.relative_gap", {"", 0.0, 1e-3, P::derived, "residue limit against the closed form"}));
  else
    assert_value(r, e.id, -1, {}, k.absolute_gap, {"kkw.absolute_gap", 0.0, 1e-8, P::derived, "both sides vanish"});
  Json scaled = Json::array();
  for (double v : k.scaled_residue) scaled.push_back(number(v));
  Json eps = Json::array();
  for (double v : k.eps) eps.push_back(number(v));
  r.details["residue"][e.id] = Json{{"eps", eps},          {"scaled_residue", scaled}, {"fit", fit_json(k.fit)},
                                    {"lhs", number(k.lhs)}, {"rhs", number(k.rhs)},    {"rank", number(k.rank)},
                                    {"c0", number(k.c0)},   {"worst_quadrature_change", number(k.worst_quadrature_change)}};

  const double base = total_volume(patch, 1.0).value;
  for (double eps : cfg.plan.grid())
    assert_value(r, e.id, -1, {}, std::pow(eps, half_q) * total_volume(patch, eps).value / base - 1.0,
                 {"volume.scaling", 0.0, 1e-10, P::trivial, "eps = " + format_double(eps)});

  std::ostringstream csv;
  csv << "eps,point_id,scalar_curvature,trace_q,density\n";
  SweepTable trace_q;
  for (std::size_t id = 0; id < pts.size(); ++id)
    for (double eps : cfg.plan.grid()) {
      const ResidueDensity d = residue_density(patch, pts[id], eps);
      trace_q.push_back({eps, static_cast<int>(id), d.trace_q});
      csv << format_double(eps) << ',' << id << ',' << format_double(d.scalar_curvature) << ','
          << format_double(d.trace_q) << ',' << format_double(d.density) << '\n';
    }
  for (std::size_t id = 0; id < pts.size(); ++id)
    assert_value(r, e.id, static_cast<int>(id), pts[id], fit_laurent(trace_q, static_cast<int>(id)).constant,
                 {"trace_q.limit", 0.0, 1e-6, P::derived, "fitted limit of the endomorphism trace"});
  r.tables["density.csv"] = csv.str();
}

void complex_checks(Report& r, const RegistryEntry& e, const ScenarioConfig& cfg) {
  if (!e.complex) throw UsageError("'" + e.id + "' is not a complex patch");
  const ComplexPatch patch = e.complex();
  const auto pts = sample_points(patch, cfg.points);
  std::ostringstream csv;
  csv << "point_id,source,eps,u,v,re,im\n";
  auto rows = [&csv](std::size_t id, const std::string& source, const std::string& eps, const Eigen::MatrixXcd& m) {
    for (int u = 0; u < m.rows(); ++u)
      for (int v = u + 1; v < m.cols(); ++v)
        csv << id << ',' << source << ',' << eps << ',' << u << ',' << v << ',' << format_double(m(u, v).real()) << ','
            << format_double(m(u, v).imag()) << '\n';
  };
  Eigen::MatrixXd first_components;
  for (std::size_t id = 0; id < pts.size(); ++id) {
    const int pid = static_cast<int>(id);
    const Point& x = pts[id];
    const TraceSplit s = trace_curvature_split(patch, x, kTraceGrid);
    assert_value(r, e.id, pid, x, s.eps_variation,
                 fact_or(e, "trace.eps_variation", {"", 0.0, 1e-8, P::derived, "independent of eps"}));
    assert_value(r, e.id, pid, x, s.split_error, fact_or(e, "trace.split", {"", 0.0, 1e-8, P::derived, "exact split"}));
    assert_value(r, e.id, pid, x, s.bianchi_error,
                 fact_or(e, "trace.bianchi", {"", 0.0, 1e-9, P::derived, "delbar of the connection trace"}));
    if (const KnownFact* f = e.fact("trace.total")) {
      double worst = 0.0;
      for (const auto& t : s.total) worst = std::max(worst, t.cwiseAbs().maxCoeff());
      assert_value(r, e.id, pid, x, worst, *f);
    }
    rows(id, "leaf", "", s.leaf);
    rows(id, "transverse", "", s.transverse);
    for (std::size_t k = 0; k < s.eps.size(); ++k) rows(id, "total", format_double(s.eps[k]), s.total[k]);

    try {
      const KahlerReport k = kahler_form_components(patch, x);
      assert_value(r, e.id, pid, x, k.leaf_component_max,
                   fact_or(e, "kahler.leaf_components", {"", 0.0, 1e-10, P::derived, "leaf components vanish"}));
      assert_value(r, e.id, pid, x, k.twisted_derivative_max,
                   fact_or(e, "kahler.twisted_derivative", {"", 0.0, 1e-10, P::derived, "on (f,f,f) and (f,f,h)"}));
      assert_value(r, e.id, pid, x, k.double_derivative_max,
                   fact_or(e, "kahler.double_derivative", {"", 0.0, 1e-10, P::derived, "on (f,f,f,f) and (f,f,f,h)"}));
      measure(r, e.id, "kahler.leaf_cross", pid, x, k.leaf_cross_max);
      if (id == 0) first_components = k.components;
      if (const KnownFact* f = e.fact("kahler.transverse_constant"))
        assert_value(r, e.id, pid, x, (k.components - first_components).cwiseAbs().maxCoeff(), *f);
    } catch (const StructuralError& err) {
      record_error(r, e.id, "kahler.leaf_components", err);
    }

    const BlockLimit bl = block_limit(patch, x, kBlockGrid);
    measure(r, e.id, "block_limit.leaf_exponent", pid, x, bl.leaf_exponent);
    measure(r, e.id, "block_limit.off_diagonal_exponent", pid, x, bl.off_diagonal_exponent);
    measure(r, e.id, "block_limit.transverse_exponent", pid, x, bl.transverse_exponent);
  }
  r.tables["trace.csv"] = csv.str();
}

/// Pointwise facts that need no sweep: curvature values, defects, homothety.
void pointwise_checks(Report& r, const RegistryEntry& e, const FramedPatch& patch, const ScenarioConfig& cfg) {
  const auto pts = sample_points(patch, cfg.points);
  if (const KnownFact* f = e.fact("k_eps")) {
    double worst = 0.0;
    for (const auto& x : sample_points(patch, 20))
      for (double eps : cfg.plan.grid())
        worst = std::max(worst, std::abs(curvature_snapshot(patch, eps, x).scalar_curvature()));
    assert_value(r, e.id, -1, {}, worst, *f, "within", "max over 20 points and the eps grid");
  }
  for (std::size_t id = 0; id < pts.size(); ++id) {
    const int pid = static_cast<int>(id);
    const Point& x = pts[id];
    const double k = curvature_snapshot(patch, 1.0, x).scalar_curvature();
    if (const KnownFact* f = e.fact("scalar_curvature")) assert_value(r, e.id, pid, x, k, *f);
    if (const KnownFact* f = e.fact("homothety"))
      assert_value(r, e.id, pid, x, kHomothety * curvature_snapshot(homothetic(patch, kHomothety), 1.0, x).scalar_curvature() - k,
                   *f);
    if (const KnownFact* f = e.fact("leaf_curvature")) assert_value(r, e.id, pid, x, leaf_scalar_curvature(patch, x), *f);
    if (const KnownFact* f = e.fact("phi")) assert_value(r, e.id, pid, x, phi_omega(patch, x, cfg.variant), *f);
  }
}

void variant_adjudication(Report& r, const RegistryEntry& e, const FramedPatch& patch, const ScenarioConfig& cfg) {
  const KnownFact* f = e.fact("variant_adjudication");
  if (!f) return;
  const auto pts = sample_points(patch, cfg.points);
  int passing = 0;
  std::string names;
  Json detail = Json::object();
  for (PhiVariant v : {PhiVariant::literal, PhiVariant::consistent}) {
    const LimitValidation lv = validate_limit(patch, pts, cfg.plan, v, LimitTolerances{1e-6, cfg.tol, 1e-4});
    double worst = 0.0;
    for (const auto& rec : lv.records) worst = std::max(worst, std::abs(rec.fit.constant - rec.expected_constant));
    detail[to_string(v)] = Json{{"passed", lv.passed()}, {"worst_constant_gap", number(worst)}};
    if (lv.passed()) {
      ++passing;
      names += (names.empty() ? "" : ",") + to_string(v);
    }
  }
  r.details["variant_adjudication"][e.id] = detail;
  assert_value(r, e.id, -1, {}, passing, *f, "within", "passing: " + (names.empty() ? std::string("none") : names));
}

void clifford_checks(Report& r) {
  for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {4, 2}}) {
    const std::string id = "clifford(" + std::to_string(p) + "," + std::to_string(q) + ")";
    const CliffordRep rep = build_rep(p, q);
    assert_value(r, id, -1, {}, rep.rank,
                 {"clifford.rank", std::pow(2.0, p / 2 + q), 0.0, P::trivial, "2^(p/2 + q)"});
    assert_value(r, id, -1, {}, anticommutation_defect(rep),
                 {"clifford.anticommutation", 0.0, 0.0, P::trivial, "exact integer entries"});
    const TraceIdentityReport t = trace_identities(rep);
    assert_value(r, id, -1, {}, std::max(t.worst_quadratic, t.worst_quartic),
                 {"clifford.trace_identities", 0.0, 0.0, P::literature, std::to_string(t.checked) + " words checked"});
  }
}

bool even_leaf_rank(const FramedPatch& p) { return p.leaf_dim > 0 && p.leaf_dim % 2 == 0; }

void run_entry_suite(Report& r, const RegistryEntry& e, const ScenarioConfig& cfg) {
  auto guarded = [&](const std::string& what, auto&& body) {
    try {
      body();
    } catch (const std::exception& err) {
      record_error(r, e.id, what + ".error", err);
    }
  };
  if (e.is_complex()) {
    guarded("complex-trace", [&] { complex_checks(r, e, cfg); });
    return;
  }
  const FramedPatch patch = framed_patch(e, cfg.inject_fault);
  guarded("pointwise", [&] { pointwise_checks(r, e, patch, cfg); });
  if (patch.codim() > 0) {
    guarded("limit", [&] { limit_checks(r, e, patch, cfg); });
    guarded("b-invariant", [&] { b_invariant_checks(r, e, patch, cfg, false); });
  }
  if (e.integrable && even_leaf_rank(patch) && patch.codim() > 0)
    guarded("certificate", [&] { certificate_checks(r, e, patch, cfg); });
  const bool residue_ok = patch.dim % 2 == 0 && patch.dim >= 4 && even_leaf_rank(patch) &&
                          (patch.codim() == 0 ? e.fact("residue.density_ratio") != nullptr
                                              : patch.has_fundamental_domain() && e.integrable);
  if (residue_ok) guarded("residue", [&] { residue_checks(r, e, patch, cfg); });
  guarded("variant-adjudication", [&] { variant_adjudication(r, e, patch, cfg); });
}

Json assertion_json(const Assertion& a, bool verdict) {
  Json j{{"manifold", a.manifold}, {"formula", a.formula}, {"point_id", a.point_id}, {"point", point_json(a.point)},
         {"value", number(a.value)}};
  if (verdict) {
    j["expected"] = number(a.expected);
    j["tolerance"] = number(a.tolerance);
    j["relation"] = a.relation;
    j["passed"] = a.passed;
  }
  j["provenance"] = to_string(a.provenance);
  if (!a.note.empty()) j["note"] = a.note;
  return j;
}

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::limit: return "limit";
    case Command::b_invariant: return "b-invariant";
    case Command::certificate: return "certificate";
    case Command::residue: return "residue";
    case Command::complex_trace: return "complex-trace";
    case Command::selfcheck: return "selfcheck";
  }
  return "limit";
}

Command parse_command(const std::string& name) {
  for (Command c : {Command::limit, Command::b_invariant, Command::certificate, Command::residue,
                    Command::complex_trace, Command::selfcheck})
    if (to_string(c) == name) return c;
  throw UsageError("unknown command '" + name + "'");
}

void ScenarioConfig::validate() const {
  if (command != Command::selfcheck) {
    if (manifold.empty()) throw UsageError("--manifold is required for " + to_string(command));
    find_entry(manifold);
  }
  if (!(tol > 0.0)) throw UsageError("tolerance must be positive");
  if (points < 1) throw UsageError("at least one sample point is required");
  try {
    plan.validate(4);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

Json ScenarioConfig::to_json() const {
  return Json{{"command", to_string(command)},
              {"manifold", manifold},
              {"eps_start", plan.eps_start},
              {"eps_ratio", plan.ratio},
              {"eps_count", plan.count},
              {"points", points},
              {"tol", tol},
              {"variant", to_string(variant)},
              {"inject_fault", inject_fault}};
}

void ScenarioConfig::merge(const Json& j) {
  try {
    if (j.contains("command")) command = parse_command(j.at("command").get<std::string>());
    if (j.contains("manifold")) manifold = j.at("manifold").get<std::string>();
    if (j.contains("eps_start")) plan.eps_start = j.at("eps_start").get<double>();
    if (j.contains("eps_ratio")) plan.ratio = j.at("eps_ratio").get<double>();
    if (j.contains("eps_count")) plan.count = j.at("eps_count").get<int>();
    if (j.contains("points")) points = j.at("points").get<int>();
    if (j.contains("tol")) tol = j.at("tol").get<double>();
    if (j.contains("variant")) variant = parse_phi_variant(j.at("variant").get<std::string>());
    if (j.contains("inject_fault")) inject_fault = j.at("inject_fault").get<bool>();
    if (j.contains("out")) out_dir = j.at("out").get<std::string>();
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(std::string("bad config: ") + e.what());
  }
}

bool Report::passed() const {
  for (const Assertion& a : assertions)
    if (!a.passed) return false;
  return !assertions.empty();
}

std::vector<const Assertion*> Report::failures() const {
  std::vector<const Assertion*> out;
  for (const Assertion& a : assertions)
    if (!a.passed) out.push_back(&a);
  return out;
}

Json Report::to_json(const std::string& generated_at) const {
  Json j;
  j["command"] = command;
  j["manifold"] = manifold;
  j["passed"] = passed();
  j["config"] = config;
  Json failed = Json::array();
  for (const Assertion* a : failures()) failed.push_back(assertion_json(*a, true));
  j["failures"] = failed;
  Json all = Json::array();
  for (const Assertion& a : assertions) all.push_back(assertion_json(a, true));
  j["assertions"] = all;
  Json ms = Json::array();
  for (const Assertion& a : measurements) ms.push_back(assertion_json(a, false));
  j["measurements"] = ms;
  j["details"] = details;
  j["metadata"] = Json{{"tool", "folicalc"}, {"generated_at", generated_at}};
  return j;
}

Report run(const ScenarioConfig& cfg) {
  cfg.validate();
  if (cfg.command == Command::selfcheck) return registry_selfcheck(cfg.inject_fault);
  const RegistryEntry& e = find_entry(cfg.manifold);
  Report r;
  r.command = to_string(cfg.command);
  r.manifold = cfg.manifold;
  r.config = cfg.to_json();
  try {
    switch (cfg.command) {
      case Command::limit: limit_checks(r, e, framed_patch(e, cfg.inject_fault), cfg); break;
      case Command::b_invariant: b_invariant_checks(r, e, framed_patch(e, cfg.inject_fault), cfg); break;
      case Command::certificate: certificate_checks(r, e, framed_patch(e, cfg.inject_fault), cfg); break;
      case Command::residue: residue_checks(r, e, framed_patch(e, cfg.inject_fault), cfg); break;
      case Command::complex_trace: complex_checks(r, e, cfg); break;
      case Command::selfcheck: break;
    }
  } catch (const UsageError&) {
    throw;
  } catch (const PreconditionError& err) {
    throw UsageError(to_string(cfg.command) + " does not apply to '" + e.id + "': " + err.what());
  } catch (const UnsupportedError& err) {
    throw UsageError(to_string(cfg.command) + " does not apply to '" + e.id + "': " + err.what());
  } catch (const Error& err) {
    record_error(r, e.id, to_string(cfg.command) + ".error", err);
  }
  return r;
}

Report registry_selfcheck(bool inject_fault) {
  ScenarioConfig cfg;
  cfg.command = Command::selfcheck;
  cfg.points = 3;
  cfg.inject_fault = inject_fault;
  Report r;
  r.command = "selfcheck";
  r.manifold = "all";
  r.config = cfg.to_json();
  for (const RegistryEntry& e : registry()) run_entry_suite(r, e, cfg);
  clifford_checks(r);
  r.tables.clear();
  return r;
}

void write_outputs(const Report& report, const std::string& dir, const std::string& generated_at) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::ofstream(fs::path(dir) / "report.json") << report.to_json(generated_at).dump(2) << '\n';
  for (const auto& [name, text] : report.tables) std::ofstream(fs::path(dir) / name) << text;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace folicalc

#include <algorithm>

#include "folicalc/manifolds.hpp"
#include "folicalc/scenario.hpp"

namespace folicalc {

namespace {

namespace mf = manifolds;
namespace cm = complex_manifolds;
using P = Provenance;

std::vector<RegistryEntry> build_registry() {
  std::vector<RegistryEntry> r;

  r.push_back({"flat-torus", mf::flat_torus, {}, true, true,
               {{"k_eps", 0.0, 1e-9, P::trivial, "flat metric for every eps"},
                {"leaf_curvature", 0.0, 1e-9, P::trivial, "flat leaves"},
                {"phi", 0.0, 1e-8, P::literature, "bundle-like metric, A = k^F/4"},
                {"limit.inverse", 0.0, 1e-6, P::trivial, "flat metric"},
                {"limit.constant", 0.0, 1e-9, P::trivial, "flat metric"},
                {"limit.linear", 0.0, 1e-9, P::trivial, "flat metric"},
                {"limit.quadratic", 0.0, 1e-9, P::trivial, "flat metric"},
                {"b_invariant", 0.0, 1e-8, P::trivial, "integrable distribution"},
                {"certificate", 0.0, 1e-9, P::trivial, "flat metric"},
                {"kkw.lhs", 0.0, 1e-8, P::trivial, "flat metric"},
                {"kkw.rhs", 0.0, 1e-8, P::trivial, "flat metric"}}});

  r.push_back({"s2xs1", mf::sphere_times_circle, {}, true, true,
               {{"leaf_curvature", 2.0, 1e-9, P::trivial, "unit round S^2"},
                {"phi", 0.0, 1e-8, P::literature, "bundle-like metric, A = k^F/4"},
                {"limit.constant", 2.0, 1e-5, P::literature, "limit equals k^F for bundle-like metrics"},
                {"b_invariant", 0.0, 1e-8, P::trivial, "integrable distribution"},
                {"certificate", 0.5, 1e-8, P::derived, "k^F/4 with a vanishing curvature term"}}});

  r.push_back({"fibre-bundle", mf::fibre_bundle, {}, true, true,
               {{"phi", 0.0, 1e-8, P::literature, "fibre bundle with bundle-like metric"},
                {"b_invariant", 0.0, 1e-8, P::trivial, "integrable distribution"},
                {"kkw.rhs", 0.0, 1e-8, P::derived, "leaf curvature of a torus fibre integrates to zero"}}});

  r.push_back({"warped-product", mf::warped_product, {}, true, false,
               {{"b_invariant", 0.0, 1e-8, P::trivial, "integrable distribution"},
                {"variant_adjudication", 1.0, 0.0, P::derived, "exactly one reading of the limit defect passes"},
                {"kkw.relative_gap", 0.0, 1e-3, P::derived, "residue limit against the integrated closed form"}}});

  r.push_back({"warped-surface", mf::warped_surface, {}, true, false,
               {{"b_invariant", 0.0, 1e-8, P::trivial, "integrable distribution"},
                {"variant_adjudication", 1.0, 0.0, P::derived, "exactly one reading of the limit defect passes"}}});

  r.push_back({"hopf", mf::hopf, {}, true, true,
               {{"leaf_curvature", 0.0, 1e-9, P::literature, "one-dimensional leaves"},
                {"phi", 0.0, 1e-8, P::literature, "Riemannian foliation, A = k^F/4"},
                {"limit.inverse", 0.0, 1e-6, P::literature, "integrable distribution"},
                {"limit.constant", 0.0, 1e-5, P::literature, "k^F = 0 and a vanishing defect"},
                {"b_invariant", 0.0, 1e-8, P::trivial, "integrable distribution"}}});

  r.push_back({"heisenberg", mf::heisenberg, {}, false, false,
               {{"b_invariant.four_b", -1.5, 1e-10, P::derived, "closed form from [e1, e2] = e3"},
                {"limit.inverse_magnitude", 0.1, 0.0, P::derived, "the 1/eps coefficient is nonzero"},
                {"limit.blow_up_relation", 0.0, 1e-3, P::derived,
                 "|c_-1| against |4B| from the closed form, up to a global sign"}}});

  for (int n : {2, 3, 4}) {
    RegistryEntry e{"round-s" + std::to_string(n), [n] { return mf::round_sphere(n); }, {}, true, true,
                    {{"scalar_curvature", static_cast<double>(n * (n - 1)), 1e-6, P::trivial, "unit round sphere"},
                     {"homothety", 0.0, 1e-9, P::trivial, "k scales by 1/lambda under g -> lambda g"}}};
    if (n == 4)
      e.facts.push_back({"residue.density_ratio", -4.0, 1e-5, P::literature,
                         "classical proportionality: density = -c0 rank k / 12"});
    r.push_back(std::move(e));
  }

  r.push_back({"complex-torus", {}, cm::complex_torus, true, false,
               {{"trace.total", 0.0, 1e-12, P::trivial, "constant metric"},
                {"kahler.leaf_components", 0.0, 1e-10, P::trivial, "coordinate foliation"},
                {"kahler.transverse_constant", 0.0, 1e-14, P::trivial, "constant metric"}}});

  r.push_back({"sheared-complex-torus", {}, cm::sheared_complex_torus, true, false,
               {{"trace.eps_variation", 0.0, 1e-8, P::derived, "trace of the curvature is independent of eps"},
                {"trace.split", 0.0, 1e-8, P::derived, "leaf and transverse traces add up exactly"},
                {"trace.bianchi", 0.0, 1e-9, P::derived, "delbar of the connection trace"},
                {"kahler.leaf_components", 0.0, 1e-10, P::derived, "direct exterior-derivative check"},
                {"kahler.twisted_derivative", 0.0, 1e-10, P::derived, "direct exterior-derivative check"},
                {"kahler.double_derivative", 0.0, 1e-10, P::derived, "direct exterior-derivative check"}}});
  return r;
}

}  // namespace

const KnownFact* RegistryEntry::fact(const std::string& formula) const {
  auto it = std::find_if(facts.begin(), facts.end(), [&](const KnownFact& f) { return f.formula == formula; });
  return it == facts.end() ? nullptr : &*it;
}

const std::vector<RegistryEntry>& registry() {
  static const std::vector<RegistryEntry> entries = build_registry();
  return entries;
}

const RegistryEntry& find_entry(const std::string& id) {
  for (const auto& e : registry())
    if (e.id == id) return e;
  std::string known;
  for (const auto& e : registry()) known += (known.empty() ? "" : ", ") + e.id;
  throw UsageError("unknown manifold '" + id + "' (known: " + known + ")");
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::literature: return "literature";
    case Provenance::trivial: return "trivial";
    case Provenance::derived: return "derived";
    case Provenance::computed: return "computed";
  }
  return "computed";
}

}  // namespace folicalc

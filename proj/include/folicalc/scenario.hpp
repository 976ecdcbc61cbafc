#pragma once

#include <functional>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "folicalc/adiabatic.hpp"
#include "folicalc/complex_foliation.hpp"
#include "folicalc/errors.hpp"
#include "folicalc/foliation.hpp"
#include "folicalc/framed_patch.hpp"

namespace folicalc {

using Json = nlohmann::ordered_json;

/// Bad command line, unknown manifold, or a command that does not apply to
/// the selected manifold.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Where an expected value comes from: a published statement, an immediate
/// consequence of the construction, or an independent computation.
enum class Provenance { literature, trivial, derived, computed };
std::string to_string(Provenance p);

struct KnownFact {
  std::string formula;
  double expected = 0.0;
  double tolerance = 0.0;
  Provenance provenance = Provenance::trivial;
  std::string note;
};

struct RegistryEntry {
  std::string id;
  std::function<FramedPatch()> framed;    // empty for complex entries
  std::function<ComplexPatch()> complex;  // empty for real entries
  bool integrable = true;
  bool riemannian = false;
  std::vector<KnownFact> facts;

  bool is_complex() const { return static_cast<bool>(complex); }
  const KnownFact* fact(const std::string& formula) const;
};

const std::vector<RegistryEntry>& registry();
/// Throws UsageError for an unknown id.
const RegistryEntry& find_entry(const std::string& id);

enum class Command { limit, b_invariant, certificate, residue, complex_trace, selfcheck };
std::string to_string(Command c);
Command parse_command(const std::string& name);

struct ScenarioConfig {
  Command command = Command::limit;
  std::string manifold;
  SweepPlan plan;
  int points = 4;
  double tol = 1e-5;  // tolerance on the fitted constant term
  PhiVariant variant = PhiVariant::consistent;
  bool inject_fault = false;
  std::string out_dir;

  /// Throws UsageError on non-positive tolerances, a bad grid or a missing manifold.
  void validate() const;
  Json to_json() const;
  /// Fields present in `j` override the current values.
  void merge(const Json& j);
};

struct Assertion {
  std::string manifold;
  std::string formula;
  int point_id = -1;  // -1 for global quantities
  Point point;
  double value = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  Provenance provenance = Provenance::computed;
  /// "within": |value - expected| <= tolerance; "exceeds": |value| > expected.
  std::string relation = "within";
  bool passed = false;
  std::string note;
};

struct Report {
  std::string command;
  std::string manifold;
  Json config;
  std::vector<Assertion> assertions;
  std::vector<Assertion> measurements;  // reported values without a pass/fail verdict
  Json details = Json::object();
  std::map<std::string, std::string> tables;  // file name -> CSV text

  bool passed() const;
  std::vector<const Assertion*> failures() const;
  /// Deterministic report; `generated_at` is the only wall-clock content.
  Json to_json(const std::string& generated_at) const;
};

Report run(const ScenarioConfig& config);

/// Every module's checks on every registry entry, the formula-variant
/// adjudication, and (with inject_fault) a perturbed entry that must fail.
Report registry_selfcheck(bool inject_fault = false);

/// Writes report.json and the CSV tables into `dir`.
void write_outputs(const Report& report, const std::string& dir, const std::string& generated_at);

std::string utc_timestamp();

}  // namespace folicalc

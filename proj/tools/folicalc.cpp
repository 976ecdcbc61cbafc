#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "folicalc/scenario.hpp"

namespace {

int usage_error(const std::string& message) {
  std::cerr << "folicalc: " << message << '\n';
  return 2;
}

void print_summary(const folicalc::Report& report, std::ostream& os) {
  os << report.command << " " << report.manifold << ": " << (report.passed() ? "PASS" : "FAIL") << " ("
     << report.assertions.size() << " assertions, " << report.failures().size() << " failed)\n";
  for (const folicalc::Assertion* a : report.failures()) {
    os << "  FAIL " << a->manifold << " " << a->formula;
    if (a->point_id >= 0) os << " point " << a->point_id;
    os << " value " << a->value << " expected " << a->expected << " [" << folicalc::to_string(a->provenance) << "]";
    if (!a->note.empty()) os << " : " << a->note;
    os << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adiabatic-limit and residue checks for foliated manifolds"};
  app.require_subcommand(0, 1);

  std::string manifold, variant, out_dir, config_path;
  double eps_start = 0.0, eps_ratio = 0.0, tol = 0.0;
  int eps_count = 0, points = 0;
  bool json = false, selfcheck = false, inject_fault = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--manifold", manifold, "registry id");
    sub->add_option("--eps-start", eps_start, "largest eps of the grid");
    sub->add_option("--eps-ratio", eps_ratio, "ratio between consecutive eps");
    sub->add_option("--eps-count", eps_count, "number of grid points");
    sub->add_option("--points", points, "number of sample points");
    sub->add_option("--tol", tol, "tolerance on fitted limits");
    sub->add_option("--variant", variant, "limit-defect reading")->check(CLI::IsMember({"literal", "consistent"}));
    sub->add_option("--out", out_dir, "directory for report.json and CSV tables");
    sub->add_option("--config", config_path, "JSON scenario file; flags override it");
    sub->add_flag("--json", json, "print the report to stdout");
    sub->add_flag("--selfcheck", selfcheck, "run the registry self-check instead");
    sub->add_flag("--inject-fault", inject_fault, "replace the hopf entry by a perturbed metric");
  };
  add_common(&app);
  for (const char* name : {"limit", "b-invariant", "certificate", "residue", "complex-trace", "selfcheck"})
    add_common(app.add_subcommand(name, std::string("run the ") + name + " scenario"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    folicalc::ScenarioConfig cfg;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) return usage_error("cannot read config '" + config_path + "'");
      folicalc::Json j;
      try {
        j = folicalc::Json::parse(in);
      } catch (const std::exception& e) {
        return usage_error(std::string("config is not valid JSON: ") + e.what());
      }
      cfg.merge(j);
    }
    const auto subs = app.get_subcommands();
    if (!subs.empty()) cfg.command = folicalc::parse_command(subs.front()->get_name());
    else if (config_path.empty() && !selfcheck) return usage_error("a command is required\n" + app.help());
    if (selfcheck) cfg.command = folicalc::Command::selfcheck;
    if (!manifold.empty()) cfg.manifold = manifold;
    if (eps_start != 0.0) cfg.plan.eps_start = eps_start;
    if (eps_ratio != 0.0) cfg.plan.ratio = eps_ratio;
    if (eps_count != 0) cfg.plan.count = eps_count;
    if (points != 0) cfg.points = points;
    if (tol != 0.0) cfg.tol = tol;
    if (!variant.empty()) cfg.variant = folicalc::parse_phi_variant(variant);
    if (inject_fault) cfg.inject_fault = true;
    if (!out_dir.empty()) cfg.out_dir = out_dir;

    const folicalc::Report report = folicalc::run(cfg);
    const std::string stamp = folicalc::utc_timestamp();
    if (!cfg.out_dir.empty()) folicalc::write_outputs(report, cfg.out_dir, stamp);
    if (json)
      std::cout << report.to_json(stamp).dump(2) << '\n';
    else
      print_summary(report, std::cout);
    return report.passed() ? 0 : 1;
  } catch (const folicalc::UsageError& e) {
    return usage_error(e.what());
  } catch (const std::exception& e) {
    std::cerr << "folicalc: " << e.what() << '\n';
    return 1;
  }
}

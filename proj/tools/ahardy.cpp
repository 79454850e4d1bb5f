#include <CLI11.hpp>
#include <functional>
#include <iostream>
#include <map>

#include "ahardy/acceptance.hpp"

namespace {

using namespace ahardy;

using StageFn = std::function<StageResult(Pipeline&)>;

const std::map<std::string, StageFn>& stages() {
  static const std::map<std::string, StageFn> m{
      {"check-group", stage_check_group}, {"orbit", stage_orbit},   {"martin", stage_martin},       {"factor", stage_factor},
      {"theta", stage_theta},             {"kernel", stage_kernel}, {"np-bound", stage_np_bound},   {"cj", stage_cj},
      {"verify-main", stage_verify_main}, {"dct", stage_dct}};
  return m;
}

StageResult stage_acceptance(Pipeline& P) {
  const auto results = run_acceptance(&std::cout);
  StageResult r;
  r.report = acceptance_report(results);
  r.report["stage"] = "acceptance";
  r.report["scenario"] = P.scenario_summary();
  r.pass = r.report["all_pass"].get<bool>();
  return r;
}

int run(const std::string& name, const StageFn& fn, const std::string& scenario_path, const std::string& out,
        const std::vector<std::string>& overrides) {
  try {
    Pipeline P(load_scenario(scenario_path, overrides), out);
    const StageResult r = fn(P);
    json report = r.report;
    report["pass"] = r.pass;
    write_json_file(std::filesystem::path(out) / (name + ".json"), report);
    std::cout << name << ": " << (r.pass ? "pass" : "FAIL") << "\n";
    return r.pass ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::ConfigError ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Automorphic Hardy space toolkit"};
  app.require_subcommand(1);
  std::string scenario, out;
  std::vector<std::string> overrides;

  std::map<std::string, StageFn> all = stages();
  all["acceptance"] = stage_acceptance;
  std::map<CLI::App*, std::string> names;
  for (const auto& [name, fn] : all) {
    CLI::App* sub = app.add_subcommand(name, "run the " + name + " stage");
    sub->add_option("--scenario", scenario, "scenario JSON file")->required();
    sub->add_option("--out", out, "output directory")->required();
    sub->add_option("--override", overrides, "key=value override, dotted path");
    names[sub] = name;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  for (const auto& [sub, name] : names)
    if (sub->parsed()) return run(name, all.at(name), scenario, out, overrides);
  return 2;
}

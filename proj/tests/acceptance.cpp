#include <sys/wait.h>
#include <unistd.h>

#include <fstream>

#include "ahardy/acceptance.hpp"

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const fs::path& out) {
  const std::string cmd = std::string(AHARDY_CLI) + " acceptance --scenario " AHARDY_SCENARIO_DIR "/trivial.json --out " + out.string() +
                          " > " + (out / "log.txt").string() + " 2>&1";
  fs::create_directories(out);
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

int main() {
  using namespace ahardy;
  const auto results = run_acceptance(&std::cout);
  bool ok = results.size() == 13;
  for (const auto& r : results) ok = ok && r.pass;

  // Criterion 14: two independent CLI runs give byte-identical reports.
  CriterionResult det{14, "Determinism", false, "", {}, 0.0};
  const auto start = std::chrono::steady_clock::now();
  const fs::path base = fs::temp_directory_path() / ("ahardy_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(base);
  const int code_a = run_cli(base / "a");
  const int code_b = run_cli(base / "b");
  const std::string ra = slurp(base / "a" / "acceptance.json"), rb = slurp(base / "b" / "acceptance.json");
  det.seconds = acceptance::since(start);
  det.pass = code_a == 0 && code_b == 0 && !ra.empty() && ra == rb;
  det.summary = "exit codes " + std::to_string(code_a) + "/" + std::to_string(code_b) + ", reports " + std::to_string(ra.size()) +
                " bytes, " + (ra == rb ? "identical" : "DIFFERENT");
  print_criterion(std::cout, det);
  ok = ok && det.pass;
  if (det.pass) fs::remove_all(base);

  std::cout << (ok ? "all 14 criteria pass" : "acceptance FAILED") << std::endl;
  return ok ? 0 : 1;
}

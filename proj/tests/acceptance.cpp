// Full-scale run of the property suite, one line per criterion.
// Usage: acceptance [path-to-cli-binary]
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "ordlab/selftest.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  using clock = std::chrono::steady_clock;
  // Per-criterion wall-clock budgets, in seconds.
  const double budgets[] = {30, 10, 5, 20, 60, 30, 10, 60, 60, 10, 20};

  bool all = true;
  std::size_t i = 0;
  for (const ordlab::CriterionResult& c : ordlab::run_criteria(true)) {
    const bool pass = c.pass && c.seconds < budgets[i];
    std::printf("%02zu %-28s %s (%.1fs)\n", i + 1, c.name.c_str(),
                pass ? "pass" : "FAIL", c.seconds);
    all = all && pass;
    ++i;
  }

  // Determinism: two fresh runs of the reduced-scale suite must emit
  // byte-identical reports (timing lives outside the compared file).
  bool det = false;
  double det_secs = 0;
  if (argc > 1) {
    const std::string cli = argv[1];
    const std::string f1 = "acceptance_selftest.json";
    const auto det_start = clock::now();
    const std::string cmd = "\"" + cli + "\" selftest --out " + f1 +
                            " > /dev/null";
    const int r1 = std::system(cmd.c_str());
    const std::string a = slurp(f1);
    const int r2 = std::system(cmd.c_str());
    const std::string b = slurp(f1);
    det_secs = std::chrono::duration<double>(clock::now() - det_start).count();
    det = r1 == 0 && r2 == 0 && !a.empty() && a == b && det_secs < 120;
    std::remove(f1.c_str());
  }
  std::printf("12 %-28s %s (%.1fs)\n", "selftest-determinism",
              det ? "pass" : "FAIL", det_secs);
  all = all && det;

  return all ? 0 : 1;
}

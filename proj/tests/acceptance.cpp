// Runs acceptance criteria 1-10 and prints one PASS/FAIL line per criterion.
// Optional arguments restrict the run to the listed criterion ids.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include "arcgas/verify.hpp"

using namespace arcgas;

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  if (ids.empty())
    for (int i = 1; i <= 10; ++i) ids.push_back(i);

  VerifyOptions opt;
  SuiteResult all;
  all.name = "acceptance";
  for (int id : ids) {
    const auto r = run_criterion(id, opt);
    all.criteria.push_back(r);
    std::printf("%s  criterion %2d  %-55s %8.1fs\n", r.pass() ? "PASS" : "FAIL", r.id, r.title.c_str(), r.seconds);
    if (!r.pass())
      for (const auto& c : r.checks)
        if (!c.pass)
          std::printf("        failed: %s  value=%.10g ref=%.10g tol=%.3g %s\n", c.name.c_str(), c.value, c.reference,
                      c.tolerance, c.note.c_str());
    std::fflush(stdout);
  }
  std::ofstream("acceptance_report.json") << all.to_json().dump(2) << "\n";
  std::fputs(all.table().c_str(), stdout);
  std::printf("%d failed check(s)\n", all.failures());
  return all.failures() == 0 ? 0 : 1;
}

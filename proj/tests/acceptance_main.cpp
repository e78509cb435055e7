// Runs the acceptance criteria and prints one line per criterion. Exit status
// is 0 only when every criterion passes.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "goldenmap/acceptance.hpp"

int main(int argc, char** argv) {
  gm::AcceptanceOptions opt;
  opt.output_dir = argc > 1 ? argv[1] : ".";
  std::filesystem::create_directories(opt.output_dir);

  std::vector<gm::CriterionResult> results;
  bool all = true;
  for (int id = 1; id <= gm::kCriteria; ++id) {
    results.push_back(gm::run_criterion(id, opt));
    all = all && results.back().pass;
    std::cout << gm::summary_line(results.back()) << std::endl;
  }
  const auto report = std::filesystem::path(opt.output_dir) / "acceptance_report.json";
  std::ofstream(report) << gm::acceptance_report(results, opt).dump(2) << "\n";
  std::cout << (all ? "all criteria passed" : "acceptance FAILED") << ", report in " << report.string() << std::endl;
  return all ? 0 : 1;
}

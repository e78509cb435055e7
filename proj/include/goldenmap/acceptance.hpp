#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace gm {

struct AcceptanceOptions {
  double deep_a = -2;          // parameter of the single-regime criteria
  std::uint64_t seed = 20240611;  // Monte Carlo and cone sampling
  std::string output_dir = ".";   // the lamination SVG goes here
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool check = false;   // the mathematical assertion
  double seconds = 0;
  double budget = 0;
  bool pass = false;    // check and within budget
  std::string summary;
  nlohmann::json detail;
};

constexpr int kCriteria = 11;

CriterionResult run_criterion(int id, const AcceptanceOptions& opt = {});
// Runs the listed criteria, all of them when `ids` is empty.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt = {}, const std::vector<int>& ids = {});

nlohmann::json to_json(const CriterionResult& r);
nlohmann::json acceptance_report(const std::vector<CriterionResult>& results, const AcceptanceOptions& opt);
// "PASS  3 periodic census  (8.1 s / 120 s)  ..."
std::string summary_line(const CriterionResult& r);

}  // namespace gm

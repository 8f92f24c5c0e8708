#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "arcgas/pipeline.hpp"

namespace arcgas {

struct Check {
  std::string name;
  double value = 0;
  double reference = 0;
  double tolerance = 0;
  bool pass = false;
  std::string note;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0;
  double budget = 0;  // seconds
  nlohmann::json details = nlohmann::json::object();

  bool pass() const;
  int failures() const;
  nlohmann::json to_json(bool with_timing = true) const;
};

struct VerifyOptions {
  Settings settings;
  std::uint64_t seed = 20240611;
  double mc_scale = 1.0;  // multiplies every sweep count
};

std::string criterion_title(int id);
CriterionResult run_criterion(int id, const VerifyOptions& opt);

struct SuiteResult {
  std::string name;
  std::vector<CriterionResult> criteria;

  int failures() const;
  nlohmann::json to_json(bool with_timing = true) const;
  std::string table() const;
};

const std::vector<std::string>& suite_names();
std::vector<int> suite_criteria(const std::string& suite);
SuiteResult run_suite(const std::string& suite, const VerifyOptions& opt);

}  // namespace arcgas

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tclab/io.hpp"

namespace tclab {

struct SuiteOptions {
  // Replaces the suite's own group list when set.
  std::optional<std::string> group;
  // More seeded Bockstein samples per configuration.
  bool exhaustive = false;
};

struct InstanceResult {
  std::string instance;
  bool ok = false;
  std::string detail;
};

struct SuiteResult {
  std::string name;
  int criterion = 0;
  std::string claim;
  std::vector<InstanceResult> instances;
  bool passed() const;
  const InstanceResult* first_failure() const;
  Json to_json() const;
  std::string to_text() const;
};

// Suite names in criterion order; "all" runs every one of them.
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);
SuiteResult run_suite(const std::string& name, const SuiteOptions& opt = {});
std::vector<SuiteResult> run_suites(const std::string& name, const SuiteOptions& opt = {});
Json suites_json(const std::vector<SuiteResult>& results);

}  // namespace tclab

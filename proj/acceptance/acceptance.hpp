#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "dquant/serialize.hpp"

namespace dquant::acceptance {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0;
  double limit_seconds = 0;
};

struct Options {
  std::uint64_t seed = 20240601;
  std::set<int> only;  // empty: every criterion
};

int criterion_count();

// Runs the selected criteria in order; `progress` is called after each one.
std::vector<CriterionResult> run(const Options& opt,
                                 const std::function<void(const CriterionResult&)>& progress = {});

// "PASS  3  title  (detail)  [1.2 s / 120 s]"
std::string format_line(const CriterionResult& r);
// Deterministic summary without timings.
Json summary_json(const std::vector<CriterionResult>& results, const Options& opt);

}  // namespace dquant::acceptance

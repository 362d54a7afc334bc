#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace su2m::verify {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct AcceptanceOptions {
  std::uint64_t seed = 20240611;
};

struct CriterionInfo {
  int id;
  std::string name;
};

const std::vector<CriterionInfo>& criteria();

CriterionResult run_criterion(int id, const AcceptanceOptions& options = {});

// Runs every criterion; when log is given, writes one line per criterion as it finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {}, std::ostream* log = nullptr);

std::string format_result(const CriterionResult& r);

}  // namespace su2m::verify

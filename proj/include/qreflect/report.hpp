#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qreflect {
namespace report {

enum class CheckStatus { Pass, Fail, PoleResampled };

inline const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::PoleResampled: return "pole-resampled";
  }
  return "?";
}

// Location of the first exact mismatch, with both sides as num/den strings.
struct Witness {
  long row = -1, col = -1;
  std::string row_label, col_label;
  std::string lhs, rhs;
  std::string detail;
};

struct CheckResult {
  std::string id;
  std::map<std::string, std::string> params;
  CheckStatus status = CheckStatus::Pass;
  int points_tried = 0;
  std::optional<Witness> witness;

  static CheckResult pass(std::string id, int points_tried = 1) {
    CheckResult r;
    r.id = std::move(id);
    r.points_tried = points_tried;
    return r;
  }
  static CheckResult fail(std::string id, Witness w, int points_tried = 1) {
    CheckResult r;
    r.id = std::move(id);
    r.status = CheckStatus::Fail;
    r.points_tried = points_tried;
    r.witness = std::move(w);
    return r;
  }
};

struct RunReport {
  std::string suite;
  std::vector<CheckResult> checks;
  double elapsed_ms = 0.0;

  bool all_passed() const {
    for (const auto& c : checks)
      if (c.status != CheckStatus::Pass) return false;
    return true;
  }
  void add(CheckResult c) { checks.push_back(std::move(c)); }
  void merge(const RunReport& other) {
    for (const auto& c : other.checks) checks.push_back(c);
  }
  std::string to_json() const;
};

}  // namespace report
}  // namespace qreflect

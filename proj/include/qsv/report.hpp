#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qsv {

enum class Status { pass, fail, inconclusive };

std::string to_string(Status s);
Status status_from_string(const std::string& s);

/// FAIL dominates INCONCLUSIVE, which dominates PASS.
Status combine(Status a, Status b);

/// A discrepancy between a claimed statement and what the engine computed.
struct Finding {
  std::string key;
  std::string message;

  friend bool operator==(const Finding&, const Finding&) = default;
};

using KeyValues = std::vector<std::pair<std::string, std::string>>;

struct CheckReport {
  std::string check;
  std::string preset;
  KeyValues parameters;
  Status status = Status::pass;
  std::optional<std::string> residual;
  std::vector<std::string> missing_pairs;
  std::vector<Finding> findings;
  /// Extra computed values (fitted exponents, chosen conventions, counts).
  KeyValues details;
  double wall_time_ms = 0.0;

  bool passed() const { return status == Status::pass; }
  /// Keeps the first failing residual; a FAIL replaces an earlier inconclusive residual.
  void fail(std::string res) {
    if (!residual || status != Status::fail) residual = std::move(res);
    status = Status::fail;
  }
  /// Records an undecidable residual and the generator pairs that blocked it.
  void inconclusive(std::string res, const std::vector<std::string>& pairs) {
    if (status == Status::pass) residual = std::move(res);
    status = combine(status, Status::inconclusive);
    add_missing_pairs(pairs);
  }
  void add_missing_pairs(const std::vector<std::string>& pairs);
  void add_detail(std::string k, std::string v) { details.emplace_back(std::move(k), std::move(v)); }
  void add_parameter(std::string k, std::string v) { parameters.emplace_back(std::move(k), std::move(v)); }
  void add_finding(std::string k, std::string m) { findings.push_back({std::move(k), std::move(m)}); }

  friend bool operator==(const CheckReport&, const CheckReport&) = default;
};

/// Measures wall time into a report on destruction.
class ReportTimer {
 public:
  explicit ReportTimer(CheckReport& r) : report_(r), start_(std::chrono::steady_clock::now()) {}
  ~ReportTimer() {
    auto d = std::chrono::steady_clock::now() - start_;
    report_.wall_time_ms = std::chrono::duration<double, std::milli>(d).count();
  }
  ReportTimer(const ReportTimer&) = delete;
  ReportTimer& operator=(const ReportTimer&) = delete;

 private:
  CheckReport& report_;
  std::chrono::steady_clock::time_point start_;
};

Status overall_status(const std::vector<CheckReport>& reports);

std::string to_json(const std::vector<CheckReport>& reports, int indent = 2);
std::vector<CheckReport> reports_from_json(const std::string& text);
std::string to_markdown(const std::vector<CheckReport>& reports);

}  // namespace qsv

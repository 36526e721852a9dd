#include "qsv/report.hpp"

#include <algorithm>
#include <json.hpp>
#include <map>
#include <sstream>

#include "qsv/errors.hpp"

namespace qsv {

using ojson = nlohmann::ordered_json;

std::string to_string(Status s) {
  switch (s) {
    case Status::pass:
      return "PASS";
    case Status::fail:
      return "FAIL";
    case Status::inconclusive:
      return "INCONCLUSIVE";
  }
  return "FAIL";
}

Status status_from_string(const std::string& s) {
  if (s == "PASS") return Status::pass;
  if (s == "FAIL") return Status::fail;
  if (s == "INCONCLUSIVE") return Status::inconclusive;
  throw Error("unknown status '" + s + "'");
}

Status combine(Status a, Status b) {
  if (a == Status::fail || b == Status::fail) return Status::fail;
  if (a == Status::inconclusive || b == Status::inconclusive) return Status::inconclusive;
  return Status::pass;
}

void CheckReport::add_missing_pairs(const std::vector<std::string>& pairs) {
  for (const auto& pair : pairs) {
    if (std::find(missing_pairs.begin(), missing_pairs.end(), pair) == missing_pairs.end()) missing_pairs.push_back(pair);
  }
  std::sort(missing_pairs.begin(), missing_pairs.end());
}

Status overall_status(const std::vector<CheckReport>& reports) {
  Status s = Status::pass;
  for (const auto& r : reports) s = combine(s, r.status);
  return s;
}

namespace {

ojson kv_to_json(const KeyValues& kv) {
  ojson o = ojson::object();
  for (const auto& [k, v] : kv) o[k] = v;
  return o;
}

KeyValues kv_from_json(const ojson& o) {
  KeyValues kv;
  for (auto it = o.begin(); it != o.end(); ++it) kv.emplace_back(it.key(), it.value().get<std::string>());
  return kv;
}

ojson report_to_json(const CheckReport& r) {
  ojson o;
  o["check"] = r.check;
  o["preset"] = r.preset;
  o["parameters"] = kv_to_json(r.parameters);
  o["status"] = to_string(r.status);
  o["residual"] = r.residual ? ojson(*r.residual) : ojson(nullptr);
  o["missing_pairs"] = r.missing_pairs;
  ojson findings = ojson::array();
  for (const auto& f : r.findings) findings.push_back(ojson{{"key", f.key}, {"message", f.message}});
  o["findings"] = findings;
  o["details"] = kv_to_json(r.details);
  o["wall_time_ms"] = r.wall_time_ms;
  return o;
}

CheckReport report_from_json(const ojson& o) {
  CheckReport r;
  r.check = o.at("check").get<std::string>();
  r.preset = o.at("preset").get<std::string>();
  r.parameters = kv_from_json(o.at("parameters"));
  r.status = status_from_string(o.at("status").get<std::string>());
  if (!o.at("residual").is_null()) r.residual = o.at("residual").get<std::string>();
  r.missing_pairs = o.at("missing_pairs").get<std::vector<std::string>>();
  for (const auto& f : o.at("findings")) {
    r.findings.push_back({f.at("key").get<std::string>(), f.at("message").get<std::string>()});
  }
  r.details = kv_from_json(o.at("details"));
  r.wall_time_ms = o.at("wall_time_ms").get<double>();
  return r;
}

std::string escape_cell(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') {
      out += "\\|";
    } else if (c == '\n') {
      out += ' ';
    } else {
      out += c;
    }
  }
  return out;
}

}  // namespace

std::string to_json(const std::vector<CheckReport>& reports, int indent) {
  ojson doc;
  doc["status"] = to_string(overall_status(reports));
  ojson arr = ojson::array();
  for (const auto& r : reports) arr.push_back(report_to_json(r));
  doc["reports"] = arr;
  // Aggregated findings, deduplicated by key and message, first occurrence wins.
  ojson findings = ojson::array();
  std::vector<Finding> seen;
  for (const auto& r : reports) {
    for (const auto& f : r.findings) {
      if (std::find(seen.begin(), seen.end(), f) != seen.end()) continue;
      seen.push_back(f);
      findings.push_back(ojson{{"key", f.key}, {"message", f.message}, {"check", r.check}});
    }
  }
  doc["findings"] = findings;
  return doc.dump(indent);
}

std::vector<CheckReport> reports_from_json(const std::string& text) {
  ojson doc = ojson::parse(text);
  std::vector<CheckReport> out;
  for (const auto& r : doc.at("reports")) out.push_back(report_from_json(r));
  return out;
}

std::string to_markdown(const std::vector<CheckReport>& reports) {
  std::ostringstream os;
  os << "# qsv report\n\n";
  os << "Overall: **" << to_string(overall_status(reports)) << "**\n\n";
  os << "| check | preset | status | residual | missing pairs | time (ms) |\n";
  os << "|---|---|---|---|---|---|\n";
  for (const auto& r : reports) {
    std::string pairs;
    for (const auto& p : r.missing_pairs) pairs += (pairs.empty() ? "" : ", ") + p;
    os << "| " << escape_cell(r.check) << " | " << escape_cell(r.preset) << " | " << to_string(r.status) << " | "
       << escape_cell(r.residual.value_or("")) << " | " << escape_cell(pairs) << " | " << static_cast<long>(r.wall_time_ms)
       << " |\n";
  }
  std::vector<Finding> seen;
  for (const auto& r : reports) {
    for (const auto& f : r.findings) {
      if (std::find(seen.begin(), seen.end(), f) == seen.end()) seen.push_back(f);
    }
  }
  if (!seen.empty()) {
    os << "\n## Findings\n\n";
    for (const auto& f : seen) os << "- **" << f.key << "**: " << f.message << "\n";
  }
  return os.str();
}

}  // namespace qsv

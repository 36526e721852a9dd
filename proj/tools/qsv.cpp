#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "qsv/contraction.hpp"
#include "qsv/errors.hpp"
#include "qsv/parser.hpp"
#include "qsv/presets.hpp"
#include "qsv/suite.hpp"

namespace {

using namespace qsv;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string to_text(const std::vector<CheckReport>& reports) {
  std::ostringstream os;
  for (const auto& r : reports) {
    os << to_string(r.status) << "  " << r.check << "  [" << r.preset << "]  " << static_cast<long>(r.wall_time_ms)
       << " ms\n";
    if (r.residual) os << "    residual: " << *r.residual << "\n";
    if (!r.missing_pairs.empty()) {
      os << "    missing pairs:";
      for (const auto& p : r.missing_pairs) os << " " << p;
      os << "\n";
    }
  }
  auto findings = collect_findings(reports);
  if (!findings.empty()) {
    os << "findings:\n";
    for (const auto& f : findings) os << "  " << f.key << ": " << f.message << "\n";
  }
  os << "overall: " << to_string(overall_status(reports)) << "\n";
  return os.str();
}

void emit(const std::vector<CheckReport>& reports, const std::string& format, const std::string& out) {
  std::string text;
  if (format == "json") {
    text = to_json(reports) + "\n";
  } else if (format == "markdown") {
    text = to_markdown(reports);
  } else {
    text = to_text(reports);
  }
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(out);
  if (!file) throw Error("cannot write " + out);
  file << text;
}

int exit_code(const std::vector<CheckReport>& reports, bool strict) {
  Status s = overall_status(reports);
  if (s == Status::fail) return 1;
  if (strict && s == Status::inconclusive) return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qsv: symbolic verification for Z2-graded quantum algebras"};
  app.require_subcommand(1);

  std::string format = "text";
  std::string out;
  bool strict = false;
  auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "text, json or markdown")
        ->check(CLI::IsMember({"text", "json", "markdown"}));
    cmd->add_option("--out", out, "write the report to FILE");
    cmd->add_flag("--strict", strict, "INCONCLUSIVE also fails");
  };

  std::string expr;
  std::string preset;
  std::string augment_file;
  auto* normalize = app.add_subcommand("normalize", "print the normal form of EXPR");
  normalize->add_option("expr", expr, "expression")->required();
  normalize->add_option("--preset", preset, "preset name or spec file")->required();
  normalize->add_option("--augment", augment_file, "extra relations file");

  std::string suite;
  SuiteOptions options;
  std::string cutoff;
  std::string convention;
  auto* check = app.add_subcommand("check", "run a check suite");
  check->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(suite_names()));
  check->add_option("--preset", preset, "subject preset");
  check->add_option("--degree", options.degree, "basis degree");
  check->add_option("--window", options.window, "Laurent window");
  check->add_option("--length", options.confluence_length, "confluence word length");
  check->add_option("--cutoff", cutoff, "pairing cutoff k,n,w");
  check->add_option("--convention", convention, "theta-middle or theta-left")
      ->check(CLI::IsMember({"theta-middle", "theta-left"}));
  check->add_option("--kmax", options.k_max, "identity family bound");
  check->add_option("--augment", augment_file, "extra relations file");
  add_output(check);

  std::string transform = "g_h";
  std::string limit = "s=1";
  std::string expect;
  auto* contract = app.add_subcommand("contract", "transform, reduce and take a limit");
  contract->add_option("--preset", preset, "source preset")->required();
  contract->add_option("--transform", transform, "transform name, file, or identity");
  contract->add_option("--limit", limit, "param=value, or none");
  contract->add_option("--expect", expect, "preset to compare against");
  add_output(contract);

  std::string from;
  std::string report_suite = "all";
  auto* report = app.add_subcommand("report", "run all suites, or re-render a saved JSON report");
  report->add_option("suite", report_suite, "suite name")->check(CLI::IsMember(suite_names()));
  report->add_option("--from", from, "saved JSON report");
  add_output(report);

  std::string preset_name;
  auto* presets = app.add_subcommand("presets", "list built-in presets, or print one");
  presets->add_option("name", preset_name, "preset to print");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*presets) {
      if (preset_name.empty()) {
        for (const auto& n : builtin_preset_names()) std::cout << n << "\n";
      } else {
        std::cout << preset_source(preset_name);
      }
      return 0;
    }
    if (*normalize) {
      Presentation p = load_preset(preset).presentation;
      if (!augment_file.empty()) p = augment(p, slurp(augment_file));
      std::cout << p.format(p.normalize(parse_element(expr, p))) << "\n";
      return 0;
    }
    if (*check) {
      if (!preset.empty()) options.preset = preset;
      if (!cutoff.empty()) options.cutoff = parse_pairing_cutoff(cutoff);
      if (!convention.empty()) options.convention = pairing_convention_from_string(convention);
      if (!augment_file.empty()) options.augment = slurp(augment_file);
      auto reports = run_suite(suite, options);
      emit(reports, format, out);
      return exit_code(reports, strict);
    }
    if (*contract) {
      std::optional<Limit> at;
      if (limit != "none") at = parse_limit(limit);
      std::vector<CheckReport> reports{contraction_report(preset, transform, at, expect)};
      if (format == "text") {
        const auto& r = reports.front();
        for (const auto& [k, v] : r.details) std::cout << k << ": " << v << "\n";
      }
      emit(reports, format, out);
      return exit_code(reports, strict);
    }
    if (*report) {
      if (report->count("--format") == 0) format = "json";
      auto reports = from.empty() ? run_suite(report_suite) : reports_from_json(slurp(from));
      emit(reports, format, out);
      return exit_code(reports, strict);
    }
  } catch (const std::exception& e) {
    std::cerr << "qsv: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

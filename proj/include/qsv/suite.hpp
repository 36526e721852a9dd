#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qsv/contraction.hpp"
#include "qsv/duality.hpp"
#include "qsv/report.hpp"

namespace qsv {

struct SuiteOptions {
  /// Replaces the suite's default preset where the suite has a single subject.
  std::optional<std::string> preset;
  int degree = 4;
  int window = 2;
  int confluence_length = 6;
  int k_max = 6;
  /// Cutoff for dual relations; Hopf fits use hopf_cutoff.
  PairingCutoff cutoff{6, 6, 6, 2};
  PairingCutoff hopf_cutoff{2, 2, 2, 2};
  PairingCutoff rank_cutoff{4, 4, 2, 2};
  int dual_degree = 3;
  /// Both conventions when unset.
  std::optional<PairingConvention> convention;
  /// Extra relations (spec-file text) added to the group for group/covariance,
  /// to the subject preset otherwise.
  std::optional<std::string> augment;
};

/// confluence, hopf, star, group, covariance, representation, pairing,
/// contraction, lie, then "all", which runs them in this order.
std::vector<std::string> suite_names();

/// Module errors become FAIL reports named after the check that threw.
std::vector<CheckReport> run_suite(const std::string& suite, const SuiteOptions& options = {});

/// Findings across reports, deduplicated, first occurrence first.
std::vector<Finding> collect_findings(const std::vector<CheckReport>& reports);

/// The supersphere r in P_full and P_red: zero in the first, a nonzero
/// combination of x_+ x_- and theta^2 in the second.
CheckReport supersphere_report();

/// Representation matrices under both orientations; PASS when exactly the
/// reversed orientation holds.
CheckReport representation_report();

/// <K, x^2> and <KN, y> against their closed forms.
CheckReport pairing_values_report(const Pairing& pairing);

}  // namespace qsv

#include "qsv/suite.hpp"

#include <algorithm>
#include <functional>

#include "qsv/algebra_checks.hpp"
#include "qsv/errors.hpp"
#include "qsv/hopf.hpp"
#include "qsv/lie.hpp"
#include "qsv/parser.hpp"
#include "qsv/presets.hpp"
#include "qsv/quantumgroup.hpp"

namespace qsv {

namespace {

using Reports = std::vector<CheckReport>;

CheckReport error_report(const std::string& check, const std::string& preset, const std::string& message) {
  CheckReport r;
  r.check = check;
  r.preset = preset;
  r.fail("error: " + message);
  return r;
}

// Runs one check; an exception becomes a FAIL report carrying the message.
void run(Reports& out, const std::string& check, const std::string& preset, const std::function<CheckReport()>& f) {
  try {
    out.push_back(f());
  } catch (const std::exception& e) {
    out.push_back(error_report(check, preset, e.what()));
  }
}

std::string subject(const SuiteOptions& o, const std::string& fallback) { return o.preset.value_or(fallback); }

SpecFile load_subject(const SuiteOptions& o, const std::string& fallback) {
  SpecFile spec = load_preset(subject(o, fallback));
  if (o.augment) spec.presentation = augment(spec.presentation, *o.augment);
  return spec;
}

SpecFile load_group(const SuiteOptions& o) {
  SpecFile spec = load_preset("SPq21_partial");
  if (o.augment) spec.presentation = augment(spec.presentation, *o.augment);
  return spec;
}

Element supersphere_in(const Presentation& p, const std::string& plus, const std::string& minus) {
  Element xp = p.gen(plus);
  Element xm = p.gen(minus);
  Element t = p.gen("theta");
  return Scalar::s() * free_product(xm, xp) + free_product(t, t) - Scalar::s().inverse() * free_product(xp, xm);
}

std::vector<PairingConvention> conventions(const SuiteOptions& o) {
  if (o.convention) return {*o.convention};
  return {PairingConvention::theta_middle, PairingConvention::theta_left};
}

void confluence_suite(Reports& out, const SuiteOptions& o) {
  std::vector<std::string> presets{"P_full", "P_red", "P_ext", "SP_h", "SP_q_1|2", "Lambda_h", "SPq21_sub6", "U_Lhbar"};
  if (o.preset) presets = {*o.preset};
  for (const auto& name : presets) {
    run(out, "confluence", name, [&] {
      SpecFile spec = load_preset(name);
      if (o.augment) spec.presentation = augment(spec.presentation, *o.augment);
      return check_local_confluence(spec.presentation, o.confluence_length, o.window);
    });
  }
}

void hopf_suite(Reports& out, const SuiteOptions& o) {
  const std::string name = subject(o, "P_ext");
  SpecFile spec;
  try {
    spec = load_subject(o, "P_ext");
  } catch (const std::exception& e) {
    out.push_back(error_report("hopf", name, e.what()));
    return;
  }
  HopfStructure h(spec.presentation, spec.maps);
  run(out, "hopf:well-defined", name, [&] { return check_comaps_well_defined(h); });
  run(out, "hopf:axioms", name, [&] { return check_hopf_axioms(h, o.degree, o.window); });
  run(out, "hopf:antipode-order", name, [&] { return determine_antipode_convention(h, o.degree, o.window); });
  if (!o.preset || *o.preset == "P_ext") {
    run(out, "hopf:primitive:r", name,
        [&] { return check_primitive(h, supersphere_in(h.presentation(), "x_+", "x_-"), "r"); });
    run(out, "supersphere", "P_full", [] { return supersphere_report(); });
  }
}

void star_suite(Reports& out, const SuiteOptions& o) {
  const std::string name = subject(o, "P_ext");
  run(out, "star", name, [&] {
    SpecFile spec = load_subject(o, "P_ext");
    return check_star(HopfStructure(spec.presentation, spec.maps), o.degree);
  });
}

void group_suite(Reports& out, const SuiteOptions& o) {
  run(out, "superdeterminant", "SPq21_sub6", [&] {
    SpecFile sub = load_preset("SPq21_sub6");
    return superdeterminant_report(sub.presentation);
  });
  run(out, "inverse", "SPq21_partial", [&] {
    SpecFile group = load_group(o);
    HopfStructure h(group.presentation, group.maps);
    return check_inverse(generator_matrix(group.presentation), antipode_matrix(h), group.presentation);
  });
}

void covariance_suite(Reports& out, const SuiteOptions& o) {
  for (Side side : {Side::left, Side::right}) {
    run(out, "covariance:" + to_string(side), "P_full", [&] {
      return check_covariance(load_preset("P_full").presentation, side, load_group(o).presentation);
    });
  }
  for (Side side : {Side::left, Side::right}) {
    run(out, "comodule:" + to_string(side), "P_red", [&] {
      SpecFile group = load_group(o);
      return check_coaction_axioms(load_preset("P_red").presentation, HopfStructure(group.presentation, group.maps),
                                   side, std::min(o.degree, 3));
    });
  }
  run(out, "sphere-coinvariance", "P_red", [&] {
    return check_sphere_coinvariance(load_preset("P_red").presentation, load_group(o).presentation);
  });
}

void pairing_suite(Reports& out, const SuiteOptions& o) {
  const std::string name = subject(o, "P_ext");
  for (PairingConvention c : conventions(o)) {
    const std::string tag = ":" + to_string(c);
    std::optional<Pairing> pairing;
    run(out, "pairing-values" + tag, name, [&] {
      SpecFile spec = load_subject(o, "P_ext");
      pairing.emplace(HopfStructure(spec.presentation, spec.maps), c);
      return pairing_values_report(*pairing);
    });
    if (!pairing) continue;
    run(out, "dual-relations" + tag, name, [&] { return check_dual_relations(*pairing, o.cutoff); });
    run(out, "dual-hopf" + tag, name, [&] { return check_dual_hopf(*pairing, o.hopf_cutoff); });
    run(out, "nondegeneracy" + tag, name, [&] { return nondegeneracy_scan(*pairing, o.dual_degree, o.rank_cutoff); });
  }
  std::vector<std::string> algebras{name};
  if (!o.preset) algebras.push_back("P_full");
  for (const auto& a : algebras) {
    run(out, "pairing-convention", a, [&] {
      SpecFile spec = a == name ? load_subject(o, "P_ext") : load_preset(a);
      return determine_pairing_convention(HopfStructure(spec.presentation, spec.maps), o.hopf_cutoff);
    });
  }
}

void contraction_suite(Reports& out, const SuiteOptions&) {
  Limit at_one;
  run(out, "contraction", "P_red", [&] { return contraction_report("P_red", "g_h", at_one, "SP_h"); });
  run(out, "contraction", "SP_q_1|2", [&] { return contraction_report("SP_q_1|2", "g_h", at_one, "Lambda_h"); });
  run(out, "h-sphere", "SP_h", [] { return check_h_sphere(load_preset("SP_h").presentation); });
}

void lie_suite(Reports& out, const SuiteOptions& o) {
  run(out, "lie:confluence", "U_Lhbar", [&] { return check_enveloping_confluence(o.confluence_length); });
  run(out, "lie:bridge", "P_red", [&] { return check_bridge_identities(o.k_max); });
  run(out, "lie:hopf", "U_Lhbar", [&] { return check_lie_hopf(o.degree); });
}

void representation_suite(Reports& out, const SuiteOptions&) {
  run(out, "representation", "P_full", [] { return representation_report(); });
}

using SuiteFn = void (*)(Reports&, const SuiteOptions&);

const std::vector<std::pair<std::string, SuiteFn>>& suites() {
  static const std::vector<std::pair<std::string, SuiteFn>> table{
      {"confluence", confluence_suite}, {"hopf", hopf_suite},
      {"star", star_suite},             {"group", group_suite},
      {"covariance", covariance_suite}, {"representation", representation_suite},
      {"pairing", pairing_suite},       {"contraction", contraction_suite},
      {"lie", lie_suite},
  };
  return table;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : suites()) names.push_back(name);
  names.emplace_back("all");
  return names;
}

std::vector<CheckReport> run_suite(const std::string& suite, const SuiteOptions& options) {
  Reports out;
  for (const auto& [name, fn] : suites()) {
    if (suite == "all" || suite == name) fn(out, options);
  }
  if (suite != "all" && std::none_of(suites().begin(), suites().end(), [&](const auto& s) { return s.first == suite; })) {
    throw Error("unknown suite '" + suite + "'");
  }
  return out;
}

std::vector<Finding> collect_findings(const std::vector<CheckReport>& reports) {
  std::vector<Finding> seen;
  for (const auto& r : reports) {
    for (const auto& f : r.findings) {
      if (std::find(seen.begin(), seen.end(), f) == seen.end()) seen.push_back(f);
    }
  }
  return seen;
}

CheckReport supersphere_report() {
  CheckReport report;
  ReportTimer timer(report);
  report.check = "supersphere";
  report.preset = "P_full";
  const Presentation full = load_preset("P_full").presentation;
  const Presentation red = load_preset("P_red").presentation;
  Element in_full = full.normalize(supersphere_in(full, "x", "y"));
  Element in_red = red.normalize(supersphere_in(red, "x_+", "x_-"));
  report.add_detail("P_full", full.format(in_full));
  report.add_detail("P_red", red.format(in_red));
  Element expected = parse_element("(s - s^-1) * x_+ * x_- - q * theta^2", red);
  if (!in_full.is_zero()) report.fail("r = " + full.format(in_full) + " in P_full");
  if (in_red != expected) report.fail("r = " + red.format(in_red) + " in P_red");
  report.add_finding("basis-theta-squared",
                     "the four-relation superspace reduces theta^2 to s(q-1) y x, so theta^l x^k y^n with l >= 2 is not a "
                     "basis and r normalizes to " + full.format(in_full) +
                         "; the three-relation form keeps theta^2 normal and r = " + red.format(in_red));
  return report;
}

CheckReport representation_report() {
  CheckReport report;
  ReportTimer timer(report);
  report.check = "representation";
  report.preset = "P_full";
  const Presentation full = load_preset("P_full").presentation;
  auto rep = superspace_representation();
  CheckReport reversed = check_matrix_representation(rep, full, Orientation::reversed);
  CheckReport direct = check_matrix_representation(rep, full, Orientation::direct);
  report.add_detail("reversed", to_string(reversed.status));
  report.add_detail("direct", to_string(direct.status));
  if (direct.residual) report.add_detail("direct_residual", *direct.residual);
  if (reversed.status != Status::pass) report.fail("reversed: " + reversed.residual.value_or(""));
  if (direct.status != Status::fail) report.fail("direct orientation unexpectedly holds");
  report.add_finding("rho-orientation",
                     "the matrices satisfy the relations only as an anti-representation rho(ab) = rho(b) rho(a); the "
                     "direct product fails at " + direct.residual.value_or("?"));
  return report;
}

CheckReport pairing_values_report(const Pairing& pairing) {
  CheckReport report;
  ReportTimer timer(report);
  report.check = "pairing-values:" + to_string(pairing.convention());
  report.preset = pairing.presentation().name();
  DualElement K = DualElement::letter(DualLetter::K());
  DualElement KN = DualElement::word({DualLetter::K(), DualLetter::N()});
  Exponents x2{2, 0, 0};
  Exponents y{0, 0, 1};
  Scalar k_x2 = pairing.pair(K, Element::word(pairing.basis_word(x2)));
  Scalar kn_y = pairing.pair(KN, Element::word(pairing.basis_word(y)));
  report.add_detail("<K,x^2>", k_x2.to_string());
  report.add_detail("<KN,y>", kn_y.to_string());
  if (k_x2 != Scalar(2)) report.fail("<K,x^2> = " + k_x2.to_string());
  // Closed form (k - 1)(delta_{l0} + delta_{l1}) delta_{n1} at (0,0,1).
  Scalar closed((y.k - 1) * ((y.l == 0 && y.n == 1) + (y.l == 1 && y.n == 1)));
  report.add_detail("<KN,y>_closed_form", closed.to_string());
  if (kn_y != closed) report.fail("<KN,y> = " + kn_y.to_string() + ", closed form " + closed.to_string());
  return report;
}

}  // namespace qsv

#include "qsv/lie.hpp"

#include "qsv/algebra_checks.hpp"
#include "qsv/presets.hpp"

namespace qsv {

namespace {

// Folds a sub-check into `into`, prefixing its residual and details with `label`.
void absorb(CheckReport& into, const CheckReport& part, const std::string& label) {
  into.add_detail(label, to_string(part.status));
  for (const auto& [k, v] : part.details) into.add_detail(label + ":" + k, v);
  for (const auto& f : part.findings) into.findings.push_back(f);
  if (part.status == Status::fail) {
    into.fail(label + ": " + part.residual.value_or(""));
  } else if (part.status == Status::inconclusive) {
    into.inconclusive(label + ": " + part.residual.value_or(""), part.missing_pairs);
  }
}

}  // namespace

HopfStructure enveloping_algebra() {
  SpecFile spec = load_preset("U_Lhbar");
  return HopfStructure(spec.presentation, spec.maps);
}

CheckReport check_enveloping_confluence(int max_len) {
  const Presentation p = load_preset("U_Lhbar").presentation;
  CheckReport report = check_local_confluence(p, max_len, 0);
  report.check = "lie:confluence";
  Element u = p.gen("u");
  Element xi = p.gen("xi");
  Element v = p.gen("v");
  Element vxu = p.normalize(free_product(free_product(v, xi), u));
  report.add_detail("v*xi*u", p.format(vxu));
  Element xi2 = free_product(xi, xi);
  report.add_detail("u*xi^2 - xi^2*u", p.format(p.normalize(free_product(u, xi2) - free_product(xi2, u))));
  report.add_finding("xi-squared",
                     "xi^2 is left irreducible: only the three stated brackets are imposed. Inheriting "
                     "theta^2 = s(q-1) y x from the full algebra would add a further xi^2 relation.");
  report.add_finding("lie-star", "star structure involves ln(e^-u v), which has no finite presentation; skipped");
  return report;
}

CheckReport check_bridge_identities(int k_max) {
  const Presentation p = load_preset("P_red").presentation;
  CheckReport report;
  ReportTimer timer(report);
  report.check = "lie:bridge";
  report.preset = p.name();
  report.add_parameter("k_max", std::to_string(k_max));
  Element xp = p.gen("x_+");
  Element xm = p.gen("x_-");
  Element t = p.gen("theta");
  const Scalar q = Scalar::q();
  auto shift = verify_identity_family(
      p, "x_+^k theta",
      [&](int k) { return free_product(power(p, xp, k), t) - q.pow(k) * free_product(t, power(p, xp, k)); }, 1,
      k_max);
  absorb(report, shift, "x_+^k theta = q^k theta x_+^k");
  auto bracket = verify_identity_family(
      p, "[x_+^k, x_-]",
      [&](int k) {
        Element xk = power(p, xp, k);
        Scalar coeff = Scalar::s().inverse() * (q.pow(2 * k) - 1) / (q - 1);
        return free_product(xk, xm) - free_product(xm, xk) -
               coeff * free_product(free_product(t, t), power(p, xp, k - 1));
      },
      1, k_max);
  absorb(report, bracket, "[x_+^k, x_-] = s^-1 (q^2k - 1)/(q - 1) theta^2 x_+^(k-1)");
  return report;
}

CheckReport check_lie_hopf(int max_degree) {
  HopfStructure h = enveloping_algebra();
  const Presentation& p = h.presentation();
  CheckReport report;
  ReportTimer timer(report);
  report.check = "lie:hopf";
  report.preset = p.name();
  report.add_parameter("degree", std::to_string(max_degree));
  report.add_parameter("c", "formal");
  absorb(report, check_comaps_well_defined(h), "well_defined");
  absorb(report, check_hopf_axioms(h, max_degree, 0), "axioms");
  absorb(report, check_antipode_order(h, max_degree, 0, AntipodeConvention::same), "S^2 = id");

  Element u = p.gen("u");
  Element xi = p.gen("xi");
  absorb(report, check_primitive(h, p.supercommutator(u, xi), "[u,xi]"), "[u,xi] primitive");

  TensorElement dxi = h.coproduct(xi);
  TensorElement square = tensor_multiply(dxi, dxi, p);
  Element xi2 = p.multiply(xi, xi);
  report.add_detail("Delta(xi)^2", format(square, p));
  if (square != TensorElement::pure({xi2, Element(1)}) + TensorElement::pure({Element(1), xi2})) {
    report.fail("Delta(xi)^2 = " + format(square, p));
  }
  Element bracket = p.supercommutator(u, p.gen("v")) - Scalar::param(Param::c) * xi2;
  report.add_detail("S([u,v] - c xi^2)", p.format(h.antipode(bracket)));
  return report;
}

}  // namespace qsv

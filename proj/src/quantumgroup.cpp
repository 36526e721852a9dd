#include "qsv/quantumgroup.hpp"

#include <algorithm>

#include "qsv/algebra_checks.hpp"
#include "qsv/errors.hpp"

namespace qsv {

namespace {

const std::array<std::array<const char*, 3>, 3> kEntryNames{{
    {"a", "alpha", "b"},
    {"gamma", "e", "beta"},
    {"c", "delta", "d"},
}};

std::string entry_label(const std::string& prefix, int i, int j) {
  return prefix + "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

Word shift_word(const Word& w, int offset) {
  Word out;
  out.reserve(w.size());
  for (Letter l : w) out.push_back(make_letter(letter_generator(l) + offset, letter_is_inverse(l)));
  return out;
}

Element shift(const Element& e, int offset) {
  Element out;
  for (const auto& [w, c] : e.terms()) out.add(shift_word(w, offset), c);
  return out;
}

TensorElement shift(const TensorElement& t, int offset) {
  TensorElement out(t.legs());
  for (const auto& [key, c] : t.terms()) {
    TensorElement::Key k;
    for (const Word& w : key) k.push_back(shift_word(w, offset));
    out.add(k, c);
  }
  return out;
}

// Same generators and explicit rules; inverses are dropped since coactions
// are only defined on the polynomial part.
Presentation polynomial_part(const Presentation& p) {
  PresentationBuilder b(p.name());
  for (Generator g : p.generators()) {
    g.invertible = false;
    b.add_generator(g);
  }
  for (const Rule& r : p.rules()) {
    if (!r.derived) b.add_rule(r.lhs, r.rhs);
  }
  b.set_requires_generic_q(p.requires_generic_q());
  return b.build();
}

// Replaces occurrences of lead(D) by lead(D) - (D - 1)/lambda until none remain.
Element substitute_unit(const Element& e, const Element& det, const Presentation& p) {
  if (det.is_zero()) return e;
  Word lead = det.leading_word();
  Scalar lead_coeff = det.coefficient(lead);
  Element one_minus = det - Element(1);
  Element cur = p.normalize(e);
  for (int guard = 0; guard < 64; ++guard) {
    Element next;
    bool changed = false;
    for (const auto& [w, c] : cur.terms()) {
      auto it = std::search(w.begin(), w.end(), lead.begin(), lead.end());
      if (it == w.end()) {
        next.add(w, c);
        continue;
      }
      changed = true;
      Word prefix(w.begin(), it);
      Word suffix(it + static_cast<std::ptrdiff_t>(lead.size()), w.end());
      next.add(w, c);
      next.add(free_product(free_product(Element::word(prefix), one_minus), Element::word(suffix)),
               -c / lead_coeff);
    }
    cur = p.normalize(next);
    if (!changed) return cur;
  }
  throw Error("determinant substitution did not terminate");
}

Status verdict(const Presentation& p, const Element& residual, std::vector<std::string>& pairs) {
  if (residual.is_zero()) return Status::pass;
  pairs = blocking_pairs(p, residual);
  return pairs.empty() ? Status::fail : Status::inconclusive;
}

void record(CheckReport& report, const std::string& label, Status status, const std::string& text,
            const std::vector<std::string>& pairs) {
  report.add_detail(label, to_string(status));
  if (status == Status::fail) report.fail(label + ": " + text);
  if (status == Status::inconclusive) report.inconclusive(label + ": " + text, pairs);
}

Element sphere_words(const Presentation& space) {
  if (space.generators().size() != 3) throw ShapeError("supersphere needs a three-generator space");
  Letter x1 = make_letter(0);
  Letter x2 = make_letter(1);
  Letter x3 = make_letter(2);
  Scalar s = Scalar::s();
  return s * Element::word({x3, x1}) + Element::word({x2, x2}) - s.inverse() * Element::word({x1, x3});
}

std::string format_matrix(const ScalarMatrix& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    out += i ? "; " : "";
    for (std::size_t j = 0; j < m[i].size(); ++j) out += (j ? ", " : "") + m[i][j].to_string();
  }
  return out + "]";
}

}  // namespace

Element supersphere(const Presentation& space) { return sphere_words(space); }

// ------------------------------------------------------------ matrices

void GenMatrix::validate(const Presentation& p) const {
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const Element& e = (*this)(i, j);
      if (e.is_zero()) continue;
      Parity want = odd_position(i, j) ? Parity::odd : Parity::even;
      if (p.parity(e) != want) throw ParityError(entry_label("entry", i, j) + " has the wrong parity");
    }
  }
}

GenMatrix generator_matrix(const Presentation& group) {
  GenMatrix t;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) t(i, j) = group.gen(kEntryNames[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  }
  t.validate(group);
  return t;
}

GenMatrix antipode_matrix(const HopfStructure& group) {
  GenMatrix t = generator_matrix(group.presentation());
  GenMatrix out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out(i, j) = group.antipode(t(i, j));
  }
  return out;
}

GenMatrix multiply(const GenMatrix& a, const GenMatrix& b, const Presentation& p) {
  GenMatrix out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Element sum;
      for (int k = 0; k < 3; ++k) sum += free_product(a(i, k), b(k, j));
      out(i, j) = p.normalize(sum);
    }
  }
  return out;
}

// ------------------------------------------------------- superdeterminant

Element superdeterminant(const Presentation& group, int form) {
  Scalar s = Scalar::s();
  Scalar q = Scalar::q();
  Element a = group.gen("a");
  Element b = group.gen("b");
  Element c = group.gen("c");
  Element d = group.gen("d");
  Element alpha = group.gen("alpha");
  Element delta = group.gen("delta");
  if (form == 1) return free_product(a, d) - q * free_product(b, c) - s * free_product(alpha, delta);
  if (form == 2) return free_product(d, a) - q.inverse() * free_product(b, c) + s.inverse() * free_product(delta, alpha);
  throw Error("superdeterminant form must be 1 or 2");
}

Element apply_unit_determinant(const Element& e, const Presentation& group) {
  return substitute_unit(e, group.normalize(superdeterminant(group, 1)), group);
}

CheckReport superdeterminant_report(const Presentation& group) {
  CheckReport report;
  ReportTimer timer(report);
  report.check = "superdeterminant";
  report.preset = group.name();
  Element first = group.normalize(superdeterminant(group, 1));
  Element second = group.normalize(superdeterminant(group, 2));
  report.add_detail("normal_form", group.format(first));
  if (first != second) report.fail("forms differ by " + group.format(first - second));
  for (const char* name : {"a", "alpha", "b", "c", "delta", "d"}) {
    Element u = group.gen(name);
    Element bracket = group.normalize(free_product(first, u) - free_product(u, first));
    std::vector<std::string> pairs;
    Status st = verdict(group, bracket, pairs);
    record(report, std::string("[D,") + name + "]", st, group.format(bracket), pairs);
  }
  return report;
}

CheckReport check_inverse(const GenMatrix& t, const GenMatrix& tinv, const Presentation& group,
                          bool unit_determinant) {
  CheckReport report;
  ReportTimer timer(report);
  report.check = "antipode-matrix";
  report.preset = group.name();
  report.add_parameter("unit_determinant", unit_determinant ? "true" : "false");
  t.validate(group);
  tinv.validate(group);
  Element det = group.normalize(superdeterminant(group, 1));
  auto run = [&](const GenMatrix& product, const std::string& prefix) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        Element e = product(i, j);
        if (unit_determinant) e = substitute_unit(e, det, group);
        Element residual = e - Element(i == j ? 1 : 0);
        std::vector<std::string> pairs;
        Status st = verdict(group, residual, pairs);
        record(report, entry_label(prefix, i, j), st, group.format(residual), pairs);
      }
    }
  };
  run(multiply(t, tinv, group), "T*Tinv");
  run(multiply(tinv, t, group), "Tinv*T");
  return report;
}

// ------------------------------------------------------------ coactions

std::string to_string(Side s) { return s == Side::left ? "left" : "right"; }

Coaction::Coaction(const Presentation& space, const Presentation& group, Side side)
    : side_(side), space_(polynomial_part(space)), group_(polynomial_part(group)) {
  if (space_.generators().size() != 3) throw ShapeError("coaction needs a three-generator space");
  int n_group = static_cast<int>(group_.generators().size());
  int n_space = 3;
  group_offset_ = side == Side::left ? 0 : n_space;
  space_offset_ = side == Side::left ? n_group : 0;

  PresentationBuilder b(space_.name() + "|" + group_.name() + "|" + to_string(side));
  std::vector<Generator> gens(static_cast<std::size_t>(n_group + n_space));
  for (int i = 0; i < n_group; ++i) gens[static_cast<std::size_t>(i + group_offset_)] = group_.generators()[i];
  for (int i = 0; i < n_space; ++i) gens[static_cast<std::size_t>(i + space_offset_)] = space_.generators()[i];
  for (const auto& g : gens) {
    if (std::count_if(gens.begin(), gens.end(), [&](const Generator& o) { return o.name == g.name; }) > 1) {
      throw PresentationError("generator '" + g.name + "' occurs in both space and group");
    }
    b.add_generator(g);
  }
  for (const Rule& r : group_.rules()) b.add_rule(shift_word(r.lhs, group_offset_), shift(r.rhs, group_offset_));
  for (const Rule& r : space_.rules()) b.add_rule(shift_word(r.lhs, space_offset_), shift(r.rhs, space_offset_));
  for (int x = 0; x < n_space; ++x) {
    for (int t = 0; t < n_group; ++t) {
      Letter xl = make_letter(x + space_offset_);
      Letter tl = make_letter(t + group_offset_);
      bool odd = space_.generators()[x].parity == Parity::odd && group_.generators()[t].parity == Parity::odd;
      Scalar sign(odd ? -1 : 1);
      // Space letters go right of group letters for the left coaction.
      if (side == Side::left) {
        b.add_rule({xl, tl}, Element::word({tl, xl}, sign));
      } else {
        b.add_rule({tl, xl}, Element::word({xl, tl}, sign));
      }
    }
  }
  b.set_requires_generic_q(space_.requires_generic_q() || group_.requires_generic_q());
  combined_ = b.build();

  GenMatrix t = generator_matrix(group_);
  for (int i = 0; i < 3; ++i) {
    Element img;
    for (int k = 0; k < 3; ++k) {
      if (side == Side::left) {
        img += free_product(shift(t(i, k), group_offset_), Element::letter(make_letter(k + space_offset_)));
      } else {
        img += free_product(Element::letter(make_letter(k + space_offset_)), shift(t(k, i), group_offset_));
      }
    }
    images_.push_back(combined_.normalize(img));
  }
}

Element Coaction::embed_space(const Element& e) const { return shift(e, space_offset_); }
Element Coaction::embed_group(const Element& e) const { return shift(e, group_offset_); }

Element Coaction::coact_combined(const Element& e) const {
  Element out;
  for (const auto& [w, c] : e.terms()) {
    Element acc(1);
    for (Letter l : w) {
      if (letter_is_inverse(l)) throw UnmappedGenerator("coaction is not defined on inverse letters");
      acc = combined_.multiply(acc, images_[static_cast<std::size_t>(letter_generator(l))]);
    }
    out.add(acc, c);
  }
  return out;
}

TensorElement Coaction::split(const Element& e) const {
  TensorElement out(2);
  auto is_space = [&](Letter l) {
    int g = letter_generator(l);
    return g >= space_offset_ && g < space_offset_ + 3;
  };
  for (const auto& [w, c] : e.terms()) {
    auto boundary = side_ == Side::left ? std::find_if(w.begin(), w.end(), is_space)
                                        : std::find_if_not(w.begin(), w.end(), is_space);
    Word first(w.begin(), boundary);
    Word second(boundary, w.end());
    bool sorted = side_ == Side::left ? std::all_of(second.begin(), second.end(), is_space)
                                      : std::none_of(second.begin(), second.end(), is_space);
    if (!sorted) throw Error("combined word " + combined_.format(w) + " is not sorted");
    out.add({first, second}, c);
  }
  return out;
}

std::vector<std::string> Coaction::blocking(const Element& e) const {
  Element group_words;
  int group_leg = side_ == Side::left ? 0 : 1;
  TensorElement legs = split(e);
  for (const auto& [key, c] : legs.terms()) {
    group_words.add(shift_word(key[static_cast<std::size_t>(group_leg)], -group_offset_), Scalar(1));
  }
  return blocking_pairs(group_, group_words);
}

TensorElement Coaction::coact(const Element& e) const { return split(coact_combined(e)); }

CheckReport check_covariance(const Presentation& space, Side side, const Presentation& group) {
  CheckReport report;
  ReportTimer timer(report);
  report.check = "covariance:" + to_string(side);
  report.preset = space.name() + "|" + group.name();
  Coaction delta(space, group, side);
  const Presentation& p = delta.combined();
  for (const Element& rel : space.relations()) {
    Element img = delta.coact_combined(rel);
    std::vector<std::string> pairs = delta.blocking(img);
    Status st = img.is_zero() ? Status::pass : pairs.empty() ? Status::fail : Status::inconclusive;
    record(report, space.format(rel), st, format(delta.split(img), p), pairs);
  }
  return report;
}

CheckReport check_coaction_axioms(const Presentation& space, const HopfStructure& group, Side side, int max_degree) {
  CheckReport report;
  ReportTimer timer(report);
  report.check = "comodule:" + to_string(side);
  report.preset = space.name() + "|" + group.presentation().name();
  report.add_parameter("degree", std::to_string(max_degree));
  const Presentation& gp = group.presentation();
  int n_group = static_cast<int>(gp.generators().size());
  int group_offset = side == Side::left ? 0 : 3;
  int space_offset = side == Side::left ? n_group : 0;

  // Free algebra on both generator sets; the space coaction is stored as the
  // coproduct of space letters so coproduct_on_leg applies either map.
  PresentationBuilder b("free");
  std::vector<Generator> gens(static_cast<std::size_t>(n_group + 3));
  for (int i = 0; i < n_group; ++i) {
    Generator g = gp.generators()[i];
    g.invertible = false;
    gens[static_cast<std::size_t>(i + group_offset)] = g;
  }
  for (int i = 0; i < 3; ++i) {
    Generator g = space.generators()[i];
    g.invertible = false;
    gens[static_cast<std::size_t>(i + space_offset)] = g;
  }
  for (const auto& g : gens) b.add_generator(g);
  Presentation free = b.build();

  StructureMaps maps;
  for (const auto& [g, img] : group.maps().coproduct) maps.coproduct[g + group_offset] = shift(img, group_offset);
  for (const auto& [g, c] : group.maps().counit) maps.counit[g + group_offset] = c;
  GenMatrix t = generator_matrix(gp);
  for (int i = 0; i < 3; ++i) {
    TensorElement img(2);
    for (int k = 0; k < 3; ++k) {
      Element coord = Element::letter(make_letter(k + space_offset));
      if (side == Side::left) {
        img.add(TensorElement::pure({shift(t(i, k), group_offset), coord}));
      } else {
        img.add(TensorElement::pure({coord, shift(t(k, i), group_offset)}));
      }
    }
    maps.coproduct[i + space_offset] = img;
  }
  HopfStructure h(free, maps);

  int space_leg = side == Side::left ? 1 : 0;
  int group_leg = 1 - space_leg;
  auto basis = enumerate_basis(space, max_degree, 0);
  long checked = 0;
  for (const Word& w : basis) {
    Word fw = shift_word(w, space_offset);
    TensorElement d = h.coproduct(fw);
    std::string name = space.format(w);
    if (h.coproduct_on_leg(d, space_leg) != h.coproduct_on_leg(d, group_leg)) {
      report.fail("coassociativity fails on " + name);
      break;
    }
    Element counit_side;
    for (const auto& [key, c] : d.terms()) {
      counit_side.add(key[static_cast<std::size_t>(space_leg)], c * h.counit(key[static_cast<std::size_t>(group_leg)]));
    }
    if (counit_side != Element::word(fw)) {
      report.fail("counit axiom fails on " + name + ": " + free.format(counit_side));
      break;
    }
    ++checked;
  }
  report.add_detail("basis_words", std::to_string(checked));
  return report;
}

CheckReport check_sphere_coinvariance(const Presentation& space, const Presentation& group, bool unit_determinant) {
  CheckReport report;
  ReportTimer timer(report);
  report.check = "sphere-coinvariance";
  report.preset = space.name() + "|" + group.name();
  report.add_parameter("unit_determinant", unit_determinant ? "true" : "false");
  Element r = sphere_words(space);
  for (Side side : {Side::left, Side::right}) {
    Coaction delta(space, group, side);
    const Presentation& p = delta.combined();
    Element residual = delta.coact_combined(r) - p.normalize(delta.embed_space(r));
    if (unit_determinant) {
      Element det = p.normalize(delta.embed_group(superdeterminant(delta.group(), 1)));
      residual = substitute_unit(residual, det, p);
    }
    std::vector<std::string> pairs = delta.blocking(residual);
    Status st = residual.is_zero() ? Status::pass : pairs.empty() ? Status::fail : Status::inconclusive;
    std::string label = side == Side::left ? "delta_L(r) - 1 (x) r" : "delta_R(r) - r (x) 1";
    record(report, label, st, format(delta.split(residual), p), pairs);
  }
  return report;
}

// ------------------------------------------------------ representations

std::string to_string(Orientation o) { return o == Orientation::direct ? "direct" : "reversed"; }

ScalarMatrix matrix_product(const ScalarMatrix& a, const ScalarMatrix& b) {
  if (a.empty() || b.empty() || a[0].size() != b.size()) throw ShapeError("matrix shapes do not match");
  ScalarMatrix out(a.size(), std::vector<Scalar>(b[0].size(), Scalar(0)));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < b[0].size(); ++j) out[i][j] += a[i][k] * b[k][j];
    }
  }
  return out;
}

ScalarMatrix evaluate(const Element& e, const Presentation& p, const std::map<std::string, ScalarMatrix>& rep,
                      Orientation o) {
  if (rep.empty()) throw ShapeError("empty representation");
  std::size_t n = rep.begin()->second.size();
  for (const auto& [name, m] : rep) {
    if (m.size() != n) throw ShapeError("representation matrices differ in size");
    for (const auto& row : m) {
      if (row.size() != n) throw ShapeError("representation matrix for " + name + " is not square");
    }
  }
  ScalarMatrix identity(n, std::vector<Scalar>(n, Scalar(0)));
  for (std::size_t i = 0; i < n; ++i) identity[i][i] = Scalar(1);
  ScalarMatrix out(n, std::vector<Scalar>(n, Scalar(0)));
  for (const auto& [w, c] : e.terms()) {
    ScalarMatrix acc = identity;
    for (Letter l : w) {
      if (letter_is_inverse(l)) throw UnmappedGenerator("representation of an inverse letter");
      const std::string& name = p.generators()[letter_generator(l)].name;
      auto it = rep.find(name);
      if (it == rep.end()) throw UnmappedGenerator("no matrix for " + name);
      acc = o == Orientation::direct ? matrix_product(acc, it->second) : matrix_product(it->second, acc);
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) out[i][j] += c * acc[i][j];
    }
  }
  return out;
}

CheckReport check_matrix_representation(const std::map<std::string, ScalarMatrix>& rep, const Presentation& p,
                                        Orientation o) {
  CheckReport report;
  ReportTimer timer(report);
  report.check = "representation:" + to_string(o);
  report.preset = p.name();
  for (const Element& rel : p.relations()) {
    ScalarMatrix m = evaluate(rel, p, rep, o);
    bool zero = std::all_of(m.begin(), m.end(), [](const auto& row) {
      return std::all_of(row.begin(), row.end(), [](const Scalar& v) { return v.is_zero(); });
    });
    report.add_detail(p.format(rel), zero ? "PASS" : "FAIL");
    if (!zero) report.fail("relation " + p.format(rel) + " gives " + format_matrix(m));
  }
  return report;
}

std::map<std::string, ScalarMatrix> superspace_representation() {
  Scalar q = Scalar::q();
  Scalar s = Scalar::s();
  Scalar z(0);
  Scalar one(1);
  return {
      {"x", {{q, z, z}, {z, q * q, z}, {z, z, one}}},
      {"theta", {{z, q - 1, z}, {z, z, z}, {s, z, z}}},
      {"y", {{z, z, z}, {z, z, z}, {z, one, z}}},
  };
}

}  // namespace qsv

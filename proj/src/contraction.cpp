#include "qsv/contraction.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "qsv/errors.hpp"
#include "qsv/presets.hpp"

namespace qsv {

namespace {

Presentation free_presentation(const std::string& name, const std::vector<Generator>& gens) {
  PresentationBuilder b(name);
  for (const Generator& g : gens) b.add_generator(g);
  return b.build();
}

bool path_like(const std::string& s) {
  return s.find('/') != std::string::npos || (s.size() > 3 && s.ends_with(".qs"));
}

// Generator correspondence: by name when the names agree, otherwise by position.
std::vector<int> generator_map(const Presentation& from, const Presentation& to) {
  std::size_t n = from.generators().size();
  if (n != to.generators().size()) {
    throw ShapeError(from.name() + " and " + to.name() + " have different generator counts");
  }
  std::vector<int> index(n);
  bool by_name = true;
  for (std::size_t i = 0; i < n; ++i) {
    auto j = to.find_generator(from.generators()[i].name);
    if (!j) by_name = false;
    index[i] = j.value_or(-1);
  }
  if (!by_name) {
    for (std::size_t i = 0; i < n; ++i) index[i] = static_cast<int>(i);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (from.generators()[i].parity != to.generators()[index[i]].parity) {
      throw ParityError("generator " + from.generators()[i].name + " corresponds to " +
                        to.generators()[index[i]].name + " of the other parity");
    }
  }
  return index;
}

bool same_names(const Presentation& a, const Presentation& b) {
  for (const auto& g : a.generators()) {
    if (!b.find_generator(g.name)) return false;
  }
  return true;
}

Element rename(const Element& e, const std::vector<int>& index) {
  Element out;
  for (const auto& [w, c] : e.terms()) {
    Word mapped;
    for (Letter l : w) mapped.push_back(make_letter(index[letter_generator(l)], letter_is_inverse(l)));
    out.add(mapped, c);
  }
  return out;
}

std::string format_relation(const Presentation& p, const Element& e) {
  if (e.is_zero()) return "0 = 0";
  const Word& lead = e.leading_word();
  Scalar lc = e.coefficient(lead);
  Element rest = e;
  rest.add(lead, -lc);
  Element rhs = (-lc.inverse()) * rest;
  return p.format(Element::word(lead)) + " = " + (rhs.is_zero() ? std::string("0") : p.format(rhs));
}

std::string limit_text(const std::optional<Limit>& limit) {
  if (!limit) return "none";
  return std::string(param_name(limit->param)) + "=" + limit->value.get_str();
}

}  // namespace

LinearTransform::LinearTransform(TransformSpec spec, Matrix inverse, Presentation target)
    : spec_(std::move(spec)), inverse_(std::move(inverse)), target_(std::move(target)) {}

LinearTransform::LinearTransform(const Presentation& source, TransformSpec spec) : spec_(std::move(spec)) {
  std::size_t n = source.generators().size();
  if (spec_.source.size() != n || spec_.target.size() != n || spec_.matrix.size() != n) {
    throw ShapeError("transform " + spec_.name + " is " + std::to_string(spec_.matrix.size()) + "x" +
                     std::to_string(spec_.matrix.size()) + " but " + source.name() + " has " + std::to_string(n) +
                     " generators");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (spec_.source[i] != source.generators()[i].name) {
      throw ShapeError("transform row " + std::to_string(i + 1) + " is for " + spec_.source[i] + ", expected " +
                       source.generators()[i].name);
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!spec_.matrix[i][j].is_zero() && source.generators()[i].parity != spec_.target[j].parity) {
        throw ParityError("transform entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") maps " +
                          spec_.source[i] + " onto " + spec_.target[j].name + " of the other parity");
      }
    }
  }
  Matrix augmented(n, std::vector<Scalar>(2 * n, Scalar(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) augmented[i][j] = spec_.matrix[i][j];
    augmented[i][n + i] = Scalar(1);
  }
  Rref r = rref(augmented);
  if (r.rank() < n || r.pivots[n - 1] != n - 1) throw Error("transform " + spec_.name + " is singular");
  inverse_.assign(n, std::vector<Scalar>(n, Scalar(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inverse_[i][j] = r.reduced[i][n + j];
  }
  target_ = free_presentation(spec_.name + "-target", spec_.target);
}

Element LinearTransform::apply(const Element& e) const {
  std::size_t n = spec_.matrix.size();
  std::vector<Element> images(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) images[i].add(Word{make_letter(static_cast<int>(j))}, spec_.matrix[i][j]);
  }
  Element out;
  for (const auto& [w, c] : e.terms()) {
    Element term(c);
    for (Letter l : w) {
      if (letter_is_inverse(l)) throw ShapeError("linear transforms do not act on inverse letters");
      term = free_product(term, images[letter_generator(l)]);
    }
    out += term;
  }
  return out;
}

LinearTransform LinearTransform::inverse() const {
  TransformSpec back;
  back.name = spec_.name + "^-1";
  for (const auto& g : spec_.target) back.source.push_back(g.name);
  const auto& src = spec_.source;
  for (std::size_t i = 0; i < src.size(); ++i) {
    Generator g = spec_.target[i];
    g.name = src[i];
    back.target.push_back(g);
  }
  back.matrix = inverse_;
  Presentation target = free_presentation(back.name + "-target", back.target);
  return LinearTransform(std::move(back), spec_.matrix, std::move(target));
}

LinearTransform load_transform(const Presentation& source, const SpecFile& source_spec, const std::string& name_or_path) {
  if (source_spec.transform && source_spec.transform->name == name_or_path) {
    return LinearTransform(source, *source_spec.transform);
  }
  if (path_like(name_or_path)) return LinearTransform(source, parse_transform(read_spec_text(name_or_path), source));
  throw Error("unknown transform '" + name_or_path + "' for " + source.name());
}

LinearTransform identity_transform(const Presentation& source) {
  TransformSpec t;
  t.name = "identity";
  std::size_t n = source.generators().size();
  t.matrix.assign(n, std::vector<Scalar>(n, Scalar(0)));
  for (std::size_t i = 0; i < n; ++i) {
    Generator g = source.generators()[i];
    g.incomplete = false;
    t.source.push_back(g.name);
    t.target.push_back(g);
    t.matrix[i][i] = Scalar(1);
  }
  return LinearTransform(source, std::move(t));
}

std::vector<Element> transform_presentation(const Presentation& p, const LinearTransform& g) {
  if (p.generators().size() != g.matrix().size()) {
    throw ShapeError(p.name() + " has " + std::to_string(p.generators().size()) + " generators, transform " +
                     g.name() + " expects " + std::to_string(g.matrix().size()));
  }
  std::vector<Element> out;
  for (const Element& r : p.relations()) out.push_back(g.apply(r));
  return out;
}

std::vector<Element> reduce_relations(const std::vector<Element>& raw) {
  std::map<std::size_t, std::vector<const Element*>> by_degree;
  for (const Element& e : raw) {
    if (e.is_zero()) continue;
    std::size_t d = e.terms().begin()->first.size();
    for (const auto& [w, c] : e.terms()) {
      if (w.size() != d) throw ShapeError("relation is not homogeneous");
    }
    by_degree[d].push_back(&e);
  }
  std::vector<Element> out;
  for (const auto& [degree, rows] : by_degree) {
    std::vector<Word> columns;
    for (const Element* e : rows) {
      for (const auto& [w, c] : e->terms()) columns.push_back(w);
    }
    std::sort(columns.begin(), columns.end(), [](const Word& a, const Word& b) { return compare_words(a, b) > 0; });
    columns.erase(std::unique(columns.begin(), columns.end()), columns.end());
    std::map<Word, std::size_t, WordLess> column_of;
    for (std::size_t j = 0; j < columns.size(); ++j) column_of[columns[j]] = j;
    Matrix m(rows.size(), std::vector<Scalar>(columns.size(), Scalar(0)));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (const auto& [w, c] : rows[i]->terms()) m[i][column_of[w]] = c;
    }
    Rref r = rref(std::move(m));
    for (std::size_t i = 0; i < r.rank(); ++i) {
      Element e;
      for (std::size_t j = 0; j < columns.size(); ++j) e.add(columns[j], r.reduced[i][j]);
      out.push_back(std::move(e));
    }
  }
  return out;
}

Limit parse_limit(const std::string& text) {
  auto eq = text.find('=');
  if (eq == std::string::npos) throw Error("bad limit '" + text + "' (expected PARAM=VALUE)");
  std::string name = text.substr(0, eq);
  Limit l;
  if (name == "s") {
    l.param = Param::s;
  } else if (name == "h") {
    l.param = Param::h;
  } else if (name == "hb") {
    l.param = Param::hb;
  } else {
    throw Error("bad limit parameter '" + name + "' (expected s, h or hb)");
  }
  try {
    l.value = mpq_class(text.substr(eq + 1));
    l.value.canonicalize();
  } catch (const std::exception&) {
    throw Error("bad limit value in '" + text + "'");
  }
  return l;
}

ContractionResult reduce_and_limit(const std::vector<Element>& raw, const Presentation& target,
                                   const std::optional<Limit>& limit, const std::string& name) {
  ContractionResult result;
  result.reduced = reduce_relations(raw);
  if (limit) {
    std::vector<Element> limited;
    for (const Element& e : result.reduced) {
      limited.push_back(e.map_coefficients([&](const Scalar& c) { return c.limit_at(limit->param, limit->value); }));
    }
    result.limit_relations = reduce_relations(limited);
    result.rank_drop = result.reduced.size() - result.limit_relations.size();
  } else {
    result.limit_relations = result.reduced;
  }
  PresentationBuilder b(name);
  for (const Generator& g : target.generators()) b.add_generator(g);
  b.set_requires_generic_q(!limit.has_value());
  for (const Element& e : result.limit_relations) b.add_relation(e);
  result.presentation = b.build();
  return result;
}

CheckReport compare_presentations(const Presentation& computed, const Presentation& expected) {
  CheckReport report;
  report.check = "compare";
  report.preset = computed.name();
  ReportTimer timer(report);
  report.add_parameter("expected", expected.name());
  std::vector<int> to_computed = generator_map(expected, computed);
  std::vector<int> to_expected = generator_map(computed, expected);
  report.add_detail("generator_map", same_names(computed, expected) ? "by name" : "by position");

  std::vector<Element> expected_here;
  for (const Element& e : expected.relations()) {
    Element mapped = rename(e, to_computed);
    expected_here.push_back(mapped);
    Element residual = computed.normalize(mapped);
    report.add_detail("expected: " + format_relation(computed, mapped), residual.is_zero() ? "PASS" : "FAIL");
    if (!residual.is_zero()) {
      report.fail("expected relation " + format_relation(computed, mapped) + " leaves " + computed.format(residual));
    }
  }
  for (const Element& c : computed.relations()) {
    Element mapped = rename(c, to_expected);
    Element residual = expected.normalize(mapped);
    report.add_detail("computed: " + format_relation(computed, c), residual.is_zero() ? "PASS" : "FAIL");
    if (!residual.is_zero()) {
      report.fail("computed relation " + format_relation(computed, c) + " leaves " + expected.format(residual) +
                  " in " + expected.name());
    }
  }

  bool homogeneous = true;
  for (const std::vector<Element>* list : {&std::as_const(expected_here), &computed.relations()}) {
    for (const Element& e : *list) {
      for (const auto& [w, c] : e.terms()) homogeneous = homogeneous && w.size() == e.leading_word().size();
    }
  }
  if (homogeneous) {
    std::vector<Element> mine = reduce_relations(computed.relations());
    std::vector<Element> theirs = reduce_relations(expected_here);
    report.add_detail("row_space", mine == theirs ? "equal" : "different");
    // Declared relations that are multiples of a reduced row by a factor other than +-1.
    std::string scales;
    for (const Element& e : expected_here) {
      if (e.is_zero()) continue;
      const Word& lead = e.leading_word();
      Scalar lc = e.coefficient(lead);
      for (const Element& r : mine) {
        if (r.leading_word() != lead) continue;
        if (lc != Scalar(1) && lc != Scalar(-1) && e == lc * r) {
          if (!scales.empty()) scales += "; ";
          scales += computed.format(Element::word(lead)) + " x " + lc.to_string();
        }
      }
    }
    report.add_detail("scale_factors", scales.empty() ? "none" : scales);
  }
  return report;
}

CheckReport contraction_report(const std::string& source_preset, const std::string& transform,
                               const std::optional<Limit>& limit, const std::string& expected_preset) {
  SpecFile spec = load_preset(source_preset);
  const Presentation& source = spec.presentation;
  CheckReport report;
  report.check = "contraction";
  report.preset = source_preset;
  ReportTimer timer(report);
  report.add_parameter("transform", transform);
  report.add_parameter("limit", limit_text(limit));
  if (!expected_preset.empty()) report.add_parameter("expect", expected_preset);

  LinearTransform g = transform == "identity" ? identity_transform(source) : load_transform(source, spec, transform);
  std::vector<Element> raw = transform_presentation(source, g);
  const Presentation& target = g.target();
  for (std::size_t i = 0; i < raw.size(); ++i) report.add_detail("transformed " + std::to_string(i + 1), target.format(raw[i]));
  ContractionResult result;
  try {
    result = reduce_and_limit(raw, target, limit, source_preset + "/" + g.name());
  } catch (const PoleError& e) {
    report.fail(std::string("inadmissible contraction: ") + e.what());
    return report;
  }
  for (std::size_t i = 0; i < result.reduced.size(); ++i) {
    report.add_detail("reduced " + std::to_string(i + 1), format_relation(target, result.reduced[i]));
  }
  for (std::size_t i = 0; limit && i < result.limit_relations.size(); ++i) {
    report.add_detail("limit " + std::to_string(i + 1), format_relation(target, result.limit_relations[i]));
  }
  report.add_detail("rank_drop", std::to_string(result.rank_drop));
  if (expected_preset.empty()) return report;

  Presentation expected = load_preset(expected_preset).presentation;
  CheckReport cmp = compare_presentations(result.presentation, expected);
  for (auto& kv : cmp.details) report.details.push_back(kv);
  report.status = cmp.status;
  report.residual = cmp.residual;
  return report;
}

CheckReport check_h_sphere(const Presentation& p) {
  CheckReport report;
  report.check = "h-sphere";
  report.preset = p.name();
  ReportTimer timer(report);
  auto sphere_of = [](const Presentation& a, const Scalar& h) {
    Element xp = a.gen("X_+"), th = a.gen("Theta"), xm = a.gen("X_-");
    Element four = free_product(xm, xp) + free_product(th, th) + h * free_product(xp, xp) - free_product(xp, xm);
    Element two = h * free_product(xp, xp) - free_product(th, th);
    return std::make_pair(four, two);
  };
  auto [four, two] = sphere_of(p, Scalar::param(Param::h));
  Element got = p.normalize(four);
  Element want = p.normalize(two);
  report.add_detail("four_term", p.format(got));
  if (got != want) report.fail("four-term form gives " + p.format(got) + ", expected " + p.format(want));
  for (const char* name : {"X_+", "Theta", "X_-"}) {
    Element bracket = p.supercommutator(two, p.gen(name));
    report.add_detail(std::string("[r_h,") + name + "]", bracket.is_zero() ? "PASS" : "FAIL");
    if (!bracket.is_zero()) report.fail(std::string("[r_h, ") + name + "] = " + p.format(bracket));
  }

  Presentation flat = p.specialize({{Param::h, Scalar(0)}});
  auto [four0, two0] = sphere_of(flat, Scalar(0));
  bool flat_ok = flat.normalize(four0) == flat.normalize(two0);
  for (const char* name : {"X_+", "Theta", "X_-"}) flat_ok = flat_ok && flat.supercommutator(two0, flat.gen(name)).is_zero();
  report.add_detail("h=0", flat_ok ? "PASS" : "FAIL");
  if (!flat_ok) report.fail("r_h at h = 0 is not central");
  return report;
}

}  // namespace qsv

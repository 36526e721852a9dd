#include "qsv/hopf.hpp"

#include <algorithm>
#include <mutex>
#include <random>
#include <unordered_map>

#include "qsv/algebra_checks.hpp"
#include "qsv/errors.hpp"

namespace qsv {

StructureMaps primitive_maps(const Presentation& p) {
  StructureMaps m;
  for (int g = 0; g < static_cast<int>(p.generators().size()); ++g) {
    Element e = Element::letter(make_letter(g));
    m.coproduct.emplace(g, TensorElement::pure({e, Element(1)}) + TensorElement::pure({Element(1), e}));
    m.counit.emplace(g, Scalar());
    m.antipode.emplace(g, -e);
  }
  return m;
}

std::string to_string(AntipodeConvention c) { return c == AntipodeConvention::same ? "same" : "flip"; }

Word inverse_word(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (Letter& l : out) l = letter_inverse(l);
  return out;
}

struct HopfStructure::Cache {
  std::mutex mutex;
  std::unordered_map<Word, TensorElement, WordHash> coproduct;
  std::unordered_map<Word, Element, WordHash> antipode;
};

HopfStructure::HopfStructure(Presentation p, StructureMaps maps)
    : p_(std::move(p)), maps_(std::move(maps)), cache_(std::make_shared<Cache>()) {
  for (const auto& [g, img] : maps_.antipode) {
    if (p_.parity(img) != p_.generators()[g].parity) {
      throw ParityError("antipode image of " + p_.generators()[g].name + " has the wrong parity");
    }
  }
  for (const auto& [g, img] : maps_.star) {
    if (p_.parity(img) != p_.generators()[g].parity) {
      throw ParityError("star image of " + p_.generators()[g].name + " has the wrong parity");
    }
  }
}

namespace {

[[noreturn]] void unmapped(const Presentation& p, Letter l, const char* what) {
  throw UnmappedGenerator(std::string("no ") + what + " image for " + p.format(Word{l}));
}

bool invertible_word(const Presentation& p, const Word& w) {
  for (Letter l : w) {
    if (!p.generators()[letter_generator(l)].invertible) return false;
  }
  return true;
}

// Inverse of a single-term element c*w with w invertible.
Element invert_monomial(const Presentation& p, const Element& e, Letter l, const char* what) {
  if (e.size() != 1 || !invertible_word(p, e.terms().begin()->first)) {
    throw UnmappedGenerator(std::string(what) + " image of " + p.format(Word{letter_inverse(l)}) +
                            " is not invertible, so " + p.format(Word{l}) + " has no image");
  }
  const auto& [w, c] = *e.terms().begin();
  return Element::word(inverse_word(w), c.inverse());
}

}  // namespace

TensorElement HopfStructure::letter_coproduct(Letter l) const {
  int g = letter_generator(l);
  auto it = maps_.coproduct.find(g);
  if (it == maps_.coproduct.end()) unmapped(p_, l, "coproduct");
  if (!letter_is_inverse(l)) return it->second;
  const TensorElement& t = it->second;
  if (t.terms().size() != 1) unmapped(p_, l, "coproduct");
  const auto& [key, c] = *t.terms().begin();
  TensorElement::Key inv;
  for (const Word& w : key) {
    if (!invertible_word(p_, w)) unmapped(p_, l, "coproduct");
    inv.push_back(inverse_word(w));
  }
  TensorElement out(t.legs());
  out.add(inv, c.inverse());
  return out;
}

Scalar HopfStructure::letter_counit(Letter l) const {
  auto it = maps_.counit.find(letter_generator(l));
  if (it == maps_.counit.end()) unmapped(p_, l, "counit");
  return letter_is_inverse(l) ? it->second.inverse() : it->second;
}

Element HopfStructure::letter_antipode(Letter l) const {
  auto it = maps_.antipode.find(letter_generator(l));
  if (it == maps_.antipode.end()) unmapped(p_, l, "antipode");
  return letter_is_inverse(l) ? invert_monomial(p_, it->second, l, "antipode") : it->second;
}

Element HopfStructure::letter_star(Letter l) const {
  auto it = maps_.star.find(letter_generator(l));
  if (it == maps_.star.end()) unmapped(p_, l, "star");
  return letter_is_inverse(l) ? invert_monomial(p_, it->second, l, "star") : it->second;
}

TensorElement HopfStructure::coproduct(const Word& w) const {
  {
    std::lock_guard lock(cache_->mutex);
    auto it = cache_->coproduct.find(w);
    if (it != cache_->coproduct.end()) return it->second;
  }
  TensorElement result = TensorElement::unit(2);
  if (!w.empty()) {
    // Split off the last letter so prefixes are reused from the cache.
    Word prefix(w.begin(), w.end() - 1);
    result = tensor_multiply(coproduct(prefix), normalize(letter_coproduct(w.back()), p_), p_);
  }
  std::lock_guard lock(cache_->mutex);
  return cache_->coproduct.try_emplace(w, std::move(result)).first->second;
}

TensorElement HopfStructure::coproduct(const Element& e) const {
  TensorElement out(2);
  for (const auto& [w, c] : e.terms()) out.add(coproduct(w), c);
  return out;
}

Scalar HopfStructure::counit(const Word& w) const {
  Scalar r(1);
  for (Letter l : w) {
    r *= letter_counit(l);
    if (r.is_zero()) break;
  }
  return r;
}

Scalar HopfStructure::counit(const Element& e) const {
  Scalar r;
  for (const auto& [w, c] : e.terms()) r += c * counit(w);
  return r;
}

Element HopfStructure::antihomomorphic(const Word& w, const std::function<Element(Letter)>& image) const {
  // (l_1 ... l_n) -> (-1)^{#odd pairs} img(l_n) ... img(l_1)
  int odd = 0;
  for (Letter l : w) odd += p_.letter_parity(l) == Parity::odd;
  bool negative = (odd * (odd - 1) / 2) % 2 == 1;
  Element acc(1);
  for (auto it = w.rbegin(); it != w.rend(); ++it) acc = p_.multiply(acc, image(*it));
  return negative ? -acc : acc;
}

Element HopfStructure::antipode(const Word& w) const {
  {
    std::lock_guard lock(cache_->mutex);
    auto it = cache_->antipode.find(w);
    if (it != cache_->antipode.end()) return it->second;
  }
  Element result = antihomomorphic(w, [&](Letter l) { return letter_antipode(l); });
  std::lock_guard lock(cache_->mutex);
  return cache_->antipode.try_emplace(w, std::move(result)).first->second;
}

Element HopfStructure::antipode(const Element& e) const {
  Element out;
  for (const auto& [w, c] : e.terms()) out.add(antipode(w), c);
  return out;
}

Element HopfStructure::antipode_squared(const Element& e, AntipodeConvention conv) const {
  Element once = antipode(e);
  if (conv == AntipodeConvention::flip) {
    std::map<Param, Scalar> flip{{Param::s, Scalar::s(-1)}};
    once = once.map_coefficients([&](const Scalar& c) { return c.substitute(flip); });
  }
  return antipode(once);
}

Element HopfStructure::star(const Word& w) const {
  return antihomomorphic(w, [&](Letter l) { return letter_star(l); });
}

Element HopfStructure::star(const Element& e) const {
  Element out;
  for (const auto& [w, c] : e.terms()) out.add(star(w), c.conjugate());
  return out;
}

TensorElement HopfStructure::coproduct_on_leg(const TensorElement& t, int leg) const {
  TensorElement out(t.legs() + 1);
  for (const auto& [key, c] : t.terms()) {
    TensorElement split = coproduct(key[static_cast<std::size_t>(leg)]);
    for (const auto& [pair, d] : split.terms()) {
      TensorElement::Key k;
      for (int i = 0; i < t.legs(); ++i) {
        if (i == leg) {
          k.push_back(pair[0]);
          k.push_back(pair[1]);
        } else {
          k.push_back(key[static_cast<std::size_t>(i)]);
        }
      }
      out.add(k, c * d);
    }
  }
  return out;
}

// ------------------------------------------------------------------ checks

namespace {

CheckReport start(const std::string& check, const HopfStructure& h) {
  CheckReport r;
  r.check = check;
  r.preset = h.presentation().name();
  return r;
}

}  // namespace

CheckReport check_comaps_well_defined(const HopfStructure& h) {
  CheckReport report = start("hopf:well-defined", h);
  ReportTimer timer(report);
  const Presentation& p = h.presentation();
  for (const Element& rel : p.relations()) {
    TensorElement d = h.coproduct(rel);
    if (!d.is_zero()) {
      std::string text = "coproduct of " + p.format(rel) + " = " + format(d, p);
      auto gaps = blocking_pairs(p, d);
      gaps.empty() ? report.fail(text) : report.inconclusive(text, gaps);
      continue;
    }
    Scalar e = h.counit(rel);
    if (!e.is_zero()) {
      report.fail("counit of " + p.format(rel) + " = " + e.to_string());
      continue;
    }
    Element s = h.antipode(rel);
    if (!s.is_zero()) {
      std::string text = "antipode of " + p.format(rel) + " = " + p.format(s);
      auto gaps = blocking_pairs(p, s);
      gaps.empty() ? report.fail(text) : report.inconclusive(text, gaps);
    }
  }
  report.add_detail("relations", std::to_string(p.relations().size()));
  return report;
}

CheckReport check_hopf_axioms(const HopfStructure& h, int max_degree, int window) {
  CheckReport report = start("hopf:axioms", h);
  ReportTimer timer(report);
  report.add_parameter("degree", std::to_string(max_degree));
  report.add_parameter("window", std::to_string(window));
  const Presentation& p = h.presentation();
  auto basis = enumerate_basis(p, max_degree, window);
  for (const Word& w : basis) {
    std::string name = p.format(w);
    TensorElement d = h.coproduct(w);
    if (h.coproduct_on_leg(d, 0) != h.coproduct_on_leg(d, 1)) {
      report.fail("coassociativity fails on " + name);
      break;
    }
    Element left;
    Element right;
    Element s_left;
    Element s_right;
    for (const auto& [k, c] : d.terms()) {
      left.add(k[1], c * h.counit(k[0]));
      right.add(k[0], c * h.counit(k[1]));
      s_left.add(p.multiply(h.antipode(k[0]), Element::word(k[1])), c);
      s_right.add(p.multiply(Element::word(k[0]), h.antipode(k[1])), c);
    }
    Element self = Element::word(w);
    Element unit(h.counit(w));
    if (left != self) {
      report.fail("left counit law on " + name + ": " + p.format(left));
      break;
    }
    if (right != self) {
      report.fail("right counit law on " + name + ": " + p.format(right));
      break;
    }
    if (s_left != unit) {
      report.fail("left antipode law on " + name + ": " + p.format(s_left - unit));
      break;
    }
    if (s_right != unit) {
      report.fail("right antipode law on " + name + ": " + p.format(s_right - unit));
      break;
    }
  }
  report.add_detail("basis_words", std::to_string(basis.size()));
  return report;
}

CheckReport check_antipode_order(const HopfStructure& h, int max_degree, int window, AntipodeConvention c) {
  CheckReport report = start("hopf:antipode-order", h);
  ReportTimer timer(report);
  report.add_parameter("degree", std::to_string(max_degree));
  report.add_parameter("convention", to_string(c));
  const Presentation& p = h.presentation();
  for (const Word& w : enumerate_basis(p, max_degree, window)) {
    Element e = Element::word(w);
    Element twice = h.antipode_squared(e, c);
    if (twice != e) {
      report.fail("S^2(" + p.format(w) + ") = " + p.format(twice));
      break;
    }
  }
  return report;
}

CheckReport determine_antipode_convention(const HopfStructure& h, int max_degree, int window) {
  CheckReport report = start("hopf:antipode-order", h);
  ReportTimer timer(report);
  report.add_parameter("degree", std::to_string(max_degree));
  std::vector<std::string> holding;
  for (auto c : {AntipodeConvention::same, AntipodeConvention::flip}) {
    CheckReport sub = check_antipode_order(h, max_degree, window, c);
    report.add_detail(to_string(c), to_string(sub.status) + (sub.residual ? " (" + *sub.residual + ")" : ""));
    if (sub.passed()) holding.push_back(to_string(c));
  }
  if (holding.empty()) {
    report.fail("S^2 = id fails under both conventions");
  } else {
    std::string joined;
    for (const auto& s : holding) joined += (joined.empty() ? "" : ",") + s;
    report.add_detail("convention", joined);
    report.add_finding("antipode-order-convention",
                       "S^2 = id holds with convention: " + joined +
                           "; the coefficient flip s -> 1/s between applications " +
                           (std::find(holding.begin(), holding.end(), "flip") == holding.end() ? "breaks it"
                                                                                              : "also works"));
  }
  return report;
}

CheckReport check_primitive(const HopfStructure& h, const Element& e, const std::string& label) {
  CheckReport report = start("hopf:primitive:" + label, h);
  ReportTimer timer(report);
  const Presentation& p = h.presentation();
  Element n = p.normalize(e);
  TensorElement expected = TensorElement::pure({n, Element(1)}) + TensorElement::pure({Element(1), n});
  TensorElement d = h.coproduct(n) - expected;
  if (!d.is_zero()) report.fail("coproduct residual: " + format(d, p));
  Scalar eps = h.counit(n);
  if (!eps.is_zero()) report.fail("counit = " + eps.to_string());
  Element s = h.antipode(n) + n;
  if (!s.is_zero()) report.fail("antipode residual: " + p.format(s));
  return report;
}

CheckReport check_star(const HopfStructure& h, int max_degree, int random_pairs, unsigned seed) {
  CheckReport report = start("star", h);
  ReportTimer timer(report);
  report.add_parameter("degree", std::to_string(max_degree));
  const Presentation& p = h.presentation();
  for (const Element& rel : p.relations()) {
    Element r = h.star(rel);
    if (!r.is_zero()) report.fail("star of relation " + p.format(rel) + " = " + p.format(r));
  }
  auto basis = enumerate_basis(p, max_degree, 0);
  for (const Word& w : basis) {
    Element twice = h.star(h.star(w));
    if (twice != Element::word(w)) {
      report.fail("(" + p.format(w) + ")** = " + p.format(twice));
      break;
    }
  }
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
  for (int i = 0; i < random_pairs; ++i) {
    const Word& a = basis[pick(rng)];
    const Word& b = basis[pick(rng)];
    bool odd = p.parity(a) == Parity::odd && p.parity(b) == Parity::odd;
    Element lhs = h.star(p.multiply(Element::word(a), Element::word(b)));
    Element rhs = p.multiply(h.star(b), h.star(a));
    if (odd) rhs = -rhs;
    if (lhs != rhs) {
      report.fail("(" + p.format(a) + " * " + p.format(b) + ")* mismatch: " + p.format(lhs - rhs));
      break;
    }
  }
  report.add_detail("basis_words", std::to_string(basis.size()));
  return report;
}

}  // namespace qsv

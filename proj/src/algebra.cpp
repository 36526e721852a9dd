#include "qsv/algebra.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <unordered_map>

#include "qsv/errors.hpp"

namespace qsv {

int compare_words(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (Letter l : w) {
    h ^= static_cast<std::size_t>(l) + 0x9e3779b9u;
    h *= 1099511628211ull;
  }
  return h;
}

Word concat(const Word& a, const Word& b) {
  Word w;
  w.reserve(a.size() + b.size());
  w.insert(w.end(), a.begin(), a.end());
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

// ---------------------------------------------------------------- Element

Element::Element(Scalar c) {
  if (!c.is_zero()) terms_.emplace(Word{}, std::move(c));
}

Element Element::word(Word w, Scalar c) {
  Element e;
  if (!c.is_zero()) e.terms_.emplace(std::move(w), std::move(c));
  return e;
}

bool Element::is_scalar() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Scalar Element::scalar_part() const { return coefficient(Word{}); }

Scalar Element::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Scalar() : it->second;
}

void Element::add(const Word& w, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

void Element::add(const Element& e, const Scalar& c) {
  if (c.is_zero()) return;
  if (c.is_one()) {
    for (const auto& [w, k] : e.terms_) add(w, k);
  } else {
    for (const auto& [w, k] : e.terms_) add(w, k * c);
  }
}

Element Element::operator-() const {
  Element r;
  for (const auto& [w, k] : terms_) r.terms_.emplace(w, -k);
  return r;
}

Element operator*(const Scalar& c, const Element& e) {
  Element r;
  if (c.is_zero()) return r;
  for (const auto& [w, k] : e.terms_) r.terms_.emplace(w, k * c);
  return r;
}

Element free_product(const Element& a, const Element& b) {
  Element r;
  for (const auto& [wa, ca] : a.terms_) {
    for (const auto& [wb, cb] : b.terms_) r.add(concat(wa, wb), ca * cb);
  }
  return r;
}

Element Element::map_coefficients(const std::function<Scalar(const Scalar&)>& f) const {
  Element r;
  for (const auto& [w, k] : terms_) r.add(w, f(k));
  return r;
}

// ----------------------------------------------------------- Presentation

struct Presentation::Cache {
  mutable std::mutex mutex;
  std::unordered_map<Word, Element, WordHash> map;
};

Presentation::Presentation() : cache_(std::make_shared<Cache>()) {}

void Presentation::reset_cache() {
  cache_ = std::make_shared<Cache>();
  rules_by_first_.clear();
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    rules_by_first_[rules_[i].lhs.front()].push_back(static_cast<int>(i));
  }
}

std::optional<int> Presentation::find_generator(std::string_view name) const {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (generators_[i].name == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

int Presentation::generator_index(std::string_view name) const {
  auto idx = find_generator(name);
  if (!idx) throw UnmappedGenerator("unknown generator '" + std::string(name) + "' in " + name_);
  return *idx;
}

Letter Presentation::letter(std::string_view name, bool inverse) const {
  int idx = generator_index(name);
  if (inverse && !generators_[idx].invertible) {
    throw PresentationError("generator '" + std::string(name) + "' is not invertible");
  }
  return make_letter(idx, inverse);
}

Parity Presentation::parity(const Word& w) const {
  Parity p = Parity::even;
  for (Letter l : w) p = p + letter_parity(l);
  return p;
}

Parity Presentation::parity(const Element& e) const {
  if (e.is_zero()) return Parity::even;
  Parity p = parity(e.terms().begin()->first);
  for (const auto& [w, c] : e.terms()) {
    if (parity(w) != p) throw ParityError("element is not parity-homogeneous: " + format(e));
  }
  return p;
}

std::vector<Presentation::Redex> Presentation::redexes(const Word& w) const {
  std::vector<Redex> out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i + 1 < w.size() && w[i + 1] == letter_inverse(w[i])) out.push_back({i, -1, 2});
    auto it = rules_by_first_.find(w[i]);
    if (it == rules_by_first_.end()) continue;
    for (int r : it->second) {
      const Word& lhs = rules_[r].lhs;
      if (i + lhs.size() > w.size()) continue;
      if (std::equal(lhs.begin(), lhs.end(), w.begin() + static_cast<std::ptrdiff_t>(i))) {
        out.push_back({i, r, lhs.size()});
      }
    }
  }
  return out;
}

std::optional<Presentation::Redex> Presentation::first_redex(const Word& w) const {
  for (std::size_t i = 0; i < w.size(); ++i) {
    std::optional<Redex> best;
    if (i + 1 < w.size() && w[i + 1] == letter_inverse(w[i])) best = Redex{i, -1, 2};
    auto it = rules_by_first_.find(w[i]);
    if (it != rules_by_first_.end()) {
      for (int r : it->second) {
        const Word& lhs = rules_[r].lhs;
        if (i + lhs.size() > w.size()) continue;
        if (best && lhs.size() >= best->length) continue;
        if (std::equal(lhs.begin(), lhs.end(), w.begin() + static_cast<std::ptrdiff_t>(i))) {
          best = Redex{i, r, lhs.size()};
        }
      }
    }
    if (best) return best;
  }
  return std::nullopt;
}

Element Presentation::rewrite(const Word& w, const Redex& r) const {
  Word prefix(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(r.position));
  Word suffix(w.begin() + static_cast<std::ptrdiff_t>(r.position + r.length), w.end());
  if (r.rule < 0) return Element::word(concat(prefix, suffix));
  Element out;
  for (const auto& [u, c] : rules_[r.rule].rhs.terms()) {
    Word v = prefix;
    v.insert(v.end(), u.begin(), u.end());
    v.insert(v.end(), suffix.begin(), suffix.end());
    out.add(v, c);
  }
  return out;
}

const Element& Presentation::normal_form_ref(const Word& w) const {
  {
    std::lock_guard lock(cache_->mutex);
    auto it = cache_->map.find(w);
    if (it != cache_->map.end()) return it->second;
  }
  Element result;
  auto redex = first_redex(w);
  if (!redex) {
    result = Element::word(w);
  } else {
    Element step = rewrite(w, *redex);
    for (const auto& [u, c] : step.terms()) result.add(normal_form_ref(u), c);
  }
  std::lock_guard lock(cache_->mutex);
  // Node-based map: references stay valid across rehashing.
  return cache_->map.try_emplace(w, std::move(result)).first->second;
}

Element Presentation::normal_form(const Word& w) const { return normal_form_ref(w); }

Element Presentation::normalize(const Element& e) const {
  Element out;
  for (const auto& [w, c] : e.terms()) out.add(normal_form_ref(w), c);
  return out;
}

Element Presentation::multiply(const Element& a, const Element& b) const {
  Element out;
  for (const auto& [wa, ca] : a.terms()) {
    for (const auto& [wb, cb] : b.terms()) out.add(normal_form_ref(concat(wa, wb)), ca * cb);
  }
  return out;
}

Element Presentation::supercommutator(const Element& a, const Element& b) const {
  if (a.is_zero() || b.is_zero()) return {};
  bool odd = parity(a) == Parity::odd && parity(b) == Parity::odd;
  Element ab = multiply(a, b);
  Element ba = multiply(b, a);
  return odd ? ab + ba : ab - ba;
}

std::vector<std::pair<int, int>> Presentation::missing_pairs() const {
  std::set<Word> lhs;
  for (const auto& r : rules_) lhs.insert(r.lhs);
  std::vector<std::pair<int, int>> out;
  int n = static_cast<int>(generators_.size());
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (!generators_[u].incomplete && !generators_[v].incomplete) continue;
      if (lhs.count(Word{make_letter(u), make_letter(v)})) continue;
      out.emplace_back(u, v);
    }
  }
  return out;
}

std::vector<std::pair<int, int>> Presentation::missing_pairs_in(const Element& e) const {
  auto all = missing_pairs();
  std::set<std::pair<int, int>> candidates(all.begin(), all.end());
  std::set<std::pair<int, int>> found;
  for (const auto& [w, c] : e.terms()) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      std::pair<int, int> p{letter_generator(w[i]), letter_generator(w[i + 1])};
      if (candidates.count(p)) found.insert(p);
    }
  }
  return {found.begin(), found.end()};
}

Presentation Presentation::specialize(const std::map<Param, Scalar>& bindings) const {
  auto it = bindings.find(Param::s);
  if (requires_generic_q_ && it != bindings.end() && (it->second * it->second).is_one()) {
    throw PresentationError("presentation '" + name_ + "' requires q != 1");
  }
  auto sub = [&](const Scalar& c) { return c.substitute(bindings); };
  Presentation p = *this;
  for (auto& r : p.rules_) r.rhs = r.rhs.map_coefficients(sub);
  for (auto& e : p.relations_) e = e.map_coefficients(sub);
  for (auto& e : p.redundant_) e = e.map_coefficients(sub);
  p.reset_cache();
  return p;
}

std::string Presentation::format(const Word& w) const {
  if (w.empty()) return "1";
  std::string out;
  std::size_t i = 0;
  while (i < w.size()) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    if (!out.empty()) out += "*";
    out += generators_[letter_generator(w[i])].name;
    long run = static_cast<long>(j - i);
    if (letter_is_inverse(w[i])) {
      out += "^-" + std::to_string(run);
    } else if (run > 1) {
      out += "^" + std::to_string(run);
    }
    i = j;
  }
  return out;
}

namespace {

// Coefficient text for a product `c*rest`; empty for 1, "-" for -1.
std::string coefficient_prefix(const Scalar& c) {
  if (c.is_one()) return "";
  if ((-c).is_one()) return "-";
  std::string s = c.to_string();
  if (c.denominator().is_one() && c.numerator().terms().size() > 1) s = "(" + s + ")";
  return s + "*";
}

void append_term(std::string& out, std::string term) {
  if (out.empty()) {
    out = std::move(term);
  } else if (!term.empty() && term[0] == '-') {
    out += " - " + term.substr(1);
  } else {
    out += " + " + term;
  }
}

}  // namespace

std::string Presentation::format(const Element& e) const {
  if (e.is_zero()) return "0";
  std::string out;
  for (auto it = e.terms().rbegin(); it != e.terms().rend(); ++it) {
    const auto& [w, c] = *it;
    append_term(out, w.empty() ? c.to_string() : coefficient_prefix(c) + format(w));
  }
  return out;
}

std::string Presentation::format_pair(const std::pair<int, int>& p) const {
  return generators_[p.first].name + "*" + generators_[p.second].name;
}

std::size_t Presentation::cache_size() const {
  std::lock_guard lock(cache_->mutex);
  return cache_->map.size();
}

// ---------------------------------------------------- PresentationBuilder

PresentationBuilder::PresentationBuilder(std::string name) { p_.name_ = std::move(name); }

PresentationBuilder::PresentationBuilder(const Presentation& base) : p_(base) {
  // Drop derived rules; build() regenerates them.
  std::erase_if(p_.rules_, [](const Rule& r) { return r.derived; });
  p_.reset_cache();
}

int PresentationBuilder::add_generator(Generator g) {
  if (g.name.empty()) throw PresentationError("empty generator name");
  if (p_.find_generator(g.name)) throw PresentationError("duplicate generator '" + g.name + "'");
  if (g.invertible && g.parity == Parity::odd) {
    throw PresentationError("odd generator '" + g.name + "' cannot be invertible");
  }
  if (!p_.rules_.empty()) throw PresentationError("generators must be declared before relations");
  p_.generators_.push_back(std::move(g));
  return static_cast<int>(p_.generators_.size()) - 1;
}

void PresentationBuilder::push_rule(Rule r) {
  p_.rules_.push_back(std::move(r));
  p_.reset_cache();
}

bool PresentationBuilder::add_relation(const Element& e) {
  p_.parity(e);
  p_.relations_.push_back(e);
  Element reduced = p_.normalize(e);
  if (reduced.is_zero()) {
    p_.redundant_.push_back(e);
    return false;
  }
  Word lead = reduced.leading_word();
  Scalar c = reduced.coefficient(lead);
  for (Letter l : lead) {
    if (letter_is_inverse(l)) {
      throw PresentationError("relation leading word " + p_.format(lead) + " contains an inverse letter");
    }
  }
  if (lead.empty()) throw PresentationError("relation reduces to a nonzero scalar: " + p_.format(e));
  Element rhs = reduced;
  rhs.add(lead, -c);
  push_rule(Rule{lead, (-c.inverse()) * rhs, false});
  return true;
}

void PresentationBuilder::add_rule(const Word& lhs, const Element& rhs) {
  if (lhs.empty()) throw PresentationError("rule with empty left-hand side");
  Parity pl = p_.parity(lhs);
  for (const auto& [w, c] : rhs.terms()) {
    if (compare_words(w, lhs) >= 0) {
      throw PresentationError("rule " + p_.format(lhs) + " -> " + p_.format(rhs) +
                              " does not decrease the term order");
    }
    if (p_.parity(w) != pl) {
      throw ParityError("rule " + p_.format(lhs) + " -> " + p_.format(rhs) + " mixes parities");
    }
  }
  p_.relations_.push_back(Element::word(lhs) - rhs);
  push_rule(Rule{lhs, rhs, false});
}

Presentation PresentationBuilder::build() const {
  Presentation p = p_;
  std::vector<Rule> derived;
  for (const auto& r : p.rules_) {
    for (std::size_t i = 0; i < r.lhs.size(); ++i) {
      const Generator& g = p.generators_[letter_generator(r.lhs[i])];
      if (!g.invertible) continue;
      // Only the shape b*g -> lambda*g*b + T extends to g^-1.
      if (r.lhs.size() != 2 || i != 1 || p.generators_[letter_generator(r.lhs[0])].invertible) {
        throw PresentationError("cannot extend rule " + p.format(r.lhs) + " -> " + p.format(r.rhs) +
                                " to inverse letters");
      }
      Letter b = r.lhs[0];
      Letter gl = r.lhs[1];
      Letter ginv = letter_inverse(gl);
      Scalar lambda = r.rhs.coefficient(Word{gl, b});
      if (lambda.is_zero()) {
        throw PresentationError("rule " + p.format(r.lhs) + " has no " + p.format(Word{gl, b}) + " term");
      }
      Element tail = r.rhs;
      tail.add(Word{gl, b}, -lambda);
      Scalar inv = lambda.inverse();
      Element rhs = Element::word(Word{ginv, b}, inv);
      rhs.add(free_product(free_product(Element::letter(ginv), tail), Element::letter(ginv)), -inv);
      derived.push_back(Rule{Word{b, ginv}, rhs, true});
    }
  }
  for (auto& d : derived) p.rules_.push_back(std::move(d));
  p.reset_cache();
  return p;
}

// ---------------------------------------------------------- TensorElement

void TensorElement::add(const Key& k, const Scalar& c) {
  if (c.is_zero()) return;
  if (static_cast<int>(k.size()) != legs_) throw ShapeError("tensor leg count mismatch");
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

void TensorElement::add(const TensorElement& t, const Scalar& c) {
  if (t.legs_ != legs_) throw ShapeError("tensor leg count mismatch");
  for (const auto& [k, v] : t.terms_) add(k, v * c);
}

TensorElement operator*(const Scalar& c, const TensorElement& t) {
  TensorElement r(t.legs_);
  r.add(t, c);
  return r;
}

namespace {

void expand_legs(const std::vector<const Element*>& legs, std::size_t i, TensorElement::Key& key,
                 const Scalar& coeff, TensorElement& out) {
  if (i == legs.size()) {
    out.add(key, coeff);
    return;
  }
  for (const auto& [w, c] : legs[i]->terms()) {
    key[i] = w;
    expand_legs(legs, i + 1, key, coeff * c, out);
  }
}

}  // namespace

TensorElement TensorElement::pure(const std::vector<Element>& legs) {
  TensorElement out(static_cast<int>(legs.size()));
  std::vector<const Element*> ptrs;
  for (const auto& e : legs) ptrs.push_back(&e);
  Key key(legs.size());
  expand_legs(ptrs, 0, key, Scalar(1), out);
  return out;
}

TensorElement TensorElement::unit(int legs) {
  TensorElement t(legs);
  t.add(Key(static_cast<std::size_t>(legs)), Scalar(1));
  return t;
}

TensorElement normalize(const TensorElement& t, const Presentation& p) {
  TensorElement out(t.legs());
  std::vector<Element> legs(static_cast<std::size_t>(t.legs()));
  std::vector<const Element*> ptrs(legs.size());
  for (const auto& [k, c] : t.terms()) {
    for (std::size_t i = 0; i < k.size(); ++i) {
      legs[i] = p.normal_form(k[i]);
      ptrs[i] = &legs[i];
    }
    TensorElement::Key key(k.size());
    expand_legs(ptrs, 0, key, c, out);
  }
  return out;
}

TensorElement tensor_multiply(const TensorElement& a, const TensorElement& b, const Presentation& p) {
  if (a.legs() != b.legs()) throw ShapeError("tensor_multiply: leg counts differ");
  std::size_t n = static_cast<std::size_t>(a.legs());
  TensorElement out(a.legs());
  std::vector<Element> legs(n);
  std::vector<const Element*> ptrs(n);
  std::vector<int> pa(n);
  std::vector<int> pb(n);
  for (const auto& [ka, ca] : a.terms()) {
    for (std::size_t i = 0; i < n; ++i) pa[i] = static_cast<int>(p.parity(ka[i]));
    for (const auto& [kb, cb] : b.terms()) {
      int sign = 0;
      for (std::size_t i = 0; i < n; ++i) {
        pb[i] = static_cast<int>(p.parity(kb[i]));
        if (!pb[i]) continue;
        for (std::size_t j = i + 1; j < n; ++j) sign += pa[j];
      }
      for (std::size_t i = 0; i < n; ++i) {
        legs[i] = p.normal_form(concat(ka[i], kb[i]));
        ptrs[i] = &legs[i];
      }
      TensorElement::Key key(n);
      Scalar c = ca * cb;
      expand_legs(ptrs, 0, key, sign % 2 ? -c : c, out);
    }
  }
  return out;
}

TensorElement tensor_multiply(const std::vector<TensorElement>& factors, const Presentation& p) {
  if (factors.empty()) throw ShapeError("tensor_multiply: no factors");
  TensorElement acc = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) acc = tensor_multiply(acc, factors[i], p);
  return acc;
}

std::string format(const TensorElement& t, const Presentation& p) {
  if (t.is_zero()) return "0";
  std::string out;
  for (const auto& [k, c] : t.terms()) {
    std::string term = coefficient_prefix(c);
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (i) term += " (x) ";
      term += p.format(k[i]);
    }
    append_term(out, term);
  }
  return out;
}

std::vector<std::string> blocking_pairs(const Presentation& p, const Element& e) {
  std::vector<std::string> out;
  for (const auto& pair : p.missing_pairs_in(e)) out.push_back(p.format_pair(pair));
  return out;
}

std::vector<std::string> blocking_pairs(const Presentation& p, const TensorElement& t) {
  Element legs;
  for (const auto& [key, c] : t.terms()) {
    for (const Word& w : key) legs.add(w, Scalar(1));
  }
  return blocking_pairs(p, legs);
}

}  // namespace qsv

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qsv/scalar.hpp"

namespace qsv {

enum class Parity { even = 0, odd = 1 };

inline Parity operator+(Parity a, Parity b) {
  return static_cast<Parity>(static_cast<int>(a) ^ static_cast<int>(b));
}

struct Generator {
  std::string name;
  Parity parity = Parity::even;
  bool invertible = false;
  /// The presentation is known to lack some relations involving this generator.
  bool incomplete = false;
};

/// A letter is a generator or the inverse of an invertible generator,
/// encoded as 2*index + (inverse ? 1 : 0).
using Letter = std::int32_t;

constexpr Letter make_letter(int gen, bool inverse = false) { return 2 * gen + (inverse ? 1 : 0); }
constexpr int letter_generator(Letter l) { return l >> 1; }
constexpr bool letter_is_inverse(Letter l) { return (l & 1) != 0; }
constexpr Letter letter_inverse(Letter l) { return l ^ 1; }

/// Expanded word: x^3 is three copies of the letter x.
using Word = std::vector<Letter>;

/// Term order: by length (|exponent| weights), then position-lexicographic in
/// generator order; for equal generators the positive letter comes first.
int compare_words(const Word& a, const Word& b);

struct WordLess {
  bool operator()(const Word& a, const Word& b) const { return compare_words(a, b) < 0; }
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

Word concat(const Word& a, const Word& b);

/// Finite linear combination of words with nonzero Scalar coefficients.
class Element {
 public:
  using Map = std::map<Word, Scalar, WordLess>;

  Element() = default;
  Element(Scalar c);  // NOLINT(google-explicit-constructor)
  Element(long c) : Element(Scalar(c)) {}  // NOLINT(google-explicit-constructor)
  static Element word(Word w, Scalar c = 1);
  static Element letter(Letter l) { return word(Word{l}); }

  const Map& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// True when every term is the empty word.
  bool is_scalar() const noexcept;
  /// Coefficient of the empty word.
  Scalar scalar_part() const;
  Scalar coefficient(const Word& w) const;
  /// Greatest word under the term order; requires nonzero.
  const Word& leading_word() const { return terms_.rbegin()->first; }
  std::size_t size() const noexcept { return terms_.size(); }

  void add(const Word& w, const Scalar& c);
  void add(const Element& e, const Scalar& c = 1);

  Element operator-() const;
  friend Element operator+(Element a, const Element& b) {
    a.add(b);
    return a;
  }
  friend Element operator-(Element a, const Element& b) {
    a.add(b, Scalar(-1));
    return a;
  }
  friend Element operator*(const Scalar& c, const Element& e);
  friend Element operator*(const Element& e, const Scalar& c) { return c * e; }
  Element& operator+=(const Element& o) {
    add(o);
    return *this;
  }
  Element& operator-=(const Element& o) {
    add(o, Scalar(-1));
    return *this;
  }

  /// Concatenation product in the free algebra (no rewriting).
  friend Element free_product(const Element& a, const Element& b);

  Element map_coefficients(const std::function<Scalar(const Scalar&)>& f) const;

  friend bool operator==(const Element& a, const Element& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

 private:
  Map terms_;
};

/// Oriented rewrite rule lhs -> rhs.
struct Rule {
  Word lhs;
  Element rhs;
  /// Generated from another rule for an inverse letter.
  bool derived = false;
};

class PresentationBuilder;

/// Parity-graded algebra given by generators and oriented rewrite rules.
///
/// Normal forms use a leftmost-innermost strategy: the redex with the
/// smallest start position wins, ties go to the shortest left-hand side, then
/// to the earliest rule. Invertible generators carry the implicit
/// cancellations g g^-1 -> 1 and g^-1 g -> 1.
///
/// Immutable once built. The normal-form cache is internally synchronised.
class Presentation {
 public:
  struct Redex {
    std::size_t position = 0;
    /// Index into rules(), or -1 for an inverse cancellation.
    int rule = -1;
    std::size_t length = 2;
  };

  Presentation();

  const std::string& name() const noexcept { return name_; }
  const std::vector<Generator>& generators() const noexcept { return generators_; }
  const std::vector<Rule>& rules() const noexcept { return rules_; }
  /// Ideal generators as declared (lhs - rhs of each relation, unreduced).
  const std::vector<Element>& relations() const noexcept { return relations_; }
  /// Declared relations that reduced to zero against earlier ones.
  const std::vector<Element>& redundant_relations() const noexcept { return redundant_; }
  /// Presets with q-deformed relations are meaningless at q = 1.
  bool requires_generic_q() const noexcept { return requires_generic_q_; }

  std::optional<int> find_generator(std::string_view name) const;
  int generator_index(std::string_view name) const;
  Letter letter(std::string_view name, bool inverse = false) const;
  Element gen(std::string_view name) const { return Element::letter(letter(name)); }

  Parity letter_parity(Letter l) const { return generators_[letter_generator(l)].parity; }
  Parity parity(const Word& w) const;
  /// Parity of a homogeneous element; throws ParityError otherwise.
  Parity parity(const Element& e) const;

  std::vector<Redex> redexes(const Word& w) const;
  std::optional<Redex> first_redex(const Word& w) const;
  bool is_normal(const Word& w) const { return !first_redex(w).has_value(); }
  /// One rewrite step at the given redex (result not normalized).
  Element rewrite(const Word& w, const Redex& r) const;

  Element normal_form(const Word& w) const;
  Element normalize(const Element& e) const;
  Element multiply(const Element& a, const Element& b) const;
  /// a*b - sign*b*a with the Koszul sign for homogeneous a, b.
  Element supercommutator(const Element& a, const Element& b) const;

  /// Generator pairs (u, v) touching an incomplete generator with no rule uv -> ...
  std::vector<std::pair<int, int>> missing_pairs() const;
  /// Missing pairs occurring as adjacent letters in some word of e.
  std::vector<std::pair<int, int>> missing_pairs_in(const Element& e) const;

  /// Applies a parameter substitution to every rule; rejects s = +-1 for generic-q presets.
  Presentation specialize(const std::map<Param, Scalar>& bindings) const;

  std::string format(const Word& w) const;
  std::string format(const Element& e) const;
  std::string format_pair(const std::pair<int, int>& p) const;

  std::size_t cache_size() const;

 private:
  friend class PresentationBuilder;
  struct Cache;

  const Element& normal_form_ref(const Word& w) const;
  void reset_cache();

  std::string name_;
  std::vector<Generator> generators_;
  std::vector<Rule> rules_;
  std::vector<Element> relations_;
  std::vector<Element> redundant_;
  bool requires_generic_q_ = false;
  /// rules_ indices grouped by first letter of the left-hand side.
  std::map<Letter, std::vector<int>> rules_by_first_;
  std::shared_ptr<Cache> cache_;
};

/// Incremental construction of a Presentation. Relations written as
/// equalities are reduced against the rules added so far and oriented so the
/// greatest word becomes the left-hand side.
class PresentationBuilder {
 public:
  explicit PresentationBuilder(std::string name);
  explicit PresentationBuilder(const Presentation& base);

  int add_generator(Generator g);
  const Presentation& current() const { return p_; }

  /// Adds the relation `e = 0`. Returns false when it reduces to zero.
  bool add_relation(const Element& e);
  /// Adds an explicit rule after validating orientation and parity.
  void add_rule(const Word& lhs, const Element& rhs);
  void set_requires_generic_q(bool v) { p_.requires_generic_q_ = v; }
  void set_name(std::string name) { p_.name_ = std::move(name); }

  /// Derives rules for inverse letters and freezes the presentation.
  Presentation build() const;

 private:
  void push_rule(Rule r);
  Presentation p_;
};

/// Leg-wise tensor element; each term is a tuple of words.
class TensorElement {
 public:
  using Key = std::vector<Word>;
  using Map = std::map<Key, Scalar>;

  explicit TensorElement(int legs = 2) : legs_(legs) {}
  static TensorElement pure(const std::vector<Element>& legs);
  static TensorElement unit(int legs);

  int legs() const noexcept { return legs_; }
  const Map& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  void add(const Key& k, const Scalar& c);
  void add(const TensorElement& t, const Scalar& c = 1);

  friend TensorElement operator+(TensorElement a, const TensorElement& b) {
    a.add(b);
    return a;
  }
  friend TensorElement operator-(TensorElement a, const TensorElement& b) {
    a.add(b, Scalar(-1));
    return a;
  }
  friend TensorElement operator*(const Scalar& c, const TensorElement& t);

  friend bool operator==(const TensorElement& a, const TensorElement& b) {
    return a.legs_ == b.legs_ && a.terms_ == b.terms_;
  }

 private:
  int legs_;
  Map terms_;
};

/// Normalizes every leg.
TensorElement normalize(const TensorElement& t, const Presentation& p);

/// Graded product (a_1 (x) ... )(b_1 (x) ...) with sign (-1)^{sum_{i<j} |b_i||a_j|}.
TensorElement tensor_multiply(const TensorElement& a, const TensorElement& b, const Presentation& p);
TensorElement tensor_multiply(const std::vector<TensorElement>& factors, const Presentation& p);

std::string format(const TensorElement& t, const Presentation& p);

/// Formatted missing pairs occurring as adjacencies in any term (any leg).
std::vector<std::string> blocking_pairs(const Presentation& p, const Element& e);
std::vector<std::string> blocking_pairs(const Presentation& p, const TensorElement& t);

}  // namespace qsv

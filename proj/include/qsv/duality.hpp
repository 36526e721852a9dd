#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qsv/hopf.hpp"
#include "qsv/report.hpp"

namespace qsv {

enum class DualKind { K, nabla, N, group_like };

/// K, nabla (odd), N, or the group-like q^{aK} with rational a.
struct DualLetter {
  DualKind kind = DualKind::K;
  mpq_class exponent = 0;

  static DualLetter K() { return {DualKind::K, 0}; }
  static DualLetter nabla() { return {DualKind::nabla, 0}; }
  static DualLetter N() { return {DualKind::N, 0}; }
  static DualLetter group_like(const mpq_class& a) { return {DualKind::group_like, a}; }

  bool odd() const { return kind == DualKind::nabla; }

  friend bool operator==(const DualLetter& a, const DualLetter& b) {
    return a.kind == b.kind && a.exponent == b.exponent;
  }
  friend bool operator<(const DualLetter& a, const DualLetter& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.exponent < b.exponent;
  }
};

using DualWord = std::vector<DualLetter>;

std::string format(const DualLetter& l);
std::string format(const DualWord& w);
bool odd(const DualWord& w);

/// Linear combination of dual words. Adjacent group-likes are merged and q^{0K} dropped.
class DualElement {
 public:
  using Map = std::map<DualWord, Scalar>;

  DualElement() = default;
  DualElement(Scalar c);  // NOLINT(google-explicit-constructor)
  static DualElement word(DualWord w, Scalar c = 1);
  static DualElement letter(DualLetter l) { return word({std::move(l)}); }

  const Map& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  void add(const DualWord& w, const Scalar& c);

  friend DualElement operator+(DualElement a, const DualElement& b);
  friend DualElement operator-(DualElement a, const DualElement& b);
  friend DualElement operator*(const Scalar& c, DualElement e);
  /// Concatenation product.
  friend DualElement operator*(const DualElement& a, const DualElement& b);
  friend bool operator==(const DualElement& a, const DualElement& b) { return a.terms_ == b.terms_; }

  std::string format() const;

 private:
  Map terms_;
};

/// Pure tensor of two dual elements, as a list of (left, right, coefficient).
struct DualTensorTerm {
  DualWord left;
  DualWord right;
  Scalar coefficient;
};
using DualTensor = std::vector<DualTensorTerm>;

enum class PairingConvention {
  /// Base values are read on x^k theta^l y^n.
  theta_middle,
  /// Base values are read on theta^l x^k y^n.
  theta_left,
};

std::string to_string(PairingConvention c);
PairingConvention pairing_convention_from_string(const std::string& s);

struct Exponents {
  int k = 0;
  int l = 0;
  int n = 0;
};

/// Bounds on basis words x^k theta^l y^n: -window <= k <= k_max, l <= l_max, n <= n_max.
struct PairingCutoff {
  int k_max = 6;
  int n_max = 6;
  int window = 6;
  int l_max = 2;
};

/// Parses "k,n,w".
PairingCutoff parse_pairing_cutoff(const std::string& text);

/// Pairing of dual words against an algebra with generators (x invertible, theta odd, y)
/// in declaration order and Hopf maps. Values are memoized.
class Pairing {
 public:
  Pairing(HopfStructure algebra, PairingConvention convention);

  const HopfStructure& algebra() const noexcept { return algebra_; }
  const Presentation& presentation() const noexcept { return algebra_.presentation(); }
  PairingConvention convention() const noexcept { return convention_; }

  /// Exponents of a normal word x^k theta^l y^n; throws Error for any other shape.
  Exponents exponents(const Word& w) const;
  Word basis_word(const Exponents& e) const;
  /// Normal basis words within the cutoff, skipping those that are not normal.
  std::vector<Word> basis(const PairingCutoff& c) const;

  Scalar base(const DualLetter& u, const Word& w) const;
  Scalar pair(const DualWord& u, const Word& w) const;
  Scalar pair(const DualElement& u, const Element& a) const;
  /// <u (x) v, f (x) g> = (-1)^{|v||f|} <u,f><v,g>.
  Scalar pair(const DualTensor& t, const Element& f, const Element& g) const;

 private:
  HopfStructure algebra_;
  PairingConvention convention_;
  /// theta x = lambda x theta in the algebra.
  Scalar theta_x_factor_;
  struct Cache;
  std::shared_ptr<Cache> cache_;
};

/// The pairing used throughout: P_ext with the given convention.
Pairing standard_pairing(PairingConvention c);

/// K nabla = nabla K, K N = N K, nabla N = N nabla, nabla^2 = 0 against all basis words.
CheckReport check_dual_relations(const Pairing& pairing, const PairingCutoff& cutoff);

/// Stated coproducts, counits and antipodes of K, nabla, N; fits
/// u (x) q^{aK} + q^{bK} (x) u and S(u) = -q^{cK} u over half-integers in [-4, 4].
CheckReport check_dual_hopf(const Pairing& pairing, const PairingCutoff& cutoff);

/// Runs check_dual_hopf under both conventions; PASS iff the stated formulas hold
/// on the cutoff space under exactly one of them.
CheckReport determine_pairing_convention(const HopfStructure& algebra, const PairingCutoff& cutoff);

/// Canonical dual words K^i nabla^j N^m (j <= 1) of degree at most max_degree.
std::vector<DualWord> canonical_dual_words(int max_degree);

/// Rank of the pairing matrix of canonical dual words against the basis.
CheckReport nondegeneracy_scan(const Pairing& pairing, int max_dual_degree, const PairingCutoff& cutoff);

}  // namespace qsv

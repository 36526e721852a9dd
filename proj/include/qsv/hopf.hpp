#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qsv/algebra.hpp"
#include "qsv/report.hpp"

namespace qsv {

/// Per-generator images, keyed by generator index. Inverse letters are
/// derived from single-term images of invertible generators.
struct StructureMaps {
  std::map<int, TensorElement> coproduct;
  std::map<int, Scalar> counit;
  std::map<int, Element> antipode;
  std::map<int, Element> star;

  bool has_hopf() const { return !coproduct.empty() || !counit.empty() || !antipode.empty(); }
  bool has_star() const { return !star.empty(); }
};

/// Primitive images: g -> g (x) 1 + 1 (x) g, eps(g) = 0, S(g) = -g.
StructureMaps primitive_maps(const Presentation& p);

/// How S is composed with itself when checking that it has order two.
enum class AntipodeConvention {
  /// S(S(a)) in the same presentation.
  same,
  /// Coefficients of S(a) get s -> 1/s before the second application.
  flip,
};

std::string to_string(AntipodeConvention c);

/// Extends generator images: coproduct and counit as homomorphisms, antipode
/// as a graded antihomomorphism, star as an antilinear graded antihomomorphism.
class HopfStructure {
 public:
  HopfStructure(Presentation p, StructureMaps maps);

  const Presentation& presentation() const noexcept { return p_; }
  const StructureMaps& maps() const noexcept { return maps_; }

  TensorElement coproduct(const Word& w) const;
  TensorElement coproduct(const Element& e) const;
  Scalar counit(const Word& w) const;
  Scalar counit(const Element& e) const;
  Element antipode(const Word& w) const;
  Element antipode(const Element& e) const;
  Element antipode_squared(const Element& e, AntipodeConvention c) const;
  Element star(const Word& w) const;
  Element star(const Element& e) const;

  /// Applies the coproduct to leg `leg` of t, giving one more leg.
  TensorElement coproduct_on_leg(const TensorElement& t, int leg) const;

 private:
  TensorElement letter_coproduct(Letter l) const;
  Scalar letter_counit(Letter l) const;
  Element letter_antipode(Letter l) const;
  Element letter_star(Letter l) const;
  Element antihomomorphic(const Word& w, const std::function<Element(Letter)>& image) const;

  Presentation p_;
  StructureMaps maps_;
  struct Cache;
  std::shared_ptr<Cache> cache_;
};

/// Inverse of an invertible word: reversed, each letter inverted.
Word inverse_word(const Word& w);

/// Coproduct, counit and antipode annihilate every declared relation.
CheckReport check_comaps_well_defined(const HopfStructure& h);

/// Coassociativity, both counit laws and both antipode laws on every basis word.
CheckReport check_hopf_axioms(const HopfStructure& h, int max_degree, int window);

CheckReport check_antipode_order(const HopfStructure& h, int max_degree, int window, AntipodeConvention c);

/// Runs check_antipode_order for both conventions and reports which hold.
CheckReport determine_antipode_convention(const HopfStructure& h, int max_degree, int window);

CheckReport check_primitive(const HopfStructure& h, const Element& e, const std::string& label);

/// Ideal invariance, involutivity on basis words, and anti-multiplicativity on random pairs.
CheckReport check_star(const HopfStructure& h, int max_degree, int random_pairs = 40, unsigned seed = 7);

}  // namespace qsv

#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "qsv/algebra.hpp"
#include "qsv/hopf.hpp"
#include "qsv/report.hpp"

namespace qsv {

/// 3x3 matrix of elements; entries (1,2), (2,1), (2,3), (3,2) are odd.
struct GenMatrix {
  std::array<std::array<Element, 3>, 3> entries;

  Element& operator()(int i, int j) { return entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
  const Element& operator()(int i, int j) const {
    return entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }

  static bool odd_position(int i, int j) { return (i == 1) != (j == 1); }
  /// Throws ParityError when a nonzero entry has the wrong parity.
  void validate(const Presentation& p) const;
};

/// Generator matrix (a alpha b | gamma e beta | c delta d) of the group preset.
GenMatrix generator_matrix(const Presentation& group);

/// Entry-wise antipode of the generator matrix.
GenMatrix antipode_matrix(const HopfStructure& group);

/// Entry-wise normalized product.
GenMatrix multiply(const GenMatrix& a, const GenMatrix& b, const Presentation& p);

/// First (a d - q b c - q^{1/2} alpha delta) or second (d a - q^-1 b c + q^{-1/2} delta alpha) form.
Element superdeterminant(const Presentation& group, int form);

/// Rewrites occurrences of the determinant's leading word as if D = 1.
Element apply_unit_determinant(const Element& e, const Presentation& group);

/// Both determinant forms agree, and D commutes with a, alpha, b, c, delta, d.
CheckReport superdeterminant_report(const Presentation& group);

/// Per-entry verdicts for T*Tinv and Tinv*T against the identity.
CheckReport check_inverse(const GenMatrix& t, const GenMatrix& tinv, const Presentation& group,
                          bool unit_determinant = true);

enum class Side { left, right };
std::string to_string(Side s);

/// Space and group generators in one algebra. Group letters sort before
/// space letters for the left coaction and after them for the right one;
/// cross rules X t -> (-1)^{|X||t|} t X (or mirrored) implement the graded
/// tensor product.
class Coaction {
 public:
  Coaction(const Presentation& space, const Presentation& group, Side side);

  Side side() const noexcept { return side_; }
  const Presentation& combined() const noexcept { return combined_; }
  const Presentation& space() const noexcept { return space_; }
  const Presentation& group() const noexcept { return group_; }

  /// Image of a space element, normalized in the combined algebra.
  Element coact_combined(const Element& e) const;
  /// Same image split into (group (x) space) or (space (x) group) legs.
  TensorElement coact(const Element& e) const;
  /// Splits a normalized combined element at the group/space boundary.
  TensorElement split(const Element& e) const;
  /// Space element embedded in the combined algebra.
  Element embed_space(const Element& e) const;
  Element embed_group(const Element& e) const;
  /// Missing pairs of the group presentation inside the group legs of e;
  /// cross pairs are always covered by the graded commutation rules.
  std::vector<std::string> blocking(const Element& e) const;

 private:
  Side side_;
  Presentation space_;
  Presentation group_;
  Presentation combined_;
  int space_offset_ = 0;
  int group_offset_ = 0;
  std::vector<Element> images_;
};

/// Every declared space relation maps to zero.
CheckReport check_covariance(const Presentation& space, Side side, const Presentation& group);

/// Comodule axioms on basis words up to max_degree, computed in free algebras.
CheckReport check_coaction_axioms(const Presentation& space, const HopfStructure& group, Side side, int max_degree);

/// q^{1/2} X3 X1 + X2^2 - q^{-1/2} X1 X3 over the three space generators.
Element supersphere(const Presentation& space);

/// delta_L(r) = 1 (x) r and delta_R(r) = r (x) 1 for the supersphere r.
CheckReport check_sphere_coinvariance(const Presentation& space, const Presentation& group,
                                      bool unit_determinant = true);

using ScalarMatrix = std::vector<std::vector<Scalar>>;

/// direct: rho(ab) = rho(a) rho(b); reversed: rho(ab) = rho(b) rho(a).
enum class Orientation { direct, reversed };
std::string to_string(Orientation o);

ScalarMatrix matrix_product(const ScalarMatrix& a, const ScalarMatrix& b);
ScalarMatrix evaluate(const Element& e, const Presentation& p, const std::map<std::string, ScalarMatrix>& rep,
                      Orientation o);

/// All declared relations of p vanish under the representation.
CheckReport check_matrix_representation(const std::map<std::string, ScalarMatrix>& rep, const Presentation& p,
                                        Orientation o);

/// The 3x3 matrices for x, theta, y of the three-generator superspace.
std::map<std::string, ScalarMatrix> superspace_representation();

}  // namespace qsv

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qsv/algebra.hpp"
#include "qsv/linalg.hpp"
#include "qsv/parser.hpp"
#include "qsv/report.hpp"

namespace qsv {

/// source_i = sum_j matrix[i][j] target_j, with the exact inverse.
class LinearTransform {
 public:
  /// Throws ShapeError on a generator-count mismatch, ParityError when an entry
  /// mixes parities, Error when the matrix is singular.
  LinearTransform(const Presentation& source, TransformSpec spec);

  const TransformSpec& spec() const noexcept { return spec_; }
  const std::string& name() const noexcept { return spec_.name; }
  const Matrix& matrix() const noexcept { return spec_.matrix; }
  const Matrix& inverse_matrix() const noexcept { return inverse_; }
  /// Free presentation on the target generators.
  const Presentation& target() const noexcept { return target_; }
  const std::vector<std::string>& source_names() const noexcept { return spec_.source; }

  /// Substitutes every source letter; the result lives in the free algebra on the targets.
  Element apply(const Element& e) const;
  /// Target -> source transform with the inverse matrix.
  LinearTransform inverse() const;

 private:
  LinearTransform(TransformSpec spec, Matrix inverse, Presentation target);

  TransformSpec spec_;
  Matrix inverse_;
  Presentation target_;
};

/// The transform carried by a preset, or the file/preset named by `name_or_path`.
LinearTransform load_transform(const Presentation& source, const SpecFile& source_spec, const std::string& name_or_path);

/// Identity transform onto generators with the same names.
LinearTransform identity_transform(const Presentation& source);

/// Relations of p rewritten in the target generators, unreduced.
std::vector<Element> transform_presentation(const Presentation& p, const LinearTransform& g);

/// Row-reduced relations, grouped by degree; each is monic in its greatest word.
std::vector<Element> reduce_relations(const std::vector<Element>& raw);

struct Limit {
  Param param = Param::s;
  mpq_class value = 1;
};

/// Parses "s=1" style limits.
Limit parse_limit(const std::string& text);

struct ContractionResult {
  Presentation presentation;
  /// Reduced relations before the limit.
  std::vector<Element> reduced;
  /// Relations after the limit, reduced again.
  std::vector<Element> limit_relations;
  /// Rows lost because they became dependent at the limit.
  std::size_t rank_drop = 0;
};

/// Reduces, takes the limit on every coefficient (PoleError on a pole) and orients the result.
ContractionResult reduce_and_limit(const std::vector<Element>& raw, const Presentation& target,
                                   const std::optional<Limit>& limit, const std::string& name);

/// Each relation of one side must normalize to zero in the other.
CheckReport compare_presentations(const Presentation& computed, const Presentation& expected);

/// transform, reduce, limit, compare; details carry the pre-limit relations and scale factors.
/// An empty expected preset skips the comparison.
CheckReport contraction_report(const std::string& source_preset, const std::string& transform,
                               const std::optional<Limit>& limit, const std::string& expected_preset);

/// r_h = X_- X_+ + Theta^2 + h X_+^2 - X_+ X_- reduces to h X_+^2 - Theta^2 and is central;
/// also checks the h = 0 specialization.
CheckReport check_h_sphere(const Presentation& p);

}  // namespace qsv

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qsv/algebra.hpp"
#include "qsv/hopf.hpp"
#include "qsv/report.hpp"

namespace qsv {

/// Linear change of generators: source[i] = sum_j matrix[i][j] * target[j].
struct TransformSpec {
  std::string name;
  std::vector<std::string> source;
  std::vector<Generator> target;
  std::vector<std::vector<Scalar>> matrix;
};

struct SpecFile {
  Presentation presentation;
  StructureMaps maps;
  std::optional<TransformSpec> transform;
  KeyValues pairing;
  /// Top-level `key = value` settings other than name.
  KeyValues options;
};

/// Scalar expression in s, h, hb, c, I, q (= s^2).
Scalar parse_scalar(std::string_view text);

/// Expression over p's generators; products are formal (not normalized).
Element parse_element(std::string_view text, const Presentation& p);

/// Sum of terms `a (x) b (x) ...` with exactly `legs` legs each.
TensorElement parse_tensor(std::string_view text, const Presentation& p, int legs = 2);

/// Parses a whole spec file (generators, relations, maps, transform, pairing).
SpecFile parse_spec(std::string_view text, const std::string& default_name = "custom");

/// Transform lines (`name N`, `target A B C`, `src = combination`) against `source`.
TransformSpec parse_transform(std::string_view text, const Presentation& source);

/// Adds the relations of `text` (a `[relations]` section or bare relation
/// lines) to `base`; orientation and parity are validated as for presets.
Presentation augment(const Presentation& base, std::string_view text, const std::string& suffix = "+augmented");

/// Serializes a presentation as a spec file using rewrite arrows.
std::string print_spec(const Presentation& p, const StructureMaps* maps = nullptr);

}  // namespace qsv

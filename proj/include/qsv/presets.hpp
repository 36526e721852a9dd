#pragma once

#include <string>
#include <vector>

#include "qsv/parser.hpp"

namespace qsv {

/// Names of the built-in presets, in a fixed order.
std::vector<std::string> builtin_preset_names();

/// Spec-file text of a preset: built-in, or NAME.qs / NAME from a directory
/// listed in QSV_PRESET_PATH (colon separated; searched first).
std::string preset_source(const std::string& name);

/// Parsed preset; results are memoized per name.
SpecFile load_preset(const std::string& name);

/// Spec-file text for a preset or file path; a path is anything containing '/' or ending in .qs.
std::string read_spec_text(const std::string& name_or_path);

}  // namespace qsv

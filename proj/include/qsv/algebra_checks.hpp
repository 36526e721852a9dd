#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qsv/algebra.hpp"
#include "qsv/report.hpp"

namespace qsv {

/// Calls `visit` on every word of length 1..max_len, with at most `window`
/// inverse letters per invertible generator.
void for_each_word(const Presentation& p, int max_len, int window, const std::function<void(const Word&)>& visit);

/// Normal words of degree <= max_degree (|exponent| weights). Inverse letters
/// are limited to `window` per generator; positive powers only by degree.
std::vector<Word> enumerate_basis(const Presentation& p, int max_degree, int window);

/// Every one-step reduct of every word up to max_len must have the same normal form.
CheckReport check_local_confluence(const Presentation& p, int max_len, int window = 2);

/// `residual(k)` builds lhs - rhs of the k-th instance in the free algebra.
CheckReport verify_identity_family(const Presentation& p, const std::string& name,
                                   const std::function<Element(int)>& residual, int k_min, int k_max);

/// Element power in p (normalized).
Element power(const Presentation& p, const Element& e, int k);

}  // namespace qsv

#include "qsv/algebra_checks.hpp"

#include <algorithm>
#include <optional>

#include "qsv/errors.hpp"

namespace qsv {

namespace {

std::vector<Letter> alphabet(const Presentation& p, int window) {
  std::vector<Letter> out;
  for (int g = 0; g < static_cast<int>(p.generators().size()); ++g) {
    out.push_back(make_letter(g));
    if (p.generators()[g].invertible && window > 0) out.push_back(make_letter(g, true));
  }
  return out;
}

void extend(const std::vector<Letter>& letters, std::vector<int>& inverse_count, int window, int max_len, Word& w,
            const std::function<bool(const Word&)>& keep, const std::function<void(const Word&)>& visit) {
  if (static_cast<int>(w.size()) == max_len) return;
  for (Letter l : letters) {
    bool inv = letter_is_inverse(l);
    int g = letter_generator(l);
    if (inv && inverse_count[g] >= window) continue;
    w.push_back(l);
    if (inv) ++inverse_count[g];
    if (keep(w)) {
      visit(w);
      extend(letters, inverse_count, window, max_len, w, keep, visit);
    }
    if (inv) --inverse_count[g];
    w.pop_back();
  }
}

}  // namespace

void for_each_word(const Presentation& p, int max_len, int window, const std::function<void(const Word&)>& visit) {
  auto letters = alphabet(p, window);
  std::vector<int> counts(p.generators().size(), 0);
  Word w;
  extend(letters, counts, window, max_len, w, [](const Word&) { return true; }, visit);
}

std::vector<Word> enumerate_basis(const Presentation& p, int max_degree, int window) {
  std::vector<Word> out{Word{}};
  auto letters = alphabet(p, window);
  std::vector<int> counts(p.generators().size(), 0);
  Word w;
  // A prefix of a normal word is normal, so pruning on reducibility is exact.
  extend(letters, counts, window, max_degree, w, [&](const Word& u) { return p.is_normal(u); },
         [&](const Word& u) { out.push_back(u); });
  std::sort(out.begin(), out.end(), WordLess{});
  return out;
}

CheckReport check_local_confluence(const Presentation& p, int max_len, int window) {
  CheckReport report;
  ReportTimer timer(report);
  report.check = "confluence";
  report.preset = p.name();
  report.add_parameter("max_len", std::to_string(max_len));
  report.add_parameter("window", std::to_string(window));
  if (max_len < 2) throw Error("confluence check needs max_len >= 2");
  long words = 0;
  long ambiguous = 0;
  long failing = 0;
  // Shortest witness wins, so the residual does not depend on traversal order.
  std::optional<Word> witness;
  std::string witness_text;
  std::vector<std::pair<Word, std::string>> unresolved;
  for_each_word(p, max_len, window, [&](const Word& w) {
    ++words;
    auto rs = p.redexes(w);
    if (rs.size() < 2) return;
    ++ambiguous;
    Element nf = p.normal_form(w);
    for (const auto& r : rs) {
      Element other = p.normalize(p.rewrite(w, r));
      if (other == nf) continue;
      std::string rule = r.rule < 0 ? std::string("cancellation") : p.format(p.rules()[r.rule].lhs);
      std::string text = "word " + p.format(w) + ": " + p.format(nf) + " vs " + p.format(other) + " (via " + rule +
                         " at " + std::to_string(r.position) + ")";
      auto gaps = p.missing_pairs_in(nf - other);
      if (!gaps.empty()) {
        unresolved.emplace_back(w, text);
        for (const auto& g : gaps) {
          std::string pair = p.format_pair(g);
          if (std::find(report.missing_pairs.begin(), report.missing_pairs.end(), pair) == report.missing_pairs.end())
            report.missing_pairs.push_back(pair);
        }
        return;
      }
      ++failing;
      if (!witness || WordLess{}(w, *witness)) {
        witness = w;
        witness_text = text;
      }
      return;
    }
  });
  if (witness) {
    report.fail(witness_text);
  } else if (!unresolved.empty()) {
    report.status = Status::inconclusive;
    report.residual = std::min_element(unresolved.begin(), unresolved.end(), [](const auto& a, const auto& b) {
                        return WordLess{}(a.first, b.first);
                      })->second;
  }
  std::sort(report.missing_pairs.begin(), report.missing_pairs.end());
  report.add_detail("failing_words", std::to_string(failing));
  report.add_detail("unresolved_words", std::to_string(unresolved.size()));
  report.add_detail("words", std::to_string(words));
  report.add_detail("ambiguous_words", std::to_string(ambiguous));
  return report;
}

CheckReport verify_identity_family(const Presentation& p, const std::string& name,
                                   const std::function<Element(int)>& residual, int k_min, int k_max) {
  CheckReport report;
  ReportTimer timer(report);
  report.check = "identity-family:" + name;
  report.preset = p.name();
  report.add_parameter("k_range", std::to_string(k_min) + ".." + std::to_string(k_max));
  for (int k = k_min; k <= k_max; ++k) {
    Element r = p.normalize(residual(k));
    if (!r.is_zero()) {
      report.fail("k = " + std::to_string(k) + ": " + p.format(r));
      break;
    }
  }
  return report;
}

Element power(const Presentation& p, const Element& e, int k) {
  if (k < 0) throw Error("negative element power");
  Element acc(1);
  for (int i = 0; i < k; ++i) acc = p.multiply(acc, e);
  return acc;
}

}  // namespace qsv

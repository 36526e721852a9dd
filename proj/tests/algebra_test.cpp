#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>
#include <string>

#include "qsv/algebra_checks.hpp"
#include "qsv/errors.hpp"
#include "qsv/presets.hpp"

namespace qsv {
namespace {

const Scalar s = Scalar::s();
const Scalar q = Scalar::q();

// ---- independent oracle: exhaustive rewriting on strings -----------------

using StrElem = std::map<std::string, Scalar>;
using StrRules = std::vector<std::pair<std::string, StrElem>>;

void add_to(StrElem& e, const std::string& w, const Scalar& c) {
  Scalar& slot = e[w];
  slot += c;
  if (slot.is_zero()) e.erase(w);
}

// Every normal form reachable by any sequence of single rewrites.
std::set<std::vector<std::pair<std::string, std::string>>> all_normal_forms(const StrElem& e, const StrRules& rules,
                                                                             int depth = 0) {
  for (const auto& [w, c] : e) {
    for (const auto& [lhs, rhs] : rules) {
      for (std::size_t pos = w.find(lhs); pos != std::string::npos; pos = w.find(lhs, pos + 1)) {
        // Branch over the first reducible term only; other terms reduce independently.
        std::set<std::vector<std::pair<std::string, std::string>>> out;
        for (const auto& [lhs2, rhs2] : rules) {
          for (std::size_t p2 = w.find(lhs2); p2 != std::string::npos; p2 = w.find(lhs2, p2 + 1)) {
            StrElem next = e;
            add_to(next, w, -c);
            for (const auto& [u, k] : rhs2) add_to(next, w.substr(0, p2) + u + w.substr(p2 + lhs2.size()), c * k);
            auto sub = all_normal_forms(next, rules, depth + 1);
            out.insert(sub.begin(), sub.end());
          }
        }
        return out;
      }
    }
  }
  std::vector<std::pair<std::string, std::string>> flat;
  for (const auto& [w, c] : e) flat.emplace_back(w, c.to_string());
  return {flat};
}

std::vector<std::pair<std::string, std::string>> as_flat(const Element& e, const Presentation& p,
                                                         const std::map<Letter, char>& names) {
  std::map<std::string, Scalar> m;
  for (const auto& [w, c] : e.terms()) {
    std::string key;
    for (Letter l : w) key += names.at(l);
    m[key] = c;
  }
  std::vector<std::pair<std::string, std::string>> flat;
  for (const auto& [w, c] : m) flat.emplace_back(w, c.to_string());
  (void)p;
  return flat;
}

// Hand-written rules read directly off the defining relations of P_full.
StrRules p_full_oracle_rules() {
  return {
      {"tx", {{"xt", q.inverse()}}},
      {"yx", {{"xy", q.pow(-2)}}},
      {"yt", {{"ty", q.inverse()}}},
      {"tt", {{"yx", s * (q - 1)}}},
  };
}

class PFull : public ::testing::Test {
 protected:
  void SetUp() override {
    p = load_preset("P_full").presentation;
    x = p.letter("x");
    t = p.letter("theta");
    y = p.letter("y");
    names = {{x, 'x'}, {t, 't'}, {y, 'y'}};
  }
  Presentation p;
  Letter x{}, t{}, y{};
  std::map<Letter, char> names;
};

TEST_F(PFull, ThetaXReordersWithInverseQ) {
  EXPECT_EQ(p.normal_form({t, x}), Element::word({x, t}, q.inverse()));
}

TEST_F(PFull, ThetaSquaredMatchesComposedRules) {
  Element expected = Element::word({x, y}, s.pow(-3) * (q - 1));
  EXPECT_EQ(p.normal_form({t, t}), expected);
  auto forms = all_normal_forms({{"tt", Scalar(1)}}, p_full_oracle_rules());
  ASSERT_EQ(forms.size(), 1u);
  EXPECT_EQ(*forms.begin(), as_flat(expected, p, names));
}

TEST_F(PFull, YThetaXAgreesWithEveryReductionPath) {
  Element nf = p.normal_form({y, t, x});
  EXPECT_EQ(nf, Element::word({x, t, y}, q.pow(-4)));
  auto forms = all_normal_forms({{"ytx", Scalar(1)}}, p_full_oracle_rules());
  ASSERT_EQ(forms.size(), 1u);
  EXPECT_EQ(*forms.begin(), as_flat(nf, p, names));
}

TEST_F(PFull, CriticalWordThetaThetaX) {
  Element nf = p.normal_form({t, t, x});
  EXPECT_EQ(nf, Element::word({x, x, y}, s.pow(-7) * (q - 1)));
  auto forms = all_normal_forms({{"ttx", Scalar(1)}}, p_full_oracle_rules());
  ASSERT_EQ(forms.size(), 1u);
  EXPECT_EQ(*forms.begin(), as_flat(nf, p, names));
}

TEST_F(PFull, OracleAgreesOnAllWordsUpToLengthFour) {
  auto rules = p_full_oracle_rules();
  for_each_word(p, 4, 0, [&](const Word& w) {
    std::string key;
    for (Letter l : w) key += names.at(l);
    auto forms = all_normal_forms({{key, Scalar(1)}}, rules);
    ASSERT_EQ(forms.size(), 1u) << key;
    EXPECT_EQ(*forms.begin(), as_flat(p.normal_form(w), p, names)) << key;
  });
}

TEST_F(PFull, MultiplyIsNormalizedProduct) {
  EXPECT_EQ(p.multiply(p.gen("x"), p.gen("theta")), Element::word({x, t}));
  EXPECT_EQ(p.multiply(p.gen("theta"), p.gen("x")), Element::word({x, t}, q.inverse()));
}

TEST_F(PFull, SupersphereVanishes) {
  Element r = s * Element::word({y, x}) + Element::word({t, t}) - s.inverse() * Element::word({x, y});
  EXPECT_TRUE(p.normalize(r).is_zero());
}

TEST_F(PFull, BasisHasNineWordsOfDegreeTwo) {
  auto basis = enumerate_basis(p, 2, 0);
  EXPECT_EQ(basis.size(), 9u);
  // Oracle: words over {x,t,y} of length <= 2 avoiding every rule left-hand side.
  int count = 0;
  std::vector<std::string> words{""};
  for (char a : std::string("xty")) {
    words.push_back(std::string(1, a));
    for (char b : std::string("xty")) words.push_back(std::string{a, b});
  }
  for (const auto& w : words) {
    bool normal = true;
    for (const auto& [lhs, rhs] : p_full_oracle_rules()) normal = normal && w.find(lhs) == std::string::npos;
    count += normal;
  }
  EXPECT_EQ(count, 9);
}

TEST_F(PFull, LocallyConfluentToLengthSix) {
  auto report = check_local_confluence(p, 6, 2);
  EXPECT_EQ(report.status, Status::pass) << report.residual.value_or("");
}

TEST_F(PFull, DerivedInverseRule) {
  Letter xi = p.letter("x", true);
  EXPECT_EQ(p.normal_form({t, xi}), Element::word({xi, t}, q));
  EXPECT_EQ(p.normal_form({y, xi}), Element::word({xi, y}, q.pow(2)));
  EXPECT_EQ(p.normal_form({x, t, xi}), Element::word({t}, q));
  EXPECT_EQ(p.normal_form({xi, x}), Element(1));
}

TEST(BrokenPresentation, MissingRuleIsDetected) {
  PresentationBuilder b("broken");
  b.add_generator({"x", Parity::even});
  b.add_generator({"theta", Parity::odd});
  b.add_generator({"y", Parity::even});
  Presentation base = b.current();
  Element x = base.gen("x");
  Element t = base.gen("theta");
  Element y = base.gen("y");
  b.add_relation(free_product(x, t) - q * free_product(t, x));
  b.add_relation(free_product(y, t) - q.inverse() * free_product(t, y));
  auto report = check_local_confluence(b.build(), 3, 0);
  EXPECT_EQ(report.status, Status::fail);
  ASSERT_TRUE(report.residual);
  EXPECT_NE(report.residual->find("y*theta*x"), std::string::npos) << *report.residual;
}

class PRed : public ::testing::Test {
 protected:
  void SetUp() override {
    p = load_preset("P_red").presentation;
    xp = p.letter("x_+");
    t = p.letter("theta");
    xm = p.letter("x_-");
  }
  Presentation p;
  Letter xp{}, t{}, xm{};
};

TEST_F(PRed, RulesAreOrientedByGeneratorOrder) {
  ASSERT_EQ(p.rules().size(), 3u);
  EXPECT_EQ(p.normal_form({t, xp}), Element::word({xp, t}, q.inverse()));
  EXPECT_EQ(p.normal_form({xm, t}), Element::word({t, xm}, q.inverse()));
  EXPECT_EQ(p.normal_form({xm, xp}), Element::word({xp, xm}) - Element::word({t, t}, s.inverse() * (q + 1)));
}

TEST_F(PRed, BasisOfDegreeTwo) {
  auto basis = enumerate_basis(p, 2, 0);
  std::vector<Word> expected{{}, {xp}, {t}, {xm}, {xp, xp}, {xp, t}, {xp, xm}, {t, t}, {t, xm}, {xm, xm}};
  std::sort(expected.begin(), expected.end(), WordLess{});
  EXPECT_EQ(basis, expected);
  EXPECT_EQ(enumerate_basis(p, 0, 0), std::vector<Word>{Word{}});
}

TEST_F(PRed, SupersphereDoesNotVanish) {
  Element r = s * Element::word({xm, xp}) + Element::word({t, t}) - s.inverse() * Element::word({xp, xm});
  Element expected = (s - s.inverse()) * Element::word({xp, xm}) - q * Element::word({t, t});
  EXPECT_EQ(p.normalize(r), expected);
}

TEST_F(PRed, SupersphereIsCentral) {
  Element r = p.normalize(s * Element::word({xm, xp}) + Element::word({t, t}) - s.inverse() * Element::word({xp, xm}));
  for (Letter g : {xp, t, xm}) {
    Element e = Element::letter(g);
    EXPECT_TRUE((p.multiply(r, e) - p.multiply(e, r)).is_zero()) << p.format(Word{g});
  }
}

TEST_F(PRed, LocallyConfluentToLengthSix) {
  EXPECT_EQ(check_local_confluence(p, 6).status, Status::pass);
}

TEST_F(PRed, IdentityFamilies) {
  Element xpe = Element::letter(xp);
  Element xme = Element::letter(xm);
  Element te = Element::letter(t);
  auto shift = verify_identity_family(
      p, "shift", [&](int k) { return free_product(power(p, xpe, k), te) - q.pow(k) * free_product(te, power(p, xpe, k)); },
      1, 6);
  EXPECT_EQ(shift.status, Status::pass) << shift.residual.value_or("");
  auto bracket = verify_identity_family(
      p, "bracket",
      [&](int k) {
        Element xk = power(p, xpe, k);
        Scalar coeff = s.inverse() * (q.pow(2 * k) - 1) / (q - 1);
        return free_product(xk, xme) - free_product(xme, xk) -
               coeff * free_product(free_product(te, te), power(p, xpe, k - 1));
      },
      1, 6);
  EXPECT_EQ(bracket.status, Status::pass) << bracket.residual.value_or("");
  auto wrong = verify_identity_family(
      p, "wrong", [&](int k) { return free_product(power(p, xpe, k), te) - free_product(te, power(p, xpe, k)); }, 1, 3);
  EXPECT_EQ(wrong.status, Status::fail);
}

TEST_F(PRed, KoszulSigns) {
  Element te = Element::letter(t);
  Element one(1);
  auto t1 = TensorElement::pure({te, one});
  auto one_t = TensorElement::pure({one, te});
  auto tt = TensorElement::pure({te, te});
  EXPECT_EQ(tensor_multiply(t1, one_t, p), tt);
  EXPECT_EQ(tensor_multiply(one_t, t1, p), Scalar(-1) * tt);
  auto d = t1 + one_t;
  Element t2 = Element::word({t, t});
  EXPECT_EQ(tensor_multiply(d, d, p), TensorElement::pure({t2, one}) + TensorElement::pure({one, t2}));
  // Even legs never produce a sign.
  Element xpe = Element::letter(xp);
  EXPECT_EQ(tensor_multiply(TensorElement::pure({one, xpe}), TensorElement::pure({te, one}), p),
            TensorElement::pure({te, xpe}));
}

TEST(Presets, ShippedPresetsAreConfluent) {
  for (const char* name : {"P_ext", "SP_h", "U_Lhbar", "SPq21_sub6"}) {
    auto report = check_local_confluence(load_preset(name).presentation, 6, 2);
    EXPECT_EQ(report.status, Status::pass) << name << ": " << report.residual.value_or("");
  }
}

// Rules read off the exterior relations as printed; F = Phi_+, G = Phi_-.
TEST(Presets, ExteriorRelationsHaveAnObstruction) {
  const Scalar h = Scalar::param(Param::h);
  StrRules rules{
      {"ZF", {{"FZ", Scalar(1)}}},
      {"GZ", {{"ZG", Scalar(1)}, {"FZ", Scalar(2) * h}}},
      {"GF", {{"FG", Scalar(-1)}}},
      {"FF", {}},
      {"GG", {{"GF", Scalar(2) * h}, {"ZZ", -h}}},
  };
  auto forms = all_normal_forms({{"GGG", Scalar(1)}}, rules);
  EXPECT_EQ(forms.size(), 2u);
  Presentation p = load_preset("Lambda_h").presentation;
  auto report = check_local_confluence(p, 6, 2);
  EXPECT_EQ(report.status, Status::fail);
  EXPECT_EQ(report.residual.value_or(""),
            "word Phi_-^3: -h*Z^2*Phi_- + 2*h^2*Phi_+*Z^2 vs -h*Z^2*Phi_- - 6*h^2*Phi_+*Z^2 (via Phi_-^2 at 1)");
}

TEST(Presets, QuantumExteriorRelationsHaveAnObstruction) {
  // F = phi_+, G = phi_-, Q = s - s^3.
  Scalar big_q = s - s.pow(3);
  StrRules rules{
      {"zF", {{"Fz", q}}},
      {"Gz", {{"zG", q}}},
      {"GF", {{"FG", -q.pow(-2)}, {"zz", -q.pow(-2) * big_q}}},
      {"FF", {}},
      {"GG", {}},
  };
  auto forms = all_normal_forms({{"GFF", Scalar(1)}}, rules);
  EXPECT_EQ(forms.size(), 2u);
  auto report = check_local_confluence(load_preset("SP_q_1|2").presentation, 6, 2);
  EXPECT_EQ(report.status, Status::fail);
  Presentation p = load_preset("SP_q_1|2").presentation;
  Element gap = p.normalize(free_product(p.gen("phi_-"), p.normalize(free_product(p.gen("phi_+"), p.gen("phi_+")))));
  EXPECT_TRUE(gap.is_zero());
  Element other = big_q * (q.pow(-4) - 1) * Element::word({p.letter("phi_+"), p.letter("z"), p.letter("z")});
  EXPECT_NE(report.residual.value_or("").find(p.format(other)), std::string::npos) << report.residual.value_or("");
}

TEST(Presets, PartialPresentationIsInconclusiveNotFail) {
  auto report = check_local_confluence(load_preset("SPq21_partial").presentation, 3, 0);
  EXPECT_NE(report.status, Status::fail) << report.residual.value_or("");
}

TEST(Presets, PExtCancellation) {
  Presentation p = load_preset("P_ext").presentation;
  Letter x = p.letter("x_+");
  EXPECT_EQ(p.normal_form({x, letter_inverse(x)}), Element(1));
  EXPECT_EQ(p.normal_form({letter_inverse(x), x}), Element(1));
}

TEST(Builder, RejectsOddInvertibleAndDuplicates) {
  PresentationBuilder b("bad");
  EXPECT_THROW(b.add_generator({"theta", Parity::odd, true}), PresentationError);
  b.add_generator({"x", Parity::even});
  EXPECT_THROW(b.add_generator({"x", Parity::even}), PresentationError);
}

TEST(Builder, ExplicitRuleMustDecreaseOrder) {
  PresentationBuilder b("rules");
  b.add_generator({"x", Parity::even});
  b.add_generator({"y", Parity::even});
  Letter x = make_letter(0);
  Letter y = make_letter(1);
  EXPECT_THROW(b.add_rule({x, y}, Element::word({y, x})), PresentationError);
  EXPECT_NO_THROW(b.add_rule({y, x}, Element::word({x, y})));
}

TEST(Builder, RedundantRelationIsRecorded) {
  PresentationBuilder b("dup");
  b.add_generator({"x", Parity::even});
  b.add_generator({"y", Parity::even});
  Element xy = Element::word({make_letter(0), make_letter(1)});
  Element yx = Element::word({make_letter(1), make_letter(0)});
  EXPECT_TRUE(b.add_relation(yx - xy));
  EXPECT_FALSE(b.add_relation(Scalar(2) * (yx - xy)));
  EXPECT_EQ(b.build().redundant_relations().size(), 1u);
}

// ---- properties over random elements -------------------------------------

Element random_element(const Presentation& p, std::mt19937& rng, int terms, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> gen(0, static_cast<int>(p.generators().size()) - 1);
  std::uniform_int_distribution<int> coeff(-3, 3);
  Element e;
  for (int i = 0; i < terms; ++i) {
    Word w;
    int n = len(rng);
    for (int j = 0; j < n; ++j) w.push_back(make_letter(gen(rng)));
    e.add(w, Scalar(coeff(rng)) * Scalar::s(coeff(rng)));
  }
  return e;
}

class NormalizeProperty : public ::testing::TestWithParam<std::tuple<std::string, int>> {};

TEST_P(NormalizeProperty, IdempotentAndMultiplicative) {
  auto [name, seed] = GetParam();
  Presentation p = load_preset(name).presentation;
  std::mt19937 rng(static_cast<unsigned>(seed));
  Element a = random_element(p, rng, 3, 3);
  Element b = random_element(p, rng, 3, 3);
  Element na = p.normalize(a);
  EXPECT_EQ(p.normalize(na), na);
  EXPECT_EQ(p.normalize(free_product(a, b)), p.multiply(na, p.normalize(b)));
  for (const auto& [w, c] : na.terms()) EXPECT_TRUE(p.is_normal(w));
}

TEST_P(NormalizeProperty, PreservesParity) {
  auto [name, seed] = GetParam();
  Presentation p = load_preset(name).presentation;
  std::mt19937 rng(static_cast<unsigned>(seed) + 77);
  for (int i = 0; i < 5; ++i) {
    Element e = random_element(p, rng, 1, 4);
    if (e.is_zero()) continue;
    Parity before = p.parity(e);
    Element n = p.normalize(e);
    if (!n.is_zero()) EXPECT_EQ(p.parity(n), before);
  }
}

TEST_P(NormalizeProperty, SwappingOddLegsFlipsSign) {
  auto [name, seed] = GetParam();
  Presentation p = load_preset(name).presentation;
  std::mt19937 rng(static_cast<unsigned>(seed) + 99);
  std::uniform_int_distribution<int> gen(0, static_cast<int>(p.generators().size()) - 1);
  Element u = Element::letter(make_letter(gen(rng)));
  Element v = Element::letter(make_letter(gen(rng)));
  Element one(1);
  // (1 (x) u)(v (x) 1) = (-1)^{|u||v|} v (x) u
  auto lhs = tensor_multiply(TensorElement::pure({one, u}), TensorElement::pure({v, one}), p);
  bool odd = p.parity(u) == Parity::odd && p.parity(v) == Parity::odd;
  auto rhs = TensorElement::pure({v, u});
  EXPECT_EQ(lhs, odd ? Scalar(-1) * rhs : rhs);
}

INSTANTIATE_TEST_SUITE_P(Presets, NormalizeProperty,
                         ::testing::Combine(::testing::Values("P_full", "P_red", "SP_h", "Lambda_h", "U_Lhbar",
                                                              "SPq21_sub6"),
                                            ::testing::Range(1, 6)),
                         [](const auto& info) {
                           std::string n = std::get<0>(info.param);
                           for (char& ch : n) {
                             if (!std::isalnum(static_cast<unsigned char>(ch))) ch = '_';
                           }
                           return n + "_" + std::to_string(std::get<1>(info.param));
                         });

}  // namespace
}  // namespace qsv

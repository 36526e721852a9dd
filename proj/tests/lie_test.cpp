#include <gtest/gtest.h>

#include <map>
#include <random>

#include "qsv/algebra_checks.hpp"
#include "qsv/lie.hpp"
#include "qsv/parser.hpp"
#include "qsv/presets.hpp"

namespace qsv {
namespace {

const Scalar hb = Scalar::param(Param::hb);
const Scalar c = Scalar::param(Param::c);

// Rewrites strings over {u, x, v} (x = xi) with the three rules, choosing a
// random redex each step; knows nothing about the engine's rule tables.
struct Oracle {
  using Poly = std::map<std::string, Scalar>;
  std::mt19937 rng{11};

  static void add(Poly& p, const std::string& w, const Scalar& k) {
    Scalar& slot = p[w];
    slot += k;
    if (slot.is_zero()) p.erase(w);
  }

  Poly reduce(const std::string& word) {
    Poly todo{{word, Scalar(1)}};
    Poly done;
    while (!todo.empty()) {
      auto [w, k] = *todo.begin();
      todo.erase(todo.begin());
      std::vector<std::size_t> spots;
      for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        std::string pair = w.substr(i, 2);
        if (pair == "vu" || pair == "xu" || pair == "vx") spots.push_back(i);
      }
      if (spots.empty()) {
        add(done, w, k);
        continue;
      }
      std::size_t i = spots[rng() % spots.size()];
      std::string pre = w.substr(0, i);
      std::string post = w.substr(i + 2);
      std::string pair = w.substr(i, 2);
      if (pair == "vu") {
        add(todo, pre + "uv" + post, k);
        add(todo, pre + "xx" + post, -c * k);
      } else if (pair == "xu") {
        add(todo, pre + "ux" + post, k);
        add(todo, pre + "x" + post, -hb * k);
      } else {
        add(todo, pre + "xv" + post, k);
      }
    }
    return done;
  }
};

Element to_element(const Oracle::Poly& poly, const Presentation& p) {
  Element e;
  for (const auto& [w, k] : poly) {
    Word word;
    for (char ch : w) word.push_back(p.letter(ch == 'u' ? "u" : ch == 'x' ? "xi" : "v"));
    e.add(word, k);
  }
  return e;
}

Word to_word(const std::string& w, const Presentation& p) {
  Word word;
  for (char ch : w) word.push_back(p.letter(ch == 'u' ? "u" : ch == 'x' ? "xi" : "v"));
  return word;
}

std::string detail(const CheckReport& r, const std::string& key) {
  for (const auto& [k, v] : r.details) {
    if (k == key) return v;
  }
  return "<missing " + key + ">";
}

bool has_finding(const CheckReport& r, const std::string& key) {
  for (const auto& f : r.findings) {
    if (f.key == key) return true;
  }
  return false;
}

TEST(Enveloping, RulesAreOrientedTowardsUXiV) {
  HopfStructure h = enveloping_algebra();
  const Presentation& p = h.presentation();
  Element xi = p.gen("xi");
  Element u = p.gen("u");
  Element v = p.gen("v");
  EXPECT_EQ(p.normalize(free_product(v, u)), free_product(u, v) - c * free_product(xi, xi));
  EXPECT_EQ(p.normalize(free_product(xi, u)), free_product(u, xi) - hb * xi);
  EXPECT_EQ(p.normalize(free_product(v, xi)), free_product(xi, v));
  EXPECT_TRUE(p.is_normal(to_word("xxxx", p)));
}

TEST(Enveloping, OracleAgreesOnAllWordsToLengthFive) {
  HopfStructure h = enveloping_algebra();
  const Presentation& p = h.presentation();
  Oracle oracle;
  std::vector<std::string> words{""};
  for (int len = 1; len <= 5; ++len) {
    std::vector<std::string> next;
    for (const auto& w : words) {
      for (char ch : {'u', 'x', 'v'}) next.push_back(w + ch);
    }
    words = next;
    for (const auto& w : words) {
      // Two random reduction orders and the engine must coincide.
      Element a = to_element(oracle.reduce(w), p);
      Element b = to_element(oracle.reduce(w), p);
      ASSERT_EQ(a, b) << w;
      ASSERT_EQ(p.normal_form(to_word(w, p)), a) << w;
    }
  }
}

TEST(Enveloping, ConfluenceReport) {
  auto r = check_enveloping_confluence(5);
  EXPECT_EQ(r.status, Status::pass) << r.residual.value_or("");
  EXPECT_EQ(r.preset, "U_Lhbar");
  // v xi u -> xi v u -> xi u v - c xi^3 -> u xi v - hb xi v - c xi^3
  EXPECT_EQ(detail(r, "v*xi*u"), "-c*xi^3 + u*xi*v - hb*xi*v");
  // xi xi u -> xi u xi - hb xi^2 -> u xi^2 - 2 hb xi^2
  EXPECT_EQ(detail(r, "u*xi^2 - xi^2*u"), "2*hb*xi^2");
  EXPECT_TRUE(has_finding(r, "xi-squared"));
  EXPECT_TRUE(has_finding(r, "lie-star"));
}

TEST(Enveloping, ConfluentForEveryValueOfC) {
  HopfStructure h = enveloping_algebra();
  const Presentation& p = h.presentation();
  for (const Scalar& value : {Scalar(0), Scalar(1), Scalar(2) * hb, Scalar(mpq_class(7, 3))}) {
    Presentation special = p.specialize({{Param::c, value}});
    EXPECT_EQ(check_local_confluence(special, 5, 0).status, Status::pass) << value.to_string();
  }
}

TEST(Enveloping, NonJacobiBracketIsCaught) {
  // [u,v] = c u breaks super-Jacobi on (u, xi, v): 0 = hb [xi,v] + c [xi,u] = -c hb xi.
  Presentation broken = parse_spec(
                            "[generators]\nu : even\nxi : odd\nv : even\n[relations]\n"
                            "u * xi - xi * u = hb * xi\nxi * v - v * xi = 0\nu * v - v * u = c * u\n")
                            .presentation;
  auto r = check_local_confluence(broken, 4, 0);
  EXPECT_EQ(r.status, Status::fail);
}

TEST(Bridge, BothFamiliesToSix) {
  auto r = check_bridge_identities(6);
  EXPECT_EQ(r.status, Status::pass) << r.residual.value_or("");
  EXPECT_EQ(r.preset, "P_red");
  EXPECT_EQ(r.details.size(), 2u);
}

TEST(Bridge, KOneIsTheDefiningRelation) {
  const Presentation& p = load_preset("P_red").presentation;
  // [x_+, x_-] = s^-1 (q^2 - 1)/(q - 1) theta^2 = s^-1 (q + 1) theta^2
  Scalar coeff = Scalar::s().inverse() * (Scalar::q().pow(2) - 1) / (Scalar::q() - 1);
  EXPECT_EQ(coeff, Scalar::s().inverse() * (Scalar::q() + 1));
  Element rel = free_product(p.gen("x_+"), p.gen("x_-")) - free_product(p.gen("x_-"), p.gen("x_+")) -
                coeff * free_product(p.gen("theta"), p.gen("theta"));
  EXPECT_TRUE(p.normalize(rel).is_zero());
  EXPECT_EQ(check_bridge_identities(1).status, Status::pass);
}

TEST(LieHopf, PrimitiveStructure) {
  auto r = check_lie_hopf(4);
  EXPECT_EQ(r.status, Status::pass) << r.residual.value_or("");
  EXPECT_EQ(detail(r, "well_defined"), "PASS");
  EXPECT_EQ(detail(r, "axioms"), "PASS");
  EXPECT_EQ(detail(r, "S^2 = id"), "PASS");
  EXPECT_EQ(detail(r, "[u,xi] primitive"), "PASS");
  EXPECT_EQ(detail(r, "S([u,v] - c xi^2)"), "0");
}

TEST(LieHopf, CrossTermsOfTheOddSquareCancel) {
  HopfStructure h = enveloping_algebra();
  const Presentation& p = h.presentation();
  Element xi = p.gen("xi");
  Element one(1);
  // (xi(x)1)(1(x)xi) = xi(x)xi, (1(x)xi)(xi(x)1) = -xi(x)xi.
  TensorElement a = TensorElement::pure({xi, one});
  TensorElement b = TensorElement::pure({one, xi});
  TensorElement ab = tensor_multiply(a, b, p);
  TensorElement ba = tensor_multiply(b, a, p);
  EXPECT_EQ(ab, TensorElement::pure({xi, xi}));
  EXPECT_EQ(ba, Scalar(-1) * TensorElement::pure({xi, xi}));
  EXPECT_TRUE((ab + ba).is_zero());
  Element xi2 = free_product(xi, xi);
  EXPECT_EQ(h.coproduct(xi2), TensorElement::pure({xi2, one}) + TensorElement::pure({one, xi2}));
}

TEST(LieHopf, EachRelationIsKilledByTheMaps) {
  HopfStructure h = enveloping_algebra();
  const Presentation& p = h.presentation();
  Element u = p.gen("u");
  Element xi = p.gen("xi");
  Element v = p.gen("v");
  Element r1 = p.supercommutator(u, xi) - hb * xi;
  Element r3 = p.supercommutator(u, v) - c * free_product(xi, xi);
  for (const Element& r : {r1, r3}) {
    EXPECT_TRUE(h.coproduct(r).is_zero());
    EXPECT_TRUE(h.counit(r).is_zero());
    EXPECT_TRUE(h.antipode(r).is_zero());
  }
  // S is an antihomomorphism with S(xi) = -xi: S(xi^2) = -xi^2 by the sign rule.
  EXPECT_EQ(h.antipode(free_product(xi, xi)), -free_product(xi, xi));
}

}  // namespace
}  // namespace qsv

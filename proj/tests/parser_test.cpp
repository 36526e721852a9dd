#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "qsv/errors.hpp"
#include "qsv/parser.hpp"
#include "qsv/presets.hpp"

namespace qsv {
namespace {

const Scalar s = Scalar::s();
const Scalar q = Scalar::q();

TEST(ParseScalar, Arithmetic) {
  EXPECT_EQ(parse_scalar("q"), s * s);
  EXPECT_EQ(parse_scalar("q^-1 * (s + 1)"), (s + 1) / q);
  EXPECT_EQ(parse_scalar("3/4"), Scalar::rational(3, 4));
  EXPECT_EQ(parse_scalar("I^2"), Scalar(-1));
  EXPECT_EQ(parse_scalar("-(h - hb)^2"), -(Scalar::param(Param::h) - Scalar::param(Param::hb)).pow(2));
  EXPECT_EQ(parse_scalar("c * s^(-3)"), Scalar::param(Param::c) * s.pow(-3));
}

TEST(ParseScalar, DivisionByZeroIsRejected) {
  EXPECT_THROW(parse_scalar("1 / (q - s^2)"), DivisionByZero);
}

TEST(ParseScalar, ErrorsCarryColumns) {
  try {
    parse_scalar("s + $");
    FAIL() << "no exception";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 5);
  }
  EXPECT_THROW(parse_scalar("s +"), ParseError);
  EXPECT_THROW(parse_scalar("(s"), ParseError);
  EXPECT_THROW(parse_scalar("foo"), ParseError);
}

TEST(ParseElement, FormalProducts) {
  Presentation p = load_preset("P_full").presentation;
  Letter x = p.letter("x");
  Letter t = p.letter("theta");
  Element e = parse_element("theta * x - q^-1 * x*theta", p);
  EXPECT_EQ(e, Element::word({t, x}) - Element::word({x, t}, q.inverse()));
  EXPECT_TRUE(p.normalize(e).is_zero());
  EXPECT_EQ(parse_element("x^-2", p), Element::word({letter_inverse(x), letter_inverse(x)}));
  EXPECT_EQ(parse_element("(x + theta)^2", p),
            Element::word({x, x}) + Element::word({x, t}) + Element::word({t, x}) + Element::word({t, t}));
  EXPECT_EQ(parse_element("theta / s", p), Element::word({t}, s.inverse()));
}

TEST(ParseElement, NegativePowerNeedsInvertibleGenerator) {
  Presentation p = load_preset("P_full").presentation;
  EXPECT_THROW(parse_element("y^-1", p), ParseError);
  EXPECT_THROW(parse_element("theta / x", p), ParseError);
}

TEST(ParseElement, GeneratorsShadowScalarSymbols) {
  PresentationBuilder b("shadow");
  b.add_generator({"c", Parity::even});
  Presentation p = b.build();
  EXPECT_EQ(parse_element("c", p), Element::letter(make_letter(0)));
}

TEST(ParseTensor, LegsAndSums) {
  Presentation p = load_preset("P_full").presentation;
  Element t = p.gen("theta");
  auto parsed = parse_tensor("theta (x) 1 + 1 (x) theta", p);
  EXPECT_EQ(parsed, TensorElement::pure({t, Element(1)}) + TensorElement::pure({Element(1), t}));
  EXPECT_THROW(parse_tensor("theta (x) 1 (x) 1", p), ParseError);
  EXPECT_EQ(parse_tensor("theta (x) 1 (x) 1", p, 3).legs(), 3);
}

TEST(ParseSpec, GeneratorAttributes) {
  SpecFile spec = parse_spec(R"(
[generators]
x : even invertible
theta : odd
w : odd incomplete
)");
  const auto& gens = spec.presentation.generators();
  ASSERT_EQ(gens.size(), 3u);
  EXPECT_TRUE(gens[0].invertible);
  EXPECT_EQ(gens[1].parity, Parity::odd);
  EXPECT_TRUE(gens[2].incomplete);
  EXPECT_EQ(spec.presentation.name(), "custom");
}

TEST(ParseSpec, OddInvertibleIsRejected) {
  EXPECT_THROW(parse_spec("[generators]\ntheta : odd invertible\n"), PresentationError);
}

TEST(ParseSpec, ParityMismatch) {
  const char* text = R"(
[generators]
theta : odd

[relations]
theta^2 = I * theta
)";
  try {
    parse_spec(text);
    FAIL() << "no exception";
  } catch (const ParityError& e) {
    EXPECT_NE(std::string(e.what()).find("line 6"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("parity mismatch"), std::string::npos) << e.what();
  }
}

TEST(ParseSpec, RelationIsOrientedByTermOrder) {
  SpecFile spec = parse_spec(R"(
[generators]
x : even
y : even

[relations]
x * y = q * y * x
)");
  const auto& rules = spec.presentation.rules();
  ASSERT_EQ(rules.size(), 1u);
  EXPECT_EQ(spec.presentation.format(rules[0].lhs), "y*x");
  EXPECT_EQ(rules[0].rhs, Element::word({make_letter(0), make_letter(1)}, q.inverse()));
}

TEST(ParseSpec, ExplicitRuleArrow) {
  SpecFile spec = parse_spec(R"(
[generators]
x : even
y : even

[relations]
y * x -> 2 * x * y
)");
  Presentation p = spec.presentation;
  EXPECT_EQ(p.normal_form({p.letter("y"), p.letter("x")}), Element::word({p.letter("x"), p.letter("y")}, Scalar(2)));
  EXPECT_THROW(parse_spec("[generators]\nx : even\ny : even\n[relations]\nx * y -> y * x\n"), PresentationError);
  EXPECT_THROW(parse_spec("[generators]\nx : even\ny : even\n[relations]\n2 * y * x -> x * y\n"), ParseError);
}

TEST(ParseSpec, UnknownSectionAndComments) {
  EXPECT_THROW(parse_spec("[bogus]\n"), ParseError);
  SpecFile spec = parse_spec("# comment\nname = demo  # trailing\n[generators]\nx : even\n");
  EXPECT_EQ(spec.presentation.name(), "demo");
}

TEST(ParseSpec, MapsAndPairing) {
  SpecFile spec = parse_spec(R"(
[generators]
x : even invertible

[maps]
coproduct x = x (x) x
counit x = 1
antipode x = x^-1

[pairing]
convention = theta-middle
)");
  EXPECT_TRUE(spec.maps.has_hopf());
  ASSERT_EQ(spec.pairing.size(), 1u);
  EXPECT_EQ(spec.pairing[0].first, "convention");
  EXPECT_EQ(spec.pairing[0].second, "theta-middle");
}

TEST(ParseSpec, Transform) {
  SpecFile spec = load_preset("P_red");
  ASSERT_TRUE(spec.transform);
  const auto& g = *spec.transform;
  EXPECT_EQ(g.name, "g_h");
  ASSERT_EQ(g.target.size(), 3u);
  EXPECT_EQ(g.target[1].name, "Theta");
  EXPECT_EQ(g.target[1].parity, Parity::odd);
  EXPECT_EQ(g.matrix[2][0], Scalar::param(Param::h) / (q - 1));
  EXPECT_EQ(g.matrix[2][2], Scalar(1));
  EXPECT_TRUE(g.matrix[0][2].is_zero());
}

TEST(PrintSpec, RoundTripPreservesRulesAndMaps) {
  for (const auto& name : builtin_preset_names()) {
    SpecFile spec = load_preset(name);
    std::string printed = print_spec(spec.presentation, &spec.maps);
    SpecFile again = parse_spec(printed);
    const Presentation& a = spec.presentation;
    const Presentation& b = again.presentation;
    EXPECT_EQ(b.name(), a.name());
    ASSERT_EQ(b.rules().size(), a.rules().size()) << name << "\n" << printed;
    for (std::size_t i = 0; i < a.rules().size(); ++i) {
      EXPECT_EQ(b.rules()[i].lhs, a.rules()[i].lhs) << name;
      EXPECT_EQ(b.rules()[i].rhs, a.rules()[i].rhs) << name;
    }
    EXPECT_EQ(b.requires_generic_q(), a.requires_generic_q()) << name;
    EXPECT_EQ(print_spec(b, &again.maps), printed) << name;
  }
}

TEST(Augment, AddsRelations) {
  Presentation base = load_preset("P_red").presentation;
  Presentation more = augment(base, "[relations]\ntheta^2 = 0\n");
  EXPECT_EQ(more.name(), "P_red+augmented");
  EXPECT_TRUE(more.normal_form({more.letter("theta"), more.letter("theta")}).is_zero());
  EXPECT_THROW(augment(base, "[generators]\nz : even\n"), ParseError);
}

TEST(Presets, UserPathOverridesBuiltins) {
  auto dir = std::filesystem::temp_directory_path() / "qsv_preset_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "P_red.qs") << "name = P_red\n[generators]\nw : even\n";
  ::setenv("QSV_PRESET_PATH", dir.c_str(), 1);
  std::string text = preset_source("P_red");
  ::unsetenv("QSV_PRESET_PATH");
  EXPECT_NE(text.find("w : even"), std::string::npos);
  EXPECT_THROW(preset_source("no_such_preset"), Error);
  std::filesystem::remove_all(dir);
}

TEST(Presets, AllBuiltinsParse) {
  for (const auto& name : builtin_preset_names()) EXPECT_NO_THROW(load_preset(name)) << name;
}

}  // namespace
}  // namespace qsv

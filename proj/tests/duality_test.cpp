#include <gtest/gtest.h>

#include <random>

#include "qsv/duality.hpp"
#include "qsv/errors.hpp"
#include "qsv/linalg.hpp"
#include "qsv/parser.hpp"
#include "qsv/presets.hpp"

namespace qsv {
namespace {

const Scalar s = Scalar::s();
const Scalar q = Scalar::q();

std::string detail(const CheckReport& r, const std::string& key) {
  for (const auto& [k, v] : r.details) {
    if (k == key) return v;
  }
  return "<missing " + key + ">";
}

const DualLetter K = DualLetter::K();
const DualLetter D = DualLetter::nabla();
const DualLetter N = DualLetter::N();

HopfStructure hopf(const std::string& name) {
  SpecFile spec = load_preset(name);
  return HopfStructure(spec.presentation, spec.maps);
}

// Test-side base values, read off a word letter by letter; x theta = q theta x in both algebras.
struct Oracle {
  const Presentation& p;
  PairingConvention convention;

  std::array<int, 3> count(const Word& w) const {
    std::array<int, 3> e{0, 0, 0};
    for (Letter l : w) e[letter_generator(l)] += letter_is_inverse(l) ? -1 : 1;
    return e;
  }
  Scalar base(const DualLetter& u, const Word& w) const {
    auto [k, l, n] = count(w);
    Scalar v(0);
    if (u.kind == DualKind::K && l == 0 && n == 0) v = Scalar(k);
    if (u.kind == DualKind::nabla && l == 1) v = Scalar(1);
    if (u.kind == DualKind::N && n == 1) v = Scalar(1);
    if (convention == PairingConvention::theta_left) v = v * Scalar::q(k * l);
    return v;
  }
  bool odd(const Word& w) const { return p.parity(w) == Parity::odd; }
};

TEST(Pairing, PaperValues) {
  Pairing pr = standard_pairing(PairingConvention::theta_middle);
  const Presentation& p = pr.presentation();
  Element x2 = parse_element("x_+^2", p);
  EXPECT_EQ(pr.pair(DualElement::letter(K), x2), Scalar(2));
  EXPECT_EQ(pr.pair(DualElement::letter(K), parse_element("x_+^-3", p)), Scalar(-3));
  EXPECT_EQ(pr.pair(DualElement::letter(DualLetter::group_like(mpq_class(1, 2))), p.gen("x_+")), s);
  EXPECT_EQ(pr.pair(DualElement::letter(D), p.gen("theta")), Scalar(1));
  EXPECT_EQ(pr.pair(DualElement::letter(N), p.gen("x_-")), Scalar(1));
}

TEST(Pairing, KNOnYByHand) {
  // Delta(y) = x^-1 (x) y + y (x) x^-1: <K, x^-1><N, y> + <K, y><N, x^-1> = (-1)(1) + 0.
  for (auto c : {PairingConvention::theta_middle, PairingConvention::theta_left}) {
    Pairing pr = standard_pairing(c);
    const Presentation& p = pr.presentation();
    auto closed_form = [](int k, int l, int n) { return Scalar((k - 1) * ((l == 0 && n == 1) + (l == 1 && n == 1))); };
    EXPECT_EQ(pr.pair(DualElement::word({K, N}), p.gen("x_-")), Scalar(-1));
    EXPECT_EQ(pr.pair(DualElement::word({K, N}), p.gen("x_-")), closed_form(0, 0, 1));
  }
}

TEST(Pairing, UnitPairsAsCounit) {
  Pairing pr = standard_pairing(PairingConvention::theta_middle);
  const Presentation& p = pr.presentation();
  for (int k = -3; k <= 3; ++k) {
    Word w = pr.basis_word({k, 0, 0});
    EXPECT_EQ(pr.pair(DualElement(Scalar(1)), Element::word(w)), Scalar(1)) << k;
  }
  EXPECT_EQ(pr.pair(DualElement(Scalar(1)), p.gen("theta")), Scalar(0));
}

TEST(Pairing, NablaSquaredOnThetaSquared) {
  // Delta(theta^2) = theta^2 (x) 1 + 1 (x) theta^2; the theta (x) theta terms cancel.
  Pairing pr = standard_pairing(PairingConvention::theta_middle);
  const Presentation& p = pr.presentation();
  HopfStructure h = hopf("P_ext");
  EXPECT_EQ(h.coproduct(parse_element("theta^2", p)),
            TensorElement::pure({parse_element("theta^2", p), Element(1)}) +
                TensorElement::pure({Element(1), parse_element("theta^2", p)}));
  EXPECT_EQ(pr.pair(DualElement::word({D, D}), parse_element("theta^2", p)), Scalar(0));
}

TEST(Pairing, NablaNCommuteOnThetaY) {
  Pairing pr = standard_pairing(PairingConvention::theta_middle);
  const Presentation& p = pr.presentation();
  Element ty = parse_element("theta * x_-", p);
  DualElement rel = DualElement::word({D, N}) - DualElement::word({N, D});
  EXPECT_EQ(pr.pair(rel, ty), Scalar(0));
  // Both orders are nonzero individually: Delta(theta y) has theta x^-1 (x) y and y (x) theta x^-1 type terms.
  EXPECT_NE(pr.pair(DualElement::word({D, N}), ty), Scalar(0));
}

TEST(Pairing, ThetaLeftCollectsCommutationFactor) {
  Pairing middle = standard_pairing(PairingConvention::theta_middle);
  Pairing left = standard_pairing(PairingConvention::theta_left);
  Word xt = middle.basis_word({3, 1, 0});
  // x^3 theta = q^3 theta x^3.
  EXPECT_EQ(middle.base(D, xt), Scalar(1));
  EXPECT_EQ(left.base(D, xt), Scalar::q(3));
}

TEST(Pairing, ShapeErrors) {
  Pairing pr = standard_pairing(PairingConvention::theta_middle);
  Word bad{make_letter(1), make_letter(0)};
  EXPECT_THROW(pr.base(K, bad), Error);
  EXPECT_THROW(Pairing(hopf("U_Lhbar"), PairingConvention::theta_middle), PresentationError);
  EXPECT_THROW(pr.pair(DualElement::letter(DualLetter::group_like(mpq_class(1, 3))), pr.presentation().gen("x_+")), Error);
}

TEST(Pairing, CutoffParsing) {
  PairingCutoff c = parse_pairing_cutoff("4,3,2");
  EXPECT_EQ(c.k_max, 4);
  EXPECT_EQ(c.n_max, 3);
  EXPECT_EQ(c.window, 2);
  EXPECT_THROW(parse_pairing_cutoff("4,3"), Error);
  EXPECT_THROW(parse_pairing_cutoff("4,x,2"), Error);
  EXPECT_THROW(parse_pairing_cutoff("4,-1,2"), Error);
  EXPECT_EQ(pairing_convention_from_string("theta-left"), PairingConvention::theta_left);
  EXPECT_THROW(pairing_convention_from_string("left"), Error);
}

TEST(Pairing, BasisSkipsNonNormalWords) {
  Pairing ext = standard_pairing(PairingConvention::theta_middle);
  Pairing full(hopf("P_full"), PairingConvention::theta_middle);
  PairingCutoff c{1, 1, 1, 2};
  EXPECT_EQ(ext.basis(c).size(), 3u * 3u * 2u);
  // theta^2 reduces in the (3.1)-type algebra.
  EXPECT_EQ(full.basis(c).size(), 3u * 2u * 2u);
}

class PairingProperty : public ::testing::TestWithParam<PairingConvention> {};

TEST_P(PairingProperty, RecursionMatchesExplicitExpansion) {
  Pairing pr = standard_pairing(GetParam());
  const HopfStructure& h = pr.algebra();
  Oracle oracle{pr.presentation(), GetParam()};
  std::vector<DualLetter> letters{K, D, N};
  for (const Word& f : pr.basis({2, 2, 2, 2})) {
    TensorElement d2 = h.coproduct(f);
    TensorElement d3 = h.coproduct_on_leg(d2, 0);
    for (const auto& u : letters) {
      for (const auto& v : letters) {
        Scalar expected(0);
        for (const auto& [legs, c] : d2.terms()) {
          Scalar t = c * oracle.base(u, legs[0]) * oracle.base(v, legs[1]);
          if (v.odd() && oracle.odd(legs[0])) t = -t;
          expected += t;
        }
        ASSERT_EQ(pr.pair(DualWord{u, v}, f), expected) << format(DualWord{u, v}) << " on " << pr.presentation().format(Element::word(f));
        for (const auto& w : letters) {
          // <u v w, f> via (Delta (x) id) Delta, sign from moving v past a and w past a b.
          Scalar triple(0);
          for (const auto& [legs, c] : d3.terms()) {
            Scalar t = c * oracle.base(u, legs[0]) * oracle.base(v, legs[1]) * oracle.base(w, legs[2]);
            if (t.is_zero()) continue;
            bool a = oracle.odd(legs[0]), b = oracle.odd(legs[1]);
            int sign = (v.odd() && a) + (w.odd() && (a != b));
            if (sign % 2) t = -t;
            triple += t;
          }
          ASSERT_EQ(pr.pair(DualWord{u, v, w}, f), triple)
              << format(DualWord{u, v, w}) << " on " << pr.presentation().format(Element::word(f));
        }
      }
    }
  }
}

TEST_P(PairingProperty, Bilinearity) {
  Pairing pr = standard_pairing(GetParam());
  auto basis = pr.basis({2, 1, 1, 2});
  std::vector<DualWord> words = canonical_dual_words(2);
  std::mt19937 rng(5);
  std::uniform_int_distribution<std::size_t> pick_b(0, basis.size() - 1), pick_w(0, words.size() - 1);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 30; ++trial) {
    DualElement u = DualElement::word(words[pick_w(rng)], Scalar(coef(rng))) +
                    DualElement::word(words[pick_w(rng)], q * Scalar(coef(rng)));
    Element f = Element::word(basis[pick_b(rng)]);
    Element g = Element::word(basis[pick_b(rng)]);
    Scalar a(coef(rng)), b = s * Scalar(coef(rng));
    EXPECT_EQ(pr.pair(u, a * f + b * g), a * pr.pair(u, f) + b * pr.pair(u, g));
  }
}

TEST_P(PairingProperty, NablaVanishesOnEvenWords) {
  Pairing pr = standard_pairing(GetParam());
  for (const Word& f : pr.basis({3, 3, 3, 2})) {
    if (pr.presentation().parity(f) == Parity::even) EXPECT_EQ(pr.base(D, f), Scalar(0));
  }
}

TEST_P(PairingProperty, DualRelationsRewriteInvariance) {
  Pairing pr = standard_pairing(GetParam());
  // Moving K and N past each other and past nabla inside longer words keeps every value.
  std::vector<std::pair<DualWord, DualWord>> swaps{
      {{K, N, D}, {N, K, D}}, {{D, K, N}, {K, D, N}}, {{N, D, K}, {N, K, D}}, {{K, N, N}, {N, N, K}}};
  for (const Word& f : pr.basis({2, 2, 1, 2})) {
    for (const auto& [a, b] : swaps) EXPECT_EQ(pr.pair(a, f), pr.pair(b, f)) << format(a);
    EXPECT_EQ(pr.pair(DualWord{K, D, D}, f), Scalar(0));
  }
}

INSTANTIATE_TEST_SUITE_P(Conventions, PairingProperty,
                         ::testing::Values(PairingConvention::theta_middle, PairingConvention::theta_left));

TEST(DualRelations, HoldAtFullCutoff) {
  for (auto c : {PairingConvention::theta_middle, PairingConvention::theta_left}) {
    auto r = check_dual_relations(standard_pairing(c), PairingCutoff{});
    EXPECT_EQ(r.status, Status::pass) << r.residual.value_or("");
    EXPECT_EQ(detail(r, "basis_words"), "273");
    EXPECT_EQ(detail(r, "nabla*nabla"), "PASS");
  }
}

TEST(DualRelations, AnticommutatorIsNotAnnihilated) {
  Pairing pr = standard_pairing(PairingConvention::theta_middle);
  Element ty = parse_element("theta * x_-", pr.presentation());
  DualElement anti = DualElement::word({D, N}) + DualElement::word({N, D});
  EXPECT_NE(pr.pair(anti, ty), Scalar(0));
}

TEST(DualHopf, GeneratorPairFitsByHand) {
  // <nabla, theta x^k> = q^-k under theta-middle forces a = -1; <nabla, x^k theta> = 1 forces b = 0.
  Pairing middle = standard_pairing(PairingConvention::theta_middle);
  auto r = check_dual_hopf(middle, PairingCutoff{2, 2, 2, 2});
  EXPECT_EQ(detail(r, "fit:nabla"), "a=-1, b=0");
  EXPECT_EQ(detail(r, "fit:K"), "a=0, b=0");
  EXPECT_EQ(detail(r, "coproduct:K"), "PASS");
  EXPECT_EQ(detail(r, "counit:nabla"), "PASS");
  Pairing left = standard_pairing(PairingConvention::theta_left);
  auto l = check_dual_hopf(left, PairingCutoff{2, 2, 2, 2});
  EXPECT_EQ(detail(l, "fit:nabla"), "a=0, b=1");
  EXPECT_EQ(detail(l, "coproduct_generator_pairs:nabla"), "PASS");
  EXPECT_EQ(detail(l, "S(nabla)_on_theta_x^k"), "agrees");
}

TEST(DualHopf, NablaOnYThetaDefeatsEveryAnsatz) {
  // <nabla, y theta> = <nabla, q^-1 theta y> = q^-1, while u (x) q^{aK} + q^{bK} (x) u gives
  // <nabla, y><q^{aK}, theta> + <q^{bK}, y><nabla, theta> = 0 for all a, b.
  Pairing pr = standard_pairing(PairingConvention::theta_middle);
  const Presentation& p = pr.presentation();
  EXPECT_EQ(pr.pair(DualElement::letter(D), parse_element("x_- * theta", p)), q.inverse());
  for (int a2 = -8; a2 <= 8; ++a2) {
    DualTensor t{{{D}, {DualLetter::group_like(mpq_class(a2, 2))}, Scalar(1)},
                 {{DualLetter::group_like(mpq_class(-a2, 2))}, {D}, Scalar(1)}};
    EXPECT_EQ(pr.pair(t, p.gen("x_-"), p.gen("theta")), Scalar(0));
  }
  auto r = check_dual_hopf(pr, PairingCutoff{1, 1, 1, 2});
  EXPECT_EQ(detail(r, "fit_full:nabla"), "none");
  EXPECT_EQ(r.status, Status::fail);
}

TEST(DualHopf, UnitFinding) {
  auto r = check_dual_hopf(standard_pairing(PairingConvention::theta_left), PairingCutoff{1, 1, 1, 2});
  bool found = false;
  for (const auto& f : r.findings) found = found || f.key == "unit-pairing";
  EXPECT_TRUE(found);
  EXPECT_EQ(detail(r, "<1,x>"), "1");
}

TEST(PairingConvention, GeneratorPairsSingleOutThetaLeftInTheQuotient) {
  auto r = determine_pairing_convention(hopf("P_full"), PairingCutoff{2, 2, 2, 2});
  EXPECT_EQ(detail(r, "valid_on_generator_pairs"), "theta-left");
  EXPECT_EQ(detail(r, "theta-left:fit:N"), "a=-2, b=0");
  EXPECT_EQ(detail(r, "theta-left:antipode_fit:nabla"), "c=-1");
  EXPECT_EQ(detail(r, "theta-left:antipode_fit:N"), "c=2");
  EXPECT_EQ(detail(r, "valid_on_cutoff_space"), "none");
  EXPECT_EQ(r.status, Status::fail);
}

TEST(PairingConvention, ExtendedAlgebraFitsNWithoutGroupLike) {
  // In P_ext y x^k = x^k y + (theta^2 terms), so <N, y x^k> = 1 and a = 0.
  auto r = determine_pairing_convention(hopf("P_ext"), PairingCutoff{2, 2, 2, 2});
  EXPECT_EQ(detail(r, "theta-middle:fit:N"), "a=0, b=0");
  EXPECT_EQ(detail(r, "valid_on_generator_pairs"), "none");
}

TEST(Nondegeneracy, FullRankAtDegreeThree) {
  for (auto c : {PairingConvention::theta_middle, PairingConvention::theta_left}) {
    auto r = nondegeneracy_scan(standard_pairing(c), 3, PairingCutoff{4, 4, 2, 2});
    EXPECT_EQ(r.status, Status::pass) << r.residual.value_or("");
    EXPECT_EQ(detail(r, "dual_words"), "16");
    EXPECT_EQ(detail(r, "rank"), "16");
  }
}

TEST(Nondegeneracy, SingleRow) {
  Pairing pr = standard_pairing(PairingConvention::theta_middle);
  Matrix m{{pr.pair(DualWord{K}, pr.basis_word({1, 0, 0})), pr.pair(DualWord{K}, pr.basis_word({2, 0, 0}))}};
  EXPECT_EQ(rank(m), 1u);
}

TEST(Nondegeneracy, DeficientScanReportsWitness) {
  // Against the single word 1 only the unit survives.
  auto r = nondegeneracy_scan(standard_pairing(PairingConvention::theta_middle), 1, PairingCutoff{0, 0, 0, 0});
  EXPECT_EQ(r.status, Status::fail);
  EXPECT_EQ(detail(r, "rank"), "1");
  EXPECT_NE(r.residual.value_or("").find("pairs to zero"), std::string::npos);
}

TEST(CanonicalWords, Counts) {
  EXPECT_EQ(canonical_dual_words(0).size(), 1u);
  EXPECT_EQ(canonical_dual_words(1).size(), 4u);
  EXPECT_EQ(canonical_dual_words(3).size(), 16u);
  for (const auto& w : canonical_dual_words(3)) {
    int nablas = 0;
    for (const auto& l : w) nablas += l.odd();
    EXPECT_LE(nablas, 1);
  }
}

TEST(DualElement, GroupLikesMerge) {
  DualElement a = DualElement::letter(DualLetter::group_like(1));
  DualElement b = DualElement::letter(DualLetter::group_like(-1));
  EXPECT_EQ(a * b, DualElement(Scalar(1)));
  DualElement c = DualElement::letter(DualLetter::group_like(mpq_class(1, 2)));
  EXPECT_EQ(c * c, a);
  EXPECT_EQ(format(DualWord{DualLetter::group_like(-2), N}), "q^(-2K)*N");
}

TEST(Linalg, RrefAndKernel) {
  Matrix m{{Scalar(1), q, q * q}, {Scalar(2), Scalar(2) * q, Scalar(2) * q * q}, {Scalar(0), Scalar(1), s}};
  Rref r = rref(m);
  EXPECT_EQ(r.rank(), 2u);
  EXPECT_EQ(r.pivots, (std::vector<std::size_t>{0, 1}));
  auto ker = kernel(m, 3);
  ASSERT_EQ(ker.size(), 1u);
  for (const auto& row : m) {
    Scalar dot(0);
    for (std::size_t j = 0; j < 3; ++j) dot += row[j] * ker[0][j];
    EXPECT_TRUE(dot.is_zero());
  }
  EXPECT_EQ(transpose(m)[2][0], q * q);
}

}  // namespace
}  // namespace qsv

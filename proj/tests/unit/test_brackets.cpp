#include <gtest/gtest.h>

#include "../support/oracles.hpp"
#include "pbracket/properties.hpp"
#include "pbracket/qc_bracket.hpp"
#include "pbracket/random.hpp"
#include "pbracket/representations.hpp"

using namespace pbracket;

namespace {

const GroupSignature kSig(1);
const Complex kUnit = kSig.convention().qp_commutator_unit();

Element gen(std::size_t g) { return Element::generator(kSig, g); }
Element S(int sector) { return gen(kSig.s_index(sector)); }
Element X(int sector) { return gen(kSig.x_index(sector, 1)); }
Element Y(int sector) { return gen(kSig.y_index(sector, 1)); }

ClassicalPoly q(int sector) { return ClassicalPoly::q(1, sector, 1); }
ClassicalPoly p(int sector) { return ClassicalPoly::p(1, sector, 1); }
Element mech(const ClassicalPoly& f) { return mechanise_weyl(f, kSig); }

WeylOperator Q() { return WeylOperator::Q(kSig); }
WeylOperator P() { return WeylOperator::P(kSig); }
Coefficient h(int power = 1) { return Coefficient::h1(power); }

HybridObservable weyl(const WeylOperator& w) { return HybridObservable::from_weyl(w); }
HybridObservable cq(const HybridObservable& base = HybridObservable::identity(kSig)) {
  HybridObservable v = HybridObservable::variable(kSig, base.q_index(1));
  return multiply_pointwise(base, v);
}
HybridObservable cp(const HybridObservable& base = HybridObservable::identity(kSig)) {
  HybridObservable v = HybridObservable::variable(kSig, base.p_index(1));
  return multiply_pointwise(base, v);
}

// 4*QP + 2ih with QP in the calibrated order, written out for the default tuple
// (P before Q, [Q,P] = ih): 4PQ + 2ih = 4QP - 2ih.
HybridObservable squares_expected() {
  return weyl(Coefficient(4) * (Q() * P()) + WeylOperator::constant(kSig, Coefficient(Complex(0, -2)) * h()));
}

}  // namespace

// --- quantum-quantum -------------------------------------------------------

TEST(RepQQ, CanonicalCommutator) {
  WeylOperator c = commutator(Q(), P());
  EXPECT_EQ(c, WeylOperator::constant(kSig, Coefficient(kUnit) * h()));
  EXPECT_EQ(kUnit, Complex::i());
}

TEST(RepQQ, SquaresByHand) {
  // P^2 Q^2 = Q^2 P^2 - 4ih QP - 2h^2, so [Q^2, P^2] = 4ih QP + 2h^2.
  WeylOperator c = commutator(Q() * Q(), P() * P());
  WeylOperator expected = Coefficient(Complex(0, 4)) * h() * (Q() * P()) + WeylOperator::constant(kSig, Coefficient(2) * h(2));
  EXPECT_EQ(c, expected);
}

TEST(RepQQ, UniversalBracketOfCanonicalPair) {
  for (int j = 1; j <= 2; ++j) {
    WeylOperator r = rep_qq(universal_bracket(mech(q(j)), mech(p(j))));
    Coefficient expected(1);
    expected += j == 1 ? Coefficient::h1() * Coefficient::h2(-1) : Coefficient::h2() * Coefficient::h1(-1);
    EXPECT_EQ(r, WeylOperator::constant(kSig, expected)) << "j=" << j;
  }
}

TEST(RepQQ, ScalarImages) {
  EXPECT_EQ(rep_qq(Element::one(kSig)), WeylOperator::identity(kSig));
  for (unsigned m = 0; m <= 4; ++m) {
    Element s = Element::one(kSig);
    for (unsigned k = 0; k < m; ++k) s = multiply(s, S(1));
    Coefficient expected = (Coefficient(Complex(kSig.convention().rep_s_sign) * Complex::i()) * h()).pow(m);
    EXPECT_EQ(rep_qq(s), WeylOperator::constant(kSig, expected));
  }
  EXPECT_EQ(rep_qq(X(2)), WeylOperator::Q(kSig, 2));
}

TEST(RepQQ, ZeroPlanckRejected) {
  AObservable k = universal_bracket(mech(q(1)), mech(p(1)));
  EXPECT_THROW(rep_qq(k, 0, 1), ZeroPlanck);
  EXPECT_THROW(rep_qq(k, 1, 0), ZeroPlanck);
  EXPECT_EQ(rep_qq(k, 1, 3), WeylOperator::constant(kSig, Coefficient(Complex(Rational(4, 3)))));
}

TEST(RepQQ, Homomorphism) {
  GroupSignature sig(2);
  RandomSource rng(31);
  for (int k = 0; k < 100; ++k) {
    Element a = random_element(rng, sig, 4, 3);
    Element b = random_element(rng, sig, 4, 3);
    ASSERT_EQ(rep_qq(multiply(a, b)), rep_qq(a) * rep_qq(b));
  }
}

// --- quantum-classical -----------------------------------------------------

TEST(RepQC, SectorMapping) {
  HybridObservable r = rep_qc(mech(q(2).pow(2)));
  EXPECT_EQ(r, cq(cq()));
  EXPECT_FALSE(r.has_quantum_dependence());
  EXPECT_EQ(rep_qc(X(1)), weyl(Q()));
  EXPECT_TRUE(rep_qc(multiply(multiply(S(2), S(2)), X(1))).is_zero());
  EXPECT_EQ(rep_qc(S(2)), HybridObservable::constant(kSig, Coefficient(kSig.convention().s_image_unit()) * Coefficient::h2()));
}

TEST(RepQC, ProductOfClassicalGenerators) {
  // X2 Y2 -> q * p (star) = qp + (i/2) h2
  HybridObservable r = rep_qc(multiply(X(2), Y(2)));
  HybridObservable expected = cp(cq()) + HybridObservable::constant(kSig, Coefficient(Complex(0, Rational(1, 2))) * Coefficient::h2());
  EXPECT_EQ(r, expected);
}

TEST(RepQC, StarCommutatorOfCoordinates) {
  HybridObservable c = multiply_hybrid(cq(), cp()) - multiply_hybrid(cp(), cq());
  EXPECT_EQ(c, HybridObservable::constant(kSig, Coefficient(kUnit) * Coefficient::h2()));
}

TEST(RepQC, HybridProductBasics) {
  HybridObservable a = weyl(Q() * P() + WeylOperator::constant(kSig, h()));
  EXPECT_EQ(multiply_hybrid(HybridObservable::identity(kSig), a), a);
  EXPECT_EQ(multiply_hybrid(weyl(P()), weyl(Q())), weyl(P() * Q()));
  // second-order star terms are truncated
  HybridObservable h2sq = multiply_hybrid(HybridObservable::constant(kSig, Coefficient::h2()),
                                          HybridObservable::constant(kSig, Coefficient::h2()));
  EXPECT_TRUE(h2sq.is_zero());
}

TEST(RepQC, HomomorphismToFirstJetOrder) {
  RandomSource rng(32);
  for (int k = 0; k < 100; ++k) {
    Element a = random_element(rng, kSig, 3, 3);
    Element b = random_element(rng, kSig, 3, 3);
    ASSERT_EQ(rep_qc(multiply(a, b)), multiply_hybrid(rep_qc(a), rep_qc(b)));
  }
}

TEST(RepQC, LocalizedElementsCarryNoClassicalData) {
  RandomSource rng(33);
  for (int k = 0; k < 50; ++k) {
    HybridObservable r = rep_qc(random_element(rng, kSig, 4, 4, SectorMask::kSector1));
    EXPECT_FALSE(r.has_classical_dependence());
    for (const auto& [m, c] : r.terms()) EXPECT_EQ(c.max_h2(), 0);
  }
}

TEST(RepQC, FormalPartsFollowTheirImages) {
  // A1 -> 1/(rep_s_sign i h); a formal A2 with a sector-1 body vanishes.
  AObservable k(Element(kSig), Element::one(kSig), X(1));
  Complex inv = Complex(1) / kSig.convention().s_image_unit();
  EXPECT_EQ(rep_qc(k), HybridObservable::constant(kSig, Coefficient(inv) * h(-1)));
  // the canonical sector-2 pair: plain 1 plus delta'_{s2} A1, image 1 + (ih2)/(ih) -> jet value 1
  HybridObservable r = rep_qc(universal_bracket(mech(q(2)), mech(p(2)))).h2_part(0);
  EXPECT_EQ(r, HybridObservable::identity(kSig));
}

// --- brackets --------------------------------------------------------------

TEST(Poisson, OrderedExamples) {
  EXPECT_EQ(poisson_ordered(cq(), cp()), HybridObservable::identity(kSig));
  EXPECT_EQ(poisson_ordered(cq(cq()), cp(cp())), Coefficient(4) * cp(cq()));
  // operator coefficients keep their order: PO(Qq, Pp) = QP and PO(Pp, Qq) = -PQ
  HybridObservable a = cq(weyl(Q()));
  HybridObservable b = cp(weyl(P()));
  EXPECT_EQ(poisson_ordered(a, b), weyl(Q() * P()));
  EXPECT_EQ(poisson_ordered(b, a), weyl(Coefficient(-1) * (P() * Q())));
  EXPECT_EQ(poisson_ordered(a, b) + poisson_ordered(b, a), weyl(WeylOperator::constant(kSig, Coefficient(kUnit) * h())));
}

TEST(QcBracket, SquaresGiveCommutatorOverIh) {
  HybridObservable k1 = rep_qc(mech(q(1).pow(2)));
  HybridObservable k2 = rep_qc(mech(p(1).pow(2)));
  QcBracketTerms t = qc_bracket_terms(k1, k2);
  EXPECT_EQ(t.total, squares_expected());
  EXPECT_TRUE(t.poisson_term.is_zero());
  EXPECT_TRUE(t.jet_term.is_zero());
  EXPECT_EQ(to_string(t.total), "4*Q1*P1 - 2*i*h");
}

TEST(QcBracket, CanonicalSectorTwoPair) {
  QcBracketTerms t = qc_bracket_terms(rep_qc(mech(q(2))), rep_qc(mech(p(2))));
  EXPECT_TRUE(t.commutator_term.is_zero());
  EXPECT_EQ(t.poisson_term, HybridObservable::identity(kSig));
  EXPECT_TRUE(t.jet_term.is_zero());
  EXPECT_EQ(bracket_via_universal(mech(q(2)), mech(p(2))), HybridObservable::identity(kSig));
}

TEST(QcBracket, SelfBracketVanishes) {
  RandomSource rng(34);
  for (int k = 0; k < 30; ++k) {
    Element e = random_element(rng, kSig, 3);
    EXPECT_TRUE(qc_bracket(rep_qc(e), rep_qc(e)).is_zero());
    EXPECT_TRUE(bracket_via_universal(e, e).is_zero());
  }
}

TEST(QcBracket, UniversalImageOfSquares) {
  EXPECT_EQ(bracket_via_universal(mech(q(1).pow(2)), mech(p(1).pow(2))), squares_expected());
}

TEST(QcBracket, AntisymmetryAndBilinearity) {
  RandomSource rng(35);
  for (int k = 0; k < 200; ++k) {
    HybridObservable a = rep_qc(mech(random_classical(rng, 1, 3)));
    HybridObservable b = rep_qc(mech(random_classical(rng, 1, 3)));
    HybridObservable c = rep_qc(mech(random_classical(rng, 1, 3)));
    Coefficient s(rng.coefficient());
    ASSERT_EQ(qc_bracket(a, b), Coefficient(-1) * qc_bracket(b, a));
    ASSERT_EQ(qc_bracket(s * a + c, b), s * qc_bracket(a, b) + qc_bracket(c, b));
  }
}

TEST(QcBracket, PathEquivalence) {
  PropertyResult r = check_path_equivalence(kSig, 36);
  EXPECT_TRUE(r.passed) << r.counterexample;
  EXPECT_EQ(r.instances, 100);
}

TEST(QcBracket, LocalizedReduction) {
  PropertyResult r = check_localized_reduction(kSig, 37);
  EXPECT_TRUE(r.passed) << r.counterexample;
}

TEST(QcBracket, ClassicalReductionMatchesPoisson) {
  PropertyResult r = check_classical_reduction(kSig, 38);
  EXPECT_TRUE(r.passed) << r.counterexample;
  // one instance spelled out: {q^2 p, p^2} = 2q * 2p = 4qp
  HybridObservable t = qc_bracket(rep_qc(mech(q(2).pow(2) * p(2))), rep_qc(mech(p(2).pow(2))));
  EXPECT_EQ(t, Coefficient(4) * cp(cq(cp())));
}

TEST(QcBracket, Decoupling) {
  PropertyResult r = check_decoupling(kSig, 39);
  EXPECT_TRUE(r.passed) << r.counterexample;
  EXPECT_EQ(r.instances, 200);
}

TEST(QcBracket, ClassicalityGap) {
  HybridObservable gap = classicality_gap(mech(q(1).pow(2)), mech(p(1).pow(2)));
  EXPECT_EQ(gap, HybridObservable::constant(kSig, Coefficient(Complex(0, 2)) * h()));
  EXPECT_FALSE(gap.is_zero());
  EXPECT_TRUE(classicality_gap(mech(q(1)), mech(p(1))).is_zero());
  EXPECT_TRUE(classicality_gap(mech(q(1).pow(2)), mech(p(1))).is_zero());
  EXPECT_THROW(classicality_gap(mech(q(2)), mech(p(1))), NotLocalized);
}

TEST(HEff, Cases) {
  EXPECT_EQ(h_eff(Rational(2, 5), Rational(2, 5)), Rational(1, 5));
  EXPECT_EQ(h_eff(1, 2), Rational(2, 3));
  EXPECT_EQ(Rational(1) / h_eff(Rational(1, 3), Rational(1, 7)), Rational(10));
  EXPECT_THROW(h_eff(1, 0), SingularTransformation);
  EXPECT_THROW(h_eff(0, 5), SingularTransformation);
  EXPECT_THROW(h_eff(1, -1), DivisionByZero);
}

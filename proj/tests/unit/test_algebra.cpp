#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>

#include "../support/oracles.hpp"
#include "pbracket/calibrate.hpp"
#include "pbracket/oracle/checks.hpp"
#include "pbracket/pmech.hpp"
#include "pbracket/random.hpp"

using namespace pbracket;

namespace {

const GroupSignature kSig(1);

Element gen(std::size_t g, int c = 1) { return Element::generator(kSig, g, Coefficient(c)); }
Element S(int sector) { return gen(kSig.s_index(sector)); }
Element X(int sector) { return gen(kSig.x_index(sector, 1)); }
Element Y(int sector) { return gen(kSig.y_index(sector, 1)); }

Element delta(const GroupSignature& sig, std::initializer_list<std::size_t> gens) {
  DeltaIndex alpha(sig.generator_count());
  for (auto g : gens) alpha[g] += 1;
  return delta_to_element(sig, alpha);
}

ClassicalPoly q(int sector, int i = 1) { return ClassicalPoly::q(1, sector, i); }
ClassicalPoly p(int sector, int i = 1) { return ClassicalPoly::p(1, sector, i); }
Element mech(const ClassicalPoly& f) { return mechanise_weyl(f, kSig); }

}  // namespace

// --- scalars ---------------------------------------------------------------

TEST(Scalar, ComplexArithmeticIsExact) {
  Complex a(Rational(1, 3), Rational(-2, 5));
  Complex b(Rational(7, 2), Rational(1, 4));
  EXPECT_EQ((a * b) / b, a);
  EXPECT_EQ(Complex::i() * Complex::i(), Complex(-1));
  EXPECT_THROW(a / Complex(), DivisionByZero);
  EXPECT_EQ(to_string(Complex(Rational(6, 4))), "3/2");
  EXPECT_EQ(to_string(-Complex::i()), "-i");
}

TEST(Scalar, CoefficientLaurentArithmetic) {
  Coefficient h1 = Coefficient::h1();
  Coefficient inv = Coefficient::h1(-1);
  EXPECT_EQ(h1 * inv, Coefficient(1));
  Coefficient c = (Coefficient(1) + Coefficient::h2()) * (Coefficient(1) - Coefficient::h2());
  EXPECT_EQ(c.truncate_h2(1), Coefficient(1));
  EXPECT_EQ(c.h2_component(2), Coefficient(-1));
  EXPECT_EQ(inv.substitute(1, Rational(1, 2)), Coefficient(2));
  EXPECT_THROW(inv.substitute(1, 0), ZeroPlanck);
}

// --- group algebra ---------------------------------------------------------

TEST(GroupAlgebra, MultiplyByUnitIsIdentity) {
  RandomSource rng(11);
  Element b = random_element(rng, kSig, 4);
  EXPECT_EQ(multiply(Element::one(kSig), b), b);
  EXPECT_EQ(multiply(b, Element::one(kSig)), b);
}

TEST(GroupAlgebra, OrderedProductIsUnchanged) {
  Monomial xy(kSig.generator_count());
  xy[kSig.x_index(1, 1)] = 1;
  xy[kSig.y_index(1, 1)] = 1;
  EXPECT_EQ(multiply(X(1), Y(1)), Element::monomial(kSig, xy));
}

TEST(GroupAlgebra, ReversedProductPicksUpCentralTerm) {
  const Coefficient eps(kSig.convention().eps());
  Element expected = multiply(X(1), Y(1)) - eps * S(1);
  Element actual = multiply(Y(1), X(1));
  EXPECT_EQ(actual, expected);
  EXPECT_EQ(actual, testing_support::naive_multiply(Y(1), X(1)));
  EXPECT_TRUE(oracle::actions_agree(actual, expected, 4));
}

TEST(GroupAlgebra, SelfCommutatorVanishes) {
  RandomSource rng(12);
  for (int k = 0; k < 20; ++k) {
    Element a = random_element(rng, kSig, 4);
    EXPECT_TRUE(commutator(a, a).is_zero());
  }
}

TEST(GroupAlgebra, SquaresCommutatorInDeltaNotation) {
  Element c = commutator(delta(kSig, {2, 2}), delta(kSig, {3, 3}));
  Element expected = Coefficient(4) * delta(kSig, {0, 2, 3}) + Coefficient(2) * delta(kSig, {0, 0});
  EXPECT_EQ(c, expected);
  EXPECT_EQ(to_delta_string(c), "4*delta[s1,x1,y1] + 2*delta[s1,s1]");
}

TEST(GroupAlgebra, FirstOrderCommutatorMatchesFieldOracle) {
  // orient*(D(x)D(y) - D(y)D(x)) = orient*eps*kx*ky*S = c*delta'_s with c = orient*eps*kx*ky/ks.
  const auto& t = kSig.convention();
  Complex c = Complex(t.orient) * to_complex(t.eps_comm) * to_complex(t.kappa_x) * to_complex(t.kappa_y) /
              to_complex(t.kappa_s);
  Element dx = delta(kSig, {2});
  Element dy = delta(kSig, {3});
  Element expected = Coefficient(c) * delta(kSig, {0});
  EXPECT_EQ(commutator(dx, dy), expected);
  EXPECT_TRUE(oracle::commutator_matches_fields(dx, dy, expected, 3));
  EXPECT_EQ(c, Complex(1));
}

TEST(GroupAlgebra, DeltaCorrespondence) {
  const Complex kx = to_complex(kSig.convention().kappa_x);
  EXPECT_EQ(delta_to_element(kSig, DeltaIndex(kSig.generator_count())), Element::one(kSig));
  EXPECT_EQ(delta(kSig, {2}), Coefficient(kx) * X(1));
  EXPECT_EQ(delta(kSig, {2, 2}), Coefficient(kx * kx) * multiply(X(1), X(1)));
  // exact inverse on single monomials, for every convention with nontrivial kappas
  ConventionTuple t;
  t.kappa_x = Unit::kPlusI;
  t.kappa_y = Unit::kMinusI;
  t.kappa_s = Unit::kMinusOne;
  GroupSignature sig(2, t);
  DeltaIndex alpha(sig.generator_count());
  alpha[sig.s_index(1)] = 2;
  alpha[sig.x_index(2, 2)] = 1;
  alpha[sig.y_index(1, 2)] = 3;
  auto back = element_to_delta(delta_to_element(sig, alpha));
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].first, alpha);
  EXPECT_EQ(back[0].second, Coefficient(1));
}

TEST(GroupAlgebra, MultiplicationMatchesWordRewriting) {
  GroupSignature sig(2);
  RandomSource rng(13);
  for (int k = 0; k < 100; ++k) {
    Element a = random_element(rng, sig, 4, 3);
    Element b = random_element(rng, sig, 4, 3);
    ASSERT_EQ(multiply(a, b), testing_support::naive_multiply(a, b));
  }
}

TEST(GroupAlgebra, Associativity) {
  RandomSource rng(14);
  for (int k = 0; k < 200; ++k) {
    Element a = random_element(rng, kSig, 4, 3);
    Element b = random_element(rng, kSig, 4, 3);
    Element c = random_element(rng, kSig, 4, 3);
    ASSERT_EQ(multiply(multiply(a, b), c), multiply(a, multiply(b, c)));
  }
}

TEST(GroupAlgebra, NormalFormIdempotence) {
  RandomSource rng(15);
  for (int k = 0; k < 200; ++k) {
    Element a = random_element(rng, kSig, 5, 4);
    std::vector<std::pair<std::vector<std::size_t>, Coefficient>> words;
    for (const auto& [m, c] : a.terms()) words.emplace_back(word_of(m), c);
    ASSERT_EQ(normalize(kSig, words), a);
  }
}

TEST(GroupAlgebra, JacobiIdentity) {
  RandomSource rng(16);
  for (int k = 0; k < 200; ++k) {
    Element a = random_element(rng, kSig, 3, 3);
    Element b = random_element(rng, kSig, 3, 3);
    Element c = random_element(rng, kSig, 3, 3);
    Element j = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) + commutator(c, commutator(a, b));
    ASSERT_TRUE(j.is_zero());
  }
}

TEST(GroupAlgebra, CentralGeneratorsCommuteWithEverything) {
  RandomSource rng(17);
  for (int k = 0; k < 50; ++k) {
    Element a = random_element(rng, kSig, 4);
    Monomial sm(kSig.generator_count());
    sm[0] = static_cast<std::uint32_t>(rng.below(3));
    sm[1] = static_cast<std::uint32_t>(rng.below(3));
    EXPECT_TRUE(commutator(Element::monomial(kSig, sm), a).is_zero());
  }
}

TEST(GroupAlgebra, SectorsCommute) {
  RandomSource rng(18);
  for (int k = 0; k < 50; ++k) {
    Element a = random_element(rng, kSig, 4, 3, SectorMask::kSector1);
    Element b = random_element(rng, kSig, 4, 3, SectorMask::kSector2);
    EXPECT_TRUE(commutator(a, b).is_zero());
  }
}

TEST(GroupAlgebra, ProductAgreesWithFieldComposition) {
  RandomSource rng(19);
  for (int k = 0; k < 100; ++k) {
    Element a = random_element(rng, kSig, 4, 3);
    Element b = random_element(rng, kSig, 4, 3);
    Element ab = multiply(a, b);
    for (int j = 0; j < 5; ++j) {
      auto f = oracle::random_probe(rng, kSig, a.degree() + b.degree() + 2);
      ASSERT_EQ(oracle::vector_field_action(ab, f), oracle::vector_field_action(a, oracle::vector_field_action(b, f)));
    }
  }
}

TEST(GroupAlgebra, SignatureMismatchIsRejected) {
  GroupSignature two(2);
  EXPECT_THROW(multiply(X(1), Element::one(two)), SignatureMismatch);
  EXPECT_THROW(commutator(X(1), Element::one(two)), SignatureMismatch);
  ConventionTuple other;
  other.orient = 1;
  EXPECT_THROW(multiply(X(1), Element::one(GroupSignature(1, other))), SignatureMismatch);
  EXPECT_THROW(GroupSignature(0), InvalidSignature);
}

// --- calibration -----------------------------------------------------------

TEST(Calibration, FindsDeterministicPassingTuple) {
  auto start = std::chrono::steady_clock::now();
  CalibrationReport r = calibrate_conventions();
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_LT(seconds, 5.0);
  EXPECT_EQ(r.examined, 2048u);
  ASSERT_FALSE(r.passing.empty());
  CalibrationReport again = calibrate_conventions();
  EXPECT_EQ(again.chosen, r.chosen);
  EXPECT_EQ(again.passing, r.passing);
  EXPECT_EQ(r.chosen, ConventionTuple{});
}

TEST(Calibration, ChosenTupleReverifies) {
  CalibrationCheck c = check_conventions(calibrate_conventions().chosen);
  EXPECT_TRUE(c.group_commutator);
  EXPECT_TRUE(c.qc_image);
  EXPECT_TRUE(c.quantum_quantum);
  EXPECT_TRUE(c.qc_commutator);
}

TEST(Calibration, PassingTuplesAgreeDownstream) {
  CalibrationReport r = calibrate_conventions();
  EXPECT_EQ(r.passing.size(), 4u);
  EXPECT_TRUE(r.downstream_identical);
  for (const auto& t : r.passing) {
    EXPECT_EQ(t.eps_comm, Unit::kMinusOne);
    EXPECT_EQ(t.orient, -1);
    EXPECT_EQ(t.rep_s_sign, -1);
    EXPECT_EQ(to_complex(t.kappa_x) * to_complex(t.kappa_y), Complex(1));
  }
}

TEST(Calibration, CorruptedTargetDiscriminates) {
  CalibrationTargets corrupted;
  corrupted.imaginary_sign = -1;
  EXPECT_FALSE(check_conventions(ConventionTuple{}, corrupted).all());
  // Flipping the sign of 2ih is the same as swapping the operand order of QP,
  // so the search lands on the mirrored order and nothing else.
  std::vector<ConventionTuple> flipped;
  try {
    flipped = calibrate_conventions(corrupted).passing;
  } catch (const NoConsistentConvention&) {
  }
  CalibrationReport honest = calibrate_conventions();
  EXPECT_NE(flipped, honest.passing);
  for (const auto& t : flipped) {
    ConventionTuple mirrored = t;
    mirrored.qp_order = t.qp_order == ProductOrder::kQP ? ProductOrder::kPQ : ProductOrder::kQP;
    EXPECT_NE(std::find(honest.passing.begin(), honest.passing.end(), mirrored), honest.passing.end());
    EXPECT_EQ(std::find(honest.passing.begin(), honest.passing.end(), t), honest.passing.end());
  }
}

// --- pmech -----------------------------------------------------------------

TEST(Pmech, AntiderivativeStripsOneCentralPower) {
  Element s1sq = Coefficient(2) * multiply(S(1), S(1));
  AObservable r = apply_antiderivative(s1sq, 1);
  EXPECT_EQ(r.plain(), Coefficient(2) * S(1));
  EXPECT_FALSE(r.has_formal_part());

  Element xy = multiply(X(1), Y(1));
  AObservable r2 = apply_antiderivative(xy, 2);
  EXPECT_TRUE(r2.plain().is_zero());
  EXPECT_EQ(r2.a2(), xy);

  AObservable r3 = apply_antiderivative(multiply(S(1), S(2)), 1);
  EXPECT_EQ(r3.plain(), S(2));
}

TEST(Pmech, UniversalBracketOfSquares) {
  AObservable ub = universal_bracket(mech(q(1).pow(2)), mech(p(1).pow(2)));
  Element plain = Coefficient(4) * delta(kSig, {2, 3}) + Coefficient(2) * delta(kSig, {0});
  Element a2 = Coefficient(4) * delta(kSig, {0, 2, 3}) + Coefficient(2) * delta(kSig, {0, 0});
  EXPECT_EQ(ub, AObservable(plain, Element(kSig), a2));
  EXPECT_EQ(to_delta_string(ub), "4*delta[x1,y1] + 2*delta[s1] + (4*delta[s1,x1,y1] + 2*delta[s1,s1])*A2");
}

TEST(Pmech, UniversalBracketBasics) {
  RandomSource rng(21);
  Element k = random_element(rng, kSig, 3);
  EXPECT_TRUE(universal_bracket(k, k).is_zero());
  // [X2, Y2] = orient*eps*S2 = S2: plain 1 from A2, delta'_{s2} A1 retained.
  AObservable ub = universal_bracket(mech(q(2)), mech(p(2)));
  EXPECT_EQ(ub.plain(), Element::one(kSig));
  EXPECT_EQ(ub.a1(), delta(kSig, {1}));
  EXPECT_TRUE(ub.a2().is_zero());
}

TEST(Pmech, WeylMechanisationExamples) {
  const Complex kx = to_complex(kSig.convention().kappa_x);
  const Complex ky = to_complex(kSig.convention().kappa_y);
  EXPECT_EQ(mech(q(1).pow(2)), Coefficient(kx * kx) * multiply(X(1), X(1)));
  EXPECT_EQ(mech(ClassicalPoly::constant(1, Complex(Rational(3, 7)))), Element::constant(kSig, Coefficient(Complex(Rational(3, 7)))));
  Element sym = Coefficient(Complex(Rational(1, 2)) * kx * ky) * (multiply(X(1), Y(1)) + multiply(Y(1), X(1)));
  EXPECT_EQ(mech(q(1) * p(1)), sym);
}

TEST(Pmech, WeylMechanisationMatchesPermutationAverage) {
  for (int sector = 1; sector <= 2; ++sector)
    for (unsigned a = 0; a <= 4; ++a)
      for (unsigned b = 0; a + b <= 5; ++b) {
        ClassicalPoly f = q(sector).pow(a) * p(sector).pow(b);
        ASSERT_EQ(mech(f), testing_support::symmetrize_by_permutation(kSig, sector, 1, a, b)) << a << " " << b;
      }
}

TEST(Pmech, MechanisationFactorsOverDistinctVariables) {
  GroupSignature sig(2);
  RandomSource rng(22);
  for (int k = 0; k < 30; ++k) {
    auto ea = static_cast<unsigned>(rng.below(3));
    auto eb = static_cast<unsigned>(rng.below(3));
    auto ec = static_cast<unsigned>(rng.below(3));
    auto ed = static_cast<unsigned>(rng.below(3));
    ClassicalPoly f1 = ClassicalPoly::q(2, 1, 1).pow(ea) * ClassicalPoly::p(2, 1, 1).pow(eb);
    ClassicalPoly f2 = ClassicalPoly::q(2, 2, 2).pow(ec) * ClassicalPoly::p(2, 1, 2).pow(ed);
    EXPECT_EQ(mechanise_weyl(f1 * f2, sig), multiply(mechanise_weyl(f1, sig), mechanise_weyl(f2, sig)));
  }
}

TEST(Pmech, PluginDispatch) {
  EXPECT_EQ(mechanise_plugin(q(1).pow(2), "weyl", kSig), mech(q(1).pow(2)));
  MechanisationRegistry registry;
  registry.add("identity-q", [](const ClassicalPoly& f, const GroupSignature& sig) { return mechanise_weyl(f, sig); });
  EXPECT_EQ(mechanise_plugin(q(1), "identity-q", kSig, registry),
            Coefficient(to_complex(kSig.convention().kappa_x)) * X(1));
  EXPECT_THROW(mechanise_plugin(p(1), "chi-momentum", kSig), UnknownRule);
}

TEST(Pmech, Decoupling) {
  RandomSource rng(23);
  for (int k = 0; k < 200; ++k) {
    ClassicalPoly h1 = random_classical(rng, 1, 4, 3, SectorMask::kSector1);
    ClassicalPoly h2 = random_classical(rng, 1, 4, 3, SectorMask::kSector2);
    ClassicalPoly b = random_classical(rng, 1, 4, 3, SectorMask::kSector2);
    ASSERT_EQ(universal_bracket(mech(b), mech(h1 + h2)), universal_bracket(mech(b), mech(h2)));
    ASSERT_TRUE(commutator(mech(b), mech(h1)).is_zero());
  }
}

TEST(Pmech, Reconstruction) {
  RandomSource rng(24);
  for (int k = 0; k < 100; ++k) {
    Element e = random_element(rng, kSig, 4, 4);
    for (int sector = 1; sector <= 2; ++sector) {
      AObservable r = apply_antiderivative(e, sector);
      ASSERT_EQ(multiply(S(sector), r.plain()) + r.formal(sector), e);
    }
  }
}

TEST(Pmech, UniversalBracketBilinearAntisymmetric) {
  RandomSource rng(25);
  for (int k = 0; k < 50; ++k) {
    Element a = random_element(rng, kSig, 3);
    Element b = random_element(rng, kSig, 3);
    Element c = random_element(rng, kSig, 3);
    Coefficient s(rng.coefficient());
    EXPECT_EQ(universal_bracket(a, b), Coefficient(-1) * universal_bracket(b, a));
    EXPECT_EQ(universal_bracket(s * a + c, b), s * universal_bracket(a, b) + universal_bracket(c, b));
  }
}

TEST(Pmech, NestedBracketsAreRejected) {
  AObservable ub = universal_bracket(mech(q(1).pow(2)), mech(p(1).pow(2)));
  EXPECT_THROW(multiply(ub, ub), NonlinearAntiderivative);
  AObservable plain(mech(q(1)), Element(kSig), Element(kSig));
  EXPECT_NO_THROW(multiply(plain, ub));
}

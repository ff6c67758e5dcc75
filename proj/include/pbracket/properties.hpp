#pragma once

#include <cstdint>
#include <string>

#include "pbracket/pmech.hpp"
#include "pbracket/qc_bracket.hpp"
#include "pbracket/random.hpp"
#include "pbracket/representations.hpp"

namespace pbracket {

/// Outcome of a seeded randomized property check.
struct PropertyResult {
  bool passed = true;
  int instances = 0;
  std::string counterexample;  ///< first failing instance, verbatim
};

/// Uncoupled H = H1 + H2 (sector 1 / sector 2) and a sector-2 observable B.
inline PropertyResult check_decoupling(const GroupSignature& sig, std::uint64_t seed, int count = 200,
                                       std::uint32_t max_degree = 4) {
  PropertyResult r;
  RandomSource rng(seed);
  for (int k = 0; k < count; ++k) {
    ClassicalPoly h1 = random_classical(rng, sig.dof(), max_degree, 3, SectorMask::kSector1);
    ClassicalPoly h2 = random_classical(rng, sig.dof(), max_degree, 3, SectorMask::kSector2);
    ClassicalPoly b = random_classical(rng, sig.dof(), max_degree, 3, SectorMask::kSector2);
    const Element mb = mechanise_weyl(b, sig);
    const Element mh1 = mechanise_weyl(h1, sig);
    const Element mh2 = mechanise_weyl(h2, sig);
    const Element mh = mechanise_weyl(h1 + h2, sig);
    bool ok = universal_bracket(mb, mh) == universal_bracket(mb, mh2) && commutator(mb, mh1).is_zero() &&
              qc_bracket(rep_qc(mb), rep_qc(mh)) == qc_bracket(rep_qc(mb), rep_qc(mh2));
    ++r.instances;
    if (!ok) {
      r.passed = false;
      r.counterexample = "B = " + to_string(b) + ", H1 = " + to_string(h1) + ", H2 = " + to_string(h2);
      break;
    }
  }
  return r;
}

/// bracket_via_universal against qc_bracket of the images, on mechanised random pairs.
inline PropertyResult check_path_equivalence(const GroupSignature& sig, std::uint64_t seed, int count = 100,
                                             std::uint32_t max_degree = 3) {
  PropertyResult r;
  RandomSource rng(seed);
  for (int k = 0; k < count; ++k) {
    ClassicalPoly f = random_classical(rng, sig.dof(), max_degree);
    ClassicalPoly g = random_classical(rng, sig.dof(), max_degree);
    const Element k1 = mechanise_weyl(f, sig);
    const Element k2 = mechanise_weyl(g, sig);
    HybridObservable via = bracket_via_universal(k1, k2);
    HybridObservable direct = qc_bracket(rep_qc(k1), rep_qc(k2));
    ++r.instances;
    if (!(via == direct)) {
      r.passed = false;
      r.counterexample = "f = " + to_string(f) + ", g = " + to_string(g) + ": universal image " + to_string(via) +
                         ", qc bracket " + to_string(direct);
      break;
    }
  }
  return r;
}

/// Sector-1 pairs: Poisson and jet terms vanish and the bracket is (1/(ih)) times the commutator.
inline PropertyResult check_localized_reduction(const GroupSignature& sig, std::uint64_t seed, int count = 50,
                                                std::uint32_t max_degree = 3) {
  PropertyResult r;
  RandomSource rng(seed);
  const Coefficient inv_ih(-Complex::i(), HbarPowers{-1, 0});
  for (int k = 0; k < count; ++k) {
    ClassicalPoly f = random_classical(rng, sig.dof(), max_degree, 3, SectorMask::kSector1);
    ClassicalPoly g = random_classical(rng, sig.dof(), max_degree, 3, SectorMask::kSector1);
    HybridObservable a = rep_qc(mechanise_weyl(f, sig));
    HybridObservable b = rep_qc(mechanise_weyl(g, sig));
    QcBracketTerms t = qc_bracket_terms(a, b);
    bool ok = t.poisson_term.is_zero() && t.jet_term.is_zero() && t.total == inv_ih * commutator(a, b);
    ++r.instances;
    if (!ok) {
      r.passed = false;
      r.counterexample = "f = " + to_string(f) + ", g = " + to_string(g);
      break;
    }
  }
  return r;
}

/// Classical image of a sector-2 polynomial: q_{2,i} -> q_i, p_{2,i} -> p_i.
inline HybridObservable classical_image(const ClassicalPoly& f, const GroupSignature& sig) {
  HybridObservable out(sig);
  for (const auto& [m, c] : f.terms()) {
    Monomial h(out.variable_count());
    for (int i = 1; i <= sig.dof(); ++i) {
      h[out.q_index(i)] = m[ClassicalPoly::q_index(sig.dof(), 2, i)];
      h[out.p_index(i)] = m[ClassicalPoly::p_index(sig.dof(), 2, i)];
    }
    out.add_term(h, Coefficient(c));
  }
  return out;
}

/// Sector-2 pairs: the commutator term vanishes and the bracket is the Poisson bracket.
inline PropertyResult check_classical_reduction(const GroupSignature& sig, std::uint64_t seed, int count = 50,
                                                std::uint32_t max_degree = 3) {
  PropertyResult r;
  RandomSource rng(seed);
  for (int k = 0; k < count; ++k) {
    ClassicalPoly f = random_classical(rng, sig.dof(), max_degree, 3, SectorMask::kSector2);
    ClassicalPoly g = random_classical(rng, sig.dof(), max_degree, 3, SectorMask::kSector2);
    QcBracketTerms t = qc_bracket_terms(rep_qc(mechanise_weyl(f, sig)), rep_qc(mechanise_weyl(g, sig)));
    bool ok = t.commutator_term.is_zero() && t.total == classical_image(poisson(f, g), sig);
    ++r.instances;
    if (!ok) {
      r.passed = false;
      r.counterexample = "f = " + to_string(f) + ", g = " + to_string(g);
      break;
    }
  }
  return r;
}

}  // namespace pbracket

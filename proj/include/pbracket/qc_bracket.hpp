#pragma once

#include "pbracket/classical.hpp"
#include "pbracket/element.hpp"
#include "pbracket/errors.hpp"
#include "pbracket/hybrid.hpp"
#include "pbracket/pmech.hpp"
#include "pbracket/representations.hpp"

namespace pbracket {

/// sum_i dq_i K1 * dp_i K2 - dp_i K1 * dq_i K2, operator parts multiplied in the written order.
inline HybridObservable poisson_ordered(const HybridObservable& k1, const HybridObservable& k2) {
  k1.check(k2);
  HybridObservable out(k1.signature());
  for (int i = 1; i <= k1.signature().dof(); ++i) {
    auto q = k1.q_index(i);
    auto p = k1.p_index(i);
    out += multiply_pointwise(k1.derivative(q), k2.derivative(p));
    out -= multiply_pointwise(k1.derivative(p), k2.derivative(q));
  }
  return out;
}

/// The three terms of the quantum-classical bracket, each already at h2 = 0.
struct QcBracketTerms {
  HybridObservable commutator_term;  ///< (1/(i h)) [K1, K2] at h2 = 0
  HybridObservable poisson_term;     ///< (1/2)({K1, K2} - {K2, K1}) at h2 = 0
  HybridObservable jet_term;         ///< -i d/dh2 [K1, K2] at h2 = 0
  HybridObservable total;
};

/// Evaluates the quantum-classical bracket term by term.
///
/// The jet term differentiates the pointwise commutator (classical factors
/// commute); the first-order Poisson correction carried by the star product is
/// exactly the symmetrized Poisson term and is not counted twice.
inline QcBracketTerms qc_bracket_terms(const HybridObservable& k1, const HybridObservable& k2) {
  k1.check(k2);
  const Coefficient inv_ih(-Complex::i(), HbarPowers{-1, 0});
  QcBracketTerms t;
  t.commutator_term = inv_ih * commutator(k1, k2).h2_part(0);
  HybridObservable k1_0 = k1.h2_part(0);
  HybridObservable k2_0 = k2.h2_part(0);
  t.poisson_term = Coefficient(Complex(Rational(1, 2))) * (poisson_ordered(k1_0, k2_0) - poisson_ordered(k2_0, k1_0));
  HybridObservable pointwise = multiply_pointwise(k1, k2) - multiply_pointwise(k2, k1);
  t.jet_term = Coefficient(-Complex::i()) * pointwise.h2_part(1);
  t.total = t.commutator_term + t.poisson_term + t.jet_term;
  return t;
}

inline HybridObservable qc_bracket(const HybridObservable& k1, const HybridObservable& k2) {
  return qc_bracket_terms(k1, k2).total;
}

/// Quantum-classical image of the universal bracket, at h2 = 0.
inline HybridObservable bracket_via_universal(const Element& k1, const Element& k2) {
  return rep_qc(universal_bracket(k1, k2)).h2_part(0);
}

/// Sector-1 Weyl monomial Q^a P^b (per degree of freedom) in the calibrated product order.
inline WeylOperator ordered_product(const GroupSignature& sig, const Monomial& qp_exponents) {
  WeylOperator out = WeylOperator::identity(sig);
  const bool pq = sig.convention().qp_order == ProductOrder::kPQ;
  for (int i = 1; i <= sig.dof(); ++i) {
    WeylOperator qs = WeylOperator::identity(sig);
    WeylOperator ps = WeylOperator::identity(sig);
    for (std::uint32_t k = 0; k < qp_exponents[2 * (i - 1)]; ++k) qs = qs * WeylOperator::Q(sig, 1, i);
    for (std::uint32_t k = 0; k < qp_exponents[2 * (i - 1) + 1]; ++k) ps = ps * WeylOperator::P(sig, 1, i);
    out = out * (pq ? ps * qs : qs * ps);
  }
  return out;
}

/// Classical polynomial whose Weyl mechanisation has the given S-free leading part:
/// X_{1,i} -> q_{1,i}/kappa_x, Y_{1,i} -> p_{1,i}/kappa_y, S-carrying terms dropped.
inline ClassicalPoly principal_symbol(const Element& k) {
  const auto& sig = k.signature();
  const Complex kx = to_complex(sig.convention().kappa_x);
  const Complex ky = to_complex(sig.convention().kappa_y);
  ClassicalPoly out(sig.dof());
  for (const auto& [m, c] : k.terms()) {
    if (m[0] != 0 || m[1] != 0) continue;
    if (!c.is_constant()) throw Error("principal symbol needs h-free coefficients");
    Monomial cm(out.variable_count());
    Complex scale = c.constant_term();
    for (int sector = 1; sector <= 2; ++sector) {
      for (int i = 1; i <= sig.dof(); ++i) {
        std::uint32_t a = m[sig.x_index(sector, i)];
        std::uint32_t b = m[sig.y_index(sector, i)];
        cm[ClassicalPoly::q_index(sig.dof(), sector, i)] = a;
        cm[ClassicalPoly::p_index(sig.dof(), sector, i)] = b;
        scale /= kx.pow(a) * ky.pow(b);
      }
    }
    out.add_term(cm, scale);
  }
  return out;
}

/// Operator surrogate of a sector-1 classical polynomial: each monomial becomes
/// the calibrated-order Weyl product (with the kappa factors of the mechanisation).
inline WeylOperator ordered_surrogate(const ClassicalPoly& f, const GroupSignature& sig) {
  const Complex kx = to_complex(sig.convention().kappa_x);
  const Complex ky = to_complex(sig.convention().kappa_y);
  WeylOperator out(sig);
  for (const auto& [m, c] : f.terms()) {
    Monomial qp(2 * static_cast<std::size_t>(sig.dof()));
    Complex scale = c;
    for (int i = 1; i <= sig.dof(); ++i) {
      std::uint32_t a = m[ClassicalPoly::q_index(sig.dof(), 1, i)];
      std::uint32_t b = m[ClassicalPoly::p_index(sig.dof(), 1, i)];
      qp[2 * (i - 1)] = a;
      qp[2 * (i - 1) + 1] = b;
      scale *= kx.pow(a) * ky.pow(b);
    }
    out += Coefficient(scale) * ordered_product(sig, qp);
  }
  return out;
}

/// bracket_via_universal(k1, k2) minus the ordered-operator surrogate of the
/// classical Poisson bracket of the principal symbols. Both inputs must be
/// localized in sector 1.
inline HybridObservable classicality_gap(const Element& k1, const Element& k2) {
  if (!k1.localized_in(1) || !k2.localized_in(1)) throw NotLocalized();
  const auto& sig = k1.signature();
  WeylOperator bracket = bracket_via_universal(k1, k2).to_weyl();
  ClassicalPoly pb = poisson(principal_symbol(k1), principal_symbol(k2));
  return HybridObservable::from_weyl(bracket - ordered_surrogate(pb, sig));
}

/// h_eff = h1 h2 / (h1 + h2), i.e. 1/h_eff = 1/h1 + 1/h2.
inline Rational h_eff(const Rational& h1, const Rational& h2) {
  if (h1 * h2 == 0) throw SingularTransformation();
  if (h1 + h2 == 0) throw DivisionByZero("h_eff undefined for h1 + h2 = 0");
  return h1 * h2 / (h1 + h2);
}

}  // namespace pbracket

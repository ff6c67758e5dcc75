#pragma once

#include "pbracket/element.hpp"
#include "pbracket/errors.hpp"
#include "pbracket/hybrid.hpp"
#include "pbracket/pmech.hpp"
#include "pbracket/weyl.hpp"

namespace pbracket {

/// Image of S_s: rep_s_sign * i * h_s.
inline Coefficient s_image(const GroupSignature& sig, int sector) {
  return Coefficient(sig.convention().s_image_unit()) * (sector == 1 ? Coefficient::h1() : Coefficient::h2());
}

/// Image of the antiderivative A_s: 1 / (rep_s_sign * i * h_s).
inline Coefficient antiderivative_image(const GroupSignature& sig, int sector) {
  Complex inv = Complex(1) / sig.convention().s_image_unit();
  return Coefficient(inv, sector == 1 ? HbarPowers{-1, 0} : HbarPowers{0, -1});
}

/// Quantum-quantum representation: X_{s,i} -> Q_{s,i}, Y_{s,i} -> P_{s,i}, S_s -> rep_s_sign*i*h_s.
/// PBW monomials map to normal-ordered Weyl monomials directly.
inline WeylOperator rep_qq(const Element& e) {
  const auto& sig = e.signature();
  WeylOperator out(sig);
  for (const auto& [m, c] : e.terms()) {
    Coefficient scalar = c * s_image(sig, 1).pow(m[0]) * s_image(sig, 2).pow(m[1]);
    Monomial w(out.variable_count());
    for (std::size_t v = 0; v < w.size(); ++v) w[v] = m[v + 2];
    out.add_term(w, scalar);
  }
  return out;
}

/// Quantum-quantum image of an A-observable with symbolic h1, h2; A_s -> 1/(rep_s_sign*i*h_s).
inline WeylOperator rep_qq(const AObservable& k) {
  const auto& sig = k.signature();
  return rep_qq(k.plain()) + antiderivative_image(sig, 1) * rep_qq(k.a1()) +
         antiderivative_image(sig, 2) * rep_qq(k.a2());
}

/// Quantum-quantum image at rational Planck parameters.
inline WeylOperator rep_qq(const AObservable& k, const Rational& h1, const Rational& h2) {
  if (h1 == 0 || h2 == 0) throw ZeroPlanck();
  return rep_qq(k).substitute(1, h1).substitute(2, h2);
}

namespace detail {

/// q^a * p^b under the first-order star product: q^a p^b + (c2/2) a b q^(a-1) p^(b-1).
inline HybridObservable classical_pbw_image(const GroupSignature& sig, int i, std::uint32_t a, std::uint32_t b) {
  HybridObservable h(sig);
  Monomial m(h.variable_count());
  m[h.q_index(i)] = a;
  m[h.p_index(i)] = b;
  h.add_term(m, Coefficient(1));
  if (a > 0 && b > 0) {
    m[h.q_index(i)] = a - 1;
    m[h.p_index(i)] = b - 1;
    Complex half_unit = sig.convention().qp_commutator_unit() * Complex(Rational(a * b, 2));
    h.add_term(m, Coefficient(half_unit) * Coefficient::h2());
  }
  return h;
}

}  // namespace detail

/// Quantum-classical representation of an element: sector 1 goes to Weyl
/// operators at h, sector 2 to classical functions on the first jet in h2.
///
/// Sector-2 monomials are composed with the jet star product, so the map is a
/// homomorphism modulo h2^2.
inline HybridObservable rep_qc(const Element& e) {
  const auto& sig = e.signature();
  HybridObservable out(sig);
  for (const auto& [m, c] : e.terms()) {
    if (m[1] >= 2) continue;
    Coefficient scalar = c * s_image(sig, 1).pow(m[0]) * s_image(sig, 2).pow(m[1]);
    HybridObservable term(sig);
    Monomial quantum(term.variable_count());
    for (int i = 1; i <= sig.dof(); ++i) {
      quantum[term.Q_index(i)] = m[sig.x_index(1, i)];
      quantum[term.P_index(i)] = m[sig.y_index(1, i)];
    }
    term.add_term(quantum, scalar);
    for (int i = 1; i <= sig.dof(); ++i) {
      std::uint32_t a = m[sig.x_index(2, i)];
      std::uint32_t b = m[sig.y_index(2, i)];
      if (a + b == 0) continue;
      term = multiply_hybrid(term, detail::classical_pbw_image(sig, i, a, b));
    }
    out += term;
  }
  return out;
}

/// Quantum-classical image of an A-observable.
///
/// A1 -> 1/(rep_s_sign*i*h). A2 -> 1/(rep_s_sign*i*h2) keeping only the finite
/// part at the jet point: the h2^0 term of the image is singular and dropped,
/// the h2^1 term becomes the h2-free value. A purely sector-1 A2 part therefore
/// maps to zero.
inline HybridObservable rep_qc(const AObservable& k) {
  const auto& sig = k.signature();
  HybridObservable out = rep_qc(k.plain());
  out += antiderivative_image(sig, 1) * rep_qc(k.a1());
  Complex inv = Complex(1) / sig.convention().s_image_unit();
  out += Coefficient(inv) * rep_qc(k.a2()).h2_part(1);
  return out;
}

}  // namespace pbracket

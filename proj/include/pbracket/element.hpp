#pragma once

#include <algorithm>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pbracket/errors.hpp"
#include "pbracket/format.hpp"
#include "pbracket/monomial.hpp"
#include "pbracket/scalar.hpp"
#include "pbracket/signature.hpp"

namespace pbracket {

/// A distribution supported at the identity of D^n, stored as an exact
/// combination of PBW-ordered monomials in the generators.
///
/// Terms with zero coefficient are never stored, so two elements are equal
/// exactly when their term maps are equal.
class Element {
 public:
  using TermMap = std::map<Monomial, Coefficient, GradedOrder>;

  Element() = default;
  explicit Element(GroupSignature sig) : sig_(std::move(sig)) {}

  static Element constant(const GroupSignature& sig, const Coefficient& c) {
    Element e(sig);
    e.add_term(Monomial(sig.generator_count()), c);
    return e;
  }
  static Element one(const GroupSignature& sig) { return constant(sig, Coefficient(1)); }

  static Element generator(const GroupSignature& sig, std::size_t g, const Coefficient& c = Coefficient(1)) {
    Monomial m(sig.generator_count());
    m[g] = 1;
    Element e(sig);
    e.add_term(m, c);
    return e;
  }

  /// The monomial taken as already PBW-ordered.
  static Element monomial(const GroupSignature& sig, const Monomial& m, const Coefficient& c = Coefficient(1)) {
    if (m.size() != sig.generator_count()) throw SignatureMismatch();
    Element e(sig);
    e.add_term(m, c);
    return e;
  }

  const GroupSignature& signature() const { return sig_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  std::uint32_t degree() const {
    std::uint32_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }

  void add_term(const Monomial& m, const Coefficient& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// True if every monomial avoids all generators of the other sector.
  bool localized_in(int sector) const {
    int other = 3 - sector;
    for (const auto& [m, c] : terms_)
      for (std::size_t g = 0; g < m.size(); ++g)
        if (m[g] != 0 && sig_.sector_of(g) == other) return false;
    return true;
  }

  Element& operator+=(const Element& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Element& operator-=(const Element& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator-(const Element& a) {
    Element out(a.sig_);
    for (const auto& [m, c] : a.terms_) out.terms_.emplace(m, -c);
    return out;
  }
  friend Element operator*(const Coefficient& s, const Element& a) {
    Element out(a.sig_);
    for (const auto& [m, c] : a.terms_) out.add_term(m, s * c);
    return out;
  }
  friend bool operator==(const Element& a, const Element& b) { return a.sig_ == b.sig_ && a.terms_ == b.terms_; }

  void check(const Element& o) const {
    if (!(sig_ == o.sig_)) throw SignatureMismatch();
  }

 private:
  GroupSignature sig_;
  TermMap terms_;
};

namespace detail {

struct WeightedMonomial {
  Monomial mono;
  Complex weight;
};

/// Accumulates c * (a b) in PBW normal form into `out`.
///
/// Generators of distinct degrees of freedom commute, so the product factors
/// into independent Y^b X^c reorderings with [X,Y] = eps * S.
inline void multiply_pbw(const GroupSignature& sig, const Monomial& a, const Monomial& b, const Coefficient& c,
                         Element& out) {
  std::vector<WeightedMonomial> partial{{Monomial(sig.generator_count()), Complex(1)}};
  partial[0].mono[0] = a[0] + b[0];
  partial[0].mono[1] = a[1] + b[1];
  const Complex minus_eps = -sig.convention().eps();
  for (int sector = 1; sector <= 2; ++sector) {
    const std::size_t gs = sig.s_index(sector);
    for (int i = 1; i <= sig.dof(); ++i) {
      const std::size_t gx = sig.x_index(sector, i);
      const std::size_t gy = sig.y_index(sector, i);
      const std::uint32_t kmax = std::min(a[gy], b[gx]);
      if (kmax == 0) {
        for (auto& p : partial) {
          p.mono[gx] = a[gx] + b[gx];
          p.mono[gy] = a[gy] + b[gy];
        }
        continue;
      }
      std::vector<WeightedMonomial> next;
      next.reserve(partial.size() * (kmax + 1));
      for (const auto& p : partial) {
        for (std::uint32_t k = 0; k <= kmax; ++k) {
          WeightedMonomial q = p;
          q.mono[gx] = a[gx] + b[gx] - k;
          q.mono[gy] = a[gy] + b[gy] - k;
          q.mono[gs] += k;
          q.weight *= Complex(Rational(reorder_weight(a[gy], b[gx], k))) * minus_eps.pow(k);
          next.push_back(std::move(q));
        }
      }
      partial = std::move(next);
    }
  }
  for (const auto& p : partial) out.add_term(p.mono, c * Coefficient(p.weight));
}

}  // namespace detail

/// Convolution product of identity-supported distributions, in PBW normal form.
inline Element multiply(const Element& a, const Element& b) {
  a.check(b);
  Element out(a.signature());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) detail::multiply_pbw(a.signature(), ma, mb, ca * cb, out);
  return out;
}

inline Element operator*(const Element& a, const Element& b) { return multiply(a, b); }

/// orient * (a*b - b*a).
inline Element commutator(const Element& a, const Element& b) {
  Element c = multiply(a, b) - multiply(b, a);
  return Coefficient(a.signature().convention().orient) * c;
}

/// Normal form of c * g_1 g_2 ... g_k for an arbitrary generator word.
inline Element from_word(const GroupSignature& sig, std::span<const std::size_t> word,
                         const Coefficient& c = Coefficient(1)) {
  Element out = Element::constant(sig, c);
  for (std::size_t g : word) out = multiply(out, Element::generator(sig, g));
  return out;
}

/// Rewrites an element given as a list of (word, coefficient) pairs into normal form.
inline Element normalize(const GroupSignature& sig,
                         const std::vector<std::pair<std::vector<std::size_t>, Coefficient>>& words) {
  Element out(sig);
  for (const auto& [w, c] : words) out += from_word(sig, w, c);
  return out;
}

/// The PBW word of a monomial, generators in index order.
inline std::vector<std::size_t> word_of(const Monomial& m) {
  std::vector<std::size_t> w;
  for (std::size_t g = 0; g < m.size(); ++g)
    for (std::uint32_t e = 0; e < m[g]; ++e) w.push_back(g);
  return w;
}

/// Multi-index of a delta-derivative, indexed like the generators (s1, s2, x11, y11, ...).
using DeltaIndex = Monomial;

inline Complex kappa_for(const GroupSignature& sig, std::size_t g) {
  const auto& t = sig.convention();
  if (sig.is_central(g)) return to_complex(t.kappa_s);
  return to_complex(sig.is_x(g) ? t.kappa_x : t.kappa_y);
}

inline Complex kappa_product(const GroupSignature& sig, const DeltaIndex& alpha) {
  Complex k(1);
  for (std::size_t g = 0; g < alpha.size(); ++g) k *= kappa_for(sig, g).pow(alpha[g]);
  return k;
}

/// delta^(alpha)(g1;g2) as (product of kappa factors) times the PBW monomial.
inline Element delta_to_element(const GroupSignature& sig, const DeltaIndex& alpha) {
  return Element::monomial(sig, alpha, Coefficient(kappa_product(sig, alpha)));
}

/// Inverse of delta_to_element term by term: each monomial becomes c * delta^(alpha).
inline std::vector<std::pair<DeltaIndex, Coefficient>> element_to_delta(const Element& e) {
  std::vector<std::pair<DeltaIndex, Coefficient>> out;
  for (const auto& [m, c] : e.terms())
    out.emplace_back(m, c * Coefficient(Complex(1) / kappa_product(e.signature(), m)));
  return out;
}

inline std::string delta_string(const GroupSignature& sig, const DeltaIndex& alpha) {
  if (alpha.degree() == 0) return "";
  std::string s = "delta[";
  bool first = true;
  for (std::size_t g = 0; g < alpha.size(); ++g) {
    for (std::uint32_t e = 0; e < alpha[g]; ++e) {
      if (!first) s += ",";
      s += sig.delta_variable_name(g);
      first = false;
    }
  }
  return s + "]";
}

/// Human-readable delta notation, e.g. "4*delta[s1,x1,y1] + 2*delta[s1,s1]".
inline std::string to_delta_string(const Element& e) {
  std::vector<std::pair<Coefficient, std::string>> parts;
  auto terms = element_to_delta(e);
  // Highest degree first reads like the usual written form.
  std::reverse(terms.begin(), terms.end());
  for (const auto& [alpha, c] : terms) parts.emplace_back(c, delta_string(e.signature(), alpha));
  return detail::format_sum(parts);
}

/// Generator notation, e.g. "4*S1*X_1_1*Y_1_1 + 2*S1^2".
inline std::string to_generator_string(const Element& e) {
  std::vector<std::pair<Coefficient, std::string>> parts;
  for (auto it = e.terms().rbegin(); it != e.terms().rend(); ++it) {
    std::string mono;
    for (std::size_t g = 0; g < it->first.size(); ++g) {
      if (it->first[g] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += e.signature().generator_name(g);
      if (it->first[g] > 1) mono += "^" + std::to_string(it->first[g]);
    }
    parts.emplace_back(it->second, mono);
  }
  return detail::format_sum(parts);
}

}  // namespace pbracket

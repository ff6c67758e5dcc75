#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pbracket/errors.hpp"
#include "pbracket/format.hpp"
#include "pbracket/monomial.hpp"
#include "pbracket/scalar.hpp"
#include "pbracket/signature.hpp"
#include "pbracket/weyl.hpp"

namespace pbracket {

/// Quantum-classical observable: sum of (sector-1 Weyl monomial) x (classical
/// monomial in sector-2 q_i, p_i) with coefficients Laurent in h (stored as h1)
/// and polynomial of degree <= 1 in the jet variable h2.
///
/// Monomial layout: [Q_1, P_1, ..., Q_n, P_n | q_1, p_1, ..., q_n, p_n].
class HybridObservable {
 public:
  using TermMap = std::map<Monomial, Coefficient, GradedOrder>;

  HybridObservable() = default;
  explicit HybridObservable(GroupSignature sig) : sig_(std::move(sig)) {}

  std::size_t half() const { return 2 * static_cast<std::size_t>(sig_.dof()); }
  std::size_t variable_count() const { return 2 * half(); }
  std::size_t Q_index(int i) const { return 2 * static_cast<std::size_t>(i - 1); }
  std::size_t P_index(int i) const { return Q_index(i) + 1; }
  std::size_t q_index(int i) const { return half() + 2 * static_cast<std::size_t>(i - 1); }
  std::size_t p_index(int i) const { return q_index(i) + 1; }

  static HybridObservable constant(const GroupSignature& sig, const Coefficient& c) {
    HybridObservable h(sig);
    h.add_term(Monomial(h.variable_count()), c);
    return h;
  }
  static HybridObservable identity(const GroupSignature& sig) { return constant(sig, Coefficient(1)); }
  static HybridObservable variable(const GroupSignature& sig, std::size_t v, const Coefficient& c = Coefficient(1)) {
    HybridObservable h(sig);
    Monomial m(h.variable_count());
    m[v] = 1;
    h.add_term(m, c);
    return h;
  }

  const GroupSignature& signature() const { return sig_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Monomial& m, const Coefficient& c) {
    Coefficient t = c.truncate_h2(1);
    if (t.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, t);
    if (!inserted) {
      it->second += t;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  int h2_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, c.max_h2());
    return d;
  }

  /// The coefficient of h2^k, as an h2-free observable.
  HybridObservable h2_part(int k) const {
    HybridObservable out(sig_);
    for (const auto& [m, c] : terms_) out.add_term(m, c.h2_component(k));
    return out;
  }

  bool has_classical_dependence() const {
    for (const auto& [m, c] : terms_)
      for (std::size_t v = half(); v < variable_count(); ++v)
        if (m[v] != 0) return true;
    return false;
  }
  bool has_quantum_dependence() const {
    for (const auto& [m, c] : terms_)
      for (std::size_t v = 0; v < half(); ++v)
        if (m[v] != 0) return true;
    return false;
  }

  HybridObservable derivative(std::size_t v) const {
    HybridObservable out(sig_);
    for (const auto& [m, c] : terms_) {
      if (m[v] == 0) continue;
      Monomial d = m;
      d[v] -= 1;
      out.add_term(d, c * Coefficient(Complex(Rational(m[v]))));
    }
    return out;
  }

  /// Replaces h (the quantum Planck parameter) by a rational value.
  HybridObservable substitute_hbar(const Rational& v) const {
    HybridObservable out(sig_);
    for (const auto& [m, c] : terms_) out.add_term(m, c.substitute(1, v));
    return out;
  }

  HybridObservable& operator+=(const HybridObservable& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  HybridObservable& operator-=(const HybridObservable& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend HybridObservable operator+(HybridObservable a, const HybridObservable& b) { return a += b; }
  friend HybridObservable operator-(HybridObservable a, const HybridObservable& b) { return a -= b; }
  friend HybridObservable operator*(const Coefficient& s, const HybridObservable& a) {
    HybridObservable out(a.sig_);
    for (const auto& [m, c] : a.terms_) out.add_term(m, s * c);
    return out;
  }
  friend bool operator==(const HybridObservable& a, const HybridObservable& b) {
    return a.sig_ == b.sig_ && a.terms_ == b.terms_;
  }

  void check(const HybridObservable& o) const {
    if (!(sig_ == o.sig_)) throw SignatureMismatch();
  }

  /// Sector-1 operator part as a WeylOperator; throws if any classical or h2 dependence remains.
  WeylOperator to_weyl() const {
    WeylOperator out(sig_);
    for (const auto& [m, c] : terms_) {
      if (c.max_h2() > 0) throw Error("observable depends on h2");
      Monomial w(out.variable_count());
      for (std::size_t v = 0; v < variable_count(); ++v) {
        if (v >= half() && m[v] != 0) throw Error("observable depends on classical variables");
        if (v < half()) w[v] = m[v];
      }
      out.add_term(w, c);
    }
    return out;
  }

  static HybridObservable from_weyl(const WeylOperator& w) {
    HybridObservable out(w.signature());
    for (const auto& [m, c] : w.terms()) {
      Monomial h(out.variable_count());
      for (std::size_t v = 0; v < m.size(); ++v) {
        if (v >= out.half() && m[v] != 0) throw Error("operator uses sector-2 generators");
        if (v < out.half()) h[v] = m[v];
      }
      out.add_term(h, c);
    }
    return out;
  }

  std::string variable_name(std::size_t v) const {
    bool classical = v >= half();
    std::size_t local = classical ? v - half() : v;
    int i = static_cast<int>(local / 2) + 1;
    std::string name;
    if (classical) {
      name = std::string(local % 2 == 0 ? "q" : "p") + "2";
    } else {
      name = std::string(local % 2 == 0 ? "Q" : "P") + "1";
    }
    if (sig_.dof() > 1) name += std::to_string(i);
    return name;
  }

 private:
  GroupSignature sig_;
  TermMap terms_;
};

namespace detail {

inline void multiply_hybrid_into(const HybridObservable& a, const HybridObservable& b, bool star,
                                 HybridObservable& out) {
  const auto& sig = a.signature();
  const Complex unit = sig.convention().qp_commutator_unit();
  std::vector<CanonicalPair> pairs;
  for (int i = 1; i <= sig.dof(); ++i) pairs.push_back({a.Q_index(i), Coefficient(unit) * Coefficient::h1()});
  // First-order star product: f * g = f g + (c2/2) {f, g}, c2 = unit * h2.
  const Coefficient half_c2 = Coefficient(unit * Complex(Rational(1, 2))) * Coefficient::h2();
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      const Coefficient cab = ca * cb;
      for (const auto& [m, w] : multiply_normal_ordered(pairs, ma, mb)) {
        out.add_term(m, cab * w);
        if (!star) continue;
        for (int i = 1; i <= sig.dof(); ++i) {
          const std::size_t q = a.q_index(i);
          const std::size_t p = a.p_index(i);
          Integer bracket = Integer(ma[q]) * mb[p] - Integer(ma[p]) * mb[q];
          if (bracket == 0) continue;
          Monomial r = m;
          if (r[q] == 0 || r[p] == 0) continue;
          r[q] -= 1;
          r[p] -= 1;
          out.add_term(r, cab * w * half_c2 * Coefficient(Complex(Rational(bracket))));
        }
      }
    }
  }
}

}  // namespace detail

/// Product with the first-order jet star product on the classical factor; h2^2 terms are dropped.
inline HybridObservable multiply_hybrid(const HybridObservable& a, const HybridObservable& b) {
  a.check(b);
  HybridObservable out(a.signature());
  detail::multiply_hybrid_into(a, b, true, out);
  return out;
}

/// Operator product with plain commutative multiplication of the classical factors.
inline HybridObservable multiply_pointwise(const HybridObservable& a, const HybridObservable& b) {
  a.check(b);
  HybridObservable out(a.signature());
  detail::multiply_hybrid_into(a, b, false, out);
  return out;
}

inline HybridObservable commutator(const HybridObservable& a, const HybridObservable& b) {
  return multiply_hybrid(a, b) - multiply_hybrid(b, a);
}

inline std::string to_string(const HybridObservable& h, const HbarNames& names = {"h", "h2"}) {
  std::vector<std::pair<Coefficient, std::string>> parts;
  for (auto it = h.terms().rbegin(); it != h.terms().rend(); ++it) {
    std::string mono;
    for (std::size_t v = 0; v < it->first.size(); ++v) {
      if (it->first[v] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += h.variable_name(v);
      if (it->first[v] > 1) mono += "^" + std::to_string(it->first[v]);
    }
    parts.emplace_back(it->second, mono);
  }
  return detail::format_sum(parts, names);
}

}  // namespace pbracket

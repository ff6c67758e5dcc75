#pragma once

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

namespace detail {

/// A canonical pair (Q, P) at positions q, q+1 of a monomial with [Q, P] = gamma.
struct CanonicalPair {
  std::size_t q;
  Coefficient gamma;
};

/// Product of two monomials that are normal-ordered (Q before P) in every pair.
/// Positions outside the pairs just add exponents. Each result is (monomial, weight).
inline std::vector<std::pair<Monomial, Coefficient>> multiply_normal_ordered(std::span<const CanonicalPair> pairs,
                                                                            const Monomial& a, const Monomial& b) {
  Monomial base = a;
  for (std::size_t v = 0; v < base.size(); ++v) base[v] += b[v];
  std::vector<std::pair<Monomial, Coefficient>> partial{{base, Coefficient(1)}};
  for (const auto& pair : pairs) {
    const std::size_t gq = pair.q;
    const std::size_t gp = pair.q + 1;
    const std::uint32_t kmax = std::min(a[gp], b[gq]);
    if (kmax == 0) continue;
    const Coefficient minus_gamma = -pair.gamma;
    std::vector<std::pair<Monomial, Coefficient>> next;
    next.reserve(partial.size() * (kmax + 1));
    for (const auto& [m, w] : partial) {
      for (std::uint32_t k = 0; k <= kmax; ++k) {
        Monomial r = m;
        r[gq] -= k;
        r[gp] -= k;
        next.emplace_back(std::move(r), w * Coefficient(Complex(Rational(reorder_weight(a[gp], b[gq], k)))) *
                                            minus_gamma.pow(k));
      }
    }
    partial = std::move(next);
  }
  return partial;
}

}  // namespace detail

/// Noncommutative polynomial in Q_{s,i}, P_{s,i} (both sectors), normal-ordered
/// Q before P, with Laurent coefficients in h1, h2.
///
/// [Q_{s,i}, P_{s,i}] = rep_s_sign * eps_comm * i * h_s.
class WeylOperator {
 public:
  using TermMap = std::map<Monomial, Coefficient, GradedOrder>;

  WeylOperator() = default;
  explicit WeylOperator(GroupSignature sig) : sig_(std::move(sig)) {}

  static std::size_t q_index(int dof, int sector, int i) { return 2 * dof * (sector - 1) + 2 * (i - 1); }
  static std::size_t p_index(int dof, int sector, int i) { return q_index(dof, sector, i) + 1; }

  static WeylOperator constant(const GroupSignature& sig, const Coefficient& c) {
    WeylOperator w(sig);
    w.add_term(Monomial(w.variable_count()), c);
    return w;
  }
  static WeylOperator identity(const GroupSignature& sig) { return constant(sig, Coefficient(1)); }
  static WeylOperator Q(const GroupSignature& sig, int sector = 1, int i = 1) {
    return generator(sig, q_index(sig.dof(), sector, i));
  }
  static WeylOperator P(const GroupSignature& sig, int sector = 1, int i = 1) {
    return generator(sig, p_index(sig.dof(), sector, i));
  }
  static WeylOperator generator(const GroupSignature& sig, std::size_t v) {
    WeylOperator w(sig);
    Monomial m(w.variable_count());
    m[v] = 1;
    w.add_term(m, Coefficient(1));
    return w;
  }

  const GroupSignature& signature() const { return sig_; }
  std::size_t variable_count() const { return 4 * static_cast<std::size_t>(sig_.dof()); }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
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

  std::vector<detail::CanonicalPair> canonical_pairs() const {
    std::vector<detail::CanonicalPair> pairs;
    const Complex unit = sig_.convention().qp_commutator_unit();
    for (int sector = 1; sector <= 2; ++sector) {
      Coefficient gamma = Coefficient(unit) * (sector == 1 ? Coefficient::h1() : Coefficient::h2());
      for (int i = 1; i <= sig_.dof(); ++i) pairs.push_back({q_index(sig_.dof(), sector, i), gamma});
    }
    return pairs;
  }

  /// Replaces h_s by a rational value.
  WeylOperator substitute(int which, const Rational& v) const {
    WeylOperator out(sig_);
    for (const auto& [m, c] : terms_) out.add_term(m, c.substitute(which, v));
    return out;
  }

  WeylOperator& operator+=(const WeylOperator& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  WeylOperator& operator-=(const WeylOperator& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend WeylOperator operator+(WeylOperator a, const WeylOperator& b) { return a += b; }
  friend WeylOperator operator-(WeylOperator a, const WeylOperator& b) { return a -= b; }
  friend WeylOperator operator*(const Coefficient& s, const WeylOperator& a) {
    WeylOperator out(a.sig_);
    for (const auto& [m, c] : a.terms_) out.add_term(m, s * c);
    return out;
  }
  friend WeylOperator operator*(const WeylOperator& a, const WeylOperator& b) {
    a.check(b);
    WeylOperator out(a.sig_);
    auto pairs = a.canonical_pairs();
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_)
        for (const auto& [m, w] : detail::multiply_normal_ordered(pairs, ma, mb)) out.add_term(m, ca * cb * w);
    return out;
  }
  friend bool operator==(const WeylOperator& a, const WeylOperator& b) {
    return a.sig_ == b.sig_ && a.terms_ == b.terms_;
  }

  void check(const WeylOperator& o) const {
    if (!(sig_ == o.sig_)) throw SignatureMismatch();
  }

  std::string variable_name(std::size_t v) const {
    const std::size_t per_sector = 2 * static_cast<std::size_t>(sig_.dof());
    int sector = v < per_sector ? 1 : 2;
    int i = static_cast<int>((v % per_sector) / 2) + 1;
    std::string name = std::string(v % 2 == 0 ? "Q" : "P") + std::to_string(sector);
    if (sig_.dof() > 1) name += std::to_string(i);
    return name;
  }

 private:
  GroupSignature sig_;
  TermMap terms_;
};

inline WeylOperator commutator(const WeylOperator& a, const WeylOperator& b) { return a * b - b * a; }

inline std::string to_string(const WeylOperator& w, const HbarNames& names = {}) {
  std::vector<std::pair<Coefficient, std::string>> parts;
  for (auto it = w.terms().rbegin(); it != w.terms().rend(); ++it) {
    std::string mono;
    for (std::size_t v = 0; v < it->first.size(); ++v) {
      if (it->first[v] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += w.variable_name(v);
      if (it->first[v] > 1) mono += "^" + std::to_string(it->first[v]);
    }
    parts.emplace_back(it->second, mono);
  }
  return detail::format_sum(parts, names);
}

}  // namespace pbracket

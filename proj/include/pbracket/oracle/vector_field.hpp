#pragma once

#include <map>
#include <string>
#include <vector>

#include "pbracket/element.hpp"
#include "pbracket/random.hpp"
#include "pbracket/scalar.hpp"

namespace pbracket::oracle {

/// Commutative polynomial in the group coordinates s1, s2, x_{s,i}, y_{s,i};
/// variable v is the coordinate dual to generator v.
class CoordinatePoly {
 public:
  using Exponents = std::vector<std::uint32_t>;
  using TermMap = std::map<Exponents, Coefficient>;

  CoordinatePoly() = default;
  explicit CoordinatePoly(std::size_t variables) : n_(variables) {}

  static CoordinatePoly monomial(const Exponents& e, const Coefficient& c = Coefficient(1)) {
    CoordinatePoly f(e.size());
    f.add_term(e, c);
    return f;
  }

  std::size_t variable_count() const { return n_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Exponents& e, const Coefficient& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  CoordinatePoly& operator+=(const CoordinatePoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  friend CoordinatePoly operator-(CoordinatePoly a, const CoordinatePoly& b) {
    for (const auto& [e, c] : b.terms_) a.add_term(e, -c);
    return a;
  }
  friend bool operator==(const CoordinatePoly& a, const CoordinatePoly& b) { return a.terms_ == b.terms_; }

  /// c * coordinate(w) * d/d coordinate(v)
  CoordinatePoly derivation(std::size_t v, const Coefficient& c, std::ptrdiff_t times_var = -1) const {
    CoordinatePoly out(n_);
    for (const auto& [e, k] : terms_) {
      if (e[v] == 0) continue;
      Exponents d = e;
      d[v] -= 1;
      if (times_var >= 0) d[static_cast<std::size_t>(times_var)] += 1;
      out.add_term(d, k * c * Coefficient(static_cast<int>(e[v])));
    }
    return out;
  }

 private:
  std::size_t n_ = 0;
  TermMap terms_;
};

/// Left-invariant vector field of generator g for the group law
///   (s, x, y)(s', x', y') = (s + s' + (x y' - y x')/2, x + x', y + y')
/// in each sector and degree of freedom:
///   S -> d/ds,  X -> d/dx - (y/2) d/ds,  Y -> eps (d/dy + (x/2) d/ds).
/// Then [X, Y] acts as eps * S.
inline CoordinatePoly generator_action(const GroupSignature& sig, std::size_t g, const CoordinatePoly& f) {
  if (sig.is_central(g)) return f.derivation(g, Coefficient(1));
  const std::size_t s = sig.s_index(sig.sector_of(g));
  const Complex half(Rational(1, 2));
  if (sig.is_x(g)) {
    CoordinatePoly out = f.derivation(g, Coefficient(1));
    out += f.derivation(s, Coefficient(-half), static_cast<std::ptrdiff_t>(g + 1));
    return out;
  }
  const Coefficient eps(sig.convention().eps());
  CoordinatePoly out = f.derivation(g, eps);
  out += f.derivation(s, eps * Coefficient(half), static_cast<std::ptrdiff_t>(g - 1));
  return out;
}

/// Action of an element: each monomial is the composition of its generator
/// fields in PBW order (the rightmost generator acts first).
inline CoordinatePoly vector_field_action(const Element& e, const CoordinatePoly& f) {
  const auto& sig = e.signature();
  CoordinatePoly out(f.variable_count());
  for (const auto& [m, c] : e.terms()) {
    CoordinatePoly r = f;
    for (std::size_t g = m.size(); g-- > 0;)
      for (std::uint32_t k = 0; k < m[g]; ++k) r = generator_action(sig, g, r);
    for (const auto& [x, k] : r.terms()) out.add_term(x, k * c);
  }
  return out;
}

/// All coordinate monomials of total degree <= max_degree, lowest degree first.
inline std::vector<CoordinatePoly> probe_monomials(const GroupSignature& sig, std::uint32_t max_degree) {
  const std::size_t n = sig.generator_count();
  std::vector<CoordinatePoly> out;
  for (std::uint32_t d = 0; d <= max_degree; ++d) {
    // Enumerate compositions of d into n parts.
    std::vector<std::uint32_t> cur(n, 0);
    auto rec = [&](auto&& self, std::size_t pos, std::uint32_t left) -> void {
      if (pos + 1 == n) {
        cur[pos] = left;
        out.push_back(CoordinatePoly::monomial(cur));
        return;
      }
      for (std::uint32_t k = left + 1; k-- > 0;) {
        cur[pos] = k;
        self(self, pos + 1, left - k);
      }
    };
    rec(rec, 0, d);
  }
  return out;
}

/// Random coordinate monomial of degree <= max_degree.
inline CoordinatePoly random_probe(RandomSource& rng, const GroupSignature& sig, std::uint32_t max_degree) {
  std::vector<std::size_t> slots(sig.generator_count());
  for (std::size_t g = 0; g < slots.size(); ++g) slots[g] = g;
  auto d = static_cast<std::uint32_t>(rng.below(max_degree + 1));
  return CoordinatePoly::monomial(rng.composition(d, slots, slots.size()));
}

/// True if a and b act identically on every probe of degree <= max_degree.
inline bool actions_agree(const Element& a, const Element& b, std::uint32_t max_degree) {
  for (const auto& probe : probe_monomials(a.signature(), max_degree))
    if (!(vector_field_action(a, probe) == vector_field_action(b, probe))) return false;
  return true;
}

}  // namespace pbracket::oracle

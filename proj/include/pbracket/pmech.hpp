#pragma once

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "pbracket/classical.hpp"
#include "pbracket/element.hpp"
#include "pbracket/errors.hpp"

namespace pbracket {

/// plain + a1 * A1 + a2 * A2, with A_s the formal antiderivative in s_s.
///
/// Antiderivatives are applied greedily: a monomial of a_s never carries S_s.
class AObservable {
 public:
  AObservable() = default;
  explicit AObservable(const GroupSignature& sig) : plain_(sig), a1_(sig), a2_(sig) {}
  AObservable(Element plain, Element a1, Element a2)
      : plain_(std::move(plain)), a1_(std::move(a1)), a2_(std::move(a2)) {
    plain_.check(a1_);
    plain_.check(a2_);
    absorb(1);
    absorb(2);
  }

  const GroupSignature& signature() const { return plain_.signature(); }
  const Element& plain() const { return plain_; }
  const Element& a1() const { return a1_; }
  const Element& a2() const { return a2_; }
  const Element& formal(int sector) const { return sector == 1 ? a1_ : a2_; }
  bool has_formal_part() const { return !a1_.is_zero() || !a2_.is_zero(); }
  bool is_zero() const { return plain_.is_zero() && !has_formal_part(); }

  AObservable& operator+=(const AObservable& o) {
    plain_ += o.plain_;
    a1_ += o.a1_;
    a2_ += o.a2_;
    return *this;
  }
  AObservable& operator-=(const AObservable& o) {
    plain_ -= o.plain_;
    a1_ -= o.a1_;
    a2_ -= o.a2_;
    return *this;
  }
  friend AObservable operator+(AObservable a, const AObservable& b) { return a += b; }
  friend AObservable operator-(AObservable a, const AObservable& b) { return a -= b; }
  friend AObservable operator*(const Coefficient& s, const AObservable& a) {
    return AObservable(s * a.plain_, s * a.a1_, s * a.a2_);
  }
  friend bool operator==(const AObservable&, const AObservable&) = default;

 private:
  // S_s * A_s acts as the identity: move such monomials into the plain part.
  void absorb(int sector) {
    Element& formal = sector == 1 ? a1_ : a2_;
    const std::size_t gs = formal.signature().s_index(sector);
    Element kept(formal.signature());
    for (const auto& [m, c] : formal.terms()) {
      if (m[gs] == 0) {
        kept.add_term(m, c);
      } else {
        Monomial reduced = m;
        reduced[gs] -= 1;
        plain_.add_term(reduced, c);
      }
    }
    formal = std::move(kept);
  }

  Element plain_;
  Element a1_;
  Element a2_;
};

/// Product of two A-observables; rejected when both carry antiderivative factors.
inline AObservable multiply(const AObservable& a, const AObservable& b) {
  if (a.has_formal_part() && b.has_formal_part()) throw NonlinearAntiderivative();
  return AObservable(multiply(a.plain(), b.plain()), multiply(a.plain(), b.a1()) + multiply(a.a1(), b.plain()),
                     multiply(a.plain(), b.a2()) + multiply(a.a2(), b.plain()));
}

/// e * A_s: strips one power of S_s where present, otherwise keeps the formal factor.
inline AObservable apply_antiderivative(const Element& e, int sector) {
  const auto& sig = e.signature();
  const std::size_t gs = sig.s_index(sector);
  Element plain(sig);
  Element formal(sig);
  for (const auto& [m, c] : e.terms()) {
    if (m[gs] >= 1) {
      Monomial reduced = m;
      reduced[gs] -= 1;
      plain.add_term(reduced, c);
    } else {
      formal.add_term(m, c);
    }
  }
  if (sector == 1) return AObservable(plain, formal, Element(sig));
  return AObservable(plain, Element(sig), formal);
}

/// (k1*k2 - k2*k1)(A1 + A2), with the commutator in the calibrated orientation.
inline AObservable universal_bracket(const Element& k1, const Element& k2) {
  Element c = commutator(k1, k2);
  return apply_antiderivative(c, 1) + apply_antiderivative(c, 2);
}

namespace detail {

inline void symmetric_words(std::uint32_t xs, std::uint32_t ys, std::size_t gx, std::size_t gy,
                            std::vector<std::size_t>& prefix, std::vector<std::vector<std::size_t>>& out) {
  if (xs == 0 && ys == 0) {
    out.push_back(prefix);
    return;
  }
  if (xs > 0) {
    prefix.push_back(gx);
    symmetric_words(xs - 1, ys, gx, gy, prefix, out);
    prefix.pop_back();
  }
  if (ys > 0) {
    prefix.push_back(gy);
    symmetric_words(xs, ys - 1, gx, gy, prefix, out);
    prefix.pop_back();
  }
}

/// Average of all distinct orderings of X^a Y^b for one degree of freedom.
inline Element weyl_symmetrize(const GroupSignature& sig, std::size_t gx, std::size_t gy, std::uint32_t a,
                               std::uint32_t b) {
  std::vector<std::vector<std::size_t>> words;
  std::vector<std::size_t> prefix;
  symmetric_words(a, b, gx, gy, prefix, words);
  Element sum(sig);
  for (const auto& w : words) sum += from_word(sig, w);
  return Coefficient(Complex(Rational(Integer(1), binomial(a + b, a)))) * sum;
}

}  // namespace detail

/// Weyl p-mechanisation: q_{s,i} -> delta'_{x_{s,i}}, p_{s,i} -> delta'_{y_{s,i}}, monomials fully symmetrized.
inline Element mechanise_weyl(const ClassicalPoly& f, const GroupSignature& sig) {
  if (f.dof() != sig.dof()) throw SignatureMismatch();
  const Complex kx = to_complex(sig.convention().kappa_x);
  const Complex ky = to_complex(sig.convention().kappa_y);
  Element out(sig);
  for (const auto& [m, c] : f.terms()) {
    Element term = Element::constant(sig, Coefficient(c));
    for (int sector = 1; sector <= 2; ++sector) {
      for (int i = 1; i <= sig.dof(); ++i) {
        std::uint32_t a = m[ClassicalPoly::q_index(f.dof(), sector, i)];
        std::uint32_t b = m[ClassicalPoly::p_index(f.dof(), sector, i)];
        if (a + b == 0) continue;
        Element sym = detail::weyl_symmetrize(sig, sig.x_index(sector, i), sig.y_index(sector, i), a, b);
        term = multiply(term, Coefficient(kx.pow(a) * ky.pow(b)) * sym);
      }
    }
    out += term;
  }
  return out;
}

/// Delta notation, e.g. "4*delta[x1,y1] + 2*delta[s1] + (4*delta[s1,x1,y1] + 2*delta[s1,s1])*A2".
inline std::string to_delta_string(const AObservable& k) {
  std::string out;
  auto append = [&out](const std::string& piece) {
    if (out.empty()) {
      out = piece;
    } else if (piece.front() == '-' && piece.find(" + ") == std::string::npos && piece.find(" - ") == std::string::npos) {
      out += " - " + piece.substr(1);
    } else {
      out += " + " + piece;
    }
  };
  if (!k.plain().is_zero()) append(to_delta_string(k.plain()));
  for (int sector = 1; sector <= 2; ++sector) {
    const Element& f = k.formal(sector);
    if (f.is_zero()) continue;
    std::string body = to_delta_string(f);
    std::string a = "A" + std::to_string(sector);
    if (body == "1") {
      append(a);
    } else if (body == "-1") {
      append("-" + a);
    } else if (f.size() == 1) {
      append(body + "*" + a);
    } else {
      append("(" + body + ")*" + a);
    }
  }
  return out.empty() ? "0" : out;
}

using MechanisationRule = std::function<Element(const ClassicalPoly&, const GroupSignature&)>;

/// Named mechanisation rules; "weyl" is always present.
class MechanisationRegistry {
 public:
  MechanisationRegistry() { rules_.emplace("weyl", mechanise_weyl); }

  void add(std::string name, MechanisationRule rule) { rules_.insert_or_assign(std::move(name), std::move(rule)); }
  bool contains(std::string_view name) const { return rules_.find(std::string(name)) != rules_.end(); }

  const MechanisationRule& at(std::string_view name) const {
    auto it = rules_.find(std::string(name));
    if (it == rules_.end()) throw UnknownRule(std::string(name));
    return it->second;
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& [name, rule] : rules_) out.push_back(name);
    return out;
  }

 private:
  std::map<std::string, MechanisationRule> rules_;
};

inline const MechanisationRegistry& builtin_rules() {
  static const MechanisationRegistry registry;
  return registry;
}

inline Element mechanise_plugin(const ClassicalPoly& f, std::string_view rule, const GroupSignature& sig,
                                const MechanisationRegistry& registry = builtin_rules()) {
  return registry.at(rule)(f, sig);
}

}  // namespace pbracket

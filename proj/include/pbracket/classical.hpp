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

namespace pbracket {

/// Commutative polynomial in the phase-space variables q_{s,i}, p_{s,i}.
///
/// Variable order: q_{1,1}, p_{1,1}, ..., q_{1,n}, p_{1,n}, q_{2,1}, ..., p_{2,n}.
class ClassicalPoly {
 public:
  using TermMap = std::map<Monomial, Complex, GradedOrder>;

  ClassicalPoly() = default;
  explicit ClassicalPoly(int dof) : dof_(dof) {}

  static std::size_t q_index(int dof, int sector, int i) { return 2 * dof * (sector - 1) + 2 * (i - 1); }
  static std::size_t p_index(int dof, int sector, int i) { return q_index(dof, sector, i) + 1; }

  static ClassicalPoly constant(int dof, const Complex& c) {
    ClassicalPoly f(dof);
    f.add_term(Monomial(f.variable_count()), c);
    return f;
  }
  static ClassicalPoly variable(int dof, std::size_t v, const Complex& c = Complex(1)) {
    ClassicalPoly f(dof);
    Monomial m(f.variable_count());
    m[v] = 1;
    f.add_term(m, c);
    return f;
  }
  static ClassicalPoly q(int dof, int sector, int i) { return variable(dof, q_index(dof, sector, i)); }
  static ClassicalPoly p(int dof, int sector, int i) { return variable(dof, p_index(dof, sector, i)); }

  int dof() const { return dof_; }
  std::size_t variable_count() const { return 4 * static_cast<std::size_t>(dof_); }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  std::uint32_t degree() const {
    std::uint32_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }

  void add_term(const Monomial& m, const Complex& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  bool uses_only_sector(int sector) const {
    for (const auto& [m, c] : terms_)
      for (std::size_t v = 0; v < m.size(); ++v)
        if (m[v] != 0 && sector_of(v) != sector) return false;
    return true;
  }
  int sector_of(std::size_t v) const { return v < 2 * static_cast<std::size_t>(dof_) ? 1 : 2; }

  ClassicalPoly& operator+=(const ClassicalPoly& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  ClassicalPoly& operator-=(const ClassicalPoly& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend ClassicalPoly operator+(ClassicalPoly a, const ClassicalPoly& b) { return a += b; }
  friend ClassicalPoly operator-(ClassicalPoly a, const ClassicalPoly& b) { return a -= b; }
  friend ClassicalPoly operator-(const ClassicalPoly& a) {
    ClassicalPoly out(a.dof_);
    for (const auto& [m, c] : a.terms_) out.terms_.emplace(m, -c);
    return out;
  }
  friend ClassicalPoly operator*(const ClassicalPoly& a, const ClassicalPoly& b) {
    a.check(b);
    ClassicalPoly out(a.dof_);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m = ma;
        for (std::size_t v = 0; v < m.size(); ++v) m[v] += mb[v];
        out.add_term(m, ca * cb);
      }
    }
    return out;
  }
  friend ClassicalPoly operator*(const Complex& s, const ClassicalPoly& a) {
    ClassicalPoly out(a.dof_);
    for (const auto& [m, c] : a.terms_) out.add_term(m, s * c);
    return out;
  }
  friend bool operator==(const ClassicalPoly& a, const ClassicalPoly& b) {
    return a.dof_ == b.dof_ && a.terms_ == b.terms_;
  }

  ClassicalPoly pow(unsigned k) const {
    ClassicalPoly out = constant(dof_, Complex(1));
    for (unsigned j = 0; j < k; ++j) out = out * *this;
    return out;
  }

  ClassicalPoly derivative(std::size_t v) const {
    ClassicalPoly out(dof_);
    for (const auto& [m, c] : terms_) {
      if (m[v] == 0) continue;
      Monomial d = m;
      d[v] -= 1;
      out.add_term(d, c * Complex(Rational(m[v])));
    }
    return out;
  }

  void check(const ClassicalPoly& o) const {
    if (dof_ != o.dof_) throw SignatureMismatch();
  }

  std::string variable_name(std::size_t v) const {
    int sector = sector_of(v);
    int i = static_cast<int>((v % (2 * static_cast<std::size_t>(dof_))) / 2) + 1;
    std::string name = std::string(v % 2 == 0 ? "q" : "p") + std::to_string(sector);
    if (dof_ > 1) name += std::to_string(i);
    return name;
  }

 private:
  int dof_ = 1;
  TermMap terms_;
};

/// Canonical Poisson bracket sum over both sectors of dq f dp g - dp f dq g.
inline ClassicalPoly poisson(const ClassicalPoly& f, const ClassicalPoly& g) {
  f.check(g);
  ClassicalPoly out(f.dof());
  for (int sector = 1; sector <= 2; ++sector) {
    for (int i = 1; i <= f.dof(); ++i) {
      auto qv = ClassicalPoly::q_index(f.dof(), sector, i);
      auto pv = ClassicalPoly::p_index(f.dof(), sector, i);
      out += f.derivative(qv) * g.derivative(pv) - f.derivative(pv) * g.derivative(qv);
    }
  }
  return out;
}

inline std::string to_string(const ClassicalPoly& f) {
  std::vector<std::pair<Coefficient, std::string>> parts;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    std::string mono;
    for (std::size_t v = 0; v < it->first.size(); ++v) {
      if (it->first[v] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += f.variable_name(v);
      if (it->first[v] > 1) mono += "^" + std::to_string(it->first[v]);
    }
    parts.emplace_back(Coefficient(it->second), mono);
  }
  return detail::format_sum(parts);
}

}  // namespace pbracket

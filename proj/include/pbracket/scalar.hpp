#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pbracket/errors.hpp"

namespace pbracket {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

/// Exact Gaussian rational re + i*im.
class Complex {
 public:
  Complex() = default;
  Complex(int re) : re_(re) {}
  Complex(Rational re) : re_(std::move(re)) {}
  Complex(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static Complex i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }
  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_real() const { return im_ == 0; }
  Complex conj() const { return {re_, -im_}; }

  Complex& operator+=(const Complex& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  Complex& operator*=(const Complex& o) {
    Rational re = re_ * o.re_ - im_ * o.im_;
    im_ = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    return *this;
  }
  Complex& operator/=(const Complex& o) {
    Rational norm = o.re_ * o.re_ + o.im_ * o.im_;
    if (norm == 0) throw DivisionByZero();
    *this *= o.conj();
    re_ /= norm;
    im_ /= norm;
    return *this;
  }

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  friend Complex operator-(const Complex& a) { return {-a.re_, -a.im_}; }
  friend bool operator==(const Complex& a, const Complex& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

  Complex pow(unsigned k) const {
    Complex out(1);
    for (unsigned j = 0; j < k; ++j) out *= *this;
    return out;
  }

  double real_double() const { return static_cast<double>(re_); }
  double imag_double() const { return static_cast<double>(im_); }

 private:
  Rational re_{0};
  Rational im_{0};
};

/// "3/2", "-i", "2*i", "(1/2+3*i)".
inline std::string to_string(const Complex& c) {
  if (c.is_real()) return to_string(c.re());
  std::string imag;
  if (c.im() == 1) {
    imag = "i";
  } else if (c.im() == -1) {
    imag = "-i";
  } else {
    imag = to_string(c.im()) + "*i";
  }
  if (c.re() == 0) return imag;
  std::string sep = c.im() < 0 ? "" : "+";
  return "(" + to_string(c.re()) + sep + imag + ")";
}

/// Exponents of the formal Planck parameters h1, h2 in one coefficient term.
struct HbarPowers {
  int h1 = 0;
  int h2 = 0;
  auto operator<=>(const HbarPowers&) const = default;
};

/// Laurent polynomial in h1, h2 with exact Gaussian-rational coefficients.
///
/// Group-algebra elements only ever carry nonnegative powers; negative powers
/// appear once antiderivatives are represented as 1/(i h).
class Coefficient {
 public:
  using TermMap = std::map<HbarPowers, Complex>;

  Coefficient() = default;
  Coefficient(int c) : Coefficient(Complex(c)) {}
  Coefficient(Complex c) {
    if (!c.is_zero()) terms_.emplace(HbarPowers{}, std::move(c));
  }
  Coefficient(Complex c, HbarPowers p) {
    if (!c.is_zero()) terms_.emplace(p, std::move(c));
  }

  static Coefficient h1(int power = 1) { return {Complex(1), {power, 0}}; }
  static Coefficient h2(int power = 1) { return {Complex(1), {0, power}}; }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == HbarPowers{}); }
  Complex constant_term() const {
    auto it = terms_.find(HbarPowers{});
    return it == terms_.end() ? Complex() : it->second;
  }

  void add(const HbarPowers& p, const Complex& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(p, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Coefficient& operator+=(const Coefficient& o) {
    for (const auto& [p, c] : o.terms_) add(p, c);
    return *this;
  }
  Coefficient& operator-=(const Coefficient& o) {
    for (const auto& [p, c] : o.terms_) add(p, -c);
    return *this;
  }
  friend Coefficient operator+(Coefficient a, const Coefficient& b) { return a += b; }
  friend Coefficient operator-(Coefficient a, const Coefficient& b) { return a -= b; }
  friend Coefficient operator-(const Coefficient& a) {
    Coefficient out;
    for (const auto& [p, c] : a.terms_) out.terms_.emplace(p, -c);
    return out;
  }
  friend Coefficient operator*(const Coefficient& a, const Coefficient& b) {
    Coefficient out;
    for (const auto& [pa, ca] : a.terms_)
      for (const auto& [pb, cb] : b.terms_) out.add({pa.h1 + pb.h1, pa.h2 + pb.h2}, ca * cb);
    return out;
  }
  Coefficient& operator*=(const Coefficient& o) { return *this = *this * o; }
  friend bool operator==(const Coefficient& a, const Coefficient& b) { return a.terms_ == b.terms_; }

  Coefficient pow(unsigned k) const {
    Coefficient out(1);
    for (unsigned j = 0; j < k; ++j) out *= *this;
    return out;
  }

  int min_h1() const {
    int m = 0;
    for (const auto& [p, c] : terms_) m = std::min(m, p.h1);
    return m;
  }
  int max_h2() const {
    int m = 0;
    for (const auto& [p, c] : terms_) m = std::max(m, p.h2);
    return m;
  }
  bool has_negative_powers() const {
    for (const auto& [p, c] : terms_)
      if (p.h1 < 0 || p.h2 < 0) return true;
    return false;
  }

  /// Coefficient of h2^k, as an h2-free Laurent polynomial in h1.
  Coefficient h2_component(int k) const {
    Coefficient out;
    for (const auto& [p, c] : terms_)
      if (p.h2 == k) out.terms_.emplace(HbarPowers{p.h1, 0}, c);
    return out;
  }

  /// Drops every term with h2-power above `max_power`.
  Coefficient truncate_h2(int max_power) const {
    Coefficient out;
    for (const auto& [p, c] : terms_)
      if (p.h2 <= max_power) out.terms_.emplace(p, c);
    return out;
  }

  /// Substitutes h1 := v (if `which` is 1) or h2 := v (if 2).
  Coefficient substitute(int which, const Rational& v) const {
    Coefficient out;
    for (const auto& [p, c] : terms_) {
      int e = which == 1 ? p.h1 : p.h2;
      if (e < 0 && v == 0) throw ZeroPlanck();
      Rational factor = 1;
      Rational base = e < 0 ? Rational(1) / v : v;
      for (int j = 0; j < std::abs(e); ++j) factor *= base;
      HbarPowers rest = which == 1 ? HbarPowers{0, p.h2} : HbarPowers{p.h1, 0};
      out.add(rest, c * Complex(factor));
    }
    return out;
  }

 private:
  TermMap terms_;
};

inline Coefficient operator*(const Coefficient& a, const Complex& b) { return a * Coefficient(b); }

/// Names used when printing h-powers, e.g. {"h1","h2"} or {"h","h2"}.
struct HbarNames {
  std::string h1 = "h1";
  std::string h2 = "h2";
};

inline std::string power_string(const std::string& name, int e) {
  if (e == 1) return name;
  return name + "^" + (e < 0 ? "(" + std::to_string(e) + ")" : std::to_string(e));
}

/// Renders a coefficient as a sum "2*i*h1 + 3/2*h2^(-1)".
inline std::string to_string(const Coefficient& c, const HbarNames& names = {}) {
  if (c.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [p, v] : c.terms()) {
    std::string h;
    if (p.h1 != 0) h = power_string(names.h1, p.h1);
    if (p.h2 != 0) h += (h.empty() ? "" : "*") + power_string(names.h2, p.h2);
    std::string term;
    if (h.empty()) {
      term = to_string(v);
    } else if (v == Complex(1)) {
      term = h;
    } else if (v == Complex(-1)) {
      term = "-" + h;
    } else {
      term = to_string(v) + "*" + h;
    }
    if (!first) {
      if (term.front() == '-') {
        out += " - ";
        term.erase(0, 1);
      } else {
        out += " + ";
      }
    }
    out += term;
    first = false;
  }
  return out;
}

}  // namespace pbracket

#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

#include "pbracket/scalar.hpp"

namespace pbracket {

/// Exponent vector over an ordered generator set.
struct Monomial {
  std::vector<std::uint32_t> exps;

  Monomial() = default;
  explicit Monomial(std::size_t n) : exps(n, 0) {}
  explicit Monomial(std::vector<std::uint32_t> e) : exps(std::move(e)) {}

  std::uint32_t degree() const { return std::accumulate(exps.begin(), exps.end(), std::uint32_t{0}); }
  std::uint32_t operator[](std::size_t i) const { return exps[i]; }
  std::uint32_t& operator[](std::size_t i) { return exps[i]; }
  std::size_t size() const { return exps.size(); }

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Graded order: lower total degree first, then lexicographic by exponents (descending).
struct GradedOrder {
  bool operator()(const Monomial& a, const Monomial& b) const {
    auto da = a.degree();
    auto db = b.degree();
    if (da != db) return da < db;
    return a.exps > b.exps;
  }
};

namespace detail {

/// Number of complete contractions when Y^b is moved past X^c taking k pairs:
/// Y^b X^c = sum_k weight(b,c,k) (-g)^k X^(c-k) Y^(b-k) whenever [X,Y] = g is central.
inline Integer reorder_weight(std::uint32_t b, std::uint32_t c, std::uint32_t k) {
  Integer w = 1;
  // k! * C(b,k) * C(c,k) = b!/(b-k)! * c!/(c-k)! / k!
  for (std::uint32_t j = 0; j < k; ++j) w *= (b - j) * Integer(c - j);
  Integer kf = 1;
  for (std::uint32_t j = 2; j <= k; ++j) kf *= j;
  return w / kf;
}

inline Integer binomial(std::uint32_t n, std::uint32_t k) {
  if (k > n) return 0;
  Integer r = 1;
  for (std::uint32_t j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

}  // namespace detail
}  // namespace pbracket

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "pbracket/classical.hpp"
#include "pbracket/element.hpp"

namespace pbracket {

/// Seeded generator for test instances. Draws use `engine() % k` so the
/// sequence is identical across standard libraries.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t k) { return engine_() % k; }
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  /// Small nonzero Gaussian integer; real with probability 3/4.
  Complex coefficient() {
    std::int64_t re = 0;
    std::int64_t im = 0;
    while (re == 0 && im == 0) {
      re = between(-3, 3);
      im = below(4) == 0 ? between(-2, 2) : 0;
    }
    return Complex(Rational(re), Rational(im));
  }

  /// Exponent vector of total degree `degree` spread over `slots`.
  std::vector<std::uint32_t> composition(std::uint32_t degree, const std::vector<std::size_t>& slots,
                                         std::size_t width) {
    std::vector<std::uint32_t> e(width, 0);
    for (std::uint32_t k = 0; k < degree; ++k) e[slots[below(slots.size())]] += 1;
    return e;
  }

 private:
  std::mt19937_64 engine_;
};

/// Which sectors a random instance may touch.
enum class SectorMask { kSector1, kSector2, kBoth };

/// Random element with up to `max_terms` terms of degree <= max_degree.
inline Element random_element(RandomSource& rng, const GroupSignature& sig, std::uint32_t max_degree,
                              std::size_t max_terms = 4, SectorMask mask = SectorMask::kBoth) {
  std::vector<std::size_t> slots;
  for (std::size_t g = 0; g < sig.generator_count(); ++g) {
    int s = sig.sector_of(g);
    if (mask == SectorMask::kBoth || (mask == SectorMask::kSector1 && s == 1) ||
        (mask == SectorMask::kSector2 && s == 2))
      slots.push_back(g);
  }
  Element e(sig);
  std::size_t terms = 1 + rng.below(max_terms);
  for (std::size_t t = 0; t < terms; ++t) {
    auto degree = static_cast<std::uint32_t>(rng.below(max_degree + 1));
    e.add_term(Monomial(rng.composition(degree, slots, sig.generator_count())), Coefficient(rng.coefficient()));
  }
  return e;
}

/// Random classical polynomial with up to `max_terms` terms of degree 1..max_degree.
inline ClassicalPoly random_classical(RandomSource& rng, int dof, std::uint32_t max_degree,
                                      std::size_t max_terms = 3, SectorMask mask = SectorMask::kBoth) {
  ClassicalPoly f(dof);
  std::vector<std::size_t> slots;
  for (std::size_t v = 0; v < f.variable_count(); ++v) {
    int s = f.sector_of(v);
    if (mask == SectorMask::kBoth || (mask == SectorMask::kSector1 && s == 1) ||
        (mask == SectorMask::kSector2 && s == 2))
      slots.push_back(v);
  }
  std::size_t terms = 1 + rng.below(max_terms);
  for (std::size_t t = 0; t < terms; ++t) {
    auto degree = static_cast<std::uint32_t>(1 + rng.below(max_degree));
    f.add_term(Monomial(rng.composition(degree, slots, f.variable_count())), rng.coefficient());
  }
  return f;
}

}  // namespace pbracket

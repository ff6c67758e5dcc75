#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pbracket/scalar.hpp"

namespace pbracket::detail {

/// Joins (coefficient, monomial) pairs into "a*m1 + b*m2 - m3"; an empty monomial is the unit.
inline std::string format_sum(const std::vector<std::pair<Coefficient, std::string>>& terms,
                              const HbarNames& names = {}) {
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [coeff, mono] : terms) {
    std::string c = to_string(coeff, names);
    bool compound = coeff.terms().size() > 1;
    bool negative = !compound && !c.empty() && c.front() == '-';
    if (negative) c.erase(0, 1);
    std::string term;
    if (mono.empty()) {
      term = compound ? "(" + c + ")" : c;
    } else if (c == "1") {
      term = mono;
    } else {
      term = (compound ? "(" + c + ")" : c) + "*" + mono;
    }
    if (first) {
      out = negative ? "-" + term : term;
    } else {
      out += negative ? " - " : " + ";
      out += term;
    }
    first = false;
  }
  return out;
}

}  // namespace pbracket::detail

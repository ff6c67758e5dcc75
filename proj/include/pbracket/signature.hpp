#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "pbracket/errors.hpp"
#include "pbracket/scalar.hpp"

namespace pbracket {

/// A unit scalar in {+1, -1, +i, -i}; enumerators are in calibration search order.
enum class Unit : std::uint8_t { kPlusOne, kMinusOne, kPlusI, kMinusI };

inline constexpr std::array<Unit, 4> kAllUnits = {Unit::kPlusOne, Unit::kMinusOne, Unit::kPlusI, Unit::kMinusI};

inline Complex to_complex(Unit u) {
  switch (u) {
    case Unit::kPlusOne: return Complex(1);
    case Unit::kMinusOne: return Complex(-1);
    case Unit::kPlusI: return Complex::i();
    case Unit::kMinusI: return -Complex::i();
  }
  return Complex(1);
}

inline std::string to_string(Unit u) {
  switch (u) {
    case Unit::kPlusOne: return "1";
    case Unit::kMinusOne: return "-1";
    case Unit::kPlusI: return "i";
    case Unit::kMinusI: return "-i";
  }
  return "?";
}

inline Unit unit_from_string(std::string_view s) {
  if (s == "1" || s == "+1") return Unit::kPlusOne;
  if (s == "-1") return Unit::kMinusOne;
  if (s == "i" || s == "+i") return Unit::kPlusI;
  if (s == "-i") return Unit::kMinusI;
  throw Error("not a unit scalar: '" + std::string(s) + "'");
}

/// Which operator product stands for the symbol "QP" in operator-level results.
enum class ProductOrder : std::uint8_t { kQP, kPQ };

inline std::string to_string(ProductOrder o) { return o == ProductOrder::kQP ? "QP" : "PQ"; }

inline ProductOrder product_order_from_string(std::string_view s) {
  if (s == "QP") return ProductOrder::kQP;
  if (s == "PQ") return ProductOrder::kPQ;
  throw Error("not a product order: '" + std::string(s) + "'");
}

/// Sign conventions linking delta-derivatives, generators and representations.
///
/// [X_{s,i}, Y_{s,i}] = eps_comm * S_s; delta'_x = kappa_x X, delta'_y = kappa_y Y,
/// delta'_s = kappa_s S; commutator(a, b) = orient * (a*b - b*a);
/// representations send S_s to rep_s_sign * i * h_s.
///
/// The defaults are the tuple selected by calibrate_conventions().
struct ConventionTuple {
  Unit eps_comm = Unit::kMinusOne;
  Unit kappa_x = Unit::kPlusOne;
  Unit kappa_y = Unit::kPlusOne;
  Unit kappa_s = Unit::kPlusOne;
  int orient = -1;
  int rep_s_sign = -1;
  ProductOrder qp_order = ProductOrder::kPQ;

  friend bool operator==(const ConventionTuple&, const ConventionTuple&) = default;

  Complex eps() const { return to_complex(eps_comm); }

  /// rep_s_sign * i, the image of S_s per unit h_s.
  Complex s_image_unit() const { return Complex(rep_s_sign) * Complex::i(); }

  /// The scalar c with [Q, P] = c * h in every representation.
  Complex qp_commutator_unit() const { return s_image_unit() * eps(); }
};

inline std::string to_string(const ConventionTuple& t) {
  return "(eps_comm=" + to_string(t.eps_comm) + ", kappa_x=" + to_string(t.kappa_x) +
         ", kappa_y=" + to_string(t.kappa_y) + ", kappa_s=" + to_string(t.kappa_s) +
         ", orient=" + std::to_string(t.orient) + ", rep_s_sign=" + std::to_string(t.rep_s_sign) +
         ", qp_order=" + to_string(t.qp_order) + ")";
}

/// The group D^n: two Heisenberg sectors with n degrees of freedom each.
///
/// Generators are indexed in PBW order S1 < S2 < X_{1,1} < Y_{1,1} < ... < X_{2,n} < Y_{2,n}.
class GroupSignature {
 public:
  GroupSignature() = default;
  explicit GroupSignature(int dof_per_sector, ConventionTuple convention = {})
      : dof_(dof_per_sector), convention_(convention) {
    if (dof_ < 1) throw InvalidSignature("dof_per_sector must be positive");
  }

  int dof() const { return dof_; }
  const ConventionTuple& convention() const { return convention_; }

  std::size_t generator_count() const { return 2 + 4 * static_cast<std::size_t>(dof_); }

  std::size_t s_index(int sector) const { return static_cast<std::size_t>(sector - 1); }
  std::size_t x_index(int sector, int i) const {
    return 2 + 2 * static_cast<std::size_t>(dof_) * static_cast<std::size_t>(sector - 1) +
           2 * static_cast<std::size_t>(i - 1);
  }
  std::size_t y_index(int sector, int i) const { return x_index(sector, i) + 1; }

  bool is_central(std::size_t g) const { return g < 2; }
  /// Sector (1 or 2) of a generator index.
  int sector_of(std::size_t g) const {
    if (g < 2) return static_cast<int>(g) + 1;
    return (g - 2) < 2 * static_cast<std::size_t>(dof_) ? 1 : 2;
  }
  /// Degree-of-freedom (1..n) of a non-central generator index.
  int dof_of(std::size_t g) const { return static_cast<int>(((g - 2) % (2 * static_cast<std::size_t>(dof_))) / 2) + 1; }
  bool is_x(std::size_t g) const { return g >= 2 && (g - 2) % 2 == 0; }

  std::string generator_name(std::size_t g) const {
    if (g < 2) return "S" + std::to_string(g + 1);
    return std::string(is_x(g) ? "X_" : "Y_") + std::to_string(sector_of(g)) + "_" + std::to_string(dof_of(g));
  }

  /// Delta-derivative variable name: s1, s2, x1, y1 (dof 1) or x12, y12 (dof 2).
  std::string delta_variable_name(std::size_t g) const {
    if (g < 2) return "s" + std::to_string(g + 1);
    std::string name = std::string(is_x(g) ? "x" : "y") + std::to_string(sector_of(g));
    if (dof_of(g) != 1 || dof_ > 1) name += std::to_string(dof_of(g));
    return name;
  }

  friend bool operator==(const GroupSignature&, const GroupSignature&) = default;

 private:
  int dof_ = 1;
  ConventionTuple convention_{};
};

}  // namespace pbracket

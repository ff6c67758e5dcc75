#pragma once

#include <string>
#include <vector>

#include "pbracket/classical.hpp"
#include "pbracket/element.hpp"
#include "pbracket/errors.hpp"
#include "pbracket/pmech.hpp"
#include "pbracket/qc_bracket.hpp"
#include "pbracket/representations.hpp"

namespace pbracket {

/// Right-hand sides the calibration must reproduce. `imaginary_sign` flips the
/// sign of the 2ih term; a value of -1 is a negative control.
struct CalibrationTargets {
  int imaginary_sign = 1;
};

/// Outcome of each calibration identity for one tuple.
struct CalibrationCheck {
  bool group_commutator = false;  ///< [d''_xx, d''_yy] = 4 d'''_xys + 2 d''_ss
  bool qc_image = false;          ///< universal bracket image = 4 QP + 2ih
  bool quantum_quantum = false;   ///< [Q_j, P_j]_qq = (h1 + h2)/h_k
  bool qc_commutator = false;     ///< (1/ih)[Q^2, P^2] = 4 QP + 2ih

  bool all() const { return group_commutator && qc_image && quantum_quantum && qc_commutator; }
};

struct CalibrationReport {
  std::vector<ConventionTuple> passing;
  ConventionTuple chosen;
  std::size_t examined = 0;
  /// Whether all passing tuples give the same delta-notation brackets on a fixed battery.
  bool downstream_identical = true;
};

namespace detail {

inline ClassicalPoly q_pow(int dof, int sector, unsigned k) { return ClassicalPoly::q(dof, sector, 1).pow(k); }
inline ClassicalPoly p_pow(int dof, int sector, unsigned k) { return ClassicalPoly::p(dof, sector, 1).pow(k); }

/// 4 * (QP in the calibrated order) + sign * 2 i h.
inline HybridObservable squares_target(const GroupSignature& sig, int imaginary_sign) {
  Monomial qp(2 * static_cast<std::size_t>(sig.dof()));
  qp[0] = 1;
  qp[1] = 1;
  WeylOperator w = Coefficient(4) * ordered_product(sig, qp);
  w += WeylOperator::constant(sig, Coefficient(Complex(0, 2 * imaginary_sign), HbarPowers{1, 0}));
  return HybridObservable::from_weyl(w);
}

/// (h1 + h2) / h_k * Identity, where k is the other sector.
inline WeylOperator qq_target(const GroupSignature& sig, int j) {
  Coefficient c(1);
  c += Coefficient(Complex(1), j == 1 ? HbarPowers{1, -1} : HbarPowers{-1, 1});
  return WeylOperator::constant(sig, c);
}

inline std::string downstream_fingerprint(const GroupSignature& sig) {
  const int n = sig.dof();
  const std::vector<std::pair<ClassicalPoly, ClassicalPoly>> battery = {
      {q_pow(n, 1, 2), p_pow(n, 1, 2)},
      {q_pow(n, 1, 1), p_pow(n, 1, 2)},
      {q_pow(n, 1, 1) * p_pow(n, 1, 1), q_pow(n, 1, 2)},
      {q_pow(n, 2, 2), p_pow(n, 2, 1)},
      {q_pow(n, 1, 1) * q_pow(n, 2, 1), p_pow(n, 1, 1) * p_pow(n, 2, 1)},
  };
  std::string out;
  for (const auto& [f, g] : battery) {
    AObservable ub = universal_bracket(mechanise_weyl(f, sig), mechanise_weyl(g, sig));
    out += to_delta_string(ub.plain()) + "|" + to_delta_string(ub.a1()) + "|" + to_delta_string(ub.a2()) + ";";
  }
  return out;
}

}  // namespace detail

/// Evaluates every calibration identity under the tuple `t` (on D^1).
inline CalibrationCheck check_conventions(const ConventionTuple& t, const CalibrationTargets& targets = {}) {
  const GroupSignature sig(1, t);
  CalibrationCheck check;
  const Element b1 = mechanise_weyl(detail::q_pow(1, 1, 2), sig);
  const Element b2 = mechanise_weyl(detail::p_pow(1, 1, 2), sig);

  Monomial xys(sig.generator_count());
  xys[sig.s_index(1)] = 1;
  xys[sig.x_index(1, 1)] = 1;
  xys[sig.y_index(1, 1)] = 1;
  Monomial ss(sig.generator_count());
  ss[sig.s_index(1)] = 2;
  Element expected = Coefficient(4) * delta_to_element(sig, xys) + Coefficient(2) * delta_to_element(sig, ss);
  check.group_commutator = commutator(b1, b2) == expected;
  if (!check.group_commutator) return check;

  const HybridObservable target = detail::squares_target(sig, targets.imaginary_sign);
  check.qc_image = bracket_via_universal(b1, b2) == target;

  check.quantum_quantum = true;
  for (int j = 1; j <= 2; ++j) {
    const Element qj = mechanise_weyl(ClassicalPoly::q(1, j, 1), sig);
    const Element pj = mechanise_weyl(ClassicalPoly::p(1, j, 1), sig);
    check.quantum_quantum = check.quantum_quantum && rep_qq(universal_bracket(qj, pj)) == detail::qq_target(sig, j);
  }

  check.qc_commutator = qc_bracket(rep_qc(b1), rep_qc(b2)) == target;
  return check;
}

/// Exhaustive search of the finite convention space; the first passing tuple
/// in enumeration order (eps, kappa_x, kappa_y, kappa_s, orient, rep_s_sign,
/// qp_order; units ordered +1, -1, +i, -i; signs +1, -1; QP before PQ) is chosen.
inline CalibrationReport calibrate_conventions(const CalibrationTargets& targets = {}) {
  CalibrationReport report;
  for (Unit eps : kAllUnits)
    for (Unit kx : kAllUnits)
      for (Unit ky : kAllUnits)
        for (Unit ks : kAllUnits)
          for (int orient : {1, -1})
            for (int rep : {1, -1})
              for (ProductOrder order : {ProductOrder::kQP, ProductOrder::kPQ}) {
                ConventionTuple t{eps, kx, ky, ks, orient, rep, order};
                ++report.examined;
                if (check_conventions(t, targets).all()) report.passing.push_back(t);
              }
  if (report.passing.empty()) throw NoConsistentConvention();
  report.chosen = report.passing.front();
  const std::string reference = detail::downstream_fingerprint(GroupSignature(1, report.chosen));
  for (const auto& t : report.passing)
    if (detail::downstream_fingerprint(GroupSignature(1, t)) != reference) report.downstream_identical = false;
  return report;
}

}  // namespace pbracket

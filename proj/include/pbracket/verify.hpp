#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pbracket/calibrate.hpp"
#include "pbracket/oracle/checks.hpp"
#include "pbracket/properties.hpp"
#include "pbracket/qc_bracket.hpp"

namespace pbracket {

struct VerifyItem {
  std::string name;
  bool passed = false;
  std::string expected;
  std::string actual;
};

struct VerifyReport {
  std::uint64_t seed = 0;
  ConventionTuple convention;
  std::vector<VerifyItem> items;

  bool all_passed() const {
    for (const auto& i : items)
      if (!i.passed) return false;
    return true;
  }
};

namespace detail {

inline Element squares_b1(const GroupSignature& sig) { return mechanise_weyl(ClassicalPoly::q(sig.dof(), 1, 1).pow(2), sig); }
inline Element squares_b2(const GroupSignature& sig) { return mechanise_weyl(ClassicalPoly::p(sig.dof(), 1, 1).pow(2), sig); }

inline Element delta_of(const GroupSignature& sig, std::initializer_list<std::size_t> gens, int coeff) {
  DeltaIndex alpha(sig.generator_count());
  for (std::size_t g : gens) alpha[g] += 1;
  return Coefficient(coeff) * delta_to_element(sig, alpha);
}

inline std::string ordered_qp_name(const GroupSignature& sig) {
  return sig.convention().qp_order == ProductOrder::kPQ ? "P1*Q1" : "Q1*P1";
}

inline std::string property_text(const PropertyResult& r, std::uint64_t seed) {
  std::string s = std::to_string(r.instances) + " instances, seed " + std::to_string(seed);
  if (!r.passed) s += ", counterexample: " + r.counterexample;
  return s;
}

}  // namespace detail

/// Runs every claim check in a fixed order; results depend only on the
/// convention and the seed. Module errors become failed items.
inline VerifyReport verify_paper(const ConventionTuple& convention, std::uint64_t seed) {
  VerifyReport report;
  report.seed = seed;
  report.convention = convention;
  const GroupSignature sig(1, convention);

  auto run = [&report](const std::string& name, const std::function<void(VerifyItem&)>& body) {
    VerifyItem item{name, false, "", ""};
    try {
      body(item);
    } catch (const std::exception& e) {
      item.passed = false;
      item.actual = std::string("error: ") + e.what();
    }
    report.items.push_back(std::move(item));
  };

  run("calibration", [&](VerifyItem& it) {
    CalibrationReport cal = calibrate_conventions();
    bool member = false;
    for (const auto& t : cal.passing) member = member || t == convention;
    it.expected = "active tuple among the passing tuples";
    it.actual = std::to_string(cal.passing.size()) + " of " + std::to_string(cal.examined) +
                " tuples pass, first " + to_string(cal.chosen) + ", active " + to_string(convention) +
                (cal.downstream_identical ? ", downstream brackets identical" : ", downstream brackets differ");
    it.passed = member;
  });

  const std::size_t s1 = sig.s_index(1);
  const std::size_t x1 = sig.x_index(1, 1);
  const std::size_t y1 = sig.y_index(1, 1);

  run("squares_commutator", [&](VerifyItem& it) {
    Element expected = detail::delta_of(sig, {x1, y1, s1}, 4) + detail::delta_of(sig, {s1, s1}, 2);
    Element actual = commutator(detail::squares_b1(sig), detail::squares_b2(sig));
    it.expected = to_delta_string(expected);
    it.actual = to_delta_string(actual);
    it.passed = actual == expected;
  });

  run("squares_universal_bracket", [&](VerifyItem& it) {
    Element plain = detail::delta_of(sig, {x1, y1}, 4) + detail::delta_of(sig, {s1}, 2);
    Element a2 = detail::delta_of(sig, {x1, y1, s1}, 4) + detail::delta_of(sig, {s1, s1}, 2);
    AObservable expected(plain, Element(sig), a2);
    AObservable actual = universal_bracket(detail::squares_b1(sig), detail::squares_b2(sig));
    it.expected = to_delta_string(expected);
    it.actual = to_delta_string(actual);
    it.passed = actual == expected;
  });

  run("squares_qc_image", [&](VerifyItem& it) {
    HybridObservable target = detail::squares_target(sig, 1);
    HybridObservable via = bracket_via_universal(detail::squares_b1(sig), detail::squares_b2(sig));
    HybridObservable direct = qc_bracket(rep_qc(detail::squares_b1(sig)), rep_qc(detail::squares_b2(sig)));
    it.expected = "4*" + detail::ordered_qp_name(sig) + " + 2*i*h = " + to_string(target);
    it.actual = "universal image " + to_string(via) + "; (1/(i*h))[Q1^2, P1^2] " + to_string(direct);
    it.passed = via == target && direct == target;
  });

  run("classicality_gap", [&](VerifyItem& it) {
    HybridObservable expected = HybridObservable::constant(sig, Coefficient(Complex(0, 2), HbarPowers{1, 0}));
    HybridObservable actual = classicality_gap(detail::squares_b1(sig), detail::squares_b2(sig));
    it.expected = to_string(expected);
    it.actual = to_string(actual);
    it.passed = actual == expected && !actual.is_zero();
  });

  run("quantum_quantum_identity", [&](VerifyItem& it) {
    bool ok = true;
    for (int j = 1; j <= 2; ++j) {
      WeylOperator expected = detail::qq_target(sig, j);
      WeylOperator actual = rep_qq(universal_bracket(mechanise_weyl(ClassicalPoly::q(1, j, 1), sig),
                                                     mechanise_weyl(ClassicalPoly::p(1, j, 1), sig)));
      it.expected += (j == 1 ? "" : "; ") + std::string("j=") + std::to_string(j) + ": " + to_string(expected);
      it.actual += (j == 1 ? "" : "; ") + std::string("j=") + std::to_string(j) + ": " + to_string(actual);
      ok = ok && actual == expected;
    }
    it.passed = ok;
  });

  run("decoupling", [&](VerifyItem& it) {
    PropertyResult r = check_decoupling(sig, seed);
    it.expected = "brackets with H1 + H2 equal brackets with H2; [B, H1] = 0";
    it.actual = detail::property_text(r, seed);
    it.passed = r.passed;
  });

  run("path_equivalence", [&](VerifyItem& it) {
    PropertyResult r = check_path_equivalence(sig, seed + 1);
    it.expected = "universal image equals qc bracket of the images";
    it.actual = detail::property_text(r, seed + 1);
    it.passed = r.passed;
  });

  run("localized_reduction", [&](VerifyItem& it) {
    PropertyResult r = check_localized_reduction(sig, seed + 2);
    it.expected = "Poisson and jet terms vanish for sector-1 pairs";
    it.actual = detail::property_text(r, seed + 2);
    it.passed = r.passed;
  });

  run("classical_reduction", [&](VerifyItem& it) {
    PropertyResult r = check_classical_reduction(sig, seed + 3);
    it.expected = "qc bracket equals the Poisson bracket for sector-2 pairs";
    it.actual = detail::property_text(r, seed + 3);
    it.passed = r.passed;
  });

  run("h_eff", [&](VerifyItem& it) {
    bool symmetric = h_eff(Rational(1, 3), Rational(1, 3)) == Rational(1, 6);
    bool singular = false;
    try {
      h_eff(1, 0);
    } catch (const SingularTransformation&) {
      singular = true;
    }
    bool division = false;
    try {
      h_eff(1, -1);
    } catch (const DivisionByZero&) {
      division = true;
    }
    it.expected = "h_eff(h,h) = h/2; h_eff(1,0) singular; h_eff(1,-1) division by zero";
    it.actual = std::string("h_eff(1/3,1/3) = ") + to_string(h_eff(Rational(1, 3), Rational(1, 3))) +
                (singular ? "; singular" : "; not singular") + (division ? "; division by zero" : "; no error");
    it.passed = symmetric && singular && division;
  });

  for (const auto& o : oracle::run_oracle_checks(convention, seed)) {
    run("oracle_" + o.check, [&](VerifyItem& it) {
      it.expected = "pass";
      it.actual = std::string(o.passed ? "pass" : "fail") + " (inputs " + o.inputs_hash + ")";
      it.passed = o.passed;
    });
  }
  return report;
}

inline std::string to_text(const VerifyReport& r) {
  std::string out = "verify paper (seed " + std::to_string(r.seed) + ", convention " + to_string(r.convention) + ")\n";
  for (const auto& i : r.items) {
    out += std::string(i.passed ? "PASS " : "FAIL ") + i.name + "\n";
    out += "  expected: " + i.expected + "\n";
    out += "  actual:   " + i.actual + "\n";
  }
  std::size_t failed = 0;
  for (const auto& i : r.items) failed += i.passed ? 0 : 1;
  out += failed == 0 ? "all " + std::to_string(r.items.size()) + " items passed\n"
                     : std::to_string(failed) + " of " + std::to_string(r.items.size()) + " items failed\n";
  return out;
}

inline nlohmann::json to_json(const VerifyReport& r) {
  nlohmann::json items = nlohmann::json::array();
  for (const auto& i : r.items)
    items.push_back({{"name", i.name}, {"status", i.passed ? "pass" : "fail"}, {"expected", i.expected}, {"actual", i.actual}});
  return {{"seed", r.seed}, {"passed", r.all_passed()}, {"items", items}};
}

}  // namespace pbracket

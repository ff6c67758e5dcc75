// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "pbracket/calibrate.hpp"
#include "pbracket/oracle/checks.hpp"
#include "pbracket/properties.hpp"
#include "pbracket/verify.hpp"

using namespace pbracket;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

int failures = 0;

void criterion(int number, const char* title, double limit_seconds, const std::function<Outcome()>& body) {
  auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("error: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool in_time = limit_seconds <= 0 || secs < limit_seconds;
  bool ok = o.passed && in_time;
  if (!ok) ++failures;
  std::string limit = limit_seconds > 0 ? " (limit " + std::to_string(static_cast<int>(limit_seconds)) + " s)" : "";
  std::printf("criterion %2d %s  %-28s %.3f s%s  %s%s\n", number, ok ? "PASS" : "FAIL", title, secs, limit.c_str(),
              o.detail.c_str(), in_time ? "" : " [too slow]");
  std::fflush(stdout);
}

Element delta(const GroupSignature& sig, std::initializer_list<std::size_t> gens, int coeff) {
  DeltaIndex alpha(sig.generator_count());
  for (auto g : gens) alpha[g] += 1;
  return Coefficient(coeff) * delta_to_element(sig, alpha);
}

}  // namespace

int main() {
  const ConventionTuple conv = calibrate_conventions().chosen;
  const GroupSignature sig(1, conv);
  const std::size_t s1 = sig.s_index(1), x1 = sig.x_index(1, 1), y1 = sig.y_index(1, 1);
  const Element b1 = mechanise_weyl(ClassicalPoly::q(1, 1, 1).pow(2), sig);
  const Element b2 = mechanise_weyl(ClassicalPoly::p(1, 1, 1).pow(2), sig);
  std::printf("convention %s\n", to_string(conv).c_str());

  criterion(1, "squares commutator", 1, [&] {
    Element expected = delta(sig, {x1, y1, s1}, 4) + delta(sig, {s1, s1}, 2);
    Element c = commutator(b1, b2);
    bool fields = oracle::check_squares_fields(sig).passed;
    return Outcome{c == expected && fields, to_delta_string(c) + (fields ? ", vector fields agree" : ", vector fields disagree")};
  });

  criterion(2, "universal bracket", 1, [&] {
    AObservable expected(delta(sig, {x1, y1}, 4) + delta(sig, {s1}, 2), Element(sig),
                         delta(sig, {x1, y1, s1}, 4) + delta(sig, {s1, s1}, 2));
    AObservable ub = universal_bracket(b1, b2);
    return Outcome{ub == expected, to_delta_string(ub)};
  });

  criterion(3, "qc image", 0, [&] {
    HybridObservable target = detail::squares_target(sig, 1);
    HybridObservable via = bracket_via_universal(b1, b2);
    HybridObservable direct = qc_bracket(rep_qc(b1), rep_qc(b2));
    oracle::OracleReport m = oracle::check_squares_matrix(sig, 32);
    char err[64];
    std::snprintf(err, sizeof err, "%.2e", m.max_abs_error);
    return Outcome{via == target && direct == target && m.passed,
                   to_string(via) + ", matrix N=32 max error " + err};
  });

  criterion(4, "classicality gap", 0, [&] {
    HybridObservable gap = classicality_gap(b1, b2);
    HybridObservable expected = HybridObservable::constant(sig, Coefficient(Complex(0, 2), HbarPowers{1, 0}));
    return Outcome{gap == expected && !gap.is_zero(), to_string(gap)};
  });

  criterion(5, "quantum-quantum identity", 1, [&] {
    bool ok = true;
    std::string text;
    for (int j = 1; j <= 2; ++j) {
      WeylOperator r = rep_qq(universal_bracket(mechanise_weyl(ClassicalPoly::q(1, j, 1), sig),
                                                mechanise_weyl(ClassicalPoly::p(1, j, 1), sig)));
      ok = ok && r == detail::qq_target(sig, j);
      text += (j == 1 ? "" : "; ") + to_string(r);
    }
    return Outcome{ok, text};
  });

  criterion(6, "decoupling", 30, [&] {
    PropertyResult r = check_decoupling(sig, 1001, 200, 4);
    return Outcome{r.passed && r.instances == 200,
                   std::to_string(r.instances) + " instances, seed 1001" + (r.passed ? "" : ": " + r.counterexample)};
  });

  criterion(7, "path equivalence", 60, [&] {
    PropertyResult r = check_path_equivalence(sig, 1002, 100, 3);
    return Outcome{r.passed && r.instances == 100,
                   std::to_string(r.instances) + " pairs, seed 1002" + (r.passed ? "" : ": " + r.counterexample)};
  });

  criterion(8, "reductions", 0, [&] {
    PropertyResult loc = check_localized_reduction(sig, 1003, 50, 3);
    PropertyResult cls = check_classical_reduction(sig, 1004, 50, 3);
    return Outcome{loc.passed && cls.passed && loc.instances == 50 && cls.instances == 50,
                   std::to_string(loc.instances) + " localized + " + std::to_string(cls.instances) + " classical" +
                       (loc.passed ? "" : ", localized: " + loc.counterexample) +
                       (cls.passed ? "" : ", classical: " + cls.counterexample)};
  });

  criterion(9, "oracles and algebraic laws", 60, [&] {
    oracle::OracleReport pbw = oracle::check_pbw_product(sig, 1005, 100, 4);
    RandomSource rng(1006);
    const int n = 200;
    int assoc = 0, jacobi = 0, anti = 0, idem = 0;
    for (int k = 0; k < n; ++k) {
      Element a = random_element(rng, sig, 4, 3), b = random_element(rng, sig, 4, 3), c = random_element(rng, sig, 4, 3);
      assoc += multiply(multiply(a, b), c) == multiply(a, multiply(b, c));
      std::vector<std::pair<std::vector<std::size_t>, Coefficient>> words;
      for (const auto& [m, coeff] : a.terms()) words.emplace_back(word_of(m), coeff);
      idem += normalize(sig, words) == a;
      Element da = random_element(rng, sig, 3, 3), db = random_element(rng, sig, 3, 3), dc = random_element(rng, sig, 3, 3);
      jacobi += (commutator(da, commutator(db, dc)) + commutator(db, commutator(dc, da)) +
                 commutator(dc, commutator(da, db)))
                    .is_zero();
      anti += universal_bracket(da, db) == Coefficient(-1) * universal_bracket(db, da) &&
              qc_bracket(rep_qc(da), rep_qc(db)) == Coefficient(-1) * qc_bracket(rep_qc(db), rep_qc(da));
    }
    bool ok = pbw.passed && assoc == n && jacobi == n && anti == n && idem == n;
    return Outcome{ok, "pbw vs fields 100 pairs " + std::string(pbw.passed ? "agree" : "disagree") + "; associativity " +
                           std::to_string(assoc) + "/" + std::to_string(n) + ", Jacobi " + std::to_string(jacobi) +
                           "/" + std::to_string(n) + ", antisymmetry " + std::to_string(anti) + "/" +
                           std::to_string(n) + ", idempotence " + std::to_string(idem) + "/" + std::to_string(n)};
  });

  criterion(10, "h_eff", 0, [&] {
    bool symmetric = true;
    for (const Rational& h : {Rational(1), Rational(1, 3), Rational(-7, 2)}) symmetric = symmetric && h_eff(h, h) == h / 2;
    int singular = 0;
    for (const auto& [a, b] : {std::pair<Rational, Rational>{1, 0}, {0, 1}, {0, 0}, {Rational(-2, 3), 0}}) {
      try {
        h_eff(a, b);
      } catch (const SingularTransformation&) {
        ++singular;
      }
    }
    bool division = false;
    try {
      h_eff(1, -1);
    } catch (const DivisionByZero&) {
      division = true;
    }
    return Outcome{symmetric && singular == 4 && division,
                   std::string("h_eff(h,h) = h/2 ") + (symmetric ? "yes" : "no") + ", singular " +
                       std::to_string(singular) + "/4, division by zero " + (division ? "yes" : "no")};
  });

  criterion(11, "calibration", 0, [&] {
    auto start = std::chrono::steady_clock::now();
    CalibrationReport a = calibrate_conventions();
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CalibrationReport b = calibrate_conventions();
    bool deterministic = a.chosen == b.chosen && a.passing == b.passing;
    VerifyReport v1 = verify_paper(a.chosen, 42);
    VerifyReport v2 = verify_paper(a.chosen, 42);
    bool reproducible = to_text(v1) == to_text(v2) && to_json(v1).dump() == to_json(v2).dump();
    char t[32];
    std::snprintf(t, sizeof t, "%.3f", secs);
    return Outcome{secs < 5 && !a.passing.empty() && deterministic && reproducible && v1.all_passed(),
                   std::to_string(a.passing.size()) + " of " + std::to_string(a.examined) + " tuples pass in " + t + " s (limit 5)" +
                       ", selection " + (deterministic ? "deterministic" : "unstable") + ", verify paper " +
                       (reproducible ? "reproducible" : "not reproducible") +
                       (v1.all_passed() ? " and green" : " with failures")};
  });

  std::printf("%s\n", failures == 0 ? "all 11 criteria pass" : (std::to_string(failures) + " criteria fail").c_str());
  return failures == 0 ? 0 : 1;
}

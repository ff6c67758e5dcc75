#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "json.hpp"
#include "pbracket/calibrate.hpp"
#include "pbracket/oracle/matrix.hpp"
#include "pbracket/oracle/vector_field.hpp"
#include "pbracket/random.hpp"

namespace pbracket::oracle {

struct OracleReport {
  std::string check;
  std::string inputs_hash;
  bool passed = false;
  double max_abs_error = 0;
};

/// 64-bit FNV-1a, rendered as 16 hex digits.
inline std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline nlohmann::json to_json(const OracleReport& r) {
  return {{"check", r.check},
          {"inputs-hash", r.inputs_hash},
          {"status", r.passed ? "pass" : "fail"},
          {"max_abs_error", r.max_abs_error}};
}

inline constexpr double kMatrixTolerance = 1e-10;

/// Group commutator of two elements evaluated purely through vector fields:
/// orient * (D(a) D(b) - D(b) D(a)) on every probe, compared with D(expected).
inline bool commutator_matches_fields(const Element& a, const Element& b, const Element& expected,
                                      std::uint32_t probe_degree) {
  const int orient = a.signature().convention().orient;
  for (const auto& f : probe_monomials(a.signature(), probe_degree)) {
    CoordinatePoly ab = vector_field_action(a, vector_field_action(b, f));
    CoordinatePoly ba = vector_field_action(b, vector_field_action(a, f));
    CoordinatePoly lhs = ab - ba;
    if (orient < 0) lhs = CoordinatePoly(lhs.variable_count()) - lhs;
    if (!(lhs == vector_field_action(expected, f))) return false;
  }
  return true;
}

/// PBW product against composition of field actions: `pairs` random pairs of
/// degree <= max_degree, `probes` random probes each.
inline OracleReport check_pbw_product(const GroupSignature& sig, std::uint64_t seed, int pairs = 100,
                                      std::uint32_t max_degree = 4, int probes = 30) {
  OracleReport r{"pbw_product_vs_vector_fields",
                 fnv1a_hex("pbw|" + std::to_string(seed) + "|" + std::to_string(pairs) + "|" +
                           std::to_string(max_degree) + "|" + to_string(sig.convention())),
                 true, 0};
  RandomSource rng(seed);
  for (int k = 0; k < pairs && r.passed; ++k) {
    Element a = random_element(rng, sig, max_degree, 3);
    Element b = random_element(rng, sig, max_degree, 3);
    Element ab = multiply(a, b);
    for (int j = 0; j < probes; ++j) {
      CoordinatePoly f = random_probe(rng, sig, a.degree() + b.degree() + 2);
      if (!(vector_field_action(ab, f) == vector_field_action(a, vector_field_action(b, f)))) {
        r.passed = false;
        break;
      }
    }
  }
  return r;
}

/// Distinct normal forms must act differently on some probe of degree <= 6.
inline OracleReport check_faithfulness(const GroupSignature& sig, std::uint64_t seed, int pairs = 40) {
  OracleReport r{"vector_field_faithfulness",
                 fnv1a_hex("faithful|" + std::to_string(seed) + "|" + std::to_string(pairs) + "|" +
                           to_string(sig.convention())),
                 true, 0};
  RandomSource rng(seed);
  const auto probes = probe_monomials(sig, 6);
  for (int k = 0; k < pairs && r.passed; ++k) {
    Element a = random_element(rng, sig, 4, 3);
    Element b = random_element(rng, sig, 4, 3);
    if (a == b) continue;
    Element d = a - b;
    bool separated = false;
    for (const auto& f : probes) {
      if (!vector_field_action(d, f).is_zero()) {
        separated = true;
        break;
      }
    }
    r.passed = separated;
  }
  return r;
}

/// The group commutator of the two squares, recomputed through vector fields.
inline OracleReport check_squares_fields(const GroupSignature& sig) {
  OracleReport r{"group_commutator_vector_fields", fnv1a_hex("squares-fields|" + to_string(sig.convention())), false, 0};
  const Element b1 = mechanise_weyl(ClassicalPoly::q(sig.dof(), 1, 1).pow(2), sig);
  const Element b2 = mechanise_weyl(ClassicalPoly::p(sig.dof(), 1, 1).pow(2), sig);
  Monomial xys(sig.generator_count());
  xys[sig.s_index(1)] = 1;
  xys[sig.x_index(1, 1)] = 1;
  xys[sig.y_index(1, 1)] = 1;
  Monomial ss(sig.generator_count());
  ss[sig.s_index(1)] = 2;
  Element expected = Coefficient(4) * delta_to_element(sig, xys) + Coefficient(2) * delta_to_element(sig, ss);
  r.passed = commutator_matches_fields(b1, b2, expected, 6);
  return r;
}

/// (1/(ih)) [Q^2, P^2] by matrix products against the realized 4 QP + 2ih.
inline OracleReport check_squares_matrix(const GroupSignature& sig, std::size_t n = 32) {
  OracleReport r{"squares_image_matrix", fnv1a_hex("squares-matrix|" + std::to_string(n) + "|" + to_string(sig.convention())),
                 false, 0};
  const Rational h = 1;
  const WeylOperator target = detail::squares_target(sig, 1).to_weyl();
  ModeMatrices mm(sig, {0}, 1.0, 1.0, n);
  const Matrix& q = mm.q[0];
  const Matrix& p = mm.p[0];
  Matrix lhs = (q * q * p * p - p * p * q * q) / cplx(0, 1);
  Matrix rhs = matrix_realize(target, mm, h, h);
  r.max_abs_error = protected_max_error(lhs, rhs, n, 1, 4);
  r.passed = r.max_abs_error <= kMatrixTolerance;
  return r;
}

/// Realized [Q, P] against the calibrated scalar c h.
inline OracleReport check_canonical_matrix(const GroupSignature& sig, std::size_t n = 32) {
  OracleReport r{"canonical_commutator_matrix",
                 fnv1a_hex("ccr-matrix|" + std::to_string(n) + "|" + to_string(sig.convention())), false, 0};
  ModeMatrices mm(sig, {0}, 1.0, 1.0, n);
  Matrix lhs = mm.q[0] * mm.p[0] - mm.p[0] * mm.q[0];
  Matrix rhs = to_cplx(sig.convention().qp_commutator_unit()) * Matrix::Identity(mm.size(), mm.size());
  r.max_abs_error = protected_max_error(lhs, rhs, n, 1, 2);
  r.passed = r.max_abs_error <= kMatrixTolerance;
  return r;
}

/// Symbolic products of sector-1 quantum images against matrix products.
inline OracleReport check_weyl_products_matrix(const GroupSignature& sig, std::uint64_t seed, int pairs = 20,
                                               std::size_t n = 32) {
  OracleReport r{"weyl_product_matrix",
                 fnv1a_hex("weyl-matrix|" + std::to_string(seed) + "|" + std::to_string(pairs) + "|" +
                           std::to_string(n) + "|" + to_string(sig.convention())),
                 true, 0};
  RandomSource rng(seed);
  const Rational h1(1, 2);
  const Rational h2(1, 3);
  ModeMatrices mm(sig, {0}, h1.convert_to<double>(), h2.convert_to<double>(), n);
  const GroupSignature one(1, sig.convention());
  for (int k = 0; k < pairs; ++k) {
    WeylOperator a = rep_qq(random_element(rng, one, 3, 3, SectorMask::kSector1));
    WeylOperator b = rep_qq(random_element(rng, one, 3, 3, SectorMask::kSector1));
    Matrix lhs = matrix_realize(a * b, mm, h1, h2);
    Matrix rhs = matrix_realize(a, mm, h1, h2) * matrix_realize(b, mm, h1, h2);
    std::uint32_t deg = a.degree() + b.degree();
    double err = protected_max_error(lhs, rhs, n, 1, deg) / std::max(1.0, rhs.cwiseAbs().maxCoeff());
    r.max_abs_error = std::max(r.max_abs_error, err);
  }
  r.passed = r.max_abs_error <= kMatrixTolerance;
  return r;
}

/// The full oracle battery for `oracle check` and `verify paper`.
inline std::vector<OracleReport> run_oracle_checks(const ConventionTuple& convention, std::uint64_t seed) {
  const GroupSignature sig(1, convention);
  return {check_pbw_product(sig, seed),       check_faithfulness(sig, seed + 1), check_squares_fields(sig),
          check_squares_matrix(sig),              check_canonical_matrix(sig),
          check_weyl_products_matrix(sig, seed + 2)};
}

}  // namespace pbracket::oracle

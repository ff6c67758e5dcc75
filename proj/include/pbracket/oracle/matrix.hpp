#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <set>
#include <vector>

#include "pbracket/errors.hpp"
#include "pbracket/weyl.hpp"

namespace pbracket::oracle {

using Matrix = Eigen::MatrixXcd;
using cplx = std::complex<double>;

inline cplx to_cplx(const Complex& c) { return {c.real_double(), c.imag_double()}; }

/// Truncated ladder matrices on span{|0>, ..., |N-1>}: a|n> = sqrt(n)|n-1>.
inline Matrix annihilation(std::size_t n) {
  Matrix a = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t k = 1; k < n; ++k)
    a(static_cast<Eigen::Index>(k - 1), static_cast<Eigen::Index>(k)) = std::sqrt(static_cast<double>(k));
  return a;
}

/// Single-mode Q = sqrt(h/2)(a + a^+), P = (c/i) * i sqrt(h/2)(a^+ - a), so [Q, P] = c h
/// away from the truncation edge, c the calibrated commutator unit.
inline Matrix single_mode_q(double h, std::size_t n) {
  Matrix a = annihilation(n);
  return std::sqrt(h / 2) * (a + a.adjoint());
}
inline Matrix single_mode_p(double h, const Complex& unit, std::size_t n) {
  Matrix a = annihilation(n);
  const cplx scale = to_cplx(unit) * std::sqrt(h / 2);  // (c/i) * i
  return scale * (a.adjoint() - a);
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Embeds a single-mode matrix at position `slot` among `count` modes.
inline Matrix embed(const Matrix& m, std::size_t slot, std::size_t count, std::size_t n) {
  Matrix id = Matrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  Matrix out = Matrix::Identity(1, 1);
  for (std::size_t k = 0; k < count; ++k) out = kron(out, k == slot ? m : id);
  return out;
}

/// Modes (canonical pairs, numbered by their Q variable / 2) used by any of the operators.
inline std::vector<std::size_t> modes_of(std::initializer_list<const WeylOperator*> ops) {
  std::set<std::size_t> used;
  for (const WeylOperator* w : ops)
    for (const auto& [m, c] : w->terms())
      for (std::size_t v = 0; v < m.size(); ++v)
        if (m[v] != 0) used.insert(v / 2);
  if (used.empty()) used.insert(0);
  return {used.begin(), used.end()};
}

/// Q and P matrices for each listed mode; mode sector decides h1 or h2.
struct ModeMatrices {
  std::vector<std::size_t> modes;
  std::size_t n = 0;
  std::vector<Matrix> q;
  std::vector<Matrix> p;

  ModeMatrices(const GroupSignature& sig, std::vector<std::size_t> which, double h1, double h2, std::size_t dim)
      : modes(std::move(which)), n(dim) {
    const Complex unit = sig.convention().qp_commutator_unit();
    const std::size_t per_sector = static_cast<std::size_t>(sig.dof());
    for (std::size_t k = 0; k < modes.size(); ++k) {
      double h = modes[k] < per_sector ? h1 : h2;
      q.push_back(embed(single_mode_q(h, n), k, modes.size(), n));
      p.push_back(embed(single_mode_p(h, unit, n), k, modes.size(), n));
    }
  }

  Eigen::Index size() const { return q.empty() ? 1 : q.front().rows(); }

  std::size_t slot(std::size_t mode) const {
    auto it = std::find(modes.begin(), modes.end(), mode);
    if (it == modes.end()) throw Error("operator uses a mode outside the realization");
    return static_cast<std::size_t>(it - modes.begin());
  }
};

/// Realizes a normal-ordered Weyl operator as a product of truncated matrices.
/// Each canonical pair gets its own N-dimensional factor.
inline Matrix matrix_realize(const WeylOperator& w, const ModeMatrices& mm, const Rational& h1, const Rational& h2) {
  if (mm.n < w.degree() + 2) throw DimensionTooSmall(mm.n, w.degree() + 2);
  Matrix out = Matrix::Zero(mm.size(), mm.size());
  for (const auto& [m, c] : w.terms()) {
    Coefficient value = c.substitute(1, h1).substitute(2, h2);
    Matrix term = Matrix::Identity(mm.size(), mm.size());
    for (std::size_t v = 0; v < m.size(); ++v) {
      if (m[v] == 0) continue;
      std::size_t k = mm.slot(v / 2);
      const Matrix& factor = v % 2 == 0 ? mm.q[k] : mm.p[k];
      for (std::uint32_t e = 0; e < m[v]; ++e) term = term * factor;
    }
    out += to_cplx(value.constant_term()) * term;
  }
  return out;
}

inline Matrix matrix_realize(const WeylOperator& w, const Rational& h1, const Rational& h2, std::size_t n) {
  ModeMatrices mm(w.signature(), modes_of({&w}), h1.convert_to<double>(), h2.convert_to<double>(), n);
  return matrix_realize(w, mm, h1, h2);
}

/// Largest entry of (a - b) over basis columns whose every mode index is below n - degree.
inline double protected_max_error(const Matrix& a, const Matrix& b, std::size_t n, std::size_t modes,
                                  std::uint32_t degree) {
  const std::size_t limit = n > degree ? n - degree : 0;
  double worst = 0;
  for (Eigen::Index col = 0; col < a.cols(); ++col) {
    std::size_t rest = static_cast<std::size_t>(col);
    bool inside = true;
    for (std::size_t k = 0; k < modes; ++k) {
      if (rest % n >= limit) inside = false;
      rest /= n;
    }
    if (!inside) continue;
    worst = std::max(worst, (a.col(col) - b.col(col)).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace pbracket::oracle

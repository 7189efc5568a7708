#pragma once

// Desk-scale symplectic checks around the cotangent bundle of P(F^n):
// Kostant-Kirillov pairing through the trace form, rank-one moment-map
// points, annihilators of a subalgebra, and orbit-dimension comparisons.
// Throughout, the dual of sl_n is identified with sl_n via (x, y) -> tr(xy).

#include <optional>
#include <stdexcept>
#include <vector>

#include "spherocheck/exactla.hpp"
#include "spherocheck/rep_build.hpp"

namespace spherocheck::symp {

using la::QMatrix;
using la::QVector;
using la::Rat;

struct CoadjointPoint {
  QMatrix x;  // trace-zero matrix representing the functional tr(x . )

  explicit CoadjointPoint(QMatrix m) : x(std::move(m)) {
    if (x.rows() != x.cols()) throw std::invalid_argument("CoadjointPoint: square matrix required");
    if (x.trace() != 0) throw std::invalid_argument("CoadjointPoint: trace must vanish");
  }
};

// omega_x(p, q) = x([p, q]) = tr(X [p, q])
inline Rat kk_form(const CoadjointPoint& x, const QMatrix& p, const QMatrix& q) {
  if (p.rows() != x.x.rows() || q.rows() != x.x.rows() || p.rows() != p.cols() ||
      q.rows() != q.cols())
    throw std::invalid_argument("kk_form: shape mismatch");
  return (x.x * la::bracket(p, q)).trace();
}

// w xi^T for a conormal pair (xi annihilates the line through w); the result
// is a trace-zero square-zero matrix of rank <= 1.
inline QMatrix moment_image_point(const QVector& w, const QVector& xi) {
  if (w.size() != xi.size()) throw std::invalid_argument("moment_image_point: shape mismatch");
  Rat pairing = 0;
  for (std::size_t i = 0; i < w.size(); ++i) pairing += xi[i] * w[i];
  if (pairing != 0)
    throw std::invalid_argument("moment_image_point: covector does not annihilate the line");
  QMatrix m(w.size(), w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 0) continue;
    for (std::size_t j = 0; j < w.size(); ++j)
      if (xi[j] != 0) m(i, j) = w[i] * xi[j];
  }
  return m;
}

inline std::vector<QMatrix> sl_basis(std::size_t n) {
  std::vector<QMatrix> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      QMatrix e(n, n);
      e(i, j) = 1;
      out.push_back(e);
    }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    QMatrix h(n, n);
    h(i, i) = 1;
    h(i + 1, i + 1) = -1;
    out.push_back(h);
  }
  return out;
}

// basis of {X in sl_n : tr(X b) = 0 for every basis element b}
inline std::vector<QMatrix> perp_space(const rep::SubalgebraInGl& sub) {
  const std::size_t n = sub.ambient_dim;
  QMatrix rows(sub.basis.size() + 1, n * n);
  for (std::size_t k = 0; k < sub.basis.size(); ++k) {
    QMatrix bt = sub.basis[k].transpose();
    QVector v = bt.vec();
    for (std::size_t j = 0; j < n * n; ++j) rows(k, j) = v[j];
  }
  {
    QVector id = QMatrix::identity(n).vec();  // the sl_n constraint tr(X) = 0
    for (std::size_t j = 0; j < n * n; ++j) rows(sub.basis.size(), j) = id[j];
  }
  std::vector<QMatrix> out;
  for (const auto& v : la::kernel_basis(rows)) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = v[i * n + j];
    out.push_back(std::move(m));
  }
  return out;
}

inline bool in_perp(const rep::SubalgebraInGl& sub, const QMatrix& x) {
  if (x.trace() != 0) return false;
  for (const auto& b : sub.basis)
    if ((x * b).trace() != 0) return false;
  return true;
}

// For x in the annihilator of the subalgebra the pairing x([k1, k2]) vanishes
// identically; an exact sanity check of the whole pipeline.
inline bool isotropy_check(const rep::SubalgebraInGl& sub, const CoadjointPoint& x) {
  if (!in_perp(sub, x.x))
    throw std::invalid_argument("isotropy_check: point is not in the annihilator");
  for (std::size_t i = 0; i < sub.basis.size(); ++i)
    for (std::size_t j = i + 1; j < sub.basis.size(); ++j)
      if (kk_form(x, sub.basis[i], sub.basis[j]) != 0) return false;
  return true;
}

// rank of b |-> [b, X]: the dimension of the orbit through x of the group
// generated by the given matrices, acting coadjointly via the trace form.
inline std::size_t orbit_dimension(const std::vector<QMatrix>& basis,
                                   const CoadjointPoint& x) {
  if (basis.empty()) return 0;
  std::vector<QVector> cols;
  cols.reserve(basis.size());
  for (const auto& b : basis) cols.push_back(la::bracket(b, x.x).vec());
  return la::rank(la::from_columns(cols));
}

inline std::size_t matrix_rank(const QMatrix& m) { return la::rank(m); }

// K-orbit dimension equals half the ambient orbit dimension at a generic
// point of a conical Lagrangian. Points must be rank <= 1, square-zero and
// inside the annihilator; x = 0 is degenerate and reported as not applicable.
inline std::optional<bool> lagrangian_check(const rep::SubalgebraInGl& sub,
                                            const CoadjointPoint& x) {
  if (!in_perp(sub, x.x))
    throw std::invalid_argument("lagrangian_check: point is not in the annihilator");
  if (!(x.x * x.x).is_zero() || la::rank(x.x) > 1)
    throw std::invalid_argument("lagrangian_check: point is not a rank <= 1 nilpotent");
  if (x.x.is_zero()) return std::nullopt;
  std::size_t korbit = orbit_dimension(sub.basis, x);
  std::size_t gorbit = orbit_dimension(sl_basis(sub.ambient_dim), x);
  return 2 * korbit == gorbit;
}

// Covectors xi with xi(w) = 0 and xi(b w) = 0 for all b: exactly the xi for
// which w xi^T lands in the annihilator of the subalgebra.
inline std::vector<QVector> conormal_directions(const rep::SubalgebraInGl& sub,
                                                const QVector& w) {
  const std::size_t n = sub.ambient_dim;
  if (w.size() != n) throw std::invalid_argument("conormal_directions: dimension mismatch");
  QMatrix rows(sub.basis.size() + 1, n);
  for (std::size_t j = 0; j < n; ++j) rows(0, j) = w[j];
  for (std::size_t k = 0; k < sub.basis.size(); ++k) {
    QVector bw = sub.basis[k] * w;
    for (std::size_t j = 0; j < n; ++j) rows(k + 1, j) = bw[j];
  }
  return la::kernel_basis(rows);
}

}  // namespace spherocheck::symp

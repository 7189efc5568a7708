#pragma once

// The decision engine: open-orbit rank tests for a Borel subalgebra acting on
// P(W) and Gr(r, W), the boundedness verdict, and normalizers in gl(W).
//
// A Spherical verdict is sound: the witness point achieves full tangent rank
// over exact rationals (and is re-verified through an independent elimination
// path). NotSpherical is only ever certified by a dimension count or by a
// multiplicity >= 2 certificate from the symmetric-algebra oracle. Failed
// trials alone yield Undetermined.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "spherocheck/exactla.hpp"
#include "spherocheck/mult_free.hpp"
#include "spherocheck/rep_build.hpp"

namespace spherocheck::sph {

using la::QMatrix;
using la::QVector;
using la::Rat;

enum class Status { Spherical, NotSpherical, Undetermined };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::Spherical: return "Spherical";
    case Status::NotSpherical: return "NotSpherical";
    case Status::Undetermined: return "Undetermined";
  }
  return "?";
}

struct Witness {
  QVector point;
  std::size_t achieved_rank = 0;
  std::uint64_t seed = 0;
  unsigned trial = 0;
};

struct DimensionCount {
  std::size_t effective_borel_dim = 0;  // modulo scalars, which act trivially
  std::size_t borel_count = 0;          // raw number of Borel basis elements
  std::size_t required = 0;
};

struct Verdict {
  Status status = Status::Undetermined;
  std::optional<Witness> witness;
  std::optional<DimensionCount> dimension_count;
  std::optional<mf::Certificate> certificate;
  unsigned trials_used = 0;
};

// rank of b |-> b w modulo the line F w, over the Borel basis
inline std::size_t projective_tangent_rank(const rep::SubalgebraInGl& sub,
                                           const QVector& w) {
  if (w.size() != sub.ambient_dim)
    throw std::invalid_argument("projective_tangent_rank: dimension mismatch");
  if (la::is_zero(w)) throw std::invalid_argument("projective_tangent_rank: zero vector");
  std::vector<QVector> cols;
  cols.reserve(sub.borel.size() + 1);
  for (std::size_t b : sub.borel) cols.push_back(sub.basis[b] * w);
  cols.push_back(w);
  return la::rank(la::from_columns(cols)) - 1;
}

// independent re-verification of the same rank through the rref/kernel path
inline std::size_t projective_tangent_rank_kernel_route(const rep::SubalgebraInGl& sub,
                                                        const QVector& w) {
  std::vector<QVector> cols;
  for (std::size_t b : sub.borel) cols.push_back(sub.basis[b] * w);
  cols.push_back(w);
  QMatrix m = la::from_columns(cols);
  return m.cols() - la::kernel_basis(m).size() - 1;
}

// dim of the Borel span modulo scalar matrices; bounds every point rank
inline std::size_t effective_borel_dim(const rep::SubalgebraInGl& sub) {
  std::vector<QVector> cols;
  for (std::size_t b : sub.borel) cols.push_back(sub.basis[b].vec());
  cols.push_back(QMatrix::identity(sub.ambient_dim).vec());
  return la::rank(la::from_columns(cols)) - 1;
}

namespace detail {

inline Verdict spherical_projective_impl(const rep::SubalgebraInGl& sub,
                                         const la::SampleConfig& cfg,
                                         const rep::PairSpec* oracle_spec,
                                         unsigned dmax, std::size_t oracle_cap) {
  Verdict v;
  const std::size_t target = sub.ambient_dim - 1;
  if (sub.borel.size() < target) {
    DimensionCount dc;
    dc.effective_borel_dim = effective_borel_dim(sub);
    dc.borel_count = sub.borel.size();
    dc.required = target;
    v.status = Status::NotSpherical;
    v.dimension_count = dc;
    return v;
  }
  for (unsigned t = 0; t < cfg.trials; ++t) {
    QVector w = la::random_vector(sub.ambient_dim, cfg, t);
    ++v.trials_used;
    if (la::is_zero(w)) continue;
    std::size_t r = projective_tangent_rank(sub, w);
    if (r == target) {
      if (projective_tangent_rank_kernel_route(sub, w) != target)
        throw std::logic_error("sphericity: witness failed independent re-verification");
      v.status = Status::Spherical;
      v.witness = Witness{w, r, cfg.seed, t};
      return v;
    }
  }
  if (oracle_spec) {
    auto cert = mf::nonspherical_certificate(*oracle_spec, dmax, oracle_cap);
    if (cert) {
      v.status = Status::NotSpherical;
      v.certificate = cert;
      return v;
    }
  }
  v.status = Status::Undetermined;
  return v;
}

}  // namespace detail

inline Verdict is_spherical_projective(const rep::SubalgebraInGl& sub,
                                       const la::SampleConfig& cfg) {
  return detail::spherical_projective_impl(sub, cfg, nullptr, 0, 64);
}

// Variant that consults the symmetric-algebra oracle (up to degree dmax) for
// a NotSpherical certificate when no witness is found.
inline Verdict is_spherical_projective(const rep::SubalgebraInGl& sub,
                                       const la::SampleConfig& cfg,
                                       const rep::PairSpec& oracle_spec,
                                       unsigned dmax = 6, std::size_t oracle_cap = 64) {
  return detail::spherical_projective_impl(sub, cfg, &oracle_spec, dmax, oracle_cap);
}

// Boundedness verdict: scalars act trivially on P(W), so the decision equals
// the projective sphericity test with scalar center directions quotiented
// away (the rank test mods out the line F w pointwise and the dimension count
// is taken modulo scalar matrices).
inline Verdict is_bounded(const rep::SubalgebraInGl& sub, const la::SampleConfig& cfg) {
  if (!sub.semisimple_traceless)
    throw std::invalid_argument("is_bounded: semisimple part must be traceless");
  return is_spherical_projective(sub, cfg);
}

inline Verdict is_bounded(const rep::SubalgebraInGl& sub, const la::SampleConfig& cfg,
                          const rep::PairSpec& oracle_spec, unsigned dmax = 6,
                          std::size_t oracle_cap = 64) {
  if (!sub.semisimple_traceless)
    throw std::invalid_argument("is_bounded: semisimple part must be traceless");
  return is_spherical_projective(sub, cfg, oracle_spec, dmax, oracle_cap);
}

// ---------------------------------------------------------------------------
// Grassmannian tangent rank: b |-> (u |-> b u mod U) into Hom(U, W/U).

inline std::size_t grassmannian_tangent_rank(const rep::SubalgebraInGl& sub,
                                             const QMatrix& u) {
  const std::size_t n = sub.ambient_dim, r = u.cols();
  if (u.rows() != n) throw std::invalid_argument("grassmannian_tangent_rank: shape mismatch");
  if (r == 0 || r >= n) throw std::invalid_argument("grassmannian_tangent_rank: r out of range");
  if (la::rank(u) != r)
    throw std::invalid_argument("grassmannian_tangent_rank: dependent columns");
  // complement basis: unit vectors at the non-pivot rows of the column space
  la::Rref rr = la::rref(u.transpose());
  std::vector<bool> piv_row(n, false);
  for (std::size_t c : rr.pivots) piv_row[c] = true;
  QMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < r; ++j) a(i, j) = u(i, j);
  std::size_t k = r;
  std::vector<std::size_t> comp;
  for (std::size_t i = 0; i < n; ++i)
    if (!piv_row[i]) {
      a(i, k) = 1;
      comp.push_back(k);
      ++k;
    }
  // inverse of the change of basis [U | complement]
  QMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  la::Rref inv = la::rref(aug);
  if (inv.rank != n) throw std::logic_error("grassmannian_tangent_rank: singular basis");
  QMatrix ainv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) ainv(i, j) = inv.mat(i, n + j);

  std::vector<QVector> cols;
  cols.reserve(sub.borel.size());
  for (std::size_t b : sub.borel) {
    QVector col;
    col.reserve(r * (n - r));
    for (std::size_t j = 0; j < r; ++j) {
      QVector uj(n);
      for (std::size_t i = 0; i < n; ++i) uj[i] = u(i, j);
      QVector y = ainv * (sub.basis[b] * uj);
      for (std::size_t i = r; i < n; ++i) col.push_back(y[i]);
    }
    cols.push_back(std::move(col));
  }
  return la::rank(la::from_columns(cols));
}

// r independent random columns; streams advance until independence holds
inline QMatrix random_subspace(std::size_t dim, std::size_t r, const la::SampleConfig& cfg,
                               std::uint64_t stream_base = 1u << 16) {
  for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
    std::vector<QVector> cols;
    for (std::size_t j = 0; j < r; ++j)
      cols.push_back(la::random_vector(dim, cfg, stream_base + attempt * r + j));
    QMatrix u = la::from_columns(cols);
    if (la::rank(u) == r) return u;
  }
  throw std::logic_error("random_subspace: could not sample independent columns");
}

// Verdict for Gr(r, W) by witness trials (dimension count as the only
// negative certificate; the symmetric-algebra oracle speaks about P(W) only).
inline Verdict is_spherical_grassmannian(const rep::SubalgebraInGl& sub, std::size_t r,
                                         const la::SampleConfig& cfg) {
  Verdict v;
  const std::size_t n = sub.ambient_dim;
  const std::size_t target = r * (n - r);
  if (sub.borel.size() < target) {
    DimensionCount dc;
    dc.effective_borel_dim = effective_borel_dim(sub);
    dc.borel_count = sub.borel.size();
    dc.required = target;
    v.status = Status::NotSpherical;
    v.dimension_count = dc;
    return v;
  }
  for (unsigned t = 0; t < cfg.trials; ++t) {
    QMatrix u = random_subspace(n, r, cfg, (static_cast<std::uint64_t>(t) + 1) << 20);
    ++v.trials_used;
    std::size_t rk = grassmannian_tangent_rank(sub, u);
    if (rk == target) {
      v.status = Status::Spherical;
      Witness w;
      w.achieved_rank = rk;
      w.seed = cfg.seed;
      w.trial = t;
      for (std::size_t j = 0; j < u.cols(); ++j)
        for (std::size_t i = 0; i < n; ++i) w.point.push_back(u(i, j));
      v.witness = w;
      return v;
    }
  }
  v.status = Status::Undetermined;
  return v;
}

// ---------------------------------------------------------------------------
// Normalizer of a span inside gl(W).

inline QMatrix matrix_from_vec(const QVector& v, std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = v[i * n + j];
  return m;
}

inline std::vector<QMatrix> gl_basis(std::size_t n) {
  std::vector<QMatrix> out;
  out.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      QMatrix e(n, n);
      e(i, j) = 1;
      out.push_back(e);
    }
  return out;
}

// {x in gl(W) : [x, b] in span(basis) for all b}, as the kernel of one exact
// linear system. Cost grows like n^6; intended for desk-scale ambient
// dimensions (the table harness uses the structural route below instead).
inline std::vector<QMatrix> normalizer_in_gl(const std::vector<QMatrix>& basis,
                                             std::size_t n) {
  if (basis.empty()) return gl_basis(n);
  std::vector<QVector> rows;
  for (const auto& b : basis) {
    if (b.rows() != n || b.cols() != n)
      throw std::invalid_argument("normalizer_in_gl: ambient dimension mismatch");
    rows.push_back(b.vec());
  }
  {
    QMatrix m = la::from_columns(rows);  // columns are the basis vectors
    if (la::rank(m) != basis.size())
      throw std::invalid_argument("normalizer_in_gl: basis not linearly independent");
  }
  QMatrix span_rows(basis.size(), n * n);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < n * n; ++j) span_rows(i, j) = rows[i][j];
  std::vector<QVector> ann = la::kernel_basis(span_rows);
  if (ann.empty()) return gl_basis(n);  // span is all of gl(W)

  std::optional<QMatrix> k;  // columns span the current solution space
  for (const auto& b : basis) {
    QMatrix bt = b.transpose();
    QMatrix c(ann.size(), n * n);
    for (std::size_t a = 0; a < ann.size(); ++a) {
      QMatrix phi = matrix_from_vec(ann[a], n);
      QVector row = (phi * bt - bt * phi).vec();
      for (std::size_t j = 0; j < n * n; ++j) c(a, j) = row[j];
    }
    QMatrix r = k ? c * *k : c;
    std::vector<QVector> kern = la::kernel_basis(r);
    if (kern.empty()) {
      k = QMatrix(n * n, 0);
      break;
    }
    QMatrix kk = la::from_columns(kern);
    k = k ? *k * kk : kk;
  }
  std::vector<QMatrix> out;
  for (std::size_t j = 0; j < k->cols(); ++j) {
    QVector v(n * n);
    for (std::size_t i = 0; i < n * n; ++i) v[i] = (*k)(i, j);
    out.push_back(matrix_from_vec(v, n));
  }
  return out;
}

// Structural normalizer of an assembled k (+) c. For a semisimple k acting
// completely reducibly every derivation ad(x) preserving k is inner, so
//   N_gl(k (+) c) = k (+) { z in C(k) : [z, c] c= c },
// and C(k) has one matrix unit per ordered pair of isomorphic summands.
struct NormalizerReport {
  std::size_t normalizer_dim = 0;
  std::size_t centralizer_dim = 0;
  std::size_t z_dim = 0;       // solutions z in C(k) with [z, c] c= c
  std::size_t center_rank = 0; // dim of the span of the center generators
  bool condition = false;      // k (+) c equals its own normalizer
};

inline NormalizerReport structural_normalizer(const rep::SubalgebraInGl& sub) {
  const std::size_t ns = sub.summand_dims.size();
  // ordered pairs of isomorphic summands
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t s = 0; s < ns; ++s)
    for (std::size_t t = 0; t < ns; ++t)
      if (sub.summand_words[s] == sub.summand_words[t]) pairs.push_back({s, t});
  const std::size_t cdim = pairs.size();
  const std::size_t ng = sub.center.size();

  // center generators in centralizer coordinates
  QMatrix v(cdim, ng);
  for (std::size_t g = 0; g < ng; ++g)
    for (std::size_t p = 0; p < cdim; ++p)
      if (pairs[p].first == pairs[p].second) v(p, g) = sub.center[g][pairs[p].first];
  std::size_t center_rank = ng == 0 ? 0 : la::rank(v);

  // constraints: for every annihilator row a of the center span and every
  // generator g:  sum_p a_p (m_{g,t_p} - m_{g,s_p}) x_p = 0
  std::vector<QVector> ann = la::kernel_basis(v.transpose());
  std::vector<QVector> crows;
  for (std::size_t g = 0; g < ng; ++g)
    for (const auto& a : ann) {
      QVector row(cdim, Rat(0));
      bool nonzero = false;
      for (std::size_t p = 0; p < cdim; ++p) {
        int d = sub.center[g][pairs[p].second] - sub.center[g][pairs[p].first];
        if (d != 0 && a[p] != 0) {
          row[p] = a[p] * d;
          nonzero = true;
        }
      }
      if (nonzero) crows.push_back(std::move(row));
    }
  std::size_t zdim;
  if (crows.empty()) {
    zdim = cdim;
  } else {
    QMatrix c(crows.size(), cdim);
    for (std::size_t i = 0; i < crows.size(); ++i)
      for (std::size_t j = 0; j < cdim; ++j) c(i, j) = crows[i][j];
    zdim = la::kernel_basis(c).size();
  }
  NormalizerReport rep;
  rep.centralizer_dim = cdim;
  rep.z_dim = zdim;
  rep.center_rank = center_rank;
  rep.normalizer_dim = sub.semisimple_dim + zdim;
  rep.condition = (zdim == center_rank);
  return rep;
}

// Self-normalizer condition: the assembled k (+) c equals its normalizer in
// gl(W). Small ambient dimensions go through the generic one-system kernel;
// larger ones through the structural route (both exact, checked against each
// other in the test suite).
inline bool normalizer_condition_holds(const rep::PairSpec& spec, std::size_t cap = 64) {
  rep::SubalgebraInGl sub = rep::assemble(spec, cap);
  if (sub.ambient_dim <= 12) {
    std::vector<QMatrix> n = normalizer_in_gl(sub.basis, sub.ambient_dim);
    return n.size() == sub.basis.size();
  }
  return structural_normalizer(sub).condition;
}

}  // namespace spherocheck::sph

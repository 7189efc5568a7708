#pragma once

// Exact linear algebra over the rationals: dense matrices with GMP rational
// entries, fraction-free rank, kernel bases, modular-rank prefilters and a
// deterministic bounded-height sampler.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace spherocheck::la {

using Rat = mpq_class;
using Int = mpz_class;
using QVector = std::vector<Rat>;

struct bad_prime : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct cap_exceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class QMatrix {
public:
  QMatrix() : rows_(0), cols_(0) {}
  QMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {}

  static QMatrix identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }

  bool operator==(const QMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

  bool is_zero() const {
    for (const Rat& x : a_)
      if (x != 0) return false;
    return true;
  }

  QMatrix transpose() const {
    QMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  QMatrix operator+(const QMatrix& o) const {
    require_same_shape(o);
    QMatrix r(rows_, cols_);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
    return r;
  }

  QMatrix operator-(const QMatrix& o) const {
    require_same_shape(o);
    QMatrix r(rows_, cols_);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
    return r;
  }

  QMatrix operator*(const QMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("QMatrix: shape mismatch in product");
    QMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Rat& x = (*this)(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) {
          const Rat& y = o(k, j);
          if (y != 0) r(i, j) += x * y;
        }
      }
    return r;
  }

  QMatrix operator*(const Rat& s) const {
    QMatrix r(rows_, cols_);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] * s;
    return r;
  }

  QVector operator*(const QVector& v) const {
    if (cols_ != v.size()) throw std::invalid_argument("QMatrix: shape mismatch in mat*vec");
    QVector r(rows_, Rat(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(i, j) != 0 && v[j] != 0) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  Rat trace() const {
    if (rows_ != cols_) throw std::invalid_argument("QMatrix: trace of non-square matrix");
    Rat t = 0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  // Flattened row-major copy of the entries.
  QVector vec() const { return a_; }

  // Kronecker product, row-major convention.
  QMatrix kron(const QMatrix& o) const {
    QMatrix r(rows_ * o.rows_, cols_ * o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) {
        const Rat& x = (*this)(i, j);
        if (x == 0) continue;
        for (std::size_t k = 0; k < o.rows_; ++k)
          for (std::size_t l = 0; l < o.cols_; ++l)
            if (o(k, l) != 0) r(i * o.rows_ + k, j * o.cols_ + l) = x * o(k, l);
      }
    return r;
  }

  QMatrix direct_sum(const QMatrix& o) const {
    QMatrix r(rows_ + o.rows_, cols_ + o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
    for (std::size_t i = 0; i < o.rows_; ++i)
      for (std::size_t j = 0; j < o.cols_; ++j) r(rows_ + i, cols_ + j) = o(i, j);
    return r;
  }

private:
  void require_same_shape(const QMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument("QMatrix: shape mismatch");
  }

  std::size_t rows_, cols_;
  std::vector<Rat> a_;
};

inline QMatrix bracket(const QMatrix& a, const QMatrix& b) { return a * b - b * a; }

inline QMatrix from_columns(const std::vector<QVector>& cols) {
  if (cols.empty()) return QMatrix(0, 0);
  QMatrix m(cols[0].size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != cols[0].size())
      throw std::invalid_argument("from_columns: ragged columns");
    for (std::size_t i = 0; i < cols[j].size(); ++i) m(i, j) = cols[j][i];
  }
  return m;
}

// Exact rank by fraction-free (Bareiss) elimination. Rows are first scaled to
// integers; pivoting picks the smallest nonzero entry to damp coefficient
// growth. Divisions below are exact by Sylvester's identity.
inline std::size_t rank(const QMatrix& m) {
  const std::size_t nr = m.rows(), nc = m.cols();
  if (nr == 0 || nc == 0) return 0;
  std::vector<std::vector<Int>> a(nr, std::vector<Int>(nc));
  for (std::size_t i = 0; i < nr; ++i) {
    Int l = 1;
    for (std::size_t j = 0; j < nc; ++j) l = lcm(l, m(i, j).get_den());
    for (std::size_t j = 0; j < nc; ++j) {
      Rat scaled = m(i, j) * Rat(l);
      a[i][j] = scaled.get_num();
    }
  }
  Int prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < nc && r < nr; ++c) {
    std::size_t piv = nr;
    for (std::size_t i = r; i < nr; ++i) {
      if (a[i][c] == 0) continue;
      if (piv == nr || mpz_cmpabs(a[i][c].get_mpz_t(), a[piv][c].get_mpz_t()) < 0) piv = i;
    }
    if (piv == nr) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = r + 1; i < nr; ++i) {
      for (std::size_t j = c + 1; j < nc; ++j) {
        Int t = a[i][j] * a[r][c] - a[i][c] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

struct Rref {
  QMatrix mat;                      // reduced row-echelon form
  std::vector<std::size_t> pivots;  // pivot column per nonzero row
  std::size_t rank = 0;
};

inline Rref rref(const QMatrix& m) {
  Rref out;
  out.mat = m;
  QMatrix& a = out.mat;
  const std::size_t nr = a.rows(), nc = a.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < nc && r < nr; ++c) {
    std::size_t piv = nr;
    for (std::size_t i = r; i < nr; ++i)
      if (a(i, c) != 0) { piv = i; break; }
    if (piv == nr) continue;
    if (piv != r)
      for (std::size_t j = 0; j < nc; ++j) swap(a(piv, j), a(r, j));
    Rat inv = 1 / a(r, c);
    for (std::size_t j = c; j < nc; ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < nr; ++i) {
      if (i == r || a(i, c) == 0) continue;
      Rat f = a(i, c);
      for (std::size_t j = c; j < nc; ++j) a(i, j) -= f * a(r, j);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rank = r;
  return out;
}

// Basis of the exact null space {x : Mx = 0}, one vector per free column.
inline std::vector<QVector> kernel_basis(const QMatrix& m) {
  const std::size_t nc = m.cols();
  Rref rr = rref(m);
  std::vector<bool> is_pivot(nc, false);
  for (std::size_t c : rr.pivots) is_pivot[c] = true;
  std::vector<QVector> basis;
  for (std::size_t f = 0; f < nc; ++f) {
    if (is_pivot[f]) continue;
    QVector v(nc, Rat(0));
    v[f] = 1;
    for (std::size_t r = 0; r < rr.pivots.size(); ++r) v[rr.pivots[r]] = -rr.mat(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Solves Mx = b exactly; nullopt when b is outside the column space.
inline std::optional<QVector> solve(const QMatrix& m, const QVector& b) {
  if (m.rows() != b.size()) throw std::invalid_argument("solve: shape mismatch");
  QMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  Rref rr = rref(aug);
  QVector x(m.cols(), Rat(0));
  for (std::size_t r = 0; r < rr.pivots.size(); ++r) {
    if (rr.pivots[r] == m.cols()) return std::nullopt;  // inconsistent row
    x[rr.pivots[r]] = rr.mat(r, m.cols());
  }
  return x;
}

// Rank of the reduction mod p. Requires p prime and no denominator divisible
// by p; used only as a prefilter, rational rank stays authoritative.
inline std::size_t rank_mod_p(const QMatrix& m, std::uint64_t p) {
  if (p < 2) throw std::invalid_argument("rank_mod_p: p must be a prime");
  const std::size_t nr = m.rows(), nc = m.cols();
  std::vector<std::vector<std::uint64_t>> a(nr, std::vector<std::uint64_t>(nc));
  Int P = static_cast<unsigned long>(p);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) {
      Int den = m(i, j).get_den();
      Int dmod = den % P;
      if (dmod == 0)
        throw bad_prime("rank_mod_p: denominator divisible by p, retry with another prime");
      Int num = m(i, j).get_num() % P;
      if (num < 0) num += P;
      // modular inverse of the denominator
      Int inv;
      if (mpz_invert(inv.get_mpz_t(), dmod.get_mpz_t(), P.get_mpz_t()) == 0)
        throw bad_prime("rank_mod_p: denominator not invertible mod p");
      Int e = (num * inv) % P;
      a[i][j] = e.get_ui();
    }
  auto mulmod = [p](std::uint64_t x, std::uint64_t y) {
    return static_cast<std::uint64_t>((static_cast<__uint128_t>(x) * y) % p);
  };
  auto powmod = [&](std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = mulmod(r, b);
      b = mulmod(b, b);
      e >>= 1;
    }
    return r;
  };
  std::size_t r = 0;
  for (std::size_t c = 0; c < nc && r < nr; ++c) {
    std::size_t piv = nr;
    for (std::size_t i = r; i < nr; ++i)
      if (a[i][c] != 0) { piv = i; break; }
    if (piv == nr) continue;
    std::swap(a[piv], a[r]);
    std::uint64_t inv = powmod(a[r][c], p - 2);
    for (std::size_t i = r + 1; i < nr; ++i) {
      if (a[i][c] == 0) continue;
      std::uint64_t f = mulmod(a[i][c], inv);
      for (std::size_t j = c; j < nc; ++j) {
        std::uint64_t sub = mulmod(f, a[r][j]);
        a[i][j] = (a[i][j] + p - sub) % p;
      }
    }
    ++r;
  }
  return r;
}

// Deterministic sampling of bounded-height rationals.

struct SampleConfig {
  std::uint64_t seed = 0x5eed5eedULL;
  unsigned height_bound = 7;  // max |numerator| and denominator
  unsigned trials = 16;
};

// splitmix64; chosen for reproducibility across platforms.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

private:
  std::uint64_t state_;
};

// Entry heights are bounded by cfg.height_bound; the same (seed, stream, dim)
// always yields the same vector.
inline QVector random_vector(std::size_t dim, const SampleConfig& cfg,
                             std::uint64_t stream = 0) {
  if (dim == 0) throw std::invalid_argument("random_vector: dim must be >= 1");
  if (cfg.height_bound < 1) throw std::invalid_argument("random_vector: height_bound must be >= 1");
  SplitMix64 g(cfg.seed ^ (0x1234abcd5678ef01ULL * (stream + 1)));
  const std::uint64_t h = cfg.height_bound;
  QVector v(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    std::int64_t num = static_cast<std::int64_t>(g.next() % (2 * h + 1)) - static_cast<std::int64_t>(h);
    std::uint64_t den = 1 + g.next() % h;
    Rat r(static_cast<long>(num), static_cast<unsigned long>(den));
    r.canonicalize();
    v[i] = r;
  }
  return v;
}

inline bool is_zero(const QVector& v) {
  for (const Rat& x : v)
    if (x != 0) return false;
  return true;
}

inline std::string to_string(const Rat& r) { return r.get_str(); }

}  // namespace spherocheck::la

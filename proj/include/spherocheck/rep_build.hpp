#pragma once

// Exact matrix realizations of highest-weight modules and assembly of product
// subalgebras k (+) c inside gl(W).
//
// The generic construction walks the weight poset downward from the highest
// weight. Candidate vectors for the weight space V_mu are f_i(basis of
// V_{mu+alpha_i}); their contravariant-form Gram matrix is computed from the
// already-resolved higher spaces and its exact rank equals dim V_mu, which
// quotients the maximal submodule away uniformly for spin modules, G2 and E6.

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spherocheck/exactla.hpp"
#include "spherocheck/lie_core.hpp"

namespace spherocheck::rep {

using la::QMatrix;
using la::Rat;
using lie::RootSystem;
using lie::Weight;

struct MatrixRep {
  RootSystem rs;
  Weight highest_weight;
  std::size_t dim = 0;
  std::vector<QMatrix> e, f, h;      // one per simple root
  std::vector<Weight> weights;       // weight of each basis vector
};

namespace detail {

inline MatrixRep exterior_power_standard(int n, int k) {
  // Lambda^k of the standard sl_n module on sorted k-subsets; moving an index
  // by one step never reorders the subset, so all structure constants are 1.
  MatrixRep rep;
  rep.rs = lie::root_system(lie::SimpleType::A, n - 1);
  rep.highest_weight.assign(n - 1, 0);
  rep.highest_weight[k - 1] = 1;
  std::vector<std::vector<int>> basis;
  std::vector<int> cur;
  // lexicographic enumeration of k-subsets of {0..n-1}
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    basis.push_back(idx);
    int p = k - 1;
    while (p >= 0 && idx[p] == n - k + p) --p;
    if (p < 0) break;
    ++idx[p];
    for (int q = p + 1; q < k; ++q) idx[q] = idx[q - 1] + 1;
  }
  rep.dim = basis.size();
  std::map<std::vector<int>, std::size_t> pos;
  for (std::size_t b = 0; b < basis.size(); ++b) pos[basis[b]] = b;

  rep.e.assign(n - 1, QMatrix(rep.dim, rep.dim));
  rep.f.assign(n - 1, QMatrix(rep.dim, rep.dim));
  rep.h.assign(n - 1, QMatrix(rep.dim, rep.dim));
  rep.weights.resize(rep.dim, Weight(n - 1, 0));
  for (std::size_t b = 0; b < basis.size(); ++b) {
    const auto& s = basis[b];
    auto has = [&](int v) { return std::binary_search(s.begin(), s.end(), v); };
    for (int i = 0; i + 1 < n; ++i) {
      rep.weights[b][i] = static_cast<int>(has(i)) - static_cast<int>(has(i + 1));
      rep.h[i](b, b) = rep.weights[b][i];
      if (has(i + 1) && !has(i)) {  // e_i = E_{i,i+1}
        std::vector<int> t = s;
        *std::find(t.begin(), t.end(), i + 1) = i;
        std::sort(t.begin(), t.end());
        rep.e[i](pos[t], b) = 1;
      }
      if (has(i) && !has(i + 1)) {  // f_i = E_{i+1,i}
        std::vector<int> t = s;
        *std::find(t.begin(), t.end(), i) = i + 1;
        std::sort(t.begin(), t.end());
        rep.f[i](pos[t], b) = 1;
      }
    }
  }
  return rep;
}

inline MatrixRep symmetric_power_standard(int n, int d) {
  // Sym^d of the standard sl_n module on monomial exponent vectors.
  MatrixRep rep;
  rep.rs = lie::root_system(lie::SimpleType::A, n - 1);
  rep.highest_weight.assign(n - 1, 0);
  if (n >= 2) rep.highest_weight[0] = d;
  std::vector<std::vector<int>> basis;
  std::vector<int> m(n, 0);
  m[0] = d;
  while (true) {
    basis.push_back(m);
    // next composition of d into n parts, reverse-lex
    int p = n - 2;
    while (p >= 0 && m[p] == 0) --p;
    if (p < 0) break;
    int tail = m[n - 1];
    m[n - 1] = 0;
    --m[p];
    m[p + 1] += tail + 1;
  }
  rep.dim = basis.size();
  std::map<std::vector<int>, std::size_t> pos;
  for (std::size_t b = 0; b < basis.size(); ++b) pos[basis[b]] = b;

  rep.e.assign(n - 1, QMatrix(rep.dim, rep.dim));
  rep.f.assign(n - 1, QMatrix(rep.dim, rep.dim));
  rep.h.assign(n - 1, QMatrix(rep.dim, rep.dim));
  rep.weights.resize(rep.dim, Weight(n - 1, 0));
  for (std::size_t b = 0; b < basis.size(); ++b) {
    const auto& s = basis[b];
    for (int i = 0; i + 1 < n; ++i) {
      rep.weights[b][i] = s[i] - s[i + 1];
      rep.h[i](b, b) = rep.weights[b][i];
      if (s[i + 1] > 0) {  // e_i: x_{i+1} -> x_i with derivation coefficient
        std::vector<int> t = s;
        --t[i + 1];
        ++t[i];
        rep.e[i](pos[t], b) = s[i + 1];
      }
      if (s[i] > 0) {
        std::vector<int> t = s;
        --t[i];
        ++t[i + 1];
        rep.f[i](pos[t], b) = s[i];
      }
    }
  }
  return rep;
}

}  // namespace detail

inline MatrixRep dual(const MatrixRep& rep) {
  MatrixRep d;
  d.rs = rep.rs;
  d.dim = rep.dim;
  Weight neg(rep.rs.rank);
  for (int i = 0; i < rep.rs.rank; ++i) neg[i] = -rep.highest_weight[i];
  d.highest_weight = rep.rs.dominant_rep(neg);
  auto negt = [](const QMatrix& m) { return m.transpose() * Rat(-1); };
  for (const auto& m : rep.e) d.e.push_back(negt(m));
  for (const auto& m : rep.f) d.f.push_back(negt(m));
  for (const auto& m : rep.h) d.h.push_back(negt(m));
  d.weights.reserve(rep.dim);
  for (const auto& w : rep.weights) {
    Weight nw(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) nw[i] = -w[i];
    d.weights.push_back(nw);
  }
  return d;
}

// Irreducible highest-weight module; fast exterior/symmetric paths for the
// common sl_n weights, Gram-matrix construction otherwise.
inline MatrixRep hw_module(const RootSystem& rs, const Weight& lambda,
                           std::size_t cap = 64) {
  if (static_cast<int>(lambda.size()) != rs.rank)
    throw std::invalid_argument("hw_module: weight has wrong rank");
  if (!rs.dominant(lambda)) throw std::invalid_argument("hw_module: weight not dominant");
  {
    la::Int d = lie::weyl_dim(rs, lambda);
    if (d > static_cast<long>(cap))
      throw la::cap_exceeded("hw_module: dimension " + d.get_str() +
                             " exceeds cap " + std::to_string(cap));
  }
  if (rs.rank == 0) {
    MatrixRep rep;
    rep.rs = rs;
    rep.highest_weight = lambda;
    rep.dim = 1;
    rep.weights = {Weight{}};
    return rep;
  }
  if (rs.type == lie::SimpleType::A) {
    int nz = 0, at = -1;
    for (int i = 0; i < rs.rank; ++i)
      if (lambda[i] != 0) {
        ++nz;
        at = i;
      }
    if (nz == 0) return detail::symmetric_power_standard(rs.rank + 1, 0);
    if (nz == 1 && lambda[at] == 1) return detail::exterior_power_standard(rs.rank + 1, at + 1);
    if (nz == 1 && at == 0) return detail::symmetric_power_standard(rs.rank + 1, lambda[0]);
    if (nz == 1 && at == rs.rank - 1)
      return dual(detail::symmetric_power_standard(rs.rank + 1, lambda[at]));
  }

  // ---- generic construction ----
  struct Space {
    std::size_t dim = 0;
    QMatrix gram;                         // contravariant form on the chosen basis
    std::vector<QMatrix> emat;            // emat[i]: V_mu -> V_{mu+alpha_i}
    std::vector<QMatrix> fmat;            // fmat[i]: V_{mu+alpha_i} -> V_mu
    std::vector<std::size_t> global;      // global basis indices
  };
  std::map<Weight, Space> spaces;
  std::vector<Weight> alpha(rs.rank);
  for (int i = 0; i < rs.rank; ++i) {
    std::vector<int> e(rs.rank, 0);
    e[i] = 1;
    alpha[i] = rs.root_to_fund(e);
  }
  auto plus_alpha = [&](const Weight& w, int i) {
    Weight r = w;
    for (int j = 0; j < rs.rank; ++j) r[j] += alpha[i][j];
    return r;
  };

  MatrixRep rep;
  rep.rs = rs;
  rep.highest_weight = lambda;

  Space top;
  top.dim = 1;
  top.gram = QMatrix(1, 1);
  top.gram(0, 0) = 1;
  top.emat.assign(rs.rank, QMatrix());
  top.fmat.assign(rs.rank, QMatrix());
  top.global = {0};
  spaces[lambda] = top;
  rep.weights.push_back(lambda);
  std::size_t total = 1;

  std::vector<Weight> level = {lambda};
  while (!level.empty()) {
    // children of the current level, deterministic order via map
    std::map<Weight, bool> next;
    for (const Weight& w : level)
      for (int i = 0; i < rs.rank; ++i) {
        Weight c = w;
        for (int j = 0; j < rs.rank; ++j) c[j] -= alpha[i][j];
        if (!spaces.count(c)) next[c] = true;
      }
    std::vector<Weight> accepted;
    for (const auto& [mu, ignored] : next) {
      // candidates: (i, b) with b a basis index of V_{mu+alpha_i}
      std::vector<std::pair<int, std::size_t>> cand;
      for (int i = 0; i < rs.rank; ++i) {
        auto it = spaces.find(plus_alpha(mu, i));
        if (it != spaces.end())
          for (std::size_t b = 0; b < it->second.dim; ++b) cand.push_back({i, b});
      }
      if (cand.empty()) continue;
      const std::size_t C = cand.size();

      // Gram matrix of the candidates:
      //   <f_i u_a, f_j u_b> = <u_a, f_j(e_i u_b) + delta_ij (mu+alpha_i)(h_i) u_b>
      QMatrix gc(C, C);
      for (std::size_t cb = 0; cb < C; ++cb) {
        auto [j, b] = cand[cb];
        const Space& sj = spaces.at(plus_alpha(mu, j));
        for (int i = 0; i < rs.rank; ++i) {
          const auto ita = spaces.find(plus_alpha(mu, i));
          if (ita == spaces.end()) continue;
          const Space& si = ita->second;
          // v = f_j(e_i u_b) (+ Cartan term when i == j), in V_{mu+alpha_i}
          la::QVector v(si.dim, Rat(0));
          const QMatrix& eib = sj.emat[i];
          if (eib.rows() > 0) {
            const Space& sij = spaces.at(plus_alpha(plus_alpha(mu, j), i));
            la::QVector x(sij.dim, Rat(0));
            for (std::size_t r = 0; r < sij.dim; ++r) x[r] = eib(r, b);
            const QMatrix& fj = si.fmat[j];
            if (fj.rows() > 0) {
              la::QVector y = fj * x;
              for (std::size_t r = 0; r < si.dim; ++r) v[r] += y[r];
            }
          }
          if (i == j) {
            int hval = mu[i] + alpha[i][i];  // (mu+alpha_i)(h_i)
            v[b] += hval;
          }
          la::QVector gv = si.gram * v;
          for (std::size_t ca = 0; ca < C; ++ca)
            if (cand[ca].first == i) gc(ca, cb) = gv[cand[ca].second];
        }
      }

      la::Rref rr = la::rref(gc);
      const std::size_t r = rr.rank;
      if (r == 0) continue;  // weight space vanishes in the irreducible quotient
      total += r;
      if (total > cap)
        throw la::cap_exceeded("hw_module: dimension cap " + std::to_string(cap) +
                               " exceeded");

      Space sp;
      sp.dim = r;
      std::vector<std::size_t> sel(rr.pivots);
      // gram on the selected basis
      sp.gram = QMatrix(r, r);
      for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b) sp.gram(a, b) = gc(sel[a], sel[b]);
      // resolve every candidate in the selected basis: gram * x = <sel, cand>
      QMatrix aug(r, r + C);
      for (std::size_t a = 0; a < r; ++a) {
        for (std::size_t b = 0; b < r; ++b) aug(a, b) = sp.gram(a, b);
        for (std::size_t cb = 0; cb < C; ++cb) aug(a, r + cb) = gc(sel[a], cb);
      }
      la::Rref sol = la::rref(aug);
      if (sol.rank != r) throw std::logic_error("hw_module: degenerate gram matrix");
      // fmat[i] column b = coordinates of candidate (i, b)
      sp.fmat.assign(rs.rank, QMatrix());
      for (int i = 0; i < rs.rank; ++i) {
        auto it = spaces.find(plus_alpha(mu, i));
        if (it == spaces.end()) continue;
        QMatrix fm(r, it->second.dim);
        for (std::size_t cb = 0; cb < C; ++cb)
          if (cand[cb].first == i)
            for (std::size_t a = 0; a < r; ++a) fm(a, cand[cb].second) = sol.mat(a, r + cb);
        sp.fmat[i] = fm;
      }
      // emat[j] column s (for selected candidate (i,b)):
      //   e_j f_i u_b = f_i(e_j u_b) + delta_ij (mu+alpha_i)(h_i) u_b
      sp.emat.assign(rs.rank, QMatrix());
      for (int j = 0; j < rs.rank; ++j) {
        auto itj = spaces.find(plus_alpha(mu, j));
        if (itj == spaces.end()) continue;
        const Space& sj = itj->second;
        QMatrix em(sj.dim, r);
        for (std::size_t s = 0; s < r; ++s) {
          auto [i, b] = cand[sel[s]];
          const Space& si = spaces.at(plus_alpha(mu, i));
          la::QVector col(sj.dim, Rat(0));
          const QMatrix& ejb = si.emat[j];
          if (ejb.rows() > 0) {
            const Space& sij = spaces.at(plus_alpha(plus_alpha(mu, i), j));
            la::QVector x(sij.dim, Rat(0));
            for (std::size_t rr2 = 0; rr2 < sij.dim; ++rr2) x[rr2] = ejb(rr2, b);
            const QMatrix& fi = sj.fmat[i];
            if (fi.rows() > 0) {
              la::QVector y = fi * x;
              for (std::size_t rr2 = 0; rr2 < sj.dim; ++rr2) col[rr2] += y[rr2];
            }
          }
          if (i == j) col[b] += mu[i] + alpha[i][i];
          for (std::size_t rr2 = 0; rr2 < sj.dim; ++rr2) em(rr2, s) = col[rr2];
        }
        sp.emat[j] = em;
      }
      sp.global.resize(r);
      for (std::size_t s = 0; s < r; ++s) {
        sp.global[s] = rep.weights.size();
        rep.weights.push_back(mu);
      }
      spaces[mu] = std::move(sp);
      accepted.push_back(mu);
    }
    level = std::move(accepted);
  }

  rep.dim = rep.weights.size();
  rep.e.assign(rs.rank, QMatrix(rep.dim, rep.dim));
  rep.f.assign(rs.rank, QMatrix(rep.dim, rep.dim));
  rep.h.assign(rs.rank, QMatrix(rep.dim, rep.dim));
  for (const auto& [mu, sp] : spaces) {
    for (std::size_t s = 0; s < sp.dim; ++s)
      for (int i = 0; i < rs.rank; ++i) rep.h[i](sp.global[s], sp.global[s]) = mu[i];
    for (int i = 0; i < rs.rank; ++i) {
      auto it = spaces.find(plus_alpha(mu, i));
      if (it == spaces.end()) continue;
      const Space& up = it->second;
      // f_i: V_{mu+alpha_i} -> V_mu
      const QMatrix& fm = sp.fmat[i];
      if (fm.rows() > 0)
        for (std::size_t a = 0; a < sp.dim; ++a)
          for (std::size_t b = 0; b < up.dim; ++b)
            if (fm(a, b) != 0) rep.f[i](sp.global[a], up.global[b]) = fm(a, b);
      // e_i: V_mu -> V_{mu+alpha_i}
      const QMatrix& em = sp.emat[i];
      if (em.rows() > 0)
        for (std::size_t a = 0; a < up.dim; ++a)
          for (std::size_t b = 0; b < sp.dim; ++b)
            if (em(a, b) != 0) rep.e[i](up.global[a], sp.global[b]) = em(a, b);
    }
  }
  return rep;
}

inline MatrixRep direct_sum(const MatrixRep& a, const MatrixRep& b) {
  if (!(a.rs == b.rs)) throw std::invalid_argument("direct_sum: root system mismatch");
  MatrixRep r;
  r.rs = a.rs;
  r.highest_weight = a.highest_weight;
  r.dim = a.dim + b.dim;
  for (int i = 0; i < a.rs.rank; ++i) {
    r.e.push_back(a.e[i].direct_sum(b.e[i]));
    r.f.push_back(a.f[i].direct_sum(b.f[i]));
    r.h.push_back(a.h[i].direct_sum(b.h[i]));
  }
  r.weights = a.weights;
  r.weights.insert(r.weights.end(), b.weights.begin(), b.weights.end());
  return r;
}

inline MatrixRep tensor(const MatrixRep& a, const MatrixRep& b) {
  if (!(a.rs == b.rs)) throw std::invalid_argument("tensor: root system mismatch");
  MatrixRep r;
  r.rs = a.rs;
  r.highest_weight.resize(a.rs.rank);
  for (int i = 0; i < a.rs.rank; ++i)
    r.highest_weight[i] = a.highest_weight[i] + b.highest_weight[i];
  r.dim = a.dim * b.dim;
  QMatrix ia = QMatrix::identity(a.dim), ib = QMatrix::identity(b.dim);
  for (int i = 0; i < a.rs.rank; ++i) {
    r.e.push_back(a.e[i].kron(ib) + ia.kron(b.e[i]));
    r.f.push_back(a.f[i].kron(ib) + ia.kron(b.f[i]));
    r.h.push_back(a.h[i].kron(ib) + ia.kron(b.h[i]));
  }
  for (const auto& wa : a.weights)
    for (const auto& wb : b.weights) {
      Weight w(a.rs.rank);
      for (int i = 0; i < a.rs.rank; ++i) w[i] = wa[i] + wb[i];
      r.weights.push_back(w);
    }
  return r;
}

inline lie::Character character_of(const MatrixRep& rep) {
  lie::Character ch;
  ch.lat.factors = {rep.rs};
  for (const auto& w : rep.weights) ch.add(w, 1);
  return ch;
}

// Chevalley relations, checked by exact matrix arithmetic.
inline bool chevalley_ok(const MatrixRep& rep) {
  const int n = rep.rs.rank;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int c = rep.rs.cartan[i][j];
      if (!(la::bracket(rep.h[i], rep.e[j]) - rep.e[j] * Rat(c)).is_zero()) return false;
      if (!(la::bracket(rep.h[i], rep.f[j]) + rep.f[j] * Rat(c)).is_zero()) return false;
      QMatrix ef = la::bracket(rep.e[i], rep.f[j]);
      if (i == j) {
        if (!(ef - rep.h[i]).is_zero()) return false;
      } else if (!ef.is_zero()) {
        return false;
      }
    }
  return true;
}

// Serre relations: (ad x_i)^{1 - c_ij}(x_j) = 0 for i != j.
inline bool serre_ok(const MatrixRep& rep) {
  const int n = rep.rs.rank;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      int times = 1 - rep.rs.cartan[i][j];
      QMatrix ae = rep.e[j], af = rep.f[j];
      for (int k = 0; k < times; ++k) {
        ae = la::bracket(rep.e[i], ae);
        af = la::bracket(rep.f[i], af);
      }
      if (!ae.is_zero() || !af.is_zero()) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------
// Pair specifications: a product of simple factors acting on a direct sum of
// tensor words, plus diagonal center generators.

enum class Alg { SL, SO, SP, G2, E6 };

struct Factor {
  Alg alg = Alg::SL;
  int size = 0;  // matrix size for sl/so/sp, ignored for g2/e6

  // rank in the user-facing labeling of fundamental weights
  int user_rank() const {
    switch (alg) {
      case Alg::SL: return size - 1;
      case Alg::SO: return size == 3 ? 1 : size / 2;
      case Alg::SP: return size / 2;
      case Alg::G2: return 2;
      case Alg::E6: return 6;
    }
    return 0;
  }

  const RootSystem& root_system() const {
    switch (alg) {
      case Alg::SL: return lie::cached_root_system(lie::SimpleType::A, size - 1);
      case Alg::SO:
        if (size == 3) return lie::cached_root_system(lie::SimpleType::A, 1);
        if (size % 2 == 1) return lie::cached_root_system(lie::SimpleType::B, size / 2);
        return lie::cached_root_system(lie::SimpleType::D, size / 2);
      case Alg::SP:
        if (size == 2) return lie::cached_root_system(lie::SimpleType::A, 1);
        return lie::cached_root_system(lie::SimpleType::C, size / 2);
      case Alg::G2: return lie::cached_root_system(lie::SimpleType::G2, 2);
      case Alg::E6: return lie::cached_root_system(lie::SimpleType::E6, 6);
    }
    throw std::logic_error("Factor: unknown algebra");
  }

  // so(3) realizes its vector-representation label w1 as the sl2 weight 2w1
  Weight to_internal(const Weight& user) const {
    if (alg == Alg::SO && size == 3) return Weight{2 * user[0]};
    return user;
  }
  Weight to_user(const Weight& internal) const {
    if (alg == Alg::SO && size == 3) return Weight{internal[0] / 2};
    return internal;
  }

  std::string name() const {
    switch (alg) {
      case Alg::SL: return "sl(" + std::to_string(size) + ")";
      case Alg::SO: return "so(" + std::to_string(size) + ")";
      case Alg::SP: return "sp(" + std::to_string(size) + ")";
      case Alg::G2: return "g2";
      case Alg::E6: return "e6";
    }
    return "?";
  }

  bool operator==(const Factor& o) const { return alg == o.alg && size == o.size; }
};

struct PairSpec {
  std::vector<Factor> factors;
  // summands[s][f]: internal-coordinate dominant weight of factor f (all
  // zeros = the trivial representation of that factor)
  std::vector<std::vector<Weight>> summands;
  // center[g][s]: scaling constant of center generator g on summand s
  std::vector<std::vector<int>> center;

  bool operator==(const PairSpec& o) const {
    return factors == o.factors && summands == o.summands && center == o.center;
  }
};

inline la::Int dim_w(const PairSpec& spec) {
  la::Int total = 0;
  for (const auto& word : spec.summands) {
    la::Int d = 1;
    for (std::size_t f = 0; f < spec.factors.size(); ++f)
      d *= lie::weyl_dim(spec.factors[f].root_system(), word[f]);
    total += d;
  }
  return total;
}

// W*: every summand weight is dualized and the center scalars flip sign.
inline PairSpec dual_spec(const PairSpec& spec) {
  PairSpec d = spec;
  for (auto& word : d.summands)
    for (std::size_t f = 0; f < word.size(); ++f) {
      const RootSystem rs = spec.factors[f].root_system();
      Weight neg(rs.rank);
      for (int i = 0; i < rs.rank; ++i) neg[i] = -word[f][i];
      word[f] = rs.dominant_rep(neg);
    }
  for (auto& gens : d.center)
    for (int& x : gens) x = -x;
  return d;
}

inline lie::Lattice lattice_of(const PairSpec& spec) {
  lie::Lattice lat;
  for (const auto& f : spec.factors) lat.factors.push_back(f.root_system());
  lat.center_dim = static_cast<int>(spec.center.size());
  return lat;
}

// Character of W as a module over the product algebra and the center.
inline lie::Character character_of_w(const PairSpec& spec) {
  lie::Lattice lat = lattice_of(spec);
  lie::Character ch;
  ch.lat = lat;
  for (std::size_t s = 0; s < spec.summands.size(); ++s) {
    lie::WKey key;
    for (std::size_t f = 0; f < spec.factors.size(); ++f)
      key.insert(key.end(), spec.summands[s][f].begin(), spec.summands[s][f].end());
    for (std::size_t g = 0; g < spec.center.size(); ++g)
      key.push_back(spec.center[g][s]);
    ch = ch + lie::irreducible_character(lat, key);
  }
  return ch;
}

struct SubalgebraInGl {
  std::size_t ambient_dim = 0;
  std::vector<QMatrix> basis;            // semisimple part first, then center
  std::vector<std::size_t> borel;        // indices into basis
  std::size_t semisimple_dim = 0;        // basis[0..semisimple_dim) spans k
  bool semisimple_traceless = false;
  std::vector<std::size_t> summand_dims;
  std::vector<std::vector<Weight>> summand_words;  // internal coordinates
  std::vector<std::vector<int>> center;            // scaling constants
};

inline void validate(const PairSpec& spec) {
  if (spec.summands.empty()) throw std::invalid_argument("PairSpec: needs at least one summand");
  for (const auto& word : spec.summands) {
    if (word.size() != spec.factors.size())
      throw std::invalid_argument("PairSpec: tensor word omits a factor");
    for (std::size_t f = 0; f < word.size(); ++f) {
      const RootSystem rs = spec.factors[f].root_system();
      if (static_cast<int>(word[f].size()) != rs.rank)
        throw std::invalid_argument("PairSpec: weight rank mismatch");
      if (!rs.dominant(word[f]))
        throw std::invalid_argument("PairSpec: non-dominant weight");
    }
  }
  for (const auto& gens : spec.center)
    if (gens.size() != spec.summands.size())
      throw std::invalid_argument("PairSpec: center arity mismatch with summand count");
}

// Builds the matrices of k (+) c acting on W = (+)_s (x)_f V(lambda_{s,f}).
inline SubalgebraInGl assemble(const PairSpec& spec, std::size_t cap = 64) {
  validate(spec);
  const std::size_t nf = spec.factors.size();
  const std::size_t ns = spec.summands.size();

  // factor representations per summand
  std::vector<std::vector<MatrixRep>> reps(ns);
  std::vector<std::size_t> sdim(ns, 1);
  std::size_t total = 0;
  for (std::size_t s = 0; s < ns; ++s) {
    for (std::size_t f = 0; f < nf; ++f) {
      reps[s].push_back(hw_module(spec.factors[f].root_system(), spec.summands[s][f], cap));
      sdim[s] *= reps[s][f].dim;
    }
    total += sdim[s];
    if (total > cap) throw la::cap_exceeded("assemble: dim W exceeds cap");
  }

  SubalgebraInGl sub;
  sub.ambient_dim = total;
  sub.summand_dims = sdim;
  sub.summand_words = spec.summands;
  sub.center = spec.center;
  std::vector<std::size_t> offset(ns, 0);
  for (std::size_t s = 1; s < ns; ++s) offset[s] = offset[s - 1] + sdim[s - 1];

  // embeds a one-factor generator into gl(W)
  auto embed = [&](std::size_t f, auto pick) {
    QMatrix m(total, total);
    for (std::size_t s = 0; s < ns; ++s) {
      QMatrix block = QMatrix::identity(1);
      for (std::size_t g = 0; g < nf; ++g) {
        if (g == f)
          block = block.kron(pick(reps[s][g]));
        else
          block = block.kron(QMatrix::identity(reps[s][g].dim));
      }
      for (std::size_t i = 0; i < sdim[s]; ++i)
        for (std::size_t j = 0; j < sdim[s]; ++j)
          if (block(i, j) != 0) m(offset[s] + i, offset[s] + j) = block(i, j);
    }
    return m;
  };

  std::vector<std::size_t> borel;
  for (std::size_t f = 0; f < nf; ++f) {
    const RootSystem rs = spec.factors[f].root_system();
    if (rs.rank == 0) continue;
    bool acts = false;
    for (std::size_t s = 0; s < ns; ++s)
      for (int x : spec.summands[s][f]) acts |= (x != 0);
    if (!acts)
      throw std::invalid_argument("assemble: factor " + spec.factors[f].name() +
                                  " acts trivially on every summand");
    std::vector<QMatrix> E(rs.rank), F(rs.rank), H(rs.rank);
    for (int i = 0; i < rs.rank; ++i) {
      E[i] = embed(f, [i](const MatrixRep& r) { return r.e[i]; });
      F[i] = embed(f, [i](const MatrixRep& r) { return r.f[i]; });
      H[i] = embed(f, [i](const MatrixRep& r) { return r.h[i]; });
    }
    // positive-root vectors by bracketing up the root poset
    std::vector<std::vector<int>> roots = rs.pos_roots;
    std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
      int ha = std::accumulate(a.begin(), a.end(), 0);
      int hb = std::accumulate(b.begin(), b.end(), 0);
      if (ha != hb) return ha < hb;
      return a < b;
    });
    std::map<std::vector<int>, std::pair<QMatrix, QMatrix>> rv;  // root -> (e, f)
    for (const auto& beta : roots) {
      int ht = std::accumulate(beta.begin(), beta.end(), 0);
      if (ht == 1) {
        int i = static_cast<int>(std::find(beta.begin(), beta.end(), 1) - beta.begin());
        rv[beta] = {E[i], F[i]};
        continue;
      }
      bool found = false;
      for (int i = 0; i < rs.rank && !found; ++i) {
        if (beta[i] == 0) continue;
        std::vector<int> gamma = beta;
        gamma[i] -= 1;
        auto it = rv.find(gamma);
        if (it == rv.end()) continue;
        QMatrix eb = la::bracket(E[i], it->second.first);
        if (eb.is_zero()) continue;
        QMatrix fb = la::bracket(F[i], it->second.second);
        rv[beta] = {eb, fb};
        found = true;
      }
      if (!found) throw std::logic_error("assemble: positive root not reachable");
    }
    std::size_t h0 = sub.basis.size();
    for (int i = 0; i < rs.rank; ++i) sub.basis.push_back(H[i]);
    for (const auto& beta : roots) sub.basis.push_back(rv[beta].first);
    for (std::size_t k = h0; k < sub.basis.size(); ++k) borel.push_back(k);
    for (const auto& beta : roots) sub.basis.push_back(rv[beta].second);
  }
  sub.semisimple_dim = sub.basis.size();
  for (std::size_t k = 0; k < sub.semisimple_dim; ++k)
    if (sub.basis[k].trace() != 0)
      throw std::logic_error("assemble: semisimple generator has nonzero trace");
  sub.semisimple_traceless = true;

  for (const auto& gens : spec.center) {
    QMatrix z(total, total);
    for (std::size_t s = 0; s < ns; ++s)
      for (std::size_t i = 0; i < sdim[s]; ++i) z(offset[s] + i, offset[s] + i) = gens[s];
    borel.push_back(sub.basis.size());
    sub.basis.push_back(z);
  }
  sub.borel = borel;
  return sub;
}

}  // namespace spherocheck::rep

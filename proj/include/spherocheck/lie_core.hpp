#pragma once

// Root data, weights and character arithmetic for the simple types A, B, C,
// D, G2, E6. Weights are integer vectors in fundamental-weight coordinates.
//
// Conventions:
//   cartan[i][j] = <alpha_j, alpha_i^vee>, so [h_i, e_j] = cartan[i][j] e_j
//   and the fundamental coordinates of a weight mu are mu_i = mu(h_i).
//   B_n has the short simple root last (omega_n = spin), C_n the long one
//   last (omega_1 = standard 2n-dim), D_n the fork on the last two nodes.
//   E6 nodes are numbered along the chain 1-2-3-4-5 with node 6 attached to
//   node 3; omega_1 is the 27-dimensional module. (Relative to the common
//   Bourbaki numbering this is the relabeling 1,2,3,4,5,6 -> 1,3,4,5,6,2.)

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "spherocheck/exactla.hpp"

namespace spherocheck::lie {

using la::Int;
using la::Rat;

using Weight = std::vector<int>;  // fundamental coordinates

enum class SimpleType { A, B, C, D, G2, E6 };

inline std::string type_name(SimpleType t) {
  switch (t) {
    case SimpleType::A: return "A";
    case SimpleType::B: return "B";
    case SimpleType::C: return "C";
    case SimpleType::D: return "D";
    case SimpleType::G2: return "G2";
    case SimpleType::E6: return "E6";
  }
  return "?";
}

struct RootSystem {
  SimpleType type = SimpleType::A;
  int rank = 0;
  std::vector<std::vector<int>> cartan;      // cartan[i][j] = <alpha_j, alpha_i^vee>
  std::vector<std::vector<int>> pos_roots;   // simple-root coordinates
  std::vector<Rat> sym;                      // d_i = (alpha_i,alpha_i)/2, d_i c_ij symmetric
  std::vector<std::vector<Rat>> gram;        // (omega_i, omega_j)
  std::vector<Rat> height_form;              // height(mu) = sum_i height_form[i] mu_i

  bool operator==(const RootSystem& o) const {
    return type == o.type && rank == o.rank;
  }

  // fundamental coordinates of a root given in simple-root coordinates
  Weight root_to_fund(const std::vector<int>& rc) const {
    Weight f(rank, 0);
    for (int i = 0; i < rank; ++i)
      for (int k = 0; k < rank; ++k) f[i] += cartan[i][k] * rc[k];
    return f;
  }

  bool dominant(const Weight& w) const {
    for (int x : w)
      if (x < 0) return false;
    return true;
  }

  // s_i(mu) = mu - mu_i alpha_i
  Weight reflect(const Weight& w, int i) const {
    Weight r = w;
    int c = w[i];
    for (int j = 0; j < rank; ++j) r[j] -= c * cartan[j][i];
    return r;
  }

  Weight dominant_rep(Weight w) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int i = 0; i < rank; ++i)
        if (w[i] < 0) {
          w = reflect(w, i);
          changed = true;
        }
    }
    return w;
  }

  // (mu, beta) for mu in fundamental coordinates, beta in root coordinates
  Rat ip_weight_root(const Weight& mu, const std::vector<int>& beta) const {
    Rat s = 0;
    for (int k = 0; k < rank; ++k)
      if (beta[k] != 0 && mu[k] != 0) s += Rat(beta[k]) * sym[k] * Rat(mu[k]);
    return s;
  }

  Rat ip(const Weight& a, const Weight& b) const {
    Rat s = 0;
    for (int i = 0; i < rank; ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; j < rank; ++j)
        if (b[j] != 0) s += Rat(a[i]) * gram[i][j] * Rat(b[j]);
    }
    return s;
  }

  Rat height(const Weight& w) const {
    Rat s = 0;
    for (int i = 0; i < rank; ++i)
      if (w[i] != 0) s += height_form[i] * Rat(w[i]);
    return s;
  }
};

namespace detail {

inline std::vector<std::vector<int>> cartan_matrix(SimpleType t, int n) {
  std::vector<std::vector<int>> c(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) c[i][i] = 2;
  auto chain = [&](int i, int j) { c[i][j] = -1; c[j][i] = -1; };
  switch (t) {
    case SimpleType::A:
      for (int i = 0; i + 1 < n; ++i) chain(i, i + 1);
      break;
    case SimpleType::B:
      for (int i = 0; i + 1 < n; ++i) chain(i, i + 1);
      // alpha_{n-1} short: <alpha_{n-2}, alpha_{n-1}^vee> = -2
      c[n - 1][n - 2] = -2;
      break;
    case SimpleType::C:
      for (int i = 0; i + 1 < n; ++i) chain(i, i + 1);
      // alpha_{n-1} long: <alpha_{n-1}, alpha_{n-2}^vee> = -2
      c[n - 2][n - 1] = -2;
      break;
    case SimpleType::D:
      for (int i = 0; i + 2 < n; ++i) chain(i, i + 1);
      chain(n - 3, n - 1);
      break;
    case SimpleType::G2:
      // alpha_1 short so that omega_1 is the 7-dimensional module
      c[0][1] = -3;
      c[1][0] = -1;
      break;
    case SimpleType::E6:
      chain(0, 1);
      chain(1, 2);
      chain(2, 3);
      chain(3, 4);
      chain(2, 5);
      break;
  }
  return c;
}

}  // namespace detail

inline RootSystem root_system(SimpleType t, int rank) {
  bool ok = false;
  switch (t) {
    case SimpleType::A: ok = rank >= 0; break;  // rank 0 is the trivial algebra
    case SimpleType::B: ok = rank >= 2; break;
    case SimpleType::C: ok = rank >= 2; break;
    case SimpleType::D: ok = rank >= 3; break;
    case SimpleType::G2: ok = rank == 2; break;
    case SimpleType::E6: ok = rank == 6; break;
  }
  if (!ok)
    throw std::invalid_argument("root_system: inadmissible (type, rank) pair " +
                                type_name(t) + std::to_string(rank));
  RootSystem rs;
  rs.type = t;
  rs.rank = rank;
  rs.cartan = detail::cartan_matrix(t, rank);
  if (rank == 0) return rs;

  // symmetrizers: propagate d_i c_ij = d_j c_ji along the Dynkin graph
  rs.sym.assign(rank, Rat(0));
  rs.sym[0] = 1;
  for (bool grew = true; grew;) {
    grew = false;
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j)
        if (i != j && rs.cartan[i][j] != 0 && rs.sym[i] != 0 && rs.sym[j] == 0) {
          rs.sym[j] = rs.sym[i] * Rat(rs.cartan[i][j]) / Rat(rs.cartan[j][i]);
          grew = true;
        }
  }

  // positive roots: close the simple roots under simple reflections
  std::set<std::vector<int>> roots;
  std::vector<std::vector<int>> queue;
  for (int i = 0; i < rank; ++i) {
    std::vector<int> e(rank, 0);
    e[i] = 1;
    roots.insert(e);
    queue.push_back(e);
  }
  while (!queue.empty()) {
    std::vector<int> b = queue.back();
    queue.pop_back();
    Weight f = rs.root_to_fund(b);
    for (int i = 0; i < rank; ++i) {
      std::vector<int> r = b;
      r[i] -= f[i];
      bool pos = true, neg = true;
      for (int k = 0; k < rank; ++k) {
        if (r[k] > 0) neg = false;
        if (r[k] < 0) pos = false;
      }
      if (pos && !roots.count(r)) {
        roots.insert(r);
        queue.push_back(r);
      }
      (void)neg;
    }
  }
  rs.pos_roots.assign(roots.begin(), roots.end());

  // gram matrix of fundamental weights: G = (C^T)^{-1} diag(d)
  la::QMatrix ct(rank, rank);
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) ct(i, j) = rs.cartan[j][i];
  la::QMatrix inv(rank, rank);
  {
    la::QMatrix aug(rank, 2 * rank);
    for (int i = 0; i < rank; ++i) {
      for (int j = 0; j < rank; ++j) aug(i, j) = ct(i, j);
      aug(i, rank + i) = 1;
    }
    la::Rref rr = la::rref(aug);
    if (rr.rank != static_cast<std::size_t>(rank))
      throw std::logic_error("root_system: singular Cartan matrix");
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j) inv(i, j) = rr.mat(i, rank + j);
  }
  rs.gram.assign(rank, std::vector<Rat>(rank));
  rs.height_form.assign(rank, Rat(0));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) {
      rs.gram[i][j] = inv(i, j) * rs.sym[j];
      rs.height_form[i] += inv(i, j);  // omega_i = sum_k inv(i,k) alpha_k
    }
  return rs;
}

// Memoized accessor; root systems are immutable values and map nodes are
// reference-stable.
inline const RootSystem& cached_root_system(SimpleType t, int rank) {
  static std::map<std::pair<int, int>, RootSystem> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(static_cast<int>(t), rank);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, root_system(t, rank)).first;
  return it->second;
}

inline Int weyl_dim(const RootSystem& rs, const Weight& lambda) {
  if (static_cast<int>(lambda.size()) != rs.rank)
    throw std::invalid_argument("weyl_dim: weight has wrong rank");
  if (!rs.dominant(lambda)) throw std::invalid_argument("weyl_dim: weight not dominant");
  Rat dim = 1;
  Weight rho(rs.rank, 1), lr(rs.rank);
  for (int i = 0; i < rs.rank; ++i) lr[i] = lambda[i] + 1;
  for (const auto& beta : rs.pos_roots)
    dim *= rs.ip_weight_root(lr, beta) / rs.ip_weight_root(rho, beta);
  if (dim.get_den() != 1) throw std::logic_error("weyl_dim: non-integral result");
  return dim.get_num();
}

// ---------------------------------------------------------------------------
// Characters over a product lattice with optional central coordinates.

struct Lattice {
  std::vector<RootSystem> factors;
  int center_dim = 0;

  int coords() const {
    int n = center_dim;
    for (const auto& f : factors) n += f.rank;
    return n;
  }
  int factor_offset(std::size_t f) const {
    int off = 0;
    for (std::size_t i = 0; i < f; ++i) off += factors[i].rank;
    return off;
  }
  bool operator==(const Lattice& o) const {
    return center_dim == o.center_dim && factors == o.factors;
  }
};

using WKey = std::vector<int>;

inline Weight slice(const WKey& k, const Lattice& lat, std::size_t f) {
  int off = lat.factor_offset(f);
  return Weight(k.begin() + off, k.begin() + off + lat.factors[f].rank);
}

struct Character {
  Lattice lat;
  std::map<WKey, Rat> coeff;

  Rat mass() const {
    Rat s = 0;
    for (const auto& [k, c] : coeff) s += c;
    return s;
  }

  void add(const WKey& k, const Rat& c) {
    if (c == 0) return;
    Rat& slot = coeff[k];
    slot += c;
    if (slot == 0) coeff.erase(k);
  }

  Character operator*(const Character& o) const {
    if (!(lat == o.lat)) throw std::invalid_argument("Character: lattice mismatch");
    Character r;
    r.lat = lat;
    WKey k(lat.coords());
    for (const auto& [ka, ca] : coeff)
      for (const auto& [kb, cb] : o.coeff) {
        for (std::size_t i = 0; i < k.size(); ++i) k[i] = ka[i] + kb[i];
        r.add(k, ca * cb);
      }
    return r;
  }

  Character operator+(const Character& o) const {
    if (!(lat == o.lat)) throw std::invalid_argument("Character: lattice mismatch");
    Character r = *this;
    for (const auto& [k, c] : o.coeff) r.add(k, c);
    return r;
  }

  Character scaled(const Rat& s) const {
    Character r;
    r.lat = lat;
    if (s == 0) return r;
    r.coeff = coeff;
    for (auto& [k, c] : r.coeff) c *= s;
    return r;
  }

  // Adams operation: stretches every weight by k.
  Character adams(int k) const {
    Character r;
    r.lat = lat;
    for (const auto& [key, c] : coeff) {
      WKey kk(key);
      for (int& x : kk) x *= k;
      r.coeff[kk] = c;
    }
    return r;
  }

  Character dual() const { return adams(-1); }

  Rat height(const WKey& k) const {
    Rat h = 0;
    for (std::size_t f = 0; f < lat.factors.size(); ++f) {
      const RootSystem& rs = lat.factors[f];
      int off = lat.factor_offset(f);
      for (int i = 0; i < rs.rank; ++i)
        if (k[off + i] != 0) h += rs.height_form[i] * Rat(k[off + i]);
    }
    return h;
  }

  bool is_integral() const {
    for (const auto& [k, c] : coeff)
      if (c.get_den() != 1) return false;
    return true;
  }
};

inline Character trivial_character(const Lattice& lat) {
  Character c;
  c.lat = lat;
  c.coeff[WKey(lat.coords(), 0)] = 1;
  return c;
}

// Full weight diagram of the irreducible module V(lambda) by Freudenthal's
// recursion on dominant weights, expanded over Weyl orbits. Traversal runs
// level by level away from lambda; alongside each weight we keep the
// simple-root coordinates of lambda - mu, which bound every root string
// exactly.
inline std::map<Weight, Int> weight_multiplicity_map(const RootSystem& rs,
                                                     const Weight& lambda) {
  if (static_cast<int>(lambda.size()) != rs.rank)
    throw std::invalid_argument("weight_multiplicities: weight has wrong rank");
  if (!rs.dominant(lambda))
    throw std::invalid_argument("weight_multiplicities: weight not dominant");
  std::map<Weight, Int> mults;
  if (rs.rank == 0) {
    mults[lambda] = 1;
    return mults;
  }

  Weight lrho(rs.rank);
  for (int i = 0; i < rs.rank; ++i) lrho[i] = lambda[i] + 1;
  const Rat norm_l = rs.ip(lrho, lrho);

  std::map<Weight, Int> dom;  // dominant weight -> multiplicity
  dom[lambda] = 1;
  std::vector<Weight> alpha(rs.rank);  // simple roots in fundamental coords
  for (int i = 0; i < rs.rank; ++i) {
    std::vector<int> e(rs.rank, 0);
    e[i] = 1;
    alpha[i] = rs.root_to_fund(e);
  }

  auto mult_of = [&](const Weight& w) -> Int {
    auto it = dom.find(rs.dominant_rep(w));
    return it == dom.end() ? Int(0) : it->second;
  };

  // level entries: (weight, simple-root coordinates of lambda - weight)
  using Node = std::pair<Weight, std::vector<int>>;
  std::vector<Node> level = {{lambda, std::vector<int>(rs.rank, 0)}};
  std::set<Weight> seen = {lambda};
  mults[lambda] = 1;

  while (!level.empty()) {
    std::map<Weight, std::vector<int>> next;
    for (const auto& [w, off] : level)
      for (int i = 0; i < rs.rank; ++i) {
        Weight c(rs.rank);
        for (int j = 0; j < rs.rank; ++j) c[j] = w[j] - alpha[i][j];
        if (seen.count(c) || next.count(c)) continue;
        std::vector<int> noff = off;
        noff[i] += 1;
        next.emplace(std::move(c), std::move(noff));
      }
    std::vector<Node> accepted;
    for (const auto& [mu, off] : next) {
      seen.insert(mu);
      Weight dmu = rs.dominant_rep(mu);
      Int m;
      auto it = dom.find(dmu);
      if (it != dom.end()) {
        m = it->second;
      } else if (dmu != mu) {
        m = 0;  // dominant representative was never reached: not in the support
      } else {
        Rat num = 0;
        for (const auto& beta : rs.pos_roots) {
          // k runs while lambda - (mu + k beta) stays in the positive cone
          int maxk = -1;
          for (int j = 0; j < rs.rank; ++j)
            if (beta[j] > 0) {
              int b = off[j] / beta[j];
              maxk = (maxk < 0) ? b : std::min(maxk, b);
            }
          Weight bf = rs.root_to_fund(beta);
          Weight w = mu;
          for (int k = 1; k <= maxk; ++k) {
            for (int j = 0; j < rs.rank; ++j) w[j] += bf[j];
            Int mk = mult_of(w);
            if (mk != 0) num += Rat(mk) * rs.ip_weight_root(w, beta);
          }
        }
        Weight mrho(rs.rank);
        for (int j = 0; j < rs.rank; ++j) mrho[j] = mu[j] + 1;
        Rat den = norm_l - rs.ip(mrho, mrho);
        Rat mm = (den == 0) ? Rat(0) : 2 * num / den;
        if (mm.get_den() != 1) throw std::logic_error("freudenthal: non-integral multiplicity");
        m = mm.get_num();
        if (m != 0) dom[dmu] = m;
      }
      if (m != 0) {
        mults[mu] = m;
        accepted.push_back({mu, off});
      }
    }
    level = std::move(accepted);
  }
  return mults;
}

inline Character weight_multiplicities(const RootSystem& rs, const Weight& lambda) {
  Character ch;
  ch.lat.factors = {rs};
  for (const auto& [w, m] : weight_multiplicity_map(rs, lambda)) ch.coeff[w] = Rat(m);
  return ch;
}

// Character of the irreducible (product x center) module with highest weight
// key: per-factor Freudenthal diagrams multiplied together, center coordinates
// carried along as a fixed shift.
inline Character irreducible_character(const Lattice& lat, const WKey& hw) {
  if (static_cast<int>(hw.size()) != lat.coords())
    throw std::invalid_argument("irreducible_character: key has wrong length");
  Character ch;
  ch.lat = lat;
  ch.coeff[hw] = 1;
  for (std::size_t f = 0; f < lat.factors.size(); ++f) {
    const RootSystem& rs = lat.factors[f];
    if (rs.rank == 0) continue;
    int off = lat.factor_offset(f);
    Weight lf = slice(hw, lat, f);
    bool zero = std::all_of(lf.begin(), lf.end(), [](int x) { return x == 0; });
    if (zero) continue;
    std::map<Weight, Int> wm = weight_multiplicity_map(rs, lf);
    Character next;
    next.lat = lat;
    for (const auto& [k, c] : ch.coeff)
      for (const auto& [w, m] : wm) {
        WKey kk = k;
        for (int i = 0; i < rs.rank; ++i) kk[off + i] += w[i] - lf[i];
        next.add(kk, c * Rat(m));
      }
    ch = std::move(next);
  }
  return ch;
}

inline Int dim_of_highest_weight(const Lattice& lat, const WKey& hw) {
  Int d = 1;
  for (std::size_t f = 0; f < lat.factors.size(); ++f)
    d *= weyl_dim(lat.factors[f], slice(hw, lat, f));
  return d;
}

struct not_module_character : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Iterated peeling: repeatedly subtract the irreducible character of the
// highest remaining weight. Candidates are ordered by height (sum of
// simple-root coordinates), ties broken lexicographically; that weight is
// necessarily extremal, so for genuine module characters it is dominant and
// carries a positive integral coefficient.
inline std::vector<std::pair<WKey, Int>> decompose(const Character& chi) {
  std::vector<std::pair<WKey, Int>> out;
  if (chi.coeff.empty()) return out;
  Character work = chi;

  struct Entry {
    Rat h;
    WKey k;
  };
  std::vector<Entry> order;
  order.reserve(work.coeff.size());
  for (const auto& [k, c] : work.coeff) order.push_back({work.height(k), k});
  std::sort(order.begin(), order.end(), [](const Entry& a, const Entry& b) {
    if (a.h != b.h) return a.h > b.h;
    return a.k > b.k;
  });

  for (const Entry& e : order) {
    auto it = work.coeff.find(e.k);
    if (it == work.coeff.end()) continue;
    Rat c = it->second;
    if (c == 0) continue;
    // highest remaining weight: must be dominant with positive integral mult
    for (std::size_t f = 0; f < work.lat.factors.size(); ++f)
      if (!work.lat.factors[f].dominant(slice(e.k, work.lat, f)))
        throw not_module_character("decompose: extremal weight is not dominant");
    if (c < 0 || c.get_den() != 1)
      throw not_module_character("decompose: extremal coefficient not a positive integer");
    Int m = c.get_num();
    Character irr = irreducible_character(work.lat, e.k);
    for (const auto& [k, ic] : irr.coeff) {
      Rat& slot = work.coeff[k];
      slot -= Rat(m) * ic;
      if (slot == 0) work.coeff.erase(k);
    }
    out.push_back({e.k, m});
  }
  // anything left over (necessarily negative somewhere) is an error
  for (const auto& [k, c] : work.coeff)
    if (c != 0) throw not_module_character("decompose: reconstruction failed");
  return out;
}

// Symmetric powers S^0..S^d via the Newton recursion from Adams power sums:
//   d S^d = sum_{k=1..d} psi^k(chi) S^{d-k}.
inline std::vector<Character> sym_power_ladder(const Character& chi, unsigned d) {
  std::vector<Character> sym(d + 1);
  sym[0] = trivial_character(chi.lat);
  std::vector<Character> psi(d + 1);
  for (unsigned k = 1; k <= d; ++k) psi[k] = chi.adams(static_cast<int>(k));
  for (unsigned n = 1; n <= d; ++n) {
    Character acc;
    acc.lat = chi.lat;
    for (unsigned k = 1; k <= n; ++k) acc = acc + psi[k] * sym[n - k];
    sym[n] = acc.scaled(Rat(1, n));
  }
  return sym;
}

inline Character sym_power_character(const Character& chi, unsigned d) {
  return sym_power_ladder(chi, d).back();
}

inline std::string key_to_string(const Lattice& lat, const WKey& k) {
  std::string s = "(";
  for (std::size_t f = 0; f < lat.factors.size(); ++f) {
    if (f) s += " x ";
    Weight w = slice(k, lat, f);
    bool zero = std::all_of(w.begin(), w.end(), [](int x) { return x == 0; });
    if (zero) {
      s += "1";
      continue;
    }
    bool first = true;
    for (int i = 0; i < lat.factors[f].rank; ++i) {
      if (w[i] == 0) continue;
      if (!first) s += "+";
      if (w[i] != 1) s += std::to_string(w[i]);
      s += "w" + std::to_string(i + 1);
      first = false;
    }
  }
  if (lat.center_dim > 0) {
    s += " ; c=";
    int off = lat.coords() - lat.center_dim;
    for (int i = 0; i < lat.center_dim; ++i) {
      if (i) s += ",";
      s += std::to_string(k[off + i]);
    }
  }
  s += ")";
  return s;
}

}  // namespace spherocheck::lie

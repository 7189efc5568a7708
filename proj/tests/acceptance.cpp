// Acceptance suite: one line per criterion, nonzero exit on any failure.
//
//  1. every table instance with dim W <= 40 verifies Spherical with an exact
//     rational witness of rank dim W - 1, within the 10-minute budget
//  2. curated negatives certify by dimension count resp. a degree-3
//     multiplicity-2 certificate; 64 trials never reach full rank there
//  3. rank verdicts and the multiplicity oracle never contradict
//  4. Gr(r) spherical implies P(W) spherical on every instance with
//     dim W <= 12, for every r
//  5. Chevalley/Serre relations, Weyl dimensions and Freudenthal characters
//     agree exactly on all constructed modules
//  6. moment-map points are trace-zero square-zero; isotropy holds on the
//     annihilators; the Lagrangian identity holds at minimal-orbit points
//  7. the normalizer of the standard sl_n image is gl_n; the self-normalizer
//     condition holds exactly with scalars and fails without them
//  8. verify-table output is byte-identical across reruns modulo timings

#include <chrono>
#include <iostream>
#include <set>
#include <sstream>
#include <vector>

#include "spherocheck/spec_dsl.hpp"
#include "spherocheck/sphericity.hpp"
#include "spherocheck/symplectic.hpp"
#include "spherocheck/table61.hpp"

using namespace spherocheck;
using la::QMatrix;
using la::QVector;
using la::Rat;
using lie::Weight;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::cout << "criterion " << criterion << ": " << (pass ? "PASS" : "FAIL") << " — "
            << detail << "\n";
  if (!pass) ++failures;
}

la::SampleConfig cfg(unsigned trials = 16) {
  la::SampleConfig c;
  c.seed = 0x5eed5eedULL;
  c.trials = trials;
  c.height_bound = 7;
  return c;
}

std::string table_path() {
  return std::string(SPHEROCHECK_SOURCE_DIR) + "/data/table61.txt";
}

struct Suite {
  tab::Enumeration enumeration;
  std::vector<tab::EntryReport> reports;
};

QMatrix random_combo(const std::vector<QMatrix>& basis, std::uint64_t seed,
                     std::uint64_t stream) {
  la::SampleConfig c;
  c.seed = seed;
  QVector coeffs = la::random_vector(basis.size(), c, stream);
  QMatrix m(basis[0].rows(), basis[0].cols());
  for (std::size_t k = 0; k < basis.size(); ++k) m = m + basis[k] * coeffs[k];
  return m;
}

// exact exp(t ad(g)) x for ad-nilpotent g
QMatrix exp_ad(const QMatrix& g, const Rat& t, QMatrix x) {
  QMatrix acc = x;
  QMatrix term = x;
  Rat coeff = 1;
  for (int k = 1; k <= static_cast<int>(g.rows() * g.rows()); ++k) {
    term = la::bracket(g, term);
    if (term.is_zero()) break;
    coeff *= t / Rat(k);
    acc = acc + term * coeff;
  }
  return acc;
}

}  // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();

  // ---- criterion 1: table verification ----
  Suite suite;
  {
    auto entries = tab::load_table(table_path());
    suite.enumeration = tab::enumerate_instances(entries, 40);
    bool all = true;
    std::set<std::string> families;
    std::string first_fail;
    for (const auto& inst : suite.enumeration.instances) {
      tab::EntryReport r = tab::verify_entry(inst, cfg());
      families.insert(inst.entry_id);
      bool good = r.verdict.status == sph::Status::Spherical && r.verdict.witness &&
                  r.verdict.witness->achieved_rank == static_cast<std::size_t>(r.dim - 1);
      if (!good && first_fail.empty()) first_fail = inst.entry_id + " " + inst.text;
      all = all && good;
      suite.reports.push_back(std::move(r));
    }
    // all families of the table must be covered
    const char* required[] = {"0",     "i.1",   "i.2",   "i.3",   "i.4",   "i.5",
                              "i.6",   "i.7",   "i.8",   "i.9",   "i.10",  "i.11",
                              "i.12",  "ii.1",  "ii.2",  "ii.3",  "ii.4",  "ii.5",
                              "ii.6",  "iii.1", "iii.2", "iii.3", "iii.4", "iii.5",
                              "iii.6", "iii.7", "iii.8", "iii.9", "iii.10", "iii.11",
                              "iii.12", "iii.13", "iii.14", "iii.15", "iii.16",
                              "iii.17", "iii.18"};
    bool covered = true;
    std::string missing;
    for (const char* f : required)
      if (!families.count(f)) {
        covered = false;
        missing += std::string(f) + " ";
      }
    long secs = std::chrono::duration_cast<std::chrono::seconds>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
    bool in_budget = secs < 600;
    std::ostringstream d;
    d << suite.enumeration.instances.size() << " instances (dim W <= 40) across "
      << families.size() << " families, all Spherical with exact witnesses of rank dim W - 1, "
      << secs << " s";
    if (!covered) d << "; MISSING families: " << missing;
    if (!first_fail.empty()) d << "; first failure: " << first_fail;
    report(1, all && covered && in_budget, d.str());
  }

  // ---- criterion 2: curated negatives ----
  {
    bool pass = true;
    std::ostringstream d;
    auto quartic = tab::run_negative_control(
        {"quartic", "sl(2): 4w1", tab::Expectation::DimensionCount}, cfg());
    auto adjoint = tab::run_negative_control(
        {"adjoint", "sl(3): w1+w2", tab::Expectation::DimensionCount}, cfg());
    pass = pass && quartic.pass && adjoint.pass;

    rep::PairSpec triple = dsl::parse_pair_spec(
        "sl(2): w1 ++ w1 ++ w1 [h(1,0,0), h(0,1,0), h(0,0,1)]");
    rep::SubalgebraInGl sub = rep::assemble(triple);
    sph::Verdict v = sph::is_spherical_projective(sub, cfg(64), triple, 6);
    bool cert_ok = v.status == sph::Status::NotSpherical && v.certificate &&
                   v.certificate->degree == 3 && v.certificate->multiplicity == 2;
    bool no_witness = !v.witness && v.trials_used == 64;
    pass = pass && cert_ok && no_witness;
    d << "quartic and adjoint certified by dimension count; triple standard certified by a "
         "multiplicity-2 certificate at degree 3 with 64/64 witness trials below full rank";
    report(2, pass, d.str());
  }

  // ---- criterion 3: oracle agreement ----
  {
    bool pass = true;
    unsigned spherical = 0;
    for (const auto& r : suite.reports)
      if (r.verdict.status == sph::Status::Spherical) {
        ++spherical;
        if (!r.profile_all_one) pass = false;
      }
    // certified negatives never produce a witness
    unsigned certified = 0;
    for (const auto& c : tab::negative_controls()) {
      if (c.expect == tab::Expectation::RecordOnly) continue;
      rep::PairSpec spec = dsl::parse_pair_spec(c.text);
      rep::SubalgebraInGl sub = rep::assemble(spec);
      sph::Verdict v = sph::is_spherical_projective(sub, cfg(64), spec, 6);
      if (v.status != sph::Status::NotSpherical || v.witness) pass = false;
      ++certified;
    }
    std::ostringstream d;
    d << spherical << " spherical instances all multiplicity-free up to degree 4; "
      << certified << " certified negatives never reached full rank in 64 trials";
    report(3, pass, d.str());
  }

  // ---- criterion 4: Gr(r) spherical => P(W) spherical ----
  {
    bool pass = true;
    unsigned tested = 0, gr_spherical = 0;
    std::string violation;
    for (const auto& inst : suite.enumeration.instances) {
      if (inst.dim > 12) continue;
      rep::SubalgebraInGl sub = rep::assemble(tab::saturated(inst.spec));
      sph::Verdict p = sph::is_spherical_projective(sub, cfg());
      for (std::size_t r = 1; r < static_cast<std::size_t>(inst.dim); ++r) {
        sph::Verdict g = sph::is_spherical_grassmannian(sub, r, cfg());
        ++tested;
        if (g.status == sph::Status::Spherical) {
          ++gr_spherical;
          if (p.status != sph::Status::Spherical) {
            pass = false;
            if (violation.empty())
              violation = inst.entry_id + " " + inst.text + " at r=" + std::to_string(r);
          }
        }
      }
    }
    std::ostringstream d;
    d << tested << " (instance, r) pairs with dim W <= 12; " << gr_spherical
      << " Grassmannian-spherical, zero violations of the implication";
    if (!violation.empty()) d << "; violated at " << violation;
    report(4, pass, d.str());
  }

  // ---- criterion 5: representation integrity ----
  {
    bool pass = true;
    std::ostringstream d;
    struct Named {
      rep::Alg alg;
      int size;
      Weight user_weight;
      std::size_t dim;
    };
    std::vector<Named> named = {
        {rep::Alg::SO, 7, {0, 0, 1}, 8},        {rep::Alg::SO, 9, {0, 0, 0, 1}, 16},
        {rep::Alg::SO, 10, {0, 0, 0, 1, 0}, 16}, {rep::Alg::SO, 10, {0, 0, 0, 0, 1}, 16},
        {rep::Alg::G2, 0, {1, 0}, 7},           {rep::Alg::E6, 0, {1, 0, 0, 0, 0, 0}, 27},
    };
    for (const auto& c : named) {
      rep::Factor f{c.alg, c.size};
      rep::MatrixRep m = rep::hw_module(f.root_system(), f.to_internal(c.user_weight));
      if (m.dim != c.dim) pass = false;
      if (!rep::chevalley_ok(m) || !rep::serre_ok(m)) pass = false;
      std::map<Weight, la::Int> freq;
      for (const auto& w : m.weights) freq[w] += 1;
      if (freq != lie::weight_multiplicity_map(m.rs, m.highest_weight)) pass = false;
    }
    // every factor module arising in the table suite
    std::set<std::pair<std::string, Weight>> seen;
    unsigned modules = named.size();
    for (const auto& inst : suite.enumeration.instances)
      for (const auto& word : inst.spec.summands)
        for (std::size_t f = 0; f < inst.spec.factors.size(); ++f) {
          const auto key = std::make_pair(inst.spec.factors[f].name(), word[f]);
          if (seen.count(key)) continue;
          seen.insert(key);
          const lie::RootSystem& rs = inst.spec.factors[f].root_system();
          rep::MatrixRep m = rep::hw_module(rs, word[f]);
          ++modules;
          if (!rep::chevalley_ok(m) || !rep::serre_ok(m)) {
            pass = false;
            d << "relations fail for " << key.first << "; ";
          }
          if (lie::weyl_dim(rs, word[f]) != static_cast<long>(m.dim)) pass = false;
          std::map<Weight, la::Int> freq;
          for (const auto& w : m.weights) freq[w] += 1;
          if (freq != lie::weight_multiplicity_map(rs, m.highest_weight)) pass = false;
        }
    d << modules
      << " modules (spin 8/16/16, G2 7, E6 27, and every table factor) satisfy the "
         "Chevalley and Serre relations exactly; dimensions and characters match";
    report(5, pass, d.str());
  }

  // ---- criterion 6: symplectic checks ----
  {
    bool pass = true;
    std::ostringstream d;
    // (a) 100 moment-map points per ambient dimension
    for (std::size_t n : {3u, 4u, 5u}) {
      la::SampleConfig c = cfg();
      unsigned made = 0;
      for (unsigned t = 0; made < 100; ++t) {
        QVector w = la::random_vector(n, c, t);
        if (la::is_zero(w)) continue;
        QMatrix row(1, n);
        for (std::size_t j = 0; j < n; ++j) row(0, j) = w[j];
        auto ann = la::kernel_basis(row);
        QMatrix m = symp::moment_image_point(w, ann[t % ann.size()]);
        if (m.trace() != 0 || !(m * m).is_zero() || la::rank(m) > 1) pass = false;
        ++made;
      }
    }
    d << "300 moment-map points trace-zero and square-zero exactly; ";

    // (b) isotropy on the annihilators
    rep::SubalgebraInGl so3 = rep::assemble(dsl::parse_pair_spec("so(3): w1"));
    rep::SubalgebraInGl sp4 = rep::assemble(dsl::parse_pair_spec("sp(4): w1"));
    for (const auto* sub : {&so3, &sp4}) {
      auto perp = symp::perp_space(*sub);
      for (std::uint64_t s = 0; s < 100; ++s) {
        QMatrix x = random_combo(perp, 99, s);
        if (!symp::isotropy_check(*sub, symp::CoadjointPoint(x))) pass = false;
      }
    }
    d << "isotropy holds at 200 annihilator points; ";

    // (c) Lagrangian identity at minimal-orbit points.
    // so3: rank-one points exist exactly on the invariant cone.
    {
      unsigned good = 0;
      const QMatrix& f = so3.basis.back();
      for (long tv = 1; tv <= 8; ++tv) {
        QVector w(3, Rat(0));
        w[0] = 1;  // highest weight vector, then lowered exactly
        QVector term = w, acc = w;
        Rat coeff = 1;
        for (std::size_t k = 1; k < 3; ++k) {
          term = f * term;
          coeff *= Rat(tv, 3) / Rat(static_cast<long>(k));
          for (std::size_t i = 0; i < 3; ++i) acc[i] += coeff * term[i];
        }
        auto xis = symp::conormal_directions(so3, acc);
        if (xis.size() != 1) continue;
        QMatrix x = symp::moment_image_point(acc, xis[0]);
        if (x.is_zero()) continue;
        auto lag = symp::lagrangian_check(so3, symp::CoadjointPoint(x));
        if (lag && *lag &&
            symp::orbit_dimension(so3.basis, symp::CoadjointPoint(x)) == 2)
          ++good;
      }
      if (good < 6) pass = false;
      d << "so3: Lagrangian at " << good << " cone points (K-orbit dim 2 = (2*3-2)/2); ";
    }
    // sp4: the rank-one clause is vacuous — k-perp contains no nonzero rank-one
    // nilpotent (xi must annihilate sp4.w = F^4). Established exactly, then the
    // same identity is verified at generic nilpotent points of k-perp, which
    // sit in the square-zero rank-two orbit.
    {
      bool empty_ok = true;
      for (std::size_t i = 0; i < 4; ++i) {
        QVector w(4, Rat(0));
        w[i] = 1;
        if (!symp::conormal_directions(sp4, w).empty()) empty_ok = false;
      }
      la::SampleConfig c = cfg();
      for (unsigned t = 0; t < 100; ++t) {
        QVector w = la::random_vector(4, c, t);
        if (la::is_zero(w)) continue;
        if (!symp::conormal_directions(sp4, w).empty()) empty_ok = false;
      }
      if (!empty_ok) pass = false;

      // highest weight vector of the annihilator module: the common kernel of
      // ad(e_1), ad(e_2) inside the span of perp (basis order: h_1, h_2,
      // four e's, four f's)
      auto perp = symp::perp_space(sp4);
      QMatrix coords(2 * 16, perp.size());
      for (std::size_t k = 0; k < perp.size(); ++k) {
        QVector b1 = la::bracket(sp4.basis[2], perp[k]).vec();
        QVector b2 = la::bracket(sp4.basis[3], perp[k]).vec();
        for (std::size_t i = 0; i < 16; ++i) {
          coords(i, k) = b1[i];
          coords(16 + i, k) = b2[i];
        }
      }
      auto hw = la::kernel_basis(coords);
      bool lag_ok = hw.size() == 1;
      if (lag_ok) {
        QMatrix xplus(4, 4);
        for (std::size_t k = 0; k < perp.size(); ++k)
          xplus = xplus + perp[k] * hw[0][k];
        lag_ok = (xplus * xplus).is_zero() && la::rank(xplus) == 2;
        unsigned checked = 0;
        for (long t1 = 1; t1 <= 3 && lag_ok; ++t1)
          for (long t2 = 1; t2 <= 3 && lag_ok; ++t2) {
            QMatrix x = exp_ad(sp4.basis[7], Rat(t1, 2),  // two lowering root vectors
                               exp_ad(sp4.basis[6], Rat(t2, 3), xplus));
            symp::CoadjointPoint pt(x);
            if (!symp::in_perp(sp4, x) || !(x * x).is_zero()) {
              lag_ok = false;
              break;
            }
            std::size_t korb = symp::orbit_dimension(sp4.basis, pt);
            std::size_t gorb = symp::orbit_dimension(symp::sl_basis(4), pt);
            if (!(korb == 4 && gorb == 8)) {
              lag_ok = false;
              break;
            }
            ++checked;
          }
        lag_ok = lag_ok && checked == 9;
      }
      if (!lag_ok) pass = false;
      d << "sp4: rank-one clause vacuous — k-perp meets the rank-one cone only in 0 "
           "(104 exact annihilator computations); Lagrangian identity verified at 9 "
           "generic square-zero points of k-perp (K-orbit 4 = G-orbit 8 / 2)";
    }
    report(6, pass, d.str());
  }

  // ---- criterion 7: normalizer condition for the standard action ----
  {
    bool pass = true;
    for (int n : {2, 3}) {
      std::string text = "sl(" + std::to_string(n) + "): w1";
      rep::SubalgebraInGl sub = rep::assemble(dsl::parse_pair_spec(text));
      auto nz = sph::normalizer_in_gl(sub.basis, sub.ambient_dim);
      if (nz.size() != static_cast<std::size_t>(n * n)) pass = false;
      if (!sph::normalizer_condition_holds(dsl::parse_pair_spec(text + " [h1]"))) pass = false;
      if (sph::normalizer_condition_holds(dsl::parse_pair_spec(text))) pass = false;
    }
    report(7, pass,
           "normalizer of the standard sl_n image has dimension n^2 (n = 2, 3); the "
           "condition holds with h1 and fails without it");
  }

  // ---- criterion 8: determinism of verify-table ----
  {
    auto render = [&]() {
      std::ostringstream os;
      os << tab::tsv_header() << "\n";
      auto entries = tab::load_table(table_path());
      auto e = tab::enumerate_instances(entries, 16);
      for (const auto& inst : e.instances) {
        std::string row = tab::tsv_row(tab::verify_entry(inst, cfg()));
        os << row.substr(0, row.rfind('\t')) << "\n";  // strip the timing column
      }
      return os.str();
    };
    std::string a = render();
    std::string b = render();
    report(8, !a.empty() && a == b,
           "two verify-table renderings (same seed, dim W <= 16) are byte-identical "
           "modulo the timing column");
  }

  long total = std::chrono::duration_cast<std::chrono::seconds>(
                   std::chrono::steady_clock::now() - t0)
                   .count();
  std::cout << (failures ? "ACCEPTANCE: FAIL (" : "ACCEPTANCE: PASS (") << failures
            << " failed criteria, " << total << " s total)\n";
  return failures ? 1 : 0;
}

#include <catch2/catch_amalgamated.hpp>

#include "spherocheck/mult_free.hpp"

using namespace spherocheck;
using la::Int;
using la::Rat;
using lie::Weight;
using lie::WKey;

namespace {

rep::PairSpec standard_with_scalars(int n) {
  rep::PairSpec s;
  s.factors = {{rep::Alg::SL, n}};
  Weight w1(n - 1, 0);
  w1[0] = 1;
  s.summands = {{w1}};
  s.center = {{1}};
  return s;
}

rep::PairSpec triple_standard_sl2() {
  rep::PairSpec s;
  s.factors = {{rep::Alg::SL, 2}};
  s.summands = {{Weight{1}}, {Weight{1}}, {Weight{1}}};
  s.center = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  return s;
}

Int binom(unsigned long n, unsigned long k) {
  Int b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

}  // namespace

TEST_CASE("symmetric powers of the dual standard module stay irreducible") {
  for (int n : {2, 3, 4}) {
    rep::PairSpec spec = standard_with_scalars(n);
    for (unsigned d = 1; d <= 4; ++d) {
      mf::GradedDecomposition dec = mf::sym_decomposition(spec, d);
      REQUIRE(dec.components.size() == 1);
      const mf::Component& c = dec.components[0];
      CHECK(c.multiplicity == 1);
      WKey expect(n, 0);          // n-1 weight coords + 1 center coord
      expect[n - 2] = static_cast<int>(d);  // d * omega_{n-1}
      expect[n - 1] = -static_cast<int>(d); // center weight of S^d(W*)
      CHECK(c.highest_weight == expect);
      CHECK(dec.total_dim == binom(n + d - 1, d));
    }
  }
}

TEST_CASE("degree one recovers the decomposition of W* itself") {
  rep::PairSpec spec = triple_standard_sl2();
  mf::GradedDecomposition dec = mf::sym_decomposition(spec, 1);
  REQUIRE(dec.components.size() == 3);
  for (const auto& c : dec.components) {
    CHECK(c.multiplicity == 1);
    CHECK(c.dim == 2);
    CHECK(c.highest_weight[0] == 1);  // sl2 standard is self-dual
  }
  CHECK(dec.total_dim == 6);
}

TEST_CASE("tensor square of sl2 x sl2 is multiplicity free in degree two") {
  rep::PairSpec spec;
  spec.factors = {{rep::Alg::SL, 2}, {rep::Alg::SL, 2}};
  spec.summands = {{Weight{1}, Weight{1}}};
  mf::GradedDecomposition dec = mf::sym_decomposition(spec, 2);
  CHECK(dec.total_dim == binom(5, 2));
  for (const auto& c : dec.components) CHECK(c.multiplicity == 1);
}

TEST_CASE("three copies of the standard module produce a degree-3 multiplicity certificate") {
  rep::PairSpec spec = triple_standard_sl2();
  mf::GradedDecomposition d3 = mf::sym_decomposition(spec, 3);
  // the multilinear component V1 (x) V1 (x) V1 contains V1 twice
  bool found = false;
  for (const auto& c : d3.components)
    if (c.highest_weight == WKey{1, -1, -1, -1}) {
      found = true;
      CHECK(c.multiplicity == 2);
    }
  CHECK(found);

  auto cert = mf::nonspherical_certificate(spec, 4);
  REQUIRE(cert.has_value());
  CHECK(cert->degree == 3);
  CHECK(cert->component == WKey{1, -1, -1, -1});
  CHECK(cert->multiplicity == 2);
}

TEST_CASE("spherical actions have no certificate and an all-ones profile") {
  rep::PairSpec sp4;
  sp4.factors = {{rep::Alg::SP, 4}};
  sp4.summands = {{Weight{1, 0}}};
  sp4.center = {{1}};
  CHECK_FALSE(mf::nonspherical_certificate(sp4, 6).has_value());
  for (const auto& [d, m] : mf::multiplicity_profile(sp4, 6)) CHECK(m == 1);

  // so3 vector representation inside sl3, realized through sl2
  rep::PairSpec so3;
  so3.factors = {{rep::Alg::SL, 2}};
  so3.summands = {{Weight{2}}};
  for (const auto& [d, m] : mf::multiplicity_profile(so3, 4)) CHECK(m == 1);
}

TEST_CASE("profile of the triple standard module reaches 2 at degree 3") {
  auto prof = mf::multiplicity_profile(triple_standard_sl2(), 4);
  REQUIRE(prof.size() == 4);
  CHECK(prof[0].second == 1);
  CHECK(prof[1].second == 1);
  CHECK(prof[2].second == 2);
}

TEST_CASE("dimension conservation in every degree") {
  std::vector<rep::PairSpec> specs = {standard_with_scalars(3), triple_standard_sl2()};
  {
    rep::PairSpec g2;
    g2.factors = {{rep::Alg::G2, 0}};
    g2.summands = {{Weight{1, 0}}};
    specs.push_back(g2);
  }
  for (const auto& spec : specs) {
    unsigned long dw = rep::dim_w(spec).get_ui();
    for (unsigned d = 1; d <= 3; ++d) {
      mf::GradedDecomposition dec = mf::sym_decomposition(spec, d);
      CHECK(dec.total_dim == binom(dw + d - 1, d));
      for (const auto& c : dec.components) CHECK(c.multiplicity >= 1);
    }
  }
}

TEST_CASE("a degenerate degree bound yields no certificate") {
  CHECK_FALSE(mf::nonspherical_certificate(triple_standard_sl2(), 0).has_value());
}

TEST_CASE("caps are respected") {
  rep::PairSpec big = standard_with_scalars(4);
  CHECK_THROWS_AS(mf::sym_decomposition(big, 2, 3), la::cap_exceeded);
}

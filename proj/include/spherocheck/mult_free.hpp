#pragma once

// Degree-by-degree decomposition of F[W] = (+)_d S^d(W*) as a module over the
// product algebra and its center. A component of multiplicity >= 2 inside a
// single degree refutes sphericity of P(W); the degree grading itself plays
// the role of the global scalar operator, so no explicit scalar generator is
// needed. The oracle only ever refutes: finite-degree multiplicity-freeness
// is reported as evidence, never as proof.

#include <optional>
#include <vector>

#include "spherocheck/lie_core.hpp"
#include "spherocheck/rep_build.hpp"

namespace spherocheck::mf {

struct Component {
  lie::WKey highest_weight;  // per-factor weights followed by center coordinates
  la::Int multiplicity;
  la::Int dim;  // dimension of one copy
};

struct GradedDecomposition {
  unsigned degree = 0;
  lie::Lattice lattice;
  std::vector<Component> components;  // in peel order
  la::Int total_dim = 0;              // = binom(dim W + d - 1, d)
};

namespace detail {

inline GradedDecomposition decompose_character(const lie::Lattice& lat,
                                               const lie::Character& sym_d, unsigned d) {
  GradedDecomposition out;
  out.degree = d;
  out.lattice = lat;
  for (const auto& [hw, mult] : lie::decompose(sym_d)) {
    Component c;
    c.highest_weight = hw;
    c.multiplicity = mult;
    c.dim = lie::dim_of_highest_weight(lat, hw);
    out.total_dim += c.dim * mult;
    out.components.push_back(std::move(c));
  }
  return out;
}

}  // namespace detail

// Decomposition of S^d(W*); components are keyed by the joint pair
// (semisimple highest weight, center character).
inline GradedDecomposition sym_decomposition(const rep::PairSpec& spec, unsigned d,
                                             std::size_t cap = 64) {
  rep::validate(spec);
  if (rep::dim_w(spec) > static_cast<long>(cap))
    throw la::cap_exceeded("sym_decomposition: dim W exceeds cap");
  lie::Character dual_w = rep::character_of_w(spec).dual();
  return detail::decompose_character(rep::lattice_of(spec),
                                     lie::sym_power_character(dual_w, d), d);
}

struct Certificate {
  unsigned degree = 0;
  lie::WKey component;
  la::Int multiplicity;
};

// First (lowest-degree, then peel-order) component with multiplicity >= 2 in
// S^d(W*) for d <= dmax, if any.
inline std::optional<Certificate> nonspherical_certificate(const rep::PairSpec& spec,
                                                           unsigned dmax,
                                                           std::size_t cap = 64) {
  rep::validate(spec);
  if (rep::dim_w(spec) > static_cast<long>(cap))
    throw la::cap_exceeded("nonspherical_certificate: dim W exceeds cap");
  lie::Character dual_w = rep::character_of_w(spec).dual();
  std::vector<lie::Character> ladder = lie::sym_power_ladder(dual_w, dmax);
  for (unsigned d = 1; d <= dmax; ++d) {
    GradedDecomposition dec =
        detail::decompose_character(rep::lattice_of(spec), ladder[d], d);
    for (const auto& c : dec.components)
      if (c.multiplicity >= 2) return Certificate{d, c.highest_weight, c.multiplicity};
  }
  return std::nullopt;
}

// (d, max multiplicity in degree d) for d = 1..dmax.
inline std::vector<std::pair<unsigned, la::Int>> multiplicity_profile(
    const rep::PairSpec& spec, unsigned dmax, std::size_t cap = 64) {
  rep::validate(spec);
  if (rep::dim_w(spec) > static_cast<long>(cap))
    throw la::cap_exceeded("multiplicity_profile: dim W exceeds cap");
  lie::Character dual_w = rep::character_of_w(spec).dual();
  std::vector<lie::Character> ladder = lie::sym_power_ladder(dual_w, dmax);
  std::vector<std::pair<unsigned, la::Int>> out;
  for (unsigned d = 1; d <= dmax; ++d) {
    GradedDecomposition dec =
        detail::decompose_character(rep::lattice_of(spec), ladder[d], d);
    la::Int mx = dec.components.empty() ? la::Int(1) : la::Int(0);
    for (const auto& c : dec.components)
      if (c.multiplicity > mx) mx = c.multiplicity;
    out.push_back({d, mx});
  }
  return out;
}

}  // namespace spherocheck::mf

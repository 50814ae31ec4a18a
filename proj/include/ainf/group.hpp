#pragma once

#include <string>
#include <vector>

#include "ainf/ainf.hpp"

namespace ainf {

// Finite group from a multiplication table over element indices.
struct FiniteGroup {
  std::string name;
  std::vector<std::string> labels;
  std::vector<std::vector<int>> table;  // table[a][b] = index of a*b
  int identity = 0;
  std::vector<int> inverse;

  // Validates closure, associativity, identity and inverses; fills identity and inverse.
  static FiniteGroup from_table(std::string name, std::vector<std::string> labels, std::vector<std::vector<int>> table);
  static FiniteGroup cyclic(int n);
  static FiniteGroup symmetric3();

  int order() const { return static_cast<int>(labels.size()); }
  int mul(int a, int b) const { return table.at(a).at(b); }
  int index_of(const std::string& label) const;
};

// Representation of a finite group by degree-preserving automorphisms of V, one matrix per element.
struct LinearAction {
  FiniteGroup group;
  SpacePtr space;
  std::vector<Matrix> rho;

  // Extends generator images to the whole group (products of generators) and validates.
  static LinearAction from_generators(const FiniteGroup& group, SpacePtr space,
                                      const std::vector<std::pair<int, Matrix>>& generators);
  void validate() const;
  // g . f = rho_g o f o (rho_g^{-1})^{(x) n}
  MultiMap act(int g, const MultiMap& f) const;
  // Whether every rho_g is a strict automorphism of A (g mu^n = mu^n).
  bool preserves(const AInfAlgebra& A) const;
};

// (1/|G|) sum_g g . f
MultiMap average_invariant(const MultiMap& f, const LinearAction& act);

// Strict morphism with linear part m and no higher components.
AInfMorphism strict_morphism(AlgebraPtr src, AlgebraPtr dst, const Matrix& m, std::string name = "");

// Unnormalized bar complex of G with integer coefficients: chains are tuples [g_1|...|g_q].
struct BarComplex {
  FiniteGroup group;
  int cap;
  BarComplex(const FiniteGroup& g, int cap);
  size_t chain_count(int q) const;
  // Boundary C_q -> C_{q-1}: [g_2|..|g_q] + sum_i (-1)^i [..|g_i g_{i+1}|..] + (-1)^q [g_1|..|g_{q-1}].
  Matrix boundary(int q) const;
};

// Twisted cochain differential C^q(G; M) -> C^{q+1}(G; M) for a module given by matrices rho_g.
Matrix cochain_differential(const FiniteGroup& g, const std::vector<Matrix>& module, int q);

// dim H^p(G; M) over Q from exact ranks of the twisted bar cochain complex.
size_t group_cohomology_dim(const FiniteGroup& g, const std::vector<Matrix>& module, int p, int cap = 3);

// Free group on r generators acting on M by the given matrices: H^0 = common invariants,
// H^1 = coker of u -> ((1 - g_s) u)_s, H^p = 0 for p >= 2.
size_t free_group_cohomology(const std::vector<Matrix>& generators, int p);

}  // namespace ainf

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ainf/linalg.hpp"
#include "ainf/multimap.hpp"

namespace ainf {

// Arity-truncated A-infinity algebra: mu[k] has arity k and total shift 2-k, 0 <= k <= cap.
// When `internal_d` is set the coefficients are polynomial forms in t and the structure also
// contains the de Rham differential D acting on coefficients (the tensor dga Omega*(I_t) (x) V).
struct AInfAlgebra {
  std::string name;
  SpacePtr space;
  int cap = 0;
  std::vector<MultiMap> mu;
  bool internal_d = false;
  bool flat = true;

  static AInfAlgebra zero(SpacePtr space, int cap, std::string name = "");
  const MultiMap& m(int k) const { return mu.at(k); }
  MultiMap& m(int k) { return mu.at(k); }
  // Throws InvariantError naming the first violated invariant.
  void validate() const;
};

using AlgebraPtr = std::shared_ptr<const AInfAlgebra>;

// F[n] has arity n and shift 1-n for 1 <= n <= cap; F[0] is unused and kept empty.
struct AInfMorphism {
  std::string name;
  AlgebraPtr src, dst;
  int cap = 0;
  std::vector<MultiMap> f;

  static AInfMorphism zero(AlgebraPtr src, AlgebraPtr dst, std::string name = "");
  const MultiMap& F(int n) const { return f.at(n); }
  MultiMap& F(int n) { return f.at(n); }
  void validate() const;
  // Equality of every component table.
  bool same_maps(const AInfMorphism& o) const;
};

// Homotopy between morphisms F and G: T[n] of arity n and shift -n.
struct AInfHomotopy {
  std::string name;
  std::shared_ptr<const AInfMorphism> F, G;
  int cap = 0;
  std::vector<MultiMap> t;

  static AInfHomotopy zero(std::shared_ptr<const AInfMorphism> F, std::shared_ptr<const AInfMorphism> G,
                           std::string name = "");
  const MultiMap& T(int n) const { return t.at(n); }
  MultiMap& T(int n) { return t.at(n); }
  void validate() const;
};

// D(f): the de Rham differential in t applied to the output coefficients.
MultiMap apply_internal_d(const MultiMap& f);

MultiMap stasheff_defect(const AInfAlgebra& A, int n);
MultiMap morphism_defect(const AInfMorphism& F, int n);
MultiMap homotopy_defect(const AInfHomotopy& H, int n);

// F o G (G is applied first).
AInfMorphism compose(const AInfMorphism& F, const AInfMorphism& G);
AInfMorphism identity_morphism(AlgebraPtr A);
// Strict inverse G with F o G = id; requires F^1 invertible with constant coefficients.
AInfMorphism invert(const AInfMorphism& F);

// Given A and maps F^2..F^cap (F^1 = id), the unique structure B on the same space making
// F : A -> B a morphism.
AlgebraPtr pushforward_structure(const AInfAlgebra& A, const std::vector<MultiMap>& higher, std::string name = "");

// Status of one defect level, for reports.
struct LevelStatus {
  int level = 0;
  bool zero = true;
  std::string witness;  // basis tuple and coefficient of a nonzero entry
};

LevelStatus level_status(int level, const MultiMap& defect);

// Constant-coefficient matrix of a linear map (rows: output basis, columns: input basis).
Matrix linear_matrix(const MultiMap& f);
MultiMap map_from_matrix(SpacePtr src, SpacePtr dst, const Matrix& m);

}  // namespace ainf

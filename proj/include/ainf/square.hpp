#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ainf/field.hpp"

namespace ainf {

// Witness if the structure on the edges s = 0 and s = 1 is not t-constant (or has dt parts).
std::optional<std::string> boundary_violation(const Field& square);

// Checks a family on I_s x I_t: MC, flat fibers, alpha^{1,1} = 0, continuity and the edge condition.
void check_square(const Field& square);

// Collapse of I x I to I_s. The result lives on the s-grid with coefficients that are forms in t;
// ds-free terms form alpha-hat^0 and terms containing ds form alpha-hat^1. Fibers carry d = d_t.
Field collapse(const Field& square);

// Transport of a collapsed family from s = 0 to s = 1 with unary depth 1.
AInfMorphism hat_transport(const Field& hat);

// A family F_t of morphisms with a differential homotopy Theta_t, as polynomials in t.
struct DiffHomotopy {
  AlgebraPtr src, dst;            // constant-coefficient algebras
  std::vector<MultiMap> F, theta;  // index n = 1..cap, coefficients in Q[t]; index 0 unused
  int cap() const { return static_cast<int>(F.size()) - 1; }
  AInfMorphism family_at(const Scalar& t) const;
  MultiMap theta_at(const Scalar& t, int n) const;
  // phi = F + dt Theta as a morphism into Omega*(I_t) (x) dst.
  AInfMorphism as_form_morphism() const;
};

// Splits a morphism between collapsed fibers into its 0-form and dt parts.
DiffHomotopy split_differential_homotopy(const AInfMorphism& g_hat);

// The dt-coefficient of the morphism relation of phi at level n, evaluated at t.
MultiMap diff_homotopy_defect(const DiffHomotopy& D, const Scalar& t, int n);

// Candidate classical homotopy T^n = integral_0^1 Theta_t^n dt from F_1 to F_0, with its defects.
struct CandidateReport {
  AInfHomotopy homotopy;
  std::vector<LevelStatus> levels;  // n = 1..cap
};
CandidateReport classical_candidate(const DiffHomotopy& D);

}  // namespace ainf

#pragma once

#include <array>
#include <vector>

#include "ainf/ainf.hpp"

namespace ainf {

// The interval quiver dga I = <u0, u1 (degree 0), h (degree 1)> with hu0 = h = u1h, the
// idempotents u0, u1, all other products zero, and the differential du0 = h = -du1, dh = 0.
// As an A-infinity algebra it carries mu^1 = -d and mu^2(x, y) = (-1)^|x| xy.
struct QuiverI {
  static SpacePtr space();
  // Structure constants: product(i, j) and differential(i) as coefficient vectors on (u0, u1, h).
  static std::array<Scalar, 3> product(size_t i, size_t j);
  static std::array<Scalar, 3> differential(size_t i);
  static AInfAlgebra algebra(int cap);
};

using QuiverElement = std::array<Scalar, 3>;  // coefficients of u0, u1, h

// Omega*(I_t) as an A-infinity algebra: mu^1 = d, mu^2(a, b) = (-1)^|a| ab. Elements are
// homogeneous polynomial forms in t.
Form omega_mu(const std::vector<Form>& args);

// Phi^k(a_1, ..., a_k): for k = 1, a(0) u0 + a(1) u1 + (integral of b) h for a + b dt; for k >= 2 the
// ordered simplex integral over 0 <= t_k <= ... <= t_1 <= 1 of the product times h when every
// argument is a 1-form, and 0 otherwise. Extended multilinearly.
QuiverElement phi(const std::vector<Form>& args);

// Residual of the A-infinity morphism relation of Phi : Omega*(I_t) -> I on homogeneous arguments.
QuiverElement phi_defect(const std::vector<Form>& args);

// Omega*(I_t) (x) B: the coefficient extension of B together with the de Rham differential in t.
AInfAlgebra tensor_dga(const AInfAlgebra& B);

// mu^n of the tensor dga on form-valued elements (D added for n = 1).
Element tensor_mu(const AInfAlgebra& OB, const std::vector<Element>& args);

}  // namespace ainf

#pragma once

#include "ainf/ainf.hpp"

namespace ainf {

// A-infinity structure of a dga (V, d, .): mu^1 = d and mu^2(a, b) = (-1)^|a| a.b, all higher
// maps zero. `d` has arity 1 and shift 1, `product` arity 2 and shift 0.
AInfAlgebra dga_algebra(SpacePtr space, const MultiMap& d, const MultiMap& product, int cap, std::string name);

// Ungraded associative algebra from structure constants: product(i, j) = sum_k c[i][j][k] e_k.
AInfAlgebra algebra_from_table(SpacePtr space, const std::vector<std::vector<std::vector<Scalar>>>& table, int cap,
                               std::string name);

namespace examples {

AInfAlgebra matrix_algebra(int cap);        // M_2(Q), basis e11 e12 e21 e22
AInfAlgebra dual_numbers(int cap);          // Q[x]/x^2, basis 1 x
AInfAlgebra exterior_one(int cap);          // Lambda(x), |x| = 1, d = 0
AInfAlgebra exterior_two_dga(int cap);      // Lambda(x, y), |x| = |y| = 1, dx = xy, dy = 0
AInfAlgebra nonassociative_matrix(int cap); // M_2(Q) with one product entry changed
// Genuine A-infinity algebra (mu^3 != 0): exterior_two_dga pushed forward along id + F^2.
AInfAlgebra deformed_exterior(int cap);
// The algebra used in the group-action scenarios: V = <e (0), x (1), y (1)>, e a unit,
// all other products zero, d = 0.
AInfAlgebra unit_with_two_odd(int cap);

}  // namespace examples
}  // namespace ainf

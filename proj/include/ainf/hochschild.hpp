#pragma once

#include <functional>

#include "ainf/ainf.hpp"

namespace ainf {

// f o g = sum_j f o_j g with Koszul signs.
MultiMap circle(const MultiMap& f, const MultiMap& g);

// Gerstenhaber bracket [f, g] = f o g - (-1)^(||f|| ||g||) g o f. Throws when the combined
// arity exceeds `cap` (pass a negative cap for no limit).
MultiMap gbracket(const MultiMap& f, const MultiMap& g, int cap = -1);

// [mu^1 + mu^2, f] split by arity: `same` = [mu^1, f] (arity n), `raised` = [mu^2, f] (arity n+1).
struct HochschildImage {
  MultiMap same;
  MultiMap raised;
};
HochschildImage hochschild_differential(const MultiMap& f, const AInfAlgebra& A);

// Matrix of a linear operator between spaces of constant cochains, in the elementary basis
// (tuple, out) of the source and target tables.
Matrix cochain_operator_matrix(SpacePtr space, int arity, int shift,
                               const std::function<MultiMap(const MultiMap&)>& op);
// Cochain table flattened to a column vector; inverse of the elementary basis above.
std::vector<Scalar> flatten(const MultiMap& f);

// dim HH^q(A, A) for an ungraded associative algebra, from exact ranks of f -> [mu^2, f].
size_t hh_dimension(const AInfAlgebra& A, int q);

}  // namespace ainf

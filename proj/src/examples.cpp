#include "ainf/examples.hpp"

namespace ainf {

AInfAlgebra dga_algebra(SpacePtr space, const MultiMap& d, const MultiMap& product, int cap, std::string name) {
  if (cap < 2) throw DomainError("dga_algebra needs arity cap >= 2");
  if (d.arity() != 1 || d.shift() != 1) throw InvariantError("dga-differential", "d must have arity 1 and degree 1");
  if (product.arity() != 2 || product.shift() != 0)
    throw InvariantError("dga-product", "product must have arity 2 and degree 0");
  AInfAlgebra A = AInfAlgebra::zero(space, cap, std::move(name));
  A.m(1) = d;
  A.m(2) = product;
  for (size_t t = 0; t < product.tuple_count(); ++t) {
    if (space->degree(product.decode(t)[0]) % 2 == 0) continue;
    for (size_t z = 0; z < space->dim(); ++z) A.m(2).at(t, z) *= Scalar(-1);
  }
  A.validate();
  return A;
}

AInfAlgebra algebra_from_table(SpacePtr space, const std::vector<std::vector<std::vector<Scalar>>>& table, int cap,
                               std::string name) {
  const size_t n = space->dim();
  MultiMap prod(space, space, 2, 0);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k)
        if (table.at(i).at(j).at(k) != 0) prod.add({i, j}, k, table[i][j][k]);
  return dga_algebra(space, MultiMap(space, space, 1, 1), prod, cap, std::move(name));
}

namespace examples {

AInfAlgebra matrix_algebra(int cap) {
  auto v = make_space({{"e11", 0}, {"e12", 0}, {"e21", 0}, {"e22", 0}});
  std::vector<std::vector<std::vector<Scalar>>> t(4, std::vector<std::vector<Scalar>>(4, std::vector<Scalar>(4)));
  // e_ij e_kl = delta_jk e_il, index of e_ij is 2i + j.
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int l = 0; l < 2; ++l) t[2 * i + j][2 * j + l][2 * i + l] = 1;
  return algebra_from_table(v, t, cap, "M2");
}

AInfAlgebra dual_numbers(int cap) {
  auto v = make_space({{"1", 0}, {"x", 0}});
  std::vector<std::vector<std::vector<Scalar>>> t(2, std::vector<std::vector<Scalar>>(2, std::vector<Scalar>(2)));
  t[0][0][0] = 1;
  t[0][1][1] = 1;
  t[1][0][1] = 1;
  return algebra_from_table(v, t, cap, "dual");
}

AInfAlgebra exterior_one(int cap) {
  auto v = make_space({{"1", 0}, {"x", 1}});
  MultiMap prod(v, v, 2, 0);
  prod.add({0, 0}, 0, 1);
  prod.add({0, 1}, 1, 1);
  prod.add({1, 0}, 1, 1);
  return dga_algebra(v, MultiMap(v, v, 1, 1), prod, cap, "ext1");
}

AInfAlgebra exterior_two_dga(int cap) {
  auto v = make_space({{"1", 0}, {"x", 1}, {"y", 1}, {"xy", 2}});
  MultiMap prod(v, v, 2, 0);
  for (size_t i = 0; i < 4; ++i) {
    prod.add({0, i}, i, 1);
    if (i) prod.add({i, 0}, i, 1);
  }
  prod.add({1, 2}, 3, 1);
  prod.add({2, 1}, 3, -1);
  MultiMap d(v, v, 1, 1);
  d.add({1}, 3, 1);
  return dga_algebra(v, d, prod, cap, "ext2");
}

AInfAlgebra nonassociative_matrix(int cap) {
  AInfAlgebra A = matrix_algebra(cap);
  A.name = "M2-mutated";
  // e12 e21 = e11 + e22 breaks associativity.
  A.m(2).at({1, 2}, 3) += Form(1);
  return A;
}

AInfAlgebra deformed_exterior(int cap) {
  AInfAlgebra A = exterior_two_dga(cap);
  const auto& v = A.space;
  MultiMap f2(v, v, 2, -1);
  f2.add({1, 1}, 2, 1);  // F^2(x, x) = y
  f2.add({1, 2}, 1, 1);  // F^2(x, y) = x
  f2.add({2, 3}, 3, 1);  // F^2(y, xy) = xy
  return *pushforward_structure(A, {f2}, "ext2-deformed");
}

AInfAlgebra unit_with_two_odd(int cap) {
  auto v = make_space({{"e", 0}, {"x", 1}, {"y", 1}});
  MultiMap prod(v, v, 2, 0);
  for (size_t i = 0; i < 3; ++i) {
    prod.add({0, i}, i, 1);
    if (i) prod.add({i, 0}, i, 1);
  }
  return dga_algebra(v, MultiMap(v, v, 1, 1), prod, cap, "unit-odd");
}

}  // namespace examples
}  // namespace ainf

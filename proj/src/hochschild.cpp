#include "ainf/hochschild.hpp"

namespace ainf {

MultiMap circle(const MultiMap& f, const MultiMap& g) {
  MultiMap out(g.src(), f.dst(), f.arity() + g.arity() - 1, f.shift() + g.shift());
  for (int j = 0; j < f.arity(); ++j) out += insert(f, g, j);
  return out;
}

MultiMap gbracket(const MultiMap& f, const MultiMap& g, int cap) {
  int arity = f.arity() + g.arity() - 1;
  if (arity < 0) throw DomainError("gbracket of two constants");
  if (cap >= 0 && arity > cap)
    throw DomainError("gbracket: arity " + std::to_string(arity) + " exceeds cap " + std::to_string(cap));
  MultiMap out(f.src(), f.dst(), arity, f.shift() + g.shift());
  if (f.arity() > 0) out += circle(f, g);
  if (g.arity() > 0) {
    MultiMap back = circle(g, f);
    if ((f.shifted_degree() * g.shifted_degree()) % 2 == 0)
      out -= back;
    else
      out += back;
  }
  return out;
}

HochschildImage hochschild_differential(const MultiMap& f, const AInfAlgebra& A) {
  if (A.cap < 2) throw DomainError("hochschild_differential needs mu^2");
  if (!A.m(0).is_zero()) throw DomainError("hochschild_differential needs a flat algebra");
  if (f.arity() + 1 > A.cap) throw DomainError("hochschild_differential: arity exceeds cap");
  return {gbracket(A.m(1), f), gbracket(A.m(2), f)};
}

std::vector<Scalar> flatten(const MultiMap& f) {
  std::vector<Scalar> v;
  v.reserve(f.tuple_count() * f.dst()->dim());
  for (size_t t = 0; t < f.tuple_count(); ++t)
    for (size_t z = 0; z < f.dst()->dim(); ++z) {
      const Form& c = f.at(t, z);
      if (!c.is_constant()) throw DomainError("flatten needs constant coefficients");
      v.push_back(c.constant());
    }
  return v;
}

Matrix cochain_operator_matrix(SpacePtr space, int arity, int shift,
                               const std::function<MultiMap(const MultiMap&)>& op) {
  MultiMap probe(space, space, arity, shift);
  const size_t cols = probe.tuple_count() * space->dim();
  Matrix m;
  for (size_t col = 0; col < cols; ++col) {
    MultiMap e(space, space, arity, shift);
    e.at(col / space->dim(), col % space->dim()) = Form(1);
    std::vector<Scalar> image = flatten(op(e));
    if (col == 0) m = Matrix(image.size(), cols);
    for (size_t r = 0; r < image.size(); ++r) m(r, col) = image[r];
  }
  return m;
}

size_t hh_dimension(const AInfAlgebra& A, int q) {
  for (int d : A.space->degrees())
    if (d != 0) throw DomainError("hh_dimension needs an algebra concentrated in degree 0");
  if (q < 0 || q + 1 > A.cap) throw DomainError("hh_dimension: q out of range for the arity cap");
  if (!gbracket(A.m(2), A.m(2)).is_zero()) throw DomainError("hh_dimension needs an associative algebra");
  auto d = [&](const MultiMap& f) { return gbracket(A.m(2), f); };
  const size_t dim_q = MultiMap(A.space, A.space, q, 0).tuple_count() * A.space->dim();
  size_t rank_out = rank(cochain_operator_matrix(A.space, q, 0, d));
  size_t rank_in = q == 0 ? 0 : rank(cochain_operator_matrix(A.space, q - 1, 0, d));
  return dim_q - rank_out - rank_in;
}

}  // namespace ainf

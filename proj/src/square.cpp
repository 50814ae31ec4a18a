#include "ainf/square.hpp"

#include "ainf/transport.hpp"

namespace ainf {

namespace {

MultiMap at_t(const MultiMap& m, const Scalar& t) {
  return m.map_coefficients([&](const Form& f) { return f.restrict(Var::T, t); }, m.shift());
}

void require_square_grid(const Field& f) {
  if (f.grid.dim() != 2 || !f.grid.has(Var::S) || !f.grid.has(Var::T))
    throw DomainError("square families live on an s-t grid");
}

std::shared_ptr<AInfAlgebra> without_d(const AInfAlgebra& A, const std::string& which) {
  auto r = std::make_shared<AInfAlgebra>(A);
  r->internal_d = false;
  for (int n = 0; n <= r->cap; ++n)
    if (!r->m(n).is_constant())
      throw InvariantError("boundary-constant", which + " structure depends on t at arity " + std::to_string(n));
  return r;
}

}  // namespace

std::optional<std::string> boundary_violation(const Field& square) {
  require_square_grid(square);
  for (int edge = 0; edge <= 1; ++edge) {
    Field e = square.restrict(Var::S, edge);
    for (const auto& cell : e.cells)
      for (int n = 0; n <= e.cap; ++n) {
        const MultiMap& m = cell[n];
        for (size_t tup = 0; tup < m.tuple_count(); ++tup)
          for (size_t z = 0; z < e.space->dim(); ++z)
            if (!m.at(tup, z).is_constant())
              return "structure on edge s=" + std::to_string(edge) + " varies with t at arity " + std::to_string(n) +
                     ": " + m.witness_string(tup, z);
      }
    for (size_t c = 1; c < e.cells.size(); ++c)
      for (int n = 0; n <= e.cap; ++n)
        if (!(e.at(c, n) == e.at(0, n)))
          return "structure on edge s=" + std::to_string(edge) + " jumps between t-cells at arity " + std::to_string(n);
  }
  return std::nullopt;
}

void check_square(const Field& square) {
  require_square_grid(square);
  square.validate("square");
  if (square.degree != 1) throw InvariantError("family-degree", "family must have total degree 1");
  if (auto bad = assumption_violation(square, true)) throw InvariantError("family-assumption", *bad);
  if (auto jump = square.continuity_violation()) throw InvariantError("family-continuity", *jump);
  if (auto edge = boundary_violation(square)) throw InvariantError("boundary-constant", *edge);
  Field defect = mc_defect(square);
  for (size_t c = 0; c < defect.cells.size(); ++c)
    for (int n = 0; n <= defect.cap; ++n)
      if (auto nz = defect.at(c, n).first_nonzero())
        throw InvariantError("family-maurer-cartan", "MC defect in cell " + std::to_string(c) + ", arity " +
                                                         std::to_string(n) + " at " +
                                                         defect.at(c, n).witness_string(nz->first, nz->second));
}

Field collapse(const Field& square) {
  check_square(square);
  if (square.grid.axis(Var::T).breaks.size() != 2)
    throw DomainError("collapse needs a single t-interval (coefficients in t are global polynomials)");
  Grid g = square.grid.without(Var::T).with_fiber_forms();
  Field hat = Field::zero(g, square.space, square.cap, 1);
  const size_t s_pos = square.grid.axes()[0].var == Var::S ? 0 : 1;
  for (size_t c = 0; c < hat.cells.size(); ++c) {
    std::vector<size_t> co(2, 0);
    co[s_pos] = g.coords(c)[0];
    hat.cells[c] = square.cells[square.grid.cell_of(co)];
  }
  return hat;
}

AInfMorphism hat_transport(const Field& hat) {
  if (!hat.grid.fiber_forms() || hat.grid.dim() != 1 || !hat.grid.has(Var::S))
    throw DomainError("hat_transport needs a collapsed family over I_s");
  auto a = path_components(hat);
  for (size_t c = 0; c < a.size(); ++c)
    if (hat.cap >= 1 && !insert(a[c][1], a[c][1], 0).is_zero())
      throw InvariantError("hat-nilpotent", "the unary path component is not nilpotent of order 2");
  TransportRequest req{hat, Scalar(0), Scalar(1), 1};
  AInfMorphism G = transport(req);
  G.name = "G-hat";
  return G;
}

AInfMorphism DiffHomotopy::family_at(const Scalar& t) const {
  if (t < 0 || t > 1) throw DomainError("homotopy parameter " + to_string(t) + " outside [0,1]");
  AInfMorphism m = AInfMorphism::zero(src, dst, "F_" + to_string(t));
  for (int n = 1; n <= cap(); ++n) m.F(n) = at_t(F[n], t);
  return m;
}

MultiMap DiffHomotopy::theta_at(const Scalar& t, int n) const {
  if (t < 0 || t > 1) throw DomainError("homotopy parameter " + to_string(t) + " outside [0,1]");
  return at_t(theta.at(n), t);
}

AInfMorphism DiffHomotopy::as_form_morphism() const {
  auto forms = std::make_shared<AInfAlgebra>(*dst);
  forms->internal_d = true;
  forms->name = "Omega(I) x " + dst->name;
  AInfMorphism phi = AInfMorphism::zero(src, forms, "phi");
  const Form dt = Form::differential(Var::T);
  for (int n = 1; n <= cap(); ++n) phi.F(n) = F[n] + theta[n].left_multiply(dt);
  return phi;
}

DiffHomotopy split_differential_homotopy(const AInfMorphism& g_hat) {
  DiffHomotopy D;
  D.src = without_d(*g_hat.src, "source");
  D.dst = without_d(*g_hat.dst, "target");
  D.F.resize(g_hat.cap + 1);
  D.theta.resize(g_hat.cap + 1);
  for (int n = 1; n <= g_hat.cap; ++n) {
    const MultiMap& m = g_hat.F(n);
    D.F[n] = m.form_degree_part(0);
    D.theta[n] = m.form_degree_part(1).map_coefficients([](const Form& f) { return f.contract(Var::T); }, m.shift() - 1);
    if (D.F[n] + D.theta[n].left_multiply(Form::differential(Var::T)) != m)
      throw InvariantError("homotopy-forms", "component has coefficients outside Q[t] + Q[t] dt");
  }
  return D;
}

MultiMap diff_homotopy_defect(const DiffHomotopy& D, const Scalar& t, int n) {
  if (t < 0 || t > 1) throw DomainError("homotopy parameter " + to_string(t) + " outside [0,1]");
  MultiMap def = morphism_defect(D.as_form_morphism(), n);
  MultiMap dt_part =
      def.form_degree_part(1).map_coefficients([](const Form& f) { return f.contract(Var::T); }, def.shift() - 1);
  return at_t(dt_part, t);
}

CandidateReport classical_candidate(const DiffHomotopy& D) {
  auto F1 = std::make_shared<AInfMorphism>(D.family_at(1));
  auto F0 = std::make_shared<AInfMorphism>(D.family_at(0));
  CandidateReport rep{AInfHomotopy::zero(F1, F0, "T"), {}};
  for (int n = 1; n <= D.cap(); ++n) {
    MultiMap anti = D.theta[n].map_coefficients([](const Form& f) { return f.antiderivative(Var::T); }, D.theta[n].shift());
    rep.homotopy.T(n) = at_t(anti, 1) - at_t(anti, 0);
  }
  for (int n = 1; n <= D.cap(); ++n) rep.levels.push_back(level_status(n, homotopy_defect(rep.homotopy, n)));
  return rep;
}

}  // namespace ainf

#include "ainf/gauge.hpp"

namespace ainf {

namespace {

Field exp_action(const Field& gamma, const Field& alpha0, int K) {
  Field result = truncate_levels(alpha0, K);
  Field term = result;
  for (int k = 1; k <= K && !term.is_zero(); ++k) {
    term = truncate_levels(form_bracket(gamma, term), K);
    term *= Scalar(1, k);
    result += term;
  }
  Field u = truncate_levels(d_nabla(gamma), K);
  for (int k = 0; k < K && !u.is_zero(); ++k) {
    result -= u;
    u = truncate_levels(form_bracket(gamma, u), K);
    u *= Scalar(1, k + 2);
  }
  return result;
}

Field evaluate_t(const Field& f, const Scalar& t) {
  return f.map_coefficients([&](const Form& c) { return c.restrict(Var::T, t); }, 0);
}

}  // namespace

void check_gauge_inputs(const Field& gamma, const Field& alpha0, int K) {
  if (K < 1) throw DomainError("gauge truncation level must be at least 1");
  if (!(gamma.grid == alpha0.grid) || gamma.cap != alpha0.cap) throw DomainError("gauge and family grids differ");
  if (K > gamma.cap - 1 + static_cast<int>(gamma.grid.dim()))
    throw DomainError("truncation level exceeds the levels representable below the arity cap");
  for (const auto& cell : gamma.cells)
    if (!cell[0].is_zero()) throw InvariantError("gauge-arity", "gauge element must not have arity-0 components");
  if (gamma.degree != 0) throw InvariantError("gauge-degree", "gauge element must have total degree 0");
  if (alpha0.degree != 1) throw InvariantError("family-degree", "family must have total degree 1");
  auto lg = min_level(gamma);
  if (lg && *lg < 1) throw InvariantError("gauge-filtration", "gauge element has a component of level < 1");
  auto la = min_level(alpha0);
  if (la && *la < 0) throw InvariantError("family-filtration", "family has a component of negative level");
}

Field gauge_exp(const Field& gamma, const Field& alpha0, int K) {
  check_gauge_inputs(gamma, alpha0, K);
  return exp_action(gamma, alpha0, K);
}

Field gauge_path(const Field& gamma, const Field& alpha0, int K) {
  check_gauge_inputs(gamma, alpha0, K);
  if (gamma.grid.allows(Var::T)) throw DomainError("the gauge path variable t must not be a base direction");
  return exp_action(gamma.left_multiply(Form::var(Var::T)), alpha0, K);
}

Field gauge_path_element(const Field& gamma, const Field& alpha0, int K) {
  Field at = gauge_path(gamma, alpha0, K);
  Grid g = at.grid.with(Axis{Var::T, {Scalar(0), Scalar(1)}});
  Field A = Field::zero(g, at.space, at.cap, 1);
  Field dtg = gamma.left_multiply(Form::differential(Var::T));
  for (size_t c = 0; c < A.cells.size(); ++c)
    for (int n = 0; n <= A.cap; ++n) A.at(c, n) = at.at(c, n) - dtg.at(c, n);
  return A;
}

bool PathCheck::ok() const {
  if (!start_matches || !defect_zero) return false;
  for (bool b : derivative_ok)
    if (!b) return false;
  return true;
}

PathCheck mc_path_check(const Field& gamma, const Field& alpha0, int K, const std::vector<Scalar>& samples) {
  PathCheck r;
  Field at = gauge_path(gamma, alpha0, K);
  r.start_matches = evaluate_t(at, 0) == truncate_levels(alpha0, K);
  Field defect = truncate_levels(mc_defect(gauge_path_element(gamma, alpha0, K)), K);
  r.defect_zero = defect.is_zero();
  if (!r.defect_zero) {
    for (size_t c = 0; c < defect.cells.size() && r.witness.empty(); ++c)
      for (int n = 0; n <= defect.cap && r.witness.empty(); ++n)
        if (!defect.at(c, n).is_zero()) r.witness = "path defect in arity " + std::to_string(n);
  }
  Field dgamma = d_nabla(gamma);
  Field velocity = at.map_coefficients([](const Form& c) { return c.partial(Var::T); }, 0);
  for (const auto& t : samples) {
    Field at_t = evaluate_t(at, t);
    Field lhs = truncate_levels(evaluate_t(velocity, t), K);
    Field rhs = truncate_levels(form_bracket(gamma, at_t) - dgamma, K);
    r.samples.push_back(t);
    r.derivative_ok.push_back(lhs == rhs);
  }
  return r;
}

}  // namespace ainf

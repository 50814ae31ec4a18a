#include "ainf/examples.hpp"
#include "ainf/gauge.hpp"
#include "ainf/hochschild.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace ainf;
using namespace testing_support;

namespace {

Field random_lie_element(std::mt19937& rng, const Grid& grid, SpacePtr space, int cap, int degree) {
  return random_field(rng, grid, space, cap, degree, 2, 0.3, [](int, int n) { return n >= 1; });
}

Grid square_grid() {
  return Grid({Axis{Var::S, {Scalar(0), Scalar(1, 2), Scalar(1)}}, Axis{Var::T, {Scalar(0), Scalar(1)}}});
}

// Constant MC family from an A-infinity algebra with mu^1 = 0 and genuine higher products.
AInfAlgebra higher_algebra(std::mt19937& rng, int cap) {
  AInfAlgebra U = examples::unit_with_two_odd(cap);
  std::vector<MultiMap> higher;
  for (int n = 2; n <= cap; ++n) higher.push_back(random_map(rng, U.space, U.space, n, 1 - n, 0.3));
  return *pushforward_structure(U, higher, "U'");
}

// Gauge element: levels >= 1 means no 0-form arity-1 part; no arity 0.
Field random_gauge(std::mt19937& rng, const Grid& grid, SpacePtr space, int cap) {
  return random_field(rng, grid, space, cap, 0, 2, 0.3, [](int m, int n) { return n >= 1 && m + n >= 2; });
}

}  // namespace

TEST_CASE("grid") {
  CHECK_THROWS_AS(Grid::interval(Var::T, {Scalar(0), Scalar(1, 2)}), InvariantError);
  CHECK_THROWS_AS(Grid::interval(Var::T, {Scalar(0), Scalar(1, 2), Scalar(1, 2), Scalar(1)}), InvariantError);
  Grid g = square_grid();
  CHECK(g.cell_count() == 2);
  CHECK(g.interval_of(Var::S, Scalar(1, 2)) == 1);
  CHECK(g.interval_of(Var::S, Scalar(1)) == 1);
  CHECK(g.cell_of(g.coords(1)) == 1);
  Grid unreduced = Grid::interval(Var::T, {Scalar(0), Scalar(2, 4), Scalar(1)});
  CHECK(unreduced.axes()[0].breaks[1] == frac(1, 2));
}

TEST_CASE("d_nabla") {
  std::mt19937 rng(2);
  auto v = random_space(rng, 2, 0, 1);
  Grid g = Grid::uniform(Var::T, 2);
  MultiMap f = random_map(rng, v, v, 2, 0, 1.0);
  Field c = eta_embed(f, g, 3);
  CHECK(d_nabla(c).is_zero());
  Field tf = c.left_multiply(Form::var(Var::T));
  Field expect = c.left_multiply(Form::differential(Var::T));
  CHECK(d_nabla(tf) == expect);
  for (int trial = 0; trial < 20; ++trial) {
    Field a = random_lie_element(rng, square_grid(), v, 3, static_cast<int>(rng() % 3) - 1);
    CHECK(d_nabla(d_nabla(a)).is_zero());
  }
}

TEST_CASE("dg Lie axioms on random fields") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    auto v = random_space(rng, 2, -1, 1);
    Grid g = trial % 2 ? square_grid() : Grid::uniform(Var::T, 2);
    int da = static_cast<int>(rng() % 3) - 1, db = static_cast<int>(rng() % 3) - 1, dc = static_cast<int>(rng() % 3) - 1;
    Field a = random_lie_element(rng, g, v, 3, da), b = random_lie_element(rng, g, v, 3, db),
          c = random_lie_element(rng, g, v, 3, dc);
    int sab = sign_of_parity((da * db) & 1);
    CHECK(form_bracket(a, b) == Scalar(-sab) * form_bracket(b, a));
    Field jac = form_bracket(a, form_bracket(b, c)) - form_bracket(form_bracket(a, b), c) -
                Scalar(sab) * form_bracket(b, form_bracket(a, c));
    CHECK(jac.is_zero());
    Field leib = d_nabla(form_bracket(a, b)) - form_bracket(d_nabla(a), b) -
                 Scalar(sign_of_parity(da & 1)) * form_bracket(a, d_nabla(b));
    CHECK(leib.is_zero());
    auto la = min_level(a), lb = min_level(b), lab = min_level(form_bracket(a, b));
    if (la && lb && lab) CHECK(*lab >= *la + *lb);
  }
  // Two dt-proportional fields on an interval bracket to zero.
  auto v = make_space({{"a", 0}, {"b", 1}});
  Grid g = Grid::uniform(Var::T, 1);
  Field x = random_field(rng, g, v, 3, 1, 1, 0.8, [](int m, int n) { return m == 1 && n >= 1; });
  Field y = random_field(rng, g, v, 3, 0, 1, 0.8, [](int m, int n) { return m == 1 && n >= 1; });
  CHECK(form_bracket(x, y).is_zero());
}

TEST_CASE("maurer-cartan defect") {
  std::mt19937 rng(23);
  AInfAlgebra M = examples::matrix_algebra(4);
  Grid g = Grid::uniform(Var::T, 2);
  CHECK(mc_defect(constant_family(g, M)).is_zero());
  CHECK(mc_defect(Field::zero(g, M.space, 4, 1)).is_zero());
  // Constant families reproduce the Stasheff defect in bidegree (0, n).
  AInfAlgebra bad = examples::nonassociative_matrix(4);
  Field def = mc_defect(constant_family(g, bad));
  for (int n = 0; n <= 4; ++n) CHECK(def.at(0, n) == stasheff_defect(bad, n));
  // mu^2 plus a constant dt.c: the (1,3) defect is the bracket [mu^2, dt.c].
  AInfAlgebra U = examples::unit_with_two_odd(4);
  MultiMap c = random_map(rng, U.space, U.space, 2, -1, 0.8);
  MultiMap dtc = c.left_multiply(Form::differential(Var::T));
  Field alpha = constant_family(g, U);
  for (size_t cell = 0; cell < 2; ++cell) alpha.at(cell, 2) += dtc;
  Field d2 = mc_defect(alpha);
  MultiMap expect = gbracket(U.m(2), dtc);
  CHECK_FALSE(expect.is_zero());
  CHECK(d2.bidegree(0, 1, 3) == expect);
  CHECK(d2.bidegree(0, 0, 3).is_zero());
}

TEST_CASE("eta embedding") {
  std::mt19937 rng(29);
  auto v = random_space(rng, 2, -1, 1);
  Grid g = square_grid();
  MultiMap zero(v, v, 2, 0);
  CHECK(eta_embed(zero, g, 3).is_zero());
  for (int trial = 0; trial < 10; ++trial) {
    MultiMap f = random_map(rng, v, v, 1 + rng() % 2, static_cast<int>(rng() % 3) - 1);
    MultiMap h = random_map(rng, v, v, 1 + rng() % 2, static_cast<int>(rng() % 3) - 1);
    CHECK(d_nabla(eta_embed(f, g, 3)).is_zero());
    CHECK(eta_embed(gbracket(f, h), g, 3) == form_bracket(eta_embed(f, g, 3), eta_embed(h, g, 3)));
  }
  AInfAlgebra D = examples::dual_numbers(3);
  MultiMap f = random_map(rng, D.space, D.space, 1, 0);
  Field total = d_nabla(eta_embed(f, g, 3)) + form_bracket(constant_family(g, D), eta_embed(f, g, 3));
  CHECK(total == eta_embed(hochschild_differential(f, D).raised, g, 3));
}

TEST_CASE("continuity and assumptions") {
  auto v = make_space({{"a", 0}});
  Grid g = Grid::uniform(Var::T, 2);
  Field f = Field::zero(g, v, 2, 1);
  f.at(0, 2).at({0, 0}, 0) = Form::var(Var::T);
  f.at(1, 2).at({0, 0}, 0) = Form(Scalar(1, 2));
  CHECK_FALSE(f.continuity_violation());
  f.at(1, 2).at({0, 0}, 0) = Form(1);
  CHECK(f.continuity_violation());
  f.at(0, 0).at(0, 0) = Form(1);
  CHECK(assumption_violation(f, false));
  Field bad = Field::zero(g, v, 2, 1);
  bad.at(0, 1).at({0}, 0) = Form::differential(Var::T);
  CHECK(assumption_violation(bad, true));
  CHECK_FALSE(assumption_violation(bad, false));
  Field wrong = Field::zero(g, v, 2, 1);
  wrong.at(0, 2).at({0, 0}, 0) = Form::var(Var::S);
  CHECK_THROWS_AS(wrong.validate(), InvariantError);
}

TEST_CASE("gauge action") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 6; ++trial) {
    int cap = 4;
    AInfAlgebra A = higher_algebra(rng, cap);
    Grid g = trial % 2 ? Grid::point() : Grid::interval(Var::S, {Scalar(0), Scalar(1, 3), Scalar(1)});
    Field alpha0 = constant_family(g, A);
    Field gamma = random_gauge(rng, g, A.space, cap);
    for (int K = 1; K <= 3; ++K) {
      CHECK(gauge_exp(Field::zero(g, A.space, cap, 0), alpha0, K) == truncate_levels(alpha0, K));
      Field a1 = gauge_exp(gamma, alpha0, K);
      CHECK(truncate_levels(mc_defect(a1), K).is_zero());
      PathCheck pc = mc_path_check(gamma, alpha0, K, {Scalar(0), Scalar(1, 3), Scalar(1)});
      CHECK(pc.ok());
      // Modulo F_2: alpha0 - d_j gamma, where d_j = d_nabla + [mu, -] for the level-0 part mu.
      Field d_j = d_nabla(gamma) + form_bracket(truncate_levels(alpha0, 0), gamma);
      if (K == 1) CHECK(a1 == truncate_levels(alpha0 - d_j, 1));
    }
    // The derivative at t = 0 is -d gamma + [gamma, alpha0].
    Field at = gauge_path(gamma, alpha0, 3);
    Field v0 = at.map_coefficients([](const Form& c) { return c.partial(Var::T).restrict(Var::T, 0); }, 0);
    CHECK(v0 == truncate_levels(form_bracket(gamma, alpha0) - d_nabla(gamma), 3));
  }
  auto v = make_space({{"a", 0}});
  Grid p = Grid::point();
  Field bad_gamma = Field::zero(p, v, 3, 0);
  bad_gamma.at(0, 1).at({0}, 0) = Form(1);  // level 0
  CHECK_THROWS_AS(gauge_exp(bad_gamma, Field::zero(p, v, 3, 1), 1), InvariantError);
}

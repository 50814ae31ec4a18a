#include "ainf/examples.hpp"
#include "ainf/gauge.hpp"
#include "ainf/square.hpp"
#include "ainf/transport.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace ainf;
using namespace testing_support;

namespace {

AInfAlgebra higher_algebra(std::mt19937& rng, int cap) {
  AInfAlgebra U = examples::unit_with_two_odd(cap);
  std::vector<MultiMap> higher;
  for (int n = 2; n <= cap; ++n) higher.push_back(random_map(rng, U.space, U.space, n, 1 - n, 0.3));
  return *pushforward_structure(U, higher, "U'");
}

Grid square_grid(bool two_s_cells) {
  std::vector<Scalar> sb{Scalar(0), Scalar(1)};
  if (two_s_cells) sb = {Scalar(0), Scalar(1, 2), Scalar(1)};
  return Grid({Axis{Var::S, sb}, Axis{Var::T, {Scalar(0), Scalar(1)}}});
}

// MC square gauge-equivalent to a constant family: gamma = s c + s(1-s) g(s,t) makes the edges
// s = 0 and s = 1 t-constant. The 1-form part of g produces curvature (ds dt) components.
// With t_dependent = false the square has no t or dt at all.
Field random_square(std::mt19937& rng, const AInfAlgebra& A, bool two_s_cells, bool t_dependent = true) {
  Grid g = square_grid(two_s_cells);
  Vars vars{true, t_dependent};
  Field gamma = Field::zero(g, A.space, A.cap, 0);
  std::vector<MultiMap> c, wiggle;
  for (int n = 0; n <= A.cap; ++n) {
    c.push_back(n >= 2 ? random_map(rng, A.space, A.space, n, 1 - n, 0.3) : MultiMap(A.space, A.space, n, 1 - n));
    MultiMap w(A.space, A.space, n, 1 - n);
    if (n >= 2) w = random_map(rng, A.space, A.space, n, 1 - n, 0.3, t_dependent ? 1 : 0, 1, vars);
    wiggle.push_back(w);
  }
  const Form s = Form::var(Var::S);
  const Form bump = s * (Form(1) - s);
  for (size_t cell = 0; cell < gamma.cells.size(); ++cell)
    for (int n = 2; n <= A.cap; ++n)
      gamma.at(cell, n) = c[n].left_multiply(s) + wiggle[n].left_multiply(bump);
  return gauge_exp(gamma, constant_family(g, A), A.cap + 1);
}

bool all_levels_zero(const AInfMorphism& F) {
  for (int n = 1; n <= F.cap; ++n)
    if (!morphism_defect(F, n).is_zero()) return false;
  return true;
}

const std::vector<Scalar> kSamples{Scalar(0), Scalar(1, 4), Scalar(1, 3), Scalar(2, 3), Scalar(1)};

}  // namespace

TEST_CASE("random squares are valid") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 4; ++trial) {
    AInfAlgebra A = higher_algebra(rng, 3);
    Field sq = random_square(rng, A, trial % 2);
    CHECK_NOTHROW(check_square(sq));
    CHECK_FALSE(sq.restrict(Var::S, 0).is_zero());
  }
}

TEST_CASE("collapse") {
  auto v = make_space({{"a", 0}, {"b", 1}});
  Field zero = Field::zero(square_grid(false), v, 3, 1);
  Field hz = collapse(zero);
  CHECK(hz.is_zero());
  CHECK(hz.grid.fiber_forms());
  CHECK(mc_defect(hz).is_zero());
  std::mt19937 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    AInfAlgebra A = higher_algebra(rng, 3);
    Field sq = random_square(rng, A, trial % 2);
    Field hat = collapse(sq);
    CHECK(mc_defect(hat).is_zero());
    // ds-free terms form alpha-hat^0, ds-terms form alpha-hat^1; nothing else remains.
    for (size_t c = 0; c < hat.cells.size(); ++c)
      for (int n = 0; n <= 3; ++n) {
        MultiMap ds_part = sq.at(c, n).map_coefficients(
            [](const Form& f) { return Form::differential(Var::S) * f.contract(Var::S); }, sq.at(c, n).shift());
        CHECK(hat.at(c, n) == sq.at(c, n));
        MultiMap rest = hat.at(c, n) - ds_part;
        CHECK(rest.map_coefficients([](const Form& f) { return f.contract(Var::S); }, rest.shift() - 1).is_zero());
      }
  }
  // Collapse needs a single t-interval.
  Field split = Field::zero(Grid({Axis{Var::S, {Scalar(0), Scalar(1)}}, Axis{Var::T, {Scalar(0), Scalar(1, 2), Scalar(1)}}}),
                            v, 3, 1);
  CHECK_THROWS_AS(collapse(split), DomainError);
}

TEST_CASE("square validation errors") {
  auto v = make_space({{"a", 0}});
  Field sq = Field::zero(square_grid(false), v, 2, 1);
  sq.at(0, 2).at({0, 0}, 0) = Form::var(Var::T);  // t-dependent product on the edges
  CHECK(boundary_violation(sq));
  CHECK_THROWS_AS(check_square(sq), InvariantError);
  Field bad = Field::zero(square_grid(false), v, 2, 1);
  bad.at(0, 2).at({0, 0}, 0) = Form::var(Var::S) * (Form(1) - Form::var(Var::S)) * Form::differential(Var::T);
  CHECK_FALSE(boundary_violation(bad));
  CHECK_THROWS_AS(check_square(bad), InvariantError);  // not Maurer-Cartan
}

TEST_CASE("G-hat is a morphism and a differential homotopy") {
  std::mt19937 rng(13);
  int moving = 0;
  for (int trial = 0; trial < 4; ++trial) {
    const int cap = 3;
    AInfAlgebra A = higher_algebra(rng, cap);
    Field sq = random_square(rng, A, trial % 2);
    AInfMorphism G = hat_transport(collapse(sq));
    CHECK(all_levels_zero(G));
    DiffHomotopy D = split_differential_homotopy(G);
    bool theta_nonzero = false;
    for (int n = 1; n <= cap; ++n) theta_nonzero = theta_nonzero || !D.theta[n].is_zero();
    bool varies = false;
    for (int n = 1; n <= cap; ++n) varies = varies || !(D.family_at(0).F(n) == D.family_at(1).F(n));
    if (theta_nonzero && varies) ++moving;
    for (const auto& t : kSamples) {
      AInfMorphism Ft = D.family_at(t);
      CHECK(all_levels_zero(Ft));
      // F_t is plain transport along the line of constant t.
      AInfMorphism line = transport(TransportRequest{sq.restrict(Var::T, t), 0, 1});
      for (int n = 1; n <= cap; ++n) {
        CHECK(Ft.F(n) == line.F(n));
        CHECK(diff_homotopy_defect(D, t, n).is_zero());
      }
    }
    // Precomposing with the constant inclusion of A_{s=0} gives phi = F_t + Theta_t dt.
    AInfMorphism iota = AInfMorphism::zero(D.src, G.src, "iota");
    iota.F(1) = MultiMap::identity(A.space);
    CHECK(all_levels_zero(iota));
    AInfMorphism phi = compose(G, iota);
    AInfMorphism phi2 = D.as_form_morphism();
    for (int n = 1; n <= cap; ++n) CHECK(phi.F(n) == phi2.F(n));
    CHECK(all_levels_zero(phi2));
    // Classical candidate: exact at n = 1.
    CandidateReport rep = classical_candidate(D);
    CHECK(rep.levels[0].zero);
    for (const auto& l : rep.levels) MESSAGE("candidate level " << l.level << std::string(l.zero ? " zero" : " nonzero"));
  }
  CHECK(moving >= 2);
}

TEST_CASE("t-independent squares") {
  std::mt19937 rng(19);
  AInfAlgebra A = higher_algebra(rng, 3);
  Field sq = random_square(rng, A, true, false);
  AInfMorphism G = hat_transport(collapse(sq));
  DiffHomotopy D = split_differential_homotopy(G);
  AInfMorphism plain = transport(TransportRequest{sq.restrict(Var::T, 0), 0, 1});
  for (int n = 1; n <= 3; ++n) {
    CHECK(D.theta[n].is_zero());
    CHECK(D.F[n] == plain.F(n));
  }
  CandidateReport rep = classical_candidate(D);
  for (const auto& l : rep.levels) CHECK(l.zero);
}

TEST_CASE("differential homotopy defect") {
  AInfAlgebra B = examples::exterior_two_dga(3);
  auto Bp = std::make_shared<AInfAlgebra>(B);
  DiffHomotopy D;
  D.src = D.dst = Bp;
  D.F.resize(4);
  D.theta.resize(4);
  for (int n = 1; n <= 3; ++n) {
    D.F[n] = n == 1 ? MultiMap::identity(B.space) : MultiMap(B.space, B.space, n, 1 - n);
    D.theta[n] = MultiMap(B.space, B.space, n, -n);
  }
  for (const auto& t : kSamples)
    for (int n = 1; n <= 3; ++n) CHECK(diff_homotopy_defect(D, t, n).is_zero());
  CandidateReport rep = classical_candidate(D);
  for (const auto& l : rep.levels) CHECK(l.zero);
  std::mt19937 rng(23);
  int nonzero = 0;
  for (int trial = 0; trial < 10; ++trial) {
    DiffHomotopy P = D;
    MultiMap p = random_map(rng, B.space, B.space, 1, -1, 0.8);
    P.theta[1] = p;
    if (!diff_homotopy_defect(P, Scalar(1, 2), 1).is_zero()) ++nonzero;
  }
  CHECK(nonzero >= 5);
  // Integrating the n = 1 relation: F_t^1 = id + t X with X fixed by a constant Theta^1.
  for (int trial = 0; trial < 5; ++trial) {
    DiffHomotopy P = D;
    P.theta[1] = random_map(rng, B.space, B.space, 1, -1, 0.8);
    MultiMap X = -diff_homotopy_defect(P, Scalar(0), 1);
    P.F[1] = MultiMap::identity(B.space) + X.left_multiply(Form::var(Var::T));
    for (const auto& t : kSamples) CHECK(diff_homotopy_defect(P, t, 1).is_zero());
    CandidateReport r = classical_candidate(P);
    CHECK(r.levels[0].zero);
    CHECK(r.homotopy.T(1) == P.theta[1]);
  }
  CHECK_THROWS_AS(diff_homotopy_defect(D, Scalar(3, 2), 1), DomainError);
}

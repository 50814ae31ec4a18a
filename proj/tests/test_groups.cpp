#include "ainf/examples.hpp"
#include "ainf/gauge.hpp"
#include "ainf/group.hpp"
#include "ainf/hochschild.hpp"
#include "ainf/strictify.hpp"
#include "ainf/transport.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace ainf;
using namespace testing_support;

namespace {

Matrix from_rows(const std::vector<std::vector<Scalar>>& rows) {
  Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  return m;
}

// Block-diagonal action on span(e) + span(x, y) of unit_with_two_odd.
Matrix odd_block(const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& d) {
  return from_rows({{1, 0, 0}, {0, a, b}, {0, c, d}});
}

std::vector<Matrix> trivial_module(const FiniteGroup& G, size_t d) { return std::vector<Matrix>(G.order(), Matrix::identity(d)); }

// Permutation module on cosets-free data: G acts on Q[G] by left multiplication.
std::vector<Matrix> regular_module(const FiniteGroup& G) {
  std::vector<Matrix> rho;
  for (int g = 0; g < G.order(); ++g) {
    Matrix m(G.order(), G.order());
    for (int h = 0; h < G.order(); ++h) m(G.mul(g, h), h) = 1;
    rho.push_back(m);
  }
  return rho;
}

// Null space basis (as columns) by Gauss-Jordan elimination.
std::vector<std::vector<Scalar>> null_space(const Matrix& m) {
  Matrix a = m;
  std::vector<int> pivot_col;
  size_t row = 0;
  for (size_t c = 0; c < a.cols() && row < a.rows(); ++c) {
    size_t p = row;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    for (size_t k = 0; k < a.cols(); ++k) std::swap(a(row, k), a(p, k));
    Scalar inv = 1 / a(row, c);
    for (size_t k = 0; k < a.cols(); ++k) a(row, k) *= inv;
    for (size_t r = 0; r < a.rows(); ++r)
      if (r != row && a(r, c) != 0) {
        Scalar f = a(r, c);
        for (size_t k = 0; k < a.cols(); ++k) a(r, k) -= f * a(row, k);
      }
    pivot_col.push_back(static_cast<int>(c));
    ++row;
  }
  std::vector<std::vector<Scalar>> basis;
  for (size_t free = 0; free < a.cols(); ++free) {
    if (std::find(pivot_col.begin(), pivot_col.end(), static_cast<int>(free)) != pivot_col.end()) continue;
    std::vector<Scalar> v(a.cols(), 0);
    v[free] = 1;
    for (size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = -a(r, free);
    basis.push_back(v);
  }
  return basis;
}

// Common invariants by successive restriction: W_0 = V, W_s = {w in W_{s-1} : g_s w = w}.
// H^1 then follows from the Euler characteristic (1 - r) dim M of the free group.
std::pair<size_t, size_t> free_group_oracle(const std::vector<Matrix>& gens) {
  const size_t d = gens[0].rows();
  Matrix basis = Matrix::identity(d);  // columns span W
  for (const auto& g : gens) {
    if (basis.cols() == 0) break;
    Matrix restricted = (Matrix::identity(d) - g) * basis;
    auto ns = null_space(restricted);
    Matrix next(d, ns.size());
    for (size_t j = 0; j < ns.size(); ++j)
      for (size_t i = 0; i < d; ++i)
        for (size_t k = 0; k < basis.cols(); ++k) next(i, j) += basis(i, k) * ns[j][k];
    basis = next;
  }
  long h0 = static_cast<long>(basis.cols());
  long h1 = h0 - (1 - static_cast<long>(gens.size())) * static_cast<long>(d);
  return {static_cast<size_t>(h0), static_cast<size_t>(h1)};
}

Matrix random_matrix(std::mt19937& rng, size_t d, int range) {
  Matrix m(d, d);
  for (size_t r = 0; r < d; ++r)
    for (size_t c = 0; c < d; ++c) m(r, c) = random_scalar(rng, range);
  return m;
}

Matrix random_invertible(std::mt19937& rng, size_t d) {
  for (;;) {
    Matrix m = random_matrix(rng, d, 2);
    if (inverse(m)) return m;
  }
}

AInfAlgebra point_algebra(const Field& alpha, std::string name) {
  AInfAlgebra A = AInfAlgebra::zero(alpha.space, alpha.cap, std::move(name));
  for (int n = 0; n <= alpha.cap; ++n) A.m(n) = alpha.at(0, n);
  return A;
}

// Loop at the vertex: mu constant plus dt [mu, xi] with xi of degree -1, which is MC since [mu, [mu, xi]] = 0.
Field loop_edge(std::mt19937& rng, const AInfAlgebra& A) {
  Field alpha = constant_family(Grid::interval(Var::T, {Scalar(0), Scalar(1, 2), Scalar(1)}), A);
  MultiMap mu2 = A.m(2);
  for (int k = 1; k + 1 <= A.cap; ++k) {
    MultiMap xi = random_map(rng, A.space, A.space, k, -k, 0.4);
    MultiMap b = gbracket(mu2, xi, A.cap);
    for (size_t c = 0; c < alpha.cells.size(); ++c) {
      Form weight = c == 0 ? Form(1) : Form::var(Var::T);
      alpha.at(c, k + 1) += b.left_multiply(weight * Form::differential(Var::T));
    }
  }
  return alpha;
}

FreeGroupModel free_model(std::mt19937& rng, int generators) {
  auto V = std::make_shared<AInfAlgebra>(examples::unit_with_two_odd(3));
  FreeGroupModel model{V, {}, {}};
  for (int s = 0; s < generators; ++s) {
    model.edges.push_back(loop_edge(rng, *V));
    Matrix rho;
    do rho = odd_block(random_scalar(rng, 2), random_scalar(rng, 2), random_scalar(rng, 2), random_scalar(rng, 2));
    while (!inverse(rho));
    model.monodromy.push_back(rho);
  }
  return model;
}

Matrix swap_xy() { return odd_block(0, 1, 1, 0); }

FiniteGroupScenario z2_scenario(std::mt19937& rng) {
  FiniteGroup G = FiniteGroup::cyclic(2);
  AInfAlgebra U = examples::unit_with_two_odd(3);
  LinearAction act = LinearAction::from_generators(G, U.space, {{1, swap_xy()}});
  std::vector<MultiMap> higher;
  for (int n = 2; n <= U.cap; ++n)
    higher.push_back(average_invariant(random_map(rng, U.space, U.space, n, 1 - n, 0.4), act));
  AlgebraPtr a1 = pushforward_structure(U, higher, "A1");
  Field gamma = Field::zero(Grid::point(), U.space, U.cap, 0);
  for (int n = 2; n <= U.cap; ++n) gamma.at(0, n) = random_map(rng, U.space, U.space, n, 1 - n, 0.4);
  const int K = a1->cap - 1;
  Field alpha0 = gauge_exp(-1 * gamma, constant_family(Grid::point(), *a1), K);
  auto a0 = std::make_shared<AInfAlgebra>(point_algebra(alpha0, "A0"));
  return FiniteGroupScenario{act, a0, a1, gamma};
}

}  // namespace

TEST_CASE("finite groups") {
  for (int n = 1; n <= 5; ++n) {
    FiniteGroup G = FiniteGroup::cyclic(n);
    CHECK(G.order() == n);
    for (int a = 0; a < n; ++a) CHECK(G.mul(a, G.inverse[a]) == G.identity);
  }
  FiniteGroup S = FiniteGroup::symmetric3();
  CHECK(S.order() == 6);
  int t01 = S.index_of("(01)"), t12 = S.index_of("(12)");
  CHECK(S.mul(t01, t01) == S.identity);
  CHECK(S.mul(t01, t12) != S.mul(t12, t01));
  CHECK(S.labels[S.mul(t01, t12)] == "(012)");
  CHECK(S.inverse[S.index_of("(012)")] == S.index_of("(021)"));
  CHECK_THROWS_AS(S.index_of("(0123)"), ParseError);
  CHECK_THROWS_AS(FiniteGroup::from_table("bad", {"a", "b"}, {{0, 1}, {1, 1}}), InvariantError);
  CHECK_THROWS_AS(FiniteGroup::from_table("bad", {"a", "b"}, {{0, 1}, {1, 2}}), InvariantError);
  CHECK_THROWS_AS(FiniteGroup::from_table("bad", {"a", "b"}, {{0, 1}}), InvariantError);
}

TEST_CASE("linear actions") {
  auto U = examples::unit_with_two_odd(3);
  FiniteGroup Z2 = FiniteGroup::cyclic(2);
  LinearAction swap = LinearAction::from_generators(Z2, U.space, {{1, swap_xy()}});
  CHECK(swap.preserves(U));
  CHECK_THROWS_AS(LinearAction::from_generators(Z2, U.space, {{1, odd_block(2, 0, 0, 1)}}), InvariantError);
  CHECK_THROWS_AS(LinearAction::from_generators(Z2, U.space, {{1, from_rows({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}})}}),
                  InvariantError);
  FiniteGroup Z3 = FiniteGroup::cyclic(3);
  LinearAction rot = LinearAction::from_generators(Z3, U.space, {{1, odd_block(0, -1, 1, -1)}});
  CHECK(rot.preserves(U));
  CHECK_THROWS_AS(LinearAction::from_generators(Z3, U.space, {}), DomainError);
}

TEST_CASE("averaging") {
  std::mt19937 rng(11);
  auto U = examples::unit_with_two_odd(4);
  FiniteGroup Z3 = FiniteGroup::cyclic(3);
  LinearAction rot = LinearAction::from_generators(Z3, U.space, {{1, odd_block(0, -1, 1, -1)}});
  for (int trial = 0; trial < 6; ++trial) {
    int n = 1 + trial % 3;
    MultiMap f = random_map(rng, U.space, U.space, n, -trial % 2 - n + 1, 0.5);
    MultiMap avg = average_invariant(f, rot);
    for (int g = 0; g < Z3.order(); ++g) CHECK(rot.act(g, avg) == avg);
    CHECK(average_invariant(avg, rot) == avg);
    HochschildImage df = hochschild_differential(f, U), davg = hochschild_differential(avg, U);
    CHECK(davg.raised == average_invariant(df.raised, rot));
    CHECK(davg.same == average_invariant(df.same, rot));
  }
  // Cocycles average to cocycles: [mu, [mu, xi]] = 0.
  for (int trial = 0; trial < 4; ++trial) {
    MultiMap xi = random_map(rng, U.space, U.space, 1 + trial % 2, -1 - trial % 2, 0.5);
    MultiMap cocycle = hochschild_differential(xi, U).raised;
    REQUIRE(hochschild_differential(cocycle, U).raised.is_zero());
    CHECK(hochschild_differential(average_invariant(cocycle, rot), U).raised.is_zero());
  }
  CHECK(average_invariant(U.m(2), rot) == U.m(2));
}

TEST_CASE("bar complex") {
  for (const FiniteGroup& G : {FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric3()}) {
    BarComplex bar(G, 4);
    for (int q = 2; q <= 4; ++q) CHECK((bar.boundary(q - 1) * bar.boundary(q)).is_zero());
    CHECK(bar.chain_count(3) == static_cast<size_t>(G.order() * G.order() * G.order()));
    CHECK_THROWS_AS(bar.boundary(5), DomainError);
    for (int q = 0; q <= 2; ++q) {
      auto module = regular_module(G);
      CHECK((cochain_differential(G, module, q + 1) * cochain_differential(G, module, q)).is_zero());
    }
  }
}

TEST_CASE("finite group cohomology collapses to invariants") {
  std::mt19937 rng(5);
  FiniteGroup Z2 = FiniteGroup::cyclic(2);
  std::vector<Matrix> sign{Matrix::identity(1), from_rows({{-1}})};
  CHECK(group_cohomology_dim(Z2, sign, 0) == 0);
  CHECK(group_cohomology_dim(Z2, sign, 1) == 0);
  FiniteGroup trivial = FiniteGroup::cyclic(1);
  CHECK(group_cohomology_dim(trivial, trivial_module(trivial, 3), 0) == 3);
  CHECK(group_cohomology_dim(trivial, trivial_module(trivial, 3), 2) == 0);
  for (const FiniteGroup& G : {Z2, FiniteGroup::cyclic(3), FiniteGroup::symmetric3()}) {
    std::vector<std::vector<Matrix>> modules{trivial_module(G, 2), regular_module(G)};
    // Conjugated regular module: a non-permutation representation.
    Matrix P = random_invertible(rng, G.order());
    std::vector<Matrix> conj;
    for (const auto& m : regular_module(G)) conj.push_back(P * m * *inverse(P));
    modules.push_back(conj);
    for (const auto& M : modules) {
      const size_t d = M[0].rows();
      Matrix stacked(0, d);
      for (const auto& m : M) stacked = stacked.vstack(Matrix::identity(d) - m);
      CHECK(group_cohomology_dim(G, M, 0) == null_space(stacked).size());
      int top = G.order() > 3 ? 2 : 3;
      for (int p = 1; p <= top; ++p) CHECK(group_cohomology_dim(G, M, p, top) == 0);
    }
    CHECK_THROWS_AS(group_cohomology_dim(G, modules[0], 4, 3), DomainError);
  }
}

TEST_CASE("free group cohomology") {
  CHECK(free_group_cohomology({Matrix::identity(1)}, 0) == 1);
  CHECK(free_group_cohomology({Matrix::identity(1)}, 1) == 1);
  CHECK(free_group_cohomology({from_rows({{-1}}), Matrix::identity(1)}, 0) == 0);
  CHECK(free_group_cohomology({from_rows({{-1}}), Matrix::identity(1)}, 1) == 1);
  CHECK_THROWS_AS(free_group_cohomology({}, 0), DomainError);
  std::mt19937 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    int r = 1 + trial % 3;
    size_t d = 1 + trial % 4;
    std::vector<Matrix> gens;
    for (int s = 0; s < r; ++s) {
      // Mix identities, unipotents and random invertibles so that invariants are often nonzero.
      int kind = (trial + s) % 3;
      Matrix m = Matrix::identity(d);
      if (kind == 1 && d > 1) m(0, d - 1) = random_scalar(rng, 2);
      if (kind == 2) m = random_invertible(rng, d);
      gens.push_back(m);
    }
    auto [h0, h1] = free_group_oracle(gens);
    CHECK(free_group_cohomology(gens, 0) == h0);
    CHECK(free_group_cohomology(gens, 1) == h1);
    CHECK(free_group_cohomology(gens, 2) == 0);
    CHECK(free_group_cohomology(gens, 5) == 0);
  }
}

TEST_CASE("reduced words") {
  CHECK(reduce({1, 2, -2, -1, 3}) == Word{3});
  CHECK(concat({1, -2}, {2, 1}) == Word{1, 1});
  CHECK(word_string({}) == "e");
  CHECK(word_string({1, -2}) == "s1s2^-1");
  // 1 + 2r + 2r(2r - 1) words of length <= 2.
  for (int r = 1; r <= 3; ++r) CHECK(reduced_words(r, 2).size() == static_cast<size_t>(1 + 2 * r + 2 * r * (2 * r - 1)));
  for (const auto& w : reduced_words(2, 3)) CHECK(reduce(w) == w);
}

TEST_CASE("free group strictification") {
  std::mt19937 rng(21);
  FreeGroupModel one = free_model(rng, 1);
  REQUIRE_NOTHROW(one.validate());
  StrictAction a1 = strictify(one, 2);
  CHECK(a1.ok());
  // F_s o F_{s^-1} = id exactly.
  for (const auto& c : a1.table)
    if (c.g == "s1" && c.h == "s1^-1") CHECK(c.gh == "e");
  AInfMorphism Fs = a1.maps[1];
  AInfMorphism Fsinv = a1.maps[2];
  CHECK(compose(Fs, Fsinv).same_maps(identity_morphism(one.vertex)));
  // The transported letter is not strict, so the check is not vacuous.
  bool higher = false;
  for (int n = 2; n <= Fs.cap; ++n) higher = higher || !Fs.F(n).is_zero();
  CHECK(higher);

  FreeGroupModel two = free_model(rng, 2);
  StrictAction a2 = strictify(two, 2);
  CHECK(a2.identity_ok);
  CHECK(a2.elements.size() == 17);
  CHECK(a2.table.size() == 17 * 17);
  for (const auto& c : a2.table) {
    INFO(c.g << " * " << c.h << ": " << c.witness);
    CHECK(c.equal);
  }
  for (const auto& F : a2.maps)
    for (int n = 1; n <= F.cap; ++n) CHECK(morphism_defect(F, n).is_zero());
}

TEST_CASE("free group model validation") {
  std::mt19937 rng(4);
  FreeGroupModel bad = free_model(rng, 1);
  bad.monodromy[0] = odd_block(1, 1, 1, 1);
  CHECK_THROWS_AS(bad.validate(), InvariantError);
  FreeGroupModel notmc = free_model(rng, 1);
  notmc.edges[0].at(0, 2) += random_map(rng, notmc.vertex->space, notmc.vertex->space, 2, 0, 0.5)
                                 .left_multiply(Form::var(Var::T));
  CHECK_THROWS(notmc.validate());
  FreeGroupModel shape = free_model(rng, 2);
  shape.monodromy.pop_back();
  CHECK_THROWS_AS(shape.validate(), InvariantError);
}

TEST_CASE("Z/2 strictification") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 2; ++trial) {
    FiniteGroupScenario sc = z2_scenario(rng);
    REQUIRE_NOTHROW(sc.validate());
    CHECK(sc.action.preserves(*sc.a1));
    CHECK_FALSE(sc.action.preserves(*sc.a0));
    StrictAction act = strictify(sc);
    CHECK(act.identity_ok);
    CHECK(act.table.size() == 4);
    for (const auto& c : act.table) {
      INFO(c.g << " * " << c.h << ": " << c.witness);
      CHECK(c.equal);
    }
    const AInfMorphism& Fg = act.maps[1];
    for (int n = 1; n <= Fg.cap; ++n) CHECK(morphism_defect(Fg, n).is_zero());
    CHECK(compose(Fg, Fg).same_maps(act.maps[0]));
    Field path = gauge_connection(sc);
    CHECK(mc_defect(path).is_zero());
  }
}

TEST_CASE("Z/2 scenario validation") {
  std::mt19937 rng(8);
  FiniteGroupScenario sc = z2_scenario(rng);
  FiniteGroupScenario wrong_end = sc;
  wrong_end.a0 = sc.a1;
  CHECK_THROWS_AS(wrong_end.validate(), InvariantError);
  FiniteGroupScenario not_invariant = sc;
  not_invariant.a1 = sc.a0;
  CHECK_THROWS_AS(not_invariant.validate(), InvariantError);
}

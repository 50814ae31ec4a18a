#include <cmath>
#include <map>

#include "ainf/examples.hpp"
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

MultiMap contracted_part(const MultiMap& m, Var v) {
  return m.map_coefficients([&](const Form& f) { return f.contract(v); }, m.shift() - 1);
}

MultiMap at_point(const MultiMap& m, Var v, const Scalar& x) {
  return m.map_coefficients([&](const Form& f) { return f.restrict(v, x); }, m.shift());
}

// MC family alpha = alpha^0(u) + du a(u) with prescribed path data a and alpha^0(0) = mu:
// alpha^0 solves the flow equation from the du-part of the MC equation, arity by arity
// (Picard iteration when a^1 is present and nilpotent).
Field flow_family(const AInfAlgebra& A, const Grid& grid, const std::vector<std::vector<MultiMap>>& a) {
  const Var v = grid.axes()[0].var;
  const auto& breaks = grid.axes()[0].breaks;
  Field alpha = Field::zero(grid, A.space, A.cap, 1);
  for (size_t c = 0; c < alpha.cells.size(); ++c)
    for (int k = 1; k <= A.cap; ++k) alpha.at(c, k) = a[c][k].left_multiply(Form::differential(v));
  for (int n = 0; n <= A.cap; ++n) {
    for (size_t c = 0; c < alpha.cells.size(); ++c) alpha.at(c, n) += A.m(n);
    for (int iter = 0; iter < 40; ++iter) {
      Field defect = mc_defect(alpha);
      bool changed = false;
      MultiMap start = A.m(n);
      for (size_t c = 0; c < alpha.cells.size(); ++c) {
        MultiMap y = contracted_part(defect.at(c, n).form_degree_part(1), v);
        MultiMap cur = alpha.at(c, n).form_degree_part(0);
        MultiMap dcur = cur.map_coefficients([&](const Form& f) { return f.partial(v); }, cur.shift());
        MultiMap rhs = dcur - y;  // the flow derivative, with the d_nabla contribution removed
        MultiMap anti = rhs.map_coefficients([&](const Form& f) { return f.antiderivative(v); }, rhs.shift());
        MultiMap next = start + anti - at_point(anti, v, breaks[c]);
        if (!(next == cur)) changed = true;
        alpha.at(c, n) = next + alpha.at(c, n).form_degree_part(1);
        start = at_point(next, v, breaks[c + 1]);
      }
      if (!changed) break;
    }
  }
  return alpha;
}

std::vector<std::vector<MultiMap>> random_path_data(std::mt19937& rng, const Grid& grid, SpacePtr space, int cap,
                                                    int poly) {
  Vars vars{grid.has(Var::S), grid.has(Var::T)};
  std::vector<std::vector<MultiMap>> a(grid.cell_count());
  for (auto& cell : a) {
    cell.push_back(MultiMap(space, space, 0, 1));
    cell.push_back(MultiMap(space, space, 1, 0));
    for (int k = 2; k <= cap; ++k) cell.push_back(random_map(rng, space, space, k, 1 - k, 0.3, 0, poly, vars));
  }
  return a;
}

// Independent leaf-first count: removing the last level of an (i, n) tree whose last node has
// arity r leaves an (i - 1, n - r + 1) tree with n - r + 1 slots to attach it to.
long count_trees(int i, int n, int d) {
  if (i == 1) return (n >= 2 || (n == 1 && d >= 1)) ? 1 : 0;
  long total = 0;
  for (int r = 1; r <= n; ++r) {
    int w = n - r + 1;
    if (r == 1) {
      if (d >= 1) total += w * count_trees(i - 1, w, d - 1);
    } else {
      total += w * count_trees(i - 1, w, d);
    }
  }
  return total;
}

Grid one_cell() { return Grid::interval(Var::T, {Scalar(0), Scalar(1)}); }
Grid two_cells() { return Grid::interval(Var::T, {Scalar(0), Scalar(2, 5), Scalar(1)}); }

}  // namespace

TEST_CASE("level tree enumeration") {
  CHECK(enumerate_level_trees(1, 3, 0).size() == 1);
  CHECK(enumerate_level_trees(2, 3, 0).size() == 2);
  CHECK(enumerate_level_trees(2, 4, 0).size() == 5);
  CHECK(enumerate_level_trees(1, 1, 0).empty());
  for (int d = 0; d <= 2; ++d)
    for (int i = 1; i <= 5; ++i)
      for (int n = 1; n <= 5; ++n) {
        auto trees = enumerate_level_trees(i, n, d);
        CHECK(static_cast<long>(trees.size()) == count_trees(i, n, d));
        for (const auto& t : trees) {
          CHECK(t.leaves() == n);
          CHECK(t.unary_levels() <= d);
        }
        for (size_t x = 0; x + 1 < trees.size(); ++x) CHECK_FALSE(trees[x] == trees[x + 1]);
      }
}

TEST_CASE("flow families are Maurer-Cartan") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 4; ++trial) {
    AInfAlgebra A = higher_algebra(rng, 4);
    Grid g = trial % 2 ? two_cells() : one_cell();
    Field alpha = flow_family(A, g, random_path_data(rng, g, A.space, 4, 1));
    CHECK(mc_defect(alpha).is_zero());
    CHECK_FALSE(alpha.continuity_violation());
    CHECK(fiber_algebra(alpha, 0).mu == A.mu);
  }
}

TEST_CASE("transport is an A-infinity morphism with the composition law") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 4; ++trial) {
    const int cap = 4;
    AInfAlgebra A = higher_algebra(rng, cap);
    Grid g = trial % 2 ? two_cells() : one_cell();
    auto a = random_path_data(rng, g, A.space, cap, 1);
    Field alpha = flow_family(A, g, a);
    std::vector<Scalar> pts{Scalar(0), Scalar(1, 3), Scalar(3, 4), Scalar(1)};
    std::map<std::pair<int, int>, AInfMorphism> F;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        TransportRequest req{alpha, pts[i], pts[j]};
        F.emplace(std::make_pair(i, j), transport(req));
        const AInfMorphism& f = F.at({i, j});
        for (int n = 1; n <= cap; ++n) CHECK(morphism_defect(f, n).is_zero());
      }
    for (int n = 1; n <= cap; ++n) CHECK(F.at({1, 1}).F(n) == (n == 1 ? MultiMap::identity(A.space) : MultiMap(A.space, A.space, n, 1 - n)));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) {
          AInfMorphism c = compose(F.at({j, k}), F.at({i, j}));
          for (int n = 1; n <= cap; ++n) CHECK(c.F(n) == F.at({i, k}).F(n));
        }
    // F^2 = -integral_p^q a^2.
    const Var v = Var::T;
    auto integral = [&](const Scalar& p, const Scalar& q) {
      MultiMap total(A.space, A.space, 2, -1);
      const auto& br = g.axes()[0].breaks;
      for (size_t c = 0; c + 1 < br.size(); ++c) {
        Scalar lo = std::max(std::min(p, q), br[c]), hi = std::min(std::max(p, q), br[c + 1]);
        if (!(lo < hi)) continue;
        MultiMap anti = a[c][2].map_coefficients([&](const Form& f) { return f.antiderivative(v); }, -1);
        MultiMap piece = at_point(anti, v, hi) - at_point(anti, v, lo);
        total += q < p ? -piece : piece;
      }
      return total;
    };
    CHECK(F.at({0, 3}).F(2) == -integral(0, 1));
    CHECK(F.at({2, 1}).F(2) == -integral(Scalar(3, 4), Scalar(1, 3)));
  }
}

TEST_CASE("tree contributions sum to the transport") {
  std::mt19937 rng(13);
  AInfAlgebra A = higher_algebra(rng, 4);
  Grid g = two_cells();
  Field alpha = flow_family(A, g, random_path_data(rng, g, A.space, 4, 1));
  TransportRequest req{alpha, Scalar(1, 5), Scalar(9, 10)};
  AInfMorphism F = transport(req);
  for (int n = 2; n <= 4; ++n) {
    MultiMap sum(A.space, A.space, n, 1 - n);
    for (int i = 1; i <= n - 1; ++i)
      for (const auto& t : enumerate_level_trees(i, n, 0)) sum += tree_integral(req, t);
    CHECK(sum == F.F(n));
  }
}

TEST_CASE("exact transport agrees with the RK4 oracle") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 3; ++trial) {
    AInfAlgebra A = higher_algebra(rng, 4);
    Grid g = trial == 1 ? one_cell() : two_cells();
    Field alpha = flow_family(A, g, random_path_data(rng, g, A.space, 4, 2));
    for (auto [p, q] : {std::pair{Scalar(0), Scalar(1)}, std::pair{Scalar(4, 5), Scalar(1, 10)}}) {
      TransportRequest req{alpha, p, q};
      AInfMorphism F = transport(req);
      auto oracle = transport_oracle(req, 1e-3);
      double worst = 0;
      for (int n = 1; n <= 4; ++n)
        for (size_t e = 0; e < oracle[n].size(); ++e) {
          const size_t dim = A.space->dim();
          const Form& c = F.F(n).at(e / dim, e % dim);
          worst = std::max(worst, std::abs(c.constant().get_d() - oracle[n][e]));
        }
      CHECK(worst < 1e-8);
    }
  }
}

TEST_CASE("unary path data") {
  std::mt19937 rng(19);
  const int cap = 3;
  AInfAlgebra A = higher_algebra(rng, cap);
  Grid g = one_cell();
  auto a = random_path_data(rng, g, A.space, cap, 1);
  // Nilpotent a^1: x -> y.
  a[0][1].at({A.space->index_of("x")}, A.space->index_of("y")) = Form(Scalar(2));
  Field alpha = flow_family(A, g, a);
  REQUIRE(mc_defect(alpha).is_zero());
  CHECK_THROWS_AS(transport(TransportRequest{alpha, 0, 1, 0}), InvariantError);
  AInfMorphism F = transport(TransportRequest{alpha, 0, 1, 6});
  for (int n = 1; n <= cap; ++n) CHECK(morphism_defect(F, n).is_zero());
  auto oracle = transport_oracle(TransportRequest{alpha, 0, 1, 6}, 1e-3);
  const size_t dim = A.space->dim();
  for (int n = 1; n <= cap; ++n)
    for (size_t e = 0; e < oracle[n].size(); ++e)
      CHECK(std::abs(F.F(n).at(e / dim, e % dim).constant().get_d() - oracle[n][e]) < 1e-8);
}

TEST_CASE("transport rejects invalid families") {
  auto v = make_space({{"a", 0}});
  Field f = Field::zero(one_cell(), v, 2, 1);
  f.at(0, 2).at({0, 0}, 0) = Form::differential(Var::T);
  f.at(0, 2).at({0, 0}, 0) += Form(1);
  CHECK_THROWS_AS(transport(TransportRequest{f, 0, 1}), InvariantError);
  Field ok = Field::zero(one_cell(), v, 2, 1);
  CHECK_THROWS_AS(transport(TransportRequest{ok, 0, 2}), DomainError);
  CHECK_THROWS_AS(transport(TransportRequest{Field::zero(Grid::point(), v, 2, 1), 0, 1}), DomainError);
}

#pragma once

#include <functional>
#include <random>

#include "ainf/field.hpp"
#include "ainf/multimap.hpp"

namespace testing_support {

using namespace ainf;

// Small integers and halves keep exact arithmetic cheap while exercising cancellation.
inline Scalar random_scalar(std::mt19937& rng, int range = 3) {
  std::uniform_int_distribution<int> num(-range, range);
  std::uniform_int_distribution<int> den(1, 2);
  return frac(num(rng), den(rng));
}

// Which coordinates a random form may use.
struct Vars {
  bool s = false;
  bool t = true;
};
inline constexpr Vars kSquare{true, true};
inline constexpr Vars kOnlyS{true, false};
inline constexpr Vars kOnlyT{false, true};

// Random polynomial form of a fixed form degree in the allowed variables.
inline Form random_form(std::mt19937& rng, int form_degree, int poly_degree, Vars vars) {
  Form f;
  std::vector<std::uint8_t> masks;
  if (form_degree == 0) masks = {0};
  if (form_degree == 1) {
    if (vars.s) masks.push_back(kDs);
    if (vars.t) masks.push_back(kDt);
  }
  if (form_degree == 2 && vars.s && vars.t) masks = {kDs | kDt};
  for (auto m : masks)
    for (int ps = 0; ps <= (vars.s ? poly_degree : 0); ++ps)
      for (int pt = 0; ps + pt <= poly_degree && (vars.t || pt == 0); ++pt)
        if (rng() % 2) f += Form::monomial(random_scalar(rng), ps, pt, m);
  return f;
}

inline SpacePtr random_space(std::mt19937& rng, int dim, int min_deg = 0, int max_deg = 2) {
  std::vector<std::pair<std::string, int>> basis;
  std::uniform_int_distribution<int> deg(min_deg, max_deg);
  for (int i = 0; i < dim; ++i) basis.push_back({"e" + std::to_string(i), deg(rng)});
  return make_space(basis);
}

// Random map of given arity and total shift; coefficients are constants unless max_form > 0.
// `allow(form_degree)` filters which form degrees may appear.
inline MultiMap random_map(std::mt19937& rng, SpacePtr src, SpacePtr dst, int arity, int shift, double density = 0.5,
                           int max_form = 0, int poly_degree = 0, Vars vars = kOnlyT,
                           const std::function<bool(int)>& allow = nullptr) {
  MultiMap m(src, dst, arity, shift);
  std::uniform_real_distribution<double> u(0, 1);
  for (size_t t = 0; t < m.tuple_count(); ++t) {
    int in = m.input_degree_sum(t);
    for (size_t z = 0; z < dst->dim(); ++z) {
      int fd = in + shift - dst->degree(z);
      if (fd < 0 || fd > max_form || u(rng) > density) continue;
      if (allow && !allow(fd)) continue;
      if (max_form == 0 && poly_degree == 0)
        m.at(t, z) = random_scalar(rng);
      else
        m.at(t, z) = random_form(rng, fd, poly_degree, vars);
    }
  }
  return m;
}

// Random field; `allow(m, n)` selects admissible (form degree, arity) pairs.
inline Field random_field(std::mt19937& rng, const Grid& grid, SpacePtr space, int cap, int degree, int poly_degree,
                          double density, const std::function<bool(int, int)>& allow) {
  Vars vars{grid.has(Var::S), grid.has(Var::T)};
  Field f = Field::zero(grid, space, cap, degree);
  for (size_t c = 0; c < f.cells.size(); ++c)
    for (int n = 0; n <= cap; ++n)
      f.at(c, n) = random_map(rng, space, space, n, degree + 1 - n, density, static_cast<int>(grid.dim()),
                              poly_degree, vars, [&](int m) { return allow(m, n); });
  return f;
}

}  // namespace testing_support

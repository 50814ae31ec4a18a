#include "ainf/field.hpp"

#include <algorithm>

#include "ainf/hochschild.hpp"

namespace ainf {

namespace {

const char* var_name(Var v) { return v == Var::S ? "s" : "t"; }

}  // namespace

Grid::Grid(std::vector<Axis> axes) : axes_(std::move(axes)) {
  if (axes_.size() > 2) throw InvariantError("grid-dimension", "grids have at most two axes");
  if (axes_.size() == 2 && axes_[0].var == axes_[1].var) throw InvariantError("grid-axes", "repeated grid axis");
  for (auto& a : axes_) {
    for (auto& b : a.breaks) b.canonicalize();
    if (a.breaks.size() < 2 || a.breaks.front() != 0 || a.breaks.back() != 1)
      throw InvariantError("grid-endpoints", std::string("breakpoints of ") + var_name(a.var) + " must run from 0 to 1");
    for (size_t i = 1; i < a.breaks.size(); ++i)
      if (!(a.breaks[i - 1] < a.breaks[i]))
        throw InvariantError("grid-increasing", std::string("breakpoints of ") + var_name(a.var) +
                                                    " must be strictly increasing");
  }
}

Grid Grid::interval(Var v, std::vector<Scalar> breaks) { return Grid({Axis{v, std::move(breaks)}}); }

Grid Grid::uniform(Var v, int cells) {
  std::vector<Scalar> b;
  for (int i = 0; i <= cells; ++i) b.push_back(frac(i, cells));
  return interval(v, b);
}

bool Grid::has(Var v) const {
  return std::any_of(axes_.begin(), axes_.end(), [v](const Axis& a) { return a.var == v; });
}

const Axis& Grid::axis(Var v) const {
  for (const auto& a : axes_)
    if (a.var == v) return a;
  throw DomainError(std::string("grid has no axis ") + var_name(v));
}

size_t Grid::cell_count() const {
  size_t n = 1;
  for (const auto& a : axes_) n *= a.breaks.size() - 1;
  return n;
}

std::vector<size_t> Grid::coords(size_t cell) const {
  std::vector<size_t> c(axes_.size());
  for (int i = static_cast<int>(axes_.size()) - 1; i >= 0; --i) {
    size_t k = axes_[i].breaks.size() - 1;
    c[i] = cell % k;
    cell /= k;
  }
  return c;
}

size_t Grid::cell_of(const std::vector<size_t>& coords) const {
  size_t cell = 0;
  for (size_t i = 0; i < axes_.size(); ++i) cell = cell * (axes_[i].breaks.size() - 1) + coords.at(i);
  return cell;
}

size_t Grid::interval_of(Var v, const Scalar& x) const {
  const auto& b = axis(v).breaks;
  if (x < 0 || x > 1) throw DomainError(std::string("point outside [0,1] on axis ") + var_name(v));
  for (size_t i = 0; i + 1 < b.size(); ++i)
    if (x < b[i + 1]) return i;
  return b.size() - 2;
}

Grid Grid::with_fiber_forms() const {
  if (has(Var::T)) throw DomainError("t is already a grid direction");
  Grid g = *this;
  g.fiber_forms_ = true;
  return g;
}

Grid Grid::without(Var v) const {
  std::vector<Axis> rest;
  for (const auto& a : axes_)
    if (a.var != v) rest.push_back(a);
  Grid g(rest);
  g.fiber_forms_ = fiber_forms_;
  return g;
}

Grid Grid::with(Axis a) const {
  auto axes = axes_;
  axes.push_back(std::move(a));
  Grid g(axes);
  g.fiber_forms_ = fiber_forms_;
  return g;
}

bool Grid::operator==(const Grid& o) const {
  if (axes_.size() != o.axes_.size() || fiber_forms_ != o.fiber_forms_) return false;
  for (size_t i = 0; i < axes_.size(); ++i)
    if (axes_[i].var != o.axes_[i].var || axes_[i].breaks != o.axes_[i].breaks) return false;
  return true;
}

Field Field::zero(Grid grid, SpacePtr space, int cap, int degree) {
  Field f;
  f.cells.resize(grid.cell_count());
  for (auto& c : f.cells)
    for (int n = 0; n <= cap; ++n) c.emplace_back(space, space, n, degree + 1 - n);
  f.grid = std::move(grid);
  f.space = std::move(space);
  f.cap = cap;
  f.degree = degree;
  return f;
}

Field& Field::operator+=(const Field& o) {
  if (!(grid == o.grid) || cap != o.cap || degree != o.degree) throw DomainError("adding incompatible fields");
  for (size_t c = 0; c < cells.size(); ++c)
    for (int n = 0; n <= cap; ++n) cells[c][n] += o.cells[c][n];
  return *this;
}

Field& Field::operator-=(const Field& o) {
  Field neg = o;
  neg *= Scalar(-1);
  return *this += neg;
}

Field& Field::operator*=(const Scalar& c) {
  for (auto& cell : cells)
    for (auto& m : cell) m *= c;
  return *this;
}

bool Field::operator==(const Field& o) const {
  return grid == o.grid && cap == o.cap && degree == o.degree && cells == o.cells;
}

bool Field::is_zero() const {
  for (const auto& cell : cells)
    for (const auto& m : cell)
      if (!m.is_zero()) return false;
  return true;
}

Field Field::map_coefficients(const std::function<Form(const Form&)>& op, int degree_change) const {
  Field r = zero(grid, space, cap, degree + degree_change);
  for (size_t c = 0; c < cells.size(); ++c)
    for (int n = 0; n <= cap; ++n) r.cells[c][n] = cells[c][n].map_coefficients(op, cells[c][n].shift() + degree_change);
  return r;
}

Field Field::left_multiply(const Form& omega) const {
  if (omega.is_zero()) return zero(grid, space, cap, degree);
  int deg = omega.terms().front().degree();
  return map_coefficients([&](const Form& f) { return omega * f; }, deg);
}

void Field::validate(const std::string& name) const {
  if (cells.size() != grid.cell_count()) throw InvariantError("field-cells", name + " has the wrong number of cells");
  for (size_t c = 0; c < cells.size(); ++c) {
    if (static_cast<int>(cells[c].size()) != cap + 1) throw InvariantError("field-arities", name + " arity count");
    for (int n = 0; n <= cap; ++n) {
      const MultiMap& m = cells[c][n];
      if (m.arity() != n || m.shift() != degree + 1 - n)
        throw InvariantError("field-shift", name + " component of arity " + std::to_string(n) + " has shift " +
                                                std::to_string(m.shift()) + ", expected " +
                                                std::to_string(degree + 1 - n));
      m.validate(name);
      for (size_t t = 0; t < m.tuple_count(); ++t)
        for (size_t z = 0; z < space->dim(); ++z)
          for (Var v : {Var::S, Var::T})
            if (!grid.allows(v) && m.at(t, z).depends_on(v))
              throw InvariantError("field-variables", name + " depends on " + var_name(v) +
                                                          ", which is not a grid direction");
    }
  }
}

Field Field::restrict(Var v, const Scalar& x) const {
  Grid g = grid.without(v);
  Field r = zero(g, space, cap, degree);
  size_t pos = 0;
  while (grid.axes()[pos].var != v) ++pos;
  size_t k = grid.interval_of(v, x);
  for (size_t c = 0; c < r.cells.size(); ++c) {
    auto co = g.coords(c);
    co.insert(co.begin() + pos, k);
    size_t src = grid.cell_of(co);
    for (int n = 0; n <= cap; ++n)
      r.cells[c][n] = cells[src][n].map_coefficients([&](const Form& f) { return f.restrict(v, x); },
                                                     cells[src][n].shift());
  }
  return r;
}

std::optional<std::string> Field::continuity_violation() const {
  for (size_t ai = 0; ai < grid.dim(); ++ai) {
    const Axis& a = grid.axes()[ai];
    for (size_t b = 1; b + 1 < a.breaks.size(); ++b) {
      for (size_t c = 0; c < cells.size(); ++c) {
        auto co = grid.coords(c);
        if (co[ai] != b - 1) continue;
        auto right = co;
        right[ai] = b;
        size_t c2 = grid.cell_of(right);
        for (int n = 0; n <= cap; ++n) {
          const MultiMap& l = cells[c][n];
          const MultiMap& r = cells[c2][n];
          for (size_t t = 0; t < l.tuple_count(); ++t)
            for (size_t z = 0; z < space->dim(); ++z)
              if (!(l.at(t, z).restrict(a.var, a.breaks[b]) == r.at(t, z).restrict(a.var, a.breaks[b])))
                return "arity " + std::to_string(n) + " entry " + l.witness_string(t, z) + " jumps at " +
                       var_name(a.var) + " = " + to_string(a.breaks[b]);
        }
      }
    }
  }
  return std::nullopt;
}

MultiMap Field::bidegree(size_t cell, int m, int n) const { return at(cell, n).form_degree_part(m); }

Field d_nabla(const Field& f) {
  const Grid& g = f.grid;
  return f.map_coefficients(
      [&](const Form& c) {
        Form r;
        for (const auto& a : g.axes()) r += c.d_part(a.var);
        return r;
      },
      1);
}

Field form_bracket(const Field& a, const Field& b) {
  if (!(a.grid == b.grid) || a.cap != b.cap || !same_space(a.space, b.space))
    throw DomainError("form_bracket of fields on different grids");
  Field r = Field::zero(a.grid, a.space, a.cap, a.degree + b.degree);
  for (size_t c = 0; c < a.cells.size(); ++c)
    for (int p = 0; p <= a.cap; ++p) {
      if (a.at(c, p).is_zero()) continue;
      for (int q = 0; q <= a.cap; ++q) {
        int n = p + q - 1;
        if (n < 0 || n > a.cap || b.at(c, q).is_zero()) continue;
        r.at(c, n) += gbracket(a.at(c, p), b.at(c, q));
      }
    }
  return r;
}

Field mc_defect(const Field& alpha) {
  if (alpha.degree != 1) throw DomainError("mc_defect needs a field of total degree 1");
  Field r = d_nabla(alpha);
  // Fibers of a collapsed square carry the de Rham differential d of their t-coefficients.
  if (alpha.grid.fiber_forms()) r += alpha.map_coefficients([](const Form& f) { return f.d_part(Var::T); }, 1);
  for (size_t c = 0; c < alpha.cells.size(); ++c)
    for (int p = 1; p <= alpha.cap; ++p) {
      if (alpha.at(c, p).is_zero()) continue;
      for (int q = 0; q <= alpha.cap; ++q) {
        int n = p + q - 1;
        if (n < 0 || n > alpha.cap || alpha.at(c, q).is_zero()) continue;
        r.at(c, n) += circle(alpha.at(c, p), alpha.at(c, q));
      }
    }
  return r;
}

Field constant_family(const Grid& grid, const AInfAlgebra& A) {
  Field f = Field::zero(grid, A.space, A.cap, 1);
  for (size_t c = 0; c < f.cells.size(); ++c)
    for (int n = 0; n <= A.cap; ++n) f.at(c, n) = A.m(n);
  return f;
}

Field eta_embed(const MultiMap& f, const Grid& grid, int cap) {
  if (!f.is_constant()) throw DomainError("eta_embed takes a constant cochain");
  if (f.arity() > cap) throw DomainError("eta_embed: arity exceeds cap");
  Field r = Field::zero(grid, f.src(), cap, f.shifted_degree());
  for (size_t c = 0; c < r.cells.size(); ++c) r.at(c, f.arity()) = f;
  return r;
}

AInfAlgebra fiber_algebra(const Field& alpha, const Scalar& x, std::string name) {
  if (alpha.grid.dim() != 1) throw DomainError("fiber_algebra needs a one-dimensional family");
  if (alpha.degree != 1) throw DomainError("fiber_algebra needs a degree-1 field");
  Field p = alpha.restrict(alpha.grid.axes()[0].var, x);
  AInfAlgebra A = AInfAlgebra::zero(alpha.space, alpha.cap, std::move(name));
  for (int n = 0; n <= alpha.cap; ++n) A.m(n) = p.at(0, n);
  return A;
}

std::optional<int> min_level(const Field& f) {
  std::optional<int> lv;
  for (const auto& cell : f.cells)
    for (const auto& m : cell)
      for (size_t t = 0; t < m.tuple_count(); ++t)
        for (size_t z = 0; z < f.space->dim(); ++z)
          for (const auto& term : m.at(t, z).terms()) {
            int level = term.degree() - m.shift();
            if (!lv || level < *lv) lv = level;
          }
  return lv;
}

Field truncate_levels(const Field& f, int K) {
  Field r = f;
  for (auto& cell : r.cells)
    for (auto& m : cell) {
      // level = formdeg - shift <= K  <=>  formdeg <= K + shift
      const int max_form = K + m.shift();
      m = m.map_coefficients(
          [&](const Form& c) {
            Form keep;
            for (int d = 0; d <= std::min(2, max_form); ++d) keep += c.degree_part(d);
            return keep;
          },
          m.shift());
    }
  return r;
}

Field bidegree_field(const Field& f, int m, int n) {
  Field r = Field::zero(f.grid, f.space, f.cap, f.degree);
  for (size_t c = 0; c < f.cells.size(); ++c) r.at(c, n) = f.bidegree(c, m, n);
  return r;
}

std::optional<std::string> assumption_violation(const Field& alpha, bool require_no_unary_one_form) {
  for (size_t c = 0; c < alpha.cells.size(); ++c) {
    if (!alpha.at(c, 0).is_zero()) return "alpha^{m,0} must vanish (flat fibers)";
    if (require_no_unary_one_form && !alpha.bidegree(c, 1, 1).is_zero()) return "alpha^{1,1} must vanish";
  }
  return std::nullopt;
}

}  // namespace ainf

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ainf/ainf.hpp"

namespace ainf {

// One coordinate direction of a grid: strictly increasing rational breakpoints 0 = b_0 < ... < b_k = 1.
struct Axis {
  Var var = Var::T;
  std::vector<Scalar> breaks;
};

// Product partition of [0,1]^dim, dim in {0, 1, 2}. A 0-dimensional grid is a single point cell.
class Grid {
 public:
  Grid() = default;
  explicit Grid(std::vector<Axis> axes);
  static Grid point() { return Grid(); }
  static Grid interval(Var v, std::vector<Scalar> breaks);
  static Grid uniform(Var v, int cells);

  size_t dim() const { return axes_.size(); }
  const std::vector<Axis>& axes() const { return axes_; }
  bool has(Var v) const;
  // Copy whose coefficients may also be forms in t over a single t-interval (collapsed square).
  Grid with_fiber_forms() const;
  bool fiber_forms() const { return fiber_forms_; }
  // Whether coefficients may depend on v.
  bool allows(Var v) const { return has(v) || (fiber_forms_ && v == Var::T); }
  const Axis& axis(Var v) const;
  size_t cell_count() const;
  // Per-axis interval indices of a cell, in axis order.
  std::vector<size_t> coords(size_t cell) const;
  size_t cell_of(const std::vector<size_t>& coords) const;
  // Index of the interval of axis v containing x (left-closed; the last interval is closed).
  size_t interval_of(Var v, const Scalar& x) const;
  // Grid with the axis v removed.
  Grid without(Var v) const;
  // Grid with an axis appended.
  Grid with(Axis a) const;
  bool operator==(const Grid& o) const;

 private:
  std::vector<Axis> axes_;
  bool fiber_forms_ = false;
};

// Piecewise-polynomial form-valued cochain field on a grid: per cell, components of arity
// 0..cap. Every component of arity n has total shift degree + 1 - n, so the field is
// homogeneous of total degree `degree` in Omega*(M; g). Coefficients are polynomials in the
// global coordinates, valid on the cell.
struct Field {
  Grid grid;
  SpacePtr space;
  int cap = 0;
  int degree = 0;
  std::vector<std::vector<MultiMap>> cells;

  static Field zero(Grid grid, SpacePtr space, int cap, int degree);
  MultiMap& at(size_t cell, int n) { return cells.at(cell).at(n); }
  const MultiMap& at(size_t cell, int n) const { return cells.at(cell).at(n); }

  Field& operator+=(const Field& o);
  Field& operator-=(const Field& o);
  Field& operator*=(const Scalar& c);
  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  friend Field operator*(const Scalar& c, Field a) { return a *= c; }
  bool operator==(const Field& o) const;
  bool is_zero() const;
  // Applies op to every coefficient of every component; the degree changes by `degree_change`.
  Field map_coefficients(const std::function<Form(const Form&)>& op, int degree_change) const;
  // Multiplies every coefficient on the left by a homogeneous form.
  Field left_multiply(const Form& omega) const;

  // Checks shifts, homogeneity and that coefficients only involve grid variables.
  void validate(const std::string& name = "field") const;
  // Restriction to the hyperplane {v = x}: removes the axis v.
  Field restrict(Var v, const Scalar& x) const;
  // Witness of a discontinuity across an interior cell face, if any. Pullbacks of the
  // coefficients to the face must agree from both sides.
  std::optional<std::string> continuity_violation() const;
  // Component of form degree m and arity n in one cell.
  MultiMap bidegree(size_t cell, int m, int n) const;
};

// Exterior derivative along the grid directions.
Field d_nabla(const Field& f);
// Bracket induced by the Gerstenhaber bracket and the wedge product; arities beyond the cap are dropped.
Field form_bracket(const Field& a, const Field& b);
// d(alpha) + 1/2 [alpha, alpha] = d(alpha) + alpha o alpha (plus [d, alpha] on fiber forms).
Field mc_defect(const Field& alpha);

// Constant field with value mu^n of an algebra (total degree 1 family).
Field constant_family(const Grid& grid, const AInfAlgebra& A);
// Constant 0-form field with value the cochain f in arity f.arity().
Field eta_embed(const MultiMap& f, const Grid& grid, int cap);
// Fiber algebra at a point of a 1-dimensional family (0-form part restricted to v = x).
AInfAlgebra fiber_algebra(const Field& alpha, const Scalar& x, std::string name = "");

// Filtration level of a field: the level of a monomial is minus its internal shift
// (total shift minus form degree). Zero fields have no level.
std::optional<int> min_level(const Field& f);
// Drops every monomial of level > K (works modulo F_{K+1}).
Field truncate_levels(const Field& f, int K);
Field bidegree_field(const Field& f, int m, int n);

// Family assumption checks: alpha^{m,0} = 0 for all m, and optionally alpha^{1,1} = 0.
std::optional<std::string> assumption_violation(const Field& alpha, bool require_no_unary_one_form);

}  // namespace ainf

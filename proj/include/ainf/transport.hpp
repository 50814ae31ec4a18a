#pragma once

#include <vector>

#include "ainf/field.hpp"

namespace ainf {

// A level tree: one alpha node per level. Levels are listed from the root (latest time)
// down to the leaves (earliest time). Level l has a node of arity `arity[l]` placed in slot
// `slot[l]` among the strands of the level above it (slot[0] = 0 for the root).
struct LevelTree {
  std::vector<int> arity;
  std::vector<int> slot;
  int levels() const { return static_cast<int>(arity.size()); }
  int leaves() const;
  int unary_levels() const;
  std::string str() const;
  bool operator==(const LevelTree& o) const = default;
};

// All trees with i levels and n leaves, at most d of them unary, in canonical order.
std::vector<LevelTree> enumerate_level_trees(int i, int n, int d);

// Path-direction data of a one-dimensional family: a^k = contraction of the dv-part of alpha^{.,k}.
std::vector<std::vector<MultiMap>> path_components(const Field& alpha);

struct TransportRequest {
  Field alpha;       // family on a one-dimensional grid
  Scalar from = 0;   // p
  Scalar to = 1;     // q
  int unary_depth = 0;
  bool check_mc = true;
};

// F_{p -> q}: the sum over level trees of the oriented iterated integrals of the path data.
AInfMorphism transport(const TransportRequest& req);

// Contribution of a single tree (its iterated integral), for tests and reports.
MultiMap tree_integral(const TransportRequest& req, const LevelTree& tree);

// Floating-point oracle: RK4 integration of dF/du = -a_u * F (with F(p) = id), steps aligned
// to the grid breakpoints. Requires constant-coefficient fibers. Result indexed [n][tuple*dim + out].
std::vector<std::vector<double>> transport_oracle(const TransportRequest& req, double step);

// Throws if the family is not Maurer-Cartan, violates the assumptions, or is discontinuous.
void check_transport_family(const TransportRequest& req);

}  // namespace ainf

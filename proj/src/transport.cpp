#include "ainf/transport.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "ainf/hochschild.hpp"

namespace ainf {

namespace {

using Piecewise = std::vector<MultiMap>;  // one map per grid cell, coefficients polynomial in the path variable

Var path_var(const Field& alpha) {
  if (alpha.grid.dim() != 1) throw DomainError("transport needs a family on a one-dimensional grid");
  return alpha.grid.axes()[0].var;
}

MultiMap at_point(const MultiMap& m, Var v, const Scalar& x) {
  return m.map_coefficients([&](const Form& c) { return c.restrict(v, x); }, m.shift());
}

// R(u) = integral_u^q g(w) dw for a piecewise polynomial g, via a continuous antiderivative.
Piecewise integral_to(const Piecewise& g, const Axis& axis, const Scalar& q) {
  const Var v = axis.var;
  const size_t cells = g.size();
  Piecewise anti(cells);
  MultiMap running = MultiMap(g[0].src(), g[0].dst(), g[0].arity(), g[0].shift());
  for (size_t c = 0; c < cells; ++c) {
    MultiMap G = g[c].map_coefficients([&](const Form& f) { return f.antiderivative(v); }, g[c].shift());
    anti[c] = G - at_point(G, v, axis.breaks[c]) + running;
    running = at_point(anti[c], v, axis.breaks[c + 1]);
  }
  size_t cq = 0;
  while (cq + 1 < cells && !(q < axis.breaks[cq + 1])) ++cq;
  MultiMap aq = at_point(anti[cq], v, q);
  Piecewise r(cells);
  for (size_t c = 0; c < cells; ++c) r[c] = aq - anti[c];
  return r;
}

MultiMap value_at(const Piecewise& r, const Grid& grid, Var v, const Scalar& p) {
  return at_point(r[grid.interval_of(v, p)], v, p);
}

bool all_zero(const Piecewise& g) {
  for (const auto& m : g)
    if (!m.is_zero()) return false;
  return true;
}

}  // namespace

int LevelTree::leaves() const {
  int w = 1;
  for (int r : arity) w += r - 1;
  return w;
}

int LevelTree::unary_levels() const {
  int u = 0;
  for (int r : arity) u += (r == 1);
  return u;
}

std::string LevelTree::str() const {
  std::ostringstream os;
  for (size_t l = 0; l < arity.size(); ++l) os << (l ? " / " : "") << "a" << arity[l] << "@" << slot[l];
  return os.str();
}

std::vector<LevelTree> enumerate_level_trees(int i, int n, int d) {
  std::vector<LevelTree> out;
  if (i < 1 || n < 1) return out;
  LevelTree cur;
  std::function<void(int, int)> rec = [&](int width, int unary) {
    int depth = cur.levels();
    if (depth == i) {
      if (width == n) out.push_back(cur);
      return;
    }
    for (int j = 0; j < (depth == 0 ? 1 : width); ++j) {
      for (int r = 1; width + r - 1 <= n; ++r) {
        if (r == 1 && unary >= d) continue;
        cur.arity.push_back(r);
        cur.slot.push_back(j);
        rec(depth == 0 ? r : width + r - 1, unary + (r == 1));
        cur.arity.pop_back();
        cur.slot.pop_back();
      }
    }
  };
  rec(1, 0);
  return out;
}

std::vector<std::vector<MultiMap>> path_components(const Field& alpha) {
  const Var v = path_var(alpha);
  std::vector<std::vector<MultiMap>> a(alpha.cells.size());
  for (size_t c = 0; c < alpha.cells.size(); ++c)
    for (int n = 0; n <= alpha.cap; ++n) {
      const MultiMap& m = alpha.at(c, n);
      a[c].push_back(m.map_coefficients([&](const Form& f) { return f.contract(v); }, m.shift() - 1));
    }
  return a;
}

void check_transport_family(const TransportRequest& req) {
  const Field& alpha = req.alpha;
  path_var(alpha);
  alpha.validate("family");
  if (alpha.degree != 1) throw InvariantError("family-degree", "family must have total degree 1");
  for (const Scalar& x : {req.from, req.to})
    if (x < 0 || x > 1) throw DomainError("transport endpoint " + to_string(x) + " outside the grid");
  if (req.unary_depth < 0) throw DomainError("unary depth must be non-negative");
  if (auto bad = assumption_violation(alpha, req.unary_depth == 0)) throw InvariantError("family-assumption", *bad);
  if (auto jump = alpha.continuity_violation()) throw InvariantError("family-continuity", *jump);
  if (!req.check_mc) return;
  Field defect = mc_defect(alpha);
  for (size_t c = 0; c < defect.cells.size(); ++c)
    for (int n = 0; n <= defect.cap; ++n) {
      auto nz = defect.at(c, n).first_nonzero();
      if (nz)
        throw InvariantError("family-maurer-cartan", "MC defect in cell " + std::to_string(c) + ", arity " +
                                                         std::to_string(n) + " at " +
                                                         defect.at(c, n).witness_string(nz->first, nz->second));
    }
}

AInfMorphism transport(const TransportRequest& req) {
  check_transport_family(req);
  const Field& alpha = req.alpha;
  const Var v = path_var(alpha);
  const Axis& axis = alpha.grid.axes()[0];
  const int N = alpha.cap;
  auto a = path_components(alpha);
  const size_t cells = a.size();

  auto src = std::make_shared<AInfAlgebra>(fiber_algebra(alpha, req.from, "A_" + to_string(req.from)));
  auto dst = std::make_shared<AInfAlgebra>(fiber_algebra(alpha, req.to, "A_" + to_string(req.to)));
  src->internal_d = dst->internal_d = alpha.grid.fiber_forms();
  AInfMorphism F = AInfMorphism::zero(src, dst, "F_{" + to_string(req.from) + "->" + to_string(req.to) + "}");
  F.F(1) = MultiMap::identity(alpha.space);
  if (req.from == req.to) return F;

  std::vector<bool> present(N + 1, false);
  for (int r = 1; r <= N; ++r)
    for (size_t c = 0; c < cells; ++c) present[r] = present[r] || !a[c][r].is_zero();

  // Depth-first over trees from the root down; every prefix is itself a tree whose
  // contribution R(p) is added to F^width.
  std::function<void(const Piecewise&, int, int)> grow = [&](const Piecewise& R, int width, int unary) {
    F.F(width) += value_at(R, alpha.grid, v, req.from);
    for (int j = 0; j < width; ++j)
      for (int r = 1; width + r - 1 <= N; ++r) {
        if (!present[r] || (r == 1 && unary >= req.unary_depth)) continue;
        Piecewise g(cells);
        for (size_t c = 0; c < cells; ++c) g[c] = -insert(R[c], a[c][r], j);
        if (all_zero(g)) continue;
        grow(integral_to(g, axis, req.to), width + r - 1, unary + (r == 1));
      }
  };
  for (int r = 1; r <= N; ++r) {
    if (!present[r] || (r == 1 && req.unary_depth < 1)) continue;
    Piecewise g(cells);
    for (size_t c = 0; c < cells; ++c) g[c] = -a[c][r];
    grow(integral_to(g, axis, req.to), r, r == 1);
  }
  return F;
}

MultiMap tree_integral(const TransportRequest& req, const LevelTree& tree) {
  const Field& alpha = req.alpha;
  const Var v = path_var(alpha);
  const Axis& axis = alpha.grid.axes()[0];
  auto a = path_components(alpha);
  const size_t cells = a.size();
  Piecewise R;
  for (int l = 0; l < tree.levels(); ++l) {
    Piecewise g(cells);
    for (size_t c = 0; c < cells; ++c) g[c] = l == 0 ? -a[c][tree.arity[0]] : -insert(R[c], a[c][tree.arity[l]], tree.slot[l]);
    R = integral_to(g, axis, req.to);
  }
  return value_at(R, alpha.grid, v, req.from);
}

std::vector<std::vector<double>> transport_oracle(const TransportRequest& req, double step) {
  if (!(step > 0)) throw DomainError("oracle step must be positive");
  check_transport_family(req);
  const Field& alpha = req.alpha;
  const Var v = path_var(alpha);
  const Axis& axis = alpha.grid.axes()[0];
  const int N = alpha.cap;
  const size_t dim = alpha.space->dim();
  auto a = path_components(alpha);

  // Polynomial coefficients of a^k per cell: poly[c][k][entry] = coefficients in u.
  using Poly = std::vector<double>;
  std::vector<std::vector<std::vector<Poly>>> poly(a.size());
  for (size_t c = 0; c < a.size(); ++c) {
    poly[c].resize(N + 1);
    for (int k = 1; k <= N; ++k) {
      const MultiMap& m = a[c][k];
      poly[c][k].assign(m.tuple_count() * dim, Poly());
      for (size_t e = 0; e < m.tuple_count() * dim; ++e) {
        const Form& f = m.at(e / dim, e % dim);
        for (const auto& t : f.terms()) {
          if (t.mask() != 0 || (v == Var::S ? t.pt() : t.ps()) != 0)
            throw DomainError("transport_oracle needs constant-coefficient fibers");
          int deg = v == Var::S ? t.ps() : t.pt();
          if (static_cast<int>(poly[c][k][e].size()) <= deg) poly[c][k][e].resize(deg + 1, 0.0);
          poly[c][k][e][deg] += t.c.get_d();
        }
      }
    }
  }
  std::vector<size_t> tuples(N + 1, 1);
  for (int n = 1; n <= N; ++n) tuples[n] = tuples[n - 1] * dim;

  using State = std::vector<std::vector<double>>;  // [n][tuple*dim + out]
  auto rhs = [&](size_t cell, double u, const State& F) {
    State out(N + 1);
    std::vector<std::vector<double>> ak(N + 1);
    for (int k = 1; k <= N; ++k) {
      ak[k].assign(tuples[k] * dim, 0.0);
      for (size_t e = 0; e < ak[k].size(); ++e) {
        double val = 0, pw = 1;
        for (double co : poly[cell][k][e]) {
          val += co * pw;
          pw *= u;
        }
        ak[k][e] = val;
      }
    }
    for (int n = 1; n <= N; ++n) {
      out[n].assign(tuples[n] * dim, 0.0);
      for (size_t tup = 0; tup < tuples[n]; ++tup) {
        std::vector<size_t> in(n);
        size_t rest = tup;
        for (int i = n - 1; i >= 0; --i) {
          in[i] = rest % dim;
          rest /= dim;
        }
        // Sum over k and compositions m_1 + .. + m_k = n of a^k(F^{m_1}, .., F^{m_k}).
        std::vector<int> parts;
        std::function<void(int)> comp = [&](int left) {
          if (left == 0) {
            int k = static_cast<int>(parts.size());
            std::vector<std::vector<double>> blocks;
            size_t pos = 0;
            for (int m : parts) {
              size_t sub = 0;
              for (int i = 0; i < m; ++i) sub = sub * dim + in[pos + i];
              pos += m;
              blocks.emplace_back(F[m].begin() + sub * dim, F[m].begin() + (sub + 1) * dim);
            }
            // Contract the block outputs with a^k.
            std::vector<size_t> ys(k, 0);
            for (size_t yt = 0; yt < tuples[k]; ++yt) {
              size_t r2 = yt;
              double w = 1;
              for (int i = k - 1; i >= 0; --i) {
                w *= blocks[i][r2 % dim];
                r2 /= dim;
                if (w == 0) break;
              }
              if (w == 0) continue;
              for (size_t z = 0; z < dim; ++z) out[n][tup * dim + z] -= w * ak[k][yt * dim + z];
            }
            return;
          }
          for (int m = 1; m <= left; ++m) {
            parts.push_back(m);
            comp(left - m);
            parts.pop_back();
          }
        };
        comp(n);
      }
    }
    return out;
  };

  State F(N + 1);
  for (int n = 1; n <= N; ++n) F[n].assign(tuples[n] * dim, 0.0);
  for (size_t i = 0; i < dim; ++i) F[1][i * dim + i] = 1.0;

  const double p = req.from.get_d(), q = req.to.get_d();
  const double dir = q >= p ? 1.0 : -1.0;
  // Integrate cell by cell between the breakpoints crossed by the path.
  std::vector<double> marks{p};
  for (const auto& b : axis.breaks) {
    double x = b.get_d();
    if ((x - p) * dir > 0 && (q - x) * dir > 0) marks.push_back(x);
  }
  marks.push_back(q);
  if (dir < 0) std::sort(marks.begin() + 1, marks.end() - 1, std::greater<double>());
  auto axpy = [&](const State& x, double h, const State& k) {
    State r = x;
    for (int n = 1; n <= N; ++n)
      for (size_t e = 0; e < r[n].size(); ++e) r[n][e] += h * k[n][e];
    return r;
  };
  for (size_t seg = 0; seg + 1 < marks.size(); ++seg) {
    double a0 = marks[seg], a1 = marks[seg + 1];
    size_t cell = alpha.grid.interval_of(v, Scalar((a0 + a1) / 2));
    int steps = std::max(1, static_cast<int>(std::ceil(std::abs(a1 - a0) / step)));
    double h = (a1 - a0) / steps;
    for (int s = 0; s < steps; ++s) {
      double u = a0 + s * h;
      State k1 = rhs(cell, u, F);
      State k2 = rhs(cell, u + h / 2, axpy(F, h / 2, k1));
      State k3 = rhs(cell, u + h / 2, axpy(F, h / 2, k2));
      State k4 = rhs(cell, u + h, axpy(F, h, k3));
      for (int n = 1; n <= N; ++n)
        for (size_t e = 0; e < F[n].size(); ++e) F[n][e] += h / 6 * (k1[n][e] + 2 * k2[n][e] + 2 * k3[n][e] + k4[n][e]);
    }
  }
  return F;
}

}  // namespace ainf

#include "ainf/group.hpp"

#include <array>
#include <deque>

namespace ainf {

namespace {

size_t power(size_t base, int exp) {
  size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

std::vector<int> decode_tuple(size_t index, int length, int order) {
  std::vector<int> g(length);
  for (int i = length - 1; i >= 0; --i) {
    g[i] = static_cast<int>(index % order);
    index /= order;
  }
  return g;
}

size_t encode_tuple(const std::vector<int>& g, int order) {
  size_t index = 0;
  for (int x : g) index = index * order + x;
  return index;
}

}  // namespace

FiniteGroup FiniteGroup::from_table(std::string name, std::vector<std::string> labels,
                                    std::vector<std::vector<int>> table) {
  FiniteGroup G;
  G.name = std::move(name);
  G.labels = std::move(labels);
  G.table = std::move(table);
  const int n = G.order();
  if (n == 0) throw InvariantError("group-nonempty", "group has no elements");
  if (static_cast<int>(G.table.size()) != n) throw InvariantError("group-table", "table must be square");
  for (const auto& row : G.table) {
    if (static_cast<int>(row.size()) != n) throw InvariantError("group-table", "table must be square");
    for (int x : row)
      if (x < 0 || x >= n) throw InvariantError("group-closure", "table entry outside the group");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (G.mul(G.mul(a, b), c) != G.mul(a, G.mul(b, c)))
          throw InvariantError("group-associative",
                               "(" + G.labels[a] + G.labels[b] + ")" + G.labels[c] + " != " + G.labels[a] + "(" +
                                   G.labels[b] + G.labels[c] + ")");
  G.identity = -1;
  for (int e = 0; e < n && G.identity < 0; ++e) {
    bool ok = true;
    for (int a = 0; a < n; ++a) ok = ok && G.mul(e, a) == a && G.mul(a, e) == a;
    if (ok) G.identity = e;
  }
  if (G.identity < 0) throw InvariantError("group-identity", "no identity element");
  G.inverse.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (G.mul(a, b) == G.identity && G.mul(b, a) == G.identity) G.inverse[a] = b;
  for (int a = 0; a < n; ++a)
    if (G.inverse[a] < 0) throw InvariantError("group-inverse", G.labels[a] + " has no inverse");
  return G;
}

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n < 1) throw DomainError("cyclic group order must be positive");
  std::vector<std::string> labels;
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    labels.push_back(a == 0 ? "e" : "g" + (a == 1 ? std::string() : "^" + std::to_string(a)));
    for (int b = 0; b < n; ++b) table[a][b] = (a + b) % n;
  }
  return from_table("Z/" + std::to_string(n), labels, table);
}

FiniteGroup FiniteGroup::symmetric3() {
  // Permutations of {0,1,2} as images; composition (p q)(i) = p(q(i)).
  std::vector<std::array<int, 3>> perms{{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
  std::vector<std::string> labels{"e", "(01)", "(12)", "(02)", "(012)", "(021)"};
  std::vector<std::vector<int>> table(6, std::vector<int>(6));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      std::array<int, 3> c{};
      for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
      for (int k = 0; k < 6; ++k)
        if (perms[k] == c) table[a][b] = k;
    }
  return from_table("S3", labels, table);
}

int FiniteGroup::index_of(const std::string& label) const {
  for (int i = 0; i < order(); ++i)
    if (labels[i] == label) return i;
  throw ParseError("unknown group element '" + label + "' in " + name);
}

LinearAction LinearAction::from_generators(const FiniteGroup& group, SpacePtr space,
                                           const std::vector<std::pair<int, Matrix>>& generators) {
  LinearAction act{group, space, std::vector<Matrix>(group.order())};
  std::vector<bool> known(group.order(), false);
  act.rho[group.identity] = Matrix::identity(space->dim());
  known[group.identity] = true;
  std::deque<int> queue{group.identity};
  while (!queue.empty()) {
    int g = queue.front();
    queue.pop_front();
    for (const auto& [s, m] : generators) {
      if (m.rows() != space->dim() || m.cols() != space->dim())
        throw InvariantError("action-shape", "generator matrix has the wrong size");
      int h = group.mul(s, g);
      Matrix img = m * act.rho[g];
      if (known[h]) {
        if (!(img == act.rho[h]))
          throw InvariantError("action-representation", "generator images violate the relation at " + group.labels[h]);
        continue;
      }
      act.rho[h] = img;
      known[h] = true;
      queue.push_back(h);
    }
  }
  for (int g = 0; g < group.order(); ++g)
    if (!known[g]) throw DomainError("generators do not generate " + group.name);
  act.validate();
  return act;
}

void LinearAction::validate() const {
  const size_t d = space->dim();
  if (static_cast<int>(rho.size()) != group.order()) throw InvariantError("action-shape", "one matrix per element");
  for (const auto& m : rho) {
    if (m.rows() != d || m.cols() != d) throw InvariantError("action-shape", "matrix has the wrong size");
    for (size_t r = 0; r < d; ++r)
      for (size_t c = 0; c < d; ++c)
        if (m(r, c) != 0 && space->degree(r) != space->degree(c))
          throw InvariantError("action-degree", "action must preserve degrees");
  }
  if (!(rho[group.identity] == Matrix::identity(d))) throw InvariantError("action-identity", "e must act trivially");
  for (int a = 0; a < group.order(); ++a)
    for (int b = 0; b < group.order(); ++b)
      if (!(rho[group.mul(a, b)] == rho[a] * rho[b]))
        throw InvariantError("action-representation",
                             "rho(" + group.labels[a] + group.labels[b] + ") != rho(" + group.labels[a] + ") rho(" +
                                 group.labels[b] + ")");
}

MultiMap LinearAction::act(int g, const MultiMap& f) const {
  MultiMap R = map_from_matrix(space, space, rho.at(g));
  MultiMap Rinv = map_from_matrix(space, space, rho.at(group.inverse.at(g)));
  MultiMap left = compose_blocks(R, {&f});
  std::vector<const MultiMap*> blocks(f.arity(), &Rinv);
  return compose_blocks(left, blocks);
}

bool LinearAction::preserves(const AInfAlgebra& A) const {
  for (int g = 0; g < group.order(); ++g)
    for (int n = 0; n <= A.cap; ++n)
      if (!(act(g, A.m(n)) == A.m(n))) return false;
  return true;
}

MultiMap average_invariant(const MultiMap& f, const LinearAction& act) {
  MultiMap sum(f.src(), f.dst(), f.arity(), f.shift());
  for (int g = 0; g < act.group.order(); ++g) sum += act.act(g, f);
  sum *= Scalar(1, act.group.order());
  return sum;
}

AInfMorphism strict_morphism(AlgebraPtr src, AlgebraPtr dst, const Matrix& m, std::string name) {
  AInfMorphism F = AInfMorphism::zero(src, dst, std::move(name));
  F.F(1) = map_from_matrix(src->space, dst->space, m);
  return F;
}

BarComplex::BarComplex(const FiniteGroup& g, int cap_) : group(g), cap(cap_) {
  if (cap < 0) throw DomainError("bar complex cap must be non-negative");
}

size_t BarComplex::chain_count(int q) const {
  if (q < 0 || q > cap) throw DomainError("bar complex dimension " + std::to_string(q) + " beyond the cap");
  return power(group.order(), q);
}

Matrix BarComplex::boundary(int q) const {
  if (q < 1 || q > cap) throw DomainError("bar boundary index " + std::to_string(q) + " out of range");
  const int n = group.order();
  Matrix m(chain_count(q - 1), chain_count(q));
  for (size_t c = 0; c < chain_count(q); ++c) {
    auto g = decode_tuple(c, q, n);
    std::vector<int> face(g.begin() + 1, g.end());
    m(encode_tuple(face, n), c) += 1;
    for (int i = 1; i < q; ++i) {
      std::vector<int> merged(g.begin(), g.end());
      merged[i - 1] = group.mul(g[i - 1], g[i]);
      merged.erase(merged.begin() + i);
      m(encode_tuple(merged, n), c) += (i % 2 ? -1 : 1);
    }
    std::vector<int> last(g.begin(), g.end() - 1);
    m(encode_tuple(last, n), c) += (q % 2 ? -1 : 1);
  }
  return m;
}

Matrix cochain_differential(const FiniteGroup& G, const std::vector<Matrix>& module, int q) {
  if (q < 0) throw DomainError("cochain degree must be non-negative");
  if (static_cast<int>(module.size()) != G.order()) throw DomainError("module needs one matrix per group element");
  const size_t d = module[0].rows();
  const int n = G.order();
  Matrix m(power(n, q + 1) * d, power(n, q) * d);
  for (size_t row = 0; row < power(n, q + 1); ++row) {
    auto g = decode_tuple(row, q + 1, n);
    // g_1 . f(g_2, ..., g_{q+1})
    size_t first = encode_tuple(std::vector<int>(g.begin() + 1, g.end()), n);
    for (size_t a = 0; a < d; ++a)
      for (size_t b = 0; b < d; ++b) m(row * d + a, first * d + b) += module[g[0]](a, b);
    for (int i = 1; i <= q; ++i) {
      std::vector<int> merged(g.begin(), g.end());
      merged[i - 1] = G.mul(g[i - 1], g[i]);
      merged.erase(merged.begin() + i);
      size_t col = encode_tuple(merged, n);
      for (size_t a = 0; a < d; ++a) m(row * d + a, col * d + a) += (i % 2 ? -1 : 1);
    }
    size_t col = encode_tuple(std::vector<int>(g.begin(), g.end() - 1), n);
    for (size_t a = 0; a < d; ++a) m(row * d + a, col * d + a) += ((q + 1) % 2 ? -1 : 1);
  }
  return m;
}

size_t group_cohomology_dim(const FiniteGroup& G, const std::vector<Matrix>& module, int p, int cap) {
  if (p < 0) throw DomainError("cohomological degree must be non-negative");
  if (p > cap) throw DomainError("degree " + std::to_string(p) + " exceeds the bar complex cap " + std::to_string(cap));
  const size_t d = module.at(0).rows();
  size_t cochains = power(G.order(), p) * d;
  size_t kernel = cochains - rank(cochain_differential(G, module, p));
  size_t image = p == 0 ? 0 : rank(cochain_differential(G, module, p - 1));
  return kernel - image;
}

size_t free_group_cohomology(const std::vector<Matrix>& generators, int p) {
  if (p < 0) throw DomainError("cohomological degree must be non-negative");
  if (p >= 2) return 0;
  if (generators.empty()) throw DomainError("free group needs at least one generator");
  const size_t d = generators[0].rows();
  Matrix delta(0, d);
  for (const auto& g : generators) delta = delta.vstack(Matrix::identity(d) - g);
  size_t r = rank(delta);
  if (p == 0) return d - r;
  return generators.size() * d - r;
}

}  // namespace ainf

#include "ainf/ainf.hpp"

#include <functional>

namespace ainf {

namespace {

// All ordered tuples of k positive integers summing to n.
void for_each_composition(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> parts(k);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == k - 1) {
      if (left >= 1) {
        parts[i] = left;
        fn(parts);
      }
      return;
    }
    for (int v = 1; v <= left - (k - 1 - i); ++v) {
      parts[i] = v;
      rec(i + 1, left - v);
    }
  };
  if (k == 0) {
    if (n == 0) fn(parts);
    return;
  }
  rec(0, n);
}

void check_level(int n, int lo, int cap, const char* what) {
  if (n < lo || n > cap)
    throw DomainError(std::string(what) + ": level " + std::to_string(n) + " outside [" + std::to_string(lo) +
                      ", " + std::to_string(cap) + "]");
}

}  // namespace

AInfAlgebra AInfAlgebra::zero(SpacePtr space, int cap, std::string name) {
  AInfAlgebra A;
  A.name = std::move(name);
  A.space = space;
  A.cap = cap;
  for (int k = 0; k <= cap; ++k) A.mu.emplace_back(space, space, k, 2 - k);
  return A;
}

void AInfAlgebra::validate() const {
  if (cap < 1) throw InvariantError("arity-cap", "arity cap must be at least 1");
  if (static_cast<int>(mu.size()) != cap + 1) throw InvariantError("mu-count", "expected maps mu^0..mu^cap");
  for (int k = 0; k <= cap; ++k) {
    const auto& m = mu[k];
    if (m.arity() != k) throw InvariantError("mu-arity", "mu^" + std::to_string(k) + " has wrong arity");
    if (m.shift() != 2 - k)
      throw InvariantError("mu-shift", "mu^" + std::to_string(k) + " of " + name + " has shift " +
                                           std::to_string(m.shift()) + ", expected " + std::to_string(2 - k));
    if (!same_space(m.src(), space) || !same_space(m.dst(), space))
      throw InvariantError("mu-space", "mu^" + std::to_string(k) + " lives on another space");
    m.validate(name + " mu^" + std::to_string(k));
  }
  if (flat && !mu[0].is_zero()) throw InvariantError("flat", name + " has nonzero curvature mu^0");
}

AInfMorphism AInfMorphism::zero(AlgebraPtr src, AlgebraPtr dst, std::string name) {
  if (src->cap != dst->cap) throw DomainError("morphism between algebras with different arity caps");
  AInfMorphism F;
  F.name = std::move(name);
  F.cap = src->cap;
  F.f.emplace_back();
  for (int n = 1; n <= F.cap; ++n) F.f.emplace_back(src->space, dst->space, n, 1 - n);
  F.src = std::move(src);
  F.dst = std::move(dst);
  return F;
}

void AInfMorphism::validate() const {
  if (!src || !dst) throw InvariantError("morphism-algebras", "morphism without source or target");
  if (src->cap != cap || dst->cap != cap) throw InvariantError("morphism-cap", "arity caps differ");
  if (static_cast<int>(f.size()) != cap + 1) throw InvariantError("morphism-count", "expected maps F^1..F^cap");
  for (int n = 1; n <= cap; ++n) {
    const auto& m = f[n];
    if (m.arity() != n) throw InvariantError("morphism-arity", "F^" + std::to_string(n) + " has wrong arity");
    if (m.shift() != 1 - n)
      throw InvariantError("morphism-shift", "F^" + std::to_string(n) + " of " + name + " has shift " +
                                                 std::to_string(m.shift()) + ", expected " + std::to_string(1 - n));
    if (!same_space(m.src(), src->space) || !same_space(m.dst(), dst->space))
      throw InvariantError("morphism-space", "F^" + std::to_string(n) + " has wrong spaces");
    m.validate(name + " F^" + std::to_string(n));
  }
}

bool AInfMorphism::same_maps(const AInfMorphism& o) const {
  if (cap != o.cap) return false;
  for (int n = 1; n <= cap; ++n)
    if (f[n] != o.f[n]) return false;
  return true;
}

AInfHomotopy AInfHomotopy::zero(std::shared_ptr<const AInfMorphism> F, std::shared_ptr<const AInfMorphism> G,
                                std::string name) {
  AInfHomotopy H;
  H.name = std::move(name);
  H.cap = F->cap;
  H.t.emplace_back();
  for (int n = 1; n <= H.cap; ++n) H.t.emplace_back(F->src->space, F->dst->space, n, -n);
  H.F = std::move(F);
  H.G = std::move(G);
  return H;
}

void AInfHomotopy::validate() const {
  if (!F || !G) throw InvariantError("homotopy-morphisms", "homotopy without endpoints");
  if (!same_space(F->src->space, G->src->space) || !same_space(F->dst->space, G->dst->space) || F->cap != G->cap)
    throw InvariantError("homotopy-endpoints", "endpoint morphisms are not parallel");
  if (static_cast<int>(t.size()) != cap + 1) throw InvariantError("homotopy-count", "expected maps T^1..T^cap");
  for (int n = 1; n <= cap; ++n) {
    if (t[n].arity() != n || t[n].shift() != -n)
      throw InvariantError("homotopy-shift", "T^" + std::to_string(n) + " must have arity " + std::to_string(n) +
                                                 " and shift " + std::to_string(-n));
    t[n].validate(name + " T^" + std::to_string(n));
  }
}

MultiMap apply_internal_d(const MultiMap& f) {
  return f.map_coefficients([](const Form& c) { return c.d_part(Var::T); }, f.shift() + 1);
}

MultiMap stasheff_defect(const AInfAlgebra& A, int n) {
  check_level(n, 0, A.cap, "stasheff_defect");
  MultiMap out(A.space, A.space, n, 3 - n);
  for (int k = 1; k <= n + 1 && k <= A.cap; ++k) {
    int r = n + 1 - k;
    if (r > A.cap) continue;
    for (int j = 0; j < k; ++j) out += insert(A.m(k), A.m(r), j);
  }
  if (A.internal_d) out += apply_internal_d(A.m(n));
  return out;
}

MultiMap morphism_defect(const AInfMorphism& F, int n) {
  check_level(n, 1, F.cap, "morphism_defect");
  const auto& A = *F.src;
  const auto& B = *F.dst;
  MultiMap out(A.space, B.space, n, 2 - n);
  for (int r = 1; r <= n; ++r) {
    for_each_composition(n, r, [&](const std::vector<int>& s) {
      std::vector<const MultiMap*> blocks;
      for (int si : s) blocks.push_back(&F.F(si));
      out += compose_blocks(B.m(r), blocks);
    });
  }
  if (B.internal_d) out += apply_internal_d(F.F(n));
  for (int m = 1; m <= n; ++m) {
    const MultiMap& outer = F.F(n - m + 1);
    for (int j = 0; j < outer.arity(); ++j) out -= insert(outer, A.m(m), j);
  }
  return out;
}

MultiMap homotopy_defect(const AInfHomotopy& H, int n) {
  check_level(n, 1, H.cap, "homotopy_defect");
  const auto& A = *H.F->src;
  const auto& B = *H.F->dst;
  MultiMap out = H.F->F(n) - H.G->F(n);
  for (int r = 1; r <= n; ++r) {
    const MultiMap& outer = H.T(n - r + 1);
    for (int j = 0; j < outer.arity(); ++j) out -= insert(outer, A.m(r), j);
  }
  // mu_B^k(G, .., G, T, F, .., F) with the T block at every position.
  for (int k = 1; k <= n; ++k) {
    for_each_composition(n, k, [&](const std::vector<int>& s) {
      for (int pos = 0; pos < k; ++pos) {
        std::vector<const MultiMap*> blocks;
        for (int i = 0; i < k; ++i)
          blocks.push_back(i < pos ? &H.G->F(s[i]) : i == pos ? &H.T(s[i]) : &H.F->F(s[i]));
        out -= compose_blocks(B.m(k), blocks);
      }
    });
  }
  if (B.internal_d) out -= apply_internal_d(H.T(n));
  return out;
}

AInfMorphism compose(const AInfMorphism& F, const AInfMorphism& G) {
  if (!same_space(F.src->space, G.dst->space) || F.cap != G.cap)
    throw DomainError("compose: source of " + F.name + " is not the target of " + G.name);
  AInfMorphism R = AInfMorphism::zero(G.src, F.dst);
  for (int n = 1; n <= F.cap; ++n) {
    for (int k = 1; k <= n; ++k) {
      for_each_composition(n, k, [&](const std::vector<int>& m) {
        std::vector<const MultiMap*> blocks;
        for (int mi : m) blocks.push_back(&G.F(mi));
        R.F(n) += compose_blocks(F.F(k), blocks);
      });
    }
  }
  return R;
}

AInfMorphism identity_morphism(AlgebraPtr A) {
  AInfMorphism F = AInfMorphism::zero(A, A, "id");
  F.F(1) = MultiMap::identity(A->space);
  return F;
}

Matrix linear_matrix(const MultiMap& f) {
  if (f.arity() != 1) throw DomainError("linear_matrix needs an arity-1 map");
  Matrix m(f.dst()->dim(), f.src()->dim());
  for (size_t i = 0; i < f.src()->dim(); ++i)
    for (size_t o = 0; o < f.dst()->dim(); ++o) {
      const Form& c = f.at(i, o);
      if (!c.is_constant()) throw DomainError("linear_matrix needs constant coefficients");
      m(o, i) = c.constant();
    }
  return m;
}

MultiMap map_from_matrix(SpacePtr src, SpacePtr dst, const Matrix& m) {
  MultiMap f(src, dst, 1, 0);
  for (size_t i = 0; i < src->dim(); ++i)
    for (size_t o = 0; o < dst->dim(); ++o) f.at(i, o) = m(o, i);
  return f;
}

AInfMorphism invert(const AInfMorphism& F) {
  auto inv1 = inverse(linear_matrix(F.F(1)));
  if (!inv1) throw DomainError("invert: linear part of " + F.name + " is not invertible");
  AInfMorphism G = AInfMorphism::zero(F.dst, F.src, F.name.empty() ? "" : F.name + "^-1");
  G.F(1) = map_from_matrix(F.dst->space, F.src->space, *inv1);
  for (int n = 2; n <= F.cap; ++n) {
    MultiMap rest(F.dst->space, F.dst->space, n, 1 - n);
    for (int k = 2; k <= n; ++k) {
      for_each_composition(n, k, [&](const std::vector<int>& m) {
        std::vector<const MultiMap*> blocks;
        for (int mi : m) blocks.push_back(&G.F(mi));
        rest += compose_blocks(F.F(k), blocks);
      });
    }
    G.F(n) = -compose_blocks(G.F(1), {&rest});
  }
  return G;
}

AlgebraPtr pushforward_structure(const AInfAlgebra& A, const std::vector<MultiMap>& higher, std::string name) {
  if (A.internal_d) throw DomainError("pushforward_structure: form-valued algebras are not supported");
  auto id = std::make_shared<AInfAlgebra>(A);
  AInfMorphism F = AInfMorphism::zero(id, id);
  F.F(1) = MultiMap::identity(A.space);
  for (const auto& h : higher) {
    if (h.arity() < 2 || h.arity() > A.cap) throw DomainError("pushforward_structure: bad arity");
    F.F(h.arity()) += h;
  }
  auto B = std::make_shared<AInfAlgebra>(AInfAlgebra::zero(A.space, A.cap, std::move(name)));
  B->flat = A.flat;
  B->m(0) = A.m(0);
  for (int n = 1; n <= A.cap; ++n) {
    MultiMap mu(A.space, A.space, n, 2 - n);
    for (int m = 1; m <= n; ++m) {
      const MultiMap& outer = F.F(n - m + 1);
      for (int j = 0; j < outer.arity(); ++j) mu += insert(outer, A.m(m), j);
    }
    for (int r = 1; r < n; ++r) {
      for_each_composition(n, r, [&](const std::vector<int>& s) {
        std::vector<const MultiMap*> blocks;
        for (int si : s) blocks.push_back(&F.F(si));
        mu -= compose_blocks(B->m(r), blocks);
      });
    }
    B->m(n) = std::move(mu);
  }
  return B;
}

LevelStatus level_status(int level, const MultiMap& defect) {
  LevelStatus s;
  s.level = level;
  auto nz = defect.first_nonzero();
  if (nz) {
    s.zero = false;
    s.witness = defect.witness_string(nz->first, nz->second) + " = " + defect.at(nz->first, nz->second).str();
  }
  return s;
}

}  // namespace ainf

#include "ainf/strictify.hpp"

#include <map>

#include "ainf/gauge.hpp"
#include "ainf/transport.hpp"

namespace ainf {

namespace {

void require_stasheff(const AInfAlgebra& A) {
  A.validate();
  for (int n = 0; n <= A.cap; ++n)
    if (auto nz = stasheff_defect(A, n).first_nonzero())
      throw InvariantError("stasheff", A.name + " fails the A-infinity relation at arity " + std::to_string(n));
}

bool same_structure(const AInfAlgebra& a, const AInfAlgebra& b) {
  if (a.cap != b.cap) return false;
  for (int n = 0; n <= a.cap; ++n)
    if (!(a.m(n) == b.m(n))) return false;
  return true;
}

AInfMorphism rebased(AInfMorphism F, AlgebraPtr src, AlgebraPtr dst, std::string name) {
  F.src = std::move(src);
  F.dst = std::move(dst);
  F.name = std::move(name);
  return F;
}

CompositionCheck compare(const std::string& g, const std::string& h, const std::string& gh, const AInfMorphism& lhs,
                         const AInfMorphism& rhs) {
  CompositionCheck c{g, h, gh, true, ""};
  for (int n = 1; n <= lhs.cap && c.equal; ++n) {
    MultiMap diff = lhs.F(n) - rhs.F(n);
    if (auto nz = diff.first_nonzero()) {
      c.equal = false;
      c.witness = "arity " + std::to_string(n) + ": " + diff.witness_string(nz->first, nz->second);
    }
  }
  return c;
}

bool is_identity(const AInfMorphism& F) {
  for (int n = 1; n <= F.cap; ++n)
    if (!(F.F(n) == (n == 1 ? MultiMap::identity(F.src->space) : MultiMap(F.src->space, F.dst->space, n, 1 - n))))
      return false;
  return true;
}

int gauge_level(const AInfAlgebra& A) { return A.cap - 1; }

}  // namespace

Word reduce(Word w) {
  Word out;
  for (int x : w) {
    if (x == 0) throw DomainError("0 is not a letter");
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word w = a;
  w.insert(w.end(), b.begin(), b.end());
  return reduce(w);
}

std::string word_string(const Word& w) {
  if (w.empty()) return "e";
  std::string s;
  for (int x : w) s += "s" + std::to_string(std::abs(x)) + (x < 0 ? "^-1" : "");
  return s;
}

std::vector<Word> reduced_words(int generators, int max_length) {
  std::vector<Word> all{Word{}};
  size_t start = 0;
  for (int len = 1; len <= max_length; ++len) {
    size_t end = all.size();
    for (size_t i = start; i < end; ++i)
      for (int g = 1; g <= generators; ++g)
        for (int x : {g, -g}) {
          if (!all[i].empty() && all[i].back() == -x) continue;
          Word w = all[i];
          w.push_back(x);
          all.push_back(w);
        }
    start = end;
  }
  return all;
}

void FreeGroupModel::validate() const {
  require_stasheff(*vertex);
  if (edges.empty() || edges.size() != monodromy.size())
    throw InvariantError("model-shape", "one edge family and one monodromy per generator");
  for (size_t s = 0; s < edges.size(); ++s) {
    const std::string edge = "edge " + std::to_string(s + 1);
    check_transport_family(TransportRequest{edges[s], 0, 1});
    if (!same_space(edges[s].space, vertex->space) || edges[s].cap != vertex->cap)
      throw InvariantError("model-space", edge + " lives on another space");
    if (!same_structure(fiber_algebra(edges[s], 0), *vertex))
      throw InvariantError("edge-start", edge + " does not start at the vertex algebra");
    if (!inverse(monodromy[s])) throw InvariantError("monodromy-invertible", edge + " has a singular monodromy");
    auto end = std::make_shared<AInfAlgebra>(fiber_algebra(edges[s], 1));
    AInfMorphism R = strict_morphism(end, vertex, monodromy[s]);
    for (int n = 1; n <= R.cap; ++n)
      if (!morphism_defect(R, n).is_zero())
        throw InvariantError("monodromy-morphism", edge + ": monodromy is not a strict isomorphism onto the vertex");
  }
}

void FiniteGroupScenario::validate() const {
  action.validate();
  require_stasheff(*a0);
  require_stasheff(*a1);
  if (!same_space(a0->space, action.space) || !same_space(a1->space, action.space))
    throw InvariantError("scenario-space", "algebras and action live on different spaces");
  if (!action.preserves(*a1)) throw InvariantError("action-automorphism", "the group does not act strictly on A1");
  const int K = gauge_level(*a0);
  Field alpha0 = constant_family(gamma.grid, *a0);
  check_gauge_inputs(gamma, alpha0, K);
  if (gamma.grid.dim() != 0) throw DomainError("finite-group scenario needs a gauge element on a point");
  PathCheck pc = mc_path_check(gamma, alpha0, K, {Scalar(0), Scalar(1, 2), Scalar(1)});
  if (!pc.ok()) throw InvariantError("gauge-path", "gauge path is not Maurer-Cartan: " + pc.witness);
  if (!(gauge_exp(gamma, alpha0, K) == constant_family(gamma.grid, *a1)))
    throw InvariantError("gauge-endpoint", "exp(gamma) does not carry A0 to A1");
}

bool StrictAction::ok() const {
  if (!identity_ok) return false;
  for (const auto& c : table)
    if (!c.equal) return false;
  return true;
}

StrictAction strictify(const FreeGroupModel& model, int max_length) {
  model.validate();
  const AlgebraPtr V = model.vertex;
  std::vector<AInfMorphism> forward, backward;
  for (size_t s = 0; s < model.edges.size(); ++s) {
    const std::string name = "s" + std::to_string(s + 1);
    AInfMorphism T01 = transport(TransportRequest{model.edges[s], 0, 1});
    AInfMorphism T10 = transport(TransportRequest{model.edges[s], 1, 0});
    AInfMorphism R = strict_morphism(T01.dst, V, model.monodromy[s]);
    AInfMorphism Rinv = strict_morphism(V, T01.dst, *inverse(model.monodromy[s]));
    forward.push_back(rebased(compose(R, T01), V, V, "F_" + name));
    backward.push_back(rebased(compose(T10, Rinv), V, V, "F_" + name + "^-1"));
  }
  std::map<Word, AInfMorphism> cache;
  auto F = [&](const Word& w) -> const AInfMorphism& {
    auto it = cache.find(w);
    if (it != cache.end()) return it->second;
    AInfMorphism m = identity_morphism(V);
    for (auto l = w.rbegin(); l != w.rend(); ++l) {
      const AInfMorphism& letter = *l > 0 ? forward[*l - 1] : backward[-*l - 1];
      m = rebased(compose(letter, m), V, V, "");
    }
    m.name = "F_" + word_string(w);
    return cache.emplace(w, std::move(m)).first->second;
  };
  StrictAction out;
  auto words = reduced_words(static_cast<int>(model.edges.size()), max_length);
  for (const auto& w : words) {
    out.elements.push_back(word_string(w));
    out.maps.push_back(F(w));
  }
  out.identity_ok = is_identity(F(Word{}));
  for (const auto& g : words)
    for (const auto& h : words) {
      // The composite is taken letter by letter along the unreduced concatenation.
      AInfMorphism lhs = rebased(compose(F(g), F(h)), V, V, "");
      Word gh = concat(g, h);
      out.table.push_back(compare(word_string(g), word_string(h), word_string(gh), lhs, F(gh)));
    }
  return out;
}

Field gauge_connection(const FiniteGroupScenario& sc) {
  return gauge_path_element(sc.gamma, constant_family(sc.gamma.grid, *sc.a0), gauge_level(*sc.a0));
}

StrictAction strictify(const FiniteGroupScenario& sc) {
  sc.validate();
  Field path = gauge_connection(sc);
  AInfMorphism G01 = transport(TransportRequest{path, 0, 1});
  AInfMorphism G10 = transport(TransportRequest{path, 1, 0});
  const FiniteGroup& group = sc.action.group;
  StrictAction out;
  for (int g = 0; g < group.order(); ++g) {
    AInfMorphism R = strict_morphism(G01.dst, G01.dst, sc.action.rho[g]);
    out.elements.push_back(group.labels[g]);
    out.maps.push_back(rebased(compose(G10, compose(R, G01)), sc.a0, sc.a0, "F_" + group.labels[g]));
  }
  out.identity_ok = is_identity(out.maps[group.identity]);
  for (int g = 0; g < group.order(); ++g)
    for (int h = 0; h < group.order(); ++h) {
      int gh = group.mul(g, h);
      AInfMorphism lhs = compose(out.maps[g], out.maps[h]);
      out.table.push_back(compare(group.labels[g], group.labels[h], group.labels[gh], lhs, out.maps[gh]));
    }
  return out;
}

}  // namespace ainf

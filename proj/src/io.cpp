#include "ainf/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace ainf {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

// ---------- forms and scalars ----------

Scalar scalar_of(const json& j, const std::string& where) {
  if (j.is_string()) return parse_scalar(j.get<std::string>());
  if (j.is_number_integer()) return Scalar(j.get<long>());
  throw ParseError(where + ": expected a rational literal \"n/d\" or an integer");
}

Form factor_of(const std::string& tok) {
  if (tok == "ds") return Form::differential(Var::S);
  if (tok == "dt") return Form::differential(Var::T);
  if (!tok.empty() && (tok[0] == 's' || tok[0] == 't')) {
    Var v = tok[0] == 's' ? Var::S : Var::T;
    int power = 1;
    if (tok.size() > 1) {
      if (tok[1] != '^' || tok.size() == 2) throw ParseError("bad factor '" + tok + "'");
      for (size_t i = 2; i < tok.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(tok[i]))) throw ParseError("bad exponent in '" + tok + "'");
      power = std::stoi(tok.substr(2));
    }
    return Form::monomial(1, v == Var::S ? power : 0, v == Var::T ? power : 0, 0);
  }
  return Form(parse_scalar(tok));
}

Form term_of(std::string term) {
  Scalar sign = 1;
  while (!term.empty() && (term[0] == '+' || term[0] == '-')) {
    if (term[0] == '-') sign = -sign;
    term.erase(0, 1);
  }
  if (term.empty()) throw ParseError("empty term in form");
  Form f(sign);
  size_t start = 0;
  for (;;) {
    size_t star = term.find('*', start);
    std::string tok = term.substr(start, star == std::string::npos ? std::string::npos : star - start);
    if (tok.empty()) throw ParseError("empty factor in form");
    f = f * factor_of(tok);
    if (star == std::string::npos) break;
    start = star + 1;
  }
  return f;
}

std::string var_label(Var v) { return v == Var::S ? "s" : "t"; }

Var var_of(const std::string& s) {
  if (s == "s") return Var::S;
  if (s == "t") return Var::T;
  throw ParseError("unknown base variable '" + s + "'");
}

// ---------- maps ----------

std::string where_of(const std::string& kind, const std::string& name, int n) {
  return kind + " '" + name + "' arity " + std::to_string(n);
}

MultiMap map_of(const json& j, const SpacePtr& space, int arity, int default_shift, const std::string& where) {
  int shift = default_shift;
  const json* terms = &j;
  if (j.is_object()) {
    if (j.contains("shift")) shift = j.at("shift").get<int>();
    terms = &j.at("terms");
  }
  if (!terms->is_array()) throw ParseError(where + ": terms must be an array");
  MultiMap m(space, space, arity, shift);
  for (const auto& t : *terms) {
    if (!t.is_array() || t.size() != 3) throw ParseError(where + ": a term is [[inputs...], output, coefficient]");
    if (!t[0].is_array() || t[0].size() != static_cast<size_t>(arity))
      throw ParseError(where + ": expected " + std::to_string(arity) + " inputs");
    std::vector<size_t> in;
    for (const auto& label : t[0]) in.push_back(space->index_of(label.get<std::string>()));
    size_t out = space->index_of(t[1].get<std::string>());
    Form c = t[2].is_string() ? parse_form(t[2].get<std::string>()) : Form(scalar_of(t[2], where));
    m.add(in, out, c);
  }
  return m;
}

ojson terms_json(const MultiMap& m) {
  ojson terms = ojson::array();
  const auto& V = *m.src();
  const auto& W = *m.dst();
  for (size_t t = 0; t < m.tuple_count(); ++t)
    for (size_t z = 0; z < W.dim(); ++z) {
      const Form& c = m.at(t, z);
      if (c.is_zero()) continue;
      ojson in = ojson::array();
      for (size_t i : m.decode(t)) in.push_back(V.label(i));
      ojson coeff;
      if (c.is_constant() && c.constant().get_den() == 1 && c.constant().get_num().fits_slong_p())
        coeff = c.constant().get_num().get_si();
      else
        coeff = c.str();
      terms.push_back(ojson::array({in, W.label(z), coeff}));
    }
  return terms;
}

ojson map_json(const MultiMap& m, int default_shift) {
  if (m.shift() == default_shift) return terms_json(m);
  ojson o;
  o["shift"] = m.shift();
  o["terms"] = terms_json(m);
  return o;
}

// Arity keys of a "maps" object, restricted to lo..cap (keys above the cap are dropped when truncating).
std::vector<std::pair<int, const json*>> arity_entries(const json& maps, int lo, int cap, int declared_cap,
                                                       const std::string& where) {
  std::vector<std::pair<int, const json*>> out;
  if (!maps.is_object()) throw ParseError(where + ": maps must be an object keyed by arity");
  for (auto it = maps.begin(); it != maps.end(); ++it) {
    int n;
    try {
      size_t pos = 0;
      n = std::stoi(it.key(), &pos);
      if (pos != it.key().size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw ParseError(where + ": arity key '" + it.key() + "' is not an integer");
    }
    if (n < lo || n > declared_cap) throw ParseError(where + ": arity " + it.key() + " outside " + std::to_string(lo) +
                                                      ".." + std::to_string(declared_cap));
    if (n <= cap) out.emplace_back(n, &it.value());
  }
  return out;
}

int effective_cap(int declared, const LoadOptions& opt) {
  if (declared < 1) throw InvariantError("arity-cap", "arity cap must be at least 1");
  if (!opt.arity_cap) return declared;
  if (*opt.arity_cap < 1) throw DomainError("--arity-cap must be at least 1");
  return std::min(declared, *opt.arity_cap);
}

// Largest arity key accepted for maps whose cap comes from a (possibly truncated) algebra.
int key_limit(int cap, const LoadOptions& opt) { return opt.arity_cap ? std::numeric_limits<int>::max() : cap; }

// ---------- matrices ----------

Matrix matrix_of(const json& j, size_t dim, const std::string& where) {
  if (!j.is_array() || j.size() != dim) throw ParseError(where + ": expected " + std::to_string(dim) + " rows");
  Matrix m(dim, dim);
  for (size_t r = 0; r < dim; ++r) {
    if (!j[r].is_array() || j[r].size() != dim)
      throw ParseError(where + ": expected " + std::to_string(dim) + " entries per row");
    for (size_t c = 0; c < dim; ++c) m(r, c) = scalar_of(j[r][c], where);
  }
  return m;
}

ojson scalar_json(const Scalar& x) {
  if (x.get_den() == 1 && x.get_num().fits_slong_p()) return x.get_num().get_si();
  return to_string(x);
}

ojson matrix_json(const Matrix& m) {
  ojson rows = ojson::array();
  for (size_t r = 0; r < m.rows(); ++r) {
    ojson row = ojson::array();
    for (size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

// ---------- fields ----------

Field field_of(const json& j, const SpacePtr& space, int degree, const std::string& name, const LoadOptions& opt) {
  std::vector<Axis> axes;
  for (const auto& a : j.value("base", json::array())) {
    Axis axis{var_of(a.at("var").get<std::string>()), {}};
    for (const auto& b : a.at("breaks")) axis.breaks.push_back(scalar_of(b, "field '" + name + "' breaks"));
    axes.push_back(axis);
  }
  Grid grid(axes);
  if (j.value("fiber_forms", false)) grid = grid.with_fiber_forms();
  const int declared = j.at("cap").get<int>();
  const int cap = effective_cap(declared, opt);
  if (j.contains("degree") && j.at("degree").get<int>() != degree)
    throw InvariantError("field-degree", "field '" + name + "' must have degree " + std::to_string(degree));
  Field f = Field::zero(grid, space, cap, degree);
  const json& cells = j.at("cells");
  if (!cells.is_array() || cells.size() != grid.cell_count())
    throw ParseError("field '" + name + "': expected " + std::to_string(grid.cell_count()) + " cells");
  for (size_t c = 0; c < cells.size(); ++c)
    for (const auto& [n, m] : arity_entries(cells[c], 0, cap, declared, "field '" + name + "'"))
      f.at(c, n) = map_of(*m, space, n, degree + 1 - n, where_of("field", name, n));
  return f;
}

ojson field_json(const Field& f) {
  ojson o;
  ojson base = ojson::array();
  for (const auto& a : f.grid.axes()) {
    ojson axis;
    axis["var"] = var_label(a.var);
    ojson breaks = ojson::array();
    for (const auto& b : a.breaks) breaks.push_back(scalar_json(b));
    axis["breaks"] = breaks;
    base.push_back(axis);
  }
  o["base"] = base;
  if (f.grid.fiber_forms()) o["fiber_forms"] = true;
  o["cap"] = f.cap;
  ojson cells = ojson::array();
  for (size_t c = 0; c < f.cells.size(); ++c) {
    ojson cell = ojson::object();
    for (int n = 0; n <= f.cap; ++n)
      if (!f.at(c, n).is_zero() || f.at(c, n).shift() != f.degree + 1 - n)
        cell[std::to_string(n)] = map_json(f.at(c, n), f.degree + 1 - n);
    cells.push_back(cell);
  }
  o["cells"] = cells;
  return o;
}

// ---------- document sections ----------

SpacePtr space_of(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("space must be a nonempty array of [label, degree]");
  std::vector<std::pair<std::string, int>> basis;
  for (const auto& b : j) {
    if (!b.is_array() || b.size() != 2) throw ParseError("space entries are [label, degree]");
    basis.emplace_back(b[0].get<std::string>(), b[1].get<int>());
  }
  return make_space(basis);
}

template <class T>
const T& lookup(const std::map<std::string, T>& table, const std::string& name, const std::string& kind) {
  auto it = table.find(name);
  if (it == table.end()) throw InvariantError("reference", "unknown " + kind + " '" + name + "'");
  return it->second;
}

bool same_algebra(const AInfAlgebra& a, const AInfAlgebra& b) {
  if (a.cap != b.cap || a.internal_d != b.internal_d || !same_space(a.space, b.space)) return false;
  for (int n = 0; n <= a.cap; ++n)
    if (a.m(n) != b.m(n)) return false;
  return true;
}

void parse_groups(const json& j, Document& doc) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::vector<std::string> labels = it.value().at("labels").get<std::vector<std::string>>();
    std::map<std::string, int> index;
    for (size_t i = 0; i < labels.size(); ++i)
      if (!index.emplace(labels[i], static_cast<int>(i)).second)
        throw ParseError("group '" + it.key() + "' repeats the label " + labels[i]);
    std::vector<std::vector<int>> table;
    for (const auto& row : it.value().at("table")) {
      std::vector<int> r;
      for (const auto& x : row) {
        auto f = index.find(x.get<std::string>());
        if (f == index.end()) throw ParseError("group '" + it.key() + "': unknown element " + x.dump());
        r.push_back(f->second);
      }
      table.push_back(r);
    }
    doc.groups.emplace(it.key(), FiniteGroup::from_table(it.key(), labels, table));
  }
}

void parse_actions(const json& j, Document& doc) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string where = "action '" + it.key() + "'";
    const json& a = it.value();
    ModuleAction act;
    act.group = a.at("group").get<std::string>();
    act.on_space = !a.contains("dim");
    act.dim = act.on_space ? doc.space->dim() : a.at("dim").get<size_t>();
    if (act.dim == 0) throw InvariantError("action-shape", where + " acts on a zero module");
    std::vector<std::pair<std::string, int>> basis;
    for (size_t i = 0; i < act.dim; ++i) basis.emplace_back("m" + std::to_string(i + 1), 0);
    SpacePtr module = act.on_space ? doc.space : make_space(basis);
    if (act.free()) {
      for (const auto& m : a.at("generators")) {
        Matrix g = matrix_of(m, act.dim, where);
        if (!inverse(g)) throw InvariantError("action-invertible", where + " has a singular generator");
        act.matrices.push_back(g);
      }
      if (act.matrices.empty()) throw InvariantError("action-shape", where + " has no generators");
    } else {
      const FiniteGroup& G = lookup(doc.groups, act.group, "group");
      if (a.contains("elements")) {
        LinearAction la{G, module, std::vector<Matrix>(G.order())};
        std::vector<bool> seen(G.order(), false);
        for (auto e = a.at("elements").begin(); e != a.at("elements").end(); ++e) {
          int g = G.index_of(e.key());
          la.rho[g] = matrix_of(e.value(), act.dim, where);
          seen[g] = true;
        }
        for (int g = 0; g < G.order(); ++g)
          if (!seen[g]) throw ParseError(where + ": missing element " + G.labels[g]);
        la.validate();
        act.matrices = la.rho;
      } else {
        std::vector<std::pair<int, Matrix>> gens;
        for (auto e = a.at("generators").begin(); e != a.at("generators").end(); ++e)
          gens.emplace_back(G.index_of(e.key()), matrix_of(e.value(), act.dim, where));
        act.matrices = LinearAction::from_generators(G, module, gens).rho;
      }
    }
    doc.actions.emplace(it.key(), act);
  }
}

void parse_scenarios(const json& j, Document& doc) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const json& s = it.value();
    const std::string kind = s.at("kind").get<std::string>();
    ScenarioSpec spec;
    if (kind == "free-group") {
      FreeGroupSpec f;
      f.vertex = s.at("vertex").get<std::string>();
      lookup(doc.algebras, f.vertex, "algebra");
      f.edges = s.at("edges").get<std::vector<std::string>>();
      for (const auto& e : f.edges) lookup(doc.families, e, "family");
      for (const auto& m : s.at("monodromy"))
        f.monodromy.push_back(matrix_of(m, doc.space->dim(), "scenario '" + it.key() + "'"));
      if (f.edges.empty() || f.edges.size() != f.monodromy.size())
        throw InvariantError("model-shape", "scenario '" + it.key() + "' needs one monodromy per edge");
      spec.free_group = f;
    } else if (kind == "finite-group") {
      FiniteGroupSpec f{s.at("action").get<std::string>(), s.at("a0").get<std::string>(),
                        s.at("a1").get<std::string>(), s.at("gamma").get<std::string>()};
      if (lookup(doc.actions, f.action, "action").free())
        throw InvariantError("scenario-group", "scenario '" + it.key() + "' needs a finite group");
      lookup(doc.algebras, f.a0, "algebra");
      lookup(doc.algebras, f.a1, "algebra");
      lookup(doc.gauges, f.gamma, "gauge");
      spec.finite_group = f;
    } else {
      throw ParseError("scenario '" + it.key() + "': unknown kind '" + kind + "'");
    }
    doc.scenarios.emplace(it.key(), spec);
  }
}

const json& section(const json& root, const char* key) {
  static const json empty = json::object();
  if (!root.contains(key)) return empty;
  const json& s = root.at(key);
  if (!s.is_object()) throw ParseError(std::string("section '") + key + "' must be an object");
  return s;
}

Document parse_json(const json& root, const LoadOptions& opt) {
  static const std::vector<std::string> known{"space",    "algebras", "morphisms", "homotopies", "families",
                                              "gauges",   "groups",   "actions",   "scenarios"};
  if (!root.is_object()) throw ParseError("document must be an object");
  for (auto it = root.begin(); it != root.end(); ++it)
    if (std::find(known.begin(), known.end(), it.key()) == known.end())
      throw ParseError("unknown section '" + it.key() + "'");
  Document doc;
  doc.space = space_of(root.at("space"));

  for (const auto& [name, a] : section(root, "algebras").items()) {
    const int declared = a.at("cap").get<int>();
    const int cap = effective_cap(declared, opt);
    auto A = std::make_shared<AInfAlgebra>(AInfAlgebra::zero(doc.space, cap, name));
    A->flat = a.value("flat", true);
    for (const auto& [n, m] : arity_entries(a.at("maps"), 0, cap, declared, "algebra '" + name + "'"))
      A->m(n) = map_of(*m, doc.space, n, 2 - n, where_of("algebra", name, n));
    doc.algebras.emplace(name, A);
  }
  for (const auto& [name, m] : section(root, "morphisms").items()) {
    auto src = lookup(doc.algebras, m.at("src").get<std::string>(), "algebra");
    auto dst = lookup(doc.algebras, m.at("dst").get<std::string>(), "algebra");
    if (src->cap != dst->cap) throw InvariantError("morphism-cap", "morphism '" + name + "' joins different caps");
    auto F = std::make_shared<AInfMorphism>(AInfMorphism::zero(src, dst, name));
    for (const auto& [n, f] : arity_entries(m.at("maps"), 1, F->cap, key_limit(F->cap, opt), "morphism '" + name + "'"))
      F->F(n) = map_of(*f, doc.space, n, 1 - n, where_of("morphism", name, n));
    doc.morphisms.emplace(name, F);
  }
  for (const auto& [name, h] : section(root, "homotopies").items()) {
    auto F = lookup(doc.morphisms, h.at("F").get<std::string>(), "morphism");
    auto G = lookup(doc.morphisms, h.at("G").get<std::string>(), "morphism");
    AInfHomotopy H = AInfHomotopy::zero(F, G, name);
    for (const auto& [n, t] : arity_entries(h.at("maps"), 1, H.cap, key_limit(H.cap, opt), "homotopy '" + name + "'"))
      H.T(n) = map_of(*t, doc.space, n, -n, where_of("homotopy", name, n));
    doc.homotopies.emplace(name, H);
  }
  for (const auto& [name, f] : section(root, "families").items())
    doc.families.emplace(name, field_of(f, doc.space, 1, name, opt));
  for (const auto& [name, f] : section(root, "gauges").items())
    doc.gauges.emplace(name, field_of(f, doc.space, 0, name, opt));
  parse_groups(section(root, "groups"), doc);
  parse_actions(section(root, "actions"), doc);
  parse_scenarios(section(root, "scenarios"), doc);
  validate_document(doc);
  return doc;
}

std::string algebra_name(const Document& doc, const AlgebraPtr& A) {
  for (const auto& [name, B] : doc.algebras)
    if (B == A) return name;
  if (auto n = doc.find_algebra(*A)) return *n;
  throw InvariantError("reference", "morphism refers to an algebra missing from the document");
}

std::string morphism_name(const Document& doc, const std::shared_ptr<const AInfMorphism>& F) {
  for (const auto& [name, G] : doc.morphisms)
    if (G == F) return name;
  for (const auto& [name, G] : doc.morphisms)
    if (G->same_maps(*F)) return name;
  throw InvariantError("reference", "homotopy refers to a morphism missing from the document");
}

ojson document_json(const Document& doc) {
  ojson o;
  ojson space = ojson::array();
  for (size_t i = 0; i < doc.space->dim(); ++i) space.push_back(ojson::array({doc.space->label(i), doc.space->degree(i)}));
  o["space"] = space;
  if (!doc.algebras.empty()) {
    ojson s;
    for (const auto& [name, A] : doc.algebras) {
      ojson a;
      a["cap"] = A->cap;
      if (!A->flat) a["flat"] = false;
      ojson maps = ojson::object();
      for (int n = 0; n <= A->cap; ++n)
        if (!A->m(n).is_zero() || A->m(n).shift() != 2 - n) maps[std::to_string(n)] = map_json(A->m(n), 2 - n);
      a["maps"] = maps;
      s[name] = a;
    }
    o["algebras"] = s;
  }
  if (!doc.morphisms.empty()) {
    ojson s;
    for (const auto& [name, F] : doc.morphisms) {
      ojson m;
      m["src"] = algebra_name(doc, F->src);
      m["dst"] = algebra_name(doc, F->dst);
      ojson maps = ojson::object();
      for (int n = 1; n <= F->cap; ++n)
        if (!F->F(n).is_zero() || F->F(n).shift() != 1 - n) maps[std::to_string(n)] = map_json(F->F(n), 1 - n);
      m["maps"] = maps;
      s[name] = m;
    }
    o["morphisms"] = s;
  }
  if (!doc.homotopies.empty()) {
    ojson s;
    for (const auto& [name, H] : doc.homotopies) {
      ojson h;
      h["F"] = morphism_name(doc, H.F);
      h["G"] = morphism_name(doc, H.G);
      ojson maps = ojson::object();
      for (int n = 1; n <= H.cap; ++n)
        if (!H.T(n).is_zero() || H.T(n).shift() != -n) maps[std::to_string(n)] = map_json(H.T(n), -n);
      h["maps"] = maps;
      s[name] = h;
    }
    o["homotopies"] = s;
  }
  auto fields = [&](const char* key, const std::map<std::string, Field>& table) {
    if (table.empty()) return;
    ojson s;
    for (const auto& [name, f] : table) s[name] = field_json(f);
    o[key] = s;
  };
  fields("families", doc.families);
  fields("gauges", doc.gauges);
  if (!doc.groups.empty()) {
    ojson s;
    for (const auto& [name, G] : doc.groups) {
      ojson g;
      g["labels"] = G.labels;
      ojson table = ojson::array();
      for (int a = 0; a < G.order(); ++a) {
        ojson row = ojson::array();
        for (int b = 0; b < G.order(); ++b) row.push_back(G.labels[G.mul(a, b)]);
        table.push_back(row);
      }
      g["table"] = table;
      s[name] = g;
    }
    o["groups"] = s;
  }
  if (!doc.actions.empty()) {
    ojson s;
    for (const auto& [name, act] : doc.actions) {
      ojson a;
      a["group"] = act.group;
      if (!act.on_space) a["dim"] = act.dim;
      if (act.free()) {
        ojson gens = ojson::array();
        for (const auto& m : act.matrices) gens.push_back(matrix_json(m));
        a["generators"] = gens;
      } else {
        const FiniteGroup& G = doc.groups.at(act.group);
        ojson elems;
        for (int g = 0; g < G.order(); ++g) elems[G.labels[g]] = matrix_json(act.matrices[g]);
        a["elements"] = elems;
      }
      s[name] = a;
    }
    o["actions"] = s;
  }
  if (!doc.scenarios.empty()) {
    ojson s;
    for (const auto& [name, sc] : doc.scenarios) {
      ojson x;
      if (sc.free_group) {
        x["kind"] = "free-group";
        x["vertex"] = sc.free_group->vertex;
        x["edges"] = sc.free_group->edges;
        ojson mono = ojson::array();
        for (const auto& m : sc.free_group->monodromy) mono.push_back(matrix_json(m));
        x["monodromy"] = mono;
      } else {
        x["kind"] = "finite-group";
        x["action"] = sc.finite_group->action;
        x["a0"] = sc.finite_group->a0;
        x["a1"] = sc.finite_group->a1;
        x["gamma"] = sc.finite_group->gamma;
      }
      s[name] = x;
    }
    o["scenarios"] = s;
  }
  return o;
}

bool contains_object(const ojson& j) {
  if (j.is_object()) return true;
  if (j.is_array())
    for (const auto& x : j)
      if (contains_object(x)) return true;
  return false;
}

// Objects are expanded one key per line; arrays without objects (terms, matrix rows, breakpoints)
// stay on one line when short.
void pretty(std::ostream& os, const ojson& j, int indent) {
  const std::string pad(indent, ' '), inner(indent + 2, ' ');
  if (j.is_object()) {
    if (j.empty()) {
      os << "{}";
      return;
    }
    os << "{\n";
    size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
      os << inner << ojson(it.key()).dump() << ": ";
      pretty(os, it.value(), indent + 2);
      os << (i + 1 < j.size() ? ",\n" : "\n");
    }
    os << pad << "}";
  } else if (j.is_array() && !j.empty() && (contains_object(j) || j.dump().size() > 100)) {
    os << "[\n";
    for (size_t i = 0; i < j.size(); ++i) {
      os << inner;
      pretty(os, j[i], indent + 2);
      os << (i + 1 < j.size() ? ",\n" : "\n");
    }
    os << pad << "]";
  } else {
    os << j.dump();
  }
}

}  // namespace

Form parse_form(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw ParseError("empty form");
  Form f;
  size_t start = 0;
  for (size_t i = 1; i <= s.size(); ++i) {
    bool boundary = i == s.size();
    if (!boundary && (s[i] == '+' || s[i] == '-')) {
      char prev = s[i - 1];
      boundary = prev != '*' && prev != '^' && prev != '/' && prev != '+' && prev != '-';
    }
    if (boundary) {
      f += term_of(s.substr(start, i - start));
      start = i;
    }
  }
  return f;
}

std::optional<std::string> Document::find_algebra(const AInfAlgebra& A) const {
  for (const auto& [name, B] : algebras)
    if (same_algebra(*B, A)) return name;
  return std::nullopt;
}

LinearAction Document::linear_action(const std::string& name) const {
  const ModuleAction& act = lookup(actions, name, "action");
  if (act.free() || !act.on_space) throw DomainError("action '" + name + "' does not act on the document space");
  LinearAction la{groups.at(act.group), space, act.matrices};
  la.validate();
  return la;
}

FreeGroupModel Document::free_group_model(const std::string& name) const {
  const ScenarioSpec& sc = lookup(scenarios, name, "scenario");
  if (!sc.free_group) throw DomainError("scenario '" + name + "' is not a free-group model");
  FreeGroupModel model{lookup(algebras, sc.free_group->vertex, "algebra"), {}, sc.free_group->monodromy};
  for (const auto& e : sc.free_group->edges) model.edges.push_back(lookup(families, e, "family"));
  return model;
}

FiniteGroupScenario Document::finite_group_scenario(const std::string& name) const {
  const ScenarioSpec& sc = lookup(scenarios, name, "scenario");
  if (!sc.finite_group) throw DomainError("scenario '" + name + "' is not a finite-group scenario");
  const auto& f = *sc.finite_group;
  return FiniteGroupScenario{linear_action(f.action), lookup(algebras, f.a0, "algebra"),
                             lookup(algebras, f.a1, "algebra"), lookup(gauges, f.gamma, "gauge")};
}

Document parse_document(const std::string& text, const LoadOptions& options) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed document: ") + e.what());
  }
  try {
    return parse_json(root, options);
  } catch (const json::exception& e) {
    throw ParseError(std::string("unexpected document shape: ") + e.what());
  }
}

Document load_document(const std::string& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str(), options);
}

Document merge_documents(const std::vector<Document>& docs) {
  if (docs.empty()) throw DomainError("nothing to merge");
  ojson merged = document_json(docs[0]);
  for (size_t i = 1; i < docs.size(); ++i) {
    ojson next = document_json(docs[i]);
    if (next["space"] != merged["space"]) throw InvariantError("merge-space", "documents live on different spaces");
    for (auto it = next.begin(); it != next.end(); ++it) {
      if (it.key() == "space") continue;
      ojson& target = merged[it.key()];
      for (auto e = it.value().begin(); e != it.value().end(); ++e) {
        if (target.contains(e.key()) && target[e.key()] != e.value())
          throw InvariantError("merge-conflict", "two different definitions of '" + e.key() + "'");
        target[e.key()] = e.value();
      }
    }
  }
  return parse_document(merged.dump());
}

std::string serialize(const Document& doc) {
  std::ostringstream os;
  pretty(os, document_json(doc), 0);
  os << "\n";
  return os.str();
}

void save_document(const Document& doc, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << serialize(doc);
  if (!out) throw IoError("failed writing " + path);
}

void validate_document(const Document& doc) {
  for (const auto& [name, A] : doc.algebras) A->validate();
  for (const auto& [name, F] : doc.morphisms) F->validate();
  for (const auto& [name, H] : doc.homotopies) H.validate();
  auto check_field = [](const std::string& name, const Field& f, bool family) {
    f.validate(name);
    if (auto w = f.continuity_violation()) throw InvariantError("continuity", name + ": " + *w);
    if (family)
      if (auto w = assumption_violation(f, false)) throw InvariantError("curvature-assumption", name + ": " + *w);
  };
  for (const auto& [name, f] : doc.families) check_field(name, f, true);
  for (const auto& [name, f] : doc.gauges) check_field(name, f, false);
  for (const auto& [name, act] : doc.actions)
    if (!act.free()) lookup(doc.groups, act.group, "group");
}

}  // namespace ainf

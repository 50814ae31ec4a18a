#include <cmath>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ainf/gauge.hpp"
#include "ainf/hochschild.hpp"
#include "ainf/io.hpp"
#include "ainf/quiver.hpp"
#include "ainf/square.hpp"
#include "ainf/transport.hpp"

using namespace ainf;

namespace {

constexpr int kExitOk = 0, kExitFail = 1, kExitParse = 2, kExitIo = 3, kExitUsage = 64;

const std::vector<std::string> kCommands{"validate",       "check-ainf", "check-morphism",  "check-homotopy", "mc-check",
                                         "transport",      "compose",    "invert",          "collapse",
                                         "square-homotopy", "phi-check", "hochschild",      "group-cohomology",
                                         "gauge",          "strictify"};

struct Options {
  std::vector<std::string> files;
  std::optional<int> arity_cap;
  int unary_depth = 0;
  std::string from = "0", to = "1";
  std::optional<int> level;
  bool oracle = false;
  std::string out;
  std::string name, with;
};

std::string usage() {
  std::string s = "usage: ainfc <command> [files...] [flags]\ncommands:";
  for (const auto& c : kCommands) s += " " + c;
  return s + "\n";
}

// ---------- loading and selection ----------

Document load_all(const Options& o, bool required = true) {
  if (o.files.empty()) {
    if (required) throw DomainError("no input file given");
    return Document{};
  }
  LoadOptions lo{o.arity_cap};
  std::vector<Document> docs;
  for (const auto& f : o.files) docs.push_back(load_document(f, lo));
  return docs.size() == 1 ? docs[0] : merge_documents(docs);
}

template <class T>
std::vector<std::pair<std::string, T>> select_all(const std::map<std::string, T>& table, const std::string& name,
                                                  const std::string& kind) {
  if (name.empty()) return {table.begin(), table.end()};
  auto it = table.find(name);
  if (it == table.end()) throw DomainError("no " + kind + " named '" + name + "'");
  return {*it};
}

template <class T>
std::pair<std::string, T> select_one(const std::map<std::string, T>& table, const std::string& name,
                                     const std::string& kind) {
  auto all = select_all(table, name, kind);
  if (all.size() != 1)
    throw DomainError(all.empty() ? "document has no " + kind : "several " + kind + "s; choose one with --name");
  return all[0];
}

// ---------- report helpers ----------

struct Report {
  std::ostringstream os;
  bool ok = true;

  void level(const std::string& indent, int n, const MultiMap& defect) {
    LevelStatus s = level_status(n, defect);
    os << indent << "level " << n << ": " << (s.zero ? "ZERO" : "NONZERO " + s.witness) << "\n";
    ok = ok && s.zero;
  }
  void check(const std::string& what, bool passed, const std::string& witness = "") {
    os << "  " << what << ": " << (passed ? "PASS" : "FAIL") << (passed || witness.empty() ? "" : " " + witness)
       << "\n";
    ok = ok && passed;
  }
  int finish() {
    os << "result: " << (ok ? "PASS" : "FAIL") << "\n";
    std::cout << os.str();
    return ok ? kExitOk : kExitFail;
  }
};

void print_map(std::ostream& os, const std::string& label, const MultiMap& m) {
  for (size_t t = 0; t < m.tuple_count(); ++t)
    for (size_t z = 0; z < m.dst()->dim(); ++z)
      if (!m.at(t, z).is_zero()) os << "  " << label << " " << m.witness_string(t, z) << " = " << m.at(t, z).str() << "\n";
}

void print_morphism(std::ostream& os, const AInfMorphism& F) {
  for (int n = 1; n <= F.cap; ++n) print_map(os, "F^" + std::to_string(n), F.F(n));
}

bool is_identity(const AInfMorphism& F) {
  return same_space(F.src->space, F.dst->space) && F.same_maps(identity_morphism(F.src));
}

std::string label_of(const Scalar& x) { return to_string(x); }

// Adds a morphism to an output document, naming its algebras.
void add_morphism(Document& out, const std::string& name, const AInfMorphism& F, const std::string& src_name,
                  const std::string& dst_name) {
  auto M = std::make_shared<AInfMorphism>(F);
  M->name = name;
  if (!out.algebras.count(src_name)) out.algebras[src_name] = M->src;
  if (!out.algebras.count(dst_name)) out.algebras[dst_name] = M->dst;
  M->src = out.algebras[src_name];
  M->dst = out.algebras[dst_name];
  out.morphisms[name] = M;
}

void write_out(const Options& o, const Document& doc, std::ostream& os) {
  if (o.out.empty()) return;
  save_document(doc, o.out);
  os << "wrote " << o.out << "\n";
}

std::string algebra_label(const Document& doc, const AlgebraPtr& A, const std::string& fallback) {
  for (const auto& [name, B] : doc.algebras)
    if (B == A) return name;
  if (auto n = doc.find_algebra(*A)) return *n;
  return fallback;
}

// ---------- commands ----------

int cmd_validate(const Options& o) {
  Document doc = load_all(o);
  std::cout << "space: dimension " << doc.space->dim() << "\n"
            << "algebras: " << doc.algebras.size() << "\n"
            << "morphisms: " << doc.morphisms.size() << "\n"
            << "homotopies: " << doc.homotopies.size() << "\n"
            << "families: " << doc.families.size() << "\n"
            << "gauges: " << doc.gauges.size() << "\n"
            << "groups: " << doc.groups.size() << "\n"
            << "actions: " << doc.actions.size() << "\n"
            << "scenarios: " << doc.scenarios.size() << "\n"
            << "result: VALID\n";
  return kExitOk;
}

int cmd_check_ainf(const Options& o) {
  Document doc = load_all(o);
  Report r;
  for (const auto& [name, A] : select_all(doc.algebras, o.name, "algebra")) {
    const int top = std::min(A->cap, o.level.value_or(A->cap));
    r.os << "algebra " << name << " (cap " << A->cap << ")\n";
    for (int n = 0; n <= top; ++n) r.level("  ", n, stasheff_defect(*A, n));
  }
  return r.finish();
}

int cmd_check_morphism(const Options& o) {
  Document doc = load_all(o);
  Report r;
  for (const auto& [name, F] : select_all(doc.morphisms, o.name, "morphism")) {
    const int top = std::min(F->cap, o.level.value_or(F->cap));
    r.os << "morphism " << name << ": " << algebra_label(doc, F->src, "?") << " -> "
         << algebra_label(doc, F->dst, "?") << "\n";
    for (int n = 1; n <= top; ++n) r.level("  ", n, morphism_defect(*F, n));
  }
  return r.finish();
}

int cmd_check_homotopy(const Options& o) {
  Document doc = load_all(o);
  Report r;
  for (const auto& [name, H] : select_all(doc.homotopies, o.name, "homotopy")) {
    const int top = std::min(H.cap, o.level.value_or(H.cap));
    r.os << "homotopy " << name << "\n";
    for (int n = 1; n <= top; ++n) r.level("  ", n, homotopy_defect(H, n));
  }
  return r.finish();
}

int cmd_mc_check(const Options& o) {
  Document doc = load_all(o);
  Report r;
  for (const auto& [name, alpha] : select_all(doc.families, o.name, "family")) {
    r.os << "family " << name << " (" << alpha.grid.cell_count() << " cells, cap " << alpha.cap << ")\n";
    Field defect = mc_defect(alpha);
    bool zero = true;
    for (size_t c = 0; c < defect.cells.size(); ++c)
      for (int n = 0; n <= defect.cap; ++n) {
        LevelStatus s = level_status(n, defect.at(c, n));
        if (!s.zero) r.os << "  cell " << c << " arity " << n << ": NONZERO " << s.witness << "\n";
        zero = zero && s.zero;
      }
    r.os << "  maurer-cartan: " << (zero ? "ZERO" : "NONZERO") << "\n";
    r.ok = r.ok && zero;
    r.os << "  unary one-form part: " << (assumption_violation(alpha, true) ? "present" : "absent") << "\n";
  }
  return r.finish();
}

int cmd_transport(const Options& o) {
  Document doc = load_all(o);
  auto [name, alpha] = select_one(doc.families, o.name, "family");
  TransportRequest req{alpha, parse_scalar(o.from), parse_scalar(o.to), o.unary_depth};
  AInfMorphism F = transport(req);
  Report r;
  r.os << "transport " << name << " from " << label_of(req.from) << " to " << label_of(req.to) << "\n";
  for (int n = 1; n <= F.cap; ++n) r.level("  ", n, morphism_defect(F, n));
  print_morphism(r.os, F);
  if (o.oracle) {
    const double tol = 1e-8;
    auto approx = transport_oracle(req, 1e-3);
    double err = 0;
    for (int n = 1; n <= F.cap; ++n)
      for (size_t t = 0; t < F.F(n).tuple_count(); ++t)
        for (size_t z = 0; z < F.dst->space->dim(); ++z) {
          double exact = F.F(n).at(t, z).constant().get_d();
          err = std::max(err, std::abs(exact - approx[n][t * F.dst->space->dim() + z]));
        }
    std::ostringstream e;
    e << std::scientific << std::setprecision(2) << err;
    r.check("oracle agreement within 1e-8 (max error " + e.str() + ")", err < tol);
  }
  Document out{doc.space};
  add_morphism(out, name + ":" + label_of(req.from) + "->" + label_of(req.to), F, name + "@" + label_of(req.from),
               name + "@" + label_of(req.to));
  write_out(o, out, r.os);
  return r.finish();
}

int cmd_compose(const Options& o) {
  std::shared_ptr<const AInfMorphism> F, G;
  Document doc;
  if (o.name.empty() && o.with.empty() && o.files.size() == 2) {
    LoadOptions lo{o.arity_cap};
    Document a = load_document(o.files[0], lo), b = load_document(o.files[1], lo);
    doc = merge_documents({a, b});
    F = doc.morphisms.at(select_one(a.morphisms, "", "morphism").first);
    G = doc.morphisms.at(select_one(b.morphisms, "", "morphism").first);
  } else {
    doc = load_all(o);
    if (o.name.empty() || o.with.empty()) throw DomainError("compose needs --name F --with G (F after G)");
    F = select_one(doc.morphisms, o.name, "morphism").second;
    G = select_one(doc.morphisms, o.with, "morphism").second;
  }
  if (!(F->src == G->dst || (F->src->cap == G->dst->cap && F->src->mu == G->dst->mu)))
    throw DomainError("the source of " + F->name + " is not the target of " + G->name);
  AInfMorphism C = compose(*F, *G);
  C.src = G->src;
  C.dst = F->dst;
  Report r;
  r.os << "compose " << F->name << " o " << G->name << "\n";
  for (int n = 1; n <= C.cap; ++n) r.level("  ", n, morphism_defect(C, n));
  print_morphism(r.os, C);
  r.os << "  identity: " << (is_identity(C) ? "YES" : "NO") << "\n";
  Document out{doc.space};
  add_morphism(out, F->name + "*" + G->name, C, algebra_label(doc, C.src, "src"), algebra_label(doc, C.dst, "dst"));
  write_out(o, out, r.os);
  return r.finish();
}

int cmd_invert(const Options& o) {
  Document doc = load_all(o);
  auto [name, F] = select_one(doc.morphisms, o.name, "morphism");
  AInfMorphism G = invert(*F);
  Report r;
  r.os << "invert " << name << "\n";
  for (int n = 1; n <= G.cap; ++n) r.level("  ", n, morphism_defect(G, n));
  print_morphism(r.os, G);
  r.check("F o inverse = id", is_identity(compose(*F, G)));
  r.check("inverse o F = id", is_identity(compose(G, *F)));
  Document out{doc.space};
  add_morphism(out, name + "^-1", G, algebra_label(doc, G.src, "src"), algebra_label(doc, G.dst, "dst"));
  write_out(o, out, r.os);
  return r.finish();
}

int cmd_collapse(const Options& o) {
  Document doc = load_all(o);
  auto [name, sq] = select_one(doc.families, o.name, "family");
  check_square(sq);
  Field hat = collapse(sq);
  Report r;
  r.os << "collapse " << name << "\n";
  r.check("maurer-cartan", mc_defect(hat).is_zero());
  bool low = true;
  for (size_t c = 0; c < hat.cells.size(); ++c)
    for (int n = 0; n <= hat.cap; ++n) {
      const MultiMap& m = hat.at(c, n);
      for (size_t t = 0; t < m.tuple_count(); ++t)
        for (size_t z = 0; z < m.dst()->dim(); ++z) low = low && m.at(t, z).contract(Var::S).contract(Var::S).is_zero();
    }
  r.check("no components of base form degree 2 or more", low);
  Document out{doc.space};
  out.families[name + "-hat"] = hat;
  write_out(o, out, r.os);
  return r.finish();
}

int cmd_square_homotopy(const Options& o) {
  Document doc = load_all(o);
  auto [name, sq] = select_one(doc.families, o.name, "family");
  check_square(sq);
  AInfMorphism G = hat_transport(collapse(sq));
  Report r;
  r.os << "square " << name << ": transport of the collapsed family\n";
  for (int n = 1; n <= G.cap; ++n) r.level("  ", n, morphism_defect(G, n));
  DiffHomotopy D = split_differential_homotopy(G);
  const std::vector<Scalar> samples{Scalar(0), Scalar(1, 4), Scalar(1, 3), Scalar(1, 2), Scalar(3, 4), Scalar(1)};
  r.os << "differential homotopy defect\n";
  for (const auto& t : samples) {
    bool zero = true;
    for (int n = 1; n <= D.cap(); ++n) zero = zero && diff_homotopy_defect(D, t, n).is_zero();
    r.os << "  t = " << to_string(t) << ": " << (zero ? "ZERO" : "NONZERO") << "\n";
    r.ok = r.ok && zero;
  }
  CandidateReport cand = classical_candidate(D);
  r.os << "classical homotopy candidate (F_1 to F_0)\n";
  for (const auto& s : cand.levels) {
    r.os << "  level " << s.level << ": " << (s.zero ? "ZERO" : "NONZERO " + s.witness) << "\n";
    if (s.level == 1) r.ok = r.ok && s.zero;
  }
  Document out{doc.space};
  add_morphism(out, "F_0", D.family_at(0), name + "@s0", name + "@s1");
  add_morphism(out, "F_1", D.family_at(1), name + "@s0", name + "@s1");
  AInfHomotopy H = cand.homotopy;
  H.name = "T";
  H.F = out.morphisms["F_1"];
  H.G = out.morphisms["F_0"];
  out.homotopies["T"] = H;
  write_out(o, out, r.os);
  return r.finish();
}

// Every list of k monomials t^a or t^a dt with a <= poly, for k <= max_k.
int cmd_phi_check(const Options& o) {
  const int max_k = o.arity_cap.value_or(4), poly = o.level.value_or(3);
  if (max_k < 1 || poly < 0) throw DomainError("phi-check needs --arity-cap >= 1 and --level >= 0");
  std::vector<Form> monomials;
  for (int a = 0; a <= poly; ++a) {
    monomials.push_back(Form::monomial(1, 0, a, 0));
    monomials.push_back(Form::monomial(1, 0, a, kDt));
  }
  Report r;
  QuiverElement half = phi({Form::differential(Var::T), Form::differential(Var::T)});
  r.check("Phi^2(dt, dt) = 1/2 h", half[0] == 0 && half[1] == 0 && half[2] == Scalar(1, 2));
  for (int k = 1; k <= max_k; ++k) {
    size_t count = 0;
    bool zero = true;
    std::string witness;
    std::vector<size_t> idx(k, 0);
    for (;;) {
      std::vector<Form> args;
      for (size_t i : idx) args.push_back(monomials[i]);
      QuiverElement d = phi_defect(args);
      ++count;
      if (zero && !(d[0] == 0 && d[1] == 0 && d[2] == 0)) {
        zero = false;
        for (const auto& a : args) witness += (witness.empty() ? "" : ", ") + a.str();
      }
      int pos = k - 1;
      while (pos >= 0 && ++idx[pos] == monomials.size()) idx[pos--] = 0;
      if (pos < 0) break;
    }
    r.check("k = " + std::to_string(k) + ", " + std::to_string(count) + " argument lists", zero, "(" + witness + ")");
  }
  return r.finish();
}

int cmd_hochschild(const Options& o) {
  Document doc = load_all(o);
  auto [name, A] = select_one(doc.algebras, o.name, "algebra");
  const int top = o.level.value_or(std::min(2, A->cap - 1));
  std::ostringstream os;
  os << "hochschild " << name << "\n";
  for (int q = 0; q <= top; ++q) os << "  HH^" << q << " = " << hh_dimension(*A, q) << "\n";
  std::cout << os.str();
  return kExitOk;
}

int cmd_group_cohomology(const Options& o) {
  Document doc = load_all(o);
  auto [name, act] = select_one(doc.actions, o.name, "action");
  const int top = o.level.value_or(2);
  std::ostringstream os;
  os << "group cohomology of " << (act.free() ? "the free group" : act.group) << " with coefficients " << name
     << " (dimension " << act.dim << ")\n";
  for (int p = 0; p <= top; ++p) {
    size_t dim = act.free() ? free_group_cohomology(act.matrices, p)
                            : group_cohomology_dim(doc.groups.at(act.group), act.matrices, p, std::max(3, top));
    os << "  H^" << p << " = " << dim << "\n";
  }
  std::cout << os.str();
  return kExitOk;
}

int cmd_gauge(const Options& o) {
  Document doc = load_all(o);
  auto [gname, gamma] = select_one(doc.gauges, o.name, "gauge");
  std::string aname = o.with;
  Field alpha;
  if (doc.algebras.count(o.with))
    alpha = constant_family(gamma.grid, *doc.algebras.at(o.with));
  else
    std::tie(aname, alpha) = select_one(doc.families, o.with, "family");
  const int K = o.level.value_or(alpha.cap - 1);
  Field result = gauge_exp(gamma, alpha, K);
  Report r;
  r.os << "gauge " << gname << " acting on " << aname << " modulo F_" << K + 1 << "\n";
  r.check("result is maurer-cartan", truncate_levels(mc_defect(result), K).is_zero());
  PathCheck pc = mc_path_check(gamma, alpha, K, {Scalar(0), Scalar(1, 2), Scalar(1)});
  r.check("gauge path is maurer-cartan", pc.ok(), pc.witness);
  if (result.grid.dim() == 0) {
    AInfAlgebra fiber = AInfAlgebra::zero(result.space, result.cap);
    for (int n = 0; n <= result.cap; ++n) fiber.m(n) = result.at(0, n);
    auto match = doc.find_algebra(fiber);
    r.os << "  result is the algebra: " << (match ? *match : "(not in the document)") << "\n";
  }
  Document out{doc.space};
  out.families[aname + "-gauged"] = result;
  write_out(o, out, r.os);
  return r.finish();
}

int cmd_strictify(const Options& o) {
  Document doc = load_all(o);
  auto [name, spec] = select_one(doc.scenarios, o.name, "scenario");
  StrictAction act = spec.free_group ? strictify(doc.free_group_model(name), o.level.value_or(2))
                                     : strictify(doc.finite_group_scenario(name));
  Report r;
  r.os << "strictify " << name << " (" << act.elements.size() << " elements)\n";
  r.check("F_e = id", act.identity_ok);
  for (const auto& c : act.table) {
    r.os << "  " << c.g << " * " << c.h << " = " << c.gh << ": " << (c.equal ? "EQUAL" : "DIFFER " + c.witness) << "\n";
    r.ok = r.ok && c.equal;
  }
  Document out{doc.space};
  const std::string vertex = spec.free_group ? spec.free_group->vertex : spec.finite_group->a0;
  for (size_t i = 0; i < act.maps.size(); ++i) add_morphism(out, "F_" + act.elements[i], act.maps[i], vertex, vertex);
  write_out(o, out, r.os);
  return r.finish();
}

int run(const std::string& command, const Options& o) {
  if (command == "validate") return cmd_validate(o);
  if (command == "check-ainf") return cmd_check_ainf(o);
  if (command == "check-morphism") return cmd_check_morphism(o);
  if (command == "check-homotopy") return cmd_check_homotopy(o);
  if (command == "mc-check") return cmd_mc_check(o);
  if (command == "transport") return cmd_transport(o);
  if (command == "compose") return cmd_compose(o);
  if (command == "invert") return cmd_invert(o);
  if (command == "collapse") return cmd_collapse(o);
  if (command == "square-homotopy") return cmd_square_homotopy(o);
  if (command == "phi-check") return cmd_phi_check(o);
  if (command == "hochschild") return cmd_hochschild(o);
  if (command == "group-cohomology") return cmd_group_cohomology(o);
  if (command == "gauge") return cmd_gauge(o);
  return cmd_strictify(o);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << usage();
    return kExitUsage;
  }
  const std::string command = argv[1];
  if (command == "--help" || command == "-h") {
    std::cout << usage();
    return kExitOk;
  }
  if (std::find(kCommands.begin(), kCommands.end(), command) == kCommands.end()) {
    std::cerr << "unknown command '" << command << "'\n" << usage();
    return kExitUsage;
  }
  Options o;
  CLI::App app{"ainfc " + command};
  app.add_option("files", o.files, "input documents");
  app.add_option("--arity-cap", o.arity_cap, "truncate all structures to this arity");
  app.add_option("--unary-depth", o.unary_depth, "unary levels allowed in transport trees");
  app.add_option("--from", o.from, "transport start point");
  app.add_option("--to", o.to, "transport end point");
  app.add_option("--level", o.level, "level bound (defect level, filtration level, degree or word length)");
  app.add_flag("--oracle", o.oracle, "cross-check transport with a floating-point ODE solver");
  app.add_option("--out", o.out, "write the computed objects to this file");
  app.add_option("--name", o.name, "object to operate on");
  app.add_option("--with", o.with, "second object (compose, gauge)");
  try {
    app.parse(argc - 1, argv + 1);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << usage();
    return kExitUsage;
  }
  try {
    return run(command, o);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const InvariantError& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    return kExitFail;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
}

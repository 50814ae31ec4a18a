#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ainf/field.hpp"
#include "ainf/group.hpp"
#include "ainf/strictify.hpp"

namespace ainf {

// The file could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// "c*s^a*t^b*ds*dt + ..." as printed by Form::str; "-" between terms is also accepted.
Form parse_form(std::string_view text);

// Group representation on a module of dimension `dim`. For a finite group, one matrix per element
// in group order; for a free group (group == "free"), one matrix per generator.
struct ModuleAction {
  std::string group;
  size_t dim = 0;
  bool on_space = true;  // acts on the document space rather than an abstract module
  std::vector<Matrix> matrices;
  bool free() const { return group == "free"; }
};

struct FreeGroupSpec {
  std::string vertex;
  std::vector<std::string> edges;
  std::vector<Matrix> monodromy;
};

struct FiniteGroupSpec {
  std::string action, a0, a1, gamma;
};

struct ScenarioSpec {
  std::optional<FreeGroupSpec> free_group;
  std::optional<FiniteGroupSpec> finite_group;
};

// A parsed document over a single graded space. Names are keys; maps keep them sorted so that
// serialization is deterministic.
struct Document {
  SpacePtr space;
  std::map<std::string, AlgebraPtr> algebras;
  std::map<std::string, std::shared_ptr<const AInfMorphism>> morphisms;
  std::map<std::string, AInfHomotopy> homotopies;
  std::map<std::string, Field> families;  // degree-1 fields
  std::map<std::string, Field> gauges;    // degree-0 fields
  std::map<std::string, FiniteGroup> groups;
  std::map<std::string, ModuleAction> actions;
  std::map<std::string, ScenarioSpec> scenarios;

  // Name of the algebra with exactly these structure maps, if any.
  std::optional<std::string> find_algebra(const AInfAlgebra& A) const;
  FreeGroupModel free_group_model(const std::string& scenario) const;
  FiniteGroupScenario finite_group_scenario(const std::string& scenario) const;
  LinearAction linear_action(const std::string& action) const;
};

struct LoadOptions {
  // Truncates every algebra, morphism, homotopy and field to arities <= arity_cap.
  std::optional<int> arity_cap;
};

// Throws ParseError for malformed text and InvariantError for values violating a type invariant.
Document parse_document(const std::string& text, const LoadOptions& options = {});
Document load_document(const std::string& path, const LoadOptions& options = {});
// Merges documents over the same space; a name may repeat only with identical content.
Document merge_documents(const std::vector<Document>& docs);

std::string serialize(const Document& doc);
void save_document(const Document& doc, const std::string& path);

// Runs every type invariant: algebra shapes and flatness, morphism and homotopy shapes, family
// validity, continuity and the curvature assumption, group and action axioms, scenario shapes.
void validate_document(const Document& doc);

}  // namespace ainf

#pragma once

#include <string>
#include <vector>

#include "ainf/field.hpp"
#include "ainf/group.hpp"

namespace ainf {

// Elements of a free group as reduced words: letter +k is generator k-1, -k its inverse.
using Word = std::vector<int>;
Word reduce(Word w);
Word concat(const Word& a, const Word& b);
std::string word_string(const Word& w);
// All reduced words of length <= max_length, shortest first.
std::vector<Word> reduced_words(int generators, int max_length);

// Wedge of circles: one loop per generator at a vertex algebra A. Edge s carries a family on
// [0,1] starting at A; its monodromy rho_s identifies the fiber at 1 with A strictly.
struct FreeGroupModel {
  AlgebraPtr vertex;
  std::vector<Field> edges;
  std::vector<Matrix> monodromy;
  void validate() const;
};

// Finite-group scenario: rho acts strictly on A1; A0 is related to A1 by the gauge element gamma
// (exp(gamma) acting on A0 gives A1) on a point base.
struct FiniteGroupScenario {
  LinearAction action;
  AlgebraPtr a0, a1;
  Field gamma;
  void validate() const;
};

struct CompositionCheck {
  std::string g, h, gh;
  bool equal = true;
  std::string witness;
};

struct StrictAction {
  std::vector<std::string> elements;
  std::vector<AInfMorphism> maps;
  bool identity_ok = false;
  std::vector<CompositionCheck> table;
  bool ok() const;
};

// F_s = rho_s o T_s(0 -> 1), F_{s^-1} = T_s(1 -> 0) o rho_s^{-1}, F_w the composite along the word.
// Checks F_g o F_h = F_{gh} for all reduced words g, h of length <= max_length.
StrictAction strictify(const FreeGroupModel& model, int max_length = 2);

// F_g = G(1 -> 0) o rho_g o G(0 -> 1), where G transports along the gauge path from A0 to A1.
// Checks the full multiplication table.
StrictAction strictify(const FiniteGroupScenario& scenario);

// The MC path alpha_t - dt gamma from A0 (t = 0) to A1 (t = 1) used by the finite-group scenario.
Field gauge_connection(const FiniteGroupScenario& scenario);

}  // namespace ainf

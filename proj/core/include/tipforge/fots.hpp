// Finite-state transition systems over the first-order layer, read from the
// s-expression model format. A model file declares extra sorts and symbols on
// top of the vocabulary induced by its protocol specification, then gives
// background axioms, an initial condition, named transitions, a candidate
// inductive invariant, and a safety property. Next-state values are written
// with primed relation symbols; priming is only meaningful inside
// transitions.
#pragma once

#include <set>
#include <string>
#include <vector>

#include "tipforge/fol.hpp"
#include "tipforge/spec.hpp"

namespace tipforge {

// Next-state copy of a relation name ("R" -> "R'").
std::string primed_name(const std::string& base);
bool is_primed_name(const std::string& name);
// Strips one trailing prime; identity on unprimed names.
std::string unprimed_name(const std::string& name);

struct Transition {
  std::string name;
  FoPtr formula;  // two-vocabulary relation between current and next state
};

struct TransitionSystem {
  // Declared symbols plus the specification-induced vocabulary (node sort,
  // threshold sorts, membership relations) plus primed copies of every
  // mutable relation.
  FoVocabulary vocab;
  // Background axioms. Their symbols are rigid: no transition may prime them.
  std::vector<FoPtr> theta;
  FoPtr init;  // conjunction of the init forms; true when absent
  std::vector<Transition> transitions;  // declaration order; may be empty
  std::vector<FoPtr> invariant;         // candidate invariant, one conjunct per form
  FoPtr safety;                         // conjunction of the safety forms; true when absent
  // Relations that occur primed in some transition.
  std::set<std::string> mutable_relations;
  std::string origin;     // label used in diagnostics (file name)
  std::string spec_name;  // protocol the model is an instance of
};

// Parses the model text against the given protocol specification. The
// specification's sorts and membership relations are pre-imported; the text
// may declare further sorts, relations, constants, and functions before
// using them. Errors carry origin:line:column positions. Rejected inputs
// include: malformed s-expressions, unknown or redeclared symbols, arity and
// sort mismatches, primed symbols outside transitions, primed membership
// relations, and transitions that prime a symbol constrained by a background
// axiom.
TransitionSystem parse_fots(const std::string& text, const ProtocolSpec& spec,
                            const std::string& origin = "<fots>");

// Reads the file and parses it; the path becomes the diagnostic origin.
TransitionSystem load_fots(const std::string& path, const ProtocolSpec& spec);

}  // namespace tipforge

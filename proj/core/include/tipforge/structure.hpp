// Finite first-order structures: explicit domains plus interpretations for
// relations, constants, and functions.  These are what the grounding solver
// returns as models and what the counterexample-driven loop evaluates
// candidate axioms on.
#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "tipforge/fol.hpp"

namespace tipforge {

struct FiniteStructure {
  // sort -> element names; an element is referred to by its index.
  std::map<std::string, std::vector<std::string>> domains;
  // relation name -> set of tuples of element indices.
  std::map<std::string, std::set<std::vector<int>>> relations;
  // constant name -> (sort, element index).
  std::map<std::string, std::pair<std::string, int>> constants;
  // function name -> argument tuple -> result element index.
  std::map<std::string, std::map<std::vector<int>, int>> functions;

  int domain_size(const std::string& sort) const;
  // Deterministic multi-line rendering with element names spelled out.
  std::string str() const;
};

// Evaluates a closed formula; quantifiers range over the finite domains.
// Equality is element-index identity.  Throws TipError on free variables or
// symbols the structure does not interpret.
bool eval_on_structure(const FoPtr& f, const FiniteStructure& s);

// Projections of a two-vocabulary (pre/post) structure back onto the plain
// vocabulary.  `primed(R)` is `R` + "'".  The pre-state reduct drops every
// primed relation; the post-state reduct additionally moves each primed
// mutable relation's interpretation onto its unprimed name.
FiniteStructure pre_state_reduct(const FiniteStructure& s,
                                 const std::set<std::string>& mutables);
FiniteStructure post_state_reduct(const FiniteStructure& s,
                                  const std::set<std::string>& mutables);

// A structure holding only the node domain {"n0", ..., "n{n-1}"}.
FiniteStructure make_node_core(int n);

}  // namespace tipforge

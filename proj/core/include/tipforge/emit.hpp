// Rendering of acyclic axiom sets to external formats: SMT-LIB2 (UF logic),
// an Ivy-flavoured axiom listing, and an annotated plain-text listing.
//
// All three renderings are deterministic functions of the input order: the
// same Δ and spec always produce byte-identical output.
#pragma once

#include <string>
#include <vector>

#include "tipforge/simple_formula.hpp"
#include "tipforge/spec.hpp"

namespace tipforge {

enum class AxiomFormat { Smtlib2, IvyStyle, Text };

// Accepts "smtlib2", "ivy" / "ivy-style", "text"; throws TipError otherwise.
AxiomFormat parse_axiom_format(const std::string& token);
std::string axiom_format_name(AxiomFormat format);

// Renders the axioms FO(φ) for each φ in `delta`, in order.
//
// Declarations cover the base node sort plus exactly the sorts and membership
// relations that actually occur in the rendered axioms; an empty Δ therefore
// yields declarations only (just the node sort) and no assertions.
//
// Preconditions: every φ must be syntactically acyclic (its head guard must
// not name one of its own quantifier guards) — violating formulas raise a
// TipError.  Pass Δ through drop_cyclic first, or set `allow_cyclic` to
// render an unfiltered set for inspection (such axioms are tautological and
// take the grounding engine outside its decidable fragment; never feed them
// to it).
//
// When `with_subsumption_facts` is set, the guard-inclusion facts from
// subsumption_fact_formulas(spec) are appended after the main axioms, in
// their own deterministic order, marked by a comment in formats that
// support comments.
std::string emit_axioms(const std::vector<SimpleFormula>& delta,
                        const ProtocolSpec& spec, AxiomFormat format,
                        bool with_subsumption_facts = false,
                        bool allow_cyclic = false);

}  // namespace tipforge

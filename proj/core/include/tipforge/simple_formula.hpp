// Simple formulas: the normal form enumerated and pruned by the
// inference engine.
//
// A simple formula is
//   forall x1:h1, ..., xq:hq.  h( x1 & ... & xq & l1 & ... & lk )
// where each quantifier guard h_i is a named threshold, each literal l_j is
// a set parameter or its complement (no parameter appears twice with the
// same polarity), and the head guard h is a named threshold, "at least
// one", or "all". q = 0 and k = 0 are allowed, but not both at once.
#pragma once

#include <string>
#include <vector>

#include "tipforge/tip.hpp"

namespace tipforge {

struct SimpleLiteral {
  int param;          // index into spec.set_params
  bool complemented;

  bool operator==(const SimpleLiteral& o) const {
    return param == o.param && complemented == o.complemented;
  }
  bool operator<(const SimpleLiteral& o) const {
    if (param != o.param) return param < o.param;
    return complemented < o.complemented;
  }
};

struct AtomicGuard {
  enum class Kind { Thresh, One, All } kind = Kind::Thresh;
  int thresh = -1;  // index into spec.thresholds, Kind::Thresh only

  static AtomicGuard make_thresh(int idx) {
    return AtomicGuard{Kind::Thresh, idx};
  }
  static AtomicGuard make_one() { return AtomicGuard{Kind::One, -1}; }
  static AtomicGuard make_all() { return AtomicGuard{Kind::All, -1}; }

  bool operator==(const AtomicGuard& o) const {
    return kind == o.kind && thresh == o.thresh;
  }
  bool operator<(const AtomicGuard& o) const {
    if (kind != o.kind) return kind < o.kind;
    return thresh < o.thresh;
  }
};

struct SimpleFormula {
  // Threshold indices of the quantifier guards, sorted ascending (the
  // order of quantifiers is semantically irrelevant).
  std::vector<int> quants;
  // Parameter literals, sorted, duplicates removed.
  std::vector<SimpleLiteral> literals;
  // Guard applied to the intersection of all quantified variables and
  // literals.
  AtomicGuard head;

  int q() const { return static_cast<int>(quants.size()); }
  int k() const { return static_cast<int>(literals.size()); }

  bool operator==(const SimpleFormula& o) const {
    return quants == o.quants && literals == o.literals && head == o.head;
  }
  bool operator<(const SimpleFormula& o) const {
    if (quants != o.quants) return quants < o.quants;
    if (literals != o.literals) return literals < o.literals;
    return head < o.head;
  }

  // Renders in the quantified-guard concrete syntax, e.g.
  // "forall x:g[t1], y:g[t2]. nonempty(x & y & ~f)".
  std::string str(const ProtocolSpec& spec) const;

  // Equivalent formula AST (parses back to the same SimpleFormula).
  TipPtr to_tip(const ProtocolSpec& spec) const;
};

// Classifies a quantified atom (as produced by decompose_to_atoms) into the
// normal form. Throws TipError when the formula is not simple (e.g. a
// complemented quantified variable, a "one"/"all" quantifier guard, or a
// non-intersection body).
SimpleFormula classify_simple(const TipPtr& atom, const ProtocolSpec& spec);

// Convenience: parse + decompose + classify; fails unless every conjunct is
// simple.
std::vector<SimpleFormula> parse_simple(const std::string& text,
                                        const ProtocolSpec& spec);

}  // namespace tipforge

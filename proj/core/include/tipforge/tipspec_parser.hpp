// Parser for the .tipspec protocol description format.
//
// Format (line oriented, '#' starts a comment):
//
//   spec bosco
//   int t
//   set f
//   assume n >= 3t + 1
//   assume |f| <= t
//   assume disjoint(a, b)
//   threshold t1 = n - t
//   threshold t2 = (n + 3t + 1) / 2
//   threshold t4 > 2t            # "more than" sugar, normalized to >=
//
// Linear expressions support +, -, integer literals, parameter names,
// coefficient juxtaposition (3t) or explicit product (3*t), parentheses,
// and division by a positive integer literal. Assumptions support the
// comparisons <=, <, >=, >, =, !=, the connectives and/or/not, cardinality
// atoms k*|setexpr| cmp expr, and the disjoint(a, b, ...) shorthand for
// pairwise empty intersections. Set expressions support parameter names,
// complement (~s or s^c), intersection (&), union (|+| is not needed:
// use "union"), and parentheses.
#pragma once

#include <string>

#include "tipforge/spec.hpp"

namespace tipforge {

// Raised on malformed input; the message includes line and column.
class ParseError : public TipError {
 public:
  ParseError(const std::string& msg, int line, int col);
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_, col_;
};

// Parses and validates a spec from text. `origin` names the source in error
// messages (e.g. a file path).
ProtocolSpec parse_tipspec(const std::string& text,
                           const std::string& origin = "<input>");

// Reads the file and parses it.
ProtocolSpec load_tipspec(const std::string& path);

// Renders a spec back to .tipspec text (parses back to an equal spec).
std::string render_tipspec(const ProtocolSpec& spec);

}  // namespace tipforge

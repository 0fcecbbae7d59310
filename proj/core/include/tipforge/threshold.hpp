// Symbolic thresholds of the form numerator/divisor, where the numerator is
// a linear term over the protocol parameters and the divisor is a positive
// integer. A guard "at least t" over a set B abbreviates
//   divisor * |B| >= numerator.
#pragma once

#include <string>

#include "tipforge/lin_term.hpp"

namespace tipforge {

class Threshold {
 public:
  // Canonicalizes on construction: the divisor becomes >= 1, the numerator
  // coefficients become integral, and the gcd of all numerator coefficients
  // together with the divisor becomes 1.
  Threshold(std::string name, LinTerm numerator, Int divisor);

  const std::string& name() const { return name_; }
  const LinTerm& numerator() const { return numerator_; }
  const Int& divisor() const { return divisor_; }

  // Structural equality of the canonical value (name ignored).
  bool same_value(const Threshold& o) const {
    return divisor_ == o.divisor_ && numerator_ == o.numerator_;
  }

  // Render e.g. "(n + 3t + 1) / 2" or "n - t".
  std::string str() const;

 private:
  std::string name_;
  LinTerm numerator_;
  Int divisor_;
};

}  // namespace tipforge

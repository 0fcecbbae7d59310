#include "tipforge/threshold.hpp"

#include <sstream>
#include <utility>

namespace tipforge {

Threshold::Threshold(std::string name, LinTerm numerator, Int divisor)
    : name_(std::move(name)),
      numerator_(std::move(numerator)),
      divisor_(std::move(divisor)) {
  if (divisor_ == 0) throw TipError("threshold divisor must be nonzero");
  if (divisor_ < 0) {
    divisor_ = -divisor_;
    numerator_ *= Rat(-1);
  }
  // Make the numerator integral, scaling the divisor to compensate.
  Int lcm = numerator_.constant().get_den();
  for (const auto& [var, c] : numerator_.coeffs()) {
    Int den = c.get_den();
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
  }
  if (lcm != 1) {
    numerator_ *= Rat(lcm);
    divisor_ *= lcm;
  }
  // Divide out the common factor of all numerator coefficients and the
  // divisor so equal values have equal representations.
  Int g = divisor_;
  Int num_const = numerator_.constant().get_num();
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num_const.get_mpz_t());
  for (const auto& [var, c] : numerator_.coeffs()) {
    Int num = c.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
  }
  if (g > 1) {
    numerator_ *= Rat(Int(1), g);
    divisor_ /= g;
  }
}

std::string Threshold::str() const {
  std::ostringstream os;
  if (divisor_ == 1) {
    os << numerator_.str();
  } else {
    os << "(" << numerator_.str() << ") / " << divisor_.get_str();
  }
  return os.str();
}

}  // namespace tipforge

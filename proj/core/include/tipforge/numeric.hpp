// Exact arithmetic aliases and helpers used throughout the library.
#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace tipforge {

using Int = mpz_class;
using Rat = mpq_class;

// Smallest integer >= q.
inline Int ceil_rat(const Rat& q) {
  Int quot, rem;
  mpz_fdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), q.get_num().get_mpz_t(),
              q.get_den().get_mpz_t());
  if (rem != 0) quot += 1;
  return quot;
}

// Largest integer <= q.
inline Int floor_rat(const Rat& q) {
  Int quot;
  mpz_fdiv_q(quot.get_mpz_t(), q.get_num().get_mpz_t(),
             q.get_den().get_mpz_t());
  return quot;
}

inline bool is_integral(const Rat& q) { return q.get_den() == 1; }

// Base class for all errors raised by the library.
class TipError : public std::runtime_error {
 public:
  explicit TipError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when a decision procedure exhausts its resource budget. Callers
// must treat this as "unknown", never as a verdict.
class BudgetExceeded : public TipError {
 public:
  explicit BudgetExceeded(const std::string& msg) : TipError(msg) {}
};

}  // namespace tipforge

// Linear terms over named integer parameters with rational coefficients.
//
// A LinTerm represents  c0 + sum_i c_i * v_i  where the v_i are parameter
// names ("n" is the reserved name for the domain size). These appear as
// threshold numerators, resilience-condition sides, and LIA objective rows.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "tipforge/numeric.hpp"

namespace tipforge {

class LinTerm {
 public:
  LinTerm() = default;
  explicit LinTerm(Rat constant) : constant_(std::move(constant)) {}

  static LinTerm var(const std::string& name, Rat coeff = Rat(1)) {
    LinTerm t;
    t.coeffs_[name] = std::move(coeff);
    t.prune();
    return t;
  }

  const Rat& constant() const { return constant_; }
  const std::map<std::string, Rat>& coeffs() const { return coeffs_; }

  Rat coeff(const std::string& name) const {
    auto it = coeffs_.find(name);
    return it == coeffs_.end() ? Rat(0) : it->second;
  }

  bool is_constant() const { return coeffs_.empty(); }
  bool is_zero() const { return coeffs_.empty() && constant_ == 0; }

  LinTerm& operator+=(const LinTerm& o);
  LinTerm& operator-=(const LinTerm& o);
  LinTerm& operator*=(const Rat& k);

  friend LinTerm operator+(LinTerm a, const LinTerm& b) { return a += b; }
  friend LinTerm operator-(LinTerm a, const LinTerm& b) { return a -= b; }
  friend LinTerm operator*(LinTerm a, const Rat& k) { return a *= k; }
  friend LinTerm operator*(const Rat& k, LinTerm a) { return a *= k; }
  friend LinTerm operator-(LinTerm a) { return a *= Rat(-1); }

  bool operator==(const LinTerm& o) const {
    return constant_ == o.constant_ && coeffs_ == o.coeffs_;
  }
  bool operator!=(const LinTerm& o) const { return !(*this == o); }

  // Total order usable as a map key (lexicographic on the flattened form).
  bool operator<(const LinTerm& o) const;

  // Names of all parameters with a nonzero coefficient, sorted.
  std::vector<std::string> variables() const;

  // Multiply by the least common denominator so every coefficient and the
  // constant become integral. Returns the factor applied (always >= 1).
  Int clear_denominators();

  // Render as e.g. "2n - 3t + 1". Deterministic.
  std::string str() const;

 private:
  void prune();

  Rat constant_{0};
  std::map<std::string, Rat> coeffs_;
};

}  // namespace tipforge

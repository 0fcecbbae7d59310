#include "tipforge/lin_term.hpp"

#include <numeric>
#include <sstream>

namespace tipforge {

LinTerm& LinTerm::operator+=(const LinTerm& o) {
  constant_ += o.constant_;
  for (const auto& [name, c] : o.coeffs_) coeffs_[name] += c;
  prune();
  return *this;
}

LinTerm& LinTerm::operator-=(const LinTerm& o) {
  constant_ -= o.constant_;
  for (const auto& [name, c] : o.coeffs_) coeffs_[name] -= c;
  prune();
  return *this;
}

LinTerm& LinTerm::operator*=(const Rat& k) {
  if (k == 0) {
    constant_ = 0;
    coeffs_.clear();
    return *this;
  }
  constant_ *= k;
  for (auto& [name, c] : coeffs_) c *= k;
  return *this;
}

bool LinTerm::operator<(const LinTerm& o) const {
  if (constant_ != o.constant_) return constant_ < o.constant_;
  return std::lexicographical_compare(
      coeffs_.begin(), coeffs_.end(), o.coeffs_.begin(), o.coeffs_.end(),
      [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
      });
}

std::vector<std::string> LinTerm::variables() const {
  std::vector<std::string> out;
  out.reserve(coeffs_.size());
  for (const auto& [name, c] : coeffs_) out.push_back(name);
  return out;
}

Int LinTerm::clear_denominators() {
  Int lcm = constant_.get_den();
  for (const auto& [name, c] : coeffs_) {
    Int other = c.get_den();
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), other.get_mpz_t());
  }
  if (lcm != 1) *this *= Rat(lcm);
  return lcm;
}

void LinTerm::prune() {
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    if (it->second == 0)
      it = coeffs_.erase(it);
    else
      ++it;
  }
}

std::string LinTerm::str() const {
  std::ostringstream os;
  bool first = true;
  auto emit = [&](const Rat& c, const std::string& name) {
    Rat a = c < 0 ? Rat(-c) : c;
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (name.empty()) {
      os << a.get_str();
    } else {
      if (a != 1) os << a.get_str() << "*";
      os << name;
    }
  };
  for (const auto& [name, c] : coeffs_) emit(c, name);
  if (constant_ != 0 || coeffs_.empty()) emit(constant_, "");
  return os.str();
}

}  // namespace tipforge

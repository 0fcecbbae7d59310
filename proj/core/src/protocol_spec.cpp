#include <algorithm>
#include <cstdint>
#include <functional>
#include <sstream>

#include "tipforge/spec.hpp"

namespace tipforge {

bool ProtocolSpec::has_set_param(const std::string& s) const {
  return std::find(set_params.begin(), set_params.end(), s) !=
         set_params.end();
}

bool ProtocolSpec::has_int_param(const std::string& s) const {
  if (s == "n") return true;
  return std::find(int_params.begin(), int_params.end(), s) !=
         int_params.end();
}

const Threshold& ProtocolSpec::threshold_by_name(const std::string& s) const {
  for (const auto& t : thresholds)
    if (t.name() == s) return t;
  throw TipError("unknown threshold: " + s);
}

int ProtocolSpec::threshold_index(const std::string& s) const {
  for (size_t i = 0; i < thresholds.size(); ++i)
    if (thresholds[i].name() == s) return static_cast<int>(i);
  return -1;
}

std::string ProtocolSpec::digest() const {
  std::ostringstream os;
  os << "spec " << name << "\n";
  for (const auto& p : int_params) os << "int " << p << "\n";
  for (const auto& p : set_params) os << "set " << p << "\n";
  os << "assume " << (gamma ? gamma->str() : "true") << "\n";
  for (const auto& t : thresholds)
    os << "threshold " << t.name() << " = " << t.str() << "\n";
  const std::string s = os.str();
  // FNV-1a, 64-bit.
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream hex;
  hex << std::hex;
  for (int i = 15; i >= 0; --i) hex << "0123456789abcdef"[(h >> (i * 4)) & 15];
  return hex.str();
}

namespace {

void validate_set_expr(const ProtocolSpec& spec, const SetExprPtr& e) {
  if (!e) throw TipError("null set expression");
  switch (e->op) {
    case SetOp::Param:
      if (!spec.has_set_param(e->param))
        throw TipError("unknown set parameter: " + e->param);
      break;
    case SetOp::Complement:
      if (e->kids.size() != 1) throw TipError("complement arity");
      validate_set_expr(spec, e->kids[0]);
      break;
    case SetOp::Intersect:
    case SetOp::Union:
      if (e->kids.size() < 2) throw TipError("set operation arity");
      for (const auto& k : e->kids) validate_set_expr(spec, k);
      break;
    case SetOp::Empty:
    case SetOp::Universe:
      break;
  }
}

void validate_lin(const ProtocolSpec& spec, const LinTerm& t) {
  for (const auto& v : t.variables())
    if (!spec.has_int_param(v))
      throw TipError("unknown integer parameter: " + v);
}

void validate_gamma(const ProtocolSpec& spec, const GammaPtr& g) {
  if (!g) throw TipError("null assumption formula");
  switch (g->kind) {
    case GammaKind::And:
    case GammaKind::Or:
      if (g->kids.empty()) throw TipError("empty connective");
      for (const auto& k : g->kids) validate_gamma(spec, k);
      break;
    case GammaKind::Not:
      if (g->kids.size() != 1) throw TipError("negation arity");
      validate_gamma(spec, g->kids[0]);
      break;
    case GammaKind::LinCmp:
      validate_lin(spec, g->lhs);
      validate_lin(spec, g->rhs);
      break;
    case GammaKind::CardCmp:
      if (g->multiplier <= 0)
        throw TipError("cardinality multiplier must be positive");
      validate_set_expr(spec, g->set);
      validate_lin(spec, g->rhs);
      break;
    case GammaKind::SetEq:
      validate_set_expr(spec, g->set);
      validate_set_expr(spec, g->set2);
      break;
  }
}

}  // namespace

void ProtocolSpec::validate() const {
  if (name.empty()) throw TipError("spec has no name");
  for (const auto& p : int_params) {
    if (p == "n") throw TipError("'n' is reserved for the domain size");
    if (std::count(int_params.begin(), int_params.end(), p) > 1)
      throw TipError("duplicate integer parameter: " + p);
    if (has_set_param(p))
      throw TipError("name used as both integer and set parameter: " + p);
  }
  for (const auto& p : set_params) {
    if (p == "n") throw TipError("'n' is reserved for the domain size");
    if (std::count(set_params.begin(), set_params.end(), p) > 1)
      throw TipError("duplicate set parameter: " + p);
  }
  if (gamma) validate_gamma(*this, gamma);
  for (size_t i = 0; i < thresholds.size(); ++i) {
    validate_lin(*this, thresholds[i].numerator());
    for (size_t j = 0; j < i; ++j) {
      if (thresholds[j].name() == thresholds[i].name())
        throw TipError("duplicate threshold name: " + thresholds[i].name());
      if (thresholds[j].same_value(thresholds[i]))
        throw TipError("thresholds " + thresholds[j].name() + " and " +
                       thresholds[i].name() + " have the same value");
    }
  }
}

}  // namespace tipforge

#include "tipforge/guard_norm.hpp"

namespace tipforge {

NormalizedGuard normalize_cardinality_guard(CmpOp op, LinTerm numerator,
                                            Int divisor) {
  if (divisor <= 0) throw TipError("guard divisor must be positive");
  // Clear rational coefficients so the integrality rewrites below apply.
  Int scale = numerator.clear_denominators();
  divisor *= scale;

  NormalizedGuard out;
  switch (op) {
    case CmpOp::Ge:
      out.complemented = false;
      out.numerator = std::move(numerator);
      break;
    case CmpOp::Gt:
      out.complemented = false;
      out.numerator = numerator + LinTerm(Rat(1));
      break;
    case CmpOp::Le:
      out.complemented = true;
      out.numerator = LinTerm::var("n", Rat(divisor)) - numerator;
      break;
    case CmpOp::Lt:
      out.complemented = true;
      out.numerator =
          LinTerm::var("n", Rat(divisor)) - numerator + LinTerm(Rat(1));
      break;
    default:
      throw TipError("guard comparison must be one of <=, <, >=, >");
  }
  out.divisor = divisor;
  // Reuse threshold canonicalization (gcd reduction).
  Threshold canon("", out.numerator, out.divisor);
  out.numerator = canon.numerator();
  out.divisor = canon.divisor();
  return out;
}

}  // namespace tipforge

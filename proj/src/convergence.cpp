#include "degrec/convergence.hpp"

#include <algorithm>

namespace degrec {

std::string_view to_string(LimitKind kind) {
  switch (kind) {
    case LimitKind::minus_lambda3:
      return "minus_lambda3";
    case LimitKind::plus_lambda3:
      return "plus_lambda3";
    case LimitKind::lambda2:
      return "lambda2";
    case LimitKind::none:
      return "none";
    case LimitKind::zero_sequence:
      return "zero_sequence";
  }
  return "none";
}

ConvergenceSolutions u2_solutions(const DegenerateRoots& roots, const Scalar& u0,
                                  const Scalar& u1, const Tolerance& tol) {
  const Scalar& l2 = roots.lambda2();
  const Scalar& l3 = roots.lambda3();
  ConvergenceSolutions out{l2 * l3 * u0 + (l2 - l3) * u1,
                           -(l2 * l3 * u0) + (l2 + l3) * u1, false};
  out.coincident = approx_eq(out.u2_first, out.u2_second, tol);
  return out;
}

LimitKind converged_limit(const DegenerateRoots& roots, const Scalar& u0,
                          const Scalar& u1, const Scalar& u2, const Tolerance& tol) {
  const Scalar scale = std::max({u0.abs(), u1.abs(), u2.abs()});
  if (scale.is_zero()) return LimitKind::zero_sequence;

  const ConvergenceSolutions s = u2_solutions(roots, u0, u1, tol);
  const bool first = approx_eq(u2, s.u2_first, tol);
  const bool second = approx_eq(u2, s.u2_second, tol);
  if (s.coincident) {
    // Both branches collapse to u2 = lambda2^2 u0 and c1 = c3 = 0; a
    // nonzero input then leaves only the c2 lambda2^n term.
    return first || second ? LimitKind::lambda2 : LimitKind::none;
  }
  if (first) return LimitKind::minus_lambda3;
  if (second) return LimitKind::plus_lambda3;
  return LimitKind::none;
}

std::optional<Scalar> limit_value(const DegenerateRoots& roots, LimitKind kind) {
  switch (kind) {
    case LimitKind::minus_lambda3:
      return roots.lambda1();
    case LimitKind::plus_lambda3:
      return roots.lambda3();
    case LimitKind::lambda2:
      return roots.lambda2();
    default:
      return std::nullopt;
  }
}

Scalar parity_gap(const DegenerateRoots& roots, const Scalar& u0, const Scalar& u1,
                  const Scalar& u2) {
  const Scalar& l2 = roots.lambda2();
  const Scalar l3_sq = roots.lambda3() * roots.lambda3();
  const Scalar lhs_root = l2 * l2 * u0 - u2;
  const Scalar rhs_root = l3_sq * (l2 * u0 - u1) + l2 * (l2 * u1 - u2);
  return l3_sq * lhs_root * lhs_root - rhs_root * rhs_root;
}

}  // namespace degrec

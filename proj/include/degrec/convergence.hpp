#pragma once

#include "degrec/numerics.hpp"
#include "degrec/recurrence.hpp"

#include <optional>
#include <string_view>

namespace degrec {

/// The two values of u2 that make the even and odd ratio limits agree.
struct ConvergenceSolutions {
  Scalar u2_first;   // kills c3, ratio -> -lambda3
  Scalar u2_second;  // kills c1, ratio -> +lambda3
  bool coincident = false;  // u1 = lambda2 u0
};

ConvergenceSolutions u2_solutions(const DegenerateRoots& roots, const Scalar& u0,
                                  const Scalar& u1, const Tolerance& tol = {});

enum class LimitKind { minus_lambda3, plus_lambda3, lambda2, none, zero_sequence };

std::string_view to_string(LimitKind kind);

/// Value of the consecutive-ratio limit selected by u2, if any. Branch
/// membership is exact equality on the exact backend, `tol` on float.
LimitKind converged_limit(const DegenerateRoots& roots, const Scalar& u0,
                          const Scalar& u1, const Scalar& u2, const Tolerance& tol = {});

/// The limit value for `kind`; empty for none and zero_sequence.
std::optional<Scalar> limit_value(const DegenerateRoots& roots, LimitKind kind);

/// lambda3^2 (lambda2^2 u0 - u2)^2 - [lambda3^2 (lambda2 u0 - u1) +
/// lambda2 (lambda2 u1 - u2)]^2, which vanishes exactly when L1 = L2.
Scalar parity_gap(const DegenerateRoots& roots, const Scalar& u0, const Scalar& u1,
                  const Scalar& u2);

}  // namespace degrec

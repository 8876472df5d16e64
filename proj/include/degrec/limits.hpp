#pragma once

#include "degrec/binet.hpp"
#include "degrec/numerics.hpp"
#include "degrec/recurrence.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace degrec {

/// Which of the outer Binet weights vanish, and so which ratio limits exist.
enum class Regime {
  parity_oscillating,  // c1 != 0 and c3 != 0: even and odd limits differ
  convergent_minus,    // c3 = 0, c1 != 0: ratio -> -lambda3
  convergent_plus,     // c1 = 0, c3 != 0: ratio -> +lambda3
  geometric_lambda2,   // c1 = c3 = 0, c2 != 0: U_n = c2 lambda2^n
  zero_sequence,
};

std::string_view to_string(Regime regime);

/// Absent optionals mark limits whose defining denominator vanishes.
struct LimitReport {
  std::optional<Scalar> L1;     // even-index limit of U_n / U_{n-1}
  std::optional<Scalar> L2;     // odd-index limit
  std::optional<Scalar> gamma;  // L1 / lambda3
  Scalar lambda3_squared;       // L1 L2, and the limit of U_n / U_{n-2}
  std::optional<Scalar> gamma_squared;
  Regime regime = Regime::parity_oscillating;
  /// Limit of U_n / U_{n-1} over all n, when one exists.
  std::optional<Scalar> ratio_limit;
};

Regime regime_of(const BinetCoefficients& c, const Tolerance& tol = {});

/// (c1 + c3) / (c3 - c1); empty when c3 = c1.
std::optional<Scalar> gamma_of(const BinetCoefficients& c, const Tolerance& tol = {});

/// L1 and L2 computed straight from (u0, u1, u2) without the c vector.
struct ExplicitLimits {
  std::optional<Scalar> L1;
  std::optional<Scalar> L2;
};

ExplicitLimits explicit_parity_limits(const DegenerateRoots& roots, const Scalar& u0,
                                      const Scalar& u1, const Scalar& u2);

/// Limits from the Binet coefficients. On the exact backend the result is
/// cross-checked against explicit_parity_limits (std::logic_error on
/// disagreement).
LimitReport analytic_limits(const DegenerateRoots& roots, const Scalar& u0,
                            const Scalar& u1, const Scalar& u2,
                            const Tolerance& tol = {});

/// Raised when every one of the final six candidate ratios has a zero
/// denominator.
class VanishingSequence : public std::domain_error {
 public:
  VanishingSequence() : std::domain_error("sequence vanishes, ratios undefined") {}
};

struct ParityEstimates {
  std::optional<Scalar> even;  // last U_n / U_{n-1} with n even
  std::optional<Scalar> odd;
  bool converged = false;
  std::vector<std::size_t> skipped;
};

struct EmpiricalEstimate {
  Scalar value;
  bool converged = false;
  std::vector<std::size_t> skipped;
};

// The estimators below walk a three-term window rescaled by a power of two
// each step, so they run to any n_max without overflow. They need a
// floating-backend spec and n_max >= 8.

ParityEstimates empirical_parity_limits(const RecurrenceSpec& spec, std::size_t n_max,
                                        const Tolerance& tol = {});

/// Estimates lim U_n / U_{n-2}.
EmpiricalEstimate empirical_two_step_limit(const RecurrenceSpec& spec,
                                           std::size_t n_max, const Tolerance& tol = {});

/// Estimates lim U_n U_{n-2} / U_{n-1}^2 along even n. Along odd n the same
/// product tends to 1 / gamma^2.
EmpiricalEstimate empirical_gamma_squared(const RecurrenceSpec& spec, std::size_t n_max,
                                          const Tolerance& tol = {});

}  // namespace degrec

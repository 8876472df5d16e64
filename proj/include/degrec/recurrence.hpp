#pragma once

#include "degrec/numerics.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace degrec {

class InvalidRoots : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Roots (-lambda3, lambda2, lambda3) of a degenerated characteristic
/// polynomial, with lambda3 > 0 and -lambda3 < lambda2 < lambda3.
///
/// lambda2 = 0 is only representable through reduced_order(); such roots
/// describe a sequence whose true order is two.
class DegenerateRoots {
 public:
  /// Throws InvalidRoots when the ordering or sign constraints fail or
  /// lambda2 is zero.
  static DegenerateRoots make(Scalar lambda2, Scalar lambda3);
  static DegenerateRoots reduced_order(Scalar lambda3);

  Scalar lambda1() const { return -lambda3_; }
  const Scalar& lambda2() const { return lambda2_; }
  const Scalar& lambda3() const { return lambda3_; }
  bool is_reduced_order() const { return reduced_order_; }
  Backend backend() const { return lambda3_.backend(); }

  DegenerateRoots on(Backend backend) const;

 private:
  DegenerateRoots(Scalar lambda2, Scalar lambda3, bool reduced_order);

  Scalar lambda2_;
  Scalar lambda3_;
  bool reduced_order_ = false;
};

struct Coefficients {
  Scalar a1;
  Scalar a2;
  Scalar a3;
};

/// U_n = a1 U_{n-1} + a2 U_{n-2} + a3 U_{n-3} with U_0..U_2 = u0..u2.
struct RecurrenceSpec {
  Scalar a1, a2, a3;
  Scalar u0, u1, u2;

  Backend backend() const { return a1.backend(); }
  Coefficients coefficients() const { return {a1, a2, a3}; }
};

/// Throws BackendMismatch unless all six values share a backend.
void check_backend(const RecurrenceSpec& spec);

RecurrenceSpec to_floating(const RecurrenceSpec& spec);

/// a1 = lambda2, a2 = lambda3^2, a3 = -lambda2 lambda3^2.
RecurrenceSpec make_degenerate_spec(const DegenerateRoots& roots, Scalar u0,
                                    Scalar u1, Scalar u2);

/// Monic x^3 - a1 x^2 - a2 x - a3, highest degree first.
std::array<Scalar, 4> characteristic_polynomial(const Coefficients& a);

enum class ClassificationTag {
  degenerated,
  degenerated_reduced_order,
  repeated_magnitude_boundary,
  not_degenerated,
};

std::string_view to_string(ClassificationTag tag);

struct Classification {
  ClassificationTag tag = ClassificationTag::not_degenerated;
  std::optional<DegenerateRoots> roots;
  std::string reason;
};

/// Decides from the coefficients alone whether the characteristic roots are
/// (lambda2, lambda3, -lambda3) with 0 < lambda2^2 < lambda3^2.
///
/// The exact backend requires a2 to be the square of a rational; otherwise
/// the triple is reported NotDegenerated with reason "irrational dominant
/// root". The float backend compares the identities a3 = -a1 a2 and
/// a1^2 = a2 within `tol`.
Classification classify(const Scalar& a1, const Scalar& a2, const Scalar& a3,
                        const Tolerance& tol = {});

struct TermSequence {
  std::vector<Scalar> terms;
  /// First index whose floating value is no longer finite.
  std::optional<std::size_t> first_overflow;

  bool overflowed() const { return first_overflow.has_value(); }
};

/// U_0..U_{n_max}, unscaled.
TermSequence iterate_terms(const RecurrenceSpec& spec, std::size_t n_max);

enum class FitStatus { ok, too_few_terms, singular, mismatch };

struct FitResult {
  FitStatus status = FitStatus::ok;
  std::optional<Coefficients> coefficients;
  std::optional<std::size_t> mismatch_index;
  std::string message;

  explicit operator bool() const { return status == FitStatus::ok; }
};

/// Recovers (a1, a2, a3) from U_3..U_5 against U_0..U_4 and checks every
/// later supplied term against the fitted recurrence.
FitResult fit_coefficients(std::span<const Scalar> terms, const Tolerance& tol = {});

}  // namespace degrec

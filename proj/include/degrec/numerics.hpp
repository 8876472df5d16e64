#pragma once

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace degrec {

/// Unbounded rational; gmpxx keeps results canonical (lowest terms, den > 0).
using Rational = mpq_class;

enum class Backend { exact, floating };

std::string_view to_string(Backend backend);

/// Thrown when text cannot be read as a scalar.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an expression combines exact and floating operands.
class BackendMismatch : public std::logic_error {
 public:
  BackendMismatch();
};

/// A numeric value on one of the two backends.
///
/// Arithmetic between scalars of different backends throws BackendMismatch.
/// Exact division by zero throws std::domain_error; floating division
/// follows IEEE semantics, so overflow shows up as a non-finite value.
class Scalar {
 public:
  Scalar() : value_(Rational(0)) {}
  explicit Scalar(Rational value);
  explicit Scalar(double value) : value_(value) {}

  static Scalar integer(long value, Backend backend);
  static Scalar zero(Backend backend) { return integer(0, backend); }
  static Scalar one(Backend backend) { return integer(1, backend); }

  Backend backend() const {
    return std::holds_alternative<Rational>(value_) ? Backend::exact
                                                    : Backend::floating;
  }
  bool is_exact() const { return backend() == Backend::exact; }

  /// Exact value; throws BackendMismatch on a floating scalar.
  const Rational& rational() const;
  /// Nearest double for exact values, the value itself otherwise.
  double to_double() const;

  int sign() const;
  bool is_zero() const { return sign() == 0; }
  bool is_finite() const;

  Scalar abs() const;
  /// Same numeric value re-expressed on another backend.
  Scalar on(Backend backend) const;

  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);

  friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
  friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
  friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
  friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }
  Scalar operator-() const;

  friend bool operator==(const Scalar& lhs, const Scalar& rhs);
  friend std::partial_ordering operator<=>(const Scalar& lhs, const Scalar& rhs);

 private:
  std::variant<Rational, double> value_;
};

/// x^n by repeated squaring.
Scalar pow(const Scalar& base, unsigned n);

/// Rational square root when the argument is a square of a rational.
std::optional<Rational> exact_sqrt(const Rational& value);

/// Closest double to an exact rational (round to nearest, ties to even).
double nearest_double(const Rational& value);

struct Tolerance {
  double relative = 1e-9;
  double absolute = 1e-12;

  static Tolerance exact() { return {0.0, 0.0}; }
  /// Default policy for a backend: zero for exact, 1e-9 / 1e-12 for float.
  static Tolerance for_backend(Backend backend);
};

/// Exact backend: a == b. Float backend:
/// |a - b| <= absolute + relative * max(|a|, |b|).
bool approx_eq(const Scalar& a, const Scalar& b, const Tolerance& tol);

/// True when |value| <= absolute + relative * |scale| (exact: value == 0).
bool negligible(const Scalar& value, const Scalar& scale, const Tolerance& tol);

/// Parses "p/q", an integer, or a decimal literal (optional exponent).
Scalar parse_scalar(std::string_view text, Backend backend);

/// True for integer and "p/q" text, i.e. the notations that never round.
bool is_rational_notation(std::string_view text);

/// "p/q" ("p" when q = 1) for exact values; 17 significant digits for floats.
std::string render(const Scalar& value);

}  // namespace degrec

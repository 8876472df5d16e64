#include "degrec/numerics.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

namespace degrec {

namespace {

bool is_digits(std::string_view text) {
  return !text.empty() &&
         std::all_of(text.begin(), text.end(),
                     [](unsigned char ch) { return std::isdigit(ch) != 0; });
}

std::string_view strip_sign(std::string_view text) {
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    text.remove_prefix(1);
  }
  return text;
}

bool is_integer_text(std::string_view text) { return is_digits(strip_sign(text)); }

mpz_class parse_integer(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  mpz_class out(std::string(text), 10);
  return negative ? mpz_class(-out) : out;
}

struct DecimalParts {
  bool negative = false;
  std::string digits;  // integer and fraction digits concatenated
  long exponent = 0;   // value = digits * 10^exponent
};

std::optional<DecimalParts> split_decimal(std::string_view text) {
  DecimalParts parts;
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    parts.negative = text.front() == '-';
    text.remove_prefix(1);
  }
  std::string_view mantissa = text;
  std::string_view exponent;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    exponent = text.substr(e + 1);
    if (!is_integer_text(exponent)) return std::nullopt;
  }
  std::string_view whole = mantissa;
  std::string_view fraction;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    whole = mantissa.substr(0, dot);
    fraction = mantissa.substr(dot + 1);
  }
  if (whole.empty() && fraction.empty()) return std::nullopt;
  if ((!whole.empty() && !is_digits(whole)) ||
      (!fraction.empty() && !is_digits(fraction))) {
    return std::nullopt;
  }
  parts.digits = std::string(whole) + std::string(fraction);
  long exp_value = 0;
  if (!exponent.empty()) {
    std::string_view digits = exponent;
    if (digits.front() == '+') digits.remove_prefix(1);
    auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), exp_value);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
      return std::nullopt;
    }
  }
  parts.exponent = exp_value - static_cast<long>(fraction.size());
  return parts;
}

Rational decimal_to_rational(const DecimalParts& parts) {
  constexpr long kMaxExponent = 100000;
  if (parts.exponent > kMaxExponent || parts.exponent < -kMaxExponent) {
    throw ParseError("decimal exponent out of range");
  }
  mpz_class mantissa(parts.digits, 10);
  if (parts.negative) mantissa = -mantissa;
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), 10,
                static_cast<unsigned long>(std::labs(parts.exponent)));
  Rational out = parts.exponent >= 0 ? Rational(mantissa * power)
                                     : Rational(mantissa, power);
  out.canonicalize();
  return out;
}

template <typename Op>
Scalar& apply(Scalar& lhs, const Scalar& rhs, std::variant<Rational, double>& slot,
              Op op) {
  if (lhs.backend() != rhs.backend()) throw BackendMismatch();
  if (auto* q = std::get_if<Rational>(&slot)) {
    *q = op(*q, rhs.rational());
  } else {
    double& d = std::get<double>(slot);
    d = op(d, rhs.to_double());
  }
  return lhs;
}

}  // namespace

std::string_view to_string(Backend backend) {
  return backend == Backend::exact ? "exact" : "float";
}

BackendMismatch::BackendMismatch()
    : std::logic_error("scalar backends differ (exact vs float)") {}

Scalar::Scalar(Rational value) : value_(std::move(value)) {
  std::get<Rational>(value_).canonicalize();
}

Scalar Scalar::integer(long value, Backend backend) {
  if (backend == Backend::exact) return Scalar(Rational(value));
  return Scalar(static_cast<double>(value));
}

const Rational& Scalar::rational() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return *q;
  throw BackendMismatch();
}

double Scalar::to_double() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return nearest_double(*q);
  return std::get<double>(value_);
}

int Scalar::sign() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return sgn(*q);
  const double d = std::get<double>(value_);
  return (d > 0) - (d < 0);
}

bool Scalar::is_finite() const {
  if (const auto* d = std::get_if<double>(&value_)) return std::isfinite(*d);
  return true;
}

Scalar Scalar::abs() const { return sign() < 0 ? -*this : *this; }

Scalar Scalar::on(Backend target) const {
  if (backend() == target) return *this;
  if (target == Backend::floating) return Scalar(to_double());
  const double d = std::get<double>(value_);
  if (!std::isfinite(d)) throw std::domain_error("non-finite value has no exact form");
  return Scalar(Rational(d));
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  return apply(*this, rhs, value_, [](const auto& a, const auto& b) {
    return std::decay_t<decltype(a)>(a + b);
  });
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  return apply(*this, rhs, value_, [](const auto& a, const auto& b) {
    return std::decay_t<decltype(a)>(a - b);
  });
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  return apply(*this, rhs, value_, [](const auto& a, const auto& b) {
    return std::decay_t<decltype(a)>(a * b);
  });
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  if (is_exact() && rhs.is_exact() && rhs.is_zero()) {
    throw std::domain_error("exact division by zero");
  }
  return apply(*this, rhs, value_, [](const auto& a, const auto& b) {
    return std::decay_t<decltype(a)>(a / b);
  });
}

Scalar Scalar::operator-() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return Scalar(Rational(-*q));
  return Scalar(-std::get<double>(value_));
}

bool operator==(const Scalar& lhs, const Scalar& rhs) {
  if (lhs.backend() != rhs.backend()) throw BackendMismatch();
  if (lhs.is_exact()) return lhs.rational() == rhs.rational();
  return lhs.to_double() == rhs.to_double();
}

std::partial_ordering operator<=>(const Scalar& lhs, const Scalar& rhs) {
  if (lhs.backend() != rhs.backend()) throw BackendMismatch();
  if (lhs.is_exact()) {
    const int c = cmp(lhs.rational(), rhs.rational());
    return c < 0 ? std::partial_ordering::less
                 : c > 0 ? std::partial_ordering::greater
                         : std::partial_ordering::equivalent;
  }
  return lhs.to_double() <=> rhs.to_double();
}

Scalar pow(const Scalar& base, unsigned n) {
  Scalar result = Scalar::one(base.backend());
  Scalar factor = base;
  while (n != 0) {
    if (n & 1U) result *= factor;
    n >>= 1U;
    if (n != 0) factor *= factor;
  }
  return result;
}

std::optional<Rational> exact_sqrt(const Rational& value) {
  if (sgn(value) < 0) return std::nullopt;
  const mpz_class& num = value.get_num();
  const mpz_class& den = value.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) ||
      !mpz_perfect_square_p(den.get_mpz_t())) {
    return std::nullopt;
  }
  Rational root(mpz_class(sqrt(num)), mpz_class(sqrt(den)));
  root.canonicalize();
  return root;
}

double nearest_double(const Rational& value) {
  mpfr_t x;
  mpfr_init2(x, std::numeric_limits<double>::digits);
  mpfr_set_q(x, value.get_mpq_t(), MPFR_RNDN);
  const double out = mpfr_get_d(x, MPFR_RNDN);
  mpfr_clear(x);
  return out;
}

Tolerance Tolerance::for_backend(Backend backend) {
  return backend == Backend::exact ? exact() : Tolerance{};
}

bool approx_eq(const Scalar& a, const Scalar& b, const Tolerance& tol) {
  if (a.backend() != b.backend()) throw BackendMismatch();
  if (a.is_exact()) return a == b;
  const double x = a.to_double();
  const double y = b.to_double();
  if (x == y) return true;  // covers equal infinities
  if (!std::isfinite(x) || !std::isfinite(y)) return false;
  return std::fabs(x - y) <=
         tol.absolute + tol.relative * std::max(std::fabs(x), std::fabs(y));
}

bool negligible(const Scalar& value, const Scalar& scale, const Tolerance& tol) {
  if (value.backend() != scale.backend()) throw BackendMismatch();
  if (value.is_exact()) return value.is_zero();
  return std::fabs(value.to_double()) <=
         tol.absolute + tol.relative * std::fabs(scale.to_double());
}

bool is_rational_notation(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    return is_integer_text(text.substr(0, slash)) &&
           is_integer_text(text.substr(slash + 1));
  }
  return is_integer_text(text);
}

Scalar parse_scalar(std::string_view text, Backend backend) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  if (text.empty()) throw ParseError("empty scalar");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (!is_integer_text(num) || !is_integer_text(den)) {
      throw ParseError("malformed fraction '" + std::string(text) + "'");
    }
    const mpz_class d = parse_integer(den);
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    Scalar exact(Rational(parse_integer(num), d));
    return exact.on(backend);
  }

  if (is_integer_text(text)) return Scalar(Rational(parse_integer(text))).on(backend);

  const auto parts = split_decimal(text);
  if (!parts) throw ParseError("malformed scalar '" + std::string(text) + "'");
  if (backend == Backend::exact) return Scalar(decimal_to_rational(*parts));

  double d = 0.0;
  std::string_view body = text;
  if (body.front() == '+') body.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), d);
  if (ptr != body.data() + body.size() ||
      (ec != std::errc() && ec != std::errc::result_out_of_range)) {
    throw ParseError("malformed scalar '" + std::string(text) + "'");
  }
  if (ec == std::errc::result_out_of_range) {
    // from_chars leaves d untouched on range errors.
    d = (text.front() == '-' ? -1.0 : 1.0) *
        (parts->exponent > 0 ? std::numeric_limits<double>::infinity() : 0.0);
  }
  return Scalar(d);
}

std::string render(const Scalar& value) {
  if (value.is_exact()) {
    const Rational& q = value.rational();
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_str();
  }
  const double d = value.to_double();
  if (std::isnan(d)) return "nan";
  if (std::isinf(d)) return d > 0 ? "inf" : "-inf";
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", d);
  return buffer;
}

}  // namespace degrec

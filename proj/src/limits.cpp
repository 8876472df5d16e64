#include "degrec/limits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace degrec {

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::parity_oscillating:
      return "ParityOscillating";
    case Regime::convergent_minus:
      return "ConvergentMinus";
    case Regime::convergent_plus:
      return "ConvergentPlus";
    case Regime::geometric_lambda2:
      return "GeometricLambda2";
    case Regime::zero_sequence:
      return "ZeroSequence";
  }
  return "ParityOscillating";
}

namespace {

Scalar coefficient_scale(const BinetCoefficients& c) {
  return std::max({c.c1.abs(), c.c2.abs(), c.c3.abs()});
}

}  // namespace

Regime regime_of(const BinetCoefficients& c, const Tolerance& tol) {
  const Scalar scale = coefficient_scale(c);
  const bool z1 = negligible(c.c1, scale, tol);
  const bool z2 = negligible(c.c2, scale, tol);
  const bool z3 = negligible(c.c3, scale, tol);
  if (z1 && z2 && z3) return Regime::zero_sequence;
  if (z1 && z3) return Regime::geometric_lambda2;
  if (z3) return Regime::convergent_minus;
  if (z1) return Regime::convergent_plus;
  return Regime::parity_oscillating;
}

std::optional<Scalar> gamma_of(const BinetCoefficients& c, const Tolerance& tol) {
  const Scalar denominator = c.c3 - c.c1;
  if (negligible(denominator, coefficient_scale(c), tol)) return std::nullopt;
  return (c.c1 + c.c3) / denominator;
}

ExplicitLimits explicit_parity_limits(const DegenerateRoots& roots, const Scalar& u0,
                                      const Scalar& u1, const Scalar& u2) {
  const Scalar& l2 = roots.lambda2();
  const Scalar l3_sq = roots.lambda3() * roots.lambda3();
  const Scalar outer = l3_sq * (l2 * l2 * u0 - u2);
  const Scalar inner = l3_sq * (l2 * u0 - u1) + l2 * (l2 * u1 - u2);
  // outer = lambda3^2 (lambda3^2 - lambda2^2) (-(c1 + c3)), so a zero
  // numerator of L1 is exactly the zero denominator of L2.
  ExplicitLimits out;
  if (!inner.is_zero()) out.L1 = outer / inner;
  if (!outer.is_zero()) out.L2 = inner / (l2 * l2 * u0 - u2);
  return out;
}

LimitReport analytic_limits(const DegenerateRoots& roots, const Scalar& u0,
                            const Scalar& u1, const Scalar& u2, const Tolerance& tol) {
  const BinetCoefficients c = solve_coefficients(roots, u0, u1, u2, tol);
  const Scalar& l3 = roots.lambda3();
  const Scalar scale = coefficient_scale(c);
  const Scalar sum = c.c1 + c.c3;
  const Scalar difference = c.c3 - c.c1;

  LimitReport report;
  report.lambda3_squared = l3 * l3;
  report.regime = regime_of(c, tol);
  if (!negligible(difference, scale, tol)) report.L1 = l3 * sum / difference;
  if (!negligible(sum, scale, tol)) report.L2 = l3 * difference / sum;
  report.gamma = gamma_of(c, tol);
  if (report.gamma) report.gamma_squared = *report.gamma * *report.gamma;

  switch (report.regime) {
    case Regime::convergent_minus:
      report.ratio_limit = roots.lambda1();
      break;
    case Regime::convergent_plus:
      report.ratio_limit = l3;
      break;
    case Regime::geometric_lambda2:
      report.ratio_limit = roots.lambda2();
      break;
    default:
      break;
  }

  if (roots.backend() == Backend::exact) {
    const ExplicitLimits check = explicit_parity_limits(roots, u0, u1, u2);
    if (check.L1 != report.L1 || check.L2 != report.L2) {
      throw std::logic_error("parity limits from c and from u disagree");
    }
  }
  return report;
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Yields (n, U_{n-2}, U_{n-1}, U_n) for n = 1..n_max on a common scale
/// (U_{-1} is NaN). Rescaling is by powers of two and so loses nothing.
template <typename Visit>
void walk_window(const RecurrenceSpec& spec, std::size_t n_max, Visit&& visit) {
  const double a1 = spec.a1.to_double();
  const double a2 = spec.a2.to_double();
  const double a3 = spec.a3.to_double();
  double w0 = kNaN;
  double w1 = spec.u0.to_double();
  double w2 = spec.u1.to_double();
  visit(std::size_t{1}, w0, w1, w2);
  w0 = w1;
  w1 = w2;
  w2 = spec.u2.to_double();
  for (std::size_t n = 2; n <= n_max; ++n) {
    if (n > 2) {
      const double next = a1 * w2 + a2 * w1 + a3 * w0;
      w0 = w1;
      w1 = w2;
      w2 = next;
    }
    const double largest = std::max({std::fabs(w0), std::fabs(w1), std::fabs(w2)});
    if (largest > 0 && std::isfinite(largest)) {
      int exponent = 0;
      std::frexp(largest, &exponent);
      w0 = std::ldexp(w0, -exponent);
      w1 = std::ldexp(w1, -exponent);
      w2 = std::ldexp(w2, -exponent);
    }
    visit(n, w0, w1, w2);
  }
}

struct Sample {
  std::size_t n;
  double value;
};

struct Series {
  std::vector<Sample> samples;
  std::vector<std::size_t> skipped;
};

/// Collects ratio(prev2, prev1, cur) for n in [first, n_max]; the ratio
/// returns nullopt when its denominator is zero.
template <typename Ratio>
Series collect(const RecurrenceSpec& spec, std::size_t n_max, std::size_t first,
               Ratio&& ratio) {
  if (spec.backend() != Backend::floating) {
    throw std::invalid_argument("empirical estimators need a float-backend spec");
  }
  check_backend(spec);
  if (n_max < 8) {
    throw std::invalid_argument("n_max must be at least 8, got " + std::to_string(n_max));
  }
  Series series;
  walk_window(spec, n_max, [&](std::size_t n, double w0, double w1, double w2) {
    if (n < first) return;
    if (auto r = ratio(w0, w1, w2)) {
      series.samples.push_back({n, *r});
    } else {
      series.skipped.push_back(n);
    }
  });
  const std::size_t tail_start = n_max - 5;
  const bool tail_defined =
      std::any_of(series.samples.begin(), series.samples.end(),
                  [&](const Sample& s) { return s.n >= tail_start; });
  if (!tail_defined) throw VanishingSequence();
  return series;
}

bool agree(double a, double b, const Tolerance& tol) {
  return approx_eq(Scalar(a), Scalar(b), tol);
}

/// Newest sample, optionally restricted to even n; converged when it agrees
/// with the previous eligible sample.
EmpiricalEstimate last_value(Series series, const Tolerance& tol, bool even_only) {
  std::vector<double> recent;
  for (auto it = series.samples.rbegin(); it != series.samples.rend() && recent.size() < 2;
       ++it) {
    if (!even_only || it->n % 2 == 0) recent.push_back(it->value);
  }
  if (recent.empty()) throw VanishingSequence();
  EmpiricalEstimate out{Scalar(recent.front()), false, std::move(series.skipped)};
  out.converged = recent.size() == 2 && agree(recent[0], recent[1], tol);
  return out;
}

}  // namespace

ParityEstimates empirical_parity_limits(const RecurrenceSpec& spec, std::size_t n_max,
                                        const Tolerance& tol) {
  Series series = collect(spec, n_max, 1, [](double, double prev, double cur) {
    return prev == 0.0 ? std::nullopt : std::optional<double>(cur / prev);
  });

  // Most recent two samples of each parity, newest first.
  std::array<std::vector<double>, 2> latest;
  for (auto it = series.samples.rbegin(); it != series.samples.rend(); ++it) {
    auto& bucket = latest[it->n % 2];
    if (bucket.size() < 2) bucket.push_back(it->value);
  }

  ParityEstimates out;
  if (!latest[0].empty()) out.even = Scalar(latest[0].front());
  if (!latest[1].empty()) out.odd = Scalar(latest[1].front());
  out.converged = std::all_of(latest.begin(), latest.end(), [&](const auto& bucket) {
    return bucket.size() == 2 && agree(bucket[0], bucket[1], tol);
  });
  out.skipped = std::move(series.skipped);
  return out;
}

EmpiricalEstimate empirical_two_step_limit(const RecurrenceSpec& spec,
                                           std::size_t n_max, const Tolerance& tol) {
  return last_value(collect(spec, n_max, 2,
                            [](double prev2, double, double cur) {
                              return prev2 == 0.0 ? std::nullopt
                                                  : std::optional<double>(cur / prev2);
                            }),
                    tol, false);
}

EmpiricalEstimate empirical_gamma_squared(const RecurrenceSpec& spec, std::size_t n_max,
                                          const Tolerance& tol) {
  return last_value(collect(spec, n_max, 2,
                            [](double prev2, double prev, double cur) {
                              return prev == 0.0
                                         ? std::nullopt
                                         : std::optional<double>(cur * prev2 / (prev * prev));
                            }),
                    tol, true);
}

}  // namespace degrec

#include "degrec/recurrence.hpp"

#include <algorithm>
#include <cmath>

namespace degrec {

DegenerateRoots::DegenerateRoots(Scalar lambda2, Scalar lambda3, bool reduced_order)
    : lambda2_(std::move(lambda2)),
      lambda3_(std::move(lambda3)),
      reduced_order_(reduced_order) {}

DegenerateRoots DegenerateRoots::make(Scalar lambda2, Scalar lambda3) {
  if (lambda2.backend() != lambda3.backend()) throw BackendMismatch();
  if (lambda3.sign() <= 0) {
    throw InvalidRoots("lambda3 must be positive, got " + render(lambda3));
  }
  if (!(-lambda3 < lambda2 && lambda2 < lambda3)) {
    throw InvalidRoots("lambda2 must lie strictly between -lambda3 and lambda3, got " +
                       render(lambda2) + " with lambda3 = " + render(lambda3));
  }
  if (lambda2.is_zero()) {
    throw InvalidRoots("lambda2 = 0 reduces the recurrence to order two");
  }
  return DegenerateRoots(std::move(lambda2), std::move(lambda3), false);
}

DegenerateRoots DegenerateRoots::reduced_order(Scalar lambda3) {
  if (lambda3.sign() <= 0) {
    throw InvalidRoots("lambda3 must be positive, got " + render(lambda3));
  }
  Scalar zero = Scalar::zero(lambda3.backend());
  return DegenerateRoots(std::move(zero), std::move(lambda3), true);
}

DegenerateRoots DegenerateRoots::on(Backend backend) const {
  return DegenerateRoots(lambda2_.on(backend), lambda3_.on(backend), reduced_order_);
}

void check_backend(const RecurrenceSpec& spec) {
  const Backend b = spec.a1.backend();
  for (const Scalar* s : {&spec.a2, &spec.a3, &spec.u0, &spec.u1, &spec.u2}) {
    if (s->backend() != b) throw BackendMismatch();
  }
}

RecurrenceSpec to_floating(const RecurrenceSpec& spec) {
  const auto f = [](const Scalar& s) { return s.on(Backend::floating); };
  return {f(spec.a1), f(spec.a2), f(spec.a3), f(spec.u0), f(spec.u1), f(spec.u2)};
}

RecurrenceSpec make_degenerate_spec(const DegenerateRoots& roots, Scalar u0,
                                    Scalar u1, Scalar u2) {
  if (roots.is_reduced_order()) {
    throw InvalidRoots("lambda2 = 0 reduces the recurrence to order two");
  }
  const Scalar& l2 = roots.lambda2();
  const Scalar l3_sq = roots.lambda3() * roots.lambda3();
  RecurrenceSpec spec{l2, l3_sq, -(l2 * l3_sq), std::move(u0), std::move(u1),
                      std::move(u2)};
  check_backend(spec);
  return spec;
}

std::array<Scalar, 4> characteristic_polynomial(const Coefficients& a) {
  return {Scalar::one(a.a1.backend()), -a.a1, -a.a2, -a.a3};
}

std::string_view to_string(ClassificationTag tag) {
  switch (tag) {
    case ClassificationTag::degenerated:
      return "Degenerated";
    case ClassificationTag::degenerated_reduced_order:
      return "DegeneratedReducedOrder";
    case ClassificationTag::repeated_magnitude_boundary:
      return "RepeatedMagnitudeBoundary";
    case ClassificationTag::not_degenerated:
      return "NotDegenerated";
  }
  return "NotDegenerated";
}

Classification classify(const Scalar& a1, const Scalar& a2, const Scalar& a3,
                        const Tolerance& tol) {
  if (a1.backend() != a2.backend() || a1.backend() != a3.backend()) {
    throw BackendMismatch();
  }
  const Backend backend = a1.backend();
  const auto rejected = [](std::string reason) {
    return Classification{ClassificationTag::not_degenerated, std::nullopt,
                          std::move(reason)};
  };

  if (!approx_eq(a3, -(a1 * a2), tol)) return rejected("a3 ≠ −a1·a2");
  if (a2.sign() <= 0) return rejected("a2 ≤ 0: roots ±√a2 are not real and simple");

  std::optional<Scalar> lambda3;
  if (backend == Backend::exact) {
    if (auto root = exact_sqrt(a2.rational())) lambda3 = Scalar(*root);
  } else {
    lambda3 = Scalar(std::sqrt(a2.to_double()));
  }

  if (lambda3 ? negligible(a1, *lambda3, tol) : a1.is_zero()) {
    Classification out{ClassificationTag::degenerated_reduced_order, std::nullopt,
                       "a1 = a3 = 0: lambda2 = 0, the sequence has order two"};
    if (lambda3) {
      out.roots = DegenerateRoots::reduced_order(*lambda3);
    } else {
      out.reason += "; irrational dominant root";
    }
    return out;
  }

  const Scalar a1_sq = a1 * a1;
  if (approx_eq(a1_sq, a2, tol)) {
    return {ClassificationTag::repeated_magnitude_boundary, std::nullopt,
            "a1² = a2: lambda2 coincides with ±lambda3, roots are not simple"};
  }
  if (a1_sq > a2) {
    return rejected("a1² > a2: lambda2 lies outside (−lambda3, lambda3)");
  }
  if (!lambda3) return rejected("irrational dominant root");

  return {ClassificationTag::degenerated, DegenerateRoots::make(a1, *lambda3), ""};
}

TermSequence iterate_terms(const RecurrenceSpec& spec, std::size_t n_max) {
  check_backend(spec);
  TermSequence out;
  out.terms.reserve(n_max + 1);
  for (const Scalar* u : {&spec.u0, &spec.u1, &spec.u2}) {
    if (out.terms.size() > n_max) break;
    out.terms.push_back(*u);
  }
  auto& t = out.terms;
  for (std::size_t n = 3; n <= n_max; ++n) {
    t.push_back(spec.a1 * t[n - 1] + spec.a2 * t[n - 2] + spec.a3 * t[n - 3]);
  }
  for (std::size_t n = 0; n < t.size(); ++n) {
    if (!t[n].is_finite()) {
      out.first_overflow = n;
      break;
    }
  }
  return out;
}

namespace {

Scalar det3(const std::array<std::array<Scalar, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace

FitResult fit_coefficients(std::span<const Scalar> terms, const Tolerance& tol) {
  FitResult out;
  if (terms.size() < 6) {
    out.status = FitStatus::too_few_terms;
    out.message = "at least 6 terms are required, got " + std::to_string(terms.size());
    return out;
  }
  const Backend backend = terms.front().backend();
  for (const Scalar& t : terms) {
    if (t.backend() != backend) throw BackendMismatch();
  }

  // Row k: U_{k+2} a1 + U_{k+1} a2 + U_k a3 = U_{k+3}
  using Grid = std::array<std::array<Scalar, 3>, 3>;
  Grid m;
  std::array<Scalar, 3> rhs;
  for (std::size_t k = 0; k < 3; ++k) {
    m[k] = {terms[k + 2], terms[k + 1], terms[k]};
    rhs[k] = terms[k + 3];
  }
  const Scalar det = det3(m);

  Scalar scale = Scalar::one(backend);
  if (backend == Backend::floating) {
    double s = 1.0;
    for (const auto& row : m) {
      double norm = 0.0;
      for (const auto& v : row) norm = std::hypot(norm, v.to_double());
      s *= norm;
    }
    scale = Scalar(s);
  }
  if (negligible(det, scale, tol)) {
    out.status = FitStatus::singular;
    out.message = "sequence does not determine a unique order-3 recurrence";
    return out;
  }

  std::array<Scalar, 3> solution;
  for (std::size_t col = 0; col < 3; ++col) {
    Grid replaced = m;
    for (std::size_t row = 0; row < 3; ++row) replaced[row][col] = rhs[row];
    solution[col] = det3(replaced) / det;
  }
  const Coefficients fitted{solution[0], solution[1], solution[2]};

  for (std::size_t n = 3; n < terms.size(); ++n) {
    const Scalar predicted =
        fitted.a1 * terms[n - 1] + fitted.a2 * terms[n - 2] + fitted.a3 * terms[n - 3];
    if (!approx_eq(predicted, terms[n], tol)) {
      out.status = FitStatus::mismatch;
      out.mismatch_index = n;
      out.message = "fitted recurrence predicts " + render(predicted) + " at index " +
                    std::to_string(n) + ", term is " + render(terms[n]);
      return out;
    }
  }
  out.coefficients = fitted;
  return out;
}

}  // namespace degrec

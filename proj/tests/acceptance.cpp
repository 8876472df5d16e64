// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include "degrec/binet.hpp"
#include "degrec/convergence.hpp"
#include "degrec/limits.hpp"
#include "degrec/recurrence.hpp"
#include "test_support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace degrec;
using namespace degrec::testing;

namespace {

constexpr std::uint64_t kSeed = 20240601;
constexpr std::size_t kExactInstances = 200;
constexpr unsigned kMaxBinetIndex = 64;
constexpr double kMaxRuntimeSeconds = 5.0;
constexpr std::size_t kFloatRootPairs = 50;
constexpr std::size_t kInitialConditionsPerPair = 10;
constexpr std::size_t kEmpiricalN = 200;
constexpr double kRatioBound = 0.9;
constexpr double kLimitTolerance = 1e-8;
constexpr double kGammaSquaredTolerance = 1e-6;
constexpr double kWitnessGap = 0.1;
constexpr std::size_t kFixerInstances = 100;
constexpr std::size_t kFitN = 12;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

struct FloatCase {
  Instance exact;
  LimitReport analytic;
  RecurrenceSpec spec;  // float backend
};

double as_double(const Scalar& s) { return s.to_double(); }

bool within(double estimate, double truth, double rel) {
  return relative_error(estimate, truth) <= rel;
}

const std::vector<Instance>& instances() {
  static const std::vector<Instance> set = exact_instances(kExactInstances, kSeed);
  return set;
}

/// Root pairs of the exact set with |lambda2| / lambda3 <= 0.9, each paired
/// with ten fresh initial conditions. Instances where L1 or L2 is undefined
/// (c1 = +-c3) are replaced, since the identities presuppose both limits.
const std::vector<FloatCase>& float_cases() {
  static const std::vector<FloatCase> cases = [] {
    std::vector<FloatCase> out;
    RationalGen gen(kSeed + 1);
    std::size_t pairs = 0;
    for (const Instance& base : instances()) {
      if (pairs == kFloatRootPairs) break;
      if (abs(base.lambda2) > kRatioBound * base.lambda3) continue;
      ++pairs;
      const auto roots = roots_of(base);
      std::size_t taken = 0;
      while (taken < kInitialConditionsPerPair) {
        const Instance inst{base.lambda2, base.lambda3, gen.initial()};
        LimitReport report = analytic_limits(roots, q(inst.u[0]), q(inst.u[1]), q(inst.u[2]));
        if (!report.L1 || !report.L2) continue;
        ++taken;
        out.push_back({inst, std::move(report), to_floating(spec_of(inst))});
      }
    }
    return out;
  }();
  return cases;
}

std::size_t distinct_pairs(const std::vector<FloatCase>& cases) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    if (i == 0 || cases[i].exact.lambda2 != cases[i - 1].exact.lambda2 ||
        cases[i].exact.lambda3 != cases[i - 1].exact.lambda3) {
      ++n;
    }
  }
  return n;
}

Outcome binet_oracle_equivalence() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  for (const Instance& inst : instances()) {
    const auto roots = roots_of(inst);
    const auto c = solve_coefficients(roots, q(inst.u[0]), q(inst.u[1]), q(inst.u[2]));
    const auto terms = iterate_terms(spec_of(inst), kMaxBinetIndex).terms;
    for (unsigned n = 0; n <= kMaxBinetIndex; ++n) {
      if (binet_eval(roots, c, n) != terms[n]) {
        o.fail("mismatch at n = " + std::to_string(n));
      }
    }
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (seconds >= kMaxRuntimeSeconds) o.fail("runtime " + std::to_string(seconds) + " s");
  if (o.pass) {
    o.detail = std::to_string(instances().size()) + " instances x 65 terms, " +
               std::to_string(seconds) + " s";
  }
  return o;
}

Outcome inverse_correctness() {
  Outcome o;
  for (const Instance& inst : instances()) {
    const auto roots = roots_of(inst);
    if (coefficient_matrix(roots) * invert_coefficient_matrix(roots) !=
        CoefficientMatrix::identity(Backend::exact)) {
      o.fail("A A^-1 != I for lambda2 = " + inst.lambda2.get_str() +
             ", lambda3 = " + inst.lambda3.get_str());
    }
  }
  if (o.pass) o.detail = std::to_string(instances().size()) + " instances";
  return o;
}

Outcome explicit_form_agreement() {
  Outcome o;
  std::size_t compared = 0;
  for (const Instance& inst : instances()) {
    const auto roots = roots_of(inst);
    const Scalar u0 = q(inst.u[0]), u1 = q(inst.u[1]), u2 = q(inst.u[2]);
    const auto c = solve_coefficients(roots, u0, u1, u2);
    const Scalar sum = c.c1 + c.c3;
    const Scalar diff = c.c3 - c.c1;
    const auto e = explicit_parity_limits(roots, u0, u1, u2);
    if (sum.is_zero() || diff.is_zero()) continue;
    ++compared;
    const Scalar& l3 = roots.lambda3();
    if (!e.L1 || !e.L2 || *e.L1 != l3 * sum / diff || *e.L2 != l3 * diff / sum) {
      o.fail("explicit and coefficient forms differ");
    }
  }
  if (compared == 0) o.fail("no comparable instances");
  if (o.pass) o.detail = std::to_string(compared) + " instances";
  return o;
}

Outcome product_identity() {
  Outcome o;
  std::size_t exact_checked = 0;
  for (const Instance& inst : instances()) {
    const auto spec = spec_of(inst);
    const auto r = analytic_limits(roots_of(inst), spec.u0, spec.u1, spec.u2);
    if (!r.L1 || !r.L2) continue;
    ++exact_checked;
    if (*r.L1 * *r.L2 != r.lambda3_squared || r.lambda3_squared != spec.a2) {
      o.fail("L1 L2 != lambda3^2");
    }
  }

  const auto& cases = float_cases();
  double worst = 0.0;
  for (const FloatCase& fc : cases) {
    const double truth = as_double(q(fc.exact.lambda3 * fc.exact.lambda3));
    const double est = as_double(empirical_two_step_limit(fc.spec, kEmpiricalN).value);
    worst = std::max(worst, relative_error(est, truth));
    if (!within(est, truth, kLimitTolerance)) o.fail("two-step estimate off by " +
                                                     std::to_string(relative_error(est, truth)));
  }
  if (distinct_pairs(cases) < kFloatRootPairs) o.fail("too few root pairs");
  if (o.pass) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "%zu exact; %zu root pairs x %zu u, worst rel err %.2e", exact_checked,
                  distinct_pairs(cases), kInitialConditionsPerPair, worst);
    o.detail = buf;
  }
  return o;
}

Outcome ratio_identity() {
  Outcome o;
  double worst = 0.0;
  for (const FloatCase& fc : float_cases()) {
    const double truth = as_double(*fc.analytic.gamma_squared);
    const double est = as_double(empirical_gamma_squared(fc.spec, kEmpiricalN).value);
    worst = std::max(worst, relative_error(est, truth));
    if (!within(est, truth, kGammaSquaredTolerance)) o.fail("gamma^2 estimate off");
  }

  // Witness: same roots (1, 2), different initial conditions.
  const auto roots = DegenerateRoots::make(q(1), q(2));
  const auto a = make_degenerate_spec(roots, q(0), q(1), q(2));
  const auto b = make_degenerate_spec(roots, q(7), q(-3), q(1));
  const double ga = as_double(empirical_gamma_squared(to_floating(a), kEmpiricalN).value);
  const double gb = as_double(empirical_gamma_squared(to_floating(b), kEmpiricalN).value);
  if (!(std::fabs(ga - gb) > kWitnessGap)) o.fail("witness pair too close");
  if (o.pass) {
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "%zu cases, worst rel err %.2e; witness u=(0,1,2) -> %.6f, u=(7,-3,1) -> %.6f",
                  float_cases().size(), worst, ga, gb);
    o.detail = buf;
  }
  return o;
}

Outcome parity_limits() {
  Outcome o;
  double worst = 0.0;
  std::size_t checked = 0;
  for (const FloatCase& fc : float_cases()) {
    if (fc.analytic.regime != Regime::parity_oscillating) continue;
    ++checked;
    const auto p = empirical_parity_limits(fc.spec, kEmpiricalN);
    if (!p.even || !p.odd) {
      o.fail("missing parity estimate");
      continue;
    }
    const double l1 = as_double(*fc.analytic.L1);
    const double l2 = as_double(*fc.analytic.L2);
    worst = std::max({worst, relative_error(as_double(*p.even), l1),
                      relative_error(as_double(*p.odd), l2)});
    if (!within(as_double(*p.even), l1, kLimitTolerance) ||
        !within(as_double(*p.odd), l2, kLimitTolerance)) {
      o.fail("parity estimate off");
    }
  }
  if (checked == 0) o.fail("no ParityOscillating cases");
  if (o.pass) {
    char buf[120];
    std::snprintf(buf, sizeof buf, "%zu cases, worst rel err %.2e", checked, worst);
    o.detail = buf;
  }
  return o;
}

Outcome convergence_fixer() {
  Outcome o;
  RationalGen gen(kSeed + 2);
  std::size_t done = 0;
  double worst = 0.0;
  while (done < kFixerInstances) {
    auto [l2, l3] = gen.roots();
    if (abs(l2) > kRatioBound * l3) continue;
    const Rational u0 = gen.in_range(-10, 10);
    const Rational u1 = gen.in_range(-10, 10);
    if (u1 == l2 * u0) continue;
    ++done;
    const auto roots = DegenerateRoots::make(q(l2), q(l3));
    const auto s = u2_solutions(roots, q(u0), q(u1));

    const auto first = solve_coefficients(roots, q(u0), q(u1), s.u2_first);
    const auto second = solve_coefficients(roots, q(u0), q(u1), s.u2_second);
    if (!first.c3.is_zero()) o.fail("first branch leaves c3 != 0");
    if (!second.c1.is_zero()) o.fail("second branch leaves c1 != 0");

    for (const Scalar* u2 : {&s.u2_first, &s.u2_second}) {
      if (!parity_gap(roots, q(u0), q(u1), *u2).is_zero()) o.fail("branch misses quadratic");
    }

    const std::pair<const Scalar*, double> branches[] = {
        {&s.u2_first, -as_double(q(l3))}, {&s.u2_second, as_double(q(l3))}};
    for (const auto& [u2, target] : branches) {
      const auto spec = to_floating(make_degenerate_spec(roots, q(u0), q(u1), *u2));
      const auto p = empirical_parity_limits(spec, kEmpiricalN);
      if (!p.even || !p.odd) {
        o.fail("missing parity estimate");
        continue;
      }
      const double even = as_double(*p.even), odd = as_double(*p.odd);
      worst = std::max({worst, relative_error(even, target), relative_error(odd, target)});
      if (!within(even, target, kLimitTolerance) || !within(odd, target, kLimitTolerance)) {
        o.fail("branch ratio does not reach the predicted limit");
      }
    }
  }
  if (o.pass) {
    char buf[120];
    std::snprintf(buf, sizeof buf, "%zu instances, worst rel err %.2e", done, worst);
    o.detail = buf;
  }
  return o;
}

Outcome degenerate_regimes() {
  Outcome o;
  RationalGen gen(kSeed + 3);
  for (int i = 0; i < 50; ++i) {
    auto [l2, l3] = gen.roots();
    Rational u0 = gen.in_range(-10, 10);
    if (u0 == 0) u0 = 1;
    const auto roots = DegenerateRoots::make(q(l2), q(l3));
    const Scalar u1 = q(l2) * q(u0);
    const Scalar u2 = q(l2) * q(l2) * q(u0);
    const auto r = analytic_limits(roots, q(u0), u1, u2);
    if (r.regime != Regime::geometric_lambda2) o.fail("coincident case not GeometricLambda2");
    if (converged_limit(roots, q(u0), u1, u2) != LimitKind::lambda2) {
      o.fail("coincident case limit not lambda2");
    }
    const auto terms = iterate_terms(make_degenerate_spec(roots, q(u0), u1, u2), 64).terms;
    for (std::size_t n = 1; n <= 64; ++n) {
      if (terms[n - 1].is_zero()) continue;
      if (terms[n] / terms[n - 1] != q(l2)) o.fail("ratio differs from lambda2");
    }
  }

  try {
    const auto roots = DegenerateRoots::make(q(1), q(2));
    const auto r = analytic_limits(roots, q(0), q(0), q(0));
    if (r.regime != Regime::zero_sequence) o.fail("zero sequence misreported");
    if (converged_limit(roots, q(0), q(0), q(0)) != LimitKind::zero_sequence) {
      o.fail("zero sequence limit misreported");
    }
  } catch (const std::exception& e) {
    o.fail(std::string("zero sequence threw: ") + e.what());
  }
  if (o.pass) o.detail = "50 coincident instances to n = 64; zero sequence";
  return o;
}

Outcome fit_round_trip() {
  Outcome o;
  std::size_t fitted = 0;
  std::size_t singular = 0;
  for (const Instance& inst : instances()) {
    const auto spec = spec_of(inst);
    const auto fit = fit_coefficients(iterate_terms(spec, kFitN).terms);
    if (fit.status == FitStatus::singular) {
      ++singular;
      continue;
    }
    if (!fit) {
      o.fail(fit.message);
      continue;
    }
    ++fitted;
    const Coefficients& a = *fit.coefficients;
    if (a.a1 != spec.a1 || a.a2 != spec.a2 || a.a3 != spec.a3) o.fail("coefficients differ");
  }
  if (fitted == 0) o.fail("no nonsingular instances");
  if (o.pass) {
    o.detail = std::to_string(fitted) + " recovered, " + std::to_string(singular) + " singular";
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "Binet closed form equals iteration (exact, n <= 64)", binet_oracle_equivalence},
      {2, "explicit inverse: A A^-1 = I (exact)", inverse_correctness},
      {3, "parity limits: coefficient form = initial-condition form", explicit_form_agreement},
      {4, "L1 L2 = lambda3^2 = a2; lim U_n/U_{n-2} = a2 (rel 1e-8)", product_identity},
      {5, "lim U_n U_{n-2}/U_{n-1}^2 = gamma^2 (rel 1e-6) + dependence witness", ratio_identity},
      {6, "even/odd ratio estimates = L1/L2 (rel 1e-8)", parity_limits},
      {7, "u2 branches: c3 = 0 / c1 = 0, ratios -> -+lambda3, quadratic", convergence_fixer},
      {8, "coincident case ratio = lambda2; zero sequence", degenerate_regimes},
      {9, "fit recovers (a1, a2, a3) from 13 terms", fit_round_trip},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::printf("[%s] %d. %s -- %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    if (!o.pass) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}

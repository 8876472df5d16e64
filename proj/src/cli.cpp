#include "degrec/cli.hpp"

#include "degrec/binet.hpp"
#include "degrec/convergence.hpp"
#include "degrec/limits.hpp"
#include "degrec/numerics.hpp"
#include "degrec/recurrence.hpp"
#include "degrec/serialize.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <istream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace degrec::cli {

namespace {

using nlohmann::json;

constexpr std::size_t kDefaultEmpiricalN = 200;

struct CommandError {
  int code;
  std::string message;
};

struct Options {
  std::optional<std::string> lambda2, lambda3;
  std::optional<std::string> a1, a2, a3;
  std::optional<std::string> u0, u1, u2;
  std::optional<std::string> backend;
  std::string format = "json";
  bool empirical = false;
  std::optional<std::size_t> n;
  std::optional<double> tol_rel, tol_abs;
  std::optional<std::string> file;
};

/// Explicit --backend wins; otherwise exact iff every input is an integer
/// or a p/q fraction.
Backend pick_backend(const Options& opt, const std::vector<std::string>& raw) {
  if (opt.backend) return *opt.backend == "exact" ? Backend::exact : Backend::floating;
  const bool rational = std::all_of(raw.begin(), raw.end(), is_rational_notation);
  return rational ? Backend::exact : Backend::floating;
}

Tolerance float_tolerance(const Options& opt) {
  Tolerance tol;
  if (opt.tol_rel) tol.relative = *opt.tol_rel;
  if (opt.tol_abs) tol.absolute = *opt.tol_abs;
  return tol;
}

Tolerance tolerance_for(Backend backend, const Options& opt) {
  return backend == Backend::exact ? Tolerance::exact() : float_tolerance(opt);
}

Scalar parse_or_fail(const std::string& name, const std::string& text, Backend backend) {
  try {
    return parse_scalar(text, backend);
  } catch (const ParseError& e) {
    throw CommandError{kMalformedInput, "--" + name + ": " + e.what()};
  }
}

void collect_raw(std::vector<std::string>& raw,
                 std::initializer_list<const std::optional<std::string>*> fields) {
  for (const auto* f : fields) {
    if (*f) raw.push_back(**f);
  }
}

struct Problem {
  Backend backend;
  Tolerance tol;
  Classification classification;
  DegenerateRoots roots;
  RecurrenceSpec spec;
};

/// Roots from --lambda2/--lambda3 directly, or by classifying --a1..--a3.
/// Leaves classification rejections to the caller via CommandError{2}.
Problem resolve_problem(const Options& opt, std::ostream& out) {
  const bool by_roots = opt.lambda2 || opt.lambda3;
  const bool by_coeffs = opt.a1 || opt.a2 || opt.a3;
  if (by_roots == by_coeffs) {
    throw CommandError{kMalformedInput,
                       "give either --lambda2/--lambda3 or --a1/--a2/--a3"};
  }
  if (by_roots && !(opt.lambda2 && opt.lambda3)) {
    throw CommandError{kMalformedInput, "--lambda2 and --lambda3 go together"};
  }
  if (by_coeffs && !(opt.a1 && opt.a2 && opt.a3)) {
    throw CommandError{kMalformedInput, "--a1, --a2 and --a3 go together"};
  }

  std::vector<std::string> raw;
  collect_raw(raw, {&opt.lambda2, &opt.lambda3, &opt.a1, &opt.a2, &opt.a3, &opt.u0,
                    &opt.u1, &opt.u2});
  const Backend backend = pick_backend(opt, raw);
  const Tolerance tol = tolerance_for(backend, opt);
  const Scalar u0 = parse_or_fail("u0", *opt.u0, backend);
  const Scalar u1 = parse_or_fail("u1", *opt.u1, backend);
  const Scalar u2 = parse_or_fail("u2", *opt.u2, backend);

  Classification classification;
  if (by_roots) {
    const Scalar l2 = parse_or_fail("lambda2", *opt.lambda2, backend);
    const Scalar l3 = parse_or_fail("lambda3", *opt.lambda3, backend);
    try {
      classification = {ClassificationTag::degenerated, DegenerateRoots::make(l2, l3), ""};
    } catch (const InvalidRoots& e) {
      throw CommandError{kClassificationRejected, e.what()};
    }
  } else {
    classification = classify(parse_or_fail("a1", *opt.a1, backend),
                              parse_or_fail("a2", *opt.a2, backend),
                              parse_or_fail("a3", *opt.a3, backend), tol);
    if (classification.tag != ClassificationTag::degenerated) {
      out << json{{"classification", classification}}.dump(2) << '\n';
      throw CommandError{kClassificationRejected, classification.reason};
    }
  }
  const DegenerateRoots roots = *classification.roots;
  RecurrenceSpec spec = make_degenerate_spec(roots, u0, u1, u2);
  return {backend, tol, std::move(classification), roots, std::move(spec)};
}

template <typename Estimate>
json estimate_or_error(Estimate&& estimate) {
  try {
    return estimate();
  } catch (const VanishingSequence& e) {
    return json{{"error", e.what()}};
  }
}

json empirical_section(const RecurrenceSpec& exact_or_float, std::size_t n_max,
                       const Tolerance& tol) {
  const RecurrenceSpec spec = to_floating(exact_or_float);
  json j;
  j["n_max"] = n_max;
  j["parity"] = estimate_or_error([&] {
    const ParityEstimates p = empirical_parity_limits(spec, n_max, tol);
    return json{{"even", p.even},
                {"odd", p.odd},
                {"converged", p.converged},
                {"skipped", p.skipped}};
  });
  const auto encode = [](const EmpiricalEstimate& e) {
    return json{{"value", e.value}, {"converged", e.converged}, {"skipped", e.skipped}};
  };
  j["two_step"] = estimate_or_error(
      [&] { return encode(empirical_two_step_limit(spec, n_max, tol)); });
  j["gamma_squared"] =
      estimate_or_error([&] { return encode(empirical_gamma_squared(spec, n_max, tol)); });
  return j;
}

json analysis_document(const Problem& p, const Options& opt) {
  const RecurrenceSpec& s = p.spec;
  json doc;
  doc["backend"] = to_string(p.backend);
  doc["classification"] = p.classification;
  doc["spec"] = s;
  doc["binet"] = solve_coefficients(p.roots, s.u0, s.u1, s.u2, p.tol);
  doc["limits"] = analytic_limits(p.roots, s.u0, s.u1, s.u2, p.tol);
  json convergence = u2_solutions(p.roots, s.u0, s.u1, p.tol);
  const LimitKind kind = converged_limit(p.roots, s.u0, s.u1, s.u2, p.tol);
  convergence["limit"] = to_string(kind);
  convergence["limit_value"] = limit_value(p.roots, kind);
  doc["convergence"] = std::move(convergence);

  if (p.backend == Backend::floating || opt.empirical) {
    const std::size_t n_max = opt.n.value_or(kDefaultEmpiricalN);
    if (n_max < 8) {
      throw CommandError{kMalformedInput, "--n must be at least 8 for limit estimates"};
    }
    doc["empirical"] = empirical_section(s, n_max, float_tolerance(opt));
  }
  return doc;
}

void flatten(const json& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      flatten(value, prefix.empty() ? key : prefix + "." + key, rows);
    }
  } else if (j.is_array()) {
    std::string joined;
    for (const auto& item : j) {
      if (!joined.empty()) joined += ' ';
      joined += item.is_string() ? item.get<std::string>() : item.dump();
    }
    rows.emplace_back(prefix, joined);
  } else if (j.is_string()) {
    rows.emplace_back(prefix, j.get<std::string>());
  } else {
    rows.emplace_back(prefix, j.dump());
  }
}

void emit(const json& doc, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << doc.dump(2) << '\n';
    return;
  }
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(doc, "", rows);
  if (format == "csv") {
    out << "key,value\n";
    for (const auto& [k, v] : rows) out << k << ',' << v << '\n';
    return;
  }
  std::size_t width = 0;
  for (const auto& row : rows) width = std::max(width, row.first.size());
  for (const auto& [k, v] : rows) {
    out << std::left << std::setw(static_cast<int>(width) + 2) << k << v << '\n';
  }
}

int cmd_analyze(const Options& opt, std::ostream& out) {
  const Problem p = resolve_problem(opt, out);
  emit(analysis_document(p, opt), opt.format, out);
  return kSuccess;
}

int cmd_terms(const Options& opt, std::ostream& out, std::ostream& err) {
  const Problem p = resolve_problem(opt, out);
  const TermSequence terms = iterate_terms(p.spec, *opt.n);
  if (terms.overflowed()) {
    err << "warning: terms overflow the float range from index " << *terms.first_overflow
        << '\n';
  }
  if (opt.format == "csv") {
    write_terms_csv(out, terms);
  } else if (opt.format == "table") {
    std::vector<std::string> values;
    std::size_t width = 3;  // "U_n"
    for (const Scalar& t : terms.terms) {
      values.push_back(render(t));
      width = std::max(width, values.back().size());
    }
    const int n_width = static_cast<int>(std::to_string(*opt.n).size());
    out << std::right << std::setw(n_width) << "n" << "  " << std::setw(static_cast<int>(width))
        << "U_n" << '\n';
    for (std::size_t n = 0; n < values.size(); ++n) {
      out << std::setw(n_width) << n << "  " << std::setw(static_cast<int>(width))
          << values[n] << '\n';
    }
  } else {
    json doc = terms;
    doc["backend"] = to_string(p.backend);
    doc["spec"] = p.spec;
    out << doc.dump(2) << '\n';
  }
  return kSuccess;
}

int cmd_fix(const Options& opt, std::ostream& out) {
  std::vector<std::string> raw;
  collect_raw(raw, {&opt.lambda2, &opt.lambda3, &opt.u0, &opt.u1});
  const Backend backend = pick_backend(opt, raw);
  const Tolerance tol = tolerance_for(backend, opt);
  const Scalar l2 = parse_or_fail("lambda2", *opt.lambda2, backend);
  const Scalar l3 = parse_or_fail("lambda3", *opt.lambda3, backend);
  const Scalar u0 = parse_or_fail("u0", *opt.u0, backend);
  const Scalar u1 = parse_or_fail("u1", *opt.u1, backend);
  std::optional<DegenerateRoots> roots;
  try {
    roots = DegenerateRoots::make(l2, l3);
  } catch (const InvalidRoots& e) {
    throw CommandError{kClassificationRejected, e.what()};
  }

  const ConvergenceSolutions s = u2_solutions(*roots, u0, u1, tol);
  const auto branch = [&](const Scalar& u2) {
    const LimitKind kind = converged_limit(*roots, u0, u1, u2, tol);
    return json{{"u2", u2}, {"limit", to_string(kind)}, {"limit_value", limit_value(*roots, kind)}};
  };
  json doc = s;
  doc["backend"] = to_string(backend);
  doc["first_branch"] = branch(s.u2_first);
  doc["second_branch"] = branch(s.u2_second);
  emit(doc, opt.format, out);
  return kSuccess;
}

std::string read_all(std::istream& in) {
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int cmd_fit(const Options& opt, std::istream& in, std::ostream& out) {
  std::string text;
  if (opt.file && *opt.file != "-") {
    std::ifstream file(*opt.file);
    if (!file) throw CommandError{kMalformedInput, "cannot open " + *opt.file};
    text = read_all(file);
  } else {
    text = read_all(in);
  }

  std::vector<std::string> raw;
  try {
    raw = split_terms(text);
  } catch (const ParseError& e) {
    throw CommandError{kMalformedInput, e.what()};
  }
  const Backend backend = pick_backend(opt, raw);
  const Tolerance tol = tolerance_for(backend, opt);
  std::vector<Scalar> terms;
  terms.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    terms.push_back(parse_or_fail("term[" + std::to_string(i) + "]", raw[i], backend));
  }

  const FitResult fit = fit_coefficients(terms, tol);
  if (fit.status == FitStatus::too_few_terms) {
    throw CommandError{kMalformedInput, fit.message};
  }
  if (!fit) {
    json failure{{"status", fit.status == FitStatus::singular ? "singular" : "mismatch"},
                 {"message", fit.message}};
    if (fit.mismatch_index) failure["mismatch_index"] = *fit.mismatch_index;
    out << json{{"fit", failure}}.dump(2) << '\n';
    throw CommandError{kFitFailed, fit.message};
  }

  const Coefficients& a = *fit.coefficients;
  Classification classification = classify(a.a1, a.a2, a.a3, tol);
  if (classification.tag != ClassificationTag::degenerated) {
    out << json{{"fit", a}, {"classification", classification}}.dump(2) << '\n';
    throw CommandError{kClassificationRejected, classification.reason};
  }
  const DegenerateRoots roots = *classification.roots;
  RecurrenceSpec spec = make_degenerate_spec(roots, terms[0], terms[1], terms[2]);
  const Problem p{backend, tol, std::move(classification), roots, std::move(spec)};
  json doc = analysis_document(p, opt);
  doc["fit"] = a;
  emit(doc, opt.format, out);
  return kSuccess;
}

void add_common(CLI::App& cmd, Options& opt) {
  cmd.add_option("--backend", opt.backend, "exact or float (default: exact when all inputs are integers or p/q)")
      ->check(CLI::IsMember({"exact", "float"}));
  cmd.add_option("--format", opt.format, "json, csv or table")
      ->check(CLI::IsMember({"json", "csv", "table"}));
  cmd.add_option("--tol-rel", opt.tol_rel, "relative tolerance (float backend)")
      ->check(CLI::NonNegativeNumber);
  cmd.add_option("--tol-abs", opt.tol_abs, "absolute tolerance (float backend)")
      ->check(CLI::NonNegativeNumber);
}

void add_spec_inputs(CLI::App& cmd, Options& opt) {
  cmd.add_option("--lambda2", opt.lambda2, "middle root");
  cmd.add_option("--lambda3", opt.lambda3, "dominant root (> 0)");
  cmd.add_option("--a1", opt.a1, "coefficient of U_{n-1}");
  cmd.add_option("--a2", opt.a2, "coefficient of U_{n-2}");
  cmd.add_option("--a3", opt.a3, "coefficient of U_{n-3}");
  cmd.add_option("--u0", opt.u0, "U_0")->required();
  cmd.add_option("--u1", opt.u1, "U_1")->required();
  cmd.add_option("--u2", opt.u2, "U_2")->required();
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Degenerated third-order linear recurrences: Binet form, parity limits, "
               "convergent initial conditions"};
  app.require_subcommand(1);
  Options opt;

  auto* analyze = app.add_subcommand("analyze", "full analysis of one recurrence");
  add_spec_inputs(*analyze, opt);
  add_common(*analyze, opt);
  analyze->add_flag("--empirical", opt.empirical, "add float estimates on the exact backend");
  analyze->add_option("--n", opt.n, "n_max for empirical estimates (default 200)");

  auto* terms = app.add_subcommand("terms", "list U_0..U_n");
  add_spec_inputs(*terms, opt);
  add_common(*terms, opt);
  terms->add_option("--n", opt.n, "last index")->required();

  auto* fix = app.add_subcommand("fix", "initial values u2 that make the ratio converge");
  fix->add_option("--lambda2", opt.lambda2, "middle root")->required();
  fix->add_option("--lambda3", opt.lambda3, "dominant root (> 0)")->required();
  fix->add_option("--u0", opt.u0, "U_0")->required();
  fix->add_option("--u1", opt.u1, "U_1")->required();
  add_common(*fix, opt);

  auto* fit = app.add_subcommand("fit", "recover (a1, a2, a3) from terms, then analyze");
  fit->add_option("file", opt.file, "terms file (default: stdin)");
  add_common(*fit, opt);
  fit->add_flag("--empirical", opt.empirical, "add float estimates on the exact backend");
  fit->add_option("--n", opt.n, "n_max for empirical estimates (default 200)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kMalformedInput;
  }

  try {
    if (*analyze) return cmd_analyze(opt, out);
    if (*terms) return cmd_terms(opt, out, err);
    if (*fix) return cmd_fix(opt, out);
    return cmd_fit(opt, in, out);
  } catch (const CommandError& e) {
    err << "error: " << e.message << '\n';
    return e.code;
  }
}

}  // namespace degrec::cli

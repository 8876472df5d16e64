#pragma once

#include "degrec/binet.hpp"
#include "degrec/convergence.hpp"
#include "degrec/limits.hpp"
#include "degrec/numerics.hpp"
#include "degrec/recurrence.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

namespace degrec {

// JSON encodings. Scalars are strings in the render() format; absent
// optionals become null.

void to_json(nlohmann::json& j, const Scalar& s);
void to_json(nlohmann::json& j, const std::optional<Scalar>& s);
void to_json(nlohmann::json& j, const DegenerateRoots& roots);
void to_json(nlohmann::json& j, const RecurrenceSpec& spec);
void to_json(nlohmann::json& j, const Coefficients& a);
void to_json(nlohmann::json& j, const Classification& c);
void to_json(nlohmann::json& j, const BinetCoefficients& c);
void to_json(nlohmann::json& j, const LimitReport& report);
void to_json(nlohmann::json& j, const ConvergenceSolutions& s);
void to_json(nlohmann::json& j, const TermSequence& terms);

/// "n,value" header followed by one row per term.
void write_terms_csv(std::ostream& out, const TermSequence& terms);

/// Raw scalar tokens from fit input. Accepts a JSON array (or an object
/// with a "terms" array), "n,value" CSV as written by write_terms_csv, or
/// scalars separated by commas and/or whitespace.
std::vector<std::string> split_terms(std::string_view text);

}  // namespace degrec

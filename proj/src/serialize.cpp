#include "degrec/serialize.hpp"

#include <cctype>
#include <ostream>
#include <sstream>
#include <string>

namespace degrec {

using nlohmann::json;

void to_json(json& j, const Scalar& s) { j = render(s); }

void to_json(json& j, const std::optional<Scalar>& s) {
  if (s) {
    j = render(*s);
  } else {
    j = nullptr;
  }
}

void to_json(json& j, const DegenerateRoots& roots) {
  j = json{{"lambda1", roots.lambda1()},
           {"lambda2", roots.lambda2()},
           {"lambda3", roots.lambda3()},
           {"reduced_order", roots.is_reduced_order()}};
}

void to_json(json& j, const RecurrenceSpec& spec) {
  j = json{{"a1", spec.a1}, {"a2", spec.a2}, {"a3", spec.a3},
           {"u0", spec.u0}, {"u1", spec.u1}, {"u2", spec.u2}};
}

void to_json(json& j, const Coefficients& a) {
  j = json{{"a1", a.a1}, {"a2", a.a2}, {"a3", a.a3}};
}

void to_json(json& j, const Classification& c) {
  j = json{{"tag", to_string(c.tag)}, {"reason", c.reason}};
  if (c.roots) {
    j["roots"] = *c.roots;
  } else {
    j["roots"] = nullptr;
  }
}

void to_json(json& j, const BinetCoefficients& c) {
  j = json{{"c1", c.c1}, {"c2", c.c2}, {"c3", c.c3}};
}

void to_json(json& j, const LimitReport& r) {
  j = json{{"L1", r.L1},
           {"L2", r.L2},
           {"gamma", r.gamma},
           {"lambda3_squared", r.lambda3_squared},
           {"gamma_squared", r.gamma_squared},
           {"regime", to_string(r.regime)},
           {"ratio_limit", r.ratio_limit}};
}

void to_json(json& j, const ConvergenceSolutions& s) {
  j = json{{"u2_first", s.u2_first},
           {"u2_second", s.u2_second},
           {"coincident", s.coincident}};
}

void to_json(json& j, const TermSequence& terms) {
  j = json{{"terms", terms.terms}, {"overflow", terms.overflowed()}};
  if (terms.first_overflow) j["first_overflow"] = *terms.first_overflow;
}

void write_terms_csv(std::ostream& out, const TermSequence& terms) {
  out << "n,value\n";
  for (std::size_t n = 0; n < terms.terms.size(); ++n) {
    out << n << ',' << render(terms.terms[n]) << '\n';
  }
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string> from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON terms: ") + e.what());
  }
  if (doc.is_object() && doc.contains("terms")) doc = doc["terms"];
  if (!doc.is_array()) throw ParseError("JSON terms must be an array");
  std::vector<std::string> out;
  for (const auto& item : doc) {
    if (item.is_string()) {
      out.push_back(item.get<std::string>());
    } else if (item.is_number()) {
      out.push_back(item.dump());
    } else {
      throw ParseError("JSON terms must be strings or numbers");
    }
  }
  return out;
}

}  // namespace

std::vector<std::string> split_terms(std::string_view text) {
  text = trim(text);
  if (!text.empty() && (text.front() == '[' || text.front() == '{')) {
    return from_json(text);
  }

  std::vector<std::string> out;
  std::istringstream lines{std::string(text)};
  std::string line;
  bool csv_rows = false;
  bool first = true;
  while (std::getline(lines, line)) {
    const std::string_view row = trim(line);
    if (row.empty()) continue;
    if (first && row == "n,value") {
      csv_rows = true;
      first = false;
      continue;
    }
    first = false;
    if (csv_rows) {
      const auto comma = row.find(',');
      if (comma == std::string_view::npos) {
        throw ParseError("expected 'n,value' row, got '" + std::string(row) + "'");
      }
      out.emplace_back(trim(row.substr(comma + 1)));
      continue;
    }
    std::size_t pos = 0;
    while (pos <= row.size()) {
      std::size_t end = row.find_first_of(", \t", pos);
      if (end == std::string_view::npos) end = row.size();
      const std::string_view token = trim(row.substr(pos, end - pos));
      if (!token.empty()) out.emplace_back(token);
      pos = end + 1;
    }
  }
  return out;
}

}  // namespace degrec

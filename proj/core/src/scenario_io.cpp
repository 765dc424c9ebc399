#include "ncineq/scenario_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace ncineq {

namespace {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

// Maps a byte offset reported by the JSON parser to a 1-based line/column.
std::pair<int, int> offset_to_line_column(const std::string& text,
                                          size_t offset) {
  int line = 1, column = 1;
  for (size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

const json& expect_present(const json& node, const char* key) {
  if (!node.contains(key)) {
    throw ParseError(std::string("missing field '") + key + "'");
  }
  return node.at(key);
}

const json& expect(const json& node, const char* key, json::value_t type,
                   const char* type_name) {
  const json& value = expect_present(node, key);
  if (value.type() != type) {
    throw ParseError(std::string("field '") + key + "' must be " + type_name);
  }
  return value;
}

int expect_int(const json& node, const std::string& where) {
  if (!node.is_number_integer()) {
    throw ParseError(where + " must be an integer");
  }
  return node.get<int>();
}

std::string expect_string(const json& node, const std::string& where) {
  if (!node.is_string()) {
    throw ParseError(where + " must be a string");
  }
  return node.get<std::string>();
}

Rat parse_fraction_at(const json& node, const std::string& where) {
  try {
    return parse_fraction(expect_string(node, where));
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what());
  }
}

}  // namespace

Scenario load_scenario(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    auto [line, column] = offset_to_line_column(json_text, e.byte);
    std::ostringstream msg;
    msg << "scenario JSON parse error at line " << line << ", column " << column
        << ": " << e.what();
    throw ParseError(msg.str(), line, column);
  }
  if (!doc.is_object()) {
    throw ParseError("scenario JSON must be an object");
  }

  Scenario s;

  const json& measurements =
      expect(doc, "measurements", json::value_t::array, "an array");
  for (size_t i = 0; i < measurements.size(); ++i) {
    const json& m = measurements[i];
    std::string where = "measurements[" + std::to_string(i) + "]";
    if (!m.is_object()) throw ParseError(where + " must be an object");
    Measurement out;
    out.id = expect_string(expect(m, "id", json::value_t::string, "a string"),
                           where + ".id");
    out.outcome_count = expect_int(expect_present(m, "outcomes"),
                                   where + ".outcomes");
    s.measurements.push_back(std::move(out));
  }

  const json& contexts =
      expect(doc, "contexts", json::value_t::array, "an array");
  for (size_t c = 0; c < contexts.size(); ++c) {
    const json& ctx = contexts[c];
    std::string where = "contexts[" + std::to_string(c) + "]";
    if (!ctx.is_array()) throw ParseError(where + " must be an array of ids");
    Context out;
    for (size_t j = 0; j < ctx.size(); ++j) {
      out.member_ids.push_back(
          expect_string(ctx[j], where + "[" + std::to_string(j) + "]"));
    }
    s.contexts.push_back(std::move(out));
  }

  const json& functional =
      expect(doc, "functional", json::value_t::object, "an object");
  s.functional.offset = parse_fraction_at(
      expect(functional, "offset", json::value_t::string, "a string"),
      "functional.offset");
  const json& terms =
      expect(functional, "terms", json::value_t::array, "an array");
  for (size_t t = 0; t < terms.size(); ++t) {
    const json& term = terms[t];
    std::string where = "functional.terms[" + std::to_string(t) + "]";
    if (!term.is_object()) throw ParseError(where + " must be an object");
    FunctionalTerm out;
    out.context_index =
        expect_int(expect_present(term, "context"), where + ".context");
    const json& outcome =
        expect(term, "outcome", json::value_t::array, "an array");
    for (size_t j = 0; j < outcome.size(); ++j) {
      out.outcomes.push_back(
          expect_int(outcome[j], where + ".outcome[" + std::to_string(j) + "]"));
    }
    out.coeff = parse_fraction_at(
        expect(term, "coeff", json::value_t::string, "a string"),
        where + ".coeff");
    s.functional.terms.push_back(std::move(out));
  }

  const json& pairing =
      expect(doc, "corr_pairing", json::value_t::array, "an array");
  for (size_t i = 0; i < pairing.size(); ++i) {
    s.corr_pairing.push_back(
        expect_string(pairing[i], "corr_pairing[" + std::to_string(i) + "]"));
  }

  std::vector<Violation> violations = validate(s);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << "invalid scenario:";
    for (const Violation& v : violations) {
      msg << "\n  [" << v.code << "] " << v.message;
    }
    throw ValidationError(msg.str(), std::move(violations));
  }
  return s;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open scenario file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_scenario(buf.str());
}

std::string serialize_scenario(const Scenario& s) {
  ordered doc;
  doc["measurements"] = ordered::array();
  for (const Measurement& m : s.measurements) {
    doc["measurements"].push_back(
        ordered{{"id", m.id}, {"outcomes", m.outcome_count}});
  }
  doc["contexts"] = ordered::array();
  for (const Context& ctx : s.contexts) {
    doc["contexts"].push_back(ctx.member_ids);
  }
  ordered terms = ordered::array();
  for (const FunctionalTerm& term : s.functional.terms) {
    terms.push_back(ordered{{"context", term.context_index},
                            {"outcome", term.outcomes},
                            {"coeff", format_fraction(term.coeff)}});
  }
  doc["functional"] =
      ordered{{"offset", format_fraction(s.functional.offset)},
              {"terms", std::move(terms)}};
  doc["corr_pairing"] = s.corr_pairing;
  return doc.dump(2) + "\n";
}

}  // namespace ncineq

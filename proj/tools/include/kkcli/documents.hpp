#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "koszulkit/quotient_ring.hpp"

namespace kk::cli {

using json = nlohmann::json;

/// Bad input: malformed JSON, unknown field spec, unparsable relation.
class DocumentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ring input file:
///   { "field": "QQ" | {"Fp": p}, "variables": [names], "relations": [strings] }
/// Relations use the grammar of parse_polynomial (+, -, *, ^, integer or a/b
/// coefficients, variable names from "variables").
struct RingDocument {
  std::string field = "QQ";  ///< "QQ" or "GF(p)"
  std::vector<std::string> variables;
  std::vector<std::string> relations;

  json to_json() const;
  static RingDocument from_json(const json& j);
};

/// "QQ", "GF(p)", "Fp:p" or a bare prime.
la::Field parse_field(const std::string& spec);
json field_to_json(const la::Field& f);

RingDocument read_ring_file(const std::string& path);
/// field_override replaces the document's field when non-empty.
ca::QuotientRing build_ring(const RingDocument& doc, const std::string& field_override = "");
RingDocument describe_ring(const ca::QuotientRing& r);

/// 64-bit FNV-1a as 16 hex digits.
std::string fnv1a_hex(const std::string& data);
/// Digest of the canonical form: field, variable names and the relations as
/// printed after parsing.
std::string ring_digest(const ca::QuotientRing& r);

/// Versioned output of every command. tables/verdicts are free-form JSON
/// objects; a bigraded table is {"layout": "bigraded", "entries": [[i, j, v], ...]}
/// and renders with rows j - i and columns i.
struct ResultDocument {
  static constexpr const char* kSchema = "koszulkit.result/1";

  std::string command;
  json ring = nullptr;  ///< {"field","variables","relations","digest"}
  json bounds = json::object();
  json tables = json::object();
  json verdicts = json::object();
  std::optional<double> timing_ms;

  json to_json() const;
  static ResultDocument from_json(const json& j);
  std::string dump() const { return to_json().dump(2) + "\n"; }
  friend bool operator==(const ResultDocument& a, const ResultDocument& b) { return a.to_json() == b.to_json(); }
};

json ring_summary(const ca::QuotientRing& r);

/// Table with row label (j - i) and column label i; "-" for zero.
std::string render_bigraded(const json& entries);
/// Aligned text rendering of the whole document.
std::string render_text(const ResultDocument& doc);

}  // namespace kk::cli

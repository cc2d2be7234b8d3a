#include "kkcli/documents.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace kk::cli {

la::Field parse_field(const std::string& spec) {
  if (spec == "QQ" || spec == "Q") return la::Field::rationals();
  std::string digits = spec;
  if (digits.rfind("GF(", 0) == 0 && digits.back() == ')') digits = digits.substr(3, digits.size() - 4);
  else if (digits.rfind("Fp:", 0) == 0) digits = digits.substr(3);
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
      digits.size() > 10) {
    throw DocumentError("unknown field '" + spec + "' (expected QQ or a prime)");
  }
  try {
    return la::Field::prime(static_cast<std::uint32_t>(std::stoull(digits)));
  } catch (const std::invalid_argument& e) {
    throw DocumentError(e.what());
  }
}

json field_to_json(const la::Field& f) {
  if (f.is_rationals()) return "QQ";
  return json{{"Fp", f.characteristic()}};
}

json RingDocument::to_json() const {
  return json{{"field", field_to_json(parse_field(field))}, {"variables", variables}, {"relations", relations}};
}

RingDocument RingDocument::from_json(const json& j) {
  if (!j.is_object()) throw DocumentError("ring document: top level must be an object");
  RingDocument d;
  if (j.contains("field")) {
    const auto& f = j.at("field");
    if (f.is_string()) {
      d.field = f.get<std::string>();
    } else if (f.is_object() && f.contains("Fp") && f.at("Fp").is_number_unsigned()) {
      d.field = "GF(" + std::to_string(f.at("Fp").get<std::uint64_t>()) + ")";
    } else {
      throw DocumentError("ring document: 'field' must be \"QQ\" or {\"Fp\": p}");
    }
    parse_field(d.field);
  }
  auto strings = [&](const char* key) {
    if (!j.contains(key) || !j.at(key).is_array()) throw DocumentError(std::string("ring document: '") + key + "' must be a list");
    std::vector<std::string> out;
    for (std::size_t k = 0; k < j.at(key).size(); ++k) {
      const auto& v = j.at(key)[k];
      if (!v.is_string()) throw DocumentError(std::string("ring document: ") + key + "[" + std::to_string(k) + "] is not a string");
      out.push_back(v.get<std::string>());
    }
    return out;
  };
  d.variables = strings("variables");
  d.relations = strings("relations");
  if (d.variables.empty()) throw DocumentError("ring document: no variables");
  return d;
}

RingDocument read_ring_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DocumentError("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw DocumentError(path + ": " + e.what());
  }
  try {
    return RingDocument::from_json(j);
  } catch (const DocumentError& e) {
    throw DocumentError(path + ": " + e.what());
  }
}

ca::QuotientRing build_ring(const RingDocument& doc, const std::string& field_override) {
  la::Field f = parse_field(field_override.empty() ? doc.field : field_override);
  std::vector<ca::Polynomial> rels;
  for (std::size_t k = 0; k < doc.relations.size(); ++k) {
    try {
      rels.push_back(ca::parse_polynomial(doc.relations[k], doc.variables, f));
    } catch (const ca::ParseError& e) {
      throw DocumentError("relations[" + std::to_string(k) + "]: " + e.what());
    } catch (const std::exception& e) {
      throw DocumentError("relations[" + std::to_string(k) + "]: " + e.what());
    }
  }
  try {
    return ca::QuotientRing(f, doc.variables, rels);
  } catch (const std::invalid_argument& e) {
    throw DocumentError(e.what());
  }
}

RingDocument describe_ring(const ca::QuotientRing& r) {
  RingDocument d;
  d.field = r.field().name();
  d.variables = r.names();
  for (const auto& p : r.relations()) d.relations.push_back(ca::format_polynomial(p, r.names()));
  return d;
}

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string ring_digest(const ca::QuotientRing& r) {
  auto d = describe_ring(r);
  std::string s = d.field + "|";
  for (const auto& v : d.variables) s += v + ",";
  s += "|";
  for (const auto& rel : d.relations) s += rel + ";";
  return fnv1a_hex(s);
}

json ring_summary(const ca::QuotientRing& r) {
  auto d = describe_ring(r);
  return json{{"field", d.field}, {"variables", d.variables}, {"relations", d.relations}, {"digest", ring_digest(r)}};
}

json ResultDocument::to_json() const {
  json j{{"schema", kSchema}, {"command", command}, {"ring", ring}, {"bounds", bounds}, {"tables", tables}, {"verdicts", verdicts}};
  if (timing_ms) j["timing_ms"] = *timing_ms;
  return j;
}

ResultDocument ResultDocument::from_json(const json& j) {
  if (!j.is_object() || j.value("schema", "") != kSchema) throw DocumentError("result document: unknown schema");
  ResultDocument d;
  d.command = j.at("command").get<std::string>();
  d.ring = j.at("ring");
  d.bounds = j.at("bounds");
  d.tables = j.at("tables");
  d.verdicts = j.at("verdicts");
  if (j.contains("timing_ms")) d.timing_ms = j.at("timing_ms").get<double>();
  return d;
}

std::string render_bigraded(const json& entries) {
  std::map<std::pair<int, int>, std::string> cell;  // (row, col)
  int rmax = 0;
  int cmax = 0;
  for (const auto& e : entries) {
    int i = e.at(0).get<int>();
    int j = e.at(1).get<int>();
    cell[{j - i, i}] = e.at(2).dump();
    rmax = std::max(rmax, j - i);
    cmax = std::max(cmax, i);
  }
  std::size_t w = 3;
  for (const auto& [k, v] : cell) w = std::max(w, v.size() + 1);
  std::ostringstream os;
  auto pad = [&](const std::string& s) { return std::string(w > s.size() ? w - s.size() : 0, ' ') + s; };
  os << "      ";
  for (int c = 0; c <= cmax; ++c) os << pad(std::to_string(c));
  os << "\n";
  for (int r = 0; r <= rmax; ++r) {
    std::string label = std::to_string(r) + ":";
    os << std::string(label.size() < 6 ? 6 - label.size() : 0, ' ') << label;
    for (int c = 0; c <= cmax; ++c) {
      auto it = cell.find({r, c});
      os << pad(it == cell.end() ? "-" : it->second);
    }
    os << "\n";
  }
  return os.str();
}

namespace {

void render_value(std::ostringstream& os, const std::string& key, const json& v, int indent) {
  std::string pre(static_cast<std::size_t>(indent), ' ');
  if (v.is_object() && v.value("layout", "") == "bigraded") {
    os << pre << key << " (rows j-i, columns i):\n" << render_bigraded(v.at("entries"));
    return;
  }
  if (v.is_object()) {
    os << pre << key << ":\n";
    for (const auto& [k, x] : v.items()) render_value(os, k, x, indent + 2);
    return;
  }
  if (v.is_array() && !v.empty() && v.front().is_string()) {
    os << pre << key << ":\n";
    for (const auto& x : v) os << pre << "  " << x.get<std::string>() << "\n";
    return;
  }
  if (v.is_array() && !v.empty() && v.front().is_object()) {
    os << pre << key << ":\n";
    for (const auto& x : v) os << pre << "  " << x.dump() << "\n";
    return;
  }
  os << pre << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
}

}  // namespace

std::string render_text(const ResultDocument& doc) {
  std::ostringstream os;
  os << "command: " << doc.command << "\n";
  if (!doc.ring.is_null()) {
    os << "ring: " << doc.ring.at("digest").get<std::string>() << " over " << doc.ring.at("field").get<std::string>() << "\n";
  }
  for (const auto& [k, v] : doc.bounds.items()) os << "bound " << k << ": " << v.dump() << "\n";
  for (const auto& [k, v] : doc.tables.items()) render_value(os, k, v, 0);
  for (const auto& [k, v] : doc.verdicts.items()) render_value(os, k, v, 0);
  if (doc.timing_ms) os << "timing_ms: " << *doc.timing_ms << "\n";
  return os.str();
}

}  // namespace kk::cli

#pragma once

#include <charconv>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qbaf/attribution.hpp"
#include "qbaf/framework.hpp"

namespace qbaf {

namespace detail {

/// Fixed five decimal places, matching the report tables' print precision.
inline std::string format_fixed5(double v) {
  if (v == 0.0) v = 0.0;  // never print "-0.00000"
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.5f", v);
  // snprintf may still round a tiny negative up to -0.00000
  std::string s(buf);
  if (s == "-0.00000") s = "0.00000";
  return s;
}

/// Shortest decimal form that parses back to the same double.
inline std::string format_exact(double v) {
  if (v == 0.0) v = 0.0;
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

/// Fixed 5 decimals with trailing zeros trimmed; used for node labels.
inline std::string format_trimmed(double v) {
  std::string s = format_fixed5(v);
  std::size_t last = s.find_last_not_of('0');
  if (s[last] == '.') ++last;
  return s.substr(0, last + 1);
}

inline bool csv_needs_quotes(std::string_view field) {
  return field.find_first_of(",\"\n\r") != std::string_view::npos;
}

inline std::string csv_quote(std::string_view field) {
  if (!csv_needs_quotes(field)) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

/// Splits one CSV record; handles quoted fields with doubled quotes.
inline std::vector<std::string> csv_split(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

inline double parse_double_field(const std::string& field, const char* where,
                                 std::size_t line_no) {
  try {
    std::size_t used = 0;
    double v = std::stod(field, &used);
    if (used != field.size()) throw std::invalid_argument(field);
    return v;
  } catch (const std::exception&) {
    throw error(errc::parse_error, "line " + std::to_string(line_no) + ": " +
                                       where + ": not a number: '" + field +
                                       "'");
  }
}

inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      if (start < text.size()) lines.push_back(text.substr(start));
      break;
    }
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

}  // namespace detail

/// A parsed framework document: the framework plus the optional topic the
/// file names.
struct QbafDocument {
  Qbaf framework;
  std::optional<ArgumentId> topic;
};

/// Parses the JSON framework format:
///   { "arguments": [{"id", "base_score", "content"?}, ...],
///     "attacks": [[from, to], ...], "supports": [[from, to], ...],
///     "topic"?: id }
/// Violations are rejected with the JSON-pointer position of the offending
/// field where one exists.
inline QbafDocument parse_qbaf_document(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw error(errc::parse_error, e.what());
  }
  if (!doc.is_object()) {
    throw error(errc::parse_error, "top level must be an object");
  }
  if (!doc.contains("arguments") || !doc["arguments"].is_array()) {
    throw error(errc::parse_error, "/arguments: missing or not an array");
  }

  std::vector<ArgumentSpec> specs;
  for (std::size_t i = 0; i < doc["arguments"].size(); ++i) {
    std::string at = "/arguments/" + std::to_string(i);
    const auto& entry = doc["arguments"][i];
    if (!entry.is_object() || !entry.contains("id") ||
        !entry["id"].is_string()) {
      throw error(errc::parse_error, at + ": expected {\"id\", \"base_score\"}");
    }
    ArgumentSpec spec;
    spec.id = entry["id"].get<std::string>();
    if (spec.id.empty()) {
      throw error(errc::parse_error, at + "/id: empty argument id");
    }
    if (!entry.contains("base_score") || !entry["base_score"].is_number()) {
      throw error(errc::parse_error, at + "/base_score: expected a number");
    }
    spec.base_score = entry["base_score"].get<double>();
    if (!(spec.base_score >= 0.0 && spec.base_score <= 1.0)) {
      throw error(errc::base_score_out_of_range,
                  at + "/base_score: " + detail::format_exact(spec.base_score) +
                      " outside [0,1]");
    }
    if (entry.contains("content")) {
      if (!entry["content"].is_string()) {
        throw error(errc::parse_error, at + "/content: expected a string");
      }
      spec.content = entry["content"].get<std::string>();
    }
    for (const ArgumentSpec& seen : specs) {
      if (seen.id == spec.id) {
        throw error(errc::duplicate_argument,
                    at + "/id: duplicate argument '" + spec.id + "'");
      }
    }
    specs.push_back(std::move(spec));
  }

  auto read_edges = [&](const char* key) {
    std::vector<EdgePair> out;
    if (!doc.contains(key)) return out;
    std::string base = std::string("/") + key;
    if (!doc[key].is_array()) {
      throw error(errc::parse_error, base + ": expected an array of pairs");
    }
    for (std::size_t i = 0; i < doc[key].size(); ++i) {
      std::string at = base + "/" + std::to_string(i);
      const auto& pair = doc[key][i];
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() ||
          !pair[1].is_string()) {
        throw error(errc::parse_error, at + ": expected [from, to]");
      }
      EdgePair edge{pair[0].get<std::string>(), pair[1].get<std::string>()};
      for (const ArgumentId& endpoint : {edge.first, edge.second}) {
        bool known = false;
        for (const ArgumentSpec& spec : specs) known |= spec.id == endpoint;
        if (!known) {
          throw error(errc::unknown_endpoint,
                      at + ": endpoint '" + endpoint +
                          "' is not a declared argument");
        }
      }
      out.push_back(std::move(edge));
    }
    return out;
  };
  std::vector<EdgePair> attacks = read_edges("attacks");
  std::vector<EdgePair> supports = read_edges("supports");

  QbafDocument result{
      build_qbaf(std::move(specs), std::move(attacks), std::move(supports)),
      std::nullopt};
  if (doc.contains("topic")) {
    if (!doc["topic"].is_string()) {
      throw error(errc::parse_error, "/topic: expected a string");
    }
    ArgumentId topic = doc["topic"].get<std::string>();
    if (!result.framework.contains(topic)) {
      throw error(errc::unknown_argument,
                  "/topic: no argument '" + topic + "'");
    }
    result.topic = topic;
  }
  return result;
}

inline Qbaf parse_qbaf(std::string_view text) {
  return parse_qbaf_document(text).framework;
}

/// Deterministic serialization; parse(serialize(q)) rebuilds an identical
/// framework.
inline std::string serialize_qbaf(
    const Qbaf& q, const std::optional<ArgumentId>& topic = std::nullopt) {
  nlohmann::json doc;
  doc["arguments"] = nlohmann::json::array();
  for (std::size_t i = 0; i < q.size(); ++i) {
    nlohmann::json entry;
    entry["id"] = q.id_of(i);
    entry["base_score"] = q.base_score_at(i);
    if (!q.content_at(i).empty()) entry["content"] = q.content_at(i);
    doc["arguments"].push_back(std::move(entry));
  }
  doc["attacks"] = nlohmann::json::array();
  for (const EdgePair& e : q.attack_pairs()) {
    doc["attacks"].push_back({e.first, e.second});
  }
  doc["supports"] = nlohmann::json::array();
  for (const EdgePair& e : q.support_pairs()) {
    doc["supports"].push_back({e.first, e.second});
  }
  if (topic) doc["topic"] = *topic;
  return doc.dump(2) + "\n";
}

/// CSV rendering of a ranked report: the table columns at five decimal
/// places plus a full-precision sidecar for the attribution.
inline std::string serialize_report(const AttributionReport& report) {
  std::string out = "argument,tau,ablated_strength,delta,aae,aae_exact\n";
  for (const AttributionRow& row : report.rows) {
    out += detail::csv_quote(row.source);
    out += ',' + detail::format_fixed5(row.base_score);
    out += ',' + detail::format_fixed5(row.ablated_strength);
    out += ',' + detail::format_fixed5(row.delta);
    out += ',' + detail::format_fixed5(row.aae);
    out += ',' + detail::format_exact(row.aae);
    out += '\n';
  }
  return out;
}

/// Reads the CSV produced by serialize_report. Influence classes are
/// rebuilt from the exact attribution column.
inline AttributionReport parse_report(std::string_view text) {
  auto lines = detail::split_lines(text);
  if (lines.empty() ||
      lines[0] != "argument,tau,ablated_strength,delta,aae,aae_exact") {
    throw error(errc::parse_error, "line 1: bad or missing report header");
  }
  AttributionReport report;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto fields = detail::csv_split(lines[i]);
    if (fields.size() != 6) {
      throw error(errc::parse_error,
                  "line " + std::to_string(i + 1) + ": expected 6 fields, got " +
                      std::to_string(fields.size()));
    }
    AttributionRow row;
    row.source = fields[0];
    row.base_score = detail::parse_double_field(fields[1], "tau", i + 1);
    row.ablated_strength =
        detail::parse_double_field(fields[2], "ablated_strength", i + 1);
    row.delta = detail::parse_double_field(fields[3], "delta", i + 1);
    double printed = detail::parse_double_field(fields[4], "aae", i + 1);
    row.aae = detail::parse_double_field(fields[5], "aae_exact", i + 1);
    (void)printed;
    row.influence = classify_influence(Aae{row.source, report.topic, row.aae});
    report.rows.push_back(std::move(row));
  }
  return report;
}

/// Graphviz rendering: one node per argument labeled "id (sigma)", framework
/// edges labeled +/-, and one dashed attribution edge per nonzero report row
/// into the topic (blue positive, red negative, pen width scaled linearly
/// from 1 to 5 by |aae|).
inline std::string export_dot(const Qbaf& q, const AttributionReport& report) {
  if (!q.contains(report.topic)) {
    throw error(errc::topic_mismatch,
                "report topic '" + report.topic +
                    "' is not an argument of the framework");
  }
  for (const AttributionRow& row : report.rows) {
    if (!q.contains(row.source)) {
      throw error(errc::topic_mismatch,
                  "report row '" + row.source +
                      "' is not an argument of the framework");
    }
  }
  StrengthAssignment sa = evaluate_strengths(q);
  auto quoted = [](const ArgumentId& id) {
    std::string out = "\"";
    for (char c : id) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    return out + "\"";
  };

  std::string out = "digraph qbaf {\n  node [shape=ellipse];\n";
  for (std::size_t i = 0; i < q.size(); ++i) {
    out += "  " + quoted(q.id_of(i)) + " [label=\"" + q.id_of(i) + " (" +
           detail::format_trimmed(sa.strength_at(i)) + ")\"";
    if (q.id_of(i) == report.topic) out += " penwidth=2";
    out += "];\n";
  }
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (const auto& [child, kind] : q.children_of(i)) {
      out += "  " + quoted(q.id_of(i)) + " -> " + quoted(q.id_of(child)) +
             " [label=\"" + (kind == EdgeKind::attack ? "-" : "+") + "\"];\n";
    }
  }
  double max_abs = 0.0;
  for (const AttributionRow& row : report.rows) {
    max_abs = std::max(max_abs, std::fabs(row.aae));
  }
  for (const AttributionRow& row : report.rows) {
    if (row.aae == 0.0) continue;
    double width = 1.0 + 4.0 * std::fabs(row.aae) / max_abs;
    char widthbuf[32];
    std::snprintf(widthbuf, sizeof(widthbuf), "%.2f", width);
    out += "  " + quoted(row.source) + " -> " + quoted(report.topic) +
           " [style=dashed color=" + (row.aae > 0.0 ? "blue" : "red") +
           " penwidth=" + widthbuf + "];\n";
  }
  out += "}\n";
  return out;
}

/// One row of the shipped fraud-detection reference table: a transcribed
/// attribution listing with no edge structure, loadable and queryable but
/// not evaluable.
struct FraudReferenceRow {
  int index = 0;
  double aae = 0.0;
  double base_score = 0.0;
  double strength = 0.0;
  std::string content;
};

inline std::vector<FraudReferenceRow> parse_fraud_reference(
    std::string_view text) {
  auto lines = detail::split_lines(text);
  if (lines.empty() || lines[0] != "index,aae,base_score,strength,content") {
    throw error(errc::parse_error,
                "line 1: bad or missing fraud reference header");
  }
  std::vector<FraudReferenceRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto fields = detail::csv_split(lines[i]);
    if (fields.size() != 5) {
      throw error(errc::parse_error,
                  "line " + std::to_string(i + 1) + ": expected 5 fields, got " +
                      std::to_string(fields.size()));
    }
    FraudReferenceRow row;
    row.index = static_cast<int>(
        detail::parse_double_field(fields[0], "index", i + 1));
    row.aae = detail::parse_double_field(fields[1], "aae", i + 1);
    row.base_score = detail::parse_double_field(fields[2], "base_score", i + 1);
    row.strength = detail::parse_double_field(fields[3], "strength", i + 1);
    row.content = fields[4];
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Descending by attribution, ties by index.
inline void sort_fraud_reference(std::vector<FraudReferenceRow>& rows) {
  std::sort(rows.begin(), rows.end(),
            [](const FraudReferenceRow& a, const FraudReferenceRow& b) {
              if (a.aae != b.aae) return a.aae > b.aae;
              return a.index < b.index;
            });
}

}  // namespace qbaf

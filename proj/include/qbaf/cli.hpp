#pragma once

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qbaf/attribution.hpp"
#include "qbaf/fixtures.hpp"
#include "qbaf/io.hpp"
#include "qbaf/properties.hpp"

namespace qbaf::cli {

namespace detail {

/// FILE arguments name either a path on disk or a bundled fixture.
inline std::string load_document(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  if (in) {
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  }
  for (const std::string& name : fixtures::names()) {
    if (name == file) return fixtures::document(name);
  }
  throw error(errc::parse_error,
              "'" + file + "' is neither a readable file nor a bundled fixture");
}

inline QbafDocument load_framework(const std::string& file) {
  std::string text = load_document(file);
  if (text.rfind("index,aae,", 0) == 0) {
    throw error(errc::parse_error,
                "'" + file + "' holds the fraud reference table, which has "
                "no framework structure and cannot be evaluated");
  }
  return parse_qbaf_document(text);
}

inline ArgumentId pick_topic(const QbafDocument& doc, const std::string& flag,
                             const std::string& file) {
  if (!flag.empty()) {
    doc.framework.index_of(flag);
    return flag;
  }
  if (doc.topic) return *doc.topic;
  throw error(errc::unknown_argument,
              "no --topic given and '" + file + "' names none");
}

inline void note_tie_convention(const Qbaf& q, const StrengthAssignment& sa,
                                std::ostream& err) {
  std::vector<ArgumentId> flagged;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q.attackers_of(i).empty() && q.supporters_of(i).empty()) continue;
    const NodeEvaluation& e = sa.at_index(i);
    if (std::fabs(e.attacker_aggregate - e.supporter_aggregate) <= 1e-12) {
      flagged.push_back(q.id_of(i));
    }
  }
  if (flagged.empty()) return;
  err << "note: aggregation tie at";
  for (const ArgumentId& id : flagged) err << " " << id;
  err << "; one-sided derivative convention applied\n";
}

}  // namespace detail

/// Runs one invocation. args excludes the program name. Returns 0 on
/// success, 1 on a domain error (reported on err), 2 on a usage error.
inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Acyclic QBAF evaluation and gradient-based argument "
               "attribution under DF-QuAD"};
  app.require_subcommand(0, 1);

  std::string file, topic_flag, out_path, method = "reverse", emit_name;
  double epsilon = 1e-6;
  bool list_fixtures = false;

  CLI::App* validate = app.add_subcommand("validate", "Check a framework document");
  validate->add_option("file", file, "framework document or fixture name")->required();

  CLI::App* eval = app.add_subcommand("eval", "Evaluate strengths");
  eval->add_option("file", file)->required();

  CLI::App* attribute = app.add_subcommand(
      "attribute", "Attributions of every argument toward a topic");
  attribute->add_option("file", file)->required();
  attribute->add_option("--topic", topic_flag, "topic argument id");
  attribute->add_option("--method", method, "reverse | analytic | fd")
      ->check(CLI::IsMember({"reverse", "analytic", "fd"}));
  attribute->add_option("--epsilon", epsilon, "finite-difference step");

  CLI::App* rank = app.add_subcommand("rank", "Ranked attribution report (CSV)");
  rank->add_option("file", file)->required();
  rank->add_option("--topic", topic_flag);
  rank->add_option("--out", out_path, "write CSV here instead of stdout");

  CLI::App* check = app.add_subcommand("check", "Run the explanation property suite");
  check->add_option("file", file)->required();
  check->add_option("--topic", topic_flag);

  CLI::App* export_dot_cmd = app.add_subcommand("export-dot", "Graphviz rendering");
  export_dot_cmd->add_option("file", file)->required();
  export_dot_cmd->add_option("--topic", topic_flag);

  CLI::App* fixtures_cmd = app.add_subcommand("fixtures", "Bundled case-study data");
  fixtures_cmd->add_flag("--list", list_fixtures, "list fixture names");
  fixtures_cmd->add_option("--emit", emit_name, "print a fixture document");

  std::vector<const char*> argv{"qbaf"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (validate->parsed()) {
      QbafDocument doc = detail::load_framework(file);
      out << "ok: " << doc.framework.size() << " arguments, "
          << doc.framework.attack_count() << " attacks, "
          << doc.framework.support_count() << " supports";
      if (doc.topic) out << ", topic " << *doc.topic;
      out << "\n";
      return 0;
    }

    if (eval->parsed()) {
      QbafDocument doc = detail::load_framework(file);
      StrengthAssignment sa = evaluate_strengths(doc.framework);
      out << "argument\tsigma\tv_a\tv_s\n";
      for (std::size_t i = 0; i < doc.framework.size(); ++i) {
        const NodeEvaluation& e = sa.at_index(i);
        out << doc.framework.id_of(i) << "\t"
            << qbaf::detail::format_fixed5(e.strength) << "\t"
            << qbaf::detail::format_fixed5(e.attacker_aggregate) << "\t"
            << qbaf::detail::format_fixed5(e.supporter_aggregate) << "\n";
      }
      return 0;
    }

    if (attribute->parsed()) {
      QbafDocument doc = detail::load_framework(file);
      const Qbaf& q = doc.framework;
      ArgumentId topic = detail::pick_topic(doc, topic_flag, file);
      StrengthAssignment sa = evaluate_strengths(q);

      std::vector<std::pair<ArgumentId, double>> rows;
      for (const ArgumentId& source : q.arguments()) {
        if (source == topic) continue;
        double value = 0.0;
        if (method == "reverse") {
          value = qbaf::detail::attribution_values(q, sa, q.index_of(topic))
              [q.index_of(source)];
        } else if (method == "fd") {
          value = aae_finite_difference(q, topic, source, epsilon);
        } else {
          switch (classify_connectivity(q, source, topic)) {
            case ConnectivityClass::disconnected:
              value = 0.0;
              break;
            case ConnectivityClass::direct:
              value = aae_direct(q, sa, source, topic).value;
              break;
            case ConnectivityClass::indirect:
              value = aae_indirect(q, sa, source, topic).value;
              break;
            case ConnectivityClass::multifold:
              value = aae_path_sum(q, sa, source, topic).value;
              break;
          }
        }
        rows.emplace_back(source, value);
      }
      qbaf::detail::rank_descending(
          rows, [](const auto& r) { return r.second; },
          [](const auto& r) { return r.first; });
      for (const auto& [source, value] : rows) {
        out << source << "\t" << qbaf::detail::format_fixed5(value) << "\n";
      }
      detail::note_tie_convention(q, sa, err);
      return 0;
    }

    if (rank->parsed()) {
      QbafDocument doc = detail::load_framework(file);
      ArgumentId topic = detail::pick_topic(doc, topic_flag, file);
      AttributionReport report = attribution_report(doc.framework, topic);
      std::string csv = serialize_report(report);
      if (!report.tie_flagged.empty()) {
        err << "note: aggregation tie at";
        for (const ArgumentId& id : report.tie_flagged) err << " " << id;
        err << "; one-sided derivative convention applied\n";
      }
      if (out_path.empty()) {
        out << csv;
      } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) {
          throw error(errc::parse_error, "cannot write '" + out_path + "'");
        }
        f << csv;
      }
      return 0;
    }

    if (check->parsed()) {
      QbafDocument doc = detail::load_framework(file);
      ArgumentId topic = detail::pick_topic(doc, topic_flag, file);
      std::vector<PropertyVerdict> verdicts = run_suite(doc.framework, topic);
      int guaranteed_failures = 0;
      int multifold_failures = 0;
      for (const PropertyVerdict& v : verdicts) {
        bool failed = v.outcome == VerdictOutcome::fails;
        bool informational = v.connectivity == ConnectivityClass::multifold;
        if (failed) ++(informational ? multifold_failures : guaranteed_failures);
        const char* label = failed ? (informational ? "fail*" : "FAIL")
                                   : to_string(v.outcome);
        out << label << "\t" << to_string(v.property) << "\t" << v.source;
        if (!v.other.empty()) out << "," << v.other;
        out << "\t" << to_string(v.connectivity);
        for (const auto& [name, value] : v.witness) {
          out << "\t" << name << "=" << qbaf::detail::format_exact(value);
        }
        if (!v.note.empty()) out << "\t(" << v.note << ")";
        out << "\n";
      }
      out << "summary: " << verdicts.size() << " verdicts, "
          << guaranteed_failures << " failures under direct/indirect, "
          << multifold_failures
          << " under multifold (expected behaviour, informational)\n";
      return guaranteed_failures == 0 ? 0 : 1;
    }

    if (export_dot_cmd->parsed()) {
      QbafDocument doc = detail::load_framework(file);
      ArgumentId topic = detail::pick_topic(doc, topic_flag, file);
      out << export_dot(doc.framework, attribution_report(doc.framework, topic));
      return 0;
    }

    if (fixtures_cmd->parsed()) {
      if (list_fixtures == !emit_name.empty()) {
        err << "fixtures: give exactly one of --list or --emit NAME\n";
        return 2;
      }
      if (list_fixtures) {
        for (const std::string& name : fixtures::names()) out << name << "\n";
        return 0;
      }
      out << fixtures::document(emit_name);
      return 0;
    }

    err << app.help();
    return 2;
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace qbaf::cli

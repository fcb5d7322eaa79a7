#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qbaf/framework.hpp"
#include "qbaf/semantics.hpp"

namespace qbaf {

/// Attribution of one argument toward a topic: the derivative of the topic's
/// strength with respect to the source's base score.
struct Aae {
  ArgumentId source;
  ArgumentId topic;
  double value = 0.0;
};

enum class InfluenceClass { positive, negative, neutral };

inline const char* to_string(InfluenceClass c) {
  switch (c) {
    case InfluenceClass::positive: return "positive";
    case InfluenceClass::negative: return "negative";
    case InfluenceClass::neutral: return "neutral";
  }
  return "?";
}

/// Strict sign classification of an attribution value.
inline InfluenceClass classify_influence(const Aae& a) {
  if (a.value > 0.0) return InfluenceClass::positive;
  if (a.value < 0.0) return InfluenceClass::negative;
  return InfluenceClass::neutral;
}

/// Sign guarantee derivable from structure alone: edge kind for a direct
/// connection, attack parity for an indirect one. Multifold connections
/// carry no structural guarantee.
enum class SignForecast { non_negative, non_positive, zero, indeterminate };

inline const char* to_string(SignForecast f) {
  switch (f) {
    case SignForecast::non_negative: return "non-negative";
    case SignForecast::non_positive: return "non-positive";
    case SignForecast::zero: return "zero";
    case SignForecast::indeterminate: return "indeterminate";
  }
  return "?";
}

namespace detail {

/// For a list of factors, the products over "all entries but one", via
/// prefix/suffix accumulation. products_excluding_each(v)[i] multiplies
/// prefix(i) by suffix(i+1), so it is division-free and total even when some
/// factor is zero. Every edge-partial computation in the library goes
/// through this one multiplication order, which keeps the analytic routes
/// and the reverse sweep bit-identical.
inline void products_excluding_each(std::span<const double> factors,
                                    std::vector<double>& out) {
  std::size_t n = factors.size();
  out.assign(n, 1.0);
  double acc = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = acc;
    acc *= factors[i];
  }
  acc = 1.0;
  for (std::size_t i = n; i-- > 0;) {
    out[i] *= acc;
    acc *= factors[i];
  }
}

/// The case coefficient of d sigma(child) / d v: -tau or tau-1 for attacks,
/// tau or 1-tau for supports, selected by the child's aggregate comparison.
/// At an exact tie, attack edges take the v_a >= v_s branch and support
/// edges the v_a <= v_s branch, matching the influence function's own case
/// boundaries.
inline double partial_coefficient(double tau_child, const NodeEvaluation& child,
                                  EdgeKind kind) {
  bool attacker_side = child.attacker_aggregate >= child.supporter_aggregate;
  if (kind == EdgeKind::attack) {
    return attacker_side ? -tau_child : tau_child - 1.0;
  }
  bool supporter_side = child.supporter_aggregate >= child.attacker_aggregate;
  return supporter_side ? 1.0 - tau_child : tau_child;
}

/// All of a child's incoming edge partials for one relation, in parent-list
/// order: coefficient times the product over the child's other same-relation
/// parents of (1 - sigma).
inline void edge_partials_into(const Qbaf& q, const StrengthAssignment& sa,
                               std::size_t child, EdgeKind kind,
                               std::vector<double>& factors,
                               std::vector<double>& out) {
  auto parents = kind == EdgeKind::attack ? q.attackers_of(child)
                                          : q.supporters_of(child);
  factors.clear();
  for (std::uint32_t p : parents) factors.push_back(1.0 - sa.strength_at(p));
  products_excluding_each(factors, out);
  double coeff = partial_coefficient(q.base_score_at(child),
                                     sa.at_index(child), kind);
  for (double& v : out) v = coeff * v;
}

inline double strip_negative_zero(double v) { return v == 0.0 ? 0.0 : v; }

/// Descending sort for ranked output. Runs of adjacent values within 1e-12
/// of each other count as one tie and are ordered by id: algebraically equal
/// attributions can differ by a few ulps depending on which route computed
/// them, and the ranking should not depend on that.
template <typename Row, typename ValueFn, typename IdFn>
void rank_descending(std::vector<Row>& rows, ValueFn value, IdFn id) {
  std::sort(rows.begin(), rows.end(), [&](const Row& a, const Row& b) {
    if (value(a) != value(b)) return value(a) > value(b);
    return id(a) < id(b);
  });
  std::size_t start = 0;
  while (start < rows.size()) {
    std::size_t end = start + 1;
    while (end < rows.size() &&
           value(rows[end - 1]) - value(rows[end]) <= 1e-12) {
      ++end;
    }
    std::sort(rows.begin() + start, rows.begin() + end,
              [&](const Row& a, const Row& b) { return id(a) < id(b); });
    start = end;
  }
}

/// Reverse sweep: adjoint(topic) = 1, adjoint(X) = sum over children Y of
/// (d sigma(Y) / d sigma(X)) * adjoint(Y), walked in reverse topological
/// order; the attribution of X is adjoint(X) * base_sensitivity(X).
/// One pass over every node and edge.
inline std::vector<double> attribution_values(const Qbaf& q,
                                              const StrengthAssignment& sa,
                                              std::size_t topic) {
  std::vector<double> adjoint(q.size(), 0.0);
  adjoint[topic] = 1.0;
  std::vector<double> factors, partials;
  const auto& topo = q.topological_indices();
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    std::uint32_t node = *it;
    if (adjoint[node] == 0.0) continue;
    for (EdgeKind kind : {EdgeKind::attack, EdgeKind::support}) {
      auto parents = kind == EdgeKind::attack ? q.attackers_of(node)
                                              : q.supporters_of(node);
      if (parents.empty()) continue;
      edge_partials_into(q, sa, node, kind, factors, partials);
      for (std::size_t i = 0; i < parents.size(); ++i) {
        adjoint[parents[i]] += partials[i] * adjoint[node];
      }
    }
  }
  std::vector<double> values(q.size(), 0.0);
  for (std::size_t i = 0; i < q.size(); ++i) {
    values[i] = strip_negative_zero(adjoint[i] * base_sensitivity(sa.at_index(i)));
  }
  return values;
}

}  // namespace detail

/// d sigma(child) / d sigma(parent) for one framework edge.
inline double edge_partial(const Qbaf& q, const StrengthAssignment& sa,
                           const ArgumentId& parent, const ArgumentId& child) {
  std::size_t p = q.index_of(parent);
  std::size_t c = q.index_of(child);
  auto kind = q.edge_between(p, c);
  if (!kind) {
    throw error(errc::not_an_edge,
                "(" + parent + ", " + child + ") is not a framework edge");
  }
  auto parents = *kind == EdgeKind::attack ? q.attackers_of(c)
                                           : q.supporters_of(c);
  std::vector<double> factors, partials;
  detail::edge_partials_into(q, sa, c, *kind, factors, partials);
  auto it = std::lower_bound(parents.begin(), parents.end(),
                             static_cast<std::uint32_t>(p));
  return partials[static_cast<std::size_t>(it - parents.begin())];
}

/// Closed form for a directly connected source:
/// base_sensitivity(source) * edge_partial(source, topic).
inline Aae aae_direct(const Qbaf& q, const StrengthAssignment& sa,
                      const ArgumentId& source, const ArgumentId& topic) {
  auto info = detail::connectivity_info(q, q.index_of(source), q.index_of(topic));
  if (info.cls != ConnectivityClass::direct) {
    throw error(errc::wrong_connectivity,
                "'" + source + "' is " + to_string(info.cls) +
                    (info.cls == ConnectivityClass::disconnected ? " from '"
                                                                 : " to '") +
                    topic + "', not direct");
  }
  double value = edge_partial(q, sa, source, topic) *
                 base_sensitivity(sa.at_index(q.index_of(source)));
  return Aae{source, topic, detail::strip_negative_zero(value)};
}

/// Chain rule along the unique path of an indirectly connected source: the
/// product of the edge partials, folded from the topic end backwards, times
/// the source's base sensitivity. Algebraically equal to the quotient form
/// of the indirect influence characterization, but total: no factor is ever
/// divided out, so saturated middle arguments cause no 0/0.
inline Aae aae_indirect(const Qbaf& q, const StrengthAssignment& sa,
                        const ArgumentId& source, const ArgumentId& topic) {
  auto info = detail::connectivity_info(q, q.index_of(source), q.index_of(topic));
  if (info.cls != ConnectivityClass::indirect) {
    throw error(errc::wrong_connectivity,
                "'" + source + "' is " + to_string(info.cls) +
                    (info.cls == ConnectivityClass::disconnected ? " from '"
                                                                 : " to '") +
                    topic + "', not indirect");
  }
  const auto& path = info.unique_path;
  double acc = 1.0;
  for (std::size_t i = path.size() - 1; i-- > 0;) {
    acc = edge_partial(q, sa, q.id_of(path[i]), q.id_of(path[i + 1])) * acc;
  }
  double value = acc * base_sensitivity(sa.at_index(q.index_of(source)));
  return Aae{source, topic, detail::strip_negative_zero(value)};
}

/// Analytic path-sum route, total over all connectivity classes: the
/// source's base sensitivity times the sum over all source -> topic paths of
/// the product of edge partials along each path. Enumerates paths, so
/// worst-case exponential; the reverse sweep computes the same value in
/// linear time.
inline Aae aae_path_sum(const Qbaf& q, const StrengthAssignment& sa,
                        const ArgumentId& source, const ArgumentId& topic) {
  PathSet ps = enumerate_paths(q, source, topic);
  double sum = 0.0;
  for (const Path& path : ps.paths) {
    double acc = 1.0;
    for (std::size_t i = path.nodes.size() - 1; i-- > 0;) {
      acc = edge_partial(q, sa, path.nodes[i], path.nodes[i + 1]) * acc;
    }
    sum += acc;
  }
  double value = sum * base_sensitivity(sa.at_index(q.index_of(source)));
  return Aae{source, topic, detail::strip_negative_zero(value)};
}

/// Attributions of every argument (except the topic itself) toward the
/// topic, by one forward evaluation and one reverse sweep. Covers all four
/// connectivity classes; disconnected arguments get exactly 0. Cost is
/// linear in |A| + |R|.
inline std::map<ArgumentId, Aae> aae_all(const Qbaf& q,
                                         const ArgumentId& topic) {
  std::size_t t = q.index_of(topic);
  StrengthAssignment sa = evaluate_strengths(q);
  std::vector<double> values = detail::attribution_values(q, sa, t);
  std::map<ArgumentId, Aae> out;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (i == t) continue;
    out.emplace_hint(out.end(), q.id_of(i),
                     Aae{q.id_of(i), topic, values[i]});
  }
  return out;
}

/// Finite-difference estimate of an attribution from full re-evaluations:
/// central stencil when both tau(source) +/- epsilon stay in [0,1], else
/// one-sided toward the feasible direction. Default epsilon 1e-6. This is
/// the independent check on the analytic routes, not the primary path.
inline double aae_finite_difference(const Qbaf& q, const ArgumentId& topic,
                                    const ArgumentId& source,
                                    double epsilon = 1e-6) {
  std::size_t t = q.index_of(topic);
  std::size_t s = q.index_of(source);
  if (!(epsilon != 0.0) || std::isnan(epsilon)) {
    throw error(errc::input_out_of_range, "epsilon must be nonzero");
  }
  epsilon = std::fabs(epsilon);
  double tau = q.base_score_at(s);
  bool up_ok = tau + epsilon <= 1.0;
  bool down_ok = tau - epsilon >= 0.0;
  auto strength_at = [&](double value) {
    return detail::strengths_with_base(q, s, value)[t];
  };
  if (up_ok && down_ok) {
    return (strength_at(tau + epsilon) - strength_at(tau - epsilon)) /
           (2.0 * epsilon);
  }
  if (up_ok) return (strength_at(tau + epsilon) - strength_at(tau)) / epsilon;
  if (down_ok) return (strength_at(tau) - strength_at(tau - epsilon)) / epsilon;
  throw error(errc::degenerate_stencil,
              "no feasible perturbation of size " + std::to_string(epsilon) +
                  " for tau = " + std::to_string(tau));
}

/// Sign prediction from structure alone: zero when disconnected, the edge
/// kind's sign when direct, the attack parity's sign when indirect,
/// indeterminate when multifold.
inline SignForecast predict_sign_parity(const Qbaf& q, const ArgumentId& source,
                                        const ArgumentId& topic) {
  auto info = detail::connectivity_info(q, q.index_of(source), q.index_of(topic));
  switch (info.cls) {
    case ConnectivityClass::disconnected:
      return SignForecast::zero;
    case ConnectivityClass::direct:
    case ConnectivityClass::indirect:
      return info.theta % 2 == 1 ? SignForecast::non_positive
                                 : SignForecast::non_negative;
    case ConnectivityClass::multifold:
      return SignForecast::indeterminate;
  }
  return SignForecast::indeterminate;
}

struct AttributionRow {
  ArgumentId source;
  double base_score = 0.0;
  double ablated_strength = 0.0;  // topic strength with tau(source) = 0
  double delta = 0.0;             // ablated_strength - sigma(topic)
  double aae = 0.0;
  InfluenceClass influence = InfluenceClass::neutral;
};

/// Ranked attribution table for one topic. Rows are sorted by attribution
/// descending, ties broken by source id. Deltas come from real ablation
/// re-evaluations, never from the gradient, so they stay honest where the
/// linear completeness identity breaks down. tie_flagged lists arguments
/// with parents whose aggregates tie to within 1e-12; at such arguments the
/// derivative is one-sided by convention.
struct AttributionReport {
  ArgumentId topic;
  double topic_strength = 0.0;
  std::vector<AttributionRow> rows;
  std::vector<ArgumentId> tie_flagged;
};

inline AttributionReport attribution_report(const Qbaf& q,
                                            const ArgumentId& topic) {
  std::size_t t = q.index_of(topic);
  StrengthAssignment sa = evaluate_strengths(q);
  std::vector<double> values = detail::attribution_values(q, sa, t);

  AttributionReport report;
  report.topic = topic;
  report.topic_strength = sa.strength_at(t);
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (i == t) continue;
    AttributionRow row;
    row.source = q.id_of(i);
    row.base_score = q.base_score_at(i);
    row.ablated_strength = detail::strengths_with_base(q, i, 0.0)[t];
    row.delta = row.ablated_strength - report.topic_strength;
    row.aae = values[i];
    row.influence = classify_influence(Aae{row.source, topic, row.aae});
    report.rows.push_back(std::move(row));
  }
  detail::rank_descending(
      report.rows, [](const AttributionRow& r) { return r.aae; },
      [](const AttributionRow& r) { return r.source; });
  for (std::size_t i = 0; i < q.size(); ++i) {
    const NodeEvaluation& e = sa.at_index(i);
    bool has_parents =
        !q.attackers_of(i).empty() || !q.supporters_of(i).empty();
    if (has_parents &&
        std::fabs(e.attacker_aggregate - e.supporter_aggregate) <= 1e-12) {
      report.tie_flagged.push_back(q.id_of(i));
    }
  }
  return report;
}

}  // namespace qbaf

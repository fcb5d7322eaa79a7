#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "qbaf/framework.hpp"

namespace qbaf {

/// One argument's evaluation: aggregated attacker strength, aggregated
/// supporter strength, and the resulting dialectical strength.
struct NodeEvaluation {
  double attacker_aggregate = 0.0;  // v_a
  double supporter_aggregate = 0.0;  // v_s
  double strength = 0.0;             // sigma
};

/// Complemented-product aggregation: 1 - prod(1 - s_i), folded left to right
/// in the given order. Empty input yields 0.
inline double aggregate(std::span<const double> parent_strengths) {
  double prod = 1.0;
  for (double s : parent_strengths) {
    if (!(s >= 0.0 && s <= 1.0)) {
      throw error(errc::input_out_of_range, "strength outside [0,1]");
    }
    prod *= 1.0 - s;
  }
  return 1.0 - prod;
}

/// The piecewise influence function: the base score is pulled toward 0 by an
/// attacker surplus and toward 1 by a supporter surplus. Both branches agree
/// when the aggregates tie; the tie evaluates via the first branch.
inline double influence(double base, double attacker_aggregate,
                        double supporter_aggregate) {
  for (double v : {base, attacker_aggregate, supporter_aggregate}) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw error(errc::input_out_of_range, "influence input outside [0,1]");
    }
  }
  if (attacker_aggregate >= supporter_aggregate) {
    return base - base * (attacker_aggregate - supporter_aggregate);
  }
  return base + (1.0 - base) * (supporter_aggregate - attacker_aggregate);
}

/// Result of evaluating one framework: per-argument NodeEvaluation plus the
/// topological order the evaluation ran in. Valid only for the framework it
/// was computed from; operations taking (Qbaf, StrengthAssignment) expect the
/// matching pair.
class StrengthAssignment {
 public:
  StrengthAssignment(std::vector<NodeEvaluation> nodes,
                     std::vector<ArgumentId> order)
      : nodes_(std::move(nodes)), order_(std::move(order)) {}

  const NodeEvaluation& at_index(std::size_t index) const {
    return nodes_[index];
  }
  double strength_at(std::size_t index) const { return nodes_[index].strength; }

  const std::vector<ArgumentId>& topological_order() const { return order_; }
  std::size_t size() const { return nodes_.size(); }

 private:
  std::vector<NodeEvaluation> nodes_;
  std::vector<ArgumentId> order_;
};

namespace detail {

/// Forward pass with one base score overridden; returns per-index strengths.
/// Shared by finite differences, ablation deltas, and the invariability
/// sweep, which all need full re-evaluations at modified base scores.
inline std::vector<double> strengths_with_base(const Qbaf& q,
                                               std::size_t override_index,
                                               double override_value) {
  std::vector<double> sigma(q.size(), 0.0);
  std::vector<double> buffer;
  for (std::uint32_t node : q.topological_indices()) {
    double prod_a = 1.0;
    for (std::uint32_t p : q.attackers_of(node)) prod_a *= 1.0 - sigma[p];
    double prod_s = 1.0;
    for (std::uint32_t p : q.supporters_of(node)) prod_s *= 1.0 - sigma[p];
    double va = 1.0 - prod_a;
    double vs = 1.0 - prod_s;
    double tau = node == override_index ? override_value
                                        : q.base_score_at(node);
    sigma[node] = va >= vs ? tau - tau * (va - vs)
                           : tau + (1.0 - tau) * (vs - va);
  }
  return sigma;
}

}  // namespace detail

/// Evaluates the whole framework once, in topological order. Each argument's
/// aggregates come from its parents' already-final strengths, so the result
/// is the exact fixed point of the recurrence.
inline StrengthAssignment evaluate_strengths(const Qbaf& q) {
  std::vector<NodeEvaluation> nodes(q.size());
  for (std::uint32_t node : q.topological_indices()) {
    double prod_a = 1.0;
    for (std::uint32_t p : q.attackers_of(node)) {
      prod_a *= 1.0 - nodes[p].strength;
    }
    double prod_s = 1.0;
    for (std::uint32_t p : q.supporters_of(node)) {
      prod_s *= 1.0 - nodes[p].strength;
    }
    NodeEvaluation& e = nodes[node];
    e.attacker_aggregate = 1.0 - prod_a;
    e.supporter_aggregate = 1.0 - prod_s;
    double tau = q.base_score_at(node);
    e.strength = e.attacker_aggregate >= e.supporter_aggregate
                     ? tau - tau * (e.attacker_aggregate - e.supporter_aggregate)
                     : tau + (1.0 - tau) *
                           (e.supporter_aggregate - e.attacker_aggregate);
  }
  return StrengthAssignment(std::move(nodes), topological_order(q));
}

/// d sigma(X) / d tau(X) = 1 - |v_a - v_s|. Equals 1 for parentless
/// arguments and shrinks as the aggregates diverge.
inline double base_sensitivity(const NodeEvaluation& eval) {
  return 1.0 - std::fabs(eval.attacker_aggregate - eval.supporter_aggregate);
}

}  // namespace qbaf

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qbaf/attribution.hpp"
#include "qbaf/framework.hpp"
#include "qbaf/semantics.hpp"

namespace qbaf {

enum class ExplanationProperty {
  missingness,
  completeness,
  counterfactuality,
  agreement,
  monotonicity,
  qualitative_invariability,
  quantitative_invariability,
};

inline const char* to_string(ExplanationProperty p) {
  switch (p) {
    case ExplanationProperty::missingness: return "missingness";
    case ExplanationProperty::completeness: return "completeness";
    case ExplanationProperty::counterfactuality: return "counterfactuality";
    case ExplanationProperty::agreement: return "agreement";
    case ExplanationProperty::monotonicity: return "monotonicity";
    case ExplanationProperty::qualitative_invariability:
      return "qualitative-invariability";
    case ExplanationProperty::quantitative_invariability:
      return "quantitative-invariability";
  }
  return "?";
}

/// Outcome of one property check. `vacuous` means the property's antecedent
/// did not trigger; `skipped` means the antecedent was too close to the
/// tolerance boundary to call either way.
enum class VerdictOutcome { holds, fails, vacuous, skipped };

inline const char* to_string(VerdictOutcome o) {
  switch (o) {
    case VerdictOutcome::holds: return "holds";
    case VerdictOutcome::fails: return "FAILS";
    case VerdictOutcome::vacuous: return "vacuous";
    case VerdictOutcome::skipped: return "skipped";
  }
  return "?";
}

struct PropertyVerdict {
  ExplanationProperty property{};
  ArgumentId topic;
  ArgumentId source;
  ArgumentId other;  // second subject of pairwise checks, else empty
  ConnectivityClass connectivity = ConnectivityClass::disconnected;
  VerdictOutcome outcome = VerdictOutcome::holds;
  std::string note;
  /// The numbers the verdict compared, by name, recomputable from the
  /// framework.
  std::vector<std::pair<std::string, double>> witness;

  bool holds() const { return outcome != VerdictOutcome::fails; }
};

/// Tolerance for closed-form identities; finite-difference comparisons use
/// a separate, looser bound in the tests.
inline constexpr double kAnalyticTolerance = 1e-9;

namespace detail {

inline double aae_value(const Qbaf& q, const StrengthAssignment& sa,
                        std::size_t source, std::size_t topic) {
  return strip_negative_zero(attribution_values(q, sa, topic)[source]);
}

/// Pairwise verdicts record the "loosest" of the two subjects' classes, so a
/// failure involving a multifold subject is attributed to multifold
/// connectivity.
inline ConnectivityClass combined_class(ConnectivityClass a,
                                        ConnectivityClass b) {
  auto rank = [](ConnectivityClass c) {
    switch (c) {
      case ConnectivityClass::disconnected: return 0;
      case ConnectivityClass::direct: return 1;
      case ConnectivityClass::indirect: return 2;
      case ConnectivityClass::multifold: return 3;
    }
    return 0;
  };
  return rank(a) >= rank(b) ? a : b;
}

}  // namespace detail

/// Identical framework with tau(x) = 0; the original is untouched.
inline Qbaf ablate(const Qbaf& q, const ArgumentId& x) {
  return q.with_base_score(x, 0.0);
}

/// -tau(source) * aae == sigma'_source(topic) - sigma(topic), to within the
/// analytic tolerance.
inline PropertyVerdict check_completeness(const Qbaf& q, const ArgumentId& topic,
                                          const ArgumentId& source) {
  std::size_t t = q.index_of(topic);
  std::size_t s = q.index_of(source);
  StrengthAssignment sa = evaluate_strengths(q);
  double nabla = detail::aae_value(q, sa, s, t);
  double ablated = detail::strengths_with_base(q, s, 0.0)[t];
  double lhs = -q.base_score_at(s) * nabla;
  double rhs = ablated - sa.strength_at(t);

  PropertyVerdict v;
  v.property = ExplanationProperty::completeness;
  v.topic = topic;
  v.source = source;
  v.connectivity = detail::connectivity_info(q, s, t).cls;
  v.outcome = std::fabs(lhs - rhs) <= kAnalyticTolerance
                  ? VerdictOutcome::holds
                  : VerdictOutcome::fails;
  v.witness = {{"-tau*aae", lhs}, {"delta", rhs}};
  return v;
}

/// A nonnegative attribution means ablating the source cannot raise the
/// topic's strength, and a nonpositive one cannot lower it.
inline PropertyVerdict check_counterfactuality(const Qbaf& q,
                                               const ArgumentId& topic,
                                               const ArgumentId& source) {
  std::size_t t = q.index_of(topic);
  std::size_t s = q.index_of(source);
  StrengthAssignment sa = evaluate_strengths(q);
  double nabla = detail::aae_value(q, sa, s, t);
  double ablated = detail::strengths_with_base(q, s, 0.0)[t];
  double sigma = sa.strength_at(t);

  bool ok = true;
  if (nabla <= 0.0 && ablated < sigma - kAnalyticTolerance) ok = false;
  if (nabla >= 0.0 && ablated > sigma + kAnalyticTolerance) ok = false;

  PropertyVerdict v;
  v.property = ExplanationProperty::counterfactuality;
  v.topic = topic;
  v.source = source;
  v.connectivity = detail::connectivity_info(q, s, t).cls;
  v.outcome = ok ? VerdictOutcome::holds : VerdictOutcome::fails;
  v.witness = {{"aae", nabla}, {"ablated", ablated}, {"sigma", sigma}};
  return v;
}

/// Agreement: equal |tau * aae| contributions must produce equal ablation
/// magnitudes. Monotonicity: strictly smaller contributions must produce
/// strictly smaller ablation magnitudes. Antecedents use the analytic
/// tolerance for "equal" and strict inequality beyond it for "less";
/// consequents landing inside the tolerance band on a strict check are
/// reported as skipped rather than guessed.
inline std::pair<PropertyVerdict, PropertyVerdict> check_pairwise(
    const Qbaf& q, const ArgumentId& topic, const ArgumentId& b,
    const ArgumentId& c) {
  if (b == c) {
    throw error(errc::same_argument,
                "pairwise check needs two distinct arguments, got '" + b + "'");
  }
  std::size_t t = q.index_of(topic);
  std::size_t ib = q.index_of(b);
  std::size_t ic = q.index_of(c);
  StrengthAssignment sa = evaluate_strengths(q);
  std::vector<double> values = detail::attribution_values(q, sa, t);
  double sigma = sa.strength_at(t);

  double contrib_b = std::fabs(q.base_score_at(ib) * values[ib]);
  double contrib_c = std::fabs(q.base_score_at(ic) * values[ic]);
  double delta_b = std::fabs(detail::strengths_with_base(q, ib, 0.0)[t] - sigma);
  double delta_c = std::fabs(detail::strengths_with_base(q, ic, 0.0)[t] - sigma);

  ConnectivityClass cls = detail::combined_class(
      detail::connectivity_info(q, ib, t).cls,
      detail::connectivity_info(q, ic, t).cls);
  std::vector<std::pair<std::string, double>> witness = {
      {"|tau_b*aae_b|", contrib_b},
      {"|tau_c*aae_c|", contrib_c},
      {"|delta_b|", delta_b},
      {"|delta_c|", delta_c}};

  PropertyVerdict agreement;
  agreement.property = ExplanationProperty::agreement;
  agreement.topic = topic;
  agreement.source = b;
  agreement.other = c;
  agreement.connectivity = cls;
  agreement.witness = witness;
  if (std::fabs(contrib_b - contrib_c) <= kAnalyticTolerance) {
    agreement.outcome = std::fabs(delta_b - delta_c) <= kAnalyticTolerance
                            ? VerdictOutcome::holds
                            : VerdictOutcome::fails;
  } else {
    agreement.outcome = VerdictOutcome::vacuous;
  }

  PropertyVerdict monotonicity;
  monotonicity.property = ExplanationProperty::monotonicity;
  monotonicity.topic = topic;
  monotonicity.source = b;
  monotonicity.other = c;
  monotonicity.connectivity = cls;
  monotonicity.witness = witness;
  if (contrib_b < contrib_c - kAnalyticTolerance) {
    if (delta_b < delta_c - kAnalyticTolerance) {
      monotonicity.outcome = VerdictOutcome::holds;
    } else if (delta_b <= delta_c + kAnalyticTolerance) {
      monotonicity.outcome = VerdictOutcome::skipped;
      monotonicity.note = "consequent within tolerance of equality";
    } else {
      monotonicity.outcome = VerdictOutcome::fails;
    }
  } else {
    monotonicity.outcome = VerdictOutcome::vacuous;
  }
  return {agreement, monotonicity};
}

/// Recomputes the attribution with tau(source) swept over the grid
/// (augmented with 0, 1, and the current tau). Qualitative: every swept
/// value keeps the original's sign. Quantitative: the swept values are all
/// equal. Grid verdicts are sampled, not exhaustive; for direct and indirect
/// sources constancy makes any two distinct grid points decisive.
inline std::pair<PropertyVerdict, PropertyVerdict> check_invariability(
    const Qbaf& q, const ArgumentId& topic, const ArgumentId& source,
    std::vector<double> delta_grid) {
  std::size_t t = q.index_of(topic);
  std::size_t s = q.index_of(source);
  for (double d : delta_grid) {
    if (!(d >= 0.0 && d <= 1.0)) {
      throw error(errc::grid_out_of_range,
                  "grid value " + std::to_string(d) + " outside [0,1]");
    }
  }
  delta_grid.push_back(0.0);
  delta_grid.push_back(1.0);
  delta_grid.push_back(q.base_score_at(s));
  std::sort(delta_grid.begin(), delta_grid.end());
  delta_grid.erase(std::unique(delta_grid.begin(), delta_grid.end()),
                   delta_grid.end());

  StrengthAssignment sa = evaluate_strengths(q);
  double original = detail::aae_value(q, sa, s, t);

  double lo = original, hi = original;
  bool sign_ok = true;
  for (double d : delta_grid) {
    Qbaf swept = q.with_base_score(q.id_of(s), d);
    StrengthAssignment swept_sa = evaluate_strengths(swept);
    double swept_value = detail::aae_value(swept, swept_sa, s, t);
    lo = std::min(lo, swept_value);
    hi = std::max(hi, swept_value);
    if (original <= 0.0 && swept_value > kAnalyticTolerance) sign_ok = false;
    if (original >= 0.0 && swept_value < -kAnalyticTolerance) sign_ok = false;
  }

  ConnectivityClass cls = detail::connectivity_info(q, s, t).cls;
  PropertyVerdict qualitative;
  qualitative.property = ExplanationProperty::qualitative_invariability;
  qualitative.topic = topic;
  qualitative.source = source;
  qualitative.connectivity = cls;
  qualitative.outcome = sign_ok ? VerdictOutcome::holds : VerdictOutcome::fails;
  qualitative.note = "sampled grid";
  qualitative.witness = {{"aae", original}, {"min_swept", lo}, {"max_swept", hi}};

  PropertyVerdict quantitative = qualitative;
  quantitative.property = ExplanationProperty::quantitative_invariability;
  quantitative.outcome = hi - lo <= kAnalyticTolerance ? VerdictOutcome::holds
                                                       : VerdictOutcome::fails;
  return {qualitative, quantitative};
}

/// A disconnected source must get an exactly-zero attribution; for connected
/// sources the check is vacuous and just records the class.
inline PropertyVerdict check_missingness(const Qbaf& q, const ArgumentId& topic,
                                         const ArgumentId& source) {
  std::size_t t = q.index_of(topic);
  std::size_t s = q.index_of(source);
  StrengthAssignment sa = evaluate_strengths(q);
  double nabla = detail::aae_value(q, sa, s, t);
  ConnectivityClass cls = detail::connectivity_info(q, s, t).cls;

  PropertyVerdict v;
  v.property = ExplanationProperty::missingness;
  v.topic = topic;
  v.source = source;
  v.connectivity = cls;
  v.witness = {{"aae", nabla}};
  if (cls == ConnectivityClass::disconnected) {
    v.outcome = nabla == 0.0 ? VerdictOutcome::holds : VerdictOutcome::fails;
  } else {
    v.outcome = VerdictOutcome::vacuous;
  }
  return v;
}

/// Configuration of the random framework generator. Output is a function of
/// the seed alone.
struct GeneratorConfig {
  int node_count = 8;
  double edge_probability = 0.3;
  double attack_fraction = 0.5;
  enum class BaseScores { uniform, constant } base_scores = BaseScores::uniform;
  double constant_value = 0.5;
  std::uint64_t seed = 0;
  /// Resample (bounded retries) until no argument with parents has its
  /// aggregates within 1e-6 of a tie. Parentless arguments always have
  /// v_a = v_s = 0 but no incoming derivative, so they are exempt.
  bool tie_avoidance = false;
};

namespace detail {

/// Deterministic uniform draws independent of the standard library's
/// distribution implementations.
class SeededDraws {
 public:
  explicit SeededDraws(std::uint64_t seed) : engine_(seed) {}

  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  std::size_t below(std::size_t bound) {
    return std::min<std::size_t>(
        static_cast<std::size_t>(uniform01() * static_cast<double>(bound)),
        bound - 1);
  }

 private:
  std::mt19937_64 engine_;
};

inline bool has_near_tie(const Qbaf& q, const StrengthAssignment& sa) {
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q.attackers_of(i).empty() && q.supporters_of(i).empty()) continue;
    const NodeEvaluation& e = sa.at_index(i);
    if (std::fabs(e.attacker_aggregate - e.supporter_aggregate) <= 1e-6) {
      return true;
    }
  }
  return false;
}

}  // namespace detail

/// Samples an acyclic framework: draw a random node order, include each
/// forward pair as an edge independently, and make each edge an attack with
/// the configured probability.
inline Qbaf random_qbaf(const GeneratorConfig& cfg) {
  if (cfg.node_count < 1) {
    throw error(errc::input_out_of_range, "node_count must be >= 1");
  }
  for (double p : {cfg.edge_probability, cfg.attack_fraction}) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw error(errc::input_out_of_range, "probability outside [0,1]");
    }
  }

  int width = 1;
  for (int v = cfg.node_count; v >= 10; v /= 10) ++width;
  auto make_id = [&](int i) {
    std::string digits = std::to_string(i);
    return "a" + std::string(width - digits.size(), '0') + digits;
  };

  for (int attempt = 0; attempt < 1000; ++attempt) {
    detail::SeededDraws draws(cfg.seed * 0x9e3779b97f4a7c15ULL +
                              static_cast<std::uint64_t>(attempt));
    int n = cfg.node_count;
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    for (int i = n - 1; i > 0; --i) {
      std::swap(order[i], order[draws.below(static_cast<std::size_t>(i) + 1)]);
    }

    std::vector<ArgumentSpec> specs;
    specs.reserve(n);
    for (int i = 0; i < n; ++i) {
      double score = cfg.base_scores == GeneratorConfig::BaseScores::uniform
                         ? draws.uniform01()
                         : cfg.constant_value;
      specs.push_back({make_id(i), score, ""});
    }
    std::vector<EdgePair> attacks, supports;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (draws.uniform01() < cfg.edge_probability) {
          bool is_attack = draws.uniform01() < cfg.attack_fraction;
          (is_attack ? attacks : supports)
              .emplace_back(make_id(order[i]), make_id(order[j]));
        }
      }
    }
    Qbaf q = build_qbaf(std::move(specs), std::move(attacks),
                        std::move(supports));
    if (!cfg.tie_avoidance || !detail::has_near_tie(q, evaluate_strengths(q))) {
      return q;
    }
  }
  throw error(errc::tie_avoidance_exhausted,
              "no tie-free framework after 1000 attempts");
}

/// Runs every single-source checker for every argument and the pairwise
/// checkers for every unordered pair, against one topic. Invariability uses
/// an 11-point grid. Failures under multifold connectivity are expected
/// behaviour of the semantics and are recorded, not asserted against.
inline std::vector<PropertyVerdict> run_suite(const Qbaf& q,
                                              const ArgumentId& topic) {
  q.index_of(topic);
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);

  std::vector<PropertyVerdict> out;
  const auto& ids = q.arguments();
  for (const ArgumentId& source : ids) {
    if (source == topic) continue;
    out.push_back(check_missingness(q, topic, source));
    out.push_back(check_completeness(q, topic, source));
    out.push_back(check_counterfactuality(q, topic, source));
    auto [qual, quant] = check_invariability(q, topic, source, grid);
    out.push_back(std::move(qual));
    out.push_back(std::move(quant));
  }
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] == topic) continue;
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      if (ids[j] == topic) continue;
      auto [agreement, monotonicity] = check_pairwise(q, topic, ids[i], ids[j]);
      out.push_back(std::move(agreement));
      out.push_back(std::move(monotonicity));
    }
  }
  return out;
}

}  // namespace qbaf

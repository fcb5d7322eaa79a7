// Builds a small review-aggregation framework in code, evaluates it, and
// prints the ranked attribution report plus its Graphviz rendering.

#include <cstdio>

#include "qbaf/qbaf.hpp"

int main() {
  using namespace qbaf;

  Qbaf q = build_qbaf(
      {{"verdict", 0.5, "the product is worth buying"},
       {"battery", 0.8, "battery life is excellent"},
       {"screen", 0.6, "screen is sharp"},
       {"price", 0.7, "price is too high"},
       {"discount", 0.5, "discount available this month"}},
      {{"price", "verdict"}, {"discount", "price"}},
      {{"battery", "verdict"}, {"screen", "verdict"}});

  StrengthAssignment sa = evaluate_strengths(q);
  std::printf("strengths:\n");
  for (std::size_t i = 0; i < q.size(); ++i) {
    std::printf("  %-9s sigma=%.5f  (base %.2f)\n", q.id_of(i).c_str(),
                sa.strength_at(i), q.base_score_at(i));
  }

  AttributionReport report = attribution_report(q, "verdict");
  std::printf("\nattributions toward 'verdict' (descending):\n");
  for (const AttributionRow& row : report.rows) {
    std::printf("  %-9s aae=%+.5f  ablated=%.5f  delta=%+.5f  (%s)\n",
                row.source.c_str(), row.aae, row.ablated_strength, row.delta,
                to_string(row.influence));
  }

  std::printf("\n%s", export_dot(q, report).c_str());
  return 0;
}

// Cross-validates the reverse-mode attributions against finite differences
// on a batch of random frameworks and reports the worst deviation.

#include <cmath>
#include <cstdio>

#include "qbaf/qbaf.hpp"

int main() {
  using namespace qbaf;

  double worst = 0.0;
  int frameworks = 0;
  for (std::uint64_t seed = 0; frameworks < 100 && seed < 200; ++seed) {
    GeneratorConfig cfg;
    cfg.node_count = static_cast<int>(3 + seed % 10);
    cfg.edge_probability = 0.35;
    cfg.seed = seed;
    cfg.tie_avoidance = true;
    Qbaf q = [&]() -> Qbaf {
      try {
        return random_qbaf(cfg);
      } catch (const error&) {
        cfg.edge_probability = 0.2;
        return random_qbaf(cfg);
      }
    }();
    ++frameworks;
    const ArgumentId topic = q.arguments().back();
    for (const auto& [source, aae] : aae_all(q, topic)) {
      double fd = aae_finite_difference(q, topic, source, 1e-6);
      worst = std::max(worst, std::fabs(aae.value - fd));
    }
  }
  std::printf("checked %d frameworks; worst |reverse - fd| = %.3g\n",
              frameworks, worst);
  return worst < 1e-4 ? 0 : 1;
}

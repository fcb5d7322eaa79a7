// Acceptance suite: every criterion runs at its stated tolerance and prints
// one pass/fail line.

#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qbaf/cli.hpp"
#include "qbaf/qbaf.hpp"

using namespace qbaf;

namespace {

class Acceptance : public ::testing::Test {
 protected:
  void Describe(int number, std::string label) {
    number_ = number;
    label_ = std::move(label);
  }
  void TearDown() override {
    std::printf("[ACCEPTANCE] criterion %d (%s): %s\n", number_,
                label_.c_str(), HasFailure() ? "FAIL" : "PASS");
    std::fflush(stdout);
  }

 private:
  int number_ = 0;
  std::string label_;
};

template <typename Fn>
double best_of_ms(int repeats, Fn&& fn) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < repeats; ++i) {
    auto start = std::chrono::steady_clock::now();
    fn();
    auto stop = std::chrono::steady_clock::now();
    best = std::min(
        best, std::chrono::duration<double, std::milli>(stop - start).count());
  }
  return best;
}

// The 500 seeded tie-free frameworks shared by criteria 5 and 6. Constant
// base scores: the satisfaction guarantees under direct/indirect
// connectivity need the semantics to stay linear in each base score, and a
// node's case coefficient pair only coincides at base score one half.
std::vector<Qbaf> seeded_frameworks() {
  std::vector<Qbaf> out;
  std::uint64_t seed = 0;
  while (out.size() < 500) {
    GeneratorConfig cfg;
    cfg.node_count = static_cast<int>(2 + seed % 11);  // n <= 12
    cfg.edge_probability = 0.35;
    cfg.attack_fraction = 0.5;
    cfg.base_scores = GeneratorConfig::BaseScores::constant;
    cfg.seed = seed++;
    cfg.tie_avoidance = true;
    try {
      out.push_back(random_qbaf(cfg));
    } catch (const error&) {
      // dense tiny graphs may exhaust tie avoidance; take the next seed
    }
  }
  return out;
}

Qbaf random_chain(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  int width = 1;
  for (int v = n; v >= 10; v /= 10) ++width;
  std::vector<ArgumentSpec> specs;
  std::vector<EdgePair> attacks, supports;
  auto make_id = [&](int i) {
    std::string digits = std::to_string(i);
    return "n" + std::string(width - digits.size(), '0') + digits;
  };
  for (int i = 0; i < n; ++i) specs.push_back({make_id(i), 0.5, ""});
  for (int i = 0; i + 1 < n; ++i) {
    (rng() % 2 == 0 ? attacks : supports)
        .emplace_back(make_id(i), make_id(i + 1));
  }
  return build_qbaf(std::move(specs), std::move(attacks), std::move(supports));
}

TEST_F(Acceptance, Criterion1RunningExampleStrengths) {
  Describe(1, "running-example strengths, exact, < 1 ms");
  Qbaf q = fixtures::framework("running");
  std::optional<StrengthAssignment> sa;
  double ms = best_of_ms(20, [&] { sa = evaluate_strengths(q); });
  auto strength = [&](const char* id) {
    return sa->strength_at(q.index_of(id));
  };
  EXPECT_EQ(strength("A"), 0.375);
  EXPECT_EQ(strength("B"), 0.5);
  EXPECT_EQ(strength("C"), 0.25);
  EXPECT_EQ(strength("D"), 0.375);
  EXPECT_EQ(strength("F"), 0.75);
  EXPECT_EQ(strength("G"), 0.125);
  EXPECT_LT(ms, 1.0);
}

TEST_F(Acceptance, Criterion2FakenewsTableReproduction) {
  Describe(2, "fakenews ranking reproduces the published table, < 10 ms");
  std::string csv;
  double ms = best_of_ms(5, [&] {
    std::ostringstream out, err;
    ASSERT_EQ(qbaf::cli::run({"rank", "fakenews", "--topic", "A"}, out, err), 0);
    csv = out.str();
  });
  const char* expected[] = {
      "argument,tau,ablated_strength,delta,aae,aae_exact",
      "C,0.50000,0.40625,-0.18750,0.37500,0.375",
      "B,0.50000,0.53125,-0.06250,0.12500,0.125",
      "F,0.50000,0.56250,-0.03125,0.06250,0.0625",
      "G,0.50000,0.62500,0.03125,-0.06250,-0.0625",
      "H,0.50000,0.62500,0.03125,-0.06250,-0.0625",
      "E,0.50000,0.65625,0.06250,-0.12500,-0.125",
      "D,0.50000,0.81250,0.21875,-0.43750,-0.4375",
  };
  std::istringstream lines(csv);
  std::string line;
  for (const char* want : expected) {
    ASSERT_TRUE(std::getline(lines, line));
    EXPECT_EQ(line, want);
  }
  EXPECT_FALSE(std::getline(lines, line));
  EXPECT_LT(ms, 10.0);
}

TEST_F(Acceptance, Criterion3MovieTableReproduction) {
  Describe(3, "movie ranking matches the published table within 5e-5, < 10 ms");
  std::optional<AttributionReport> report;
  Qbaf q = fixtures::framework("movie");
  double ms = best_of_ms(5, [&] { report = attribution_report(q, "m"); });
  struct Row {
    const char* source;
    double tau, ablated, delta, aae;
  };
  const Row table[] = {
      {"Acting", 0.16, 0.81954, -0.02820, 0.17625},
      {"Actor2", 0.07, 0.83660, -0.01114, 0.15920},
      {"Actor1", 0.05, 0.83995, -0.00779, 0.15585},
      {"Directing", 0.05, 0.83995, -0.00779, 0.15584},
      {"Writing", 0.02, 0.85194, 0.0042, -0.21},
  };
  ASSERT_EQ(report->rows.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(report->rows[i].source, table[i].source);
    EXPECT_NEAR(report->rows[i].base_score, table[i].tau, 5e-5);
    EXPECT_NEAR(report->rows[i].ablated_strength, table[i].ablated, 5e-5);
    EXPECT_NEAR(report->rows[i].delta, table[i].delta, 5e-5);
    EXPECT_NEAR(report->rows[i].aae, table[i].aae, 5e-5);
  }
  EXPECT_LT(ms, 10.0);
}

TEST_F(Acceptance, Criterion4AnalyticExampleValues) {
  Describe(4, "running-example analytic attributions, exact");
  Qbaf q = fixtures::framework("running");
  StrengthAssignment sa = evaluate_strengths(q);
  EXPECT_EQ(aae_direct(q, sa, "D", "A").value, -0.375);
  EXPECT_EQ(aae_indirect(q, sa, "C", "A").value, 0.125);
  auto all = aae_all(q, "A");
  EXPECT_EQ(all.at("B").value, -0.25);  // multifold, reverse pass
  EXPECT_EQ(all.at("F").value, -0.125);
  EXPECT_EQ(all.at("G").value, 0.125);
}

TEST_F(Acceptance, Criterion5OracleEquivalence) {
  Describe(5, "reverse mode vs finite differences and analytic routes, "
              "500 random frameworks");
  for (const Qbaf& q : seeded_frameworks()) {
    StrengthAssignment sa = evaluate_strengths(q);
    for (const ArgumentId& topic : {q.arguments().front(), q.arguments().back()}) {
      auto all = aae_all(q, topic);
      for (const ArgumentId& source : q.arguments()) {
        if (source == topic) continue;
        double reverse = all.at(source).value;
        EXPECT_NEAR(reverse, aae_finite_difference(q, topic, source, 1e-6),
                    1e-4)
            << source << "->" << topic;
        switch (classify_connectivity(q, source, topic)) {
          case ConnectivityClass::direct:
            EXPECT_NEAR(reverse, aae_direct(q, sa, source, topic).value, 1e-12);
            break;
          case ConnectivityClass::indirect:
            EXPECT_NEAR(reverse, aae_indirect(q, sa, source, topic).value,
                        1e-12);
            break;
          default:
            break;
        }
      }
    }
  }
}

TEST_F(Acceptance, Criterion6PropertyGuarantees) {
  Describe(6, "zero direct/indirect property failures on the same 500 "
              "frameworks, exact-zero missingness");
  for (const Qbaf& q : seeded_frameworks()) {
    const ArgumentId& topic = q.arguments().back();
    for (const PropertyVerdict& v : run_suite(q, topic)) {
      if (v.connectivity == ConnectivityClass::direct ||
          v.connectivity == ConnectivityClass::indirect) {
        EXPECT_NE(v.outcome, VerdictOutcome::fails)
            << to_string(v.property) << " " << v.source << " " << v.other;
      }
      if (v.property == ExplanationProperty::missingness &&
          v.connectivity == ConnectivityClass::disconnected) {
        EXPECT_EQ(v.outcome, VerdictOutcome::holds);
        EXPECT_EQ(v.witness[0].second, 0.0);
      }
    }
    // missingness over every ordered pair, not just the suite's topic
    for (const ArgumentId& t : q.arguments()) {
      for (const auto& [source, aae] : aae_all(q, t)) {
        if (classify_connectivity(q, source, t) ==
            ConnectivityClass::disconnected) {
          EXPECT_EQ(aae.value, 0.0) << source << "->" << t;
        }
      }
    }
  }
}

TEST_F(Acceptance, Criterion7CounterexampleFidelity) {
  Describe(7, "counterexample fixtures reproduce the published numbers "
              "within 1e-9 and fail the right properties");
  {
    Qbaf q = fixtures::framework("cx-complete");
    EXPECT_NEAR(evaluate_strengths(q).strength_at(q.index_of("A")), 0.96875,
                1e-9);
    EXPECT_NEAR(aae_all(q, "A").at("D").value, 0.125, 1e-9);
    EXPECT_NEAR(detail::strengths_with_base(q, q.index_of("D"), 0.0)
                    [q.index_of("A")],
                0.875, 1e-9);
    EXPECT_EQ(check_completeness(q, "A", "D").outcome, VerdictOutcome::fails);
  }
  {
    Qbaf q = fixtures::framework("cx-agree");
    EXPECT_NEAR(evaluate_strengths(q).strength_at(q.index_of("A")), 0.90625,
                1e-9);
    EXPECT_NEAR(aae_all(q, "A").at("E").value, -0.5, 1e-9);
    EXPECT_NEAR(detail::strengths_with_base(q, q.index_of("D"), 0.0)
                    [q.index_of("A")],
                0.8125, 1e-9);
    EXPECT_NEAR(detail::strengths_with_base(q, q.index_of("E"), 0.0)
                    [q.index_of("A")],
                0.96875, 1e-9);
    EXPECT_EQ(check_pairwise(q, "A", "D", "E").first.outcome,
              VerdictOutcome::fails);

    Qbaf variant = q.with_base_score("E", 0.15);
    auto monotonicity = check_pairwise(variant, "A", "D", "E").second;
    EXPECT_EQ(monotonicity.outcome, VerdictOutcome::fails);
    EXPECT_NEAR(monotonicity.witness[2].second, 0.09375, 1e-9);
    EXPECT_NEAR(monotonicity.witness[3].second, 0.075, 1e-9);
  }
  {
    Qbaf q = fixtures::framework("cx-invar");
    EXPECT_NEAR(evaluate_strengths(q).strength_at(q.index_of("A")), 0.316,
                1e-9);
    EXPECT_NEAR(aae_all(q, "A").at("E").value, -0.18, 1e-9);
    EXPECT_NEAR(aae_all(q.with_base_score("E", 0.4), "A").at("E").value, 0.18,
                1e-9);
    EXPECT_NEAR(detail::strengths_with_base(q, q.index_of("E"), 0.0)
                    [q.index_of("A")],
                0.1, 1e-9);
    EXPECT_EQ(check_counterfactuality(q, "A", "E").outcome,
              VerdictOutcome::fails);
    auto [qual, quant] = check_invariability(q, "A", "E", {0.4, 0.6});
    EXPECT_EQ(qual.outcome, VerdictOutcome::fails);
    EXPECT_EQ(quant.outcome, VerdictOutcome::fails);
  }
}

TEST_F(Acceptance, Criterion8LinearTimeAttribution) {
  Describe(8, "chain attribution scales linearly, 1e5 nodes < 1 s");
  struct Sample {
    int n;
    int repeats;
    double ms = 0.0;
  };
  Sample samples[] = {{1000, 30}, {10000, 10}, {100000, 3}};
  for (Sample& s : samples) {
    Qbaf chain = random_chain(s.n, 99);
    const ArgumentId topic = chain.arguments().back();
    s.ms = best_of_ms(s.repeats, [&] {
      auto all = aae_all(chain, topic);
      ASSERT_EQ(all.size(), static_cast<std::size_t>(s.n) - 1);
    });
  }
  EXPECT_LT(samples[2].ms, 1000.0);
  // within 2x of linear extrapolation from the smaller sizes
  EXPECT_LT(samples[1].ms, 2.0 * 10.0 * samples[0].ms)
      << samples[0].ms << " -> " << samples[1].ms;
  EXPECT_LT(samples[2].ms, 2.0 * 10.0 * samples[1].ms)
      << samples[1].ms << " -> " << samples[2].ms;
  std::printf("[ACCEPTANCE]   chain timings: 1e3 %.3f ms, 1e4 %.3f ms, "
              "1e5 %.3f ms\n",
              samples[0].ms, samples[1].ms, samples[2].ms);
}

TEST_F(Acceptance, Criterion9FraudReferenceTable) {
  Describe(9, "fraud reference loads, sorts, and matches the published "
              "extremes; no evaluation");
  std::vector<FraudReferenceRow> rows = fixtures::fraud_reference_rows();
  ASSERT_EQ(rows.size(), 47u);
  sort_fraud_reference(rows);
  EXPECT_EQ(rows.front().index, 2);
  EXPECT_DOUBLE_EQ(rows.front().aae, 4.99e-1);
  EXPECT_EQ(rows.back().index, 3);
  EXPECT_DOUBLE_EQ(rows.back().aae, -7.81e-3);
  std::ostringstream out, err;
  EXPECT_EQ(qbaf::cli::run({"eval", "fraud-reference"}, out, err), 1);
}

}  // namespace

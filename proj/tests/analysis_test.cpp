// Copyright 2026 The AWTP-PD Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "awtp/analysis.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "test_util.hpp"

namespace awtp {
namespace {

using testing::field_digits;
using testing::Gen;
using testing::ipow;

Rational R(const char* s) { return Rational::parse(s); }

double H2(double p) { return p <= 0.0 || p >= 1.0 ? 0.0 : -p * std::log2(p) - (1 - p) * std::log2(1 - p); }

// Plain bisection on H2, independent of the library.
double inverse_h(double target) {
  double lo = 0.0;
  double hi = 0.5;
  for (int i = 0; i < 200; ++i) {
    const double mid = (lo + hi) / 2;
    if (H2(mid) >= target) hi = mid;
    else lo = mid;
  }
  return hi;
}

TEST(DistanceTest, Examples) {
  const Distribution p({{"a", 0.5}, {"b", 0.5}});
  const Distribution q({{"a", 0.75}, {"b", 0.25}});
  EXPECT_DOUBLE_EQ(statistical_distance(p, p), 0.0);
  EXPECT_DOUBLE_EQ(statistical_distance(p, q), 0.25);
  EXPECT_DOUBLE_EQ(statistical_distance(Distribution({{"x", 1.0}}), Distribution({{"y", 1.0}})), 1.0);
  EXPECT_THROW(Distribution({{"a", 0.5}}), std::invalid_argument);
  EXPECT_THROW(Distribution({{"a", -0.5}, {"b", 1.5}}), std::invalid_argument);
}

TEST(DistanceProperty, IsAMetricBoundedByOne) {
  Gen gen(81);
  auto random_dist = [&]() {
    std::map<std::string, std::uint64_t> counts;
    for (int i = 0; i < 6; ++i) counts[std::string(1, static_cast<char>('a' + gen.below(6)))] += 1 + gen.below(9);
    return Distribution::from_counts(counts);
  };
  for (int trial = 0; trial < 500; ++trial) {
    const Distribution a = random_dist();
    const Distribution b = random_dist();
    const Distribution c = random_dist();
    const double ab = statistical_distance(a, b);
    ASSERT_GE(ab, 0.0);
    ASSERT_LE(ab, 1.0 + 1e-12);
    ASSERT_NEAR(ab, statistical_distance(b, a), 1e-15);
    ASSERT_LE(statistical_distance(a, c), ab + statistical_distance(b, c) + 1e-12);
  }
}

TEST(ExactDistanceTest, CountsOverTwoT) {
  const std::map<std::string, std::uint64_t> a{{"x", 3}, {"y", 1}};
  const std::map<std::string, std::uint64_t> b{{"x", 1}, {"z", 3}};
  const ExactDistance d = exact_statistical_distance(a, b);
  EXPECT_EQ(d.numerator, 2u + 1u + 3u);
  EXPECT_EQ(d.denominator, 8u);
  EXPECT_EQ(exact_statistical_distance(a, a).numerator, 0u);
  EXPECT_THROW(exact_statistical_distance(a, {{"x", 1}}), std::invalid_argument);
}

TEST(EntropyTest, Examples) {
  EXPECT_NEAR(shannon_entropy(Distribution::uniform(8)), 3.0, 1e-12);
  EXPECT_NEAR(min_entropy(Distribution::uniform(8)), 3.0, 1e-12);
  EXPECT_DOUBLE_EQ(shannon_entropy(Distribution({{"a", 1.0}})), 0.0);
  EXPECT_DOUBLE_EQ(min_entropy(Distribution({{"a", 1.0}})), 0.0);
  EXPECT_NEAR(binary_entropy(0.25), 0.8112781244591328, 1e-12);
  EXPECT_DOUBLE_EQ(binary_entropy(0.0), 0.0);
  EXPECT_DOUBLE_EQ(binary_entropy(1.0), 0.0);
  EXPECT_DOUBLE_EQ(binary_entropy(0.5), 1.0);
}

TEST(EntropyProperty, MinEntropyNeverExceedsShannon) {
  Gen gen(82);
  for (int trial = 0; trial < 300; ++trial) {
    std::map<std::string, std::uint64_t> counts;
    for (int i = 0; i < 10; ++i) counts[std::to_string(gen.below(8))] += 1 + gen.below(20);
    const Distribution d = Distribution::from_counts(counts);
    ASSERT_LE(min_entropy(d), shannon_entropy(d) + 1e-12);
    ASSERT_LE(shannon_entropy(d), std::log2(static_cast<double>(counts.size())) + 1e-12);
  }
}

TEST(RateBoundTest, Examples) {
  EXPECT_DOUBLE_EQ(rate_upper_bound({.rho = 0.5}), 0.5);
  EXPECT_DOUBLE_EQ(rate_upper_bound({.rho = 1.0}), 0.0);
  const double eps = std::exp2(-10);
  const BoundsQuery q{.rho = 0.5, .epsilon = eps, .pd_bits = 100, .log2_alphabet = 10};
  EXPECT_NEAR(rate_upper_bound(q), 0.5 + 2 * eps * (1 + 1) + 2 * eps * 100, 1e-15);
  EXPECT_NEAR(rate_upper_bound(q), 0.6992, 1e-4);
}

// The bound grows with epsilon and n and falls with rho.
TEST(RateBoundProperty, MonotoneOnAGrid) {
  for (double rho = 0.0; rho <= 1.0; rho += 0.125) {
    double prev = -1.0;
    for (int k = 20; k >= 2; --k) {
      const double b = rate_upper_bound({.rho = rho, .epsilon = std::exp2(-k), .pd_bits = 10, .log2_alphabet = 8});
      ASSERT_GT(b, prev);
      ASSERT_GE(b, 1.0 - rho);
      prev = b;
    }
    ASSERT_LT(rate_upper_bound({.rho = rho, .epsilon = 0.01, .pd_bits = 1, .log2_alphabet = 8}),
              rate_upper_bound({.rho = rho, .epsilon = 0.01, .pd_bits = 2, .log2_alphabet = 8}));
    if (rho > 0.0) ASSERT_LT(rate_upper_bound({.rho = rho}), rate_upper_bound({.rho = rho - 0.125}));
  }
}

TEST(TwoRoundDeltaTest, Examples) {
  EXPECT_NEAR(min_delta_two_round(2), inverse_h(0.25), 1e-9);
  EXPECT_NEAR(min_delta_two_round(2), 0.0415, 5e-4);
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_NEAR(min_delta_two_round(inf), inverse_h(0.5), 1e-9);
  EXPECT_NEAR(min_delta_two_round(inf), 0.1100, 1e-3);
  EXPECT_DOUBLE_EQ(min_delta_two_round(1), 0.0);
}

TEST(TwoRoundDeltaProperty, MatchesOracleAndRisesWithM) {
  double prev = 0.0;
  for (double m = 1; m <= 1 << 20; m *= 2) {
    const double d = min_delta_two_round(m);
    ASSERT_NEAR(d, inverse_h((1 - 1 / m) / 2), 1e-9);
    ASSERT_GE(2 * H2(d), 1 - 1 / m - 1e-9);
    ASSERT_GE(d, prev);
    prev = d;
  }
}

TEST(TrBoundTest, PerfectAndEpsilonSecureExamples) {
  EXPECT_DOUBLE_EQ(smt_tr_lower_bound({.N = 4, .t = 2}, TrBoundVariant::kPerfect), 2.0);
  EXPECT_DOUBLE_EQ(smt_tr_lower_bound({.N = 10, .t = 3}, TrBoundVariant::kEpsilonSecure), 10.0 / 7.0);
  EXPECT_THROW(smt_tr_lower_bound({.N = 4, .t = 4}, TrBoundVariant::kPerfect), std::invalid_argument);
}

TEST(TrBoundTest, WorkedComparisonAgainstDirectFormulas) {
  for (double N : {8.0, 16.0, 32.0}) {
    for (double t = 0; t < N; t += N / 4) {
      const double eps = std::exp2(-N);
      const BoundsQuery q{.epsilon = eps, .pd_bits = 3 * N, .log2_alphabet = 4, .N = N, .t = t, .log2_messages = N};
      EXPECT_NEAR(smt_tr_lower_bound(q, TrBoundVariant::kGgo10), N / (N - t) * (1 - std::log2(3.0) / N), 1e-9);
      const double eps_prime = 2 * N * eps * (1 + N / 4) + 2 * eps * (3 * N) * N;
      EXPECT_NEAR(smt_epsilon_prime(q), eps_prime, 1e-15);
      EXPECT_NEAR(smt_tr_lower_bound(q, TrBoundVariant::kEpsilonSecure), N / (N - t + eps_prime), 1e-9);
    }
  }
}

TEST(TrBoundTest, DeltaTermsEnterTheDenominator) {
  const BoundsQuery q{.delta = 0.01, .pd_bits = 5, .N = 6, .t = 2};
  EXPECT_NEAR(smt_tr_lower_bound(q, TrBoundVariant::kPerfect), 6 / (4 + 2 * H2(0.01) * 6 + 0.01 * 5 * 6), 1e-12);
}

TEST(Table1Test, RowsFollowTheFormulas) {
  const auto rows = table1(8, 16, 0.01);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[3].name, "This Work");
  EXPECT_NEAR(rows[3].info_rate, 0.49, 1e-12);
  EXPECT_NEAR(rows[0].info_rate, 0.49, 1e-12);
  EXPECT_NEAR(rows[2].info_rate, 1.0 / 6.0, 1e-12);
  EXPECT_TRUE(rows[2].info_rate_is_upper_bound);
  EXPECT_FALSE(rows[3].info_rate_is_upper_bound);
  EXPECT_DOUBLE_EQ(table1_rate(SmtPdProtocol::kThisWork, 8, 16, 0.0), 0.5);
  EXPECT_DOUBLE_EQ(table1_rate(SmtPdProtocol::kThisWork, 0, 16, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(table1_rate(SmtPdProtocol::kGaray1, 0, 16, 0.0), 1.0);
}

TEST(RoundShapeTest, AllTwoRoundShapesAreRuledOutAtTheThreshold) {
  const auto shapes = two_round_shapes();
  ASSERT_EQ(shapes.size(), 5u);
  for (double rr = 0.0; rr <= 1.0; rr += 0.25) {
    for (double rw = 0.0; rw <= 1.0; rw += 0.25) {
      for (const auto& shape : shapes) {
        const RoundVerdict v = check_round_shape(shape, rr, rw);
        ASSERT_EQ(v.ruled_out, rr + rw >= 1.0) << rr << " " << rw;
        ASSERT_FALSE(v.reason.empty());
      }
    }
  }
}

TEST(RoundShapeTest, OtherShapes) {
  using enum RoundKind;
  EXPECT_FALSE(check_round_shape({kAwtpAliceToBob, kPdBobToAlice, kPdAliceToBob}, 0.5, 0.5).ruled_out);
  EXPECT_TRUE(check_round_shape({kAwtpAliceToBob}, 0.5, 0.5).ruled_out);
  EXPECT_FALSE(check_round_shape({kAwtpAliceToBob}, 0.25, 0.5).ruled_out);
  EXPECT_TRUE(check_round_shape({kPdAliceToBob, kPdBobToAlice, kPdAliceToBob}, 0.0, 0.0).ruled_out);
  EXPECT_THROW(check_round_shape({kAwtpAliceToBob}, 1.5, 0.0), std::invalid_argument);
}

// Achieved rate (u-1)(1-rho)/u against 1 - rho - xi and the capacity 1 - rho.
TEST(RateAchievabilityTest, ConvergesToCapacity) {
  for (auto [xi, u] : {std::pair{0.2, 5u}, std::pair{0.1, 10u}, std::pair{0.05, 20u}}) {
    for (std::size_t N : {2u, 4u, 10u, 20u}) {
      const ProtocolConfig cfg =
          ProtocolConfig::make(N, u, R("1/2"), R("1/2"), {.q = std::nullopt, .rho = R("1/2"), .ell = std::nullopt});
      ASSERT_EQ(cfg.ell, (u - 1) * N / 2);
      ASSERT_GE(cfg.rate(), 1 - 0.5 - xi);
      ASSERT_LE(cfg.rate(), rate_upper_bound({.rho = 0.5}));
    }
  }
}

ProtocolConfig tiny_config() {
  return ProtocolConfig::make(2, 2, R("1/2"), R("1/2"), {.q = 5, .rho = R("1/2"), .ell = std::nullopt});
}

TEST(SecrecyTest, RestrictedSingleComponentIsPerfectlySecret) {
  const ProtocolConfig cfg = tiny_config();
  const ReadWriteSets sets(2, {0}, {0});
  for (AdversaryKind kind : {AdversaryKind::kPassive, AdversaryKind::kSubstitution}) {
    const SecurityReport r =
        verify_secrecy_exhaustive(cfg, to_field({1}, cfg.q), to_field({4}, cfg.q), {kind, sets, 7});
    EXPECT_TRUE(r.exact);
    EXPECT_EQ(r.samples, ipow(5, 6));
    ASSERT_TRUE(r.sd_exact.has_value());
    EXPECT_EQ(r.sd_exact->numerator, 0u);
    EXPECT_EQ(r.sd_exact->denominator, 2 * ipow(5, 6));
    EXPECT_TRUE(r.secrecy_condition);
    EXPECT_LE(r.measured_failure_rate, r.bound_failure);
    if (kind == AdversaryKind::kPassive) EXPECT_EQ(r.failures, 0u);
  }
}

TEST(SecrecyTest, EqualMessagesHaveZeroDistance) {
  const ProtocolConfig cfg = ProtocolConfig::make(2, 2, R("1"), R("0"), {.q = 5, .rho = std::nullopt, .ell = 1});
  const FieldVector m = to_field({2}, cfg.q);
  const SecurityReport r = verify_secrecy_exhaustive(cfg, m, m, {AdversaryKind::kPassive, ReadWriteSets(2, {0, 1}, {}), 0});
  EXPECT_EQ(r.sd_exact->numerator, 0u);
}

// Negative control, checked against a direct enumeration that buckets
// serialized views from run_protocol.
TEST(SecrecyTest, FullReadLeaksAndMatchesDirectEnumeration) {
  const ProtocolConfig cfg = ProtocolConfig::make(2, 2, R("1"), R("0"), {.q = 5, .rho = std::nullopt, .ell = 1});
  ASSERT_FALSE(cfg.secrecy_condition_holds());
  const ReadWriteSets sets(2, {0, 1}, {});
  const FieldVector m1 = to_field({0}, cfg.q);
  const FieldVector m2 = to_field({1}, cfg.q);
  const SecurityReport r = verify_secrecy_exhaustive(cfg, m1, m2, {AdversaryKind::kPassive, sets, 0});
  EXPECT_GT(r.sd_exact->numerator, 0u);
  EXPECT_FALSE(r.secrecy_condition);

  std::map<std::string, std::uint64_t> a;
  std::map<std::string, std::uint64_t> b;
  for (std::uint64_t idx = 0; idx < ipow(5, 6); ++idx) {
    std::vector<std::uint64_t> digits;
    for (const FieldElement& x : field_digits(idx, 6, cfg.q)) digits.push_back(x.value());
    for (int which = 0; which < 2; ++which) {
      FixedTape alice(std::vector<std::uint64_t>(digits.begin(), digits.begin() + 4));
      FixedTape bob(std::vector<std::uint64_t>(digits.begin() + 4, digits.end()));
      PassiveAdversary adv(sets);
      const ExecutionResult e = run_protocol(cfg, which == 0 ? m1 : m2, adv, alice, bob);
      (which == 0 ? a : b)[serialize_view(e.transcript.adversary_view())] += 1;
    }
  }
  std::uint64_t diff = 0;
  for (const auto& [k, c] : a) diff += c > b[k] ? c - b[k] : b[k] - c;
  for (const auto& [k, c] : b) {
    if (!a.contains(k)) diff += c;
  }
  EXPECT_EQ(r.sd_exact->numerator, diff);
  // Reading everything gives the whole key away: the views are disjoint.
  EXPECT_EQ(r.sd_exact->numerator, r.sd_exact->denominator);
}

TEST(SecrecyTest, RefusesEnumerationOverBudget) {
  const ProtocolConfig cfg = tiny_config();
  EXPECT_THROW(verify_secrecy_exhaustive(cfg, to_field({1}, cfg.q), to_field({2}, cfg.q),
                                         {AdversaryKind::kPassive, ReadWriteSets(2, {0}, {0}), 0}, {.budget = 1000}),
               BudgetExceeded);
  EXPECT_THROW(verify_secrecy_exhaustive(cfg, to_field({1, 1}, cfg.q), to_field({2}, cfg.q),
                                         {AdversaryKind::kPassive, ReadWriteSets(2, {0}, {0}), 0}),
               std::invalid_argument);
}

TEST(ReliabilityTest, SubstitutionStaysWithinTheBound) {
  const ProtocolConfig cfg = ProtocolConfig::make(4, 2, R("0"), R("1/2"));
  const AdversarySpec adv{AdversaryKind::kSubstitution, ReadWriteSets(4, {}, {0, 3}), 5};
  const SecurityReport r = estimate_reliability(cfg, adv, 20000, 42);
  EXPECT_FALSE(r.exact);
  EXPECT_EQ(r.samples, 20000u);
  EXPECT_NEAR(r.bound_failure, 8.0 / 67.0, 1e-15);
  const double p = 8.0 / 67.0;
  EXPECT_NEAR(r.margin, 3 * std::sqrt(p * (1 - p) / 20000), 1e-15);
  EXPECT_TRUE(r.within_failure_bound());
  EXPECT_GT(r.failures, 0u);
}

TEST(ReliabilityTest, PassiveAndUniformAdversaries) {
  const ProtocolConfig cfg = ProtocolConfig::make(4, 2, R("1/4"), R("1/2"), {.q = std::nullopt, .rho = R("1/2"), .ell = std::nullopt});
  const SecurityReport passive =
      estimate_reliability(cfg, {AdversaryKind::kPassive, ReadWriteSets(4, {1}, {}), 0}, 5000, 1);
  EXPECT_EQ(passive.failures, 0u);
  const SecurityReport uniform =
      estimate_reliability(cfg, {AdversaryKind::kUniform, ReadWriteSets(4, {1}, {1, 2}), 0}, 5000, 1);
  EXPECT_LE(uniform.measured_failure_rate, uniform.bound_failure);
}

TEST(ReliabilityTest, ThreadCountDoesNotChangeResults) {
  const ProtocolConfig cfg = ProtocolConfig::make(4, 2, R("0"), R("1/2"));
  const AdversarySpec adv{AdversaryKind::kSubstitution, ReadWriteSets(4, {}, {1, 2}), 9};
  const SecurityReport one = estimate_reliability(cfg, adv, 3000, 7, {.threads = 1});
  const SecurityReport four = estimate_reliability(cfg, adv, 3000, 7, {.threads = 4});
  EXPECT_EQ(one, four);
  const auto outcomes = run_trials(cfg, adv, 3000, 7, {.threads = 3});
  for (std::uint64_t i : {0u, 17u, 2999u}) {
    const TrialOutcome t = run_trial(cfg, adv, 7, i);
    EXPECT_EQ(t.success, outcomes[i].success);
    EXPECT_EQ(t.verified, outcomes[i].verified);
  }
  EXPECT_EQ(summarize_trials(cfg, outcomes), one);
}

TEST(ReliabilityTest, TrialTranscriptReplaysTheTrial) {
  const ProtocolConfig cfg = ProtocolConfig::make(4, 2, R("0"), R("1/2"));
  const AdversarySpec adv{AdversaryKind::kSubstitution, ReadWriteSets(4, {}, {0, 1}), 3};
  for (std::uint64_t i = 0; i < 20; ++i) {
    const Transcript t = trial_transcript(cfg, adv, 11, i);
    EXPECT_EQ(t.message_rounds(), 3u);
    EXPECT_EQ(serialize(t), serialize(trial_transcript(cfg, adv, 11, i)));
  }
}

}  // namespace
}  // namespace awtp

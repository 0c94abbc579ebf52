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

#include "awtp/protocol.hpp"

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace awtp {
namespace {

using testing::Gen;

Rational R(const char* s) { return Rational::parse(s); }

ProtocolConfig tiny_config() {
  return ProtocolConfig::make(2, 2, R("1/2"), R("1/2"), {.q = 5, .rho = R("1/2"), .ell = std::nullopt});
}

TEST(ProtocolConfigTest, DefaultsFollowTheBudget) {
  const ProtocolConfig cfg = ProtocolConfig::make(4, 2, R("0"), R("1/2"));
  EXPECT_EQ(cfg.q.value(), 67u);
  EXPECT_EQ(cfg.rho, R("1/2"));
  EXPECT_EQ(cfg.ell, 2u);
  EXPECT_TRUE(cfg.meets_prime_constraint());
  EXPECT_TRUE(cfg.secrecy_condition_holds());
  EXPECT_NEAR(cfg.failure_bound(), 8.0 / 67.0, 1e-15);
  EXPECT_EQ(cfg.write_budget(), 2u);
  EXPECT_EQ(cfg.read_budget(), 0u);
}

TEST(ProtocolConfigTest, RateExample) {
  const ProtocolConfig cfg = ProtocolConfig::make(20, 10, R("1/2"), R("1/2"), {.q = std::nullopt, .rho = R("1/2"), .ell = std::nullopt});
  EXPECT_EQ(cfg.ell, 90u);
  EXPECT_DOUBLE_EQ(cfg.rate(), 0.45);
  EXPECT_DOUBLE_EQ(cfg.rate(), (1.0 - 1.0 / 10) * (1.0 - 0.5));
  EXPECT_GT(cfg.q.value(), 2u * 10 * 20 * 20);
}

TEST(ProtocolConfigTest, RejectsInvalidParameters) {
  EXPECT_THROW(ProtocolConfig::make(4, 1, R("0"), R("1/2")), std::invalid_argument);
  EXPECT_THROW(ProtocolConfig::make(0, 2, R("0"), R("1/2")), std::invalid_argument);
  EXPECT_THROW(ProtocolConfig::make(4, 2, R("3/2"), R("0")), std::invalid_argument);
  EXPECT_THROW(ProtocolConfig::make(4, 2, R("1/2"), R("1/2")), std::invalid_argument);  // rho = 1 leaves ell = 0
  EXPECT_THROW(ProtocolConfig::make(4, 2, R("1/2"), R("0"), {.q = std::nullopt, .rho = R("1/4"), .ell = std::nullopt}),
               std::invalid_argument);
  EXPECT_THROW(ProtocolConfig::make(4, 2, R("0"), R("1/2"), {.q = 65, .rho = std::nullopt, .ell = std::nullopt}),
               std::invalid_argument);
  EXPECT_THROW(ProtocolConfig::make(4, 2, R("0"), R("1/2"), {.q = 5, .rho = std::nullopt, .ell = std::nullopt}),
               std::invalid_argument);  // q < (u-1)N + ell
  EXPECT_THROW(ProtocolConfig::make(4, 2, R("0"), R("1/2"), {.q = std::nullopt, .rho = std::nullopt, .ell = 5}),
               std::invalid_argument);
}

TEST(ProtocolConfigTest, ExplicitOverridesAreReported) {
  const ProtocolConfig over = ProtocolConfig::make(4, 2, R("0"), R("1/2"), {.q = 11, .rho = std::nullopt, .ell = 3});
  EXPECT_FALSE(over.meets_prime_constraint());
  EXPECT_FALSE(over.secrecy_condition_holds());
}

TEST(ProtocolConfigTest, CheckSetsEnforcesBudgets) {
  const ProtocolConfig cfg = ProtocolConfig::make(4, 2, R("1/4"), R("1/2"), {.q = std::nullopt, .rho = R("1/2"), .ell = std::nullopt});
  EXPECT_NO_THROW(cfg.check_sets(ReadWriteSets(4, {0}, {0, 1})));
  EXPECT_THROW(cfg.check_sets(ReadWriteSets(4, {0, 1}, {})), std::invalid_argument);
  EXPECT_THROW(cfg.check_sets(ReadWriteSets(4, {2}, {0, 1})), std::invalid_argument);
  EXPECT_THROW(cfg.check_sets(ReadWriteSets(5, {}, {})), std::invalid_argument);
}

TEST(PdEncodingTest, GoldenLayout) {
  const PrimeModulus q(7);
  const Round2Message d1{to_field({2, 0}, q), to_field({0, 6}, q)};
  const Bits b1 = encode_d1(d1);
  EXPECT_EQ(to_string(b1), "010" "000" "000" "110");
  const Round2Message back = decode_d1(b1, 2, q);
  EXPECT_EQ(back.alphas, d1.alphas);
  EXPECT_EQ(back.tags, d1.tags);

  const Round3Message d2{to_field({3}, q), bits_from_string("10")};
  const Bits b2 = encode_d2(d2);
  EXPECT_EQ(to_string(b2), "011" "10");
  EXPECT_EQ(decode_d2(b2, 1, 2, q).ciphertext, d2.ciphertext);
  EXPECT_EQ(decode_d2(b2, 1, 2, q).verified, d2.verified);
  EXPECT_THROW(decode_d2(b2, 1, 3, q), std::invalid_argument);
  EXPECT_THROW(decode_d1(b2, 2, q), std::invalid_argument);
}

TEST(Round1Test, DrawsComponentsFromTheTape) {
  const ProtocolConfig cfg = tiny_config();
  AliceState alice{cfg, to_field({0}, cfg.q), {}, {}, {}, {}};
  FixedTape tape({1, 2, 3, 4});
  const Codeword c = round1_alice(alice, tape);
  EXPECT_EQ(c.components[0], to_field({1, 2}, cfg.q));
  EXPECT_EQ(c.components[1], to_field({3, 4}, cfg.q));
  EXPECT_EQ(alice.beta, to_field({2, 4}, cfg.q));
  EXPECT_EQ(tape.consumed(), 4u);
}

// Pearson chi-square over 10^5 codeword coordinates in F_53; 52 degrees of
// freedom, 0.999 quantile about 88.8.
TEST(Round1Property, CoordinatesAreUniformByChiSquare) {
  const ProtocolConfig cfg = ProtocolConfig::make(25, 2, R("0"), R("0"), {.q = 53, .rho = std::nullopt, .ell = 1});
  SeededTape tape(31337);
  std::vector<std::uint64_t> counts(53, 0);
  std::uint64_t n = 0;
  for (int i = 0; i < 2000; ++i) {
    AliceState alice{cfg, to_field({0}, cfg.q), {}, {}, {}, {}};
    for (const Symbol& s : round1_alice(alice, tape).components) {
      for (const FieldElement& x : s) {
        ++counts[x.value()];
        ++n;
      }
    }
  }
  ASSERT_EQ(n, 100000u);
  const double expected = static_cast<double>(n) / 53.0;
  double chi2 = 0.0;
  for (std::uint64_t c : counts) chi2 += (static_cast<double>(c) - expected) * (static_cast<double>(c) - expected) / expected;
  EXPECT_LT(chi2, 88.8);
}

TEST(Round2Test, TagExample) {
  const PrimeModulus q(7);
  const ProtocolConfig cfg = ProtocolConfig::make(1, 2, R("0"), R("0"), {.q = 7, .rho = std::nullopt, .ell = 1});
  BobState bob{cfg, {}, {}, {}, {}, {}};
  Codeword y;
  y.components.push_back(to_field({3, 1}, q));
  FixedTape tape({2});
  const Bits d1 = round2_bob(bob, y, tape);
  EXPECT_EQ(bob.tags[0].value(), 0u);  // 3*2 + 1 = 7
  EXPECT_EQ(d1.size(), 2u * 3u);

  BobState zero{cfg, {}, {}, {}, {}, {}};
  FixedTape zero_tape({0});
  round2_bob(zero, y, zero_tape);
  EXPECT_EQ(zero.tags[0].value(), 1u);  // alpha = 0 leaves beta'
}

// The transcript replayed by hand: f(X) = 1 + 2X through (0, 1), (1, 3),
// key f(2) = 0, so the ciphertext equals the message.
TEST(RunProtocolTest, FullPipelineWithFixedTapes) {
  const ProtocolConfig cfg = tiny_config();
  ASSERT_EQ(cfg.ell, 1u);
  PassiveAdversary adv(ReadWriteSets(2, {0}, {}));
  FixedTape alice({1, 2, 3, 4});
  FixedTape bob({2, 0});
  const FieldVector m = to_field({3}, cfg.q);
  const ExecutionResult res = run_protocol(cfg, m, adv, alice, bob);
  EXPECT_EQ(res.decoded, m);
  EXPECT_EQ(to_string(res.verified), "11");
  EXPECT_EQ(res.verified_count, 2u);
  // d1 = (2, 0, 4, 4), d2 = (3, v = 11), three bits per element.
  EXPECT_EQ(to_string(res.transcript.pd_messages()[0].bits), "010" "000" "100" "100");
  EXPECT_EQ(to_string(res.transcript.pd_messages()[1].bits), "011" "11");
}

TEST(RunProtocolTest, ZeroMessageCarriesTheKey) {
  const ProtocolConfig cfg = tiny_config();
  PassiveAdversary adv(ReadWriteSets(2, {}, {}));
  FixedTape alice({4, 0, 1, 0});
  FixedTape bob({1, 1});
  const ExecutionResult res = run_protocol(cfg, to_field({0}, cfg.q), adv, alice, bob);
  // f through (0, 4), (1, 1) is 4 + 2X, f(2) = 8 = 3 mod 5.
  const Round3Message d2 = decode_d2(res.transcript.pd_messages()[1].bits, 1, 2, cfg.q);
  EXPECT_EQ(d2.ciphertext[0].value(), 3u);
}

TEST(RunProtocolTest, HasExactlyThreeMessageRounds) {
  const ProtocolConfig cfg = ProtocolConfig::make(4, 2, R("0"), R("1/2"));
  SubstitutionAdversary adv(ReadWriteSets(4, {}, {0, 3}), 1);
  SeededTape alice(1);
  SeededTape bob(2);
  const ExecutionResult res = run_protocol(cfg, to_field({1, 2}, cfg.q), adv, alice, bob);
  EXPECT_EQ(res.transcript.awtp_invocations(), 1u);
  EXPECT_EQ(res.transcript.pd_invocations(), 2u);
  EXPECT_EQ(res.transcript.message_rounds(), 3u);
  EXPECT_EQ(res.transcript.rounds(),
            (std::vector<RoundKind>{RoundKind::kAwtpAliceToBob, RoundKind::kPdBobToAlice, RoundKind::kPdAliceToBob}));
  EXPECT_EQ(res.transcript.pd_messages()[0].direction, Direction::kBobToAlice);
}

TEST(RunProtocolTest, RejectsBadMessagesAndOverBudgetAdversaries) {
  const ProtocolConfig cfg = ProtocolConfig::make(4, 2, R("0"), R("1/2"));
  SeededTape a(1);
  SeededTape b(2);
  PassiveAdversary ok(ReadWriteSets(4, {}, {}));
  EXPECT_THROW(run_protocol(cfg, to_field({1}, cfg.q), ok, a, b), std::invalid_argument);
  EXPECT_THROW(run_protocol(cfg, to_field({1, 2}, PrimeModulus(5)), ok, a, b), ModulusMismatch);
  PassiveAdversary reader(ReadWriteSets(4, {0}, {}));
  EXPECT_THROW(run_protocol(cfg, to_field({1, 2}, cfg.q), reader, a, b), std::invalid_argument);
}

TEST(Round3Test, AbortsWhenNothingVerifies) {
  const ProtocolConfig cfg = tiny_config();
  AliceState alice{cfg, to_field({1}, cfg.q), {}, {}, {}, {}};
  FixedTape tape({1, 2, 3, 4});
  round1_alice(alice, tape);
  // alpha = 0 makes the expected tag beta; send beta + 1 instead.
  const Bits d1 = encode_d1({to_field({0, 0}, cfg.q), to_field({3, 0}, cfg.q)});
  EXPECT_THROW(round3_alice(alice, d1), InsufficientEntropy);
  EXPECT_EQ(to_string(alice.verified), "00");
}

TEST(DeriveKeyTest, UsesOnlyVerifiedComponents) {
  const ProtocolConfig cfg = tiny_config();
  const std::vector<FieldVector> r{to_field({2}, cfg.q), to_field({4}, cfg.q)};
  // One verified input x = (4): the constant polynomial 4.
  EXPECT_EQ(derive_key(cfg, r, bits_from_string("01")), to_field({4}, cfg.q));
  EXPECT_THROW(derive_key(cfg, r, bits_from_string("00")), InsufficientEntropy);
  EXPECT_THROW(derive_key(cfg, r, bits_from_string("0")), std::invalid_argument);
}

struct RandomSetup {
  ProtocolConfig cfg;
  ReadWriteSets sets;
};

RandomSetup random_setup(Gen& gen) {
  const std::size_t N = 1 + gen.below(8);
  const std::size_t u = 2 + gen.below(4);
  const std::size_t w = gen.below(N);
  const Rational rho_w = Rational::make(w, N);
  const ProtocolConfig cfg = ProtocolConfig::make(N, u, Rational{0, 1}, rho_w);
  return {cfg, ReadWriteSets::random(N, 0, w, false, gen.rng())};
}

TEST(RunProtocolProperty, PassiveAdversaryAlwaysDecodes) {
  Gen gen(71);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t N = 1 + gen.below(8);
    const std::size_t u = 2 + gen.below(4);
    const std::size_t r = gen.below(N);
    const ProtocolConfig cfg = ProtocolConfig::make(N, u, Rational::make(r, N), Rational{0, 1});
    PassiveAdversary adv(ReadWriteSets::random(N, r, 0, false, gen.rng()));
    SeededTape a(gen.below(1 << 30));
    SeededTape b(gen.below(1 << 30));
    const FieldVector m = gen.vector(cfg.q, cfg.ell);
    const ExecutionResult res = run_protocol(cfg, m, adv, a, b);
    ASSERT_TRUE(res.success(m));
    ASSERT_EQ(res.verified_count, N);
    ASSERT_EQ(res.decoded, decode_received(cfg, res.transcript.awtp()[0].received, res.transcript.pd_messages()[1].bits));
  }
}

// Untouched components always verify, so at least N - |S_w| do.
TEST(RunProtocolProperty, VerifiedSetCoversUncorruptedComponents) {
  Gen gen(72);
  for (int trial = 0; trial < 300; ++trial) {
    const RandomSetup s = random_setup(gen);
    SubstitutionAdversary adv(s.sets, gen.below(1 << 30));
    SeededTape a(gen.below(1 << 30));
    SeededTape b(gen.below(1 << 30));
    const ExecutionResult res = run_protocol(s.cfg, gen.vector(s.cfg.q, s.cfg.ell), adv, a, b);
    const Codeword& sent = res.transcript.awtp()[0].sent;
    const Codeword& got = res.transcript.awtp()[0].received;
    ASSERT_GE(res.verified_count, s.cfg.N - s.sets.write().size());
    ASSERT_GE((s.cfg.u - 1) * res.verified_count, s.cfg.ell);
    ASSERT_GE(s.cfg.q.value(), (s.cfg.u - 1) * res.verified_count + s.cfg.ell);
    for (std::size_t i = 0; i < s.cfg.N; ++i) {
      if (sent.components[i] == got.components[i]) ASSERT_EQ(res.verified[i], 1);
    }
  }
}

// When v selects only components that arrived intact, k' = k and Bob decodes.
TEST(RunProtocolProperty, IntactVerifiedComponentsDecode) {
  Gen gen(73);
  for (int trial = 0; trial < 300; ++trial) {
    const RandomSetup s = random_setup(gen);
    SubstitutionAdversary adv(s.sets, gen.below(1 << 30));
    SeededTape a(gen.below(1 << 30));
    SeededTape b(gen.below(1 << 30));
    const FieldVector m = gen.vector(s.cfg.q, s.cfg.ell);
    const ExecutionResult res = run_protocol(s.cfg, m, adv, a, b);
    const AwtpInvocation& inv = res.transcript.awtp()[0];
    bool intact = true;
    for (std::size_t i = 0; i < s.cfg.N; ++i) {
      if (res.verified[i] && inv.sent.components[i] != inv.received.components[i]) intact = false;
    }
    if (intact) ASSERT_TRUE(res.success(m));
  }
}

TEST(RunProtocolTest, SameTapesSameTranscript) {
  const ProtocolConfig cfg = ProtocolConfig::make(5, 3, R("1/5"), R("2/5"));
  const ReadWriteSets sets(5, {1}, {1, 4});
  std::string first;
  for (int rep = 0; rep < 2; ++rep) {
    SubstitutionAdversary adv(sets, 8);
    SeededTape a(3);
    SeededTape b(4);
    const ExecutionResult res = run_protocol(cfg, to_field({1, 2, 3, 4}, cfg.q), adv, a, b);
    if (rep == 0) first = serialize(res.transcript);
    else EXPECT_EQ(serialize(res.transcript), first);
  }
}

}  // namespace
}  // namespace awtp

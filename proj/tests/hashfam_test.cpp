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

#include "awtp/hashfam.hpp"

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace awtp {
namespace {

using testing::field_digits;
using testing::Gen;
using testing::ipow;

// Direct power-sum evaluation: sum_i x_i * alpha^i over the integers, reduced once.
std::uint64_t power_sum(std::uint64_t alpha, const std::vector<std::uint64_t>& x, std::uint64_t q) {
  std::uint64_t sum = 0;
  std::uint64_t power = 1;
  for (std::uint64_t xi : x) {
    power = power * alpha % q;
    sum = (sum + xi * power) % q;
  }
  return sum;
}

TEST(HashTest, KnownValues) {
  const PrimeModulus q7(7);
  EXPECT_EQ(hash(HashKey{FieldElement(2, q7)}, to_field({3, 5}, q7)).value(), 5u);
  const PrimeModulus q5(5);
  EXPECT_EQ(hash(HashKey{FieldElement(1, q5)}, to_field({2, 3}, q5)).value(), 0u);
}

TEST(HashTest, ZeroKeyHashesEverythingToZero) {
  const PrimeModulus q(7);
  Gen gen(3);
  for (int i = 0; i < 50; ++i) {
    EXPECT_TRUE(hash(HashKey{FieldElement::zero(q)}, gen.vector(q, 1 + gen.below(6))).is_zero());
  }
}

TEST(HashTest, MatchesPowerSumOracle) {
  Gen gen(5);
  for (std::uint64_t p : {5u, 7u, 11u, 67u, 601u}) {
    const PrimeModulus q(p);
    for (int i = 0; i < 300; ++i) {
      const std::size_t len = 1 + gen.below(std::min<std::uint64_t>(p - 1, 12));
      std::vector<std::uint64_t> raw;
      for (std::size_t k = 0; k < len; ++k) raw.push_back(gen.below(p));
      const std::uint64_t alpha = gen.below(p);
      ASSERT_EQ(hash(HashKey{FieldElement(alpha, q)}, to_field(raw, q)).value(), power_sum(alpha, raw, p));
    }
  }
}

TEST(HashTest, RejectsBadLengths) {
  const PrimeModulus q(5);
  const HashKey key{FieldElement(2, q)};
  EXPECT_THROW(hash(key, FieldVector{}), std::invalid_argument);
  EXPECT_THROW(hash(key, to_field({1, 1, 1, 1, 1}, q)), std::invalid_argument);
  EXPECT_NO_THROW(hash(key, to_field({1, 1, 1, 1}, q)));
}

TEST(HashTest, RejectsMixedModuli) {
  const HashKey key{FieldElement(2, PrimeModulus(7))};
  EXPECT_THROW(hash(key, to_field({1, 2}, PrimeModulus(5))), ModulusMismatch);
}

TEST(CollisionCountTest, KnownValues) {
  const PrimeModulus q5(5);
  EXPECT_EQ(collision_count(to_field({1, 0}, q5), to_field({0, 0}, q5), FieldElement::zero(q5)), 1u);
  EXPECT_EQ(collision_count(to_field({0, 1}, q5), to_field({0, 0}, q5), FieldElement::zero(q5)), 1u);
  const PrimeModulus q7(7);
  EXPECT_EQ(collision_count(to_field({1, 1}, q7), to_field({0, 0}, q7), FieldElement::zero(q7)), 2u);
}

TEST(CollisionCountTest, RejectsEqualOrMismatchedInputs) {
  const PrimeModulus q(5);
  const FieldElement t = FieldElement::zero(q);
  EXPECT_THROW(collision_count(to_field({1, 2}, q), to_field({1, 2}, q), t), std::invalid_argument);
  EXPECT_THROW(collision_count(to_field({1, 2}, q), to_field({1}, q), t), std::invalid_argument);
}

// Counting keys by direct evaluation of the difference polynomial.
TEST(DeltaUniversalityProperty, CollisionCountMatchesRootCountOracle) {
  Gen gen(17);
  for (std::uint64_t p : {5u, 7u, 11u, 13u}) {
    const PrimeModulus q(p);
    for (int i = 0; i < 400; ++i) {
      const std::size_t len = 1 + gen.below(std::min<std::uint64_t>(p - 1, 4));
      std::vector<std::uint64_t> a;
      std::vector<std::uint64_t> b;
      for (std::size_t k = 0; k < len; ++k) {
        a.push_back(gen.below(p));
        b.push_back(gen.below(p));
      }
      if (a == b) continue;
      const std::uint64_t t = gen.below(p);
      std::uint64_t expected = 0;
      for (std::uint64_t alpha = 0; alpha < p; ++alpha) {
        if ((power_sum(alpha, a, p) + p - power_sum(alpha, b, p)) % p == t) ++expected;
      }
      const std::uint64_t got = collision_count(to_field(a, q), to_field(b, q), FieldElement(t, q));
      ASSERT_EQ(got, expected);
      ASSERT_LE(got, len);
    }
  }
}

TEST(DeltaUniversalityCheckTest, AgreesWithCollisionCountOnSmallFields) {
  for (std::uint64_t p : {5u, 7u}) {
    const PrimeModulus q(p);
    for (std::size_t len = 1; len <= 2; ++len) {
      std::uint64_t max = 0;
      const std::uint64_t inputs = ipow(p, len);
      for (std::uint64_t i = 0; i < inputs; ++i) {
        for (std::uint64_t j = 0; j < inputs; ++j) {
          if (i == j) continue;
          for (std::uint64_t t = 0; t < p; ++t) {
            max = std::max(max, collision_count(field_digits(i, len, q), field_digits(j, len, q), FieldElement(t, q)));
          }
        }
      }
      const DeltaUniversalityCheck c = check_delta_universality(q, len);
      EXPECT_EQ(c.max_count, max);
      EXPECT_EQ(c.pairs, inputs * (inputs - 1));
      EXPECT_TRUE(c.bound_holds);
      EXPECT_TRUE(c.equality_attained);
    }
  }
}

TEST(DeltaUniversalityCheckTest, RejectsOutOfRangeLengths) {
  EXPECT_THROW(check_delta_universality(PrimeModulus(5), 0), std::invalid_argument);
  EXPECT_THROW(check_delta_universality(PrimeModulus(5), 5), std::invalid_argument);
}

}  // namespace
}  // namespace awtp

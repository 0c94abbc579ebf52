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

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace awtp {
namespace {

void check_input(const FieldElement& alpha, std::span<const FieldElement> x) {
  if (x.empty()) throw std::invalid_argument("hash input must be non-empty");
  if (x.size() > alpha.modulus_value() - 1) {
    throw std::invalid_argument("hash input longer than q - 1");
  }
}

}  // namespace

FieldElement hash(const HashKey& key, std::span<const FieldElement> x) {
  check_input(key.alpha, x);
  // Horner over (x_1 + alpha*(x_2 + ... + alpha*x_n)), then one factor of alpha.
  FieldElement acc = x.back();
  for (auto it = x.rbegin() + 1; it != x.rend(); ++it) {
    acc = acc * key.alpha + *it;
  }
  return acc * key.alpha;
}

std::uint64_t collision_count(std::span<const FieldElement> x1, std::span<const FieldElement> x2,
                              const FieldElement& t) {
  if (x1.size() != x2.size()) throw std::invalid_argument("collision_count: length mismatch");
  if (std::equal(x1.begin(), x1.end(), x2.begin())) {
    throw std::invalid_argument("collision_count: inputs must differ");
  }
  const PrimeModulus q(t.modulus_value());
  std::uint64_t count = 0;
  for (std::uint64_t a = 0; a < q.value(); ++a) {
    const HashKey key{FieldElement(a, q)};
    if (hash(key, x1) - hash(key, x2) == t) ++count;
  }
  return count;
}

DeltaUniversalityCheck check_delta_universality(const PrimeModulus& q, std::size_t length) {
  if (length == 0 || length > q.value() - 1) throw std::invalid_argument("input length must lie in [1, q-1]");
  std::uint64_t inputs = 1;
  for (std::size_t i = 0; i < length; ++i) inputs *= q.value();

  // table[a * inputs + x] = hash_a(x), inputs enumerated little-endian.
  std::vector<std::uint64_t> table(q.value() * inputs);
  FieldVector x(length, FieldElement::zero(q));
  for (std::uint64_t idx = 0; idx < inputs; ++idx) {
    std::uint64_t rest = idx;
    for (std::size_t i = 0; i < length; ++i) {
      x[i] = FieldElement(rest % q.value(), q);
      rest /= q.value();
    }
    for (std::uint64_t a = 0; a < q.value(); ++a) {
      table[a * inputs + idx] = hash(HashKey{FieldElement(a, q)}, x).value();
    }
  }

  DeltaUniversalityCheck out;
  std::vector<std::uint64_t> histogram(q.value());
  for (std::uint64_t i = 0; i < inputs; ++i) {
    for (std::uint64_t j = 0; j < inputs; ++j) {
      if (i == j) continue;
      ++out.pairs;
      std::fill(histogram.begin(), histogram.end(), 0);
      for (std::uint64_t a = 0; a < q.value(); ++a) {
        const std::uint64_t hi = table[a * inputs + i];
        const std::uint64_t hj = table[a * inputs + j];
        ++histogram[(hi + q.value() - hj) % q.value()];
      }
      out.max_count = std::max(out.max_count, *std::max_element(histogram.begin(), histogram.end()));
    }
  }
  out.bound_holds = out.max_count <= length;
  out.equality_attained = out.max_count == length;
  return out;
}

}  // namespace awtp

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

#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "awtp/ffield.hpp"

namespace awtp::testing {

/// Small hand-rolled generators for property tests; every test seeds its own.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t below(std::uint64_t bound) { return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(rng_); }
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
  FieldElement element(const PrimeModulus& q) { return {below(q.value()), q}; }
  FieldElement nonzero(const PrimeModulus& q) { return {1 + below(q.value() - 1), q}; }

  FieldVector vector(const PrimeModulus& q, std::size_t n) {
    FieldVector v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(element(q));
    return v;
  }

  std::set<std::size_t> subset(std::size_t N, std::size_t k) {
    std::vector<std::size_t> idx(N);
    for (std::size_t i = 0; i < N; ++i) idx[i] = i;
    std::shuffle(idx.begin(), idx.end(), rng_);
    return {idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k)};
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Trial-division primality, independent of the library's test.
inline bool naive_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline FieldVector field_digits(std::uint64_t idx, std::size_t count, const PrimeModulus& q) {
  FieldVector out;
  for (std::size_t i = 0; i < count; ++i) {
    out.emplace_back(idx % q.value(), q);
    idx /= q.value();
  }
  return out;
}

inline std::uint64_t ipow(std::uint64_t b, std::size_t e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace awtp::testing

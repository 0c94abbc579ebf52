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

#include "awtp/random.hpp"

#include <limits>
#include <stdexcept>

namespace awtp {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31U);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
  return mix64(mix64(master ^ mix64(stream)) + index);
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: empty range");
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - (max % bound + 1) % bound;  // largest accepted value
  std::uint64_t x = 0;
  do {
    x = rng();
  } while (x > limit);
  return x % bound;
}

FieldElement SeededTape::next(const PrimeModulus& q) { return {uniform_below(rng_, q.value()), q}; }

FieldElement FixedTape::next(const PrimeModulus& q) {
  if (pos_ >= values_.size()) throw std::out_of_range("fixed tape exhausted");
  const std::uint64_t v = values_[pos_++];
  if (v >= q.value()) throw std::invalid_argument("fixed tape value is not a residue mod q");
  return {v, q};
}

}  // namespace awtp

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

#include <cstddef>
#include <cstdint>
#include <span>

#include "awtp/ffield.hpp"

namespace awtp {

/// Key of the polynomial Delta-universal family over F_q.
struct HashKey {
  FieldElement alpha;
};

/// hash_alpha(x) = x_1*alpha + x_2*alpha^2 + ... + x_n*alpha^n (no constant term).
///
/// The input length n may be anything in [1, q-1]; for a fixed pair of
/// distinct inputs and any target difference t at most n of the q keys
/// produce hash(x1) - hash(x2) = t.
FieldElement hash(const HashKey& key, std::span<const FieldElement> x);

/// Number of keys alpha in F_q with hash_alpha(x1) - hash_alpha(x2) = t.
/// Requires x1 != x2 and equal lengths.
std::uint64_t collision_count(std::span<const FieldElement> x1, std::span<const FieldElement> x2,
                              const FieldElement& t);

struct DeltaUniversalityCheck {
  std::uint64_t pairs = 0;      // ordered pairs x1 != x2
  std::uint64_t max_count = 0;  // max collision_count over all (x1, x2, t)
  bool bound_holds = false;     // max_count <= input length
  bool equality_attained = false;
};

/// Exhaustive check over every pair of distinct length-`length` inputs and
/// every target difference t.
DeltaUniversalityCheck check_delta_universality(const PrimeModulus& q, std::size_t length);

}  // namespace awtp

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

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "awtp/ffield.hpp"

namespace awtp {

/// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t mix64(std::uint64_t x);

/// Seed for stream `stream` of trial `index` under `master`. Trial k can be
/// reproduced without running trials 0..k-1.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index);

/// Uniform integer in [0, bound) by rejection; identical on every platform
/// (std::uniform_int_distribution is implementation-defined).
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

/// Source of a party's random field elements (its random tape).
class FieldTape {
 public:
  virtual ~FieldTape() = default;
  virtual FieldElement next(const PrimeModulus& q) = 0;
};

class SeededTape final : public FieldTape {
 public:
  explicit SeededTape(std::uint64_t seed) : rng_(seed) {}
  FieldElement next(const PrimeModulus& q) override;

 private:
  std::mt19937_64 rng_;
};

/// Replays a fixed list of residues; exhausting it is an error. Exhaustive
/// enumeration drives the protocol through this tape.
class FixedTape final : public FieldTape {
 public:
  explicit FixedTape(std::vector<std::uint64_t> values) : values_(std::move(values)) {}
  FieldElement next(const PrimeModulus& q) override;
  std::size_t consumed() const { return pos_; }

 private:
  std::vector<std::uint64_t> values_;
  std::size_t pos_ = 0;
};

}  // namespace awtp

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
#include <functional>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <string_view>

#include "awtp/channels.hpp"

namespace awtp {

/// What the channel hands the adversary when it must commit the error for
/// one component.
struct WriteContext {
  std::size_t invocation;
  std::size_t index;
  std::size_t u;
  const PrimeModulus& q;
  /// Component `index` as sent, present only when index is in S_r.
  const Symbol* observed;
  /// Everything observed so far, including `observed`.
  const AdversaryView& view;
};

/// An adversary bound to one execution. Given the same seed and the same
/// observed view every strategy returns the same errors.
class AdversaryStrategy {
 public:
  virtual ~AdversaryStrategy() = default;

  virtual std::string_view name() const = 0;
  virtual const ReadWriteSets& sets() const = 0;

  /// Error to add to component ctx.index; must be zero off S_w. An empty
  /// symbol means zero.
  virtual Symbol choose_error(const WriteContext& ctx) = 0;
};

/// Reads S_r, never writes.
class PassiveAdversary final : public AdversaryStrategy {
 public:
  explicit PassiveAdversary(ReadWriteSets sets) : sets_(std::move(sets)) {}
  std::string_view name() const override { return "passive"; }
  const ReadWriteSets& sets() const override { return sets_; }
  Symbol choose_error(const WriteContext& ctx) override;

 private:
  ReadWriteSets sets_;
};

/// Precommitted sets, error on S_w uniform over Sigma^{|S_w|}.
class UniformErrorAdversary final : public AdversaryStrategy {
 public:
  UniformErrorAdversary(ReadWriteSets sets, std::uint64_t seed) : sets_(std::move(sets)), rng_(seed) {}
  std::string_view name() const override { return "adv1-uniform"; }
  const ReadWriteSets& sets() const override { return sets_; }
  Symbol choose_error(const WriteContext& ctx) override;

 private:
  ReadWriteSets sets_;
  std::mt19937_64 rng_;
};

/// Replaces every S_w component by a fresh uniform element of Sigma. On S_b
/// the error is new - old; on write-only positions the old value is unknown
/// and a uniform error gives the same received distribution.
class SubstitutionAdversary final : public AdversaryStrategy {
 public:
  SubstitutionAdversary(ReadWriteSets sets, std::uint64_t seed) : sets_(std::move(sets)), rng_(seed) {}
  std::string_view name() const override { return "substitution"; }
  const ReadWriteSets& sets() const override { return sets_; }
  Symbol choose_error(const WriteContext& ctx) override;

 private:
  ReadWriteSets sets_;
  std::mt19937_64 rng_;
};

/// User-supplied strategy. The channel still enforces the write set.
class CallbackAdversary final : public AdversaryStrategy {
 public:
  using Callback = std::function<Symbol(const WriteContext&)>;
  CallbackAdversary(ReadWriteSets sets, Callback callback)
      : sets_(std::move(sets)), callback_(std::move(callback)) {}
  std::string_view name() const override { return "callback"; }
  const ReadWriteSets& sets() const override { return sets_; }
  Symbol choose_error(const WriteContext& ctx) override { return callback_(ctx); }

 private:
  ReadWriteSets sets_;
  Callback callback_;
};

enum class AdversaryKind { kPassive, kUniform, kSubstitution };

AdversaryKind parse_adversary_kind(std::string_view name);
std::string_view to_string(AdversaryKind kind);

/// Everything needed to instantiate a fresh strategy with tape r_E. Secrecy
/// enumeration builds one instance per execution from the same spec so that
/// every run sees the same adversary coins.
struct AdversarySpec {
  AdversaryKind kind;
  ReadWriteSets sets;
  std::uint64_t seed = 0;
};

std::unique_ptr<AdversaryStrategy> make_adversary(const AdversarySpec& spec);

enum class PartitionMode { kAdv2, kAdv2Hat };

/// Read/write sets of the paired two-round adversaries: Adv2 reads S_a u S_b
/// and writes S_b u S_c; its twin reads S_a u S_d and writes S_c u S_d. The
/// four parts must partition [0, N) with |S_b| = |S_d|.
ReadWriteSets partition_sets(std::size_t N, PartitionMode mode, const std::set<std::size_t>& s_a,
                             const std::set<std::size_t>& s_b, const std::set<std::size_t>& s_c,
                             const std::set<std::size_t>& s_d);

}  // namespace awtp

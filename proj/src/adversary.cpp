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

#include "awtp/adversary.hpp"

#include <stdexcept>
#include <string>

#include "awtp/random.hpp"

namespace awtp {
namespace {

Symbol uniform_symbol(std::mt19937_64& rng, std::size_t u, const PrimeModulus& q) {
  Symbol s;
  s.reserve(u);
  for (std::size_t k = 0; k < u; ++k) s.emplace_back(uniform_below(rng, q.value()), q);
  return s;
}

}  // namespace

Symbol PassiveAdversary::choose_error(const WriteContext&) { return {}; }

Symbol UniformErrorAdversary::choose_error(const WriteContext& ctx) {
  if (!sets_.writes(ctx.index)) return {};
  return uniform_symbol(rng_, ctx.u, ctx.q);
}

Symbol SubstitutionAdversary::choose_error(const WriteContext& ctx) {
  if (!sets_.writes(ctx.index)) return {};
  Symbol replacement = uniform_symbol(rng_, ctx.u, ctx.q);
  if (ctx.observed == nullptr) return replacement;
  for (std::size_t k = 0; k < ctx.u; ++k) replacement[k] -= (*ctx.observed)[k];
  return replacement;
}

AdversaryKind parse_adversary_kind(std::string_view name) {
  if (name == "passive") return AdversaryKind::kPassive;
  if (name == "adv1" || name == "uniform" || name == "adv1-uniform") return AdversaryKind::kUniform;
  if (name == "substitution") return AdversaryKind::kSubstitution;
  throw std::invalid_argument("unknown adversary '" + std::string(name) +
                              "' (expected passive, adv1-uniform or substitution)");
}

std::string_view to_string(AdversaryKind kind) {
  switch (kind) {
    case AdversaryKind::kPassive: return "passive";
    case AdversaryKind::kUniform: return "adv1-uniform";
    case AdversaryKind::kSubstitution: return "substitution";
  }
  return "?";
}

std::unique_ptr<AdversaryStrategy> make_adversary(const AdversarySpec& spec) {
  switch (spec.kind) {
    case AdversaryKind::kPassive: return std::make_unique<PassiveAdversary>(spec.sets);
    case AdversaryKind::kUniform: return std::make_unique<UniformErrorAdversary>(spec.sets, spec.seed);
    case AdversaryKind::kSubstitution: return std::make_unique<SubstitutionAdversary>(spec.sets, spec.seed);
  }
  throw std::logic_error("unhandled adversary kind");
}

ReadWriteSets partition_sets(std::size_t N, PartitionMode mode, const std::set<std::size_t>& s_a,
                             const std::set<std::size_t>& s_b, const std::set<std::size_t>& s_c,
                             const std::set<std::size_t>& s_d) {
  std::vector<int> owner(N, -1);
  int part = 0;
  for (const auto* s : {&s_a, &s_b, &s_c, &s_d}) {
    for (std::size_t i : *s) {
      if (i >= N) throw std::invalid_argument("partition index outside [0, N)");
      if (owner[i] != -1) throw std::invalid_argument("partition parts overlap");
      owner[i] = part;
    }
    ++part;
  }
  for (int o : owner) {
    if (o == -1) throw std::invalid_argument("partition parts do not cover [0, N)");
  }
  if (s_b.size() != s_d.size()) throw std::invalid_argument("paired adversaries need |S_b| = |S_d|");

  auto join = [](const std::set<std::size_t>& x, const std::set<std::size_t>& y) {
    std::set<std::size_t> out = x;
    out.insert(y.begin(), y.end());
    return out;
  };
  if (mode == PartitionMode::kAdv2) return {N, join(s_a, s_b), join(s_b, s_c)};
  return {N, join(s_a, s_d), join(s_c, s_d)};
}

}  // namespace awtp

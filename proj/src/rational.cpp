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

#include "awtp/rational.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>

namespace awtp {
namespace {

std::uint64_t parse_u64(std::string_view s) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("not a non-negative integer: '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

Rational Rational::make(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  const std::uint64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

Rational Rational::parse(std::string_view text) {
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    return make(parse_u64(text.substr(0, slash)), parse_u64(text.substr(slash + 1)));
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const std::string_view whole = text.substr(0, dot);
    const std::string_view frac = text.substr(dot + 1);
    if (frac.size() > 18) throw std::invalid_argument("too many decimal digits: '" + std::string(text) + "'");
    std::uint64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const std::uint64_t w = whole.empty() ? 0 : parse_u64(whole);
    const std::uint64_t f = frac.empty() ? 0 : parse_u64(frac);
    return make(w * den + f, den);
  }
  return make(parse_u64(text), 1);
}

std::uint64_t Rational::floor_times(std::uint64_t n) const {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(num) * n / den);
}

std::string Rational::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

}  // namespace awtp

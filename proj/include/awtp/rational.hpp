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
#include <string>
#include <string_view>

namespace awtp {

/// Non-negative exact fraction, kept in lowest terms. Fractions of the
/// codeword length are taken as floor(num * N / den).
struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  static Rational make(std::uint64_t num, std::uint64_t den);
  /// Accepts "p/q", integers and plain decimals ("0.25" is read as 1/4).
  static Rational parse(std::string_view text);

  std::uint64_t floor_times(std::uint64_t n) const;
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool in_unit_interval() const { return num <= den; }
  std::string str() const;

  friend bool operator==(const Rational&, const Rational&) = default;
};

}  // namespace awtp

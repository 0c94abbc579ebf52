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
#include <string>
#include <string_view>
#include <vector>

#include "awtp/ffield.hpp"

namespace awtp {

/// A binary string, one entry (0 or 1) per bit.
using Bits = std::vector<std::uint8_t>;

std::string to_string(const Bits& bits);
Bits bits_from_string(std::string_view text);

/// Appends fixed-width big-endian fields to a bit string.
class BitWriter {
 public:
  void put(std::uint64_t value, unsigned width);
  void put_element(const FieldElement& x);
  void put_bits(std::span<const std::uint8_t> bits);

  const Bits& bits() const { return bits_; }
  Bits take() { return std::move(bits_); }

 private:
  Bits bits_;
};

class BitReader {
 public:
  explicit BitReader(std::span<const std::uint8_t> bits) : bits_(bits) {}

  std::uint64_t get(unsigned width);
  /// Reads an element of F_q; throws std::invalid_argument if the encoded
  /// integer is not a canonical residue.
  FieldElement get_element(const PrimeModulus& q);
  std::uint8_t get_bit() { return static_cast<std::uint8_t>(get(1)); }

  std::size_t remaining() const { return bits_.size() - pos_; }

 private:
  std::span<const std::uint8_t> bits_;
  std::size_t pos_ = 0;
};

/// Packs bits MSB-first into bytes, zero-padding the final byte.
std::string pack_bits(std::span<const std::uint8_t> bits);
Bits unpack_bits(std::string_view bytes, std::size_t bit_count);

}  // namespace awtp

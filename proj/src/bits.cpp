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

#include "awtp/bits.hpp"

#include <stdexcept>

namespace awtp {

std::string to_string(const Bits& bits) {
  std::string out;
  out.reserve(bits.size());
  for (std::uint8_t b : bits) out.push_back(b ? '1' : '0');
  return out;
}

Bits bits_from_string(std::string_view text) {
  Bits out;
  out.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') throw std::invalid_argument("bit string may only contain 0 and 1");
    out.push_back(c == '1' ? 1 : 0);
  }
  return out;
}

void BitWriter::put(std::uint64_t value, unsigned width) {
  if (width < 64 && (value >> width) != 0) {
    throw std::invalid_argument("value does not fit the field width");
  }
  for (unsigned i = width; i > 0; --i) bits_.push_back(static_cast<std::uint8_t>((value >> (i - 1)) & 1U));
}

void BitWriter::put_element(const FieldElement& x) {
  put(x.value(), PrimeModulus(x.modulus_value()).element_bits());
}

void BitWriter::put_bits(std::span<const std::uint8_t> bits) {
  for (std::uint8_t b : bits) bits_.push_back(b ? 1 : 0);
}

std::uint64_t BitReader::get(unsigned width) {
  if (width > remaining()) throw std::invalid_argument("bit string too short");
  std::uint64_t v = 0;
  for (unsigned i = 0; i < width; ++i) v = (v << 1U) | (bits_[pos_++] & 1U);
  return v;
}

FieldElement BitReader::get_element(const PrimeModulus& q) {
  const std::uint64_t v = get(q.element_bits());
  if (v >= q.value()) throw std::invalid_argument("encoded value is not a residue mod q");
  return {v, q};
}

std::string pack_bits(std::span<const std::uint8_t> bits) {
  std::string out((bits.size() + 7) / 8, '\0');
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) out[i / 8] = static_cast<char>(out[i / 8] | (0x80U >> (i % 8)));
  }
  return out;
}

Bits unpack_bits(std::string_view bytes, std::size_t bit_count) {
  if (bytes.size() * 8 < bit_count) throw std::invalid_argument("packed bit string too short");
  Bits out(bit_count);
  for (std::size_t i = 0; i < bit_count; ++i) {
    out[i] = (static_cast<unsigned char>(bytes[i / 8]) >> (7 - i % 8)) & 1U;
  }
  return out;
}

}  // namespace awtp

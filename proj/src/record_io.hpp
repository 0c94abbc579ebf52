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

// Byte-level helpers shared by the transcript and wire-transcript encodings.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "awtp/bits.hpp"
#include "awtp/channels.hpp"

namespace awtp::record_io {

inline void put_u8(std::string& out, std::uint8_t v) { out.push_back(static_cast<char>(v)); }

inline void put_u32(std::string& out, std::uint64_t v) {
  if (v > 0xffffffffULL) throw std::length_error("value exceeds 32-bit record field");
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<char>((v >> shift) & 0xffU));
}

inline void put_u64(std::string& out, std::uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) out.push_back(static_cast<char>((v >> shift) & 0xffU));
}

inline void put_record(std::string& out, char tag, const std::string& payload) {
  out.push_back(tag);
  put_u32(out, payload.size());
  out += payload;
}

inline std::string pack_symbols(const std::vector<Symbol>& symbols) {
  BitWriter w;
  for (const Symbol& s : symbols) {
    for (const FieldElement& x : s) w.put_element(x);
  }
  return pack_bits(w.bits());
}

class ByteReader {
 public:
  explicit ByteReader(std::string_view bytes) : bytes_(bytes) {}

  bool done() const { return pos_ == bytes_.size(); }

  std::uint64_t get(unsigned n) {
    need(n);
    std::uint64_t v = 0;
    for (unsigned i = 0; i < n; ++i) v = (v << 8U) | static_cast<unsigned char>(bytes_[pos_++]);
    return v;
  }
  std::uint8_t u8() { return static_cast<std::uint8_t>(get(1)); }
  std::uint64_t u32() { return get(4); }
  std::uint64_t u64() { return get(8); }

  std::string_view take(std::size_t n) {
    need(n);
    const std::string_view s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }

 private:
  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) throw std::invalid_argument("transcript truncated");
  }
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

inline std::vector<Symbol> unpack_symbols(std::string_view bytes, std::size_t count, std::size_t u,
                                   const PrimeModulus& q) {
  const std::size_t nbits = count * u * q.element_bits();
  if (bytes.size() != (nbits + 7) / 8) throw std::invalid_argument("codeword record has wrong size");
  const Bits bits = unpack_bits(bytes, nbits);
  BitReader r(bits);
  std::vector<Symbol> out(count);
  for (Symbol& s : out) {
    s.reserve(u);
    for (std::size_t k = 0; k < u; ++k) s.push_back(r.get_element(q));
  }
  return out;
}

inline std::string encode_pd(const PdMessage& m) {
  std::string p;
  put_u8(p, m.direction == Direction::kAliceToBob ? 0 : 1);
  put_u32(p, m.sequence);
  put_u32(p, m.bits.size());
  p += pack_bits(m.bits);
  return p;
}

inline PdMessage decode_pd(std::string_view payload) {
  ByteReader p(payload);
  PdMessage m;
  const std::uint8_t dir = p.u8();
  if (dir > 1) throw std::invalid_argument("bad PD direction");
  m.direction = dir == 0 ? Direction::kAliceToBob : Direction::kBobToAlice;
  m.sequence = p.u32();
  const std::size_t nbits = p.u32();
  m.bits = unpack_bits(p.take((nbits + 7) / 8), nbits);
  if (!p.done()) throw std::invalid_argument("trailing bytes in PD record");
  return m;
}

}  // namespace awtp::record_io

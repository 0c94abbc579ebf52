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
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

namespace awtp {

/// Deterministic primality test: trial division below 2^32, Miller-Rabin with
/// a fixed witness set above (exact for every 64-bit input).
bool is_prime(std::uint64_t n);

/// A prime modulus q. Construction fails unless q is prime.
class PrimeModulus {
 public:
  explicit PrimeModulus(std::uint64_t q);

  std::uint64_t value() const { return q_; }

  /// Width in bits of the canonical encoding of an element, i.e. ceil(log2 q).
  unsigned element_bits() const;

  friend bool operator==(const PrimeModulus&, const PrimeModulus&) = default;

 private:
  std::uint64_t q_;
};

class ModulusMismatch : public std::invalid_argument {
 public:
  ModulusMismatch() : std::invalid_argument("field elements over different moduli") {}
};

/// An element of F_q stored as its least non-negative residue.
class FieldElement {
 public:
  FieldElement(std::uint64_t value, const PrimeModulus& modulus)
      : value_(value % modulus.value()), q_(modulus.value()) {}

  static FieldElement zero(const PrimeModulus& m) { return {0, m}; }
  static FieldElement one(const PrimeModulus& m) { return {1, m}; }

  std::uint64_t value() const { return value_; }
  std::uint64_t modulus_value() const { return q_; }
  bool is_zero() const { return value_ == 0; }

  FieldElement& operator+=(const FieldElement& rhs);
  FieldElement& operator-=(const FieldElement& rhs);
  FieldElement& operator*=(const FieldElement& rhs);

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  FieldElement operator-() const;

  FieldElement pow(std::uint64_t exponent) const;

  /// Multiplicative inverse; throws std::domain_error on zero.
  FieldElement inv() const;

  friend bool operator==(const FieldElement&, const FieldElement&) = default;

 private:
  FieldElement(std::uint64_t value, std::uint64_t q, int) : value_(value), q_(q) {}
  void require_same(const FieldElement& rhs) const {
    if (q_ != rhs.q_) throw ModulusMismatch();
  }

  std::uint64_t value_;
  std::uint64_t q_;
};

std::ostream& operator<<(std::ostream& os, const FieldElement& x);

inline FieldElement inv(const FieldElement& a) { return a.inv(); }

using FieldVector = std::vector<FieldElement>;

/// Lifts raw residues into F_q.
FieldVector to_field(std::span<const std::uint64_t> values, const PrimeModulus& q);
inline FieldVector to_field(std::initializer_list<std::uint64_t> values, const PrimeModulus& q) {
  return to_field(std::span<const std::uint64_t>(values.begin(), values.size()), q);
}

/// Smallest prime strictly greater than 2*u*N^2, the prime the protocol runs
/// over by default.
PrimeModulus select_prime(std::uint64_t u, std::uint64_t N);

}  // namespace awtp

template <>
struct std::hash<awtp::FieldElement> {
  std::size_t operator()(const awtp::FieldElement& x) const noexcept {
    return std::hash<std::uint64_t>{}(x.value() * 0x9e3779b97f4a7c15ULL ^ x.modulus_value());
  }
};

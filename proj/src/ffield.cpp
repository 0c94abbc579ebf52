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

#include "awtp/ffield.hpp"

#include <array>
#include <bit>
#include <limits>
#include <ostream>
#include <string>

namespace awtp {
namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (e != 0) {
    if (e & 1U) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    e >>= 1U;
  }
  return r;
}

bool trial_division(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

// The first twelve primes form a deterministic witness set for n < 3.3e24.
bool miller_rabin(std::uint64_t n) {
  constexpr std::array<std::uint64_t, 12> kWitnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (std::uint64_t a : kWitnesses) {
    if (a % n == 0) continue;
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < (std::uint64_t{1} << 32)) return trial_division(n);
  if (n % 2 == 0) return false;
  return miller_rabin(n);
}

PrimeModulus::PrimeModulus(std::uint64_t q) : q_(q) {
  if (!is_prime(q)) throw std::invalid_argument("modulus " + std::to_string(q) + " is not prime");
}

unsigned PrimeModulus::element_bits() const {
  // q is prime (never a power of two above 2), so ceil(log2 q) = bit_width(q - 1).
  return static_cast<unsigned>(std::bit_width(q_ - 1));
}

FieldElement& FieldElement::operator+=(const FieldElement& rhs) {
  require_same(rhs);
  // value_ < q_ < 2^64, so the sum may wrap; compare against q_ - rhs instead.
  value_ = value_ >= q_ - rhs.value_ ? value_ - (q_ - rhs.value_) : value_ + rhs.value_;
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& rhs) {
  require_same(rhs);
  value_ = value_ >= rhs.value_ ? value_ - rhs.value_ : value_ + (q_ - rhs.value_);
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& rhs) {
  require_same(rhs);
  value_ = mul_mod(value_, rhs.value_, q_);
  return *this;
}

FieldElement FieldElement::operator-() const {
  return {value_ == 0 ? 0 : q_ - value_, q_, 0};
}

FieldElement FieldElement::pow(std::uint64_t exponent) const {
  return {pow_mod(value_, exponent, q_), q_, 0};
}

FieldElement FieldElement::inv() const {
  if (value_ == 0) throw std::domain_error("inverse of zero");
  return pow(q_ - 2);
}

std::ostream& operator<<(std::ostream& os, const FieldElement& x) {
  return os << x.value() << " (mod " << x.modulus_value() << ")";
}

FieldVector to_field(std::span<const std::uint64_t> values, const PrimeModulus& q) {
  FieldVector out;
  out.reserve(values.size());
  for (std::uint64_t v : values) out.emplace_back(v, q);
  return out;
}

PrimeModulus select_prime(std::uint64_t u, std::uint64_t N) {
  if (u < 2 || N < 1) throw std::invalid_argument("select_prime requires u >= 2 and N >= 1");
  const u128 threshold = static_cast<u128>(2) * u * N * N;
  if (threshold >= std::numeric_limits<std::uint64_t>::max() / 2) {
    throw std::overflow_error("2uN^2 does not fit a 64-bit modulus");
  }
  std::uint64_t candidate = static_cast<std::uint64_t>(threshold) + 1;
  while (!is_prime(candidate)) ++candidate;
  return PrimeModulus(candidate);
}

}  // namespace awtp

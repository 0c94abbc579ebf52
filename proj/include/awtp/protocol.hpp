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
#include <optional>
#include <stdexcept>
#include <vector>

#include "awtp/adversary.hpp"
#include "awtp/bits.hpp"
#include "awtp/channels.hpp"
#include "awtp/ffield.hpp"
#include "awtp/random.hpp"
#include "awtp/rational.hpp"

namespace awtp {

/// Parameters of one three-round AWTP-PD execution.
///
/// rho is the adversary's budget for |S_r u S_w| / N. By default it is the
/// worst case min(1, rho_r + rho_w); restricted channels set it to
/// rho_r = rho_w. The message length ell defaults to
/// floor((u-1)(1-rho)N), the largest length with perfect secrecy.
struct ProtocolConfig {
  std::size_t N;
  std::size_t u;
  PrimeModulus q;
  Rational rho_r;
  Rational rho_w;
  Rational rho;
  std::size_t ell;

  struct Overrides {
    std::optional<std::uint64_t> q;
    std::optional<Rational> rho;
    std::optional<std::size_t> ell;
  };

  /// Validates and fills in defaults. An explicit q need only be prime and
  /// large enough for every key extraction (q >= (u-1)N + ell); whether it
  /// meets q > 2uN^2 is reported by meets_prime_constraint().
  static ProtocolConfig make(std::size_t N, std::size_t u, Rational rho_r, Rational rho_w,
                             const Overrides& overrides);
  static ProtocolConfig make(std::size_t N, std::size_t u, Rational rho_r, Rational rho_w) {
    return make(N, u, rho_r, rho_w, Overrides{});
  }

  std::size_t read_budget() const { return rho_r.floor_times(N); }
  std::size_t write_budget() const { return rho_w.floor_times(N); }
  std::size_t touch_budget() const { return rho.floor_times(N); }

  /// floor((u-1)(1-rho)N).
  std::size_t secure_length() const;
  bool secrecy_condition_holds() const { return ell <= secure_length(); }
  bool meets_prime_constraint() const;

  /// uN/q.
  double failure_bound() const;
  /// ell / (uN).
  double rate() const;

  /// Throws std::invalid_argument unless the sets fit the budgets.
  void check_sets(const ReadWriteSets& sets) const;
};

class InsufficientEntropy : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Public-discussion payloads. d1 = (alpha_1..alpha_N, t_1..t_N); d2 = (c_1..c_ell, v).
struct Round2Message {
  FieldVector alphas;
  FieldVector tags;
};

struct Round3Message {
  FieldVector ciphertext;
  Bits verified;
};

/// Each element is a fixed-width big-endian ceil(log2 q)-bit field; in d2 the
/// N verification bits follow the ciphertext.
Bits encode_d1(const Round2Message& d1);
Round2Message decode_d1(const Bits& bits, std::size_t N, const PrimeModulus& q);
Bits encode_d2(const Round3Message& d2);
Round3Message decode_d2(const Bits& bits, std::size_t ell, std::size_t N, const PrimeModulus& q);

struct AliceState {
  ProtocolConfig config;
  FieldVector message;
  std::vector<FieldVector> r;  // N vectors of u-1 elements
  FieldVector beta;            // N elements
  Bits verified;               // v
  FieldVector key;             // k
};

struct BobState {
  ProtocolConfig config;
  Codeword received;
  FieldVector alphas;
  FieldVector tags;
  FieldVector key;     // k'
  FieldVector output;  // m'
};

/// Rnd 1: c_i = (r_i, beta_i) with all uN coordinates drawn from `tape`.
Codeword round1_alice(AliceState& alice, FieldTape& tape);

/// Rnd 2: alpha_i from `tape`, t_i = hash_{alpha_i}(r'_i) + beta'_i.
Bits round2_bob(BobState& bob, const Codeword& received, FieldTape& tape);

/// Rnd 3: verification vector v, key k = Ext(r_{i_1} || ... || r_{i_s}),
/// ciphertext c_i = k_i + m_i. Throws InsufficientEntropy when (u-1)s < ell.
Bits round3_alice(AliceState& alice, const Bits& d1);

/// m'_i = c_i - k'_i with k' extracted from Bob's copies of the verified components.
FieldVector decode_bob(BobState& bob, const Bits& d2);

/// The decoder as a pure function of the received codeword and d2.
FieldVector decode_received(const ProtocolConfig& config, const Codeword& received, const Bits& d2);

/// Key extraction shared by both parties: concatenates the first u-1
/// coordinates of every component with v_i = 1 and extracts ell elements.
FieldVector derive_key(const ProtocolConfig& config, const std::vector<FieldVector>& randomness,
                       const Bits& verified);

struct ExecutionResult {
  FieldVector decoded;
  Transcript transcript;
  Bits verified;
  std::size_t verified_count;

  bool success(const FieldVector& message) const { return decoded == message; }
};

/// Runs Rnd 1 (AWTP), Rnd 2 (PD Bob->Alice), Rnd 3 (PD Alice->Bob) and decodes.
ExecutionResult run_protocol(const ProtocolConfig& config, const FieldVector& message,
                             AdversaryStrategy& adversary, FieldTape& alice_tape, FieldTape& bob_tape);

}  // namespace awtp

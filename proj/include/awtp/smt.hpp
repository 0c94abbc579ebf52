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
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "awtp/channels.hpp"
#include "awtp/protocol.hpp"

namespace awtp {

/// Traffic of one wire: what Alice put on it and what Bob took off it, one
/// symbol per wire round.
struct Wire {
  std::vector<Symbol> sent;
  std::vector<Symbol> received;
  friend bool operator==(const Wire&, const Wire&) = default;
};

/// One-way symmetric SMT-PD transcript: N wires from Alice to Bob, a
/// corrupted set S of t wires and the PD messages, in message-round order.
class WireTranscript {
 public:
  /// Throws std::invalid_argument if the wires do not share one per-round
  /// alphabet F_q^u or the round structure is inconsistent.
  WireTranscript(const PrimeModulus& q, std::size_t u, std::set<std::size_t> corrupted,
                 std::vector<Wire> wires, std::vector<PdMessage> pd, std::vector<RoundKind> rounds);

  const PrimeModulus& modulus() const { return q_; }
  std::size_t u() const { return u_; }
  std::size_t N() const { return wires_.size(); }
  std::size_t t() const { return corrupted_.size(); }
  const std::set<std::size_t>& corrupted() const { return corrupted_; }
  const std::vector<Wire>& wires() const { return wires_; }
  const std::vector<PdMessage>& pd_messages() const { return pd_; }
  const std::vector<RoundKind>& rounds() const { return rounds_; }
  std::size_t wire_rounds() const;
  std::size_t message_rounds() const { return rounds_.size(); }

  /// Symbols on corrupted wires (ascending wire index per round) and every
  /// PD message, in round order.
  AdversaryView adversary_view() const;

  /// Bob's received word of wire round r, as a codeword.
  Codeword received_word(std::size_t round) const;

  friend bool operator==(const WireTranscript&, const WireTranscript&) = default;

 private:
  PrimeModulus q_;
  std::size_t u_;
  std::set<std::size_t> corrupted_;
  std::vector<Wire> wires_;
  std::vector<PdMessage> pd_;
  std::vector<RoundKind> rounds_;
};

class NonRestrictedTranscript : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Wire i carries component i of every codeword; PD messages are copied.
/// Only restricted transcripts (S_r = S_w) convert.
WireTranscript awtp_to_smt(const Transcript& transcript);

/// Inverse of awtp_to_smt; errors, counts and the adversary view are rebuilt.
Transcript smt_to_awtp(const WireTranscript& wires);

/// sum_i log2 |W_i| / message_bits, with |W_i| = q^{u * wire rounds}.
double smt_transmission_rate(const WireTranscript& wires, double message_bits);

/// Bob's decoder run on the wire representation of a protocol execution.
FieldVector decode_from_wires(const ProtocolConfig& config, const WireTranscript& wires);

std::string serialize(const WireTranscript& wires);
WireTranscript deserialize_wire_transcript(std::string_view bytes);

}  // namespace awtp

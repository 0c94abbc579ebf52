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
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "awtp/bits.hpp"
#include "awtp/ffield.hpp"

namespace awtp {

class AdversaryStrategy;

enum class Party { kAlice, kBob };
enum class Direction { kAliceToBob, kBobToAlice };

/// One message round: a single invocation of one channel by one party.
enum class RoundKind : std::uint8_t { kAwtpAliceToBob = 0, kPdAliceToBob = 1, kPdBobToAlice = 2 };

std::string_view to_string(RoundKind kind);

/// The adversary's read set S_r and write set S_w over [0, N), with the
/// derived partition S_a = S_r \ S_w, S_b = S_r & S_w, S_c = S_w \ S_r and
/// S_d = untouched.
class ReadWriteSets {
 public:
  ReadWriteSets(std::size_t N, std::set<std::size_t> read, std::set<std::size_t> write);

  /// Uniformly random sets of the given sizes; when `restricted`, the write
  /// set equals the read set (and write_size must equal read_size).
  static ReadWriteSets random(std::size_t N, std::size_t read_size, std::size_t write_size,
                              bool restricted, std::mt19937_64& rng);

  std::size_t N() const { return N_; }
  const std::set<std::size_t>& read() const { return read_; }
  const std::set<std::size_t>& write() const { return write_; }
  bool reads(std::size_t i) const { return read_.contains(i); }
  bool writes(std::size_t i) const { return write_.contains(i); }

  std::set<std::size_t> read_only() const;   // S_a
  std::set<std::size_t> read_write() const;  // S_b
  std::set<std::size_t> write_only() const;  // S_c
  std::set<std::size_t> untouched() const;   // S_d

  std::size_t touched_count() const;
  /// |S_r u S_w| / N.
  double rho() const;
  bool restricted() const { return read_ == write_; }

  friend bool operator==(const ReadWriteSets&, const ReadWriteSets&) = default;

 private:
  std::size_t N_;
  std::set<std::size_t> read_;
  std::set<std::size_t> write_;
};

/// One codeword component: u elements of F_q (an element of Sigma = F_q^u).
using Symbol = FieldVector;

struct Codeword {
  std::vector<Symbol> components;

  static Codeword zero(std::size_t N, std::size_t u, const PrimeModulus& q);

  std::size_t size() const { return components.size(); }
  /// Throws unless every component has u elements over q.
  void validate(std::size_t u, const PrimeModulus& q) const;
  /// Number of non-zero components.
  std::size_t weight() const;

  friend bool operator==(const Codeword&, const Codeword&) = default;
};

struct PdMessage {
  Bits bits;
  Direction direction;
  std::size_t sequence;

  friend bool operator==(const PdMessage&, const PdMessage&) = default;
};

/// A codeword component read off the AWTP channel.
struct ObservedSymbol {
  std::size_t invocation;
  std::size_t index;
  Symbol symbol;
  friend bool operator==(const ObservedSymbol&, const ObservedSymbol&) = default;
};

/// A PD message; the adversary sees every one.
struct ObservedPd {
  std::size_t sequence;
  Direction direction;
  Bits bits;
  friend bool operator==(const ObservedPd&, const ObservedPd&) = default;
};

using ViewEvent = std::variant<ObservedSymbol, ObservedPd>;
using AdversaryView = std::vector<ViewEvent>;

/// Canonical byte encoding of a view, used to bucket views during secrecy
/// enumeration.
std::string serialize_view(const AdversaryView& view);

struct AwtpInvocation {
  Codeword sent;
  Codeword error;
  Codeword received;
  friend bool operator==(const AwtpInvocation&, const AwtpInvocation&) = default;
};

class StrategyViolation : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Append-only record of one execution.
class Transcript {
 public:
  Transcript(const PrimeModulus& q, std::size_t u, ReadWriteSets sets);

  const PrimeModulus& modulus() const { return q_; }
  std::size_t u() const { return u_; }
  const ReadWriteSets& sets() const { return sets_; }

  const std::vector<AwtpInvocation>& awtp() const { return awtp_; }
  const std::vector<PdMessage>& pd_messages() const { return pd_; }
  const std::vector<RoundKind>& rounds() const { return rounds_; }
  const AdversaryView& adversary_view() const { return view_; }

  std::size_t awtp_invocations() const { return awtp_.size(); }  // l_c
  std::size_t pd_invocations() const { return pd_.size(); }      // l_d
  std::size_t message_rounds() const { return rounds_.size(); }  // RC_m

  void record_awtp(AwtpInvocation invocation);
  void record_pd(PdMessage message);
  void observe(ViewEvent event) { view_.push_back(std::move(event)); }

  /// Recomputes the adversary view from the sent codewords, the read set and
  /// the PD messages in round order.
  AdversaryView reconstruct_view() const;

  friend bool operator==(const Transcript&, const Transcript&) = default;

 private:
  PrimeModulus q_;
  std::size_t u_;
  ReadWriteSets sets_;
  std::vector<AwtpInvocation> awtp_;
  std::vector<PdMessage> pd_;
  std::vector<RoundKind> rounds_;
  AdversaryView view_;
};

/// Sends `c` over the (rho_r, rho_w)-AWTP channel. Components are revealed
/// in ascending index order; the adversary commits the error for component
/// j after seeing component j (if read) and before component j+1. Only Alice
/// may send. Throws StrategyViolation when the adversary writes outside S_w.
Codeword awtp_transmit(const Codeword& c, AdversaryStrategy& adversary, Transcript& transcript,
                       Party sender = Party::kAlice);

/// Authenticated public channel: delivers `bits` unchanged and shows them to
/// the adversary.
Bits pd_send(const Bits& bits, Direction direction, Transcript& transcript);

/// Length-prefixed binary transcript encoding. Fails loudly on malformed input.
std::string serialize(const Transcript& transcript);
Transcript deserialize_transcript(std::string_view bytes);

}  // namespace awtp

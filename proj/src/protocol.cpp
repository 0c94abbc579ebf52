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

#include "awtp/protocol.hpp"

#include <algorithm>
#include <string>

#include "awtp/extractor.hpp"
#include "awtp/hashfam.hpp"

namespace awtp {
namespace {

using u128 = unsigned __int128;

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

std::span<const FieldElement> randomness_part(const Symbol& component) {
  return std::span<const FieldElement>(component).first(component.size() - 1);
}

}  // namespace

ProtocolConfig ProtocolConfig::make(std::size_t N, std::size_t u, Rational rho_r, Rational rho_w,
                                    const Overrides& overrides) {
  require(N >= 1, "N must be at least 1");
  require(u >= 2, "u must be at least 2");
  require(rho_r.in_unit_interval() && rho_w.in_unit_interval(), "rho_r and rho_w must lie in [0, 1]");

  // Default rho: min(1, rho_r + rho_w).
  Rational sum = Rational::make(rho_r.num * rho_w.den + rho_w.num * rho_r.den, rho_r.den * rho_w.den);
  if (!sum.in_unit_interval()) sum = Rational{1, 1};
  const Rational rho = overrides.rho.value_or(sum);
  require(rho.in_unit_interval(), "rho must lie in [0, 1]");
  auto leq = [](const Rational& a, const Rational& b) {
    return static_cast<u128>(a.num) * b.den <= static_cast<u128>(b.num) * a.den;
  };
  require(leq(rho_r, rho) && leq(rho_w, rho), "rho must be at least max(rho_r, rho_w)");
  require(leq(rho, sum), "rho cannot exceed rho_r + rho_w");

  ProtocolConfig cfg{N, u, PrimeModulus(2), rho_r, rho_w, rho, 0};
  cfg.ell = overrides.ell.value_or(cfg.secure_length());
  require(cfg.ell >= 1, "message length is zero: (u-1)(1-rho)N < 1 leaves no secret capacity");
  require(cfg.ell <= (u - 1) * N, "message length exceeds the (u-1)N extractable elements");

  cfg.q = overrides.q ? PrimeModulus(*overrides.q) : select_prime(u, N);
  require(cfg.q.value() >= u, "q must be at least u so the hash input length u-1 is at most q-1");
  require(cfg.q.value() >= (u - 1) * N + cfg.ell, "q must be at least (u-1)N + ell for key extraction");
  return cfg;
}

std::size_t ProtocolConfig::secure_length() const {
  const u128 numer = static_cast<u128>(u - 1) * N * (rho.den - rho.num);
  return static_cast<std::size_t>(numer / rho.den);
}

bool ProtocolConfig::meets_prime_constraint() const {
  return static_cast<u128>(q.value()) > static_cast<u128>(2) * u * N * N;
}

double ProtocolConfig::failure_bound() const {
  return static_cast<double>(u) * static_cast<double>(N) / static_cast<double>(q.value());
}

double ProtocolConfig::rate() const {
  return static_cast<double>(ell) / (static_cast<double>(u) * static_cast<double>(N));
}

void ProtocolConfig::check_sets(const ReadWriteSets& sets) const {
  require(sets.N() == N, "read/write sets are for a different N");
  require(sets.read().size() <= read_budget(),
          "read set has " + std::to_string(sets.read().size()) + " components, budget is " +
              std::to_string(read_budget()));
  require(sets.write().size() <= write_budget(),
          "write set has " + std::to_string(sets.write().size()) + " components, budget is " +
              std::to_string(write_budget()));
  require(sets.touched_count() <= touch_budget(),
          "|S_r u S_w| = " + std::to_string(sets.touched_count()) + " exceeds the rho budget " +
              std::to_string(touch_budget()));
}

// ------------------------------------------------------------ PD encoding

Bits encode_d1(const Round2Message& d1) {
  require(d1.alphas.size() == d1.tags.size(), "d1 needs as many tags as keys");
  BitWriter w;
  for (const FieldElement& a : d1.alphas) w.put_element(a);
  for (const FieldElement& t : d1.tags) w.put_element(t);
  return w.take();
}

Round2Message decode_d1(const Bits& bits, std::size_t N, const PrimeModulus& q) {
  require(bits.size() == 2 * N * q.element_bits(), "d1 has the wrong length");
  BitReader r(bits);
  Round2Message d1;
  for (std::size_t i = 0; i < N; ++i) d1.alphas.push_back(r.get_element(q));
  for (std::size_t i = 0; i < N; ++i) d1.tags.push_back(r.get_element(q));
  return d1;
}

Bits encode_d2(const Round3Message& d2) {
  BitWriter w;
  for (const FieldElement& c : d2.ciphertext) w.put_element(c);
  w.put_bits(d2.verified);
  return w.take();
}

Round3Message decode_d2(const Bits& bits, std::size_t ell, std::size_t N, const PrimeModulus& q) {
  require(bits.size() == ell * q.element_bits() + N, "d2 has the wrong length");
  BitReader r(bits);
  Round3Message d2;
  for (std::size_t i = 0; i < ell; ++i) d2.ciphertext.push_back(r.get_element(q));
  for (std::size_t i = 0; i < N; ++i) d2.verified.push_back(r.get_bit());
  return d2;
}

// ------------------------------------------------------------ the rounds

FieldVector derive_key(const ProtocolConfig& config, const std::vector<FieldVector>& randomness,
                       const Bits& verified) {
  require(randomness.size() == config.N && verified.size() == config.N, "key derivation input size");
  FieldVector source;
  for (std::size_t i = 0; i < config.N; ++i) {
    if (verified[i]) source.insert(source.end(), randomness[i].begin(), randomness[i].end());
  }
  if (source.size() < config.ell) {
    throw InsufficientEntropy("insufficient verified entropy: " + std::to_string(source.size()) +
                              " verified elements for a key of length " + std::to_string(config.ell));
  }
  return extract(source, config.ell);
}

Codeword round1_alice(AliceState& alice, FieldTape& tape) {
  const ProtocolConfig& cfg = alice.config;
  alice.r.assign(cfg.N, {});
  alice.beta.clear();
  Codeword c;
  c.components.reserve(cfg.N);
  for (std::size_t i = 0; i < cfg.N; ++i) {
    for (std::size_t k = 0; k + 1 < cfg.u; ++k) alice.r[i].push_back(tape.next(cfg.q));
    alice.beta.push_back(tape.next(cfg.q));
    Symbol component = alice.r[i];
    component.push_back(alice.beta[i]);
    c.components.push_back(std::move(component));
  }
  return c;
}

Bits round2_bob(BobState& bob, const Codeword& received, FieldTape& tape) {
  const ProtocolConfig& cfg = bob.config;
  require(received.size() == cfg.N, "received codeword has the wrong length");
  received.validate(cfg.u, cfg.q);
  bob.received = received;
  bob.alphas.clear();
  bob.tags.clear();
  for (std::size_t i = 0; i < cfg.N; ++i) {
    const FieldElement alpha = tape.next(cfg.q);
    const Symbol& y = received.components[i];
    bob.alphas.push_back(alpha);
    bob.tags.push_back(hash(HashKey{alpha}, randomness_part(y)) + y.back());
  }
  return encode_d1({bob.alphas, bob.tags});
}

Bits round3_alice(AliceState& alice, const Bits& d1_bits) {
  const ProtocolConfig& cfg = alice.config;
  require(alice.message.size() == cfg.ell, "message length differs from ell");
  const Round2Message d1 = decode_d1(d1_bits, cfg.N, cfg.q);
  alice.verified.assign(cfg.N, 0);
  for (std::size_t i = 0; i < cfg.N; ++i) {
    const FieldElement expected = hash(HashKey{d1.alphas[i]}, alice.r[i]) + alice.beta[i];
    alice.verified[i] = expected == d1.tags[i] ? 1 : 0;
  }
  alice.key = derive_key(cfg, alice.r, alice.verified);
  Round3Message d2{{}, alice.verified};
  for (std::size_t i = 0; i < cfg.ell; ++i) d2.ciphertext.push_back(alice.key[i] + alice.message[i]);
  return encode_d2(d2);
}

FieldVector decode_received(const ProtocolConfig& config, const Codeword& received, const Bits& d2_bits) {
  require(received.size() == config.N, "received codeword has the wrong length");
  const Round3Message d2 = decode_d2(d2_bits, config.ell, config.N, config.q);
  std::vector<FieldVector> randomness;
  randomness.reserve(config.N);
  for (const Symbol& y : received.components) {
    const auto part = randomness_part(y);
    randomness.emplace_back(part.begin(), part.end());
  }
  const FieldVector key = derive_key(config, randomness, d2.verified);
  FieldVector m;
  m.reserve(config.ell);
  for (std::size_t i = 0; i < config.ell; ++i) m.push_back(d2.ciphertext[i] - key[i]);
  return m;
}

FieldVector decode_bob(BobState& bob, const Bits& d2_bits) {
  const ProtocolConfig& cfg = bob.config;
  const Round3Message d2 = decode_d2(d2_bits, cfg.ell, cfg.N, cfg.q);
  std::vector<FieldVector> randomness;
  for (const Symbol& y : bob.received.components) {
    const auto part = randomness_part(y);
    randomness.emplace_back(part.begin(), part.end());
  }
  bob.key = derive_key(cfg, randomness, d2.verified);
  bob.output.clear();
  for (std::size_t i = 0; i < cfg.ell; ++i) bob.output.push_back(d2.ciphertext[i] - bob.key[i]);
  return bob.output;
}

ExecutionResult run_protocol(const ProtocolConfig& config, const FieldVector& message,
                             AdversaryStrategy& adversary, FieldTape& alice_tape, FieldTape& bob_tape) {
  require(message.size() == config.ell, "message length differs from ell");
  for (const FieldElement& x : message) {
    if (x.modulus_value() != config.q.value()) throw ModulusMismatch();
  }
  config.check_sets(adversary.sets());

  Transcript transcript(config.q, config.u, adversary.sets());
  AliceState alice{config, message, {}, {}, {}, {}};
  BobState bob{config, {}, {}, {}, {}, {}};

  const Codeword c = round1_alice(alice, alice_tape);
  const Codeword y = awtp_transmit(c, adversary, transcript, Party::kAlice);
  const Bits d1 = pd_send(round2_bob(bob, y, bob_tape), Direction::kBobToAlice, transcript);
  const Bits d2 = pd_send(round3_alice(alice, d1), Direction::kAliceToBob, transcript);
  FieldVector decoded = decode_bob(bob, d2);

  const auto verified_count =
      static_cast<std::size_t>(std::count(alice.verified.begin(), alice.verified.end(), 1));
  return {std::move(decoded), std::move(transcript), alice.verified, verified_count};
}

}  // namespace awtp

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

#include "awtp/smt.hpp"

#include <cmath>

#include "record_io.hpp"

namespace awtp {

using namespace record_io;

WireTranscript::WireTranscript(const PrimeModulus& q, std::size_t u, std::set<std::size_t> corrupted,
                               std::vector<Wire> wires, std::vector<PdMessage> pd,
                               std::vector<RoundKind> rounds)
    : q_(q), u_(u), corrupted_(std::move(corrupted)), wires_(std::move(wires)), pd_(std::move(pd)),
      rounds_(std::move(rounds)) {
  if (wires_.empty()) throw std::invalid_argument("wire transcript needs at least one wire");
  if (!corrupted_.empty() && *corrupted_.rbegin() >= wires_.size()) {
    throw std::invalid_argument("corrupted wire index out of range");
  }
  std::size_t wire_count = 0;
  std::size_t pd_count = 0;
  for (RoundKind k : rounds_) {
    if (k == RoundKind::kAwtpAliceToBob) {
      ++wire_count;
    } else {
      const Direction expect = k == RoundKind::kPdAliceToBob ? Direction::kAliceToBob : Direction::kBobToAlice;
      if (pd_count >= pd_.size() || pd_[pd_count].direction != expect || pd_[pd_count].sequence != pd_count) {
        throw std::invalid_argument("PD messages do not match the round structure");
      }
      ++pd_count;
    }
  }
  if (pd_count != pd_.size()) throw std::invalid_argument("PD messages do not match the round structure");
  for (const Wire& w : wires_) {
    if (w.sent.size() != wire_count || w.received.size() != wire_count) {
      throw std::invalid_argument("every wire must carry one symbol per wire round");
    }
    for (const auto* stream : {&w.sent, &w.received}) {
      for (const Symbol& s : *stream) {
        if (s.size() != u_) throw std::invalid_argument("asymmetric wire alphabets: symbol length differs");
        for (const FieldElement& x : s) {
          if (x.modulus_value() != q_.value()) throw std::invalid_argument("asymmetric wire alphabets: modulus differs");
        }
      }
    }
  }
}

std::size_t WireTranscript::wire_rounds() const { return wires_.front().sent.size(); }

AdversaryView WireTranscript::adversary_view() const {
  AdversaryView view;
  std::size_t next_wire = 0;
  std::size_t next_pd = 0;
  for (RoundKind k : rounds_) {
    if (k == RoundKind::kAwtpAliceToBob) {
      for (std::size_t i : corrupted_) view.emplace_back(ObservedSymbol{next_wire, i, wires_[i].sent[next_wire]});
      ++next_wire;
    } else {
      const PdMessage& m = pd_[next_pd++];
      view.emplace_back(ObservedPd{m.sequence, m.direction, m.bits});
    }
  }
  return view;
}

Codeword WireTranscript::received_word(std::size_t round) const {
  Codeword y;
  y.components.reserve(wires_.size());
  for (const Wire& w : wires_) y.components.push_back(w.received.at(round));
  return y;
}

WireTranscript awtp_to_smt(const Transcript& t) {
  if (!t.sets().restricted()) {
    throw NonRestrictedTranscript("only restricted transcripts (S_r = S_w) correspond to SMT-PD");
  }
  const std::size_t N = t.sets().N();
  std::vector<Wire> wires(N);
  for (const AwtpInvocation& inv : t.awtp()) {
    for (std::size_t i = 0; i < N; ++i) {
      wires[i].sent.push_back(inv.sent.components[i]);
      wires[i].received.push_back(inv.received.components[i]);
    }
  }
  return {t.modulus(), t.u(), t.sets().read(), std::move(wires), t.pd_messages(), t.rounds()};
}

Transcript smt_to_awtp(const WireTranscript& w) {
  const std::size_t N = w.N();
  Transcript t(w.modulus(), w.u(), ReadWriteSets(N, w.corrupted(), w.corrupted()));
  std::size_t next_wire = 0;
  std::size_t next_pd = 0;
  for (RoundKind k : w.rounds()) {
    if (k == RoundKind::kAwtpAliceToBob) {
      AwtpInvocation inv;
      for (std::size_t i = 0; i < N; ++i) {
        const Symbol& sent = w.wires()[i].sent[next_wire];
        const Symbol& received = w.wires()[i].received[next_wire];
        Symbol error;
        for (std::size_t j = 0; j < w.u(); ++j) error.push_back(received[j] - sent[j]);
        inv.sent.components.push_back(sent);
        inv.error.components.push_back(std::move(error));
        inv.received.components.push_back(received);
      }
      for (std::size_t i : w.corrupted()) t.observe(ObservedSymbol{next_wire, i, inv.sent.components[i]});
      t.record_awtp(std::move(inv));
      ++next_wire;
    } else {
      const PdMessage& m = w.pd_messages()[next_pd++];
      t.observe(ObservedPd{m.sequence, m.direction, m.bits});
      t.record_pd(m);
    }
  }
  return t;
}

double smt_transmission_rate(const WireTranscript& w, double message_bits) {
  if (!(message_bits > 0.0)) throw std::invalid_argument("transmission rate needs a positive message size");
  const double per_wire = static_cast<double>(w.wire_rounds()) * static_cast<double>(w.u()) *
                          std::log2(static_cast<double>(w.modulus().value()));
  return static_cast<double>(w.N()) * per_wire / message_bits;
}

FieldVector decode_from_wires(const ProtocolConfig& config, const WireTranscript& w) {
  if (w.wire_rounds() != 1 || w.pd_messages().size() != 2) {
    throw std::invalid_argument("not a three-message-round protocol transcript");
  }
  return decode_received(config, w.received_word(0), w.pd_messages()[1].bits);
}

std::string serialize(const WireTranscript& w) {
  std::string out;
  {
    std::string h;
    put_u64(h, w.modulus().value());
    put_u32(h, w.u());
    put_u32(h, w.N());
    put_u32(h, w.t());
    for (std::size_t i : w.corrupted()) put_u32(h, i);
    put_record(out, 'W', h);
  }
  std::size_t next_wire = 0;
  std::size_t next_pd = 0;
  for (RoundKind k : w.rounds()) {
    if (k == RoundKind::kAwtpAliceToBob) {
      for (std::size_t i = 0; i < w.N(); ++i) {
        std::string p;
        put_u32(p, next_wire);
        put_u32(p, i);
        p += pack_symbols({w.wires()[i].sent[next_wire], w.wires()[i].received[next_wire]});
        put_record(out, 'w', p);
      }
      ++next_wire;
    } else {
      put_record(out, 'P', encode_pd(w.pd_messages()[next_pd++]));
    }
  }
  return out;
}

WireTranscript deserialize_wire_transcript(std::string_view bytes) {
  ByteReader r(bytes);
  if (r.done() || r.u8() != 'W') throw std::invalid_argument("wire transcript must start with a header record");
  ByteReader h(r.take(r.u32()));
  const PrimeModulus q(h.u64());
  const std::size_t u = h.u32();
  const std::size_t N = h.u32();
  if (N == 0) throw std::invalid_argument("wire transcript needs at least one wire");
  std::set<std::size_t> corrupted;
  for (std::size_t k = h.u32(); k > 0; --k) corrupted.insert(h.u32());
  if (!h.done()) throw std::invalid_argument("trailing bytes in header record");

  std::vector<Wire> wires(N);
  std::vector<PdMessage> pd;
  std::vector<RoundKind> rounds;
  const std::size_t symbol_bytes = (2 * u * q.element_bits() + 7) / 8;
  while (!r.done()) {
    const char tag = static_cast<char>(r.u8());
    const std::string_view payload = r.take(r.u32());
    if (tag == 'w') {
      ByteReader p(payload);
      const std::size_t round = p.u32();
      const std::size_t wire = p.u32();
      if (wire >= N || wires[wire].sent.size() != round) throw std::invalid_argument("wire record out of order");
      if (wire == 0) rounds.push_back(RoundKind::kAwtpAliceToBob);
      auto pair = unpack_symbols(p.take(symbol_bytes), 2, u, q);
      if (!p.done()) throw std::invalid_argument("trailing bytes in wire record");
      wires[wire].sent.push_back(std::move(pair[0]));
      wires[wire].received.push_back(std::move(pair[1]));
    } else if (tag == 'P') {
      PdMessage m = decode_pd(payload);
      rounds.push_back(m.direction == Direction::kAliceToBob ? RoundKind::kPdAliceToBob : RoundKind::kPdBobToAlice);
      pd.push_back(std::move(m));
    } else {
      throw std::invalid_argument(std::string("unknown wire transcript record '") + tag + "'");
    }
  }
  return {q, u, std::move(corrupted), std::move(wires), std::move(pd), std::move(rounds)};
}

}  // namespace awtp

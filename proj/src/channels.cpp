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

#include "awtp/channels.hpp"

#include <algorithm>
#include <iterator>

#include "awtp/adversary.hpp"
#include "awtp/random.hpp"
#include "record_io.hpp"

namespace awtp {
namespace {

using namespace record_io;

std::set<std::size_t> difference(const std::set<std::size_t>& a, const std::set<std::size_t>& b) {
  std::set<std::size_t> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

bool is_zero(const Symbol& s) {
  return std::all_of(s.begin(), s.end(), [](const FieldElement& x) { return x.is_zero(); });
}

std::string encode_event(const ViewEvent& event) {
  std::string out;
  if (const auto* s = std::get_if<ObservedSymbol>(&event)) {
    put_u8(out, 'S');
    put_u32(out, s->invocation);
    put_u32(out, s->index);
    put_u32(out, s->symbol.size());
    out += pack_symbols({s->symbol});
  } else {
    const auto& d = std::get<ObservedPd>(event);
    put_u8(out, 'D');
    put_u8(out, d.direction == Direction::kAliceToBob ? 0 : 1);
    put_u32(out, d.sequence);
    put_u32(out, d.bits.size());
    out += pack_bits(d.bits);
  }
  return out;
}

ViewEvent decode_event(std::string_view payload, const PrimeModulus& q) {
  ByteReader r(payload);
  const std::uint8_t kind = r.u8();
  if (kind == 'S') {
    ObservedSymbol s;
    s.invocation = r.u32();
    s.index = r.u32();
    const std::size_t u = r.u32();
    const std::size_t nbytes = (u * q.element_bits() + 7) / 8;
    s.symbol = unpack_symbols(r.take(nbytes), 1, u, q).front();
    if (!r.done()) throw std::invalid_argument("trailing bytes in view record");
    return s;
  }
  if (kind == 'D') {
    ObservedPd d;
    const std::uint8_t dir = r.u8();
    if (dir > 1) throw std::invalid_argument("bad PD direction");
    d.direction = dir == 0 ? Direction::kAliceToBob : Direction::kBobToAlice;
    d.sequence = r.u32();
    const std::size_t nbits = r.u32();
    d.bits = unpack_bits(r.take((nbits + 7) / 8), nbits);
    if (!r.done()) throw std::invalid_argument("trailing bytes in view record");
    return d;
  }
  throw std::invalid_argument("unknown view event kind");
}

}  // namespace

std::string_view to_string(RoundKind kind) {
  switch (kind) {
    case RoundKind::kAwtpAliceToBob: return "Alice-AWTP->Bob";
    case RoundKind::kPdAliceToBob: return "Alice-PD->Bob";
    case RoundKind::kPdBobToAlice: return "Bob-PD->Alice";
  }
  return "?";
}

// ------------------------------------------------------------------ sets

ReadWriteSets::ReadWriteSets(std::size_t N, std::set<std::size_t> read, std::set<std::size_t> write)
    : N_(N), read_(std::move(read)), write_(std::move(write)) {
  if (N_ == 0) throw std::invalid_argument("codeword length must be positive");
  if ((!read_.empty() && *read_.rbegin() >= N_) || (!write_.empty() && *write_.rbegin() >= N_)) {
    throw std::invalid_argument("read/write index outside [0, N)");
  }
}

ReadWriteSets ReadWriteSets::random(std::size_t N, std::size_t read_size, std::size_t write_size,
                                    bool restricted, std::mt19937_64& rng) {
  if (read_size > N || write_size > N) throw std::invalid_argument("set size exceeds N");
  if (restricted && read_size != write_size) {
    throw std::invalid_argument("restricted sets need equal read and write sizes");
  }
  auto pick = [&](std::size_t k) {
    std::vector<std::size_t> idx(N);
    for (std::size_t i = 0; i < N; ++i) idx[i] = i;
    for (std::size_t i = 0; i < k; ++i) std::swap(idx[i], idx[i + uniform_below(rng, N - i)]);
    return std::set<std::size_t>(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k));
  };
  std::set<std::size_t> read = pick(read_size);
  std::set<std::size_t> write = restricted ? read : pick(write_size);
  return {N, std::move(read), std::move(write)};
}

std::set<std::size_t> ReadWriteSets::read_only() const { return difference(read_, write_); }

std::set<std::size_t> ReadWriteSets::read_write() const {
  std::set<std::size_t> out;
  std::set_intersection(read_.begin(), read_.end(), write_.begin(), write_.end(),
                        std::inserter(out, out.end()));
  return out;
}

std::set<std::size_t> ReadWriteSets::write_only() const { return difference(write_, read_); }

std::set<std::size_t> ReadWriteSets::untouched() const {
  std::set<std::size_t> out;
  for (std::size_t i = 0; i < N_; ++i) {
    if (!reads(i) && !writes(i)) out.insert(i);
  }
  return out;
}

std::size_t ReadWriteSets::touched_count() const { return N_ - untouched().size(); }

double ReadWriteSets::rho() const {
  return static_cast<double>(touched_count()) / static_cast<double>(N_);
}

// -------------------------------------------------------------- codewords

Codeword Codeword::zero(std::size_t N, std::size_t u, const PrimeModulus& q) {
  return {std::vector<Symbol>(N, Symbol(u, FieldElement::zero(q)))};
}

void Codeword::validate(std::size_t u, const PrimeModulus& q) const {
  for (const Symbol& s : components) {
    if (s.size() != u) throw std::invalid_argument("codeword component has wrong length");
    for (const FieldElement& x : s) {
      if (x.modulus_value() != q.value()) throw ModulusMismatch();
    }
  }
}

std::size_t Codeword::weight() const {
  return static_cast<std::size_t>(
      std::count_if(components.begin(), components.end(), [](const Symbol& s) { return !is_zero(s); }));
}

std::string serialize_view(const AdversaryView& view) {
  std::string out;
  for (const ViewEvent& e : view) {
    const std::string enc = encode_event(e);
    put_u32(out, enc.size());
    out += enc;
  }
  return out;
}

// ------------------------------------------------------------- transcript

Transcript::Transcript(const PrimeModulus& q, std::size_t u, ReadWriteSets sets)
    : q_(q), u_(u), sets_(std::move(sets)) {
  if (u_ == 0) throw std::invalid_argument("symbols need at least one element");
}

void Transcript::record_awtp(AwtpInvocation inv) {
  const std::size_t N = sets_.N();
  for (const Codeword* c : {&inv.sent, &inv.error, &inv.received}) {
    if (c->size() != N) throw std::invalid_argument("codeword length differs from N");
    c->validate(u_, q_);
  }
  for (std::size_t j = 0; j < N; ++j) {
    if (!sets_.writes(j) && !is_zero(inv.error.components[j])) {
      throw StrategyViolation("error outside the write set at component " + std::to_string(j));
    }
    for (std::size_t k = 0; k < u_; ++k) {
      if (inv.sent.components[j][k] + inv.error.components[j][k] != inv.received.components[j][k]) {
        throw std::invalid_argument("received codeword is not sent + error");
      }
    }
  }
  awtp_.push_back(std::move(inv));
  rounds_.push_back(RoundKind::kAwtpAliceToBob);
}

void Transcript::record_pd(PdMessage message) {
  if (message.sequence != pd_.size()) throw std::invalid_argument("PD sequence out of order");
  rounds_.push_back(message.direction == Direction::kAliceToBob ? RoundKind::kPdAliceToBob
                                                                : RoundKind::kPdBobToAlice);
  pd_.push_back(std::move(message));
}

AdversaryView Transcript::reconstruct_view() const {
  AdversaryView view;
  std::size_t next_awtp = 0;
  std::size_t next_pd = 0;
  for (RoundKind kind : rounds_) {
    if (kind == RoundKind::kAwtpAliceToBob) {
      const Codeword& sent = awtp_.at(next_awtp).sent;
      for (std::size_t j : sets_.read()) view.emplace_back(ObservedSymbol{next_awtp, j, sent.components[j]});
      ++next_awtp;
    } else {
      const PdMessage& m = pd_.at(next_pd++);
      view.emplace_back(ObservedPd{m.sequence, m.direction, m.bits});
    }
  }
  return view;
}

// --------------------------------------------------------------- channels

Codeword awtp_transmit(const Codeword& c, AdversaryStrategy& adversary, Transcript& transcript,
                       Party sender) {
  if (sender != Party::kAlice) throw std::logic_error("the AWTP channel is one-way: only Alice may send");
  const ReadWriteSets& sets = adversary.sets();
  if (sets != transcript.sets()) throw std::invalid_argument("adversary sets differ from the transcript's");
  const std::size_t N = sets.N();
  const std::size_t u = transcript.u();
  const PrimeModulus& q = transcript.modulus();
  if (c.size() != N) throw std::invalid_argument("codeword length differs from N");
  c.validate(u, q);

  const std::size_t invocation = transcript.awtp_invocations();
  Codeword error = Codeword::zero(N, u, q);
  for (std::size_t j = 0; j < N; ++j) {
    const Symbol* observed = nullptr;
    if (sets.reads(j)) {
      transcript.observe(ObservedSymbol{invocation, j, c.components[j]});
      observed = &c.components[j];
    }
    Symbol e = adversary.choose_error(WriteContext{invocation, j, u, q, observed, transcript.adversary_view()});
    if (e.empty()) continue;
    if (e.size() != u) throw StrategyViolation("adversary error has wrong component length");
    for (const FieldElement& x : e) {
      if (x.modulus_value() != q.value()) throw StrategyViolation("adversary error over wrong modulus");
    }
    if (!sets.writes(j) && !is_zero(e)) {
      throw StrategyViolation(std::string(adversary.name()) + " wrote to component " + std::to_string(j) +
                              " outside its write set");
    }
    error.components[j] = std::move(e);
  }

  Codeword received = c;
  for (std::size_t j = 0; j < N; ++j) {
    for (std::size_t k = 0; k < u; ++k) received.components[j][k] += error.components[j][k];
  }
  transcript.record_awtp({c, std::move(error), received});
  return received;
}

Bits pd_send(const Bits& bits, Direction direction, Transcript& transcript) {
  PdMessage m{bits, direction, transcript.pd_invocations()};
  transcript.observe(ObservedPd{m.sequence, m.direction, m.bits});
  transcript.record_pd(std::move(m));
  return bits;
}

// ---------------------------------------------------------- serialization

std::string serialize(const Transcript& t) {
  const PrimeModulus& q = t.modulus();
  std::string out;
  {
    std::string h;
    put_u64(h, q.value());
    put_u32(h, t.u());
    put_u32(h, t.sets().N());
    put_u32(h, t.sets().read().size());
    for (std::size_t i : t.sets().read()) put_u32(h, i);
    put_u32(h, t.sets().write().size());
    for (std::size_t i : t.sets().write()) put_u32(h, i);
    put_record(out, 'H', h);
  }
  std::size_t next_awtp = 0;
  std::size_t next_pd = 0;
  for (RoundKind kind : t.rounds()) {
    if (kind == RoundKind::kAwtpAliceToBob) {
      const AwtpInvocation& inv = t.awtp()[next_awtp];
      const std::pair<char, const Codeword*> parts[] = {{'C', &inv.sent}, {'E', &inv.error}, {'Y', &inv.received}};
      for (const auto& [tag, cw] : parts) {
        std::string p;
        put_u32(p, next_awtp);
        p += pack_symbols(cw->components);
        put_record(out, tag, p);
      }
      ++next_awtp;
    } else {
      put_record(out, 'P', encode_pd(t.pd_messages()[next_pd++]));
    }
  }
  for (const ViewEvent& e : t.adversary_view()) put_record(out, 'V', encode_event(e));
  return out;
}

Transcript deserialize_transcript(std::string_view bytes) {
  ByteReader r(bytes);
  if (r.done() || r.u8() != 'H') throw std::invalid_argument("transcript must start with a header record");
  ByteReader h(r.take(r.u32()));
  const PrimeModulus q(h.u64());
  const std::size_t u = h.u32();
  const std::size_t N = h.u32();
  std::set<std::size_t> read;
  std::set<std::size_t> write;
  for (std::size_t k = h.u32(); k > 0; --k) read.insert(h.u32());
  for (std::size_t k = h.u32(); k > 0; --k) write.insert(h.u32());
  if (!h.done()) throw std::invalid_argument("trailing bytes in header record");
  Transcript t(q, u, ReadWriteSets(N, std::move(read), std::move(write)));

  AdversaryView view;
  while (!r.done()) {
    const char tag = static_cast<char>(r.u8());
    const std::string_view payload = r.take(r.u32());
    ByteReader p(payload);
    if (tag == 'C') {
      AwtpInvocation inv;
      const std::size_t nbytes = (N * u * q.element_bits() + 7) / 8;
      const std::size_t index = p.u32();
      inv.sent.components = unpack_symbols(p.take(nbytes), N, u, q);
      for (auto [expect, cw] : {std::pair{'E', &inv.error}, std::pair{'Y', &inv.received}}) {
        if (r.done() || static_cast<char>(r.u8()) != expect) throw std::invalid_argument("incomplete AWTP round");
        ByteReader sub(r.take(r.u32()));
        if (sub.u32() != index) throw std::invalid_argument("AWTP round index mismatch");
        cw->components = unpack_symbols(sub.take(nbytes), N, u, q);
        if (!sub.done()) throw std::invalid_argument("trailing bytes in codeword record");
      }
      if (index != t.awtp_invocations() || !p.done()) throw std::invalid_argument("malformed codeword record");
      t.record_awtp(std::move(inv));
    } else if (tag == 'P') {
      t.record_pd(decode_pd(payload));
    } else if (tag == 'V') {
      view.push_back(decode_event(payload, q));
    } else {
      throw std::invalid_argument(std::string("unknown transcript record '") + tag + "'");
    }
  }
  if (view != t.reconstruct_view()) {
    throw std::invalid_argument("recorded adversary view does not match the transcript");
  }
  for (ViewEvent& e : view) t.observe(std::move(e));
  return t;
}

}  // namespace awtp

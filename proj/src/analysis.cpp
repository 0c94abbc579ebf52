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

#include "awtp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <stdexcept>
#include <string>
#include <thread>

#include "awtp/random.hpp"
#include "awtp/smt.hpp"

namespace awtp {
namespace {

using u128 = unsigned __int128;

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

// ---------------------------------------------------------------- helpers

struct Execution {
  Transcript transcript;
  std::optional<FieldVector> decoded;  // empty when Alice aborts in Rnd 3
  std::size_t verified;
};

Execution execute(const ProtocolConfig& config, const FieldVector& message, AdversaryStrategy& adversary,
                  FieldTape& alice_tape, FieldTape& bob_tape) {
  config.check_sets(adversary.sets());
  Transcript transcript(config.q, config.u, adversary.sets());
  AliceState alice{config, message, {}, {}, {}, {}};
  BobState bob{config, {}, {}, {}, {}, {}};

  const Codeword c = round1_alice(alice, alice_tape);
  const Codeword y = awtp_transmit(c, adversary, transcript, Party::kAlice);
  const Bits d1 = pd_send(round2_bob(bob, y, bob_tape), Direction::kBobToAlice, transcript);
  Bits d2;
  try {
    d2 = round3_alice(alice, d1);
  } catch (const InsufficientEntropy&) {
    const auto verified = static_cast<std::size_t>(std::count(alice.verified.begin(), alice.verified.end(), 1));
    return {std::move(transcript), std::nullopt, verified};
  }
  pd_send(d2, Direction::kAliceToBob, transcript);
  FieldVector decoded = decode_bob(bob, d2);
  const auto verified = static_cast<std::size_t>(std::count(alice.verified.begin(), alice.verified.end(), 1));
  return {std::move(transcript), std::move(decoded), verified};
}

struct Observation {
  std::string view;
  bool success;
};

Observation observe(const ProtocolConfig& config, const Execution& e, const FieldVector& message,
                    Representation representation) {
  if (representation == Representation::kAwtp) {
    return {serialize_view(e.transcript.adversary_view()), e.decoded && *e.decoded == message};
  }
  const WireTranscript wires = awtp_to_smt(e.transcript);
  bool success = false;
  if (e.decoded) success = decode_from_wires(config, wires) == message;
  return {serialize_view(wires.adversary_view()), success};
}

void check_message(const ProtocolConfig& config, const FieldVector& m) {
  require(m.size() == config.ell, "message length differs from ell");
  for (const FieldElement& x : m) {
    if (x.modulus_value() != config.q.value()) throw ModulusMismatch();
  }
}

// Runs fn(begin, end, shard) over `threads` contiguous shards of [0, total).
template <typename Fn>
void shard(std::uint64_t total, unsigned threads, Fn&& fn) {
  const std::uint64_t workers = std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads, total));
  if (workers == 1) {
    fn(std::uint64_t{0}, total, std::size_t{0});
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::uint64_t w = 0; w < workers; ++w) {
    const std::uint64_t begin = total * w / workers;
    const std::uint64_t end = total * (w + 1) / workers;
    pool.emplace_back([&, begin, end, w] {
      try {
        fn(begin, end, static_cast<std::size_t>(w));
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

// --------------------------------------------------------------- measures

Distribution::Distribution(std::map<std::string, double> probabilities) : p_(std::move(probabilities)) {
  double sum = 0.0;
  for (const auto& [key, p] : p_) {
    require(p >= 0.0 && std::isfinite(p), "probabilities must be non-negative");
    sum += p;
  }
  require(std::abs(sum - 1.0) <= 1e-12, "probabilities must sum to 1");
}

Distribution Distribution::from_counts(const std::map<std::string, std::uint64_t>& counts) {
  std::uint64_t total = 0;
  for (const auto& [key, c] : counts) total += c;
  require(total > 0, "empty count table");
  std::map<std::string, double> p;
  for (const auto& [key, c] : counts) p[key] = static_cast<double>(c) / static_cast<double>(total);
  return Distribution(std::move(p));
}

Distribution Distribution::uniform(std::size_t n) {
  require(n > 0, "uniform distribution needs a non-empty support");
  std::map<std::string, double> p;
  for (std::size_t i = 0; i < n; ++i) p[std::to_string(i)] = 1.0 / static_cast<double>(n);
  return Distribution(std::move(p));
}

double Distribution::operator[](const std::string& key) const {
  const auto it = p_.find(key);
  return it == p_.end() ? 0.0 : it->second;
}

double statistical_distance(const Distribution& p, const Distribution& q) {
  double sum = 0.0;
  for (const auto& [key, pk] : p.probabilities()) sum += std::abs(pk - q[key]);
  for (const auto& [key, qk] : q.probabilities()) {
    if (!p.probabilities().contains(key)) sum += qk;
  }
  return std::min(1.0, sum / 2.0);
}

ExactDistance exact_statistical_distance(const std::map<std::string, std::uint64_t>& a,
                                         const std::map<std::string, std::uint64_t>& b) {
  std::uint64_t ta = 0;
  std::uint64_t tb = 0;
  for (const auto& [key, c] : a) ta += c;
  for (const auto& [key, c] : b) tb += c;
  require(ta == tb && ta > 0, "exact distance needs two count tables with the same positive total");
  std::uint64_t numerator = 0;
  for (const auto& [key, ca] : a) {
    const auto it = b.find(key);
    const std::uint64_t cb = it == b.end() ? 0 : it->second;
    numerator += ca > cb ? ca - cb : cb - ca;
  }
  for (const auto& [key, cb] : b) {
    if (!a.contains(key)) numerator += cb;
  }
  return {numerator, 2 * ta};
}

double shannon_entropy(const Distribution& d) {
  double h = 0.0;
  for (const auto& [key, p] : d.probabilities()) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

double min_entropy(const Distribution& d) {
  double max = 0.0;
  for (const auto& [key, p] : d.probabilities()) max = std::max(max, p);
  return -std::log2(max);
}

double binary_entropy(double p) {
  require(p >= 0.0 && p <= 1.0, "binary entropy needs p in [0, 1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

// ----------------------------------------------------------------- bounds

double rate_upper_bound(const BoundsQuery& q) {
  require(q.rho >= 0.0 && q.rho <= 1.0, "rho must lie in [0, 1]");
  require(q.epsilon >= 0.0 && q.epsilon <= 1.0, "epsilon must lie in [0, 1]");
  require(q.pd_bits >= 0.0, "n must be non-negative");
  if (q.epsilon == 0.0) return 1.0 - q.rho;
  require(q.log2_alphabet > 0.0, "|Sigma| must exceed 1");
  const double log_inv = std::log2(1.0 / q.epsilon) / q.log2_alphabet;
  return 1.0 - q.rho + 2.0 * q.epsilon * (1.0 + log_inv) + 2.0 * q.epsilon * q.pd_bits;
}

double min_delta_two_round(double message_space_size) {
  require(message_space_size >= 1.0, "|M| must be at least 1");
  const double target = std::isinf(message_space_size) ? 0.5 : (1.0 - 1.0 / message_space_size) / 2.0;
  if (target <= 0.0) return 0.0;
  double lo = 0.0;
  double hi = 0.5;
  while (hi - lo > 1e-12) {
    const double mid = (lo + hi) / 2.0;
    (binary_entropy(mid) >= target ? hi : lo) = mid;
  }
  return hi;
}

double smt_epsilon_prime(const BoundsQuery& q) {
  require(q.epsilon >= 0.0 && q.epsilon <= 1.0, "epsilon must lie in [0, 1]");
  if (q.epsilon == 0.0) return 0.0;
  require(q.log2_alphabet > 0.0, "|W| must exceed 1");
  const double log_inv = std::log2(1.0 / q.epsilon) / q.log2_alphabet;
  return 2.0 * q.N * q.epsilon * (1.0 + log_inv) + 2.0 * q.epsilon * q.pd_bits * q.N;
}

double smt_tr_lower_bound(const BoundsQuery& q, TrBoundVariant variant) {
  require(q.t >= 0.0 && q.N > q.t, "need N > t >= 0");
  require(q.delta >= 0.0 && q.delta <= 1.0, "delta must lie in [0, 1]");
  double numerator = q.N;
  double denominator = 0.0;
  switch (variant) {
    case TrBoundVariant::kEpsilonSecure:
      denominator = q.N - q.t + smt_epsilon_prime(q) + 2.0 * binary_entropy(q.delta) * q.N +
                    q.delta * q.pd_bits * q.N;
      break;
    case TrBoundVariant::kPerfect:
      denominator = q.N - q.t + 2.0 * binary_entropy(q.delta) * q.N + q.delta * q.pd_bits * q.N;
      break;
    case TrBoundVariant::kGgo10: {
      require(q.log2_messages > 0.0, "m = log2 |M| must be positive");
      const double m = q.log2_messages;
      const double root = std::sqrt(q.delta);
      numerator = q.N * (-std::log2(std::exp2(-m) + 2.0 * q.epsilon) - binary_entropy(root) - 2.0 * m * root);
      denominator = (q.N - q.t) * m;
      break;
    }
  }
  if (!(denominator > 0.0)) throw std::domain_error("transmission-rate bound has a non-positive denominator");
  return numerator / denominator;
}

double table1_rate(SmtPdProtocol protocol, double t, double N, double xi) {
  require(t >= 0.0 && N > t, "need 0 <= t < N");
  require(xi >= 0.0, "xi must be non-negative");
  if (protocol == SmtPdProtocol::kGaray2) return (1.0 - t / N) / 3.0;
  return 1.0 - t / N - xi;
}

Table1Row table1_row(SmtPdProtocol protocol, double t, double N, double xi) {
  const double rate = table1_rate(protocol, t, N, xi);
  const std::string tr = "O(N/(N-t))";
  switch (protocol) {
    case SmtPdProtocol::kShi:
      return {"Shi et al.", "1 SMT + 2 PD", "S_r = S_w, rho <= 1", "log|M|", "1 - t/N - xi", rate, false, tr};
    case SmtPdProtocol::kGaray1:
      return {"Garay et al. Prot. I", "1 SMT + 2 PD", "S_r = S_w, rho <= 1", "log|M|", "1 - t/N - xi", rate,
              false, tr};
    case SmtPdProtocol::kGaray2:
      return {"Garay et al. Prot. II", "2 SMT + 2 PD", "S_r = S_w, rho <= 1", "log log|M|",
              "c(1 - t/N), c <= 1/3", rate, true, tr};
    case SmtPdProtocol::kThisWork:
      return {"This Work", "1 SMT + 2 PD", "rho <= 1", "log|M|", "1 - t/N - xi", rate, false, tr};
  }
  throw std::invalid_argument("unknown protocol");
}

std::vector<Table1Row> table1(double t, double N, double xi) {
  std::vector<Table1Row> rows;
  for (SmtPdProtocol p : {SmtPdProtocol::kShi, SmtPdProtocol::kGaray1, SmtPdProtocol::kGaray2,
                          SmtPdProtocol::kThisWork}) {
    rows.push_back(table1_row(p, t, N, xi));
  }
  return rows;
}

RoundVerdict check_round_shape(const std::vector<RoundKind>& shape, double rho_r, double rho_w) {
  require(rho_r >= 0.0 && rho_r <= 1.0 && rho_w >= 0.0 && rho_w <= 1.0, "rho_r and rho_w must lie in [0, 1]");
  const auto awtp_rounds = std::count(shape.begin(), shape.end(), RoundKind::kAwtpAliceToBob);
  if (awtp_rounds == 0) return {true, "no AWTP round: everything sent is public"};
  if (rho_r + rho_w < 1.0) return {false, "rho_r + rho_w < 1: a single AWTP round can already be secure"};
  if (shape.size() >= 3) return {false, "three or more message rounds are not excluded"};
  if (shape.size() == 1) return {true, "one AWTP round has rate at most 1 - rho_r - rho_w <= 0"};

  using enum RoundKind;
  if (shape[0] == kAwtpAliceToBob && (shape[1] == kPdAliceToBob || shape[1] == kAwtpAliceToBob)) {
    return {true, "two-round entropy bound: 2H(delta) >= 1 - 1/|M| forces delta away from 0"};
  }
  return {true, "Bob decodes from a single AWTP round, so the rate is at most 1 - rho_r - rho_w <= 0"};
}

std::vector<std::vector<RoundKind>> two_round_shapes() {
  using enum RoundKind;
  return {{kAwtpAliceToBob, kPdAliceToBob},
          {kAwtpAliceToBob, kAwtpAliceToBob},
          {kAwtpAliceToBob, kPdBobToAlice},
          {kPdAliceToBob, kAwtpAliceToBob},
          {kPdBobToAlice, kAwtpAliceToBob}};
}

// -------------------------------------------------------------- estimators

unsigned worker_threads(unsigned requested) {
  unsigned n = requested > 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("AWTP_PD_THREADS")) {
    char* end = nullptr;
    const unsigned long cap = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

SecurityReport verify_secrecy_exhaustive(const ProtocolConfig& config, const FieldVector& m1,
                                         const FieldVector& m2, const AdversarySpec& adversary,
                                         const SecrecyOptions& options) {
  check_message(config, m1);
  check_message(config, m2);
  config.check_sets(adversary.sets);

  const std::size_t alice_len = config.u * config.N;
  const std::size_t tape_len = alice_len + config.N;
  const std::uint64_t q = config.q.value();
  u128 total = 1;
  for (std::size_t i = 0; i < tape_len; ++i) {
    total *= q;
    if (total > options.budget) {
      throw BudgetExceeded("enumeration of q^(uN) * q^N = " + std::to_string(q) + "^" + std::to_string(tape_len) +
                           " tape pairs exceeds the budget of " + std::to_string(options.budget));
    }
  }
  const auto count = static_cast<std::uint64_t>(total);
  const unsigned threads = worker_threads(0);

  struct Shard {
    std::map<std::string, std::uint64_t> views1, views2;
    std::uint64_t failures = 0;
  };
  std::vector<Shard> shards(std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads, count)));

  shard(count, threads, [&](std::uint64_t begin, std::uint64_t end, std::size_t w) {
    Shard& out = shards[w];
    std::vector<std::uint64_t> digits(tape_len);
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      std::uint64_t rest = idx;
      for (std::size_t i = 0; i < tape_len; ++i) {
        digits[i] = rest % q;
        rest /= q;
      }
      const std::vector<std::uint64_t> alice_digits(digits.begin(), digits.begin() + alice_len);
      const std::vector<std::uint64_t> bob_digits(digits.begin() + alice_len, digits.end());
      for (int which = 0; which < 2; ++which) {
        const FieldVector& m = which == 0 ? m1 : m2;
        FixedTape alice(alice_digits);
        FixedTape bob(bob_digits);
        const auto strategy = make_adversary(adversary);
        const Execution e = execute(config, m, *strategy, alice, bob);
        Observation o = observe(config, e, m, options.representation);
        (which == 0 ? out.views1 : out.views2)[std::move(o.view)] += 1;
        if (which == 0 && !o.success) ++out.failures;
      }
    }
  });

  std::map<std::string, std::uint64_t> views1;
  std::map<std::string, std::uint64_t> views2;
  SecurityReport report;
  for (Shard& s : shards) {
    for (auto& [k, c] : s.views1) views1[k] += c;
    for (auto& [k, c] : s.views2) views2[k] += c;
    report.failures += s.failures;
  }
  report.exact = true;
  report.samples = count;
  report.sd_exact = exact_statistical_distance(views1, views2);
  report.measured_sd = report.sd_exact->value();
  report.bound_sd = 0.0;
  report.measured_failure_rate = static_cast<double>(report.failures) / static_cast<double>(count);
  report.bound_failure = config.failure_bound();
  report.margin = 0.0;
  report.secrecy_condition = config.secrecy_condition_holds();
  return report;
}

namespace {

struct TrialSetup {
  FieldVector message;
  SeededTape alice;
  SeededTape bob;
  std::unique_ptr<AdversaryStrategy> adversary;
};

TrialSetup setup_trial(const ProtocolConfig& config, const AdversarySpec& adversary, std::uint64_t seed,
                       std::uint64_t index) {
  SeededTape message_tape(derive_seed(seed, 3, index));
  FieldVector message;
  message.reserve(config.ell);
  for (std::size_t i = 0; i < config.ell; ++i) message.push_back(message_tape.next(config.q));
  AdversarySpec spec = adversary;
  spec.seed = mix64(derive_seed(seed, 2, index) ^ adversary.seed);
  return {std::move(message), SeededTape(derive_seed(seed, 0, index)), SeededTape(derive_seed(seed, 1, index)),
          make_adversary(spec)};
}

}  // namespace

TrialOutcome run_trial(const ProtocolConfig& config, const AdversarySpec& adversary, std::uint64_t seed,
                       std::uint64_t index, Representation representation) {
  TrialSetup t = setup_trial(config, adversary, seed, index);
  const Execution e = execute(config, t.message, *t.adversary, t.alice, t.bob);
  const Observation o = observe(config, e, t.message, representation);
  return {index, o.success, e.verified};
}

Transcript trial_transcript(const ProtocolConfig& config, const AdversarySpec& adversary, std::uint64_t seed,
                            std::uint64_t index) {
  TrialSetup t = setup_trial(config, adversary, seed, index);
  return execute(config, t.message, *t.adversary, t.alice, t.bob).transcript;
}

std::vector<TrialOutcome> run_trials(const ProtocolConfig& config, const AdversarySpec& adversary,
                                     std::uint64_t trials, std::uint64_t seed, const ReliabilityOptions& options) {
  require(trials >= 1, "need at least one trial");
  config.check_sets(adversary.sets);
  std::vector<TrialOutcome> outcomes(trials);
  shard(trials, worker_threads(options.threads), [&](std::uint64_t begin, std::uint64_t end, std::size_t) {
    for (std::uint64_t i = begin; i < end; ++i) outcomes[i] = run_trial(config, adversary, seed, i, options.representation);
  });
  return outcomes;
}

SecurityReport summarize_trials(const ProtocolConfig& config, const std::vector<TrialOutcome>& outcomes) {
  require(!outcomes.empty(), "need at least one trial");
  SecurityReport report;
  report.exact = false;
  report.samples = outcomes.size();
  for (const TrialOutcome& o : outcomes) report.failures += o.success ? 0 : 1;
  const auto trials = static_cast<double>(outcomes.size());
  report.measured_failure_rate = static_cast<double>(report.failures) / trials;
  report.bound_failure = config.failure_bound();
  const double p = std::clamp(report.bound_failure, 0.0, 1.0);
  report.margin = 3.0 * std::sqrt(p * (1.0 - p) / trials);
  report.secrecy_condition = config.secrecy_condition_holds();
  return report;
}

SecurityReport estimate_reliability(const ProtocolConfig& config, const AdversarySpec& adversary,
                                    std::uint64_t trials, std::uint64_t seed, const ReliabilityOptions& options) {
  return summarize_trials(config, run_trials(config, adversary, trials, seed, options));
}

}  // namespace awtp

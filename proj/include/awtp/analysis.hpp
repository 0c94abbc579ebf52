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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "awtp/adversary.hpp"
#include "awtp/channels.hpp"
#include "awtp/protocol.hpp"

namespace awtp {

// --------------------------------------------------------------- measures

/// Finite distribution keyed by an opaque byte string (e.g. a serialized view).
class Distribution {
 public:
  /// Throws unless probabilities are non-negative and sum to 1 within 1e-12.
  explicit Distribution(std::map<std::string, double> probabilities);
  static Distribution from_counts(const std::map<std::string, std::uint64_t>& counts);
  static Distribution uniform(std::size_t n);

  const std::map<std::string, double>& probabilities() const { return p_; }
  double operator[](const std::string& key) const;

 private:
  std::map<std::string, double> p_;
};

/// 1/2 * sum_x |P(x) - Q(x)| over the union of the supports.
double statistical_distance(const Distribution& p, const Distribution& q);

/// Exact statistical distance between two count tables of equal total T,
/// returned as numerator / (2T).
struct ExactDistance {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 1;
  double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }
  friend bool operator==(const ExactDistance&, const ExactDistance&) = default;
};
ExactDistance exact_statistical_distance(const std::map<std::string, std::uint64_t>& a,
                                         const std::map<std::string, std::uint64_t>& b);

double shannon_entropy(const Distribution& d);
double min_entropy(const Distribution& d);
/// H(p) = -p log p - (1-p) log(1-p), with H(0) = H(1) = 0.
double binary_entropy(double p);

// ----------------------------------------------------------------- bounds

struct BoundsQuery {
  double rho = 0.0;
  double epsilon = 0.0;
  double delta = 0.0;
  double pd_bits = 0.0;          // n, total bits over PD
  double log2_alphabet = 1.0;    // log2 |Sigma| (or log2 |W| for wires)
  double N = 0.0;                // wires
  double t = 0.0;                // corrupted wires
  double log2_messages = 1.0;    // m = log2 |M|
};

/// Upper bound on the epsilon-secrecy rate:
/// 1 - rho + 2 eps (1 + log_|Sigma|(1/eps)) + 2 eps n; eps = 0 is the limit 1 - rho.
double rate_upper_bound(const BoundsQuery& q);

/// Smallest delta in [0, 1/2] with 2 H(delta) >= 1 - 1/|M| (bisection to
/// 1e-12). `message_space_size` may be +infinity.
double min_delta_two_round(double message_space_size);

enum class TrBoundVariant { kEpsilonSecure, kPerfect, kGgo10 };

/// Lower bounds on the transmission rate of one-way symmetric SMT-PD:
///  kEpsilonSecure: N / (N - t + eps' + 2 H(delta) N + delta n N),
///                  eps' = 2 N eps (1 + log_|W|(1/eps)) + 2 eps n N;
///  kPerfect:       N / (N - t + 2 H(delta) N + delta n N);
///  kGgo10:         N (-log(1/|M| + 2 eps) - H(sqrt delta) - 2 m sqrt delta) / ((N - t) m).
double smt_tr_lower_bound(const BoundsQuery& q, TrBoundVariant variant);

/// The eps' correction term of the epsilon-secure bound.
double smt_epsilon_prime(const BoundsQuery& q);

enum class SmtPdProtocol { kShi, kGaray1, kGaray2, kThisWork };

struct Table1Row {
  std::string name;
  std::string message_rounds;
  std::string read_write_sets;
  std::string pd_communication;
  std::string info_rate_formula;
  double info_rate;
  /// Garay II's rate is c(1 - t/N) with c <= 1/3; info_rate holds the c = 1/3 value.
  bool info_rate_is_upper_bound;
  std::string transmission_rate;
};

double table1_rate(SmtPdProtocol protocol, double t, double N, double xi);
Table1Row table1_row(SmtPdProtocol protocol, double t, double N, double xi);
std::vector<Table1Row> table1(double t, double N, double xi);

/// Whether a message-round shape is ruled out for perfect secrecy with the
/// given read/write fractions.
struct RoundVerdict {
  bool ruled_out;
  std::string reason;
};
RoundVerdict check_round_shape(const std::vector<RoundKind>& shape, double rho_r, double rho_w);

/// The five two-round shapes that contain an AWTP round.
std::vector<std::vector<RoundKind>> two_round_shapes();

// -------------------------------------------------------------- estimators

struct SecurityReport {
  bool exact = false;
  std::uint64_t samples = 0;  // enumerated tape pairs, or Monte Carlo trials

  std::optional<double> measured_sd;
  std::optional<ExactDistance> sd_exact;
  double bound_sd = 0.0;

  std::uint64_t failures = 0;
  double measured_failure_rate = 0.0;
  double bound_failure = 0.0;
  /// 3 sqrt(p(1-p)/trials) with p = bound_failure (Monte Carlo only).
  double margin = 0.0;

  bool secrecy_condition = false;

  bool within_failure_bound() const { return measured_failure_rate <= bound_failure + margin; }
  friend bool operator==(const SecurityReport&, const SecurityReport&) = default;
};

/// How adversary views and decoder outputs are recomputed: straight from the
/// AWTP transcript, or after converting it to the SMT wire representation.
enum class Representation { kAwtp, kSmt };

class BudgetExceeded : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SecrecyOptions {
  std::uint64_t budget = 10'000'000;
  Representation representation = Representation::kAwtp;
};

/// Enumerates every Alice tape (q^{uN}) and Bob tape (q^N) with the
/// adversary coins fixed, computes the exact adversary-view distribution for
/// m1 and m2 and returns their exact statistical distance. The failure rate
/// reported is the exact one for m1.
SecurityReport verify_secrecy_exhaustive(const ProtocolConfig& config, const FieldVector& m1,
                                         const FieldVector& m2, const AdversarySpec& adversary,
                                         const SecrecyOptions& options = {});

struct ReliabilityOptions {
  Representation representation = Representation::kAwtp;
  /// 0 = use AWTP_PD_THREADS or the hardware concurrency.
  unsigned threads = 0;
};

/// Monte Carlo decoding-failure estimate over `trials` executions with
/// uniformly random messages and per-trial seeds derived from `seed`.
SecurityReport estimate_reliability(const ProtocolConfig& config, const AdversarySpec& adversary,
                                    std::uint64_t trials, std::uint64_t seed,
                                    const ReliabilityOptions& options = {});

/// Per-trial outcome, reproducible from (config, adversary, seed, index) alone.
struct TrialOutcome {
  std::uint64_t index;
  bool success;
  std::size_t verified;
};
TrialOutcome run_trial(const ProtocolConfig& config, const AdversarySpec& adversary, std::uint64_t seed,
                       std::uint64_t index, Representation representation = Representation::kAwtp);

/// Every trial of estimate_reliability, in index order.
std::vector<TrialOutcome> run_trials(const ProtocolConfig& config, const AdversarySpec& adversary,
                                     std::uint64_t trials, std::uint64_t seed,
                                     const ReliabilityOptions& options = {});
SecurityReport summarize_trials(const ProtocolConfig& config, const std::vector<TrialOutcome>& outcomes);

/// Transcript of trial `index`, replayed from its derived seeds.
Transcript trial_transcript(const ProtocolConfig& config, const AdversarySpec& adversary, std::uint64_t seed,
                            std::uint64_t index);

unsigned worker_threads(unsigned requested);

}  // namespace awtp

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

#include "awtp/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "awtp/analysis.hpp"
#include "awtp/extractor.hpp"
#include "awtp/hashfam.hpp"
#include "awtp/protocol.hpp"
#include "awtp/smt.hpp"
#include "json.hpp"

namespace awtp::cli {
namespace {

using json = nlohmann::ordered_json;

constexpr const char* kSchema = "awtp-pd v1";

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ------------------------------------------------------------------ output

class Table {
 public:
  void add(json row) { rows_.push_back(std::move(row)); }
  const std::vector<json>& rows() const { return rows_; }
  std::vector<json>& rows() { return rows_; }

  std::string render(const std::string& format) const {
    if (format == "json") {
      json doc{{"schema", kSchema}, {"rows", rows_}};
      return doc.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "# " << kSchema << "\n";
    if (rows_.empty()) return os.str();
    bool first = true;
    for (const auto& [key, value] : rows_.front().items()) {
      os << (first ? "" : ",") << key;
      first = false;
    }
    os << "\n";
    for (const json& row : rows_) {
      first = true;
      for (const auto& [key, value] : row.items()) {
        os << (first ? "" : ",") << cell(value);
        first = false;
      }
      os << "\n";
    }
    return os.str();
  }

 private:
  static std::string cell(const json& v) {
    if (v.is_null()) return "";
    if (!v.is_string()) return v.dump();
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
    return quoted + "\"";
  }

  std::vector<json> rows_;
};

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open '" + path + "' for writing");
  f << bytes;
  if (!f) throw ConfigError("failed to write '" + path + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

void emit(const Table& table, const std::string& format, const std::string& path, std::ostream& out) {
  const std::string text = table.render(format);
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_file(path, text);
  }
}

// ----------------------------------------------------------------- parsing

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::uint64_t parse_u64(const std::string& s, const std::string& what) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw ConfigError(what + ": not a non-negative integer: '" + s + "'");
  }
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw ConfigError(what + ": out of range: '" + s + "'");
  }
}

std::vector<std::uint64_t> parse_list(const std::string& text, const std::string& what) {
  std::vector<std::uint64_t> out;
  if (text.empty() || text == "none") return out;
  for (const std::string& part : split(text, ',')) out.push_back(parse_u64(part, what));
  return out;
}

Rational parse_rational(const std::string& text, const std::string& what) {
  try {
    const Rational r = Rational::parse(text);
    if (!r.in_unit_interval()) throw ConfigError(what + " must lie in [0, 1], got " + text);
    return r;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(what + ": " + e.what());
  }
}

std::string set_str(const std::set<std::size_t>& s) {
  std::string out;
  for (std::size_t i : s) out += (out.empty() ? "" : ";") + std::to_string(i);
  return out.empty() ? "none" : out;
}

std::string vec_str(const FieldVector& v) {
  std::string out;
  for (const FieldElement& x : v) out += (out.empty() ? "" : ";") + std::to_string(x.value());
  return out;
}

// Expands `--config file.json` into flags placed ahead of the explicit ones,
// so flags on the command line take precedence.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  std::vector<std::string> from_file;
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw ConfigError("--config needs a file");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      out.push_back(args[i]);
      continue;
    }
    json doc;
    try {
      doc = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
      throw ConfigError("config file '" + path + "': " + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config file '" + path + "' must hold a JSON object");
    for (const auto& [key, value] : doc.items()) {
      std::string flag = key;
      std::replace(flag.begin(), flag.end(), '_', '-');
      flag = "--" + flag;
      if (value.is_boolean()) {
        if (value.get<bool>()) from_file.push_back(flag);
      } else if (value.is_array()) {
        std::string joined;
        for (const json& v : value) joined += (joined.empty() ? "" : ",") + (v.is_string() ? v.get<std::string>() : v.dump());
        from_file.insert(from_file.end(), {flag, joined});
      } else if (value.is_string()) {
        from_file.insert(from_file.end(), {flag, value.get<std::string>()});
      } else if (value.is_number()) {
        from_file.insert(from_file.end(), {flag, value.dump()});
      } else {
        throw ConfigError("config key '" + key + "' has an unsupported value");
      }
    }
  }
  if (from_file.empty()) return out;
  // The subcommand name stays first.
  std::vector<std::string> merged;
  if (!out.empty()) merged.push_back(out.front());
  merged.insert(merged.end(), from_file.begin(), from_file.end());
  if (!out.empty()) merged.insert(merged.end(), out.begin() + 1, out.end());
  return merged;
}

// ---------------------------------------------------------- protocol setup

struct ProtocolOptions {
  std::size_t N = 4;
  std::size_t u = 2;
  std::string rho_r;
  std::string rho_w;
  std::string rho;
  std::uint64_t q = 0;
  std::size_t ell = 0;
  bool restricted = false;
  std::string adversary = "passive";
  std::string read_set = "random";
  std::string write_set = "random";
  std::string representation = "awtp";
  std::uint64_t seed = 0;

  void attach(CLI::App& app) {
    app.add_option("--N", N, "Codeword length (components / wires)")->check(CLI::PositiveNumber);
    app.add_option("--u", u, "Field elements per component")->check(CLI::Range(2, 1 << 20));
    app.add_option("--rho-r", rho_r, "Read fraction, p/q or decimal");
    app.add_option("--rho-w", rho_w, "Write fraction, p/q or decimal");
    app.add_option("--rho", rho, "Budget for |S_r u S_w|/N (default min(1, rho_r + rho_w))");
    app.add_option("--q", q, "Prime modulus (default: smallest prime > 2uN^2)");
    app.add_option("--ell", ell, "Message length (default floor((u-1)(1-rho)N))");
    app.add_flag("--restricted", restricted, "S_r = S_w");
    app.add_option("--adversary", adversary, "passive | adv1 | substitution");
    app.add_option("--read-set", read_set, "Indices (e.g. 0,2), none, all or random");
    app.add_option("--write-set", write_set, "Indices (e.g. 0,2), none, all or random");
    app.add_option("--representation", representation, "awtp | smt")->check(CLI::IsMember({"awtp", "smt"}));
    app.add_option("--seed", seed, "Master seed");
  }

  bool is_restricted() const { return restricted || rho_r.empty() || rho_w.empty(); }

  ProtocolConfig config() const {
    if (rho_r.empty() && rho_w.empty()) throw ConfigError("need --rho-r and/or --rho-w");
    const Rational rr = parse_rational(rho_r.empty() ? rho_w : rho_r, "rho_r");
    const Rational rw = parse_rational(rho_w.empty() ? rho_r : rho_w, "rho_w");
    if (is_restricted() && !(rr == rw)) throw ConfigError("restricted channels need rho_r = rho_w");
    ProtocolConfig::Overrides o;
    if (!rho.empty()) {
      o.rho = parse_rational(rho, "rho");
    } else if (is_restricted()) {
      o.rho = rr;
    }
    if (q != 0) o.q = q;
    if (ell != 0) o.ell = ell;
    try {
      return ProtocolConfig::make(N, u, rr, rw, o);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }

  std::set<std::size_t> explicit_set(const std::string& text, const std::string& what) const {
    std::set<std::size_t> s;
    if (text == "all") {
      for (std::size_t i = 0; i < N; ++i) s.insert(i);
      return s;
    }
    for (std::uint64_t i : parse_list(text, what)) {
      if (i >= N) throw ConfigError(what + ": index " + std::to_string(i) + " out of range for N=" + std::to_string(N));
      s.insert(static_cast<std::size_t>(i));
    }
    return s;
  }

  ReadWriteSets sets(const ProtocolConfig& cfg) const {
    std::mt19937_64 rng(derive_seed(seed, 4, 0));
    const bool rr = read_set == "random";
    const bool rw = write_set == "random";
    std::set<std::size_t> read = rr ? std::set<std::size_t>{} : explicit_set(read_set, "read set");
    std::set<std::size_t> write = rw ? std::set<std::size_t>{} : explicit_set(write_set, "write set");
    if (is_restricted()) {
      if (rr && rw) {
        const ReadWriteSets s = ReadWriteSets::random(N, cfg.read_budget(), cfg.read_budget(), true, rng);
        read = s.read();
        write = s.write();
      } else if (rr) {
        read = write;
      } else if (rw) {
        write = read;
      }
      if (read != write) throw ConfigError("restricted channels need S_r = S_w");
    } else if (rr || rw) {
      // Random read set first, then a write set reusing read indices where
      // the touch budget demands it.
      if (rr) read = ReadWriteSets::random(N, cfg.read_budget(), 0, false, rng).read();
      if (rw) {
        std::vector<std::size_t> outside;
        std::vector<std::size_t> inside(read.begin(), read.end());
        for (std::size_t i = 0; i < N; ++i) {
          if (!read.contains(i)) outside.push_back(i);
        }
        const std::size_t want = cfg.write_budget();
        const std::size_t room = cfg.touch_budget() > read.size() ? cfg.touch_budget() - read.size() : 0;
        const std::size_t fresh = std::min({want, room, outside.size()});
        if (want - fresh > inside.size()) throw ConfigError("cannot fit a random write set in the rho budget");
        for (std::size_t k = 0; k < fresh; ++k) {
          std::swap(outside[k], outside[k + uniform_below(rng, outside.size() - k)]);
          write.insert(outside[k]);
        }
        for (std::size_t k = 0; k < want - fresh; ++k) {
          std::swap(inside[k], inside[k + uniform_below(rng, inside.size() - k)]);
          write.insert(inside[k]);
        }
      }
    }
    ReadWriteSets sets(N, read, write);
    try {
      cfg.check_sets(sets);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    return sets;
  }

  AdversarySpec spec(const ProtocolConfig& cfg) const {
    try {
      return {parse_adversary_kind(adversary), sets(cfg), seed};
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }

  Representation repr() const { return representation == "smt" ? Representation::kSmt : Representation::kAwtp; }
};

void echo_config(json& row, const ProtocolConfig& cfg, const AdversarySpec& spec, const ProtocolOptions& o) {
  row["N"] = cfg.N;
  row["u"] = cfg.u;
  row["q"] = cfg.q.value();
  row["rho_r"] = cfg.rho_r.str();
  row["rho_w"] = cfg.rho_w.str();
  row["rho"] = cfg.rho.str();
  row["ell"] = cfg.ell;
  row["adversary"] = std::string(to_string(spec.kind));
  row["read_set"] = set_str(spec.sets.read());
  row["write_set"] = set_str(spec.sets.write());
  row["representation"] = o.representation;
  row["seed"] = o.seed;
}

FieldVector parse_message(const std::string& text, const ProtocolConfig& cfg, const std::string& what) {
  const auto values = parse_list(text, what);
  if (values.size() != cfg.ell) {
    throw ConfigError(what + " needs " + std::to_string(cfg.ell) + " elements, got " + std::to_string(values.size()));
  }
  FieldVector m;
  for (std::uint64_t v : values) {
    if (v >= cfg.q.value()) throw ConfigError(what + ": element " + std::to_string(v) + " is not below q");
    m.emplace_back(v, cfg.q);
  }
  return m;
}

// ---------------------------------------------------------------- commands

struct OutputOptions {
  std::string out;
  std::string format = "csv";
  bool timing = false;

  void attach(CLI::App& app) {
    app.add_option("--out,-o", out, "Output file (default stdout)");
    app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    app.add_flag("--timing", timing, "Add a wall_time_s column (breaks byte-identical reruns)");
  }
};

struct RunCommand {
  ProtocolOptions p;
  OutputOptions o;
  std::uint64_t trials = 1000;
  unsigned threads = 0;
  std::string trial_log;
  std::string transcript_out;

  void attach(CLI::App& app) {
    p.attach(app);
    o.attach(app);
    app.add_option("--trials", trials, "Number of executions")->check(CLI::PositiveNumber);
    app.add_option("--threads", threads, "Worker threads (default AWTP_PD_THREADS or all cores)");
    app.add_option("--trial-log", trial_log, "Per-trial CSV log");
    app.add_option("--transcript-out", transcript_out, "Binary transcript of trial 0");
  }

  int execute(std::ostream& out) const {
    const auto start = std::chrono::steady_clock::now();
    const ProtocolConfig cfg = p.config();
    const AdversarySpec spec = p.spec(cfg);
    const std::vector<TrialOutcome> outcomes = run_trials(cfg, spec, trials, p.seed, {p.repr(), threads});
    const SecurityReport report = summarize_trials(cfg, outcomes);
    const Transcript first = trial_transcript(cfg, spec, p.seed, 0);

    const bool passive_clean = spec.kind != AdversaryKind::kPassive || report.failures == 0;
    const bool ok = report.within_failure_bound() && passive_clean;

    json row;
    echo_config(row, cfg, spec, p);
    row["trials"] = trials;
    row["failures"] = report.failures;
    row["measured_sd"] = nullptr;
    row["measured_failure_rate"] = report.measured_failure_rate;
    row["bound_failure"] = report.bound_failure;
    row["margin"] = report.margin;
    row["rate"] = cfg.rate();
    row["rate_upper_bound"] = rate_upper_bound({.rho = cfg.rho.to_double()});
    row["rc_m"] = first.message_rounds();
    row["secrecy_condition"] = cfg.secrecy_condition_holds();
    row["prime_constraint"] = cfg.meets_prime_constraint();
    row["within_bound"] = ok;
    if (o.timing) {
      row["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    Table table;
    table.add(std::move(row));
    emit(table, o.format, o.out, out);

    if (!trial_log.empty()) {
      std::ostringstream log;
      log << "# " << kSchema << "\nindex,success,verified\n";
      for (const TrialOutcome& t : outcomes) log << t.index << ',' << (t.success ? 1 : 0) << ',' << t.verified << '\n';
      write_file(trial_log, log.str());
    }
    if (!transcript_out.empty()) write_file(transcript_out, serialize(first));
    return ok ? kOk : kBoundViolated;
  }
};

struct SecrecyCommand {
  ProtocolOptions p;
  OutputOptions o;
  std::string m1;
  std::string m2;
  bool all_pairs = false;
  std::uint64_t budget = 10'000'000;

  void attach(CLI::App& app) {
    p.attach(app);
    o.attach(app);
    app.add_option("--m1", m1, "First message, comma separated (default all zeros)");
    app.add_option("--m2", m2, "Second message (default all ones)");
    app.add_flag("--all-pairs", all_pairs, "Every unordered pair of distinct messages");
    app.add_option("--budget", budget, "Maximum number of enumerated tape pairs");
  }

  int execute(std::ostream& out) const {
    const auto start = std::chrono::steady_clock::now();
    const ProtocolConfig cfg = p.config();
    const AdversarySpec spec = p.spec(cfg);

    std::vector<std::pair<FieldVector, FieldVector>> pairs;
    if (all_pairs) {
      std::uint64_t count = 1;
      for (std::size_t i = 0; i < cfg.ell; ++i) {
        count *= cfg.q.value();
        if (count > 64) throw ConfigError("--all-pairs supports at most 64 messages");
      }
      std::vector<FieldVector> messages;
      for (std::uint64_t idx = 0; idx < count; ++idx) {
        FieldVector m;
        std::uint64_t rest = idx;
        for (std::size_t i = 0; i < cfg.ell; ++i) {
          m.emplace_back(rest % cfg.q.value(), cfg.q);
          rest /= cfg.q.value();
        }
        messages.push_back(std::move(m));
      }
      for (std::size_t a = 0; a < messages.size(); ++a) {
        for (std::size_t b = a + 1; b < messages.size(); ++b) pairs.emplace_back(messages[a], messages[b]);
      }
    } else {
      const FieldVector zeros(cfg.ell, FieldElement::zero(cfg.q));
      const FieldVector ones(cfg.ell, FieldElement::one(cfg.q));
      pairs.emplace_back(m1.empty() ? zeros : parse_message(m1, cfg, "m1"),
                         m2.empty() ? ones : parse_message(m2, cfg, "m2"));
    }

    Table table;
    int code = kOk;
    for (const auto& [a, b] : pairs) {
      const SecurityReport r = verify_secrecy_exhaustive(cfg, a, b, spec, {budget, p.repr()});
      const bool leak = r.sd_exact->numerator > 0;
      std::string status;
      if (cfg.secrecy_condition_holds()) {
        status = leak ? "violation" : "secure";
        if (leak) code = kBoundViolated;
      } else {
        status = leak ? "expected-leak" : "no-leak-observed";
      }
      json row;
      echo_config(row, cfg, spec, p);
      row["m1"] = vec_str(a);
      row["m2"] = vec_str(b);
      row["samples"] = r.samples;
      row["sd_numerator"] = r.sd_exact->numerator;
      row["sd_denominator"] = r.sd_exact->denominator;
      row["measured_sd"] = r.sd_exact->value();
      row["bound_sd"] = r.bound_sd;
      row["failures"] = r.failures;
      row["measured_failure_rate"] = r.measured_failure_rate;
      row["bound_failure"] = r.bound_failure;
      row["secrecy_condition"] = r.secrecy_condition;
      row["status"] = status;
      table.add(std::move(row));
    }
    if (o.timing) {
      const double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      for (json& row : table.rows()) row["wall_time_s"] = t;
    }
    emit(table, o.format, o.out, out);
    return code;
  }
};

struct BoundsCommand {
  OutputOptions o;
  std::optional<double> rho;
  double epsilon = 0.0;
  double delta = 0.0;
  double n = 0.0;
  std::optional<double> log2_sigma;
  std::optional<double> N;
  std::optional<double> t;
  std::string M;
  std::optional<double> log2_M;
  double xi = 0.0;
  bool table1_mode = false;
  bool two_round = false;
  std::string tr;

  void attach(CLI::App& app) {
    o.attach(app);
    app.add_option("--rho", rho, "Touched fraction for the rate bound");
    app.add_option("--epsilon", epsilon, "Secrecy parameter");
    app.add_option("--delta", delta, "Reliability parameter");
    app.add_option("--n", n, "Total PD bits");
    app.add_option("--log2-sigma", log2_sigma, "log2 of the alphabet (|Sigma|, or |W| for wires)");
    app.add_option("--N", N, "Wires");
    app.add_option("--t", t, "Corrupted wires");
    app.add_option("--M", M, "Message-space size |M| (or inf)");
    app.add_option("--log2-M", log2_M, "m = log2 |M|");
    app.add_option("--xi", xi, "Rate slack for Table 1");
    app.add_flag("--table1", table1_mode, "Emit the SMT-PD comparison table");
    app.add_flag("--two-round", two_round, "Smallest delta allowed for two-round protocols");
    app.add_option("--tr", tr, "Transmission-rate bound: perf | epsec | ggo10 | all");
  }

  double message_space() const {
    if (M == "inf") return std::numeric_limits<double>::infinity();
    try {
      std::size_t used = 0;
      const double v = std::stod(M, &used);
      if (used != M.size()) throw std::invalid_argument("trailing characters");
      return v;
    } catch (const std::exception&) {
      throw ConfigError("--M: not a number: '" + M + "'");
    }
  }

  int execute(std::ostream& out) const {
    Table table;
    if (table1_mode) {
      if (rho || two_round || !tr.empty()) throw ConfigError("--table1 cannot be combined with other queries");
      if (!N || !t) throw ConfigError("--table1 needs --N and --t");
      try {
        for (const Table1Row& r : table1(*t, *N, xi)) {
          table.add(json{{"protocol", r.name},
                         {"message_rounds", r.message_rounds},
                         {"read_write_sets", r.read_write_sets},
                         {"pd_communication", r.pd_communication},
                         {"info_rate_formula", r.info_rate_formula},
                         {"info_rate", r.info_rate},
                         {"info_rate_is_upper_bound", r.info_rate_is_upper_bound},
                         {"transmission_rate", r.transmission_rate}});
        }
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
      emit(table, o.format, o.out, out);
      return kOk;
    }

    BoundsQuery q;
    q.epsilon = epsilon;
    q.delta = delta;
    q.pd_bits = n;
    q.log2_alphabet = log2_sigma.value_or(1.0);
    auto add = [&](const std::string& quantity, double value, const std::string& formula) {
      table.add(json{{"quantity", quantity}, {"value", value}, {"formula", formula}});
    };
    try {
      if (rho) {
        q.rho = *rho;
        add("rate_upper_bound", rate_upper_bound(q), "1 - rho + 2 eps (1 + log_|Sigma|(1/eps)) + 2 eps n");
      }
      if (two_round) {
        if (M.empty()) throw ConfigError("--two-round needs --M");
        add("min_delta_two_round", min_delta_two_round(message_space()), "smallest delta with 2H(delta) >= 1 - 1/|M|");
      }
      if (!tr.empty()) {
        if (!N || !t) throw ConfigError("--tr needs --N and --t");
        q.N = *N;
        q.t = *t;
        if (log2_M) {
          q.log2_messages = *log2_M;
        } else if (!M.empty()) {
          q.log2_messages = std::log2(message_space());
        }
        const bool all = tr == "all";
        if (!all && tr != "perf" && tr != "epsec" && tr != "ggo10") throw ConfigError("--tr: unknown variant '" + tr + "'");
        if (all || tr == "perf") {
          add("tr_lower_bound_perf", smt_tr_lower_bound(q, TrBoundVariant::kPerfect),
              "N / (N - t + 2H(delta) N + delta n N)");
        }
        if (all || tr == "epsec") {
          add("epsilon_prime", smt_epsilon_prime(q), "2 N eps (1 + log_|W|(1/eps)) + 2 eps n N");
          add("tr_lower_bound_epsec", smt_tr_lower_bound(q, TrBoundVariant::kEpsilonSecure),
              "N / (N - t + eps' + 2H(delta) N + delta n N)");
        }
        if (all || tr == "ggo10") {
          add("tr_lower_bound_ggo10", smt_tr_lower_bound(q, TrBoundVariant::kGgo10),
              "N (-log(1/|M| + 2 eps) - H(sqrt delta) - 2 m sqrt delta) / ((N - t) m)");
        }
      }
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    } catch (const std::domain_error& e) {
      throw ConfigError(e.what());
    }
    if (table.rows().empty()) throw ConfigError("nothing to compute: pass --rho, --two-round, --tr or --table1");
    emit(table, o.format, o.out, out);
    return kOk;
  }
};

struct ExportSmtCommand {
  OutputOptions o;
  std::string in;
  std::string wire_out;
  bool reverse = false;

  void attach(CLI::App& app) {
    o.attach(app);
    app.add_option("--in", in, "Input transcript (AWTP, or wire transcript with --reverse)")->required();
    app.add_option("--wire-out", wire_out, "Converted transcript file")->required();
    app.add_flag("--reverse", reverse, "Convert a wire transcript back to AWTP");
  }

  int execute(std::ostream& out) const {
    const std::string bytes = read_file(in);
    std::string converted;
    bool round_trip = false;
    std::optional<WireTranscript> wires;
    try {
      if (!reverse) {
        const Transcript t = deserialize_transcript(bytes);
        wires = awtp_to_smt(t);
        converted = serialize(*wires);
        round_trip = serialize(smt_to_awtp(deserialize_wire_transcript(converted))) == bytes;
      } else {
        wires = deserialize_wire_transcript(bytes);
        converted = serialize(smt_to_awtp(*wires));
        round_trip = serialize(awtp_to_smt(deserialize_transcript(converted))) == bytes;
      }
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    write_file(wire_out, converted);

    json row;
    row["direction"] = reverse ? "smt-to-awtp" : "awtp-to-smt";
    row["N"] = wires->N();
    row["t"] = wires->t();
    row["u"] = wires->u();
    row["q"] = wires->modulus().value();
    row["corrupted"] = set_str(wires->corrupted());
    row["rc_m"] = wires->message_rounds();
    row["wire_rounds"] = wires->wire_rounds();
    row["pd_messages"] = wires->pd_messages().size();
    const auto& pd = wires->pd_messages();
    const std::size_t width = wires->modulus().element_bits();
    if (pd.size() == 2 && pd[1].bits.size() > wires->N() && (pd[1].bits.size() - wires->N()) % width == 0) {
      const std::size_t ell = (pd[1].bits.size() - wires->N()) / width;
      const double message_bits = static_cast<double>(ell) * std::log2(static_cast<double>(wires->modulus().value()));
      row["ell"] = ell;
      row["transmission_rate"] = smt_transmission_rate(*wires, message_bits);
    } else {
      row["ell"] = nullptr;
      row["transmission_rate"] = nullptr;
    }
    row["round_trip"] = round_trip;
    Table table;
    table.add(std::move(row));
    emit(table, o.format, o.out, out);
    return round_trip ? kOk : kBoundViolated;
  }
};

struct HashCheckCommand {
  OutputOptions o;
  std::string qs = "5,7,11";
  std::string lengths = "1,2,3";

  void attach(CLI::App& app) {
    o.attach(app);
    app.add_option("--q", qs, "Primes to check");
    app.add_option("--u", lengths, "Input lengths u'");
  }

  int execute(std::ostream& out) const {
    Table table;
    int code = kOk;
    for (std::uint64_t qv : parse_list(qs, "--q")) {
      if (!is_prime(qv)) throw ConfigError("--q: " + std::to_string(qv) + " is not prime");
      const PrimeModulus q(qv);
      for (std::uint64_t len : parse_list(lengths, "--u")) {
        if (len == 0 || len > qv - 1) throw ConfigError("--u: length must lie in [1, q-1]");
        const DeltaUniversalityCheck c = check_delta_universality(q, len);
        if (!c.bound_holds || !c.equality_attained) code = kBoundViolated;
        table.add(json{{"q", qv},
                       {"length", len},
                       {"pairs", c.pairs},
                       {"max_collisions", c.max_count},
                       {"bound", len},
                       {"bound_holds", c.bound_holds},
                       {"equality_attained", c.equality_attained}});
      }
    }
    emit(table, o.format, o.out, out);
    return code;
  }
};

struct ExtCheckCommand {
  OutputOptions o;
  std::string qs = "5,7,11";
  std::size_t max_n = 3;

  void attach(CLI::App& app) {
    o.attach(app);
    app.add_option("--q", qs, "Primes to check");
    app.add_option("--max-n", max_n, "Largest source length")->check(CLI::Range(1, 6));
  }

  int execute(std::ostream& out) const {
    Table table;
    int code = kOk;
    for (std::uint64_t qv : parse_list(qs, "--q")) {
      if (!is_prime(qv)) throw ConfigError("--q: " + std::to_string(qv) + " is not prime");
      const UniformityCheck c = check_extractor_uniformity(PrimeModulus(qv), max_n);
      if (!c.uniform) code = kBoundViolated;
      table.add(json{{"q", qv},
                     {"max_n", max_n},
                     {"sources", c.sources},
                     {"cases", c.cases},
                     {"skipped", c.skipped},
                     {"uniform", c.uniform},
                     {"first_failure", c.first_failure}});
    }
    emit(table, o.format, o.out, out);
    return code;
  }
};

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"AWTP-PD protocol simulator", "awtp-pd"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  RunCommand run_cmd;
  SecrecyCommand secrecy_cmd;
  BoundsCommand bounds_cmd;
  ExportSmtCommand export_cmd;
  HashCheckCommand hash_cmd;
  ExtCheckCommand ext_cmd;
  CLI::App* run_app = app.add_subcommand("run", "Monte Carlo reliability over protocol executions");
  CLI::App* secrecy_app = app.add_subcommand("secrecy", "Exact secrecy by exhaustive tape enumeration");
  CLI::App* bounds_app = app.add_subcommand("bounds", "Evaluate rate and transmission-rate bounds");
  CLI::App* export_app = app.add_subcommand("export-smt", "Convert a restricted transcript to wires");
  CLI::App* hash_app = app.add_subcommand("hash-check", "Exhaustive Delta-universality check");
  CLI::App* ext_app = app.add_subcommand("ext-check", "Exhaustive extractor uniformity check");
  for (CLI::App* sub : {run_app, secrecy_app, bounds_app, export_app, hash_app, ext_app}) {
    sub->add_option("--config", "JSON file whose keys are flag names");
  }
  run_cmd.attach(*run_app);
  secrecy_cmd.attach(*secrecy_app);
  bounds_cmd.attach(*bounds_app);
  export_cmd.attach(*export_app);
  hash_cmd.attach(*hash_app);
  ext_cmd.attach(*ext_app);

  try {
    std::vector<std::string> args = expand_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  } catch (const ConfigError& e) {
    err << "awtp-pd: " << e.what() << "\n";
    return kConfigError;
  }

  try {
    if (run_app->parsed()) return run_cmd.execute(out);
    if (secrecy_app->parsed()) return secrecy_cmd.execute(out);
    if (bounds_app->parsed()) return bounds_cmd.execute(out);
    if (export_app->parsed()) return export_cmd.execute(out);
    if (hash_app->parsed()) return hash_cmd.execute(out);
    if (ext_app->parsed()) return ext_cmd.execute(out);
  } catch (const ConfigError& e) {
    err << "awtp-pd: " << e.what() << "\n";
    return kConfigError;
  } catch (const BudgetExceeded& e) {
    err << "awtp-pd: refusing to sample instead: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    err << "awtp-pd: " << e.what() << "\n";
    return kConfigError;
  }
  return kConfigError;
}

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace awtp::cli

#pragma once

#include <string>
#include <vector>

#include "rsscma/receivers.hpp"
#include "rsscma/types.hpp"

namespace rsscma {

enum class Scenario { UncodedRsScma, CodedRsScma, ScmaBaseline, QpskBaseline };
enum class ChannelKind { Rayleigh, Awgn };
enum class ReceiverKind { Rx1, Rx2 };

// Sweep configuration, read from "key = value" text (schema rsscma-sim-v1,
// '#' comments, unknown keys rejected). Scenario-specific keys are required
// for their scenario and rejected elsewhere, so a config says exactly what
// runs. See the README for the full schema.
struct SimConfig {
  Scenario scenario = Scenario::UncodedRsScma;
  std::string codebook_path;       // all scenarios except qpsk-baseline
  double alpha = 0.0;              // uncoded-rs-scma
  int symbols_per_frame = 0;       // per-stream symbols N per frame
  int resources = 0;               // qpsk-baseline only
  std::vector<double> ebn0_db;
  ChannelKind channel = ChannelKind::Rayleigh;
  SicMode sic = SicMode::Soft;     // uncoded-rs-scma
  ReceiverKind receiver = ReceiverKind::Rx1;  // coded-rs-scma
  std::string common_code_path;    // coded-rs-scma
  std::string private_code_path;   // coded-rs-scma
  int mpa_iterations = 3;
  int bp_iterations = 50;
  long long min_errors = 100;
  long long max_trials = 10000000;
  uint64_t seed = 1;
  double pc_override = -1.0;       // negative: per-point MMF lookup
  bool empirical_residual_variance = false;
  bool per_user = false;           // per-user columns in the CSV
};

SimConfig parse_sim_config(const std::string& text);
SimConfig load_sim_config(const std::string& path);

// Canonical "key = value" echo of a config, one line per field in schema
// order. The CSV metadata embeds these lines and the config hash is the
// FNV-1a of this text, so equal configs always hash equally.
std::string canonical_config(const SimConfig& cfg);
uint64_t config_hash(const SimConfig& cfg);

struct PointReport {
  double ebn0_db = 0.0;
  long long trials = 0;  // frames
  long long symbol_errors = 0, bit_errors = 0, block_errors = 0;
  long long symbols_sent = 0, bits_sent = 0, blocks_sent = 0;
  double ser = 0.0, ber = 0.0, bler = 0.0;
  double pc = 1.0;
  double noise_var = 0.0;
  double wall_seconds = 0.0;
  // filled when cfg.per_user is set; indexed by user
  std::vector<long long> user_symbol_errors, user_symbols;
  std::vector<long long> user_bit_errors, user_bits;
  std::vector<long long> user_block_errors, user_blocks;
};

struct SimReport {
  SimConfig config;
  double lambda = 0.0;  // realized overloading factor
  std::vector<PointReport> points;
};

// Monte-Carlo sweep. Frames run in batches of 64; a point stops at the
// first batch boundary with at least min_errors accumulated errors (symbol
// errors for uncoded scenarios, block errors for coded) or at exactly
// max_trials frames. Every random draw comes from a substream keyed by
// (seed, point, frame, purpose, user), so results are identical for any
// worker count, and integer counters make the merge order irrelevant.
SimReport run_sweep(const SimConfig& cfg, int threads = 1);

struct AnalysisRow {
  double alpha = 0.0;
  double lambda = 0.0;
};

struct Analysis {
  int J = 0, K = 0, M = 0;
  int resource_degree = 0;  // 2J/K, from the uniform user degree of 2
  double complexity_ratio = 0.0;
  std::vector<AnalysisRow> rows;
};

// Closed-form overloading factors over an alpha list plus the per-resource
// detector cost ratio. Each alpha must admit an exact split for some symbol
// count up to 10^4.
Analysis analyze(int J, int K, int M, const std::vector<double>& alphas);

// CSV: '#' metadata lines (schema, config echo, hash, accounting note),
// a header row, then one row per sweep point. All doubles print with 17
// significant digits so a parse-back recovers them exactly.
std::string csv_string(const SimReport& report);
void emit_csv(const SimReport& report, const std::string& path);

}  // namespace rsscma

#include "rsscma/sim.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "rsscma/channel.hpp"
#include "rsscma/codebook.hpp"
#include "rsscma/ldpc.hpp"
#include "rsscma/rate_split.hpp"
#include "rsscma/rng.hpp"

namespace rsscma {

namespace {

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0' || !std::isfinite(x))
    throw ParseError("bad number for " + key + ": '" + v + "'");
  return x;
}

long long parse_int(const std::string& key, const std::string& v) {
  char* end = nullptr;
  const long long x = std::strtoll(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0')
    throw ParseError("bad integer for " + key + ": '" + v + "'");
  return x;
}

uint64_t parse_uint(const std::string& key, const std::string& v) {
  char* end = nullptr;
  const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0' || v.front() == '-')
    throw ParseError("bad unsigned integer for " + key + ": '" + v + "'");
  return x;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw ParseError("bad boolean for " + key + ": '" + v + "'");
}

const char* scenario_name(Scenario s) {
  switch (s) {
    case Scenario::UncodedRsScma: return "uncoded-rs-scma";
    case Scenario::CodedRsScma: return "coded-rs-scma";
    case Scenario::ScmaBaseline: return "scma-baseline";
    case Scenario::QpskBaseline: return "qpsk-baseline";
  }
  return "?";
}

}  // namespace

SimConfig parse_sim_config(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("config line " + std::to_string(lineno) +
                       " is not 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ParseError("config line " + std::to_string(lineno) +
                       " has an empty key or value");
    if (!kv.emplace(key, value).second)
      throw ParseError("duplicate config key '" + key + "'");
  }

  static const std::set<std::string> known = {
      "schema",          "scenario",      "codebook",
      "alpha",           "symbols_per_frame", "resources",
      "ebn0_db",         "channel",       "sic",
      "receiver",        "common_code",   "private_code",
      "mpa_iterations",  "bp_iterations", "min_errors",
      "max_trials",      "seed",          "pc",
      "empirical_residual_variance",      "per_user"};
  for (const auto& [k, v] : kv)
    if (!known.count(k)) throw ParseError("unknown config key '" + k + "'");

  auto get = [&](const std::string& k) -> const std::string& {
    auto it = kv.find(k);
    if (it == kv.end())
      throw ValidationError("config is missing required key '" + k + "'");
    return it->second;
  };
  auto has = [&](const std::string& k) { return kv.count(k) != 0; };

  if (get("schema") != "rsscma-sim-v1")
    throw ValidationError("unsupported config schema '" + get("schema") + "'");

  SimConfig cfg;
  const std::string& sc = get("scenario");
  if (sc == "uncoded-rs-scma") cfg.scenario = Scenario::UncodedRsScma;
  else if (sc == "coded-rs-scma") cfg.scenario = Scenario::CodedRsScma;
  else if (sc == "scma-baseline") cfg.scenario = Scenario::ScmaBaseline;
  else if (sc == "qpsk-baseline") cfg.scenario = Scenario::QpskBaseline;
  else throw ValidationError("unknown scenario '" + sc + "'");

  {
    std::string list = get("ebn0_db");
    std::istringstream ls(list);
    std::string item;
    while (std::getline(ls, item, ',')) {
      item = trim(item);
      if (item.empty()) throw ParseError("empty entry in ebn0_db list");
      cfg.ebn0_db.push_back(parse_double("ebn0_db", item));
    }
    if (cfg.ebn0_db.empty())
      throw ValidationError("ebn0_db list must not be empty");
  }

  if (has("channel")) {
    const std::string& c = kv.at("channel");
    if (c == "rayleigh") cfg.channel = ChannelKind::Rayleigh;
    else if (c == "awgn") cfg.channel = ChannelKind::Awgn;
    else throw ValidationError("unknown channel '" + c + "'");
  }
  if (has("min_errors")) cfg.min_errors = parse_int("min_errors", kv.at("min_errors"));
  if (has("max_trials")) cfg.max_trials = parse_int("max_trials", kv.at("max_trials"));
  if (has("seed")) cfg.seed = parse_uint("seed", kv.at("seed"));
  if (has("per_user")) cfg.per_user = parse_bool("per_user", kv.at("per_user"));
  if (cfg.min_errors < 1) throw ValidationError("min_errors must be at least 1");
  if (cfg.max_trials < 1) throw ValidationError("max_trials must be at least 1");

  // keys whose presence depends on the scenario; anything not granted to
  // the chosen scenario is rejected so configs cannot silently carry
  // settings that do nothing
  auto reject = [&](const std::string& k) {
    if (has(k))
      throw ValidationError("key '" + k + "' does not apply to scenario " +
                            sc);
  };

  switch (cfg.scenario) {
    case Scenario::UncodedRsScma: {
      cfg.codebook_path = get("codebook");
      cfg.alpha = parse_double("alpha", get("alpha"));
      cfg.symbols_per_frame =
          static_cast<int>(parse_int("symbols_per_frame", get("symbols_per_frame")));
      if (has("sic")) {
        const std::string& s = kv.at("sic");
        if (s == "soft") cfg.sic = SicMode::Soft;
        else if (s == "hard") cfg.sic = SicMode::Hard;
        else throw ValidationError("unknown sic mode '" + s + "'");
      }
      if (has("mpa_iterations"))
        cfg.mpa_iterations =
            static_cast<int>(parse_int("mpa_iterations", kv.at("mpa_iterations")));
      if (has("pc")) cfg.pc_override = parse_double("pc", kv.at("pc"));
      if (has("empirical_residual_variance"))
        cfg.empirical_residual_variance =
            parse_bool("empirical_residual_variance",
                       kv.at("empirical_residual_variance"));
      reject("receiver");
      reject("common_code");
      reject("private_code");
      reject("bp_iterations");
      reject("resources");
      break;
    }
    case Scenario::CodedRsScma: {
      cfg.codebook_path = get("codebook");
      cfg.common_code_path = get("common_code");
      cfg.private_code_path = get("private_code");
      if (has("receiver")) {
        const std::string& r = kv.at("receiver");
        if (r == "rx1") cfg.receiver = ReceiverKind::Rx1;
        else if (r == "rx2") cfg.receiver = ReceiverKind::Rx2;
        else throw ValidationError("unknown receiver '" + r + "'");
      }
      if (has("mpa_iterations"))
        cfg.mpa_iterations =
            static_cast<int>(parse_int("mpa_iterations", kv.at("mpa_iterations")));
      if (has("bp_iterations"))
        cfg.bp_iterations =
            static_cast<int>(parse_int("bp_iterations", kv.at("bp_iterations")));
      if (has("pc")) cfg.pc_override = parse_double("pc", kv.at("pc"));
      if (has("empirical_residual_variance"))
        cfg.empirical_residual_variance =
            parse_bool("empirical_residual_variance",
                       kv.at("empirical_residual_variance"));
      reject("alpha");
      reject("symbols_per_frame");
      reject("sic");
      reject("resources");
      break;
    }
    case Scenario::ScmaBaseline: {
      cfg.codebook_path = get("codebook");
      cfg.symbols_per_frame =
          static_cast<int>(parse_int("symbols_per_frame", get("symbols_per_frame")));
      if (has("mpa_iterations"))
        cfg.mpa_iterations =
            static_cast<int>(parse_int("mpa_iterations", kv.at("mpa_iterations")));
      reject("alpha");
      reject("sic");
      reject("receiver");
      reject("common_code");
      reject("private_code");
      reject("bp_iterations");
      reject("resources");
      reject("pc");
      reject("empirical_residual_variance");
      break;
    }
    case Scenario::QpskBaseline: {
      cfg.resources = static_cast<int>(parse_int("resources", get("resources")));
      cfg.symbols_per_frame =
          static_cast<int>(parse_int("symbols_per_frame", get("symbols_per_frame")));
      reject("codebook");
      reject("alpha");
      reject("sic");
      reject("receiver");
      reject("common_code");
      reject("private_code");
      reject("mpa_iterations");
      reject("bp_iterations");
      reject("pc");
      reject("empirical_residual_variance");
      if (cfg.resources < 1)
        throw ValidationError("resources must be at least 1");
      break;
    }
  }
  if (cfg.scenario != Scenario::CodedRsScma && cfg.symbols_per_frame < 1)
    throw ValidationError("symbols_per_frame must be at least 1");
  if (cfg.mpa_iterations < 1)
    throw ValidationError("mpa_iterations must be at least 1");
  if (cfg.bp_iterations < 1)
    throw ValidationError("bp_iterations must be at least 1");
  if (cfg.pc_override >= 0.0 &&
      !(cfg.pc_override > 0.0 && cfg.pc_override <= 1.0))
    throw ValidationError("pc must lie in (0, 1]");
  if (cfg.scenario == Scenario::UncodedRsScma &&
      !(cfg.alpha >= 0.0 && cfg.alpha <= 1.0))
    throw ValidationError("alpha must lie in [0, 1]");
  return cfg;
}

SimConfig load_sim_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_sim_config(ss.str());
}

std::string canonical_config(const SimConfig& cfg) {
  std::ostringstream out;
  out << "schema = rsscma-sim-v1\n";
  out << "scenario = " << scenario_name(cfg.scenario) << "\n";
  out << "codebook = " << cfg.codebook_path << "\n";
  out << "alpha = " << fmt_double(cfg.alpha) << "\n";
  out << "symbols_per_frame = " << cfg.symbols_per_frame << "\n";
  out << "resources = " << cfg.resources << "\n";
  out << "ebn0_db = ";
  for (size_t i = 0; i < cfg.ebn0_db.size(); ++i)
    out << (i ? "," : "") << fmt_double(cfg.ebn0_db[i]);
  out << "\n";
  out << "channel = "
      << (cfg.channel == ChannelKind::Rayleigh ? "rayleigh" : "awgn") << "\n";
  out << "sic = " << (cfg.sic == SicMode::Hard ? "hard" : "soft") << "\n";
  out << "receiver = " << (cfg.receiver == ReceiverKind::Rx2 ? "rx2" : "rx1")
      << "\n";
  out << "common_code = " << cfg.common_code_path << "\n";
  out << "private_code = " << cfg.private_code_path << "\n";
  out << "mpa_iterations = " << cfg.mpa_iterations << "\n";
  out << "bp_iterations = " << cfg.bp_iterations << "\n";
  out << "min_errors = " << cfg.min_errors << "\n";
  out << "max_trials = " << cfg.max_trials << "\n";
  out << "seed = " << cfg.seed << "\n";
  out << "pc = "
      << (cfg.pc_override < 0.0 ? std::string("mmf")
                                : fmt_double(cfg.pc_override))
      << "\n";
  out << "empirical_residual_variance = "
      << (cfg.empirical_residual_variance ? "true" : "false") << "\n";
  out << "per_user = " << (cfg.per_user ? "true" : "false") << "\n";
  return out.str();
}

uint64_t config_hash(const SimConfig& cfg) {
  const std::string text = canonical_config(cfg);
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

struct Counts {
  long long symbol_errors = 0, bit_errors = 0, block_errors = 0;
  long long symbols = 0, bits = 0, blocks = 0;
  std::vector<long long> u_serr, u_sym, u_berr, u_bit, u_blerr, u_blk;

  explicit Counts(int users = 0)
      : u_serr(users, 0), u_sym(users, 0), u_berr(users, 0), u_bit(users, 0),
        u_blerr(users, 0), u_blk(users, 0) {}

  void add(const Counts& o) {
    symbol_errors += o.symbol_errors;
    bit_errors += o.bit_errors;
    block_errors += o.block_errors;
    symbols += o.symbols;
    bits += o.bits;
    blocks += o.blocks;
    for (size_t u = 0; u < u_serr.size(); ++u) {
      u_serr[u] += o.u_serr[u];
      u_sym[u] += o.u_sym[u];
      u_berr[u] += o.u_berr[u];
      u_bit[u] += o.u_bit[u];
      u_blerr[u] += o.u_blerr[u];
      u_blk[u] += o.u_blk[u];
    }
  }
};

int symbol_bit_errors(int a, int b) {
  return std::popcount(static_cast<unsigned>(a ^ b));
}

// Everything a worker needs to run one frame of one sweep point.
struct PointContext {
  const SimConfig* cfg = nullptr;
  const CodebookSet* cb = nullptr;
  const ParityCheckMatrix* Hc = nullptr;
  const ParityCheckMatrix* Hp = nullptr;
  SplitConfig split;  // uncoded scenarios
  PowerAllocation pa;
  double noise_var = 0.0;
  uint64_t point = 0;
  int private_bits = 2;  // log2(M)
};

Counts run_uncoded_frame(const PointContext& ctx, uint64_t frame) {
  const SimConfig& cfg = *ctx.cfg;
  const CodebookSet& cb = *ctx.cb;
  const int J = cb.J, K = cb.K, M = cb.M;
  const int lc = ctx.split.lc, lp = ctx.split.lp;
  const int uses = std::max(lc, lp), phase1 = std::min(lc, lp);
  const bool fade = cfg.channel == ChannelKind::Rayleigh;
  const MpaOptions opt{cfg.mpa_iterations, cfg.empirical_residual_variance};

  std::vector<IVector> priv(J);
  std::vector<IVector> comm(K);
  for (int u = 0; u < J; ++u) {
    SubstreamRng sr(stream_key(
        cfg.seed, {ctx.point, frame,
                   static_cast<uint64_t>(StreamPurpose::symbols),
                   static_cast<uint64_t>(u)}));
    priv[u].resize(lp);
    for (int t = 0; t < lp; ++t)
      priv[u][t] = static_cast<int>(sr.uniform_index(M));
    if (u < K && lc > 0) {
      comm[u].resize(lc);
      for (int t = 0; t < lc; ++t) {
        const int msb = sr.bit(), lsb = sr.bit();
        comm[u][t] = 2 * msb + lsb;
      }
    }
  }

  std::vector<CVector> comm_mod(K);
  if (lc > 0)
    for (int k = 0; k < K; ++k) comm_mod[k] = qpsk_modulate_symbols(comm[k]);

  std::vector<CVector> s(uses);
  for (int t = 0; t < uses; ++t) {
    CVector c;
    if (t < lc) {
      c.resize(K);
      for (int k = 0; k < K; ++k) c[k] = comm_mod[k][t];
    }
    IVector m;
    if (t < lp) {
      m.resize(J);
      for (int j = 0; j < J; ++j) m[j] = priv[j][t];
    }
    if (t < phase1) s[t] = superpose(c, scma_encode(m, cb), ctx.pa);
    else if (t < lp) s[t] = scma_encode(m, cb);
    else s[t] = c;
  }

  Counts counts(J);
  for (int u = 0; u < J; ++u) {
    const int own_lc = u < K ? lc : 0;
    if (own_lc + lp == 0) continue;
    const int last_use = u < K ? uses : lp;
    SubstreamRng ch(stream_key(
        cfg.seed, {ctx.point, frame,
                   static_cast<uint64_t>(StreamPurpose::channel),
                   static_cast<uint64_t>(u)}));
    SubstreamRng nz(stream_key(
        cfg.seed, {ctx.point, frame,
                   static_cast<uint64_t>(StreamPurpose::noise),
                   static_cast<uint64_t>(u)}));
    IVector est_c(own_lc), est_p(lp);
    for (int t = 0; t < last_use; ++t) {
      const CVector h = fade ? rayleigh_gains(K, ch) : CVector::Ones(K);
      const CVector y = transmit(s[t], h, ctx.noise_var, nz);
      if (t < phase1) {
        const SuperposedUseResult r =
            rx1_uncoded(y, h, ctx.noise_var, ctx.pa, cb, cfg.sic, opt);
        if (own_lc) est_c[t] = r.common_symbols[u];
        est_p[t] = r.mpa.hard[u];
      } else if (t < lp) {
        est_p[t] = rx1_private_only(y, h, ctx.noise_var, cb, opt).hard[u];
      } else if (own_lc) {
        est_c[t] = rx1_common_only(y, h, ctx.noise_var).symbols[u];
      }
    }
    long long serr = 0, berr = 0;
    for (int t = 0; t < own_lc; ++t) {
      serr += est_c[t] != comm[u][t];
      berr += symbol_bit_errors(est_c[t], comm[u][t]);
    }
    for (int t = 0; t < lp; ++t) {
      serr += est_p[t] != priv[u][t];
      berr += symbol_bit_errors(est_p[t], priv[u][t]);
    }
    const long long sym = own_lc + lp;
    const long long bit = 2LL * own_lc + ctx.private_bits * lp;
    counts.symbol_errors += serr;
    counts.bit_errors += berr;
    counts.block_errors += serr > 0;
    counts.symbols += sym;
    counts.bits += bit;
    counts.blocks += 1;
    counts.u_serr[u] += serr;
    counts.u_sym[u] += sym;
    counts.u_berr[u] += berr;
    counts.u_bit[u] += bit;
    counts.u_blerr[u] += serr > 0;
    counts.u_blk[u] += 1;
  }
  return counts;
}

Counts run_scma_baseline_frame(const PointContext& ctx, uint64_t frame) {
  const SimConfig& cfg = *ctx.cfg;
  const CodebookSet& cb = *ctx.cb;
  const int J = cb.J, K = cb.K, M = cb.M;
  const int N = cfg.symbols_per_frame;
  const bool fade = cfg.channel == ChannelKind::Rayleigh;
  const MpaOptions opt{cfg.mpa_iterations, false};

  std::vector<IVector> priv(J);
  for (int u = 0; u < J; ++u) {
    SubstreamRng sr(stream_key(
        cfg.seed, {ctx.point, frame,
                   static_cast<uint64_t>(StreamPurpose::symbols),
                   static_cast<uint64_t>(u)}));
    priv[u].resize(N);
    for (int t = 0; t < N; ++t)
      priv[u][t] = static_cast<int>(sr.uniform_index(M));
  }
  std::vector<CVector> s(N);
  for (int t = 0; t < N; ++t) {
    IVector m(J);
    for (int j = 0; j < J; ++j) m[j] = priv[j][t];
    s[t] = scma_encode(m, cb);
  }

  Counts counts(J);
  for (int u = 0; u < J; ++u) {
    SubstreamRng ch(stream_key(
        cfg.seed, {ctx.point, frame,
                   static_cast<uint64_t>(StreamPurpose::channel),
                   static_cast<uint64_t>(u)}));
    SubstreamRng nz(stream_key(
        cfg.seed, {ctx.point, frame,
                   static_cast<uint64_t>(StreamPurpose::noise),
                   static_cast<uint64_t>(u)}));
    long long serr = 0, berr = 0;
    for (int t = 0; t < N; ++t) {
      const CVector h = fade ? rayleigh_gains(K, ch) : CVector::Ones(K);
      const CVector y = transmit(s[t], h, ctx.noise_var, nz);
      const int est = rx1_private_only(y, h, ctx.noise_var, cb, opt).hard[u];
      serr += est != priv[u][t];
      berr += symbol_bit_errors(est, priv[u][t]);
    }
    counts.symbol_errors += serr;
    counts.bit_errors += berr;
    counts.block_errors += serr > 0;
    counts.symbols += N;
    counts.bits += static_cast<long long>(ctx.private_bits) * N;
    counts.blocks += 1;
    counts.u_serr[u] += serr;
    counts.u_sym[u] += N;
    counts.u_berr[u] += berr;
    counts.u_bit[u] += static_cast<long long>(ctx.private_bits) * N;
    counts.u_blerr[u] += serr > 0;
    counts.u_blk[u] += 1;
  }
  return counts;
}

Counts run_qpsk_baseline_frame(const PointContext& ctx, uint64_t frame) {
  const SimConfig& cfg = *ctx.cfg;
  const int K = cfg.resources;
  const int N = cfg.symbols_per_frame;
  const bool fade = cfg.channel == ChannelKind::Rayleigh;

  std::vector<IVector> comm(K);
  std::vector<CVector> comm_mod(K);
  for (int u = 0; u < K; ++u) {
    SubstreamRng sr(stream_key(
        cfg.seed, {ctx.point, frame,
                   static_cast<uint64_t>(StreamPurpose::symbols),
                   static_cast<uint64_t>(u)}));
    comm[u].resize(N);
    for (int t = 0; t < N; ++t) {
      const int msb = sr.bit(), lsb = sr.bit();
      comm[u][t] = 2 * msb + lsb;
    }
    comm_mod[u] = qpsk_modulate_symbols(comm[u]);
  }
  std::vector<CVector> s(N);
  for (int t = 0; t < N; ++t) {
    CVector c(K);
    for (int k = 0; k < K; ++k) c[k] = comm_mod[k][t];
    s[t] = c;
  }

  Counts counts(K);
  for (int u = 0; u < K; ++u) {
    SubstreamRng ch(stream_key(
        cfg.seed, {ctx.point, frame,
                   static_cast<uint64_t>(StreamPurpose::channel),
                   static_cast<uint64_t>(u)}));
    SubstreamRng nz(stream_key(
        cfg.seed, {ctx.point, frame,
                   static_cast<uint64_t>(StreamPurpose::noise),
                   static_cast<uint64_t>(u)}));
    long long serr = 0, berr = 0;
    for (int t = 0; t < N; ++t) {
      const CVector h = fade ? rayleigh_gains(K, ch) : CVector::Ones(K);
      const CVector y = transmit(s[t], h, ctx.noise_var, nz);
      const int est = rx1_common_only(y, h, ctx.noise_var).symbols[u];
      serr += est != comm[u][t];
      berr += symbol_bit_errors(est, comm[u][t]);
    }
    counts.symbol_errors += serr;
    counts.bit_errors += berr;
    counts.block_errors += serr > 0;
    counts.symbols += N;
    counts.bits += 2LL * N;
    counts.blocks += 1;
    counts.u_serr[u] += serr;
    counts.u_sym[u] += N;
    counts.u_berr[u] += berr;
    counts.u_bit[u] += 2LL * N;
    counts.u_blerr[u] += serr > 0;
    counts.u_blk[u] += 1;
  }
  return counts;
}

Counts run_coded_frame(const PointContext& ctx, uint64_t frame) {
  const SimConfig& cfg = *ctx.cfg;
  const CodebookSet& cb = *ctx.cb;
  const ParityCheckMatrix& Hc = *ctx.Hc;
  const ParityCheckMatrix& Hp = *ctx.Hp;
  const int J = cb.J, K = cb.K;
  const int uses = Hc.n / 2;
  const bool fade = cfg.channel == ChannelKind::Rayleigh;

  std::vector<Bits> cinfo(K), pinfo(J);
  std::vector<CVector> comm_mod(K);
  std::vector<IVector> psym(J);
  for (int u = 0; u < J; ++u) {
    SubstreamRng sr(stream_key(
        cfg.seed, {ctx.point, frame,
                   static_cast<uint64_t>(StreamPurpose::symbols),
                   static_cast<uint64_t>(u)}));
    pinfo[u].resize(Hp.k);
    for (auto& b : pinfo[u]) b = sr.bit();
    const Bits cw = encode(pinfo[u], Hp);
    psym[u].resize(uses);
    for (int t = 0; t < uses; ++t)
      psym[u][t] = 2 * cw[2 * t] + cw[2 * t + 1];
    if (u < K) {
      cinfo[u].resize(Hc.k);
      for (auto& b : cinfo[u]) b = sr.bit();
      comm_mod[u] = qpsk_modulate(encode(cinfo[u], Hc));
    }
  }

  std::vector<CVector> s(uses);
  for (int t = 0; t < uses; ++t) {
    CVector c(K);
    for (int k = 0; k < K; ++k) c[k] = comm_mod[k][t];
    IVector m(J);
    for (int j = 0; j < J; ++j) m[j] = psym[j][t];
    s[t] = superpose(c, scma_encode(m, cb), ctx.pa);
  }

  CodedRxOptions opt;
  opt.pa = ctx.pa;
  opt.mpa = MpaOptions{cfg.mpa_iterations, cfg.empirical_residual_variance};
  opt.bp_iterations = cfg.bp_iterations;

  Counts counts(J);
  for (int u = 0; u < J; ++u) {
    SubstreamRng ch(stream_key(
        cfg.seed, {ctx.point, frame,
                   static_cast<uint64_t>(StreamPurpose::channel),
                   static_cast<uint64_t>(u)}));
    SubstreamRng nz(stream_key(
        cfg.seed, {ctx.point, frame,
                   static_cast<uint64_t>(StreamPurpose::noise),
                   static_cast<uint64_t>(u)}));
    CodedBlockObservation obs;
    obs.noise_var = ctx.noise_var;
    obs.y.reserve(uses);
    obs.h.reserve(uses);
    for (int t = 0; t < uses; ++t) {
      const CVector h = fade ? rayleigh_gains(K, ch) : CVector::Ones(K);
      obs.y.push_back(transmit(s[t], h, ctx.noise_var, nz));
      obs.h.push_back(h);
    }
    const CodedUserOutput out =
        cfg.receiver == ReceiverKind::Rx2
            ? rx2_coded(obs, u, cb, Hc, Hp, opt)
            : rx1_coded(obs, u, cb, Hc, Hp, opt);
    Bits truth = u < K ? cinfo[u] : Bits{};
    truth.insert(truth.end(), pinfo[u].begin(), pinfo[u].end());
    long long berr = 0;
    for (size_t i = 0; i < truth.size(); ++i)
      berr += out.combined[i] != truth[i];
    counts.bit_errors += berr;
    counts.block_errors += berr > 0;
    counts.bits += static_cast<long long>(truth.size());
    counts.blocks += 1;
    counts.u_berr[u] += berr;
    counts.u_bit[u] += static_cast<long long>(truth.size());
    counts.u_blerr[u] += berr > 0;
    counts.u_blk[u] += 1;
  }
  return counts;
}

Counts run_frame(const PointContext& ctx, uint64_t frame) {
  switch (ctx.cfg->scenario) {
    case Scenario::UncodedRsScma: return run_uncoded_frame(ctx, frame);
    case Scenario::CodedRsScma: return run_coded_frame(ctx, frame);
    case Scenario::ScmaBaseline: return run_scma_baseline_frame(ctx, frame);
    case Scenario::QpskBaseline: return run_qpsk_baseline_frame(ctx, frame);
  }
  throw ValidationError("unreachable scenario");
}

constexpr long long kBatch = 64;

}  // namespace

SimReport run_sweep(const SimConfig& cfg, int threads) {
  if (threads < 1) throw ValidationError("threads must be at least 1");

  CodebookSet cb;
  ParityCheckMatrix Hc, Hp;
  SplitConfig split;
  int users = 0;
  int private_bits = 2;

  switch (cfg.scenario) {
    case Scenario::UncodedRsScma:
      cb = load_codebook_set(cfg.codebook_path);
      split = make_split_config(cfg.alpha, cfg.symbols_per_frame, cb.J, cb.K);
      users = cb.J;
      break;
    case Scenario::ScmaBaseline:
      cb = load_codebook_set(cfg.codebook_path);
      split = make_split_config(0.0, cfg.symbols_per_frame, cb.J, cb.K);
      users = cb.J;
      break;
    case Scenario::QpskBaseline:
      split = make_split_config(1.0, cfg.symbols_per_frame, cfg.resources,
                                cfg.resources);
      users = cfg.resources;
      break;
    case Scenario::CodedRsScma:
      cb = load_codebook_set(cfg.codebook_path);
      Hc = load_alist(cfg.common_code_path);
      Hp = load_alist(cfg.private_code_path);
      if (Hc.n != Hp.n || Hc.n % 2 != 0)
        throw ValidationError(
            "common and private codes need one even block length");
      users = cb.J;
      break;
  }
  if (cb.M > 0) {
    const int b = std::bit_width(static_cast<unsigned>(cb.M)) - 1;
    if ((1 << b) != cb.M)
      throw ValidationError("alphabet size must be a power of two");
    private_bits = b;
  }

  SimReport report;
  report.config = cfg;
  switch (cfg.scenario) {
    case Scenario::UncodedRsScma:
      report.lambda = overloading_factor(split);
      break;
    case Scenario::ScmaBaseline:
      report.lambda = static_cast<double>(cb.J) / cb.K;
      break;
    case Scenario::QpskBaseline:
      report.lambda = 1.0;
      break;
    case Scenario::CodedRsScma:
      report.lambda = static_cast<double>(cb.K + cb.J) / cb.K;
      break;
  }

  for (size_t p = 0; p < cfg.ebn0_db.size(); ++p) {
    const auto t0 = std::chrono::steady_clock::now();
    const double ebn0 = cfg.ebn0_db[p];

    PointContext ctx;
    ctx.cfg = &cfg;
    ctx.cb = cb.J > 0 ? &cb : nullptr;
    ctx.Hc = &Hc;
    ctx.Hp = &Hp;
    ctx.split = split;
    ctx.point = p;
    ctx.private_bits = private_bits;
    if (cfg.scenario == Scenario::UncodedRsScma ||
        cfg.scenario == Scenario::CodedRsScma) {
      ctx.pa = cfg.pc_override < 0.0 ? mmf_power_lookup(ebn0)
                                     : make_power_allocation(cfg.pc_override);
    } else {
      ctx.pa = PowerAllocation{1.0, 0.0};
    }
    if (cfg.scenario == Scenario::CodedRsScma) {
      ctx.noise_var = ebn0_to_noise_var(
          ebn0, coded_energy_accounting(cb.J, cb.K, ctx.pa, Hc.k, Hp.k, Hc.n));
    } else {
      ctx.noise_var = ebn0_to_noise_var(ebn0, split, ctx.pa, private_bits);
    }

    Counts acc(users);
    long long trials = 0;
    const bool coded = cfg.scenario == Scenario::CodedRsScma;
    while (trials < cfg.max_trials) {
      const long long batch = std::min(kBatch, cfg.max_trials - trials);
      if (threads == 1) {
        for (long long f = 0; f < batch; ++f)
          acc.add(run_frame(ctx, static_cast<uint64_t>(trials + f)));
      } else {
        const int workers =
            static_cast<int>(std::min<long long>(threads, batch));
        std::vector<Counts> slot(workers, Counts(users));
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w)
          pool.emplace_back([&, w] {
            for (long long f = w; f < batch; f += workers)
              slot[w].add(run_frame(ctx, static_cast<uint64_t>(trials + f)));
          });
        for (auto& th : pool) th.join();
        for (const Counts& c : slot) acc.add(c);
      }
      trials += batch;
      const long long errors = coded ? acc.block_errors : acc.symbol_errors;
      if (errors >= cfg.min_errors) break;
    }

    PointReport pr;
    pr.ebn0_db = ebn0;
    pr.trials = trials;
    pr.symbol_errors = acc.symbol_errors;
    pr.bit_errors = acc.bit_errors;
    pr.block_errors = acc.block_errors;
    pr.symbols_sent = acc.symbols;
    pr.bits_sent = acc.bits;
    pr.blocks_sent = acc.blocks;
    pr.ser = acc.symbols ? static_cast<double>(acc.symbol_errors) / acc.symbols
                         : 0.0;
    pr.ber = acc.bits ? static_cast<double>(acc.bit_errors) / acc.bits : 0.0;
    pr.bler =
        acc.blocks ? static_cast<double>(acc.block_errors) / acc.blocks : 0.0;
    pr.pc = ctx.pa.Pc;
    pr.noise_var = ctx.noise_var;
    if (cfg.per_user) {
      pr.user_symbol_errors = acc.u_serr;
      pr.user_symbols = acc.u_sym;
      pr.user_bit_errors = acc.u_berr;
      pr.user_bits = acc.u_bit;
      pr.user_block_errors = acc.u_blerr;
      pr.user_blocks = acc.u_blk;
    }
    pr.wall_seconds = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    report.points.push_back(std::move(pr));
  }
  return report;
}

Analysis analyze(int J, int K, int M, const std::vector<double>& alphas) {
  if (K < 1 || J < K) throw ValidationError("need J >= K >= 1");
  if (M < 2) throw ValidationError("alphabet size must be at least 2");
  if ((2 * J) % K != 0)
    throw ValidationError("uniform resource degree needs K to divide 2J");
  Analysis a;
  a.J = J;
  a.K = K;
  a.M = M;
  a.resource_degree = 2 * J / K;
  a.complexity_ratio = complexity_ratio(M, a.resource_degree);
  for (double alpha : alphas) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
      throw ValidationError("alpha must lie in [0, 1]");
    bool done = false;
    for (int N = 1; N <= 10000 && !done; ++N) {
      const double scaled = alpha * N;
      if (std::abs(scaled - std::round(scaled)) > 1e-9) continue;
      const SplitConfig split = make_split_config(alpha, N, J, K);
      a.rows.push_back({alpha, overloading_factor(split)});
      done = true;
    }
    if (!done)
      throw ValidationError("alpha " + fmt_double(alpha) +
                            " admits no exact split up to N = 10000");
  }
  return a;
}

std::string csv_string(const SimReport& report) {
  std::ostringstream out;
  out << "# rsscma-sim-v1\n";
  {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(config_hash(report.config)));
    out << "# config_hash = " << buf << "\n";
  }
  std::istringstream cc(canonical_config(report.config));
  std::string line;
  while (std::getline(cc, line)) out << "# " << line << "\n";
  out << "# lambda = " << fmt_double(report.lambda) << "\n";
  out << "# eb/n0 accounting counts information bits per resource use; for "
         "coded runs only the k_c and k_p information bits count\n";
  out << "ebn0_db,trials,ser,ber,bler,pc,lambda,seed";
  if (report.config.per_user && !report.points.empty()) {
    const size_t users = report.points.front().user_symbols.size();
    for (size_t u = 0; u < users; ++u)
      out << ",ser_user" << u << ",ber_user" << u << ",bler_user" << u;
  }
  out << "\n";
  for (const PointReport& p : report.points) {
    out << fmt_double(p.ebn0_db) << "," << p.trials << ","
        << fmt_double(p.ser) << "," << fmt_double(p.ber) << ","
        << fmt_double(p.bler) << "," << fmt_double(p.pc) << ","
        << fmt_double(report.lambda) << "," << report.config.seed;
    if (report.config.per_user) {
      for (size_t u = 0; u < p.user_symbols.size(); ++u) {
        const double us = p.user_symbols[u]
                              ? static_cast<double>(p.user_symbol_errors[u]) /
                                    p.user_symbols[u]
                              : 0.0;
        const double ub = p.user_bits[u]
                              ? static_cast<double>(p.user_bit_errors[u]) /
                                    p.user_bits[u]
                              : 0.0;
        const double ul = p.user_blocks[u]
                              ? static_cast<double>(p.user_block_errors[u]) /
                                    p.user_blocks[u]
                              : 0.0;
        out << "," << fmt_double(us) << "," << fmt_double(ub) << ","
            << fmt_double(ul);
      }
    }
    out << "\n";
  }
  return out.str();
}

void emit_csv(const SimReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + path);
  out << csv_string(report);
  if (!out) throw IoError("failed writing output file: " + path);
}

}  // namespace rsscma

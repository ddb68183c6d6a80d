// Acceptance harness. Each criterion prints exactly one PASS/FAIL line with
// the measured quantity and its bound; the exit code is 0 only if every
// selected criterion passed. An optional argument picks one criterion.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "rsscma/channel.hpp"
#include "rsscma/codebook.hpp"
#include "rsscma/ldpc.hpp"
#include "rsscma/qpsk.hpp"
#include "rsscma/rate_split.hpp"
#include "rsscma/receivers.hpp"
#include "rsscma/rng.hpp"
#include "rsscma/scma.hpp"
#include "rsscma/sim.hpp"

using namespace rsscma;

namespace {

const std::string kData = RSSCMA_DATA_DIR;
const std::string kCli = RSSCMA_CLI_PATH;
const std::string kCodebook = kData + "/codebooks/cb_j6_k4_m4.txt";
const std::string kPeg120 = kData + "/ldpc/peg_n256_k120.alist";
const std::string kHamming = kData + "/ldpc/hamming_7_4.alist";

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v, int prec = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", prec, v);
  return buf;
}

// ---------------------------------------------------------------- criterion 1

Outcome criterion1() {
  const std::vector<double> alphas = {0.0, 0.25, 0.5, 0.6, 0.75, 0.9, 1.0};
  const Analysis a = analyze(6, 4, 4, alphas);
  const double l0 = a.rows[0].lambda, l025 = a.rows[1].lambda;
  const double l05 = a.rows[2].lambda, l06 = a.rows[3].lambda;
  const double l075 = a.rows[4].lambda, l09 = a.rows[5].lambda;
  const double l1 = a.rows[6].lambda;

  const double d025 = std::abs(l025 - 43.0 / 22.0);
  const double dexact = std::max({std::abs(l0 - 1.5), std::abs(l05 - 2.5),
                                  std::abs(l1 - 1.0)});
  // percent displays of the 0.6 / 0.75 / 0.9 factors, printed to three
  // figures in the reference curves as 225, 183 and 135
  const double dleg = std::max({std::abs(100.0 * l06 - 225.0),
                                std::abs(100.0 * l075 - 183.0),
                                std::abs(100.0 * l09 - 135.0)});

  Outcome o;
  o.pass = d025 <= 1e-9 && dexact <= 1e-9 && dleg <= 1.0;
  o.detail = "lambda(0.25) = " + fmt(l025, 17) + ", |diff to 43/22| = " +
             fmt(d025, 3) + " (bound 1e-9); lambda(0, 0.5, 1) = (" + fmt(l0) +
             ", " + fmt(l05) + ", " + fmt(l1) +
             ") exact within 1e-9; percent displays " + fmt(100.0 * l06, 5) +
             "/" + fmt(100.0 * l075, 5) + "/" + fmt(100.0 * l09, 5) +
             " vs 225/183/135, max deviation " + fmt(dleg, 3) +
             " points (bound 1)";
  return o;
}

// ---------------------------------------------------------------- criterion 2

Outcome criterion2() {
  const double r = complexity_ratio(4, 3);
  Outcome o;
  o.pass = r == 69.0 / 64.0;
  o.detail = "complexity_ratio(4, 3) = " + fmt(r, 17) +
             ", required exactly 69/64 = " + fmt(69.0 / 64.0, 17);
  return o;
}

// ---------------------------------------------------------------- criterion 3

// four-term evaluation in extended precision, clamped like the library
double brute_llr(Complex y, double s2, int bit) {
  const auto& pts = qpsk_points();
  long double num = 0.0L, den = 0.0L;
  for (int p = 0; p < 4; ++p) {
    const auto b = qpsk_bits_from_point(p);
    const long double re = static_cast<long double>(y.real()) - pts[p].real();
    const long double im = static_cast<long double>(y.imag()) - pts[p].imag();
    const long double w = expl(-(re * re + im * im) / (2.0L * s2));
    if (b[bit] == 0)
      num += w;
    else
      den += w;
  }
  long double l = logl(num) - logl(den);
  if (l > LLR_MAX) l = LLR_MAX;
  if (l < -LLR_MAX) l = -LLR_MAX;
  return static_cast<double>(l);
}

Outcome criterion3() {
  SubstreamRng rng(stream_key(3001, {0}));
  double max_diff = 0.0;
  long sign_mismatch = 0, sign_checked = 0;
  for (int i = 0; i < 10000; ++i) {
    const Complex y(rng.uniform() * 4.0 - 2.0, rng.uniform() * 4.0 - 2.0);
    const double s2 = std::pow(10.0, -2.0 + 3.0 * rng.uniform());
    CVector v(1);
    v[0] = y;
    const LlrFrame frame = qpsk_llr(v, s2);
    const auto hard = qpsk_bits_from_point(qpsk_hard(y));
    for (int bit = 0; bit < 2; ++bit) {
      const double lib = frame.llr(0, bit);
      max_diff = std::max(max_diff, std::abs(lib - brute_llr(y, s2, bit)));
      if (std::abs(lib) > 1e-9) {
        ++sign_checked;
        if ((lib > 0.0) != (hard[bit] == 0)) ++sign_mismatch;
      }
    }
  }
  Outcome o;
  o.pass = max_diff <= 1e-9 && sign_mismatch == 0;
  o.detail = "max |llr - direct four-term evaluation| = " + fmt(max_diff, 3) +
             " over 10^4 random (y, sigma^2) (bound 1e-9); " +
             std::to_string(sign_mismatch) + "/" +
             std::to_string(sign_checked) +
             " sign mismatches vs hard demod off boundary";
  return o;
}

// ---------------------------------------------------------------- criterion 4

Outcome criterion4() {
  LlrFrame zero{RMatrix::Zero(3, 2), 1.0};
  const CVector s0 = soft_symbols(llr_to_bit_probabilities(zero));
  bool zero_exact = true;
  for (int k = 0; k < 3; ++k)
    if (s0[k].real() != 0.0 || s0[k].imag() != 0.0) zero_exact = false;

  double max_dev = 0.0;
  for (int msb = 0; msb < 2; ++msb)
    for (int lsb = 0; lsb < 2; ++lsb) {
      LlrFrame sat{RMatrix(1, 2), 1.0};
      sat.llr(0, 0) = msb == 0 ? LLR_MAX : -LLR_MAX;
      sat.llr(0, 1) = lsb == 0 ? LLR_MAX : -LLR_MAX;
      const CVector s = soft_symbols(llr_to_bit_probabilities(sat));
      const Complex want =
          qpsk_points()[qpsk_point_from_bits(static_cast<uint8_t>(msb),
                                             static_cast<uint8_t>(lsb))];
      max_dev = std::max(max_dev, std::abs(s[0] - want));
    }

  Outcome o;
  o.pass = zero_exact && max_dev <= 1e-9;
  o.detail = std::string("zero llrs give soft symbol ") +
             (zero_exact ? "exactly 0" : "!= 0 (FAIL)") +
             "; saturated llrs land within " + fmt(max_dev, 3) +
             " of the constellation points (bound 1e-9)";
  return o;
}

// ---------------------------------------------------------------- criterion 5

Outcome criterion5() {
  const CodebookSet cb = load_codebook_set(kCodebook);
  const PowerAllocation pa = make_power_allocation(0.9156);
  const double nv = 0.05;
  const double eps = std::numeric_limits<double>::epsilon();
  double max_units = 0.0;
  for (uint64_t frame = 0; frame < 1000; ++frame) {
    SubstreamRng rng(stream_key(5001, {frame}));
    Bits cbits(2 * cb.K);
    for (auto& b : cbits) b = rng.bit();
    const CVector c = qpsk_modulate(cbits);
    IVector m(cb.J);
    for (int j = 0; j < cb.J; ++j)
      m[j] = static_cast<int>(rng.uniform_index(cb.M));
    const CVector h = rayleigh_gains(cb.K, rng);
    CVector w(cb.K);
    for (int k = 0; k < cb.K; ++k) w[k] = std::sqrt(nv) * rng.cnormal();
    const CVector enc = scma_encode(m, cb);
    const CVector y = h.cwiseProduct(superpose(c, enc, pa)) + w;
    const SuperposedUseResult r =
        rx1_uncoded(y, h, nv, pa, cb, SicMode::Genie, MpaOptions{1, false}, &c);
    for (int k = 0; k < cb.K; ++k) {
      const Complex want = std::sqrt(pa.Pp) * (h[k] * enc[k]) + w[k];
      // the cancellation subtracts operands of this magnitude, so the only
      // admissible deviation is their round-off, a few eps of this scale
      const double scale =
          std::abs(y[k]) + std::sqrt(pa.Pc) * std::abs(h[k] * c[k]);
      max_units =
          std::max(max_units, std::abs(r.residual[k] - want) / (eps * scale));
    }
  }
  Outcome o;
  o.pass = max_units <= 8.0;
  o.detail =
      "genie residual vs sqrt(Pp) h.*(private sum) + w over 10^3 frames: max "
      "deviation " +
      fmt(max_units, 3) +
      " rounding units of the cancelled operand magnitude (bound 8; the "
      "noise term is the identical stored draw, so only round-off from "
      "distributing the complex products remains)";
  return o;
}

// ---------------------------------------------------------------- criterion 6

Outcome criterion6() {
  const CodebookSet cb = load_codebook_set(kCodebook);
  const CMatrix gains = CMatrix::Ones(cb.J, cb.K);
  const double s2 = 0.07;  // calibrated so ML lands near SER 1e-2
  const int iters = 10;
  const long nvec = 12000;
  long mpa_err = 0, ml_err = 0;
  SubstreamRng rng(stream_key(6001, {0}));
  for (long v = 0; v < nvec; ++v) {
    IVector m(cb.J);
    for (int j = 0; j < cb.J; ++j)
      m[j] = static_cast<int>(rng.uniform_index(cb.M));
    CVector y = scma_encode(m, cb);
    for (int k = 0; k < cb.K; ++k) y[k] += std::sqrt(s2) * rng.cnormal();
    const IVector hm = mpa_detect(y, cb, gains, s2, iters).hard;
    const IVector hl = ml_detect(y, cb, gains, s2);
    for (int j = 0; j < cb.J; ++j) {
      mpa_err += hm[j] != m[j];
      ml_err += hl[j] != m[j];
    }
  }
  const double denom = static_cast<double>(nvec) * cb.J;
  const double ser_mpa = mpa_err / denom, ser_ml = ml_err / denom;
  const double delta = std::abs(ser_mpa - ser_ml);

  long clean_fail = 0;
  for (uint64_t f = 0; f < 1000; ++f) {
    SubstreamRng r2(stream_key(6002, {f}));
    IVector m(cb.J);
    for (int j = 0; j < cb.J; ++j)
      m[j] = static_cast<int>(r2.uniform_index(cb.M));
    const CVector y = scma_encode(m, cb);
    if (mpa_detect(y, cb, gains, 0.01, iters).hard != m) ++clean_fail;
  }

  Outcome o;
  o.pass = delta <= 0.01 && clean_fail == 0;
  o.detail = "AWGN sigma^2 = 0.07, " + std::to_string(iters) +
             " detector iterations, " + std::to_string(nvec) +
             " paired vectors: SER mpa = " + fmt(ser_mpa, 4) + ", ml = " +
             fmt(ser_ml, 4) + ", |diff| = " + fmt(delta, 3) +
             " (bound 0.01); noiseless recovery " +
             std::to_string(1000 - clean_fail) + "/1000 (bound: all)";
  return o;
}

// ---------------------------------------------------------------- criterion 7

bool same_point(const PointReport& a, const PointReport& b) {
  return a.trials == b.trials && a.symbol_errors == b.symbol_errors &&
         a.bit_errors == b.bit_errors && a.block_errors == b.block_errors &&
         a.symbols_sent == b.symbols_sent && a.bits_sent == b.bits_sent &&
         a.blocks_sent == b.blocks_sent && a.ser == b.ser && a.ber == b.ber &&
         a.bler == b.bler && a.noise_var == b.noise_var;
}

Outcome criterion7() {
  SimConfig rs;
  rs.scenario = Scenario::UncodedRsScma;
  rs.codebook_path = kCodebook;
  rs.symbols_per_frame = 8;
  rs.ebn0_db = {6.0, 10.0};
  rs.min_errors = 200;
  rs.max_trials = 1000;
  rs.seed = 404;

  SimConfig scma = rs;
  scma.scenario = Scenario::ScmaBaseline;
  rs.alpha = 0.0;
  const SimReport r0 = run_sweep(rs);
  const SimReport rb = run_sweep(scma);

  SimConfig qp = rs;
  qp.scenario = Scenario::QpskBaseline;
  qp.codebook_path.clear();
  qp.resources = 4;
  rs.alpha = 1.0;
  const SimReport r1 = run_sweep(rs);
  const SimReport qb = run_sweep(qp);

  bool ok = r0.lambda == rb.lambda && r1.lambda == qb.lambda;
  for (size_t i = 0; i < r0.points.size(); ++i)
    ok = ok && same_point(r0.points[i], rb.points[i]);
  for (size_t i = 0; i < r1.points.size(); ++i)
    ok = ok && same_point(r1.points[i], qb.points[i]);

  Outcome o;
  o.pass = ok;
  o.detail =
      "alpha = 0 run equals the standalone sparse-code baseline and alpha = 1 "
      "equals the orthogonal QPSK baseline at 2 sweep points each: every "
      "trial, error and sent counter, rate and noise variance " +
      std::string(ok ? "identical" : "MISMATCHED") + " (same seed)";
  return o;
}

// ---------------------------------------------------------------- criterion 8

Outcome criterion8() {
  SimConfig cfg;
  cfg.scenario = Scenario::UncodedRsScma;
  cfg.codebook_path = kCodebook;
  cfg.alpha = 0.5;
  cfg.symbols_per_frame = 2;
  cfg.ebn0_db = {15.0};
  cfg.min_errors = 1000000000000LL;  // never stops early, exact frame count
  cfg.max_trials = 100000;
  cfg.seed = 909;

  cfg.sic = SicMode::Soft;
  const SimReport soft = run_sweep(cfg);
  cfg.sic = SicMode::Hard;
  const SimReport hard = run_sweep(cfg);
  const double ss = soft.points[0].ser, sh = hard.points[0].ser;

  Outcome o;
  o.pass = soft.points[0].trials == 100000 &&
           hard.points[0].trials == 100000 && ss <= sh;
  o.detail = "15 dB Rayleigh, alpha = 0.5, 10^5 paired frames: SER soft = " +
             fmt(ss, 5) + " <= SER hard = " + fmt(sh, 5) + " required (diff " +
             fmt(sh - ss, 3) + ")";
  return o;
}

// ---------------------------------------------------------------- criterion 9

Outcome criterion9() {
  SimConfig cfg;
  cfg.scenario = Scenario::CodedRsScma;
  cfg.codebook_path = kCodebook;
  cfg.common_code_path = kPeg120;
  cfg.private_code_path = kPeg120;
  cfg.ebn0_db = {12.0};
  cfg.min_errors = 1000000000000LL;  // fixed frame count keeps runs paired
  cfg.max_trials = 1700;             // 10200 blocks
  cfg.seed = 1201;

  cfg.receiver = ReceiverKind::Rx1;
  const SimReport r1 = run_sweep(cfg);
  cfg.receiver = ReceiverKind::Rx2;
  const SimReport r2 = run_sweep(cfg);
  const PointReport &p1 = r1.points[0], &p2 = r2.points[0];

  // the stated mid-SNR point saturates with this codebook, so the decoder
  // gain is also measured on the falling part of the curve and emitted
  SimConfig sh = cfg;
  sh.ebn0_db = {20.0, 22.0};
  sh.max_trials = 128;
  sh.receiver = ReceiverKind::Rx1;
  const SimReport s1 = run_sweep(sh);
  sh.receiver = ReceiverKind::Rx2;
  const SimReport s2 = run_sweep(sh);
  // SNR the plain receiver needs on its own log-linear 20-22 dB segment to
  // match the aided receiver's 22 dB block error rate, minus 22
  const double b1a = s1.points[0].bler, b1b = s1.points[1].bler;
  const double b2b = s2.points[1].bler;
  std::string gain = "not interpolable on this grid";
  if (b1a > b1b && b1b > 0.0 && b2b > 0.0) {
    const double t = (std::log10(b1a) - std::log10(b2b)) /
                     (std::log10(b1a) - std::log10(b1b));
    if (t >= 0.0 && t <= 2.0) gain = fmt(2.0 * t - 2.0, 3) + " dB";
  }

  Outcome o;
  o.pass = p2.bler <= p1.bler && p1.blocks_sent >= 10000 &&
           p2.blocks_sent >= 10000;
  o.detail = "12 dB Rayleigh, rate-120/256 codes, " +
             std::to_string(p1.blocks_sent) +
             " paired blocks: BLER rx2 = " + fmt(p2.bler, 5) +
             " <= rx1 = " + fmt(p1.bler, 5) + " required (BER " +
             fmt(p2.ber, 4) + " vs " + fmt(p1.ber, 4) +
             "); emitted decoder-aided gain on the 20-22 dB shoulder: " +
             gain + " (rx1 BLER " + fmt(b1a, 4) + "/" + fmt(b1b, 4) +
             ", rx2 " + fmt(s2.points[0].bler, 4) + "/" + fmt(b2b, 4) + ")";
  return o;
}

// --------------------------------------------------------------- criterion 10

Outcome criterion10() {
  const ParityCheckMatrix H = load_alist(kPeg120);
  const ParityCheckMatrix Hh = load_alist(kHamming);

  long syn_fail = 0;
  SubstreamRng rng(stream_key(10001, {0}));
  for (int i = 0; i < 10000; ++i) {
    Bits info(H.k);
    for (auto& b : info) b = rng.bit();
    if (!syndrome_check(encode(info, H), H)) ++syn_fail;
  }

  // all single errors on all codewords, flips carried by moderate-confidence
  // llrs of magnitude 2
  int ham_fail = 0;
  for (int w = 0; w < 16; ++w) {
    Bits info = {static_cast<uint8_t>(w >> 3 & 1),
                 static_cast<uint8_t>(w >> 2 & 1),
                 static_cast<uint8_t>(w >> 1 & 1),
                 static_cast<uint8_t>(w & 1)};
    const Bits cw = encode(info, Hh);
    for (int pos = 0; pos < 7; ++pos) {
      RVector llr(7);
      for (int i = 0; i < 7; ++i) llr[i] = cw[i] ? -2.0 : 2.0;
      llr[pos] = -llr[pos];
      if (bp_decode(llr, Hh, 50).hard != cw) ++ham_fail;
    }
  }

  int fx_fail = 0;
  for (int w = 0; w < 16; ++w) {
    Bits info = {static_cast<uint8_t>(w >> 3 & 1),
                 static_cast<uint8_t>(w >> 2 & 1),
                 static_cast<uint8_t>(w >> 1 & 1),
                 static_cast<uint8_t>(w & 1)};
    const Bits cw = encode(info, Hh);
    RVector llr(7);
    for (int i = 0; i < 7; ++i) llr[i] = cw[i] ? -LLR_MAX : LLR_MAX;
    const BpResult r = bp_decode(llr, Hh, 50);
    if (!r.converged || r.hard != cw) ++fx_fail;
  }
  for (uint64_t f = 0; f < 50; ++f) {
    SubstreamRng r2(stream_key(10002, {f}));
    Bits info(H.k);
    for (auto& b : info) b = r2.bit();
    const Bits cw = encode(info, H);
    RVector llr(H.n);
    for (int i = 0; i < H.n; ++i) llr[i] = cw[i] ? -LLR_MAX : LLR_MAX;
    const BpResult r = bp_decode(llr, H, 50);
    if (!r.converged || r.hard != cw) ++fx_fail;
  }

  Outcome o;
  o.pass = syn_fail == 0 && ham_fail == 0 && fx_fail == 0;
  o.detail = std::to_string(10000 - syn_fail) +
             "/10000 encodes satisfy every check; (7,4) single-error "
             "correction " +
             std::to_string(112 - ham_fail) +
             "/112 codeword-position cases; noiseless fixed point " +
             std::to_string(66 - fx_fail) + "/66 codewords (bound: all)";
  return o;
}

// --------------------------------------------------------------- criterion 11

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome criterion11() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "rsscma_acceptance";
  fs::create_directories(dir);

  const std::string ucfg = (dir / "uncoded.cfg").string();
  {
    std::ofstream f(ucfg, std::ios::binary);
    f << "schema = rsscma-sim-v1\nscenario = uncoded-rs-scma\n"
      << "codebook = " << kCodebook << "\nalpha = 0.5\n"
      << "symbols_per_frame = 4\nebn0_db = 5, 10\nchannel = rayleigh\n"
      << "min_errors = 30\nmax_trials = 500\nseed = 77\nper_user = true\n";
  }
  const std::string ccfg = (dir / "coded.cfg").string();
  {
    std::ofstream f(ccfg, std::ios::binary);
    f << "schema = rsscma-sim-v1\nscenario = coded-rs-scma\n"
      << "codebook = " << kCodebook << "\ncommon_code = " << kPeg120
      << "\nprivate_code = " << kPeg120 << "\nreceiver = rx1\n"
      << "ebn0_db = 12\nchannel = rayleigh\nmin_errors = 1\n"
      << "max_trials = 3\nseed = 3\n";
  }

  auto run = [&](const std::string& cfg, int threads, const std::string& out) {
    const std::string cmd = "\"" + kCli + "\" run --config \"" + cfg +
                            "\" --threads " + std::to_string(threads) +
                            " --out \"" + out + "\" > /dev/null 2>&1";
    return std::system(cmd.c_str());
  };

  bool rc_ok = true;
  rc_ok &= run(ucfg, 1, (dir / "u1.csv").string()) == 0;
  rc_ok &= run(ucfg, 2, (dir / "u2.csv").string()) == 0;
  rc_ok &= run(ucfg, 4, (dir / "u4.csv").string()) == 0;
  rc_ok &= run(ucfg, 2, (dir / "u2b.csv").string()) == 0;
  rc_ok &= run(ccfg, 1, (dir / "c1.csv").string()) == 0;
  rc_ok &= run(ccfg, 3, (dir / "c3.csv").string()) == 0;

  const std::string u1 = read_file((dir / "u1.csv").string());
  const bool uncoded_same = !u1.empty() &&
                            u1 == read_file((dir / "u2.csv").string()) &&
                            u1 == read_file((dir / "u4.csv").string()) &&
                            u1 == read_file((dir / "u2b.csv").string());
  const std::string c1 = read_file((dir / "c1.csv").string());
  const bool coded_same = !c1.empty() &&
                          c1 == read_file((dir / "c3.csv").string());

  Outcome o;
  o.pass = rc_ok && uncoded_same && coded_same;
  o.detail = "CLI reruns at thread counts 1/2/4: uncoded CSV (" +
             std::to_string(u1.size()) + " bytes) " +
             (uncoded_same ? "byte-identical" : "DIFFERS") +
             ", coded CSV (" + std::to_string(c1.size()) + " bytes) " +
             (coded_same ? "byte-identical" : "DIFFERS") +
             std::string(rc_ok ? "" : "; a CLI invocation failed");
  return o;
}

// --------------------------------------------------------------- criterion 12

Outcome criterion12() {
  SimConfig cfg;
  cfg.scenario = Scenario::UncodedRsScma;
  cfg.codebook_path = kCodebook;
  cfg.alpha = 0.0;
  cfg.symbols_per_frame = 8;
  cfg.ebn0_db = {0.0, 4.0, 8.0, 12.0};
  cfg.channel = ChannelKind::Awgn;
  cfg.min_errors = 100;
  cfg.max_trials = 200000;
  cfg.seed = 31;
  const SimReport r = run_sweep(cfg);

  bool monotone = true, enough = true;
  std::string sers;
  for (size_t i = 0; i < r.points.size(); ++i) {
    if (i > 0 && r.points[i].ser > r.points[i - 1].ser) monotone = false;
    if (r.points[i].symbol_errors < 100) enough = false;
    sers += (i ? ", " : "") + fmt(r.points[i].ser, 4);
  }

  Outcome o;
  o.pass = monotone && enough;
  o.detail = "AWGN alpha = 0 sweep over 0/4/8/12 dB: SER = " + sers +
             std::string(monotone ? " nonincreasing" : " NOT monotone") +
             ", every point has >= 100 symbol errors: " +
             (enough ? "yes" : "NO");
  return o;
}

Outcome run_criterion(int n) {
  switch (n) {
    case 1: return criterion1();
    case 2: return criterion2();
    case 3: return criterion3();
    case 4: return criterion4();
    case 5: return criterion5();
    case 6: return criterion6();
    case 7: return criterion7();
    case 8: return criterion8();
    case 9: return criterion9();
    case 10: return criterion10();
    case 11: return criterion11();
    case 12: return criterion12();
  }
  return {false, "unknown criterion"};
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> wanted;
  if (argc > 1) {
    const int n = std::atoi(argv[1]);
    if (n < 1 || n > 12) {
      std::fprintf(stderr, "usage: acceptance [criterion 1..12]\n");
      return 2;
    }
    wanted = {n};
  } else {
    for (int n = 1; n <= 12; ++n) wanted.push_back(n);
  }

  bool all_pass = true;
  for (int n : wanted) {
    Outcome o;
    try {
      o = run_criterion(n);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("unhandled error: ") + e.what();
    }
    std::printf("%s criterion %d: %s\n", o.pass ? "PASS" : "FAIL", n,
                o.detail.c_str());
    std::fflush(stdout);
    all_pass = all_pass && o.pass;
  }
  return all_pass ? 0 : 1;
}

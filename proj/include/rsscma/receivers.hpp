#pragma once

#include <vector>

#include "rsscma/channel.hpp"
#include "rsscma/ldpc.hpp"
#include "rsscma/qpsk.hpp"
#include "rsscma/scma.hpp"
#include "rsscma/types.hpp"

namespace rsscma {

// Where the subtracted common estimate comes from. Genie injects the true
// transmitted common symbols and exists only for the perfect-cancellation
// bound in tests; configs never select it.
enum class SicMode { Soft, Hard, Genie };

struct MpaOptions {
  int iterations = 3;
  // The detector noise term is the channel noise variance by default, i.e.
  // the residual common interference after SIC is treated as noise free.
  // This flag adds the receiver-side estimate of that residual power,
  // Pc * mean_k |h_k|^2 (1 - |soft_k|^2), to the noise term.
  bool empirical_residual_variance = false;
};

// One superposed channel use decoded by one user: equalize, demodulate the
// common layer, cancel it, then detect every private stream with the MPA.
struct SuperposedUseResult {
  IVector common_symbols;  // K hard QPSK symbol indices, pre-SIC
  Bits common_bits;        // the same decisions as 2K bits, (MSB, LSB) pairs
  LlrFrame common_llr;     // K x 2 equalized-domain LLRs
  CVector soft_common;     // what the SIC subtracted
  CVector residual;        // received vector after cancellation
  double residual_energy = 0.0;
  double mpa_noise_var = 0.0;  // noise term handed to the detector
  MpaResult mpa;               // private posteriors and hard symbols, J rows
};

// Soft mode follows the LLR -> bit probability -> expected symbol route;
// Hard remodulates the hard decisions; Genie needs true_common. With
// all-zero LLRs the soft estimate is exactly zero and the residual equals y
// bit for bit, so the detector runs on the raw signal.
SuperposedUseResult rx1_uncoded(const CVector& y, const CVector& h,
                                double noise_var, const PowerAllocation& pa,
                                const CodebookSet& cb, SicMode sic,
                                const MpaOptions& opt,
                                const CVector* true_common = nullptr);

// Tail channel use carrying only private streams at full power: straight
// MPA with gains h and the channel noise variance.
MpaResult rx1_private_only(const CVector& y, const CVector& h,
                           double noise_var, const CodebookSet& cb,
                           const MpaOptions& opt);

struct CommonOnlyUseResult {
  IVector symbols;  // K hard QPSK symbol indices
  Bits bits;        // 2K bits
  LlrFrame llr;
};

// Tail channel use carrying only the common streams at full power.
CommonOnlyUseResult rx1_common_only(const CVector& y, const CVector& h,
                                    double noise_var);

// One user's view of one coded block: n/2 received vectors with the
// matching per-use fading rows and the receiver noise level.
struct CodedBlockObservation {
  std::vector<CVector> y;
  std::vector<CVector> h;
  double noise_var = 0.0;
};

struct CodedRxOptions {
  PowerAllocation pa;
  MpaOptions mpa;
  int bp_iterations = 50;
};

// Per-user result of one coded block. Users beyond the first K carry no
// common stream; their common_info is empty and combined holds only the
// private information bits.
struct CodedUserOutput {
  Bits common_info;
  Bits private_info;
  Bits combined;  // common_info followed by private_info
  bool common_converged = true;
  bool private_converged = false;
  double sic_residual_energy = 0.0;  // summed over the block's uses
  int mpa_iterations = 0;            // summed over the block's uses
};

// Intermediate signals captured for test oracles; pass null to skip.
struct CodedRxTrace {
  RMatrix common_channel_llr;    // n x K, equalized-domain, transmission order
  RMatrix common_posterior_llr;  // n x K, decoder output (rx2 only)
  std::vector<CVector> soft_common;  // per use
  RVector private_llr;               // own user's stream fed to the decoder
  std::vector<RMatrix> mpa_posteriors;  // per use, J x M
};

// Soft bits for the SIC come straight from the QPSK demodulator; the common
// and private codewords are decoded only after the whole block is buffered.
CodedUserOutput rx1_coded(const CodedBlockObservation& obs, int own_user,
                          const CodebookSet& cb, const ParityCheckMatrix& Hc,
                          const ParityCheckMatrix& Hp,
                          const CodedRxOptions& opt,
                          CodedRxTrace* trace = nullptr);

// Soft bits for the SIC come from the common-code decoder posteriors: all K
// common streams are decoded first, their posterior LLR pairs regenerate
// the soft symbols, and only then do cancellation and private detection
// run. Hard common bits are taken from the own stream's decoder.
CodedUserOutput rx2_coded(const CodedBlockObservation& obs, int own_user,
                          const CodebookSet& cb, const ParityCheckMatrix& Hc,
                          const ParityCheckMatrix& Hp,
                          const CodedRxOptions& opt,
                          CodedRxTrace* trace = nullptr);

}  // namespace rsscma

#pragma once

#include "rsscma/rate_split.hpp"
#include "rsscma/rng.hpp"
#include "rsscma/types.hpp"

namespace rsscma {

// ZF divides by gains this small would blow up; such elements are erased
// (equalized value 0, infinite effective noise, so downstream LLRs are 0).
inline constexpr double ZF_GAIN_GUARD = 1e-6;

struct PowerAllocation {
  double Pc = 1.0;
  double Pp = 0.0;
};

// Pp is the complement 1 - Pc, so total transmit power stays normalized.
PowerAllocation make_power_allocation(double pc);

// Per-resource fading seen by every user plus the receiver noise level.
// Row j holds user j's gains; AWGN runs use all-ones gains.
struct ChannelRealization {
  CMatrix gains;  // J x K
  double noise_var = 0.0;
};

// One user's fading row, i.i.d. circularly symmetric unit-variance entries.
CVector rayleigh_gains(int K, SubstreamRng& rng);

// sqrt(Pc) * common + sqrt(Pp) * (sum of private signals)
CVector superpose(const CVector& common, const CVector& private_sum,
                  const PowerAllocation& pa);
CVector superpose(const CVector& common, const CMatrix& private_per_user,
                  const PowerAllocation& pa);

// y = h .* s + w, noise drawn element-wise from rng
CVector transmit(const CVector& s, const CVector& h, double noise_var,
                 SubstreamRng& rng);

struct ZfResult {
  CVector equalized;
  RVector noise_var;  // per element; +inf marks an erased element
};

ZfResult zf_equalize(const CVector& y, const CVector& h, double noise_var);

// y - sqrt(Pc) * h .* soft_common; with zero soft symbols this returns y
// bit for bit.
CVector soft_sic(const CVector& y, const CVector& h,
                 const PowerAllocation& pa, const CVector& soft_common);

// Remodulates the hard bit decisions (2K bits) and subtracts as soft_sic.
CVector hard_sic(const CVector& y, const CVector& h,
                 const PowerAllocation& pa, const Bits& hard_common_bits);

// Average energy per resource element and information bits per resource use
// for one frame; the two inputs of the Eb/N0 -> noise variance conversion.
struct EnergyAccounting {
  double energy_per_element = 0.0;
  double bits_per_resource_use = 0.0;
};

// Uncoded frame: phase 1 superposes K common QPSK symbols with the SCMA sum
// (energy Pc + Pp*J/K per element), phase 2 carries the longer stream alone
// at full power (energy 1 for common, J/K for private).
EnergyAccounting uncoded_energy_accounting(const SplitConfig& cfg,
                                           const PowerAllocation& pa,
                                           int private_bits_per_symbol);

// Coded frame: every use is superposed (common and private codewords have
// equal length n), and only the K*kc + J*kp information bits count.
EnergyAccounting coded_energy_accounting(int J, int K,
                                         const PowerAllocation& pa, int kc,
                                         int kp, int n);

double ebn0_to_noise_var(double ebn0_db, const EnergyAccounting& acc);
double ebn0_to_noise_var(double ebn0_db, const SplitConfig& cfg,
                         const PowerAllocation& pa,
                         int private_bits_per_symbol);

// Max-min-fair power factors versus Eb/N0, tabulated at 5 dB steps from 0 to
// 30; nearest point wins, ties go to the lower SNR entry.
PowerAllocation mmf_power_lookup(double ebn0_db);

}  // namespace rsscma

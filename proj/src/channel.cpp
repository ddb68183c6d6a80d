#include "rsscma/channel.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "rsscma/qpsk.hpp"

namespace rsscma {

namespace {

void check_same_size(const CVector& a, const CVector& b, const char* what) {
  if (a.size() != b.size())
    throw ValidationError(std::string(what) + ": size mismatch (" +
                          std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()) + ")");
}

}  // namespace

PowerAllocation make_power_allocation(double pc) {
  if (!(pc > 0.0 && pc <= 1.0))
    throw ValidationError("Pc must lie in (0, 1]");
  return {pc, 1.0 - pc};
}

CVector rayleigh_gains(int K, SubstreamRng& rng) {
  CVector h(K);
  for (int k = 0; k < K; ++k) h[k] = rng.cnormal();
  return h;
}

CVector superpose(const CVector& common, const CVector& private_sum,
                  const PowerAllocation& pa) {
  check_same_size(common, private_sum, "superpose");
  return std::sqrt(pa.Pc) * common + std::sqrt(pa.Pp) * private_sum;
}

CVector superpose(const CVector& common, const CMatrix& private_per_user,
                  const PowerAllocation& pa) {
  if (private_per_user.cols() != common.size())
    throw ValidationError("superpose: per-user signals must have K columns");
  const CVector sum = private_per_user.colwise().sum().transpose();
  return superpose(common, sum, pa);
}

CVector transmit(const CVector& s, const CVector& h, double noise_var,
                 SubstreamRng& rng) {
  check_same_size(s, h, "transmit");
  if (!(noise_var > 0.0) || !std::isfinite(noise_var))
    throw ValidationError("noise variance must be positive and finite");
  const double sigma = std::sqrt(noise_var);
  CVector y(s.size());
  for (Eigen::Index k = 0; k < s.size(); ++k)
    y[k] = h[k] * s[k] + sigma * rng.cnormal();
  return y;
}

ZfResult zf_equalize(const CVector& y, const CVector& h, double noise_var) {
  check_same_size(y, h, "zf_equalize");
  if (!(noise_var > 0.0))
    throw ValidationError("noise variance must be positive");
  ZfResult r;
  r.equalized.resize(y.size());
  r.noise_var.resize(y.size());
  for (Eigen::Index k = 0; k < y.size(); ++k) {
    const double mag2 = std::norm(h[k]);
    if (mag2 <= ZF_GAIN_GUARD * ZF_GAIN_GUARD) {
      r.equalized[k] = 0.0;
      r.noise_var[k] = std::numeric_limits<double>::infinity();
    } else {
      r.equalized[k] = y[k] / h[k];
      r.noise_var[k] = noise_var / mag2;
    }
  }
  return r;
}

CVector soft_sic(const CVector& y, const CVector& h,
                 const PowerAllocation& pa, const CVector& soft_common) {
  check_same_size(y, h, "soft_sic");
  check_same_size(y, soft_common, "soft_sic");
  const double a = std::sqrt(pa.Pc);
  CVector out(y.size());
  for (Eigen::Index k = 0; k < y.size(); ++k)
    out[k] = y[k] - a * (h[k] * soft_common[k]);
  return out;
}

CVector hard_sic(const CVector& y, const CVector& h,
                 const PowerAllocation& pa, const Bits& hard_common_bits) {
  if (static_cast<Eigen::Index>(hard_common_bits.size()) != 2 * y.size())
    throw ValidationError("hard_sic: expected 2K bits");
  return soft_sic(y, h, pa, qpsk_modulate(hard_common_bits));
}

EnergyAccounting uncoded_energy_accounting(const SplitConfig& cfg,
                                           const PowerAllocation& pa,
                                           int private_bits_per_symbol) {
  if (private_bits_per_symbol < 1)
    throw ValidationError("private bits per symbol must be positive");
  const double load = static_cast<double>(cfg.J) / cfg.K;
  const int p1 = std::min(cfg.lc, cfg.lp);
  const int p2 = std::abs(cfg.lc - cfg.lp);
  const int uses = std::max(cfg.lc, cfg.lp);
  if (uses == 0) throw ValidationError("frame has no channel uses");
  const double e1 = pa.Pc + pa.Pp * load;
  const double e2 = cfg.lc > cfg.lp ? 1.0 : load;
  EnergyAccounting acc;
  acc.energy_per_element = (p1 * e1 + p2 * e2) / uses;
  acc.bits_per_resource_use =
      static_cast<double>(2 * cfg.K * cfg.lc +
                          private_bits_per_symbol * cfg.J * cfg.lp) /
      (static_cast<double>(cfg.K) * uses);
  return acc;
}

EnergyAccounting coded_energy_accounting(int J, int K,
                                         const PowerAllocation& pa, int kc,
                                         int kp, int n) {
  if (K < 1 || J < K) throw ValidationError("need J >= K >= 1");
  if (kc < 1 || kp < 1 || n < 2 || n % 2 != 0)
    throw ValidationError("coded accounting needs kc, kp >= 1 and even n");
  EnergyAccounting acc;
  acc.energy_per_element = pa.Pc + pa.Pp * (static_cast<double>(J) / K);
  acc.bits_per_resource_use =
      static_cast<double>(K * kc + J * kp) /
      (static_cast<double>(K) * (n / 2));
  return acc;
}

double ebn0_to_noise_var(double ebn0_db, const EnergyAccounting& acc) {
  if (!(acc.energy_per_element > 0.0 && acc.bits_per_resource_use > 0.0))
    throw ValidationError("energy accounting must be positive");
  return acc.energy_per_element /
         (acc.bits_per_resource_use * std::pow(10.0, ebn0_db / 10.0));
}

double ebn0_to_noise_var(double ebn0_db, const SplitConfig& cfg,
                         const PowerAllocation& pa,
                         int private_bits_per_symbol) {
  return ebn0_to_noise_var(
      ebn0_db, uncoded_energy_accounting(cfg, pa, private_bits_per_symbol));
}

PowerAllocation mmf_power_lookup(double ebn0_db) {
  static constexpr double kDb[] = {0, 5, 10, 15, 20, 25, 30};
  static constexpr double kPc[] = {0.9098, 0.9114, 0.9156, 0.9252,
                                   0.9409, 0.9585, 0.9734};
  int best = 0;
  for (int i = 1; i < 7; ++i)
    if (std::abs(ebn0_db - kDb[i]) < std::abs(ebn0_db - kDb[best])) best = i;
  return make_power_allocation(kPc[best]);
}

}  // namespace rsscma

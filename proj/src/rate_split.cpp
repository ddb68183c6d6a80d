#include "rsscma/rate_split.hpp"

#include <cmath>
#include <cstdint>
#include <string>

namespace rsscma {

SplitConfig make_split_config(double alpha, int N, int J, int K) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw ValidationError("alpha must lie in [0, 1]");
  if (N <= 0) throw ValidationError("N must be positive");
  if (K < 1) throw ValidationError("K must be positive");
  if (J < K) throw ValidationError("J must be at least K");
  const double lc_real = alpha * N;
  const double lc_round = std::round(lc_real);
  if (std::abs(lc_real - lc_round) > 1e-9)
    throw ValidationError("alpha * N = " + std::to_string(lc_real) +
                          " is not a whole symbol count");
  SplitConfig cfg;
  cfg.alpha = alpha;
  cfg.N = N;
  cfg.J = J;
  cfg.K = K;
  cfg.Kc = K;
  cfg.Kp = J;
  cfg.lc = static_cast<int>(lc_round);
  cfg.lp = N - cfg.lc;
  return cfg;
}

PhasePlan phase_plan(const SplitConfig& cfg) {
  PhasePlan plan;
  plan.phase1_uses = std::min(cfg.lc, cfg.lp);
  plan.phase2_uses = std::abs(cfg.lc - cfg.lp);
  plan.lambda1 = static_cast<double>(cfg.Kc + cfg.Kp) / cfg.K;
  if (cfg.lc == cfg.lp) {
    plan.phase2_kind = PhaseTwoKind::None;
  } else if (cfg.lc > cfg.lp) {
    plan.phase2_kind = PhaseTwoKind::CommonOnly;
    plan.lambda2 = static_cast<double>(cfg.Kc) / cfg.K;
  } else {
    plan.phase2_kind = PhaseTwoKind::PrivateOnly;
    plan.lambda2 = static_cast<double>(cfg.Kp) / cfg.K;
  }
  return plan;
}

double overloading_factor(const SplitConfig& cfg) {
  const PhasePlan plan = phase_plan(cfg);
  if (plan.phase2_kind == PhaseTwoKind::None) return plan.lambda1;
  const double a = cfg.alpha;
  const int K_dom = plan.phase2_kind == PhaseTwoKind::CommonOnly ? cfg.Kc
                                                                 : cfg.Kp;
  const double w1 = std::min(a, 1.0 - a) * (cfg.Kc + cfg.Kp);
  const double w2 = std::abs(1.0 - 2.0 * a) * K_dom;
  if (w1 == 0.0) return *plan.lambda2;
  return (w1 * plan.lambda1 + w2 * *plan.lambda2) / (w1 + w2);
}

double complexity_ratio(int alphabet, int resource_degree) {
  if (alphabet < 2) throw ValidationError("alphabet size must be at least 2");
  if (resource_degree < 1)
    throw ValidationError("resource degree must be positive");
  const double md = std::pow(static_cast<double>(alphabet), resource_degree);
  return ((alphabet + 1) + md) / md;
}

SplitStreams split_messages(const std::vector<IVector>& users,
                            const SplitConfig& cfg) {
  if (static_cast<int>(users.size()) != cfg.J)
    throw ValidationError("expected " + std::to_string(cfg.J) +
                          " user streams, got " + std::to_string(users.size()));
  for (int j = 0; j < cfg.J; ++j) {
    const int want = j < cfg.K ? cfg.N : cfg.lp;
    if (users[j].size() != want)
      throw ValidationError("user " + std::to_string(j + 1) +
                            " stream has length " +
                            std::to_string(users[j].size()) + ", expected " +
                            std::to_string(want));
  }
  SplitStreams out;
  out.common.reserve(cfg.K);
  out.priv.reserve(cfg.J);
  for (int j = 0; j < cfg.K; ++j) {
    out.common.push_back(users[j].head(cfg.lc));
    out.priv.push_back(users[j].tail(cfg.lp));
  }
  for (int j = cfg.K; j < cfg.J; ++j) out.priv.push_back(users[j]);
  return out;
}

std::vector<IVector> combine_messages(const std::vector<IVector>& common_est,
                                      const std::vector<IVector>& private_est,
                                      const SplitConfig& cfg) {
  if (static_cast<int>(common_est.size()) != cfg.K)
    throw ValidationError("expected " + std::to_string(cfg.K) +
                          " common streams");
  if (static_cast<int>(private_est.size()) != cfg.J)
    throw ValidationError("expected " + std::to_string(cfg.J) +
                          " private streams");
  for (int j = 0; j < cfg.K; ++j)
    if (common_est[j].size() != cfg.lc)
      throw ValidationError("common stream " + std::to_string(j + 1) +
                            " has length " +
                            std::to_string(common_est[j].size()) +
                            ", expected " + std::to_string(cfg.lc));
  for (int j = 0; j < cfg.J; ++j)
    if (private_est[j].size() != cfg.lp)
      throw ValidationError("private stream " + std::to_string(j + 1) +
                            " has length " +
                            std::to_string(private_est[j].size()) +
                            ", expected " + std::to_string(cfg.lp));
  std::vector<IVector> out;
  out.reserve(cfg.J);
  for (int j = 0; j < cfg.K; ++j) {
    IVector s(cfg.N);
    s.head(cfg.lc) = common_est[j];
    s.tail(cfg.lp) = private_est[j];
    out.push_back(std::move(s));
  }
  for (int j = cfg.K; j < cfg.J; ++j) out.push_back(private_est[j]);
  return out;
}

}  // namespace rsscma

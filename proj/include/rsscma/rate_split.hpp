#pragma once

#include <optional>
#include <vector>

#include "rsscma/types.hpp"

namespace rsscma {

// Frame geometry for rate splitting. The first K of the J users split each
// N-symbol message into a common prefix of length lc = alpha*N and a private
// suffix of length lp = (1-alpha)*N; users K+1..J send private-only streams
// of length lp so every private stream spans the same channel uses.
struct SplitConfig {
  double alpha = 0.0;
  int N = 0;
  int J = 0;
  int K = 0;
  int Kc = 0;  // common symbols per superposed channel use (= K)
  int Kp = 0;  // private symbols per superposed channel use (= J)
  int lc = 0;
  int lp = 0;
};

// Rejects alpha outside [0,1] and (alpha, N) pairs where alpha*N is not an
// integer; stream lengths are whole symbol counts, never rounded.
SplitConfig make_split_config(double alpha, int N, int J, int K);

enum class PhaseTwoKind { None, CommonOnly, PrivateOnly };

// phase1 superposes common and private symbols; phase2 carries whichever
// stream type is longer, alone and at full power.
struct PhasePlan {
  int phase1_uses = 0;
  int phase2_uses = 0;
  PhaseTwoKind phase2_kind = PhaseTwoKind::None;
  double lambda1 = 0.0;                // (Kc+Kp)/K, both phases overloaded
  std::optional<double> lambda2;       // phase-2 factor, absent when lc == lp
};

PhasePlan phase_plan(const SplitConfig& cfg);

// Duration-weighted overloading factor across the two phases.
double overloading_factor(const SplitConfig& cfg);

// Detection cost of the overloaded scheme relative to plain MPA with the
// same resource degree: ((M+1) + M^degree) / M^degree.
double complexity_ratio(int alphabet, int resource_degree);

struct SplitStreams {
  std::vector<IVector> common;  // K streams of length lc
  std::vector<IVector> priv;    // J streams of length lp
};

// Users 1..K supply N symbols each, users K+1..J supply lp symbols each.
SplitStreams split_messages(const std::vector<IVector>& users,
                            const SplitConfig& cfg);

// Exact inverse of split_messages: users 1..K come back as common prefix
// followed by private suffix, users K+1..J as their private stream.
std::vector<IVector> combine_messages(const std::vector<IVector>& common_est,
                                      const std::vector<IVector>& private_est,
                                      const SplitConfig& cfg);

}  // namespace rsscma

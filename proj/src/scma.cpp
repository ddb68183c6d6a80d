#include "rsscma/scma.hpp"

#include <cmath>
#include <vector>

#include "rsscma/numeric.hpp"

namespace rsscma {

CVector scma_encode(const IVector& symbols, const CodebookSet& cb) {
  if (symbols.size() != cb.J)
    throw ValidationError("scma_encode needs one symbol per user");
  CVector s = CVector::Zero(cb.K);
  for (int j = 0; j < cb.J; ++j) {
    const int m = symbols[j];
    if (m < 0 || m >= cb.M)
      throw ValidationError("symbol index out of range for user " +
                            std::to_string(j + 1));
    for (int k : cb.indicator.resources_of_user[j])
      s[k] += cb.codewords[j](k, m);
  }
  return s;
}

namespace {

void check_detector_args(const CVector& y, const CodebookSet& cb,
                         const CMatrix& gains, double noise_var) {
  if (y.size() != cb.K) throw ValidationError("received vector has wrong size");
  if (gains.rows() != cb.J || gains.cols() != cb.K)
    throw ValidationError("gains must be J x K");
  if (!(noise_var > 0.0))
    throw ValidationError("noise variance must be positive");
}

int int_pow(int b, int e) {
  int r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

MpaResult mpa_detect(const CVector& y, const CodebookSet& cb,
                     const CMatrix& gains, double noise_var, int iterations) {
  check_detector_args(y, cb, gains, noise_var);
  if (iterations < 1) throw ValidationError("iterations must be positive");

  const int K = cb.K, J = cb.J, M = cb.M;
  const auto& ind = cb.indicator;
  const double inv2s = 1.0 / (2.0 * noise_var);

  // edge bookkeeping: one edge per (resource, local user slot)
  std::vector<int> edge_base(K + 1, 0);
  for (int k = 0; k < K; ++k)
    edge_base[k + 1] =
        edge_base[k] + static_cast<int>(ind.users_on_resource[k].size());
  const int n_edges = edge_base[K];
  std::vector<std::vector<std::pair<int, int>>> user_edges(J);  // (edge, k)
  for (int k = 0; k < K; ++k)
    for (size_t u = 0; u < ind.users_on_resource[k].size(); ++u)
      user_edges[ind.users_on_resource[k][u]].push_back(
          {edge_base[k] + static_cast<int>(u), k});

  // per-resource likelihood tables over all local symbol combinations
  std::vector<std::vector<double>> f(K);
  int max_combos = 1;
  for (int k = 0; k < K; ++k) {
    const auto& users = ind.users_on_resource[k];
    const int deg = static_cast<int>(users.size());
    const int combos = int_pow(M, deg);
    max_combos = std::max(max_combos, combos);
    f[k].resize(combos);
    // chip contribution of each (local user, symbol)
    std::vector<Complex> contrib(static_cast<size_t>(deg) * M);
    for (int u = 0; u < deg; ++u)
      for (int m = 0; m < M; ++m)
        contrib[static_cast<size_t>(u) * M + m] =
            gains(users[u], k) * cb.codewords[users[u]](k, m);
    for (int c = 0; c < combos; ++c) {
      Complex sum = 0.0;
      int rest = c;
      for (int u = 0; u < deg; ++u) {
        sum += contrib[static_cast<size_t>(u) * M + (rest % M)];
        rest /= M;
      }
      f[k][c] = -std::norm(y[k] - sum) * inv2s;
    }
  }

  const double uniform = -std::log(static_cast<double>(M));
  std::vector<double> Q(static_cast<size_t>(n_edges) * M, uniform);
  std::vector<double> R(static_cast<size_t>(n_edges) * M, 0.0);
  std::vector<double> T(max_combos);

  for (int it = 0; it < iterations; ++it) {
    // resource update: marginalize the local combination table
    for (int k = 0; k < K; ++k) {
      const auto& users = ind.users_on_resource[k];
      const int deg = static_cast<int>(users.size());
      const int combos = static_cast<int>(f[k].size());
      for (int c = 0; c < combos; ++c) {
        double t = f[k][c];
        int rest = c;
        for (int u = 0; u < deg; ++u) {
          t += Q[static_cast<size_t>(edge_base[k] + u) * M + (rest % M)];
          rest /= M;
        }
        T[c] = t;
      }
      int stride = 1;  // M^u
      for (int u = 0; u < deg; ++u) {
        double* r = &R[static_cast<size_t>(edge_base[k] + u) * M];
        const double* q = &Q[static_cast<size_t>(edge_base[k] + u) * M];
        const int hi_step = stride * M;
        for (int m = 0; m < M; ++m) {
          const int off = m * stride;
          double mx = -std::numeric_limits<double>::infinity();
          for (int hi = 0; hi < combos; hi += hi_step)
            for (int lo = 0; lo < stride; ++lo)
              mx = std::max(mx, T[hi + off + lo]);
          double s = 0.0;
          for (int hi = 0; hi < combos; hi += hi_step)
            for (int lo = 0; lo < stride; ++lo) {
              const double d = T[hi + off + lo] - mx;
              if (d > -40.0) s += std::exp(d);
            }
          r[m] = mx + std::log(s) - q[m];
        }
        stride *= M;
      }
    }
    // user update: combine extrinsic resource messages, then normalize
    for (int j = 0; j < J; ++j) {
      const auto& edges = user_edges[j];
      for (size_t a = 0; a < edges.size(); ++a) {
        double* q = &Q[static_cast<size_t>(edges[a].first) * M];
        for (int m = 0; m < M; ++m) {
          double v = 0.0;
          for (size_t b = 0; b < edges.size(); ++b)
            if (b != a) v += R[static_cast<size_t>(edges[b].first) * M + m];
          q[m] = v;
        }
        const double norm = log_sum_exp(std::span<const double>(q, M));
        for (int m = 0; m < M; ++m) q[m] -= norm;
      }
    }
  }

  MpaResult out;
  out.iterations = iterations;
  out.posteriors.resize(J, M);
  out.hard.resize(J);
  std::vector<double> acc(M);
  for (int j = 0; j < J; ++j) {
    for (int m = 0; m < M; ++m) {
      double v = 0.0;
      for (const auto& [e, k] : user_edges[j])
        v += R[static_cast<size_t>(e) * M + m];
      acc[m] = v;
    }
    double mx = acc[0];
    for (int m = 1; m < M; ++m) mx = std::max(mx, acc[m]);
    double tot = 0.0;
    for (int m = 0; m < M; ++m) {
      acc[m] = std::exp(acc[m] - mx);
      tot += acc[m];
    }
    int best = 0;
    for (int m = 0; m < M; ++m) {
      out.posteriors(j, m) = acc[m] / tot;
      if (acc[m] > acc[best]) best = m;
    }
    out.hard[j] = best;
  }
  return out;
}

IVector ml_detect(const CVector& y, const CodebookSet& cb,
                  const CMatrix& gains, [[maybe_unused]] double noise_var) {
  check_detector_args(y, cb, gains, noise_var);
  const int J = cb.J, M = cb.M;
  if (J * std::log2(static_cast<double>(M)) > 24.0 + 1e-9)
    throw ValidationError("ml_detect refuses more than 2^24 combinations");

  // depth-first enumeration; residual snapshots per level avoid any
  // subtract-then-restore rounding
  std::vector<CVector> resid(J + 1);
  resid[0] = y;
  IVector current(J), best(J);
  double best_metric = std::numeric_limits<double>::infinity();

  int j = 0;
  std::vector<int> m_at(J, 0);
  while (j >= 0) {
    if (m_at[j] == M) {
      --j;
      if (j >= 0) ++m_at[j];
      continue;
    }
    const int m = m_at[j];
    resid[j + 1] = resid[j];
    for (int k : cb.indicator.resources_of_user[j])
      resid[j + 1][k] -= gains(j, k) * cb.codewords[j](k, m);
    current[j] = m;
    if (j + 1 == J) {
      const double metric = resid[j + 1].squaredNorm();
      if (metric < best_metric) {  // strict: first (lowest) combination wins
        best_metric = metric;
        best = current;
      }
      ++m_at[j];
    } else {
      ++j;
      m_at[j] = 0;
    }
  }
  return best;
}

RVector posterior_to_bit_llr(const RVector& posterior) {
  const int M = static_cast<int>(posterior.size());
  if (M < 2 || (M & (M - 1)) != 0)
    throw ValidationError("posterior length must be a power of two");
  const int B = static_cast<int>(std::round(std::log2(M)));
  RVector llr(B);
  for (int b = 0; b < B; ++b) {
    double s0 = 0.0, s1 = 0.0;
    for (int m = 0; m < M; ++m) {
      if ((m >> (B - 1 - b)) & 1)
        s1 += posterior[m];
      else
        s0 += posterior[m];
    }
    llr[b] = clamp_llr(std::log(s0) - std::log(s1), LLR_MAX);
  }
  return llr;
}

}  // namespace rsscma

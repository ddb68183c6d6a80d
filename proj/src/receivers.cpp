#include "rsscma/receivers.hpp"

#include <cmath>

namespace rsscma {

namespace {

CMatrix replicated_gains(const CVector& h, double scale, int J) {
  CMatrix g(J, h.size());
  for (int j = 0; j < J; ++j) g.row(j) = scale * h.transpose();
  return g;
}

// Mean energy the private layer puts on each resource at unit power,
// straight from the codebook.
RVector private_load(const CodebookSet& cb) {
  RVector load = RVector::Zero(cb.K);
  for (int j = 0; j < cb.J; ++j)
    for (int m = 0; m < cb.M; ++m)
      load += cb.codewords[j].col(m).cwiseAbs2() / static_cast<double>(cb.M);
  return load;
}

// Demapper input for the common stream of a superposed use. The equalized
// signal is sqrt(Pc) c_k plus the private layer plus noise over h_k, so the
// unit constellation comes back after dividing by sqrt(Pc) and the private
// layer rides along as extra per-element noise. Erased elements keep their
// infinite variance and come out as zero llrs.
LlrFrame superposed_common_llr(const ZfResult& zf, const PowerAllocation& pa,
                               const RVector& load) {
  const CVector z = zf.equalized / std::sqrt(pa.Pc);
  RVector var(load.size());
  for (Eigen::Index k = 0; k < load.size(); ++k)
    var[k] = (zf.noise_var[k] + pa.Pp * load[k]) / pa.Pc;
  return qpsk_llr(z, var);
}

// Receiver-side estimate of the common interference left after soft SIC.
// The common symbol has unit energy and the soft symbol is its posterior
// mean, so the per-element residual power is |h_k|^2 (1 - |soft_k|^2).
double empirical_residual_var(const CVector& h, const CVector& soft,
                              double Pc) {
  double acc = 0.0;
  for (Eigen::Index k = 0; k < h.size(); ++k)
    acc += std::norm(h[k]) * std::max(0.0, 1.0 - std::norm(soft[k]));
  return Pc * acc / static_cast<double>(h.size());
}

void check_use_args(const CVector& y, const CVector& h, double noise_var,
                    int K) {
  if (K <= 0) throw ValidationError("empty channel use");
  if (y.size() != K) throw ValidationError("received vector length mismatch");
  if (h.size() != y.size())
    throw ValidationError("channel length does not match the received vector");
  if (!(noise_var > 0.0) || !std::isfinite(noise_var))
    throw ValidationError("noise variance must be positive and finite");
}

Bits info_bits(const Bits& codeword, const ParityCheckMatrix& H) {
  Bits out(H.info_cols.size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = codeword[H.info_cols[i]];
  return out;
}

void check_block_args(const CodedBlockObservation& obs, int own_user,
                      const CodebookSet& cb, const ParityCheckMatrix& Hc,
                      const ParityCheckMatrix& Hp, const CodedRxOptions& opt) {
  if (obs.y.empty() || obs.y.size() != obs.h.size())
    throw ValidationError("block observation needs matching y and h lists");
  if (Hc.n % 2 != 0 || Hc.n != Hp.n)
    throw ValidationError("common and private codes need one even length");
  if (static_cast<int>(obs.y.size()) * 2 != Hc.n)
    throw ValidationError("block length does not span the codeword");
  if (own_user < 0 || own_user >= cb.J)
    throw ValidationError("own_user outside the user range");
  if (cb.M != 4)
    throw ValidationError("coded private streams need a 4-ary codebook");
  for (size_t t = 0; t < obs.y.size(); ++t)
    check_use_args(obs.y[t], obs.h[t], obs.noise_var, cb.K);
  if (opt.bp_iterations < 1)
    throw ValidationError("bp_iterations must be at least 1");
}

struct PrivatePass {
  RVector llr;  // own user's coded private bits in transmission order
  double residual_energy = 0.0;
  int mpa_iterations = 0;
};

// Cancellation and private detection over a whole block once the per-use
// soft common symbols are known. Shared by both coded receivers.
PrivatePass private_pass(const CodedBlockObservation& obs,
                         const std::vector<CVector>& soft_common,
                         int own_user, const CodebookSet& cb,
                         const CodedRxOptions& opt, CodedRxTrace* trace) {
  const int uses = static_cast<int>(obs.y.size());
  PrivatePass out;
  out.llr.resize(2 * uses);
  for (int t = 0; t < uses; ++t) {
    const CVector resid = soft_sic(obs.y[t], obs.h[t], opt.pa, soft_common[t]);
    out.residual_energy += resid.squaredNorm();
    double noise = obs.noise_var;
    if (opt.mpa.empirical_residual_variance)
      noise += empirical_residual_var(obs.h[t], soft_common[t], opt.pa.Pc);
    const CMatrix gains =
        replicated_gains(obs.h[t], std::sqrt(opt.pa.Pp), cb.J);
    const MpaResult mpa =
        mpa_detect(resid, cb, gains, noise, opt.mpa.iterations);
    out.mpa_iterations += mpa.iterations;
    const RVector bit_llr = posterior_to_bit_llr(mpa.posteriors.row(own_user));
    out.llr[2 * t] = bit_llr[0];
    out.llr[2 * t + 1] = bit_llr[1];
    if (trace) trace->mpa_posteriors.push_back(mpa.posteriors);
  }
  if (trace) {
    trace->soft_common = soft_common;
    trace->private_llr = out.llr;
  }
  return out;
}

}  // namespace

SuperposedUseResult rx1_uncoded(const CVector& y, const CVector& h,
                                double noise_var, const PowerAllocation& pa,
                                const CodebookSet& cb, SicMode sic,
                                const MpaOptions& opt,
                                const CVector* true_common) {
  check_use_args(y, h, noise_var, cb.K);
  if (sic == SicMode::Genie &&
      (true_common == nullptr || true_common->size() != y.size()))
    throw ValidationError("genie SIC needs the true common symbols");

  SuperposedUseResult r;
  const ZfResult zf = zf_equalize(y, h, noise_var);
  r.common_llr = superposed_common_llr(zf, pa, private_load(cb));
  r.common_symbols.resize(cb.K);
  r.common_bits.resize(2 * cb.K);
  for (int k = 0; k < cb.K; ++k) {
    const int point = qpsk_hard(zf.equalized[k]);
    const auto bits = qpsk_bits_from_point(point);
    r.common_symbols[k] = qpsk_symbol_from_point(point);
    r.common_bits[2 * k] = bits[0];
    r.common_bits[2 * k + 1] = bits[1];
  }

  double extra_var = 0.0;
  switch (sic) {
    case SicMode::Soft:
      // Cancellation weighs the slicer against channel noise only. The
      // private perturbation is resolved by the detector afterwards, so
      // hedging against it here would distort the very signal the
      // detector needs; the reported llrs above do count it, because the
      // common stream on its own cannot resolve it.
      r.soft_common = soft_symbols(
          llr_to_bit_probabilities(qpsk_llr(zf.equalized, zf.noise_var)));
      r.residual = soft_sic(y, h, pa, r.soft_common);
      if (opt.empirical_residual_variance)
        extra_var = empirical_residual_var(h, r.soft_common, pa.Pc);
      break;
    case SicMode::Hard:
      r.soft_common = qpsk_modulate(r.common_bits);
      r.residual = hard_sic(y, h, pa, r.common_bits);
      break;
    case SicMode::Genie:
      r.soft_common = *true_common;
      r.residual = soft_sic(y, h, pa, r.soft_common);
      break;
  }
  r.residual_energy = r.residual.squaredNorm();
  r.mpa_noise_var = noise_var + extra_var;
  const CMatrix gains = replicated_gains(h, std::sqrt(pa.Pp), cb.J);
  r.mpa = mpa_detect(r.residual, cb, gains, r.mpa_noise_var, opt.iterations);
  return r;
}

MpaResult rx1_private_only(const CVector& y, const CVector& h,
                           double noise_var, const CodebookSet& cb,
                           const MpaOptions& opt) {
  check_use_args(y, h, noise_var, cb.K);
  const CMatrix gains = replicated_gains(h, 1.0, cb.J);
  return mpa_detect(y, cb, gains, noise_var, opt.iterations);
}

CommonOnlyUseResult rx1_common_only(const CVector& y, const CVector& h,
                                    double noise_var) {
  check_use_args(y, h, noise_var, static_cast<int>(y.size()));
  const ZfResult zf = zf_equalize(y, h, noise_var);
  CommonOnlyUseResult r;
  r.llr = qpsk_llr(zf.equalized, zf.noise_var);
  r.symbols.resize(y.size());
  r.bits.resize(2 * y.size());
  for (Eigen::Index k = 0; k < y.size(); ++k) {
    const int point = qpsk_hard(zf.equalized[k]);
    const auto bits = qpsk_bits_from_point(point);
    r.symbols[k] = qpsk_symbol_from_point(point);
    r.bits[2 * k] = bits[0];
    r.bits[2 * k + 1] = bits[1];
  }
  return r;
}

CodedUserOutput rx1_coded(const CodedBlockObservation& obs, int own_user,
                          const CodebookSet& cb, const ParityCheckMatrix& Hc,
                          const ParityCheckMatrix& Hp,
                          const CodedRxOptions& opt, CodedRxTrace* trace) {
  check_block_args(obs, own_user, cb, Hc, Hp, opt);
  const int uses = static_cast<int>(obs.y.size());
  const int K = cb.K;

  const RVector load = private_load(cb);
  RMatrix channel_llr(Hc.n, K);
  std::vector<CVector> soft_common(uses);
  for (int t = 0; t < uses; ++t) {
    const ZfResult zf = zf_equalize(obs.y[t], obs.h[t], obs.noise_var);
    const LlrFrame frame = superposed_common_llr(zf, opt.pa, load);
    for (int k = 0; k < K; ++k) {
      channel_llr(2 * t, k) = frame.llr(k, 0);
      channel_llr(2 * t + 1, k) = frame.llr(k, 1);
    }
    // cancellation trusts the slicer against channel noise only; the
    // private layer it would otherwise hedge against is resolved by the
    // detector on the residual
    soft_common[t] = soft_symbols(
        llr_to_bit_probabilities(qpsk_llr(zf.equalized, zf.noise_var)));
  }
  if (trace) trace->common_channel_llr = channel_llr;

  const PrivatePass pp =
      private_pass(obs, soft_common, own_user, cb, opt, trace);

  CodedUserOutput out;
  out.sic_residual_energy = pp.residual_energy;
  out.mpa_iterations = pp.mpa_iterations;
  if (own_user < K) {
    const BpResult bc =
        bp_decode(channel_llr.col(own_user), Hc, opt.bp_iterations);
    out.common_info = info_bits(bc.hard, Hc);
    out.common_converged = bc.converged;
  }
  const BpResult bp = bp_decode(pp.llr, Hp, opt.bp_iterations);
  out.private_info = info_bits(bp.hard, Hp);
  out.private_converged = bp.converged;
  out.combined = out.common_info;
  out.combined.insert(out.combined.end(), out.private_info.begin(),
                      out.private_info.end());
  return out;
}

CodedUserOutput rx2_coded(const CodedBlockObservation& obs, int own_user,
                          const CodebookSet& cb, const ParityCheckMatrix& Hc,
                          const ParityCheckMatrix& Hp,
                          const CodedRxOptions& opt, CodedRxTrace* trace) {
  check_block_args(obs, own_user, cb, Hc, Hp, opt);
  const int uses = static_cast<int>(obs.y.size());
  const int K = cb.K;

  const RVector load = private_load(cb);
  RMatrix channel_llr(Hc.n, K);
  for (int t = 0; t < uses; ++t) {
    const ZfResult zf = zf_equalize(obs.y[t], obs.h[t], obs.noise_var);
    const LlrFrame frame = superposed_common_llr(zf, opt.pa, load);
    for (int k = 0; k < K; ++k) {
      channel_llr(2 * t, k) = frame.llr(k, 0);
      channel_llr(2 * t + 1, k) = frame.llr(k, 1);
    }
  }

  CodedUserOutput out;
  RMatrix posterior_llr(Hc.n, K);
  for (int k = 0; k < K; ++k) {
    const BpResult bc = bp_decode(channel_llr.col(k), Hc, opt.bp_iterations);
    posterior_llr.col(k) = bc.posterior;
    if (k == own_user) {
      out.common_info = info_bits(bc.hard, Hc);
      out.common_converged = bc.converged;
    }
  }
  if (trace) {
    trace->common_channel_llr = channel_llr;
    trace->common_posterior_llr = posterior_llr;
  }

  std::vector<CVector> soft_common(uses);
  for (int t = 0; t < uses; ++t) {
    LlrFrame frame{RMatrix(K, 2), obs.noise_var};
    for (int k = 0; k < K; ++k) {
      frame.llr(k, 0) = posterior_llr(2 * t, k);
      frame.llr(k, 1) = posterior_llr(2 * t + 1, k);
    }
    soft_common[t] = soft_symbols(llr_to_bit_probabilities(frame));
  }

  const PrivatePass pp =
      private_pass(obs, soft_common, own_user, cb, opt, trace);
  out.sic_residual_energy = pp.residual_energy;
  out.mpa_iterations = pp.mpa_iterations;
  const BpResult bp = bp_decode(pp.llr, Hp, opt.bp_iterations);
  out.private_info = info_bits(bp.hard, Hp);
  out.private_converged = bp.converged;
  out.combined = out.common_info;
  out.combined.insert(out.combined.end(), out.private_info.begin(),
                      out.private_info.end());
  return out;
}

}  // namespace rsscma

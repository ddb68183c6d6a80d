#include "rsscma/qpsk.hpp"

#include <cmath>

#include "rsscma/numeric.hpp"

namespace rsscma {

namespace {
constexpr double INV_SQRT2 = 0.70710678118654752440;
}

const std::array<Complex, 4>& qpsk_points() {
  static const std::array<Complex, 4> pts = {
      Complex(INV_SQRT2, INV_SQRT2),
      Complex(-INV_SQRT2, INV_SQRT2),
      Complex(-INV_SQRT2, -INV_SQRT2),
      Complex(INV_SQRT2, -INV_SQRT2),
  };
  return pts;
}

int qpsk_point_from_bits(uint8_t msb, uint8_t lsb) {
  if (msb > 1 || lsb > 1) throw ValidationError("qpsk bits must be 0 or 1");
  // (0,0)->0 (0,1)->1 (1,1)->2 (1,0)->3
  return msb ? (lsb ? 2 : 3) : (lsb ? 1 : 0);
}

std::array<uint8_t, 2> qpsk_bits_from_point(int point) {
  static constexpr std::array<std::array<uint8_t, 2>, 4> table = {
      {{0, 0}, {0, 1}, {1, 1}, {1, 0}}};
  if (point < 0 || point > 3) throw ValidationError("qpsk point out of range");
  return table[point];
}

int qpsk_point_from_symbol(int m) {
  if (m < 0 || m > 3) throw ValidationError("qpsk symbol out of range");
  return qpsk_point_from_bits(static_cast<uint8_t>(m >> 1),
                              static_cast<uint8_t>(m & 1));
}

int qpsk_symbol_from_point(int point) {
  const auto b = qpsk_bits_from_point(point);
  return (b[0] << 1) | b[1];
}

CVector qpsk_modulate(const Bits& bits) {
  if (bits.size() % 2 != 0)
    throw ValidationError("qpsk_modulate needs an even number of bits");
  CVector out(bits.size() / 2);
  for (Eigen::Index i = 0; i < out.size(); ++i)
    out[i] = qpsk_points()[qpsk_point_from_bits(bits[2 * i], bits[2 * i + 1])];
  return out;
}

CVector qpsk_modulate_symbols(const IVector& symbols) {
  CVector out(symbols.size());
  for (Eigen::Index i = 0; i < out.size(); ++i)
    out[i] = qpsk_points()[qpsk_point_from_symbol(symbols[i])];
  return out;
}

std::array<double, 4> euclidean_distances(Complex y) {
  std::array<double, 4> d;
  const auto& pts = qpsk_points();
  for (int i = 0; i < 4; ++i) d[i] = std::norm(y - pts[i]);
  return d;
}

int qpsk_hard(Complex y) {
  const auto d = euclidean_distances(y);
  int best = 0;
  for (int i = 1; i < 4; ++i)
    if (d[i] < d[best]) best = i;
  return best;
}

namespace {

// Distances are negated symmetrically so that conjugating y (which swaps
// d0<->d3 and d1<->d2) negates the MSB LLR bit for bit, and flipping the
// real part negates the LSB LLR likewise.
void llr_row(Complex y, double noise_var, double* msb, double* lsb) {
  if (!(noise_var > 0.0))
    throw ValidationError("qpsk_llr needs a positive noise variance");
  const auto d = euclidean_distances(y);
  const double inv = 1.0 / (2.0 * noise_var);  // 0 when the variance is inf
  std::array<double, 4> t;
  for (int i = 0; i < 4; ++i) t[i] = -d[i] * inv;
  const double m0[2] = {t[0], t[1]}, m1[2] = {t[2], t[3]};
  const double l0[2] = {t[0], t[3]}, l1[2] = {t[1], t[2]};
  *msb = clamp_llr(log_sum_exp(m0) - log_sum_exp(m1), LLR_MAX);
  *lsb = clamp_llr(log_sum_exp(l0) - log_sum_exp(l1), LLR_MAX);
}

}  // namespace

LlrFrame qpsk_llr(const CVector& y, double noise_var) {
  LlrFrame f;
  f.noise_var = noise_var;
  f.llr.resize(y.size(), 2);
  for (Eigen::Index i = 0; i < y.size(); ++i)
    llr_row(y[i], noise_var, &f.llr(i, 0), &f.llr(i, 1));
  return f;
}

LlrFrame qpsk_llr(const CVector& y, const RVector& noise_var) {
  if (noise_var.size() != y.size())
    throw ValidationError("qpsk_llr variance vector size mismatch");
  LlrFrame f;
  f.noise_var = y.size() > 0 ? noise_var[0] : 0.0;
  f.llr.resize(y.size(), 2);
  for (Eigen::Index i = 0; i < y.size(); ++i)
    llr_row(y[i], noise_var[i], &f.llr(i, 0), &f.llr(i, 1));
  return f;
}

RMatrix llr_to_bit_probabilities(const LlrFrame& frame) {
  return frame.llr.unaryExpr([](double x) { return logistic(x); });
}

CVector soft_symbols(const RMatrix& p0) {
  if (p0.cols() != 2)
    throw ValidationError("soft_symbols expects a two-column matrix");
  const auto& pts = qpsk_points();
  CVector out(p0.rows());
  for (Eigen::Index i = 0; i < p0.rows(); ++i) {
    const double pm0 = p0(i, 0), pl0 = p0(i, 1);
    out[i] = pm0 * pl0 * pts[0] + pm0 * (1.0 - pl0) * pts[1] +
             (1.0 - pm0) * (1.0 - pl0) * pts[2] + (1.0 - pm0) * pl0 * pts[3];
  }
  return out;
}

}  // namespace rsscma

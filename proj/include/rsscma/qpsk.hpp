#pragma once

#include <array>

#include "rsscma/types.hpp"

namespace rsscma {

// Gray mapped unit energy QPSK. Point order:
//   p0 = (+1+j)/sqrt(2) <-> (0,0)    p1 = (-1+j)/sqrt(2) <-> (0,1)
//   p2 = (-1-j)/sqrt(2) <-> (1,1)    p3 = (+1-j)/sqrt(2) <-> (1,0)
// Bit columns are [MSB, LSB] everywhere. The MSB rides on the imaginary
// axis, the LSB on the real axis, so adjacent points differ in one bit.
const std::array<Complex, 4>& qpsk_points();

int qpsk_point_from_bits(uint8_t msb, uint8_t lsb);
std::array<uint8_t, 2> qpsk_bits_from_point(int point);

// 2-bit symbol index m maps to the point with bit pair (m>>1, m&1)
int qpsk_point_from_symbol(int m);
int qpsk_symbol_from_point(int point);

// bits.size() must be even; consumed as (MSB, LSB) pairs
CVector qpsk_modulate(const Bits& bits);
CVector qpsk_modulate_symbols(const IVector& symbols);

// squared Euclidean distance from y to each constellation point
std::array<double, 4> euclidean_distances(Complex y);

// nearest point, ties resolved toward the lowest point index
int qpsk_hard(Complex y);

struct LlrFrame {
  RMatrix llr;       // one row per element of y, col 0 = MSB, col 1 = LSB
  double noise_var;  // sigma^2 the frame was computed with; for the
                     // per-element overload this records the first entry
};

// Exact max-log-free LLRs, log-sum-exp over the two points of each bit
// partition, clamped to [-LLR_MAX, LLR_MAX]. Positive LLR favours bit 0.
LlrFrame qpsk_llr(const CVector& y, double noise_var);

// per-element noise variances; an infinite variance marks an erasure and
// yields exactly zero LLRs for that element
LlrFrame qpsk_llr(const CVector& y, const RVector& noise_var);

// P(bit = 0) = logistic(LLR), same layout as the frame
RMatrix llr_to_bit_probabilities(const LlrFrame& frame);

// posterior mean symbol per row of the bit-0 probability matrix
CVector soft_symbols(const RMatrix& p0);

}  // namespace rsscma

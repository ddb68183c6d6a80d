#pragma once

#include "rsscma/codebook.hpp"
#include "rsscma/types.hpp"

namespace rsscma {

// Superposed transmit vector for one channel use: the sum over users of the
// codeword column selected by that user's symbol.
CVector scma_encode(const IVector& symbols, const CodebookSet& cb);

struct MpaResult {
  RMatrix posteriors;  // J x M, every row sums to 1
  IVector hard;        // argmax per row, ties toward the lower symbol index
  int iterations = 0;
};

// Log-domain sum-product message passing on the codebook factor graph.
// gains carries one row per user (J x K); entries outside a user's support
// are ignored. Resource updates marginalize with the Jacobian logarithm, so
// the detector is exact on cycle-free graphs. Runs exactly `iterations`
// rounds of resource-then-user updates.
MpaResult mpa_detect(const CVector& y, const CodebookSet& cb,
                     const CMatrix& gains, double noise_var, int iterations);

// Exhaustive joint maximum likelihood detection over all M^J symbol
// combinations, refused above 2^24 combinations. Ties resolve to the
// lexicographically smallest symbol vector.
IVector ml_detect(const CVector& y, const CodebookSet& cb,
                  const CMatrix& gains, double noise_var);

// Per-bit LLRs from one normalized posterior row. M must be a power of two;
// bit b of symbol m is (m >> (B-1-b)) & 1 with B = log2(M), so bit 0 is the
// MSB. Positive LLR favours bit 0. Clamped to [-LLR_MAX, LLR_MAX].
RVector posterior_to_bit_llr(const RVector& posterior);

}  // namespace rsscma

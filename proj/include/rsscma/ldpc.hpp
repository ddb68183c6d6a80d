#pragma once

#include <string>
#include <vector>

#include "rsscma/types.hpp"

namespace rsscma {

// Binary parity-check code loaded from an alist file. H must have full row
// rank (enforced at load), so k = n - m. The systematic encoder tables come
// from one GF(2) Gauss-Jordan pass: info bits sit at the non-pivot columns,
// each pivot column is the XOR of a fixed subset of them.
struct ParityCheckMatrix {
  int n = 0;
  int m = 0;
  int k = 0;
  double rate = 0.0;
  std::vector<std::vector<int>> row_cols;  // per check node, ascending
  std::vector<std::vector<int>> col_rows;  // per variable node, ascending
  std::vector<int> info_cols;              // k non-pivot columns, ascending
  std::vector<int> pivot_cols;             // pivot column of each RREF row
  std::vector<std::vector<int>> parity_from_info;  // info indices per pivot

  // flat edge indexing used by the decoder, row-major over row_cols
  std::vector<int> row_ptr;   // m + 1
  std::vector<int> edge_col;  // edge -> variable
  std::vector<std::vector<int>> col_edges;  // variable -> edge ids
};

ParityCheckMatrix parse_alist(const std::string& text);
ParityCheckMatrix load_alist(const std::string& path);

// Padded canonical alist; save/load round-trips are byte-stable.
void save_alist(const ParityCheckMatrix& H, const std::string& path);

Bits encode(const Bits& info, const ParityCheckMatrix& H);

bool syndrome_check(const Bits& bits, const ParityCheckMatrix& H);

struct BpResult {
  RVector posterior;  // all n bits, clamped to [-LLR_MAX, LLR_MAX]
  Bits hard;
  bool converged = false;
  int iterations = 0;
};

// Flooding sum-product with the exact tanh rule. Stops as soon as the hard
// decisions satisfy every check; non-convergence is reported, not thrown.
BpResult bp_decode(const RVector& channel_llrs, const ParityCheckMatrix& H,
                   int max_iters);

}  // namespace rsscma

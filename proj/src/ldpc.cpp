#include "rsscma/ldpc.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "rsscma/numeric.hpp"

namespace rsscma {

namespace {

constexpr double kAtanhClamp = 1.0 - 1e-15;

std::vector<long> tokenize_ints(const std::string& text) {
  std::vector<long> out;
  const char* p = text.c_str();
  const char* end = p + text.size();
  while (p < end) {
    while (p < end && std::isspace(static_cast<unsigned char>(*p))) ++p;
    if (p >= end) break;
    char* next = nullptr;
    errno = 0;
    const long v = std::strtol(p, &next, 10);
    if (next == p || errno == ERANGE)
      throw ParseError("alist: bad token near '" +
                       std::string(p, std::min<size_t>(8, end - p)) + "'");
    out.push_back(v);
    p = next;
  }
  return out;
}

// Gauss-Jordan over GF(2) on word-packed rows; fills the encoder tables and
// rejects rank-deficient matrices.
void build_encoder(ParityCheckMatrix& H) {
  const int words = (H.n + 63) / 64;
  std::vector<std::vector<uint64_t>> rows(H.m,
                                          std::vector<uint64_t>(words, 0));
  for (int i = 0; i < H.m; ++i)
    for (int j : H.row_cols[i]) rows[i][j / 64] |= uint64_t{1} << (j % 64);

  const auto get = [&](int i, int j) {
    return (rows[i][j / 64] >> (j % 64)) & 1;
  };
  int r = 0;
  std::vector<int> pivot_of_row;
  std::vector<char> is_pivot(H.n, 0);
  for (int c = 0; c < H.n && r < H.m; ++c) {
    int piv = -1;
    for (int i = r; i < H.m; ++i)
      if (get(i, c)) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[r], rows[piv]);
    for (int i = 0; i < H.m; ++i)
      if (i != r && get(i, c))
        for (int w = 0; w < words; ++w) rows[i][w] ^= rows[r][w];
    pivot_of_row.push_back(c);
    is_pivot[c] = 1;
    ++r;
  }
  if (r < H.m)
    throw ValidationError("parity-check matrix is rank deficient: rank " +
                          std::to_string(r) + " < " + std::to_string(H.m) +
                          " rows");
  H.k = H.n - H.m;
  H.rate = static_cast<double>(H.k) / H.n;
  H.pivot_cols = pivot_of_row;
  H.info_cols.clear();
  std::vector<int> info_index(H.n, -1);
  for (int c = 0; c < H.n; ++c)
    if (!is_pivot[c]) {
      info_index[c] = static_cast<int>(H.info_cols.size());
      H.info_cols.push_back(c);
    }
  H.parity_from_info.assign(H.m, {});
  for (int i = 0; i < H.m; ++i)
    for (int c = 0; c < H.n; ++c)
      if (get(i, c) && !is_pivot[c])
        H.parity_from_info[i].push_back(info_index[c]);
}

void build_edges(ParityCheckMatrix& H) {
  H.row_ptr.assign(H.m + 1, 0);
  H.edge_col.clear();
  H.col_edges.assign(H.n, {});
  for (int i = 0; i < H.m; ++i) {
    H.row_ptr[i] = static_cast<int>(H.edge_col.size());
    for (int j : H.row_cols[i]) {
      H.col_edges[j].push_back(static_cast<int>(H.edge_col.size()));
      H.edge_col.push_back(j);
    }
  }
  H.row_ptr[H.m] = static_cast<int>(H.edge_col.size());
}

}  // namespace

ParityCheckMatrix parse_alist(const std::string& text) {
  const std::vector<long> tok = tokenize_ints(text);
  size_t pos = 0;
  const auto take = [&](const char* what) {
    if (pos >= tok.size())
      throw ParseError(std::string("alist: truncated before ") + what);
    return tok[pos++];
  };
  ParityCheckMatrix H;
  const long n = take("n");
  const long m = take("m");
  if (n < 1 || m < 1 || n > 1000000 || m > 1000000)
    throw ParseError("alist: invalid dimensions");
  H.n = static_cast<int>(n);
  H.m = static_cast<int>(m);
  const long max_col = take("max column degree");
  const long max_row = take("max row degree");
  if (max_col < 1 || max_row < 1) throw ParseError("alist: bad max degrees");
  std::vector<long> col_deg(H.n), row_deg(H.m);
  for (int j = 0; j < H.n; ++j) {
    col_deg[j] = take("column degree");
    if (col_deg[j] < 1 || col_deg[j] > max_col)
      throw ParseError("alist: column " + std::to_string(j + 1) +
                       " degree out of range");
  }
  for (int i = 0; i < H.m; ++i) {
    row_deg[i] = take("row degree");
    if (row_deg[i] < 1 || row_deg[i] > max_row)
      throw ParseError("alist: row " + std::to_string(i + 1) +
                       " degree out of range");
  }
  // entry lists; tolerate both padded and unpadded files by consuming the
  // declared count of nonzero indices then any zero padding
  const auto take_list = [&](long deg, long max_deg, long limit,
                             const char* what, int owner) {
    std::vector<int> idx;
    for (long t = 0; t < deg; ++t) {
      const long v = take(what);
      if (v < 1 || v > limit)
        throw ParseError(std::string("alist: ") + what + " list " +
                         std::to_string(owner + 1) + " has index " +
                         std::to_string(v) + " out of range");
      idx.push_back(static_cast<int>(v - 1));
    }
    for (long t = deg; t < max_deg && pos < tok.size() && tok[pos] == 0; ++t)
      ++pos;
    std::sort(idx.begin(), idx.end());
    if (std::adjacent_find(idx.begin(), idx.end()) != idx.end())
      throw ParseError(std::string("alist: duplicate index in ") + what +
                       " list " + std::to_string(owner + 1));
    return idx;
  };
  std::vector<std::vector<int>> col_lists(H.n);
  for (int j = 0; j < H.n; ++j)
    col_lists[j] = take_list(col_deg[j], max_col, H.m, "column", j);
  H.row_cols.assign(H.m, {});
  for (int i = 0; i < H.m; ++i)
    H.row_cols[i] = take_list(row_deg[i], max_row, H.n, "row", i);
  if (pos != tok.size())
    throw ParseError("alist: trailing content after entry lists");

  // the column and row lists must describe the same matrix
  std::vector<std::vector<int>> col_check(H.n);
  for (int i = 0; i < H.m; ++i)
    for (int j : H.row_cols[i]) col_check[j].push_back(i);
  for (int j = 0; j < H.n; ++j)
    if (col_check[j] != col_lists[j])
      throw ParseError("alist: row and column lists disagree at column " +
                       std::to_string(j + 1));
  H.col_rows = std::move(col_lists);

  build_encoder(H);
  build_edges(H);
  return H;
}

ParityCheckMatrix load_alist(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open alist file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_alist(ss.str());
}

void save_alist(const ParityCheckMatrix& H, const std::string& path) {
  size_t max_col = 0, max_row = 0;
  for (const auto& c : H.col_rows) max_col = std::max(max_col, c.size());
  for (const auto& r : H.row_cols) max_row = std::max(max_row, r.size());
  std::ostringstream out;
  out << H.n << " " << H.m << "\n" << max_col << " " << max_row << "\n";
  for (int j = 0; j < H.n; ++j)
    out << H.col_rows[j].size() << (j + 1 < H.n ? " " : "\n");
  for (int i = 0; i < H.m; ++i)
    out << H.row_cols[i].size() << (i + 1 < H.m ? " " : "\n");
  const auto emit = [&](const std::vector<int>& idx, size_t width) {
    for (size_t t = 0; t < width; ++t) {
      if (t) out << " ";
      out << (t < idx.size() ? idx[t] + 1 : 0);
    }
    out << "\n";
  };
  for (const auto& c : H.col_rows) emit(c, max_col);
  for (const auto& r : H.row_cols) emit(r, max_row);
  std::ofstream f(path);
  if (!f) throw IoError("cannot write alist file: " + path);
  f << out.str();
  if (!f) throw IoError("write failed: " + path);
}

Bits encode(const Bits& info, const ParityCheckMatrix& H) {
  if (static_cast<int>(info.size()) != H.k)
    throw ValidationError("encode: expected " + std::to_string(H.k) +
                          " information bits, got " +
                          std::to_string(info.size()));
  Bits c(H.n, 0);
  for (int t = 0; t < H.k; ++t) {
    if (info[t] > 1) throw ValidationError("encode: bits must be 0 or 1");
    c[H.info_cols[t]] = info[t];
  }
  for (int i = 0; i < H.m; ++i) {
    uint8_t acc = 0;
    for (int t : H.parity_from_info[i]) acc ^= info[t];
    c[H.pivot_cols[i]] = acc;
  }
  return c;
}

bool syndrome_check(const Bits& bits, const ParityCheckMatrix& H) {
  if (static_cast<int>(bits.size()) != H.n)
    throw ValidationError("syndrome_check: expected " + std::to_string(H.n) +
                          " bits");
  for (int i = 0; i < H.m; ++i) {
    uint8_t acc = 0;
    for (int j : H.row_cols[i]) acc ^= bits[j];
    if (acc & 1) return false;
  }
  return true;
}

BpResult bp_decode(const RVector& channel_llrs, const ParityCheckMatrix& H,
                   int max_iters) {
  if (channel_llrs.size() != H.n)
    throw ValidationError("bp_decode: expected " + std::to_string(H.n) +
                          " channel LLRs");
  if (max_iters < 1) throw ValidationError("bp_decode: max_iters must be >= 1");
  if (!channel_llrs.allFinite())
    throw ValidationError("bp_decode: channel LLRs must be finite");

  const int edges = static_cast<int>(H.edge_col.size());
  std::vector<double> v2c(edges), c2v(edges), tanh_buf, pref, suf;
  for (int e = 0; e < edges; ++e) v2c[e] = channel_llrs[H.edge_col[e]];

  BpResult res;
  res.posterior.resize(H.n);
  res.hard.assign(H.n, 0);
  for (int iter = 1; iter <= max_iters; ++iter) {
    res.iterations = iter;
    for (int i = 0; i < H.m; ++i) {
      const int lo = H.row_ptr[i], hi = H.row_ptr[i + 1], d = hi - lo;
      tanh_buf.resize(d);
      pref.resize(d + 1);
      suf.resize(d + 1);
      for (int a = 0; a < d; ++a)
        tanh_buf[a] = std::tanh(clamp_llr(v2c[lo + a], LLR_MAX) * 0.5);
      pref[0] = 1.0;
      for (int a = 0; a < d; ++a) pref[a + 1] = pref[a] * tanh_buf[a];
      suf[d] = 1.0;
      for (int a = d - 1; a >= 0; --a) suf[a] = tanh_buf[a] * suf[a + 1];
      for (int a = 0; a < d; ++a) {
        const double p = std::clamp(pref[a] * suf[a + 1], -kAtanhClamp,
                                    kAtanhClamp);
        c2v[lo + a] = 2.0 * std::atanh(p);
      }
    }
    for (int j = 0; j < H.n; ++j) {
      double total = channel_llrs[j];
      for (int e : H.col_edges[j]) total += c2v[e];
      res.posterior[j] = clamp_llr(total, LLR_MAX);
      res.hard[j] = total < 0.0 ? 1 : 0;
      for (int e : H.col_edges[j]) v2c[e] = total - c2v[e];
    }
    if (syndrome_check(res.hard, H)) {
      res.converged = true;
      break;
    }
  }
  return res;
}

}  // namespace rsscma

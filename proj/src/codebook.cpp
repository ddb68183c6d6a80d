#include "rsscma/codebook.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>

namespace rsscma {

IndicatorMatrix make_indicator(const IMatrix& F) {
  IndicatorMatrix ind;
  ind.F = F;
  const int K = static_cast<int>(F.rows());
  const int J = static_cast<int>(F.cols());
  if (K < 1 || J < 1)
    throw ValidationError("indicator matrix must be non-empty");
  ind.users_on_resource.resize(K);
  ind.resources_of_user.resize(J);
  for (int k = 0; k < K; ++k)
    for (int j = 0; j < J; ++j) {
      const int v = F(k, j);
      if (v != 0 && v != 1)
        throw ValidationError("indicator entries must be 0 or 1");
      if (v) {
        ind.users_on_resource[k].push_back(j);
        ind.resources_of_user[j].push_back(k);
      }
    }
  ind.user_degree = static_cast<int>(ind.resources_of_user[0].size());
  ind.resource_degree = static_cast<int>(ind.users_on_resource[0].size());
  if (ind.user_degree < 1)
    throw ValidationError("every user must occupy at least one resource");
  if (ind.resource_degree < 1)
    throw ValidationError("every resource must carry at least one user");
  for (int j = 0; j < J; ++j)
    if (static_cast<int>(ind.resources_of_user[j].size()) != ind.user_degree)
      throw ValidationError("column weights are not uniform (user " +
                            std::to_string(j + 1) + ")");
  for (int k = 0; k < K; ++k)
    if (static_cast<int>(ind.users_on_resource[k].size()) != ind.resource_degree)
      throw ValidationError("row weights are not uniform (resource " +
                            std::to_string(k + 1) + ")");
  return ind;
}

CodebookSummary validate_codebook(const CodebookSet& cb) {
  if (cb.K < 1 || cb.J < 1)
    throw ValidationError("codebook dimensions must be positive");
  if (cb.M < 2) throw ValidationError("alphabet size must be at least 2");
  if (cb.indicator.F.rows() != cb.K || cb.indicator.F.cols() != cb.J)
    throw ValidationError("indicator dimensions disagree with the header");
  if (static_cast<int>(cb.codewords.size()) != cb.J)
    throw ValidationError("codeword table does not cover every user");

  CodebookSummary s;
  s.K = cb.K;
  s.J = cb.J;
  s.M = cb.M;
  s.user_degree = cb.indicator.user_degree;
  s.resource_degree = cb.indicator.resource_degree;
  s.user_energy = RVector::Zero(cb.J);
  s.resource_energy = RVector::Zero(cb.K);

  for (int j = 0; j < cb.J; ++j) {
    const CMatrix& W = cb.codewords[j];
    if (W.rows() != cb.K || W.cols() != cb.M)
      throw ValidationError("codeword matrix of user " + std::to_string(j + 1) +
                            " has wrong dimensions");
    double energy = 0.0;
    for (int m = 0; m < cb.M; ++m)
      for (int k = 0; k < cb.K; ++k) {
        const double e = std::norm(W(k, m));
        if (cb.indicator.F(k, j) == 0 && e != 0.0)
          throw ValidationError(
              "user " + std::to_string(j + 1) + " codeword " +
              std::to_string(m + 1) +
              " has support outside its indicator column");
        energy += e;
        s.resource_energy[k] += e / cb.M;
      }
    energy /= cb.M;
    s.user_energy[j] = energy;
    if (std::abs(energy - 1.0) > 1e-9)
      throw ValidationError("user " + std::to_string(j + 1) +
                            " average codeword energy " +
                            std::to_string(energy) + " is not 1");
    for (int a = 0; a < cb.M; ++a)
      for (int b = a + 1; b < cb.M; ++b)
        if (W.col(a) == W.col(b))
          throw ValidationError("user " + std::to_string(j + 1) +
                                " has identical codewords " +
                                std::to_string(a + 1) + " and " +
                                std::to_string(b + 1));
  }
  return s;
}

namespace {

std::vector<std::string> tokenize(std::istream& in) {
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
  }
  return tokens;
}

int take_int(const std::vector<std::string>& t, size_t& pos, const char* what) {
  if (pos >= t.size())
    throw ParseError(std::string("unexpected end of input reading ") + what);
  const std::string& s = t[pos++];
  char* end = nullptr;
  errno = 0;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (errno != 0 || end == s.c_str() || *end != '\0')
    throw ParseError(std::string("bad integer '") + s + "' reading " + what);
  return static_cast<int>(v);
}

double take_double(const std::vector<std::string>& t, size_t& pos,
                   const char* what) {
  if (pos >= t.size())
    throw ParseError(std::string("unexpected end of input reading ") + what);
  const std::string& s = t[pos++];
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (errno != 0 || end == s.c_str() || *end != '\0')
    throw ParseError(std::string("bad number '") + s + "' reading " + what);
  return v;
}

}  // namespace

CodebookSet parse_codebook_set(std::istream& in) {
  const std::vector<std::string> tokens = tokenize(in);
  size_t pos = 0;

  CodebookSet cb;
  cb.K = take_int(tokens, pos, "K");
  cb.J = take_int(tokens, pos, "J");
  cb.M = take_int(tokens, pos, "M");
  if (cb.K < 1 || cb.J < 1 || cb.M < 1)
    throw ParseError("header dimensions must be positive");

  IMatrix F(cb.K, cb.J);
  for (int k = 0; k < cb.K; ++k)
    for (int j = 0; j < cb.J; ++j)
      F(k, j) = take_int(tokens, pos, "indicator entry");
  cb.indicator = make_indicator(F);

  cb.codewords.resize(cb.J);
  for (int j = 0; j < cb.J; ++j) {
    cb.codewords[j].resize(cb.K, cb.M);
    for (int m = 0; m < cb.M; ++m)
      for (int k = 0; k < cb.K; ++k) {
        const double re = take_double(tokens, pos, "codeword entry");
        const double im = take_double(tokens, pos, "codeword entry");
        cb.codewords[j](k, m) = Complex(re, im);
      }
  }
  if (pos != tokens.size())
    throw ParseError("trailing content after the last codeword entry");
  return cb;
}

CodebookSet load_codebook_set(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open codebook file '" + path + "'");
  CodebookSet cb = parse_codebook_set(f);
  validate_codebook(cb);
  return cb;
}

}  // namespace rsscma

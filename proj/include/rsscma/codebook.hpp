#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rsscma/types.hpp"

namespace rsscma {

// Binary resource-user incidence structure of an SCMA code. Both degree
// profiles must be uniform: every user occupies user_degree resources and
// every resource carries resource_degree users.
struct IndicatorMatrix {
  IMatrix F;  // K x J, entries 0/1
  int user_degree = 0;
  int resource_degree = 0;
  std::vector<std::vector<int>> users_on_resource;  // size K, ascending
  std::vector<std::vector<int>> resources_of_user;  // size J, ascending
};

IndicatorMatrix make_indicator(const IMatrix& F);

// A full codebook set: per user a K x M complex matrix whose column m is the
// codeword for symbol m. Codeword supports must match the indicator column
// and the average codeword energy per user must be 1 within 1e-9.
struct CodebookSet {
  int K = 0;
  int J = 0;
  int M = 0;
  IndicatorMatrix indicator;
  std::vector<CMatrix> codewords;
};

struct CodebookSummary {
  int K = 0, J = 0, M = 0;
  int user_degree = 0, resource_degree = 0;
  RVector user_energy;       // average codeword energy per user
  RVector resource_energy;   // summed per-chip average energy per resource
};

// Structural and numeric checks; throws ValidationError with a reason.
CodebookSummary validate_codebook(const CodebookSet& cb);

// Text format, '#' starts a comment, tokens separated by whitespace:
//   K J M
//   K rows of J indicator entries (0/1)
//   for each user, M codewords, each K lines of "re im"
// Anything after the last codeword entry is an error.
CodebookSet parse_codebook_set(std::istream& in);

// Reads and validates; IoError if the file cannot be opened.
CodebookSet load_codebook_set(const std::string& path);

}  // namespace rsscma

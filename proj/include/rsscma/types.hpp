#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace rsscma {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;
using IVector = Eigen::VectorXi;
using IMatrix = Eigen::MatrixXi;
using Bits = std::vector<uint8_t>;

// Saturation bound for every log-likelihood ratio produced by this library.
inline constexpr double LLR_MAX = 40.0;

// Thrown when a file or text blob does not follow its documented grammar.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when well-formed input violates a structural or numeric contract.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a file cannot be opened or written.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rsscma

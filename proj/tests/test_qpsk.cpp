#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <random>

#include "rsscma/numeric.hpp"
#include "rsscma/qpsk.hpp"

using namespace rsscma;

namespace {

// deliberately naive four-term reference, kept independent of the library
void naive_llr(Complex y, double s2, double* msb, double* lsb) {
  const auto& p = qpsk_points();
  double e[4];
  for (int i = 0; i < 4; ++i) e[i] = std::exp(-std::norm(y - p[i]) / (2 * s2));
  const double clamp = LLR_MAX;
  *msb = std::min(std::max(std::log((e[0] + e[1]) / (e[2] + e[3])), -clamp), clamp);
  *lsb = std::min(std::max(std::log((e[0] + e[3]) / (e[1] + e[2])), -clamp), clamp);
}

}  // namespace

TEST_CASE("bit map and modulation") {
  const double r = std::sqrt(0.5);  // correctly rounded, matches the library
  CHECK(qpsk_points()[0] == Complex(r, r));
  CHECK(qpsk_point_from_bits(0, 0) == 0);
  CHECK(qpsk_point_from_bits(0, 1) == 1);
  CHECK(qpsk_point_from_bits(1, 1) == 2);
  CHECK(qpsk_point_from_bits(1, 0) == 3);
  for (int p = 0; p < 4; ++p) {
    const auto b = qpsk_bits_from_point(p);
    CHECK(qpsk_point_from_bits(b[0], b[1]) == p);
    CHECK(qpsk_point_from_symbol(qpsk_symbol_from_point(p)) == p);
  }
  // Gray property: adjacent points differ in exactly one bit
  for (int p = 0; p < 4; ++p) {
    const auto a = qpsk_bits_from_point(p);
    const auto b = qpsk_bits_from_point((p + 1) % 4);
    CHECK(((a[0] != b[0]) + (a[1] != b[1])) == 1);
  }
  const CVector s = qpsk_modulate({0, 0, 1, 1, 1, 0});
  CHECK(s[0] == Complex(r, r));
  CHECK(s[1] == Complex(-r, -r));
  CHECK(s[2] == Complex(r, -r));
  CHECK_THROWS_AS(qpsk_modulate({0, 1, 1}), ValidationError);
}

TEST_CASE("distances at a constellation point") {
  const auto d = euclidean_distances(qpsk_points()[0]);
  CHECK(d[0] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(d[1] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(d[2] == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(d[3] == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("hard decision ties go to the lowest index") {
  CHECK(qpsk_hard(Complex(0.3, 0.0)) == 0);   // tie between p0 and p3
  CHECK(qpsk_hard(Complex(0.0, 0.0)) == 0);   // four-way tie
  CHECK(qpsk_hard(Complex(-0.2, 0.0)) == 1);  // tie between p1 and p2
  CHECK(qpsk_hard(Complex(0.4, -0.3)) == 3);
}

TEST_CASE("frozen llr values") {
  // columns: y_re y_im sigma2 llr_msb llr_lsb
  const double cases[][5] = {
      {0.31000000000000000, -0.77000000000000000, 0.63000000000000000,
       -1.7284832429004495, 0.69588286402485629},
      {-1.2000000000000000, 0.050000000000000000, 0.21000000000000000,
       0.33671751485073692, -8.0812203564176860},
      {0.020000000000000000, 0.013000000000000000, 2.4000000000000000,
       0.0076603234628542648, 0.011785113019775792},
      {0.90000000000000000, 0.65000000000000000, 0.080000000000000000,
       11.490485194281397, 15.909902576697319},
      {-0.40000000000000000, -1.9000000000000000, 1.7000000000000000,
       -1.5805916285346356, -0.33275613232308119},
  };
  for (const auto& c : cases) {
    CVector y(1);
    y[0] = Complex(c[0], c[1]);
    const LlrFrame f = qpsk_llr(y, c[2]);
    CHECK(f.llr(0, 0) == doctest::Approx(c[3]).epsilon(1e-12));
    CHECK(f.llr(0, 1) == doctest::Approx(c[4]).epsilon(1e-12));
  }
}

TEST_CASE("log-sum-exp llr matches the naive four-term form") {
  std::mt19937_64 gen(7041);
  std::uniform_real_distribution<double> re(-2.5, 2.5), s2(0.05, 2.0);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const Complex y(re(gen), re(gen));
    const double v = s2(gen);
    double nm, nl;
    naive_llr(y, v, &nm, &nl);
    CVector yy(1);
    yy[0] = y;
    const LlrFrame f = qpsk_llr(yy, v);
    worst = std::max(worst, std::abs(f.llr(0, 0) - nm));
    worst = std::max(worst, std::abs(f.llr(0, 1) - nl));
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("llr sign symmetry is exact") {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> re(-2.0, 2.0), s2(0.1, 1.5);
  for (int i = 0; i < 500; ++i) {
    const Complex y(re(gen), re(gen));
    const double v = s2(gen);
    CVector a(1), b(1), c(1);
    a[0] = y;
    b[0] = std::conj(y);                  // flips the imaginary part
    c[0] = Complex(-y.real(), y.imag());  // flips the real part
    const LlrFrame fa = qpsk_llr(a, v);
    const LlrFrame fb = qpsk_llr(b, v);
    const LlrFrame fc = qpsk_llr(c, v);
    CHECK(fb.llr(0, 0) == -fa.llr(0, 0));
    CHECK(fb.llr(0, 1) == fa.llr(0, 1));
    CHECK(fc.llr(0, 0) == fa.llr(0, 0));
    CHECK(fc.llr(0, 1) == -fa.llr(0, 1));
  }
}

TEST_CASE("clamp engages for extreme inputs") {
  CVector y(1);
  y[0] = Complex(3.0, 3.0);
  const LlrFrame f = qpsk_llr(y, 1e-4);
  CHECK(f.llr(0, 0) == LLR_MAX);
  CHECK(f.llr(0, 1) == LLR_MAX);
  y[0] = Complex(-3.0, -3.0);
  const LlrFrame g = qpsk_llr(y, 1e-4);
  CHECK(g.llr(0, 0) == -LLR_MAX);
  CHECK(g.llr(0, 1) == -LLR_MAX);
}

TEST_CASE("erasure variance gives zero llrs") {
  CVector y(2);
  y[0] = Complex(0.9, -0.4);
  y[1] = Complex(-0.1, 0.2);
  RVector v(2);
  v[0] = std::numeric_limits<double>::infinity();
  v[1] = 0.5;
  const LlrFrame f = qpsk_llr(y, v);
  CHECK(f.llr(0, 0) == 0.0);
  CHECK(f.llr(0, 1) == 0.0);
  const LlrFrame ref = qpsk_llr(y.tail(1).eval(), 0.5);
  CHECK(f.llr(1, 0) == ref.llr(0, 0));
  CHECK(f.llr(1, 1) == ref.llr(0, 1));
}

TEST_CASE("probabilities and frozen soft symbols") {
  LlrFrame f;
  f.noise_var = 1.0;
  f.llr.resize(4, 2);
  // columns: llr_msb llr_lsb, expected shat per row below
  const double cases[][4] = {
      {1.3000000000000000, -0.40000000000000000, -0.13956542736989594,
       0.40423170961947003},
      {-2.6000000000000000, 0.050000000000000000, 0.017673987602324104,
       -0.60933028945593456},
      {40.0, 0.0, 0.0, 0.70710678118654752},
      {0.0, 0.0, 0.0, 0.0},
  };
  for (int i = 0; i < 4; ++i) {
    f.llr(i, 0) = cases[i][0];
    f.llr(i, 1) = cases[i][1];
  }
  const RMatrix p0 = llr_to_bit_probabilities(f);
  for (int i = 0; i < 4; ++i) {
    CHECK(p0(i, 0) == doctest::Approx(logistic(cases[i][0])).epsilon(1e-15));
    CHECK(p0(i, 1) == doctest::Approx(logistic(cases[i][1])).epsilon(1e-15));
  }
  const CVector sh = soft_symbols(p0);
  for (int i = 0; i < 4; ++i) {
    CHECK(sh[i].real() == doctest::Approx(cases[i][2]).epsilon(1e-12));
    CHECK(sh[i].imag() == doctest::Approx(cases[i][3]).epsilon(1e-12));
  }
}

TEST_CASE("soft symbols approach the hard decision as noise vanishes") {
  std::mt19937_64 gen(1234);
  std::uniform_real_distribution<double> re(-1.5, 1.5);
  for (int i = 0; i < 200; ++i) {
    Complex y(re(gen), re(gen));
    if (std::abs(y.real()) < 1e-3) y += Complex(0.1, 0.0);
    if (std::abs(y.imag()) < 1e-3) y += Complex(0.0, 0.1);
    CVector yy(1);
    yy[0] = y;
    const LlrFrame f = qpsk_llr(yy, 1e-5);
    const CVector sh = soft_symbols(llr_to_bit_probabilities(f));
    const Complex target = qpsk_points()[qpsk_hard(y)];
    CHECK(std::abs(sh[0] - target) <= 1e-9);
  }
}

// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "resonant/stationary_states.hpp"

using namespace resonant;

namespace {

double norm2(const ModeVector& a) {
  double s = 0.0;
  for (auto z : a) s += std::norm(z);
  return s;
}

const CouplingTensor& conformal48() {
  static const auto t = build_tensor(make_family("cubic_conformal"), 48);
  return t;
}

}  // namespace

TEST_CASE("mode-0 family") {
  const auto g2 = WeightParameter::finite(2.0);
  const auto unit = mode0_state(g2, 0.0, 6);
  CHECK(unit.alpha == ModeVector::unit(0, 6));
  const auto s = mode0_state(g2, 0.5, 6);
  CHECK(std::abs(s.alpha[2] - std::sqrt(3.0) * 0.25) < 1e-15);
  const Complex p(0.2, 0.4);
  const auto geo = mode0_state(WeightParameter::finite(1.0), p, 10);
  for (int n = 0; n <= 10; ++n) CHECK(std::abs(geo.alpha[n] - std::pow(p, n)) < 1e-15);
}

TEST_CASE("lambda closed form") {
  CHECK(lambda_mode0_closed_form(2.0, 0.0) == 1.0);
  CHECK(lambda_mode0_closed_form(2.0, 0.5) == doctest::Approx(16.0 / 9));
  CHECK(lambda_mode0_closed_form(1.0, Complex(0.0, 0.6)) == doctest::Approx(1.5625));
}

TEST_CASE("conformal mode-0 states are stationary with the closed-form lambda") {
  for (double r : {0.1, 0.3, 0.5}) {
    const Complex p = std::polar(r, 0.7);
    const auto s = mode0_state(WeightParameter::finite(2.0), p, 48);
    const auto rep = verify_stationary(conformal48(), s.alpha, 32);
    CHECK(rep.residual <= 1e-9);
    CHECK(std::abs(rep.imag_ratio) <= 1e-12);
    const double expect = 1.0 / std::pow(1.0 - r * r, 2);
    CHECK(std::abs(rep.lambda - expect) <= 1e-8 * expect);
  }
}

TEST_CASE("mode-N construction") {
  for (double g : {1.0, 2.0, 3.5}) {
    const Complex p(0.3, -0.1);
    const auto n0 = modeN_state(g, p, 0, 12);
    const auto m0 = mode0_state(WeightParameter::finite(g), p, 12);
    for (int n = 0; n <= 12; ++n)
      CHECK(std::abs(n0.alpha[n] - m0.alpha[n]) <= 1e-14 * std::abs(m0.alpha[n]) + 1e-300);
    for (int N = 0; N <= 4; ++N) {
      const auto s = modeN_state(g, 0.0, N, 8);
      for (int n = 0; n <= 8; ++n) {
        const double expect = n == N ? std::pow(-1.0, N) * mode_weight(WeightParameter::finite(g), N) /
                                           fractional_diagonal(g, N)
                                     : 0.0;
        CHECK(std::abs(s.alpha[n] - expect) <= 1e-14);
      }
    }
  }
  const double r = 0.45;
  const auto s = modeN_state(1.0, r, 1, 5);
  CHECK(s.alpha[1].real() == doctest::Approx(2 * r * r - 1).epsilon(1e-14));
}

TEST_CASE("conformal mode-N states are stationary") {
  for (int N = 0; N <= 4; ++N)
    for (Complex p : {Complex(0.5, 0.0), Complex(0.2, 0.3), Complex(-0.1, 0.05)}) {
      const auto s = modeN_state(2.0, p, N, 48);
      const auto rep = verify_stationary(conformal48(), s.alpha, 32);
      CHECK(rep.residual <= 1e-9);
    }
}

TEST_CASE("single modes are stationary") {
  const int k = 3;
  const Complex amp(0.5, 0.5);
  const auto s = single_mode_state(WeightParameter::finite(2.0), k, 10, amp);
  const auto tensor = build_tensor(make_family("cubic_conformal"), 10);
  const auto rep = verify_stationary(tensor, s.alpha);
  const std::array<int, 4> kkkk{k, k, k, k};
  CHECK(rep.lambda == doctest::Approx(tensor.coefficient(kkkk) * std::norm(amp)));
  CHECK(rep.residual == 0.0);
  const auto q = build_tensor(make_family("quintic_legendre"), 3);
  CHECK(verify_stationary(q, ModeVector::unit(0, 3)).lambda == doctest::Approx(2.0));
  CHECK_THROWS_AS(verify_stationary(q, ModeVector(3)), Error);
}

TEST_CASE("a non-stationary state has a large residual") {
  ModeVector a(10);
  a[0] = 1.0;
  a[2] = 0.7;
  const auto tensor = build_tensor(make_family("cubic_conformal"), 10);
  CHECK(verify_stationary(tensor, a).residual > 1e-2);
}

TEST_CASE("partial fractions") {
  const auto c0 = modeN_partial_fractions(1.5, 0.4, 0);
  REQUIRE(c0.size() == 1);
  CHECK(std::abs(c0[0] - 1.0) < 1e-13);
  for (double g : {1.0, 2.0})
    for (int N = 0; N <= 4; ++N)
      for (Complex p : {Complex(0.5, 0.0), Complex(0.1, 0.2), Complex(-0.3, 0.3)}) {
        const int K = 30;
        const auto c = modeN_partial_fractions(g, p, N);
        const auto series = partial_fraction_series(c, p, K);
        const auto beta = alpha_to_beta(modeN_state(g, p, N, K).alpha, WeightParameter::finite(g));
        double scale = 0.0;
        for (auto z : beta) scale = std::max(scale, std::abs(z));
        for (int n = 0; n <= K; ++n) CHECK(std::abs(series[n] - beta[n]) <= 1e-11 * scale);
      }
  CHECK_THROWS_AS(modeN_partial_fractions(2.0, 1e-4, 2), Error);
}

TEST_CASE("magnetic translation") {
  const int K = 60;
  const auto unit = ModeVector::unit(0, K);
  CHECK(magnetic_translate(unit, 0.0) == unit);
  const Complex p(0.6, -0.3);
  const auto a = magnetic_translate(unit, p);
  double fact = 1.0;
  for (int n = 0; n <= 20; ++n) {
    if (n) fact *= n;
    const Complex expect = std::exp(-std::norm(p) / 2) * std::pow(p, n) / std::sqrt(fact);
    CHECK(std::abs(a[n] - expect) <= 1e-14);
  }
  for (int k : {0, 1, 3})
    for (double r : {0.3, 0.7, 1.0}) {
      const auto t = magnetic_translate(ModeVector::unit(k, K), std::polar(r, 1.1));
      CHECK(std::abs(norm2(t) - 1.0) <= 1e-10);
    }
}

TEST_CASE("quintic mode-N states are stationary") {
  const auto legendre = build_tensor(make_family("quintic_legendre"), 24);
  const auto pair = build_tensor(make_family("quintic_inverse_pair"), 24);
  for (int N = 0; N <= 2; ++N)
    for (Complex p : {Complex(0.3, 0.0), Complex(0.1, 0.25)}) {
      const auto s = modeN_state(1.0, p, N, 24);
      CHECK(verify_stationary(legendre, s.alpha, 12).residual <= 1e-9);
      CHECK(verify_stationary(pair, s.alpha, 12).residual <= 1e-9);
    }
}

TEST_CASE("translated single modes are stationary in the infinite limit") {
  const auto hermite = build_tensor(make_family("quintic_hermite"), 30);
  const auto multi = build_tensor(make_family("quintic_multinomial"), 30);
  for (int k : {0, 1, 2}) {
    const auto a = magnetic_translate(ModeVector::unit(k, 30), Complex(0.3, 0.2));
    CHECK(verify_stationary(hermite, a, 14).residual <= 1e-9);
    CHECK(verify_stationary(multi, a, 14).residual <= 1e-9);
  }
}

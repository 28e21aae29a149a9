// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "resonant/mode_space.hpp"

using namespace resonant;

TEST_CASE("pochhammer small values") {
  CHECK(pochhammer(2.0, 3) == 24.0);
  CHECK(pochhammer(0.7, 0) == 1.0);
  CHECK(pochhammer(1.0, 5) == 120.0);
}

TEST_CASE("pochhammer satisfies the shift recurrence") {
  for (double g : {0.5, 1.0, 2.5, 7.0})
    for (int n = 0; n < 30; ++n)
      CHECK(pochhammer(g, n + 1) ==
            doctest::Approx(pochhammer(g, n) * (g + n)).epsilon(1e-14));
}

TEST_CASE("pochhammer overflow and bad arguments") {
  CHECK_THROWS_AS(pochhammer(10.0, 400), Error);
  CHECK_THROWS_AS(pochhammer(1.0, -1), Error);
}

TEST_CASE("mode weights") {
  const auto g2 = WeightParameter::finite(2.0);
  for (int n = 0; n <= 20; ++n) {
    double rising = 1.0, fact = 1.0;
    for (int k = 0; k < n; ++k) {
      rising *= 2.0 + k;
      fact *= k + 1.0;
    }
    CHECK(mode_weight(g2, n) == doctest::Approx(std::sqrt(rising / fact)).epsilon(1e-15));
    CHECK(mode_weight(g2, n) == doctest::Approx(std::sqrt(n + 1.0)).epsilon(1e-15));
    CHECK(mode_weight(WeightParameter::finite(1.0), n) == 1.0);
  }
  CHECK(mode_weight(WeightParameter::infinite(), 4) ==
        doctest::Approx(0.204124145).epsilon(1e-9));
  const auto all = mode_weights(WeightParameter::finite(3.5), 12);
  for (int n = 0; n <= 12; ++n)
    CHECK(all[n] == doctest::Approx(mode_weight(WeightParameter::finite(3.5), n)));
}

TEST_CASE("weight parameter validation") {
  CHECK_THROWS_AS(WeightParameter::finite(0.0), Error);
  CHECK_THROWS_AS(WeightParameter::finite(-1.0), Error);
  CHECK_THROWS_AS(WeightParameter::infinite().value(), Error);
  CHECK(WeightParameter::finite(2.0).value() == 2.0);
}

TEST_CASE("mode weight underflow is reported") {
  CHECK_THROWS_AS(mode_weights(WeightParameter::infinite(), 400), Error);
}

TEST_CASE("fractional diagonal") {
  CHECK(fractional_diagonal(2.0, 3) == doctest::Approx(4.0));
  for (int n = 0; n < 10; ++n) CHECK(fractional_diagonal(1.0, n) == 1.0);
  CHECK(fractional_diagonal(3.0, 2) == doctest::Approx(6.0));
}

TEST_CASE("alpha/beta conversion") {
  const auto g2 = WeightParameter::finite(2.0);
  const auto unit = ModeVector::unit(0, 6);
  CHECK(alpha_to_beta(unit, g2) == unit);

  const Complex p(0.3, -0.2);
  ModeVector alpha(10);
  for (int n = 0; n <= 10; ++n) alpha[n] = std::sqrt(n + 1.0) * std::pow(p, n);
  const auto beta = alpha_to_beta(alpha, g2);
  for (int n = 0; n <= 10; ++n)
    CHECK(std::abs(beta[n] - std::pow(p, n)) < 1e-15);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  for (auto g : {g2, WeightParameter::finite(0.4), WeightParameter::infinite()}) {
    ModeVector x(30);
    for (int n = 0; n <= 30; ++n) x[n] = Complex(u(rng), u(rng));
    const auto back = beta_to_alpha(alpha_to_beta(x, g), g);
    for (int n = 0; n <= 30; ++n)
      CHECK(std::abs(back[n] - x[n]) <= 1e-15 * (1.0 + std::abs(x[n])) * 4);
  }
}

TEST_CASE("sequences reject non-finite entries") {
  CHECK_THROWS_AS(ModeVector(std::vector<Complex>{1.0, Complex(NAN, 0)}), Error);
  CHECK_THROWS_AS(ModeVector(-1), Error);
  CHECK_THROWS_AS(ModeVector::unit(5, 3), Error);
}

TEST_CASE("binomial series") {
  CHECK(binomial_series(3.0, 1.0, 4)[1] == Complex(3.0));
  const auto zero = binomial_series(2.5, 0.0, 5);
  CHECK(zero[0] == Complex(1.0));
  for (int n = 1; n <= 5; ++n) CHECK(zero[n] == Complex(0.0));
  CHECK(std::abs(binomial_series(1.0, 0.5, 6)[4] - 0.0625) < 1e-16);
}

TEST_CASE("series product") {
  PowerSeries ones(std::vector<Complex>(8, 1.0));
  PowerSeries one_minus_z(7);
  one_minus_z[0] = 1.0;
  one_minus_z[1] = -1.0;
  const auto prod = series_product(ones, one_minus_z);
  CHECK(prod[0] == Complex(1.0));
  for (int n = 1; n <= 7; ++n) CHECK(std::abs(prod[n]) < 1e-16);

  const auto x = binomial_series(1.7, Complex(0.2, 0.4), 9);
  const auto id = series_product(x, PowerSeries::unit(0, 9));
  for (int n = 0; n <= 9; ++n) CHECK(id[n] == x[n]);
}

TEST_CASE("series product builds the first excited generating function") {
  // (conj(p) - z) / (1 - p z)^(1 + G), expanded term by term.
  const double g = 1.5;
  const Complex p(0.35, 0.15);
  const int K = 8;
  PowerSeries lin(K);
  lin[0] = std::conj(p);
  lin[1] = -1.0;
  const auto t = series_product(lin, binomial_series(1.0 + g, p, K));
  for (int n = 0; n <= K; ++n) {
    // coefficient of z^n in (1 - p z)^{-a} is binom(a + n - 1, n) p^n
    auto coef = [&](int k) {
      if (k < 0) return Complex(0.0);
      double c = 1.0;
      for (int j = 1; j <= k; ++j) c *= (1.0 + g + j - 1) / j;
      return c * std::pow(p, k);
    };
    const Complex expect = std::conj(p) * coef(n) - coef(n - 1);
    CHECK(std::abs(t[n] - expect) < 1e-14);
  }
}

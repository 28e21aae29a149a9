// SPDX-License-Identifier: Apache-2.0
#include "resonant/mode_space.hpp"

#include <algorithm>
#include <limits>

namespace resonant {

namespace {

void check_finite(double x, const char* what, int n) {
  if (!std::isfinite(x) || x == 0.0)
    fail(ErrorCode::Overflow, std::string(what) + " out of range at n = " +
                                  std::to_string(n));
}

}  // namespace

WeightParameter WeightParameter::finite(double g) {
  require(std::isfinite(g) && g > 0.0, "weight parameter G must be > 0");
  WeightParameter w;
  w.value_ = g;
  w.infinite_ = false;
  return w;
}

double WeightParameter::value() const {
  require(!infinite_, "infinite weight parameter has no finite value");
  return value_;
}

double pochhammer(double g, int n) {
  require(g > 0.0, "pochhammer requires g > 0");
  require(n >= 0, "pochhammer requires n >= 0");
  double result = 1.0;
  for (int k = 0; k < n; ++k) {
    result *= g + k;
    check_finite(result, "pochhammer symbol", n);
  }
  return result;
}

double fractional_diagonal(double g, int n) {
  require(g > 0.0, "fractional_diagonal requires g > 0");
  require(n >= 0, "fractional_diagonal requires n >= 0");
  double result = 1.0;
  for (int k = 0; k < n; ++k) {
    result *= (g + k) / (k + 1);
    check_finite(result, "fractional diagonal", n);
  }
  return result;
}

std::vector<double> mode_weights(const WeightParameter& g, int cutoff) {
  require(cutoff >= 0, "cutoff must be nonnegative");
  std::vector<double> f(static_cast<std::size_t>(cutoff) + 1);
  f[0] = 1.0;
  for (int n = 1; n <= cutoff; ++n) {
    // Running product of the per-step ratio f_n / f_{n-1}.
    const double ratio = g.is_infinite()
                             ? 1.0 / std::sqrt(static_cast<double>(n))
                             : std::sqrt((g.value() + n - 1) / n);
    f[n] = f[n - 1] * ratio;
    if (!std::isfinite(f[n]) || f[n] < std::numeric_limits<double>::min())
      fail(ErrorCode::Overflow,
           "mode weight out of range at n = " + std::to_string(n));
  }
  return f;
}

double mode_weight(const WeightParameter& g, int n) {
  require(n >= 0, "mode index must be nonnegative");
  return mode_weights(g, n).back();
}

ModeVector alpha_to_beta(const ModeVector& alpha, const WeightParameter& g) {
  const auto f = mode_weights(g, alpha.cutoff());
  ModeVector beta(alpha.cutoff());
  for (std::size_t n = 0; n < alpha.size(); ++n) beta[n] = alpha[n] / f[n];
  return beta;
}

ModeVector beta_to_alpha(const ModeVector& beta, const WeightParameter& g) {
  const auto f = mode_weights(g, beta.cutoff());
  ModeVector alpha(beta.cutoff());
  for (std::size_t n = 0; n < beta.size(); ++n) alpha[n] = beta[n] * f[n];
  return alpha;
}

PowerSeries binomial_series(double a, Complex p, int cutoff) {
  require(a > 0.0, "binomial_series requires a positive exponent");
  PowerSeries s(cutoff);
  Complex c = 1.0;
  s[0] = c;
  for (int n = 0; n < cutoff; ++n) {
    c *= (a + n) / (n + 1) * p;
    s[n + 1] = c;
  }
  return PowerSeries(std::vector<Complex>(s.begin(), s.end()));
}

PowerSeries series_product(const PowerSeries& f, const PowerSeries& g) {
  require(f.cutoff() == g.cutoff(), "series_product requires equal cutoffs");
  PowerSeries out(f.cutoff());
  for (std::size_t n = 0; n < f.size(); ++n) {
    Complex acc = 0.0;
    for (std::size_t j = 0; j <= n; ++j) acc += f[j] * g[n - j];
    out[n] = acc;
  }
  return out;
}

}  // namespace resonant

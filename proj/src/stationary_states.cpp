// SPDX-License-Identifier: Apache-2.0
#include "resonant/stationary_states.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace resonant {

namespace {

void require_disc(Complex p) {
  require(std::abs(p) < 1.0, "|p| must be below 1");
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

/// K(n, j) x^(n-j) with K(n, j) = sqrt(n! / j!) / (n - j)!, n >= j.
Complex translation_kernel(int n, int j, Complex x) {
  const int d = n - j;
  if (d == 0) return 1.0;
  if (x == Complex{}) return 0.0;
  const double log_mag = 0.5 * (std::lgamma(n + 1.0) - std::lgamma(j + 1.0)) -
                         std::lgamma(d + 1.0) + d * std::log(std::abs(x));
  return std::polar(std::exp(log_mag), d * std::arg(x));
}

}  // namespace

StationaryState mode0_state(const WeightParameter& g, Complex p, int cutoff) {
  require_disc(p);
  const auto f = mode_weights(g, cutoff);
  std::vector<Complex> a(f.size());
  Complex power = 1.0;
  for (std::size_t n = 0; n < f.size(); ++n) {
    a[n] = f[n] * power;
    power *= p;
  }
  StationaryState s;
  s.alpha = ModeVector(std::move(a));
  s.mode = 0;
  s.p = p;
  s.g = g;
  return s;
}

StationaryState modeN_state(double g, Complex p, int mode, int cutoff) {
  require_disc(p);
  require(mode >= 0, "mode index must be nonnegative");
  require(g > 0.0, "G must be positive");
  PowerSeries poly(cutoff);
  for (int j = 0; j <= std::min(mode, cutoff); ++j) {
    Complex power = 1.0;
    for (int r = 0; r < mode - j; ++r) power *= std::conj(p);
    poly[j] = binomial(mode, j) * power * (j % 2 ? -1.0 : 1.0);
  }
  const PowerSeries t = series_product(poly, binomial_series(mode + g, p, cutoff));
  const auto weight = WeightParameter::finite(g);
  const auto f = mode_weights(weight, cutoff);
  std::vector<Complex> a(t.size());
  for (int n = 0; n <= cutoff; ++n)
    a[n] = f[n] * t[n] / fractional_diagonal(g, n);
  StationaryState s;
  s.alpha = ModeVector(std::move(a));
  s.mode = mode;
  s.p = p;
  s.g = weight;
  return s;
}

StationaryState single_mode_state(const WeightParameter& g, int mode,
                                  int cutoff, Complex amplitude) {
  StationaryState s;
  s.alpha = ModeVector::unit(mode, cutoff);
  s.alpha[mode] = amplitude;
  s.mode = mode;
  s.g = g;
  return s;
}

std::vector<Complex> modeN_partial_fractions(double g, Complex p, int mode) {
  require(std::abs(p) >= 1e-3, "partial fractions need |p| >= 1e-3");
  const StationaryState s = modeN_state(g, p, mode, mode);
  const ModeVector beta = alpha_to_beta(s.alpha, s.g);
  const int size = mode + 1;
  Eigen::MatrixXcd m(size, size);
  Eigen::VectorXcd rhs(size);
  for (int k = 0; k < size; ++k) {
    const PowerSeries col = binomial_series(k + 1.0, p, mode);
    for (int n = 0; n < size; ++n) m(n, k) = col[n];
  }
  for (int n = 0; n < size; ++n) rhs(n) = beta[n];
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(m);
  if (lu.rank() < size)
    fail(ErrorCode::Singular, "partial-fraction system is singular");
  const Eigen::VectorXcd c = lu.solve(rhs);
  return std::vector<Complex>(c.data(), c.data() + size);
}

PowerSeries partial_fraction_series(const std::vector<Complex>& c, Complex p,
                                    int cutoff) {
  require_disc(p);
  PowerSeries out(cutoff);
  for (std::size_t k = 0; k < c.size(); ++k) {
    const PowerSeries term = binomial_series(k + 1.0, p, cutoff);
    for (int n = 0; n <= cutoff; ++n) out[n] += c[k] * term[n];
  }
  return out;
}

ModeVector magnetic_translate(const ModeVector& alpha, Complex p) {
  const int cutoff = alpha.cutoff();
  if (p == Complex{}) return alpha;
  // Shift: gamma_j = sum_{n >= j} alpha_n K(n, j) (-conj p)^(n-j).
  std::vector<Complex> gamma(alpha.size());
  for (int j = 0; j <= cutoff; ++j)
    for (int n = j; n <= cutoff; ++n)
      if (alpha[n] != Complex{})
        gamma[j] += alpha[n] * translation_kernel(n, j, -std::conj(p));
  // Multiply by exp(p z): out_n = sum_{j <= n} gamma_j K(n, j) p^(n-j).
  const double scale = std::exp(-0.5 * std::norm(p));
  std::vector<Complex> out(alpha.size());
  for (int n = 0; n <= cutoff; ++n) {
    for (int j = 0; j <= n; ++j)
      if (gamma[j] != Complex{}) out[n] += gamma[j] * translation_kernel(n, j, p);
    out[n] *= scale;
  }
  return ModeVector(std::move(out));
}

StationarityReport verify_stationary(const CouplingTensor& tensor,
                                     const ModeVector& alpha, int window) {
  require(alpha.cutoff() == tensor.cutoff(),
          "state cutoff does not match tensor cutoff");
  if (window < 0) window = alpha.cutoff();
  require(window <= alpha.cutoff(), "verification window exceeds the cutoff");
  const ModeVector f = rhs(tensor, alpha);
  double norm = 0.0;
  Complex pairing{};
  for (int n = 0; n <= window; ++n) {
    norm += std::norm(alpha[n]);
    pairing += std::conj(alpha[n]) * f[n];
  }
  if (norm == 0.0)
    fail(ErrorCode::Degenerate, "zero state has no frequency");
  StationarityReport r;
  r.window = window;
  r.lambda = pairing.real() / norm;
  r.imag_ratio = pairing.imag() / norm;
  double misfit = 0.0;
  for (int n = 0; n <= window; ++n)
    misfit += std::norm(f[n] - r.lambda * alpha[n]);
  r.residual = std::sqrt(misfit / norm);
  return r;
}

double lambda_mode0_closed_form(double g, Complex p) {
  require_disc(p);
  require(g > 0.0, "G must be positive");
  return std::pow(1.0 - std::norm(p), -g);
}

}  // namespace resonant

// SPDX-License-Identifier: Apache-2.0
#include "resonant/special_functions.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "resonant/error.hpp"

namespace resonant {

namespace {

void check_value(double v, const char* what, int n, double x) {
  if (!std::isfinite(v))
    fail(ErrorCode::Overflow, std::string(what) + " overflow at n = " +
                                  std::to_string(n) +
                                  ", x = " + std::to_string(x));
}

/// Eigenvalues of the symmetric tridiagonal Jacobi matrix with zero diagonal.
std::vector<double> jacobi_nodes(const std::vector<double>& offdiag,
                                 int order) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(order);
  Eigen::VectorXd sub(std::max(order - 1, 0));
  for (int k = 0; k < order - 1; ++k) sub[k] = offdiag[k];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  std::vector<double> nodes(order);
  for (int k = 0; k < order; ++k) nodes[k] = solver.eigenvalues()[k];
  std::sort(nodes.begin(), nodes.end());
  return nodes;
}

struct LegendrePair {
  double p;      // P_M(x)
  double p_low;  // P_{M-1}(x)
};

LegendrePair legendre_pair(int order, double x) {
  double p0 = 1.0, p1 = x;
  if (order == 0) return {1.0, 0.0};
  for (int n = 1; n < order; ++n) {
    const double p2 = ((2.0 * n + 1.0) * x * p1 - n * p0) / (n + 1.0);
    p0 = p1;
    p1 = p2;
  }
  return {p1, p0};
}

struct HermitePair {
  double h;      // orthonormal Hermite function of degree M
  double h_low;  // degree M-1
};

HermitePair hermite_function_pair(int order, double y) {
  double h0 = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * y * y);
  double h1 = std::sqrt(2.0) * y * h0;
  if (order == 0) return {h0, 0.0};
  for (int k = 1; k < order; ++k) {
    const double h2 =
        std::sqrt(2.0 / (k + 1)) * y * h1 - std::sqrt(double(k) / (k + 1)) * h0;
    h0 = h1;
    h1 = h2;
  }
  return {h1, h0};
}

}  // namespace

double hermite_eval(int n, double x) {
  require(n >= 0, "hermite_eval requires n >= 0");
  if (n == 0) return 1.0;
  double h0 = 1.0, h1 = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double h2 = 2.0 * x * h1 - 2.0 * k * h0;
    h0 = h1;
    h1 = h2;
    check_value(h1, "hermite_eval", n, x);
  }
  return h1;
}

double legendre_eval(int n, double x) {
  require(n >= 0, "legendre_eval requires n >= 0");
  return legendre_pair(n, x).p;
}

LegendreValue legendre_eval_with_derivative(int n, double x) {
  require(n >= 0, "legendre_eval_with_derivative requires n >= 0");
  if (n == 0) return {1.0, 0.0};
  double p0 = 1.0, p1 = x;
  double d0 = 0.0, d1 = 1.0;
  for (int k = 1; k < n; ++k) {
    const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
    const double d2 = d0 + (2.0 * k + 1.0) * p1;
    p0 = p1;
    p1 = p2;
    d0 = d1;
    d1 = d2;
  }
  return {p1, d1};
}

double chebyshev_u_eval(int n, double x) {
  require(n >= 0, "chebyshev_u_eval requires n >= 0");
  double u0 = 1.0, u1 = 2.0 * x;
  if (n == 0) return u0;
  for (int k = 1; k < n; ++k) {
    const double u2 = 2.0 * x * u1 - u0;
    u0 = u1;
    u1 = u2;
  }
  return u1;
}

std::vector<double> scaled_hermite_functions(int max_n, double x) {
  require(max_n >= 0, "scaled_hermite_functions requires max_n >= 0");
  std::vector<double> psi(static_cast<std::size_t>(max_n) + 1);
  psi[0] = std::exp(-0.5 * x * x);
  if (max_n >= 1) psi[1] = std::sqrt(2.0) * x * psi[0];
  for (int n = 1; n < max_n; ++n)
    psi[n + 1] = std::sqrt(2.0 / (n + 1)) * x * psi[n] -
                 std::sqrt(double(n) / (n + 1)) * psi[n - 1];
  return psi;
}

double QuadratureRule::integrate(const std::function<double(double)>& f) const {
  double acc = 0.0;
  for (std::size_t q = 0; q < nodes.size(); ++q) acc += weights[q] * f(nodes[q]);
  return acc;
}

int exact_gauss_order(int degree) {
  require(degree >= 0, "polynomial degree must be nonnegative");
  return degree / 2 + 1;
}

QuadratureRule gauss_legendre(int order) {
  require(order >= 1, "gauss_legendre requires order >= 1");
  std::vector<double> offdiag(order);
  for (int k = 1; k < order; ++k)
    offdiag[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
  auto nodes = jacobi_nodes(offdiag, order);

  QuadratureRule rule{QuadratureKind::GaussLegendre, {}, {}, {}};
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int q = 0; q < order; ++q) {
    double x = nodes[q];
    double dp = 0.0;
    // Newton polish of the eigenvalue estimate on P_M.
    for (int it = 0; it < 8; ++it) {
      const auto [p, p_low] = legendre_pair(order, x);
      dp = order * (x * p - p_low) / (x * x - 1.0);
      const double step = p / dp;
      x -= step;
      if (std::abs(step) < 1e-17) break;
    }
    const auto [p, p_low] = legendre_pair(order, x);
    dp = order * (x * p - p_low) / (x * x - 1.0);
    rule.nodes[q] = x;
    rule.weights[q] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  // Symmetrize against rounding in the eigen solve.
  for (int q = 0; q < order / 2; ++q) {
    const int r = order - 1 - q;
    const double x = 0.5 * (rule.nodes[r] - rule.nodes[q]);
    const double w = 0.5 * (rule.weights[r] + rule.weights[q]);
    rule.nodes[q] = -x;
    rule.nodes[r] = x;
    rule.weights[q] = rule.weights[r] = w;
  }
  if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
  rule.bare_weights = rule.weights;
  return rule;
}

QuadratureRule gauss_hermite_scaled(int order) {
  require(order >= 1, "gauss_hermite_scaled requires order >= 1");
  std::vector<double> offdiag(order);
  for (int k = 1; k < order; ++k) offdiag[k - 1] = std::sqrt(k / 2.0);
  auto nodes = jacobi_nodes(offdiag, order);

  const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
  QuadratureRule rule{QuadratureKind::GaussHermiteScaled, {}, {}, {}};
  rule.nodes.resize(order);
  rule.weights.resize(order);
  rule.bare_weights.resize(order);
  for (int q = 0; q < order; ++q) {
    double y = nodes[q];
    for (int it = 0; it < 8; ++it) {
      const auto [h, h_low] = hermite_function_pair(order, y);
      const double dh = std::sqrt(2.0 * order) * h_low - y * h;
      const double step = h / dh;
      y -= step;
      if (std::abs(step) < 1e-17 * std::max(1.0, std::abs(y))) break;
    }
    const auto [h, h_low] = hermite_function_pair(order, y);
    // Gauss weight times e^{y^2} for the e^{-y^2} rule.
    const double bare = 1.0 / (order * h_low * h_low);
    rule.nodes[q] = y * inv_sqrt3;
    rule.bare_weights[q] = bare * inv_sqrt3;
    rule.weights[q] = bare * std::exp(-y * y) * inv_sqrt3;
  }
  for (int q = 0; q < order / 2; ++q) {
    const int r = order - 1 - q;
    const double x = 0.5 * (rule.nodes[r] - rule.nodes[q]);
    const double w = 0.5 * (rule.weights[r] + rule.weights[q]);
    const double b = 0.5 * (rule.bare_weights[r] + rule.bare_weights[q]);
    rule.nodes[q] = -x;
    rule.nodes[r] = x;
    rule.weights[q] = rule.weights[r] = w;
    rule.bare_weights[q] = rule.bare_weights[r] = b;
  }
  if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
  return rule;
}

QuadratureRule periodic_trapezoid(int intervals) {
  require(intervals >= 2, "periodic_trapezoid requires at least 2 panels");
  QuadratureRule rule{QuadratureKind::PeriodicTrapezoid, {}, {}, {}};
  const double h = std::numbers::pi / intervals;
  for (int j = 1; j < intervals; ++j) {
    rule.nodes.push_back(j * h);
    rule.weights.push_back(h);
  }
  rule.bare_weights = rule.weights;
  return rule;
}

double sine_product_integral(std::span<const int> indices, int intervals) {
  const int count = static_cast<int>(indices.size());
  require(count >= 4 && count % 2 == 0,
          "sine_product_integral needs an even number (>= 4) of factors");
  int degree = count - 2;
  for (int n : indices) {
    require(n >= 0, "sine_product_integral requires nonnegative indices");
    degree += n;
  }
  const int minimal = degree / 2 + 1;
  if (intervals <= 0) intervals = std::max(minimal, 2);
  require(intervals >= minimal,
          "panel count too small for exact trigonometric integration");
  const auto rule = periodic_trapezoid(intervals);
  double acc = 0.0;
  for (std::size_t q = 0; q < rule.order(); ++q) {
    const double x = rule.nodes[q];
    const double s = std::sin(x);
    double term = rule.weights[q] / (s * s);
    for (int n : indices) term *= std::sin((n + 1) * x);
    acc += term;
  }
  return acc;
}

double trig_product_integral(std::span<const int> indices, int intervals) {
  require(indices.size() == 6, "trig_product_integral takes six indices");
  return 8.0 / std::numbers::pi * sine_product_integral(indices, intervals);
}

}  // namespace resonant

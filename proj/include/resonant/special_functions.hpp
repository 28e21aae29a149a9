// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <span>
#include <vector>

namespace resonant {

/// Physicists' Hermite polynomial H_n(x) by three-term recurrence.
double hermite_eval(int n, double x);

/// Legendre polynomial P_n(x).
double legendre_eval(int n, double x);

struct LegendreValue {
  double value;
  double derivative;
};

/// P_n(x) together with P_n'(x), using P'_{n+1} = P'_{n-1} + (2n+1) P_n.
LegendreValue legendre_eval_with_derivative(int n, double x);

/// Chebyshev polynomial of the second kind U_n(x).
double chebyshev_u_eval(int n, double x);

/// Hermite functions H_n(x) e^{-x^2/2} / sqrt(2^n n!) for n = 0..max_n.
/// Stable for large n where H_n itself overflows.
std::vector<double> scaled_hermite_functions(int max_n, double x);

enum class QuadratureKind { GaussLegendre, GaussHermiteScaled, PeriodicTrapezoid };

/// Nodes and positive weights of a quadrature rule.
///
/// `weights` integrate f against the rule's weight function: for
/// GaussHermiteScaled, sum w_q f(x_q) ~ int f(x) e^{-3x^2} dx. `bare_weights`
/// integrate a function that already contains the weight function
/// (w_q / e^{-3 x_q^2} for Hermite, identical to `weights` otherwise).
struct QuadratureRule {
  QuadratureKind kind;
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> bare_weights;

  std::size_t order() const noexcept { return nodes.size(); }

  double integrate(const std::function<double(double)>& f) const;
};

/// M-point Gauss-Legendre rule on [-1, 1]; exact through degree 2M-1.
QuadratureRule gauss_legendre(int order);

/// M-point rule for int f(x) e^{-3x^2} dx over the real line; exact for
/// polynomial f through degree 2M-1.
QuadratureRule gauss_hermite_scaled(int order);

/// Uniform rule with `intervals` panels on [0, pi]; only the interior nodes
/// are stored (integrands used here vanish at both endpoints). Exact for
/// cosine series of degree below 2 * intervals.
QuadratureRule periodic_trapezoid(int intervals);

/// Smallest Gauss order exact for a polynomial integrand of this degree.
int exact_gauss_order(int degree);

/// Raw int_0^pi prod_a sin((n_a+1) x) / sin^2 x dx for two or more factors.
/// `intervals` <= 0 selects the smallest exact panel count.
double sine_product_integral(std::span<const int> indices, int intervals = 0);

/// (8/pi) int_0^pi prod_{a=1}^{6} sin((n_a+1) x) / sin^2 x dx.
double trig_product_integral(std::span<const int> indices, int intervals = 0);

}  // namespace resonant

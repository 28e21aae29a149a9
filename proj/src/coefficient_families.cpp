// SPDX-License-Identifier: Apache-2.0
#include "resonant/coefficient_families.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>

#include "resonant/special_functions.hpp"

namespace resonant {

namespace {

void check_tuple(std::span<const int> t, std::size_t length) {
  require(t.size() == length, "coefficient tuple has wrong length");
  for (int n : t) require(n >= 0, "coefficient indices must be nonnegative");
}

int bra_sum(std::span<const int> t) {
  return std::accumulate(t.begin(), t.begin() + t.size() / 2, 0);
}

int ket_sum(std::span<const int> t) {
  return std::accumulate(t.begin() + t.size() / 2, t.end(), 0);
}

int max_index(std::span<const int> t) {
  return *std::max_element(t.begin(), t.end());
}

void check_result(double v, std::span<const int> t, const char* family) {
  if (std::isfinite(v)) return;
  std::string msg = std::string(family) + " coefficient overflow at (";
  for (std::size_t a = 0; a < t.size(); ++a)
    msg += (a ? "," : "") + std::to_string(t[a]);
  fail(ErrorCode::Overflow, msg + ")");
}

/// Read-only cache of Gauss rules keyed by kind and order.
const QuadratureRule& cached_rule(QuadratureKind kind, int order) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<QuadratureRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{static_cast<int>(kind), order}];
  if (!slot) {
    slot = std::make_unique<QuadratureRule>(kind == QuadratureKind::GaussLegendre
                                                ? gauss_legendre(order)
                                                : gauss_hermite_scaled(order));
  }
  return *slot;
}

/// Basis values phi_n(x_q) for n <= max_index at every node of a rule; the
/// product integral of a tuple is sum_q w_q prod_a phi_{t_a}(x_q).
class ProductTable {
 public:
  ProductTable(std::vector<double> weights, int max_index)
      : weights_(std::move(weights)),
        stride_(static_cast<std::size_t>(max_index) + 1),
        values_(weights_.size() * stride_) {}

  double& at(std::size_t q, int n) { return values_[q * stride_ + n]; }

  double integrate(std::span<const int> t) const {
    double acc = 0.0;
    for (std::size_t q = 0; q < weights_.size(); ++q) {
      const double* row = &values_[q * stride_];
      double term = weights_[q];
      for (int n : t) term *= row[n];
      acc += term;
    }
    return acc;
  }

 private:
  std::vector<double> weights_;
  std::size_t stride_;
  std::vector<double> values_;
};

std::shared_ptr<ProductTable> legendre_table(int order, int max_n) {
  const auto& rule = cached_rule(QuadratureKind::GaussLegendre, order);
  auto table = std::make_shared<ProductTable>(rule.weights, max_n);
  for (std::size_t q = 0; q < rule.order(); ++q) {
    const double x = rule.nodes[q];
    double p0 = 1.0, p1 = x;
    table->at(q, 0) = 1.0;
    if (max_n >= 1) table->at(q, 1) = x;
    for (int n = 1; n < max_n; ++n) {
      const double p2 = ((2.0 * n + 1.0) * x * p1 - n * p0) / (n + 1.0);
      table->at(q, n + 1) = p2;
      p0 = p1;
      p1 = p2;
    }
  }
  return table;
}

std::shared_ptr<ProductTable> hermite_table(int order, int max_n) {
  const auto& rule = cached_rule(QuadratureKind::GaussHermiteScaled, order);
  auto table = std::make_shared<ProductTable>(rule.bare_weights, max_n);
  for (std::size_t q = 0; q < rule.order(); ++q) {
    const auto psi = scaled_hermite_functions(max_n, rule.nodes[q]);
    for (int n = 0; n <= max_n; ++n) table->at(q, n) = psi[n];
  }
  return table;
}

std::shared_ptr<ProductTable> sine_table(int intervals, int max_n) {
  const auto rule = periodic_trapezoid(intervals);
  std::vector<double> weights(rule.order());
  for (std::size_t q = 0; q < rule.order(); ++q) {
    const double s = std::sin(rule.nodes[q]);
    weights[q] = rule.weights[q] * 8.0 / std::numbers::pi / (s * s);
  }
  auto table = std::make_shared<ProductTable>(std::move(weights), max_n);
  for (std::size_t q = 0; q < rule.order(); ++q)
    for (int n = 0; n <= max_n; ++n)
      table->at(q, n) = std::sin((n + 1) * rule.nodes[q]);
  return table;
}

double hermite_prefactor(std::span<const int> t) {
  // 1 / (2^{bra} sqrt(prod n!)) against functions normalized by
  // sqrt(2^n n!) leaves 2^{(ket - bra)/2}.
  return std::exp2(0.5 * (ket_sum(t) - bra_sum(t)));
}

BigInt factorial(int n) {
  BigInt r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (int j = 1; j <= k; ++j) {
    r *= n - k + j;
    r /= j;
  }
  return r;
}

double rising_ratio(double a, int n) {
  // (a)_n / n!
  double r = 1.0;
  for (int k = 0; k < n; ++k) r *= (a + k) / (k + 1);
  return r;
}

CoefficientFamily make_native(std::string_view name) {
  CoefficientFamily f;
  f.name = std::string(name);
  if (name == "cubic_conformal") {
    f.arity = Arity::Cubic;
    f.g = WeightParameter::finite(2.0);
    f.evaluate = cubic_conformal_S;
    f.evaluate_exact = [](std::span<const int> t) {
      return Rational(static_cast<int>(cubic_conformal_S(t)));
    };
  } else if (name == "cubic_szego") {
    f.arity = Arity::Cubic;
    f.g = WeightParameter::finite(1.0);
    f.evaluate = cubic_szego_S;
    f.evaluate_exact = [](std::span<const int> t) {
      check_tuple(t, 4);
      return Rational(1);
    };
  } else if (name == "quintic_inverse_pair") {
    f.arity = Arity::Quintic;
    f.g = WeightParameter::finite(1.0);
    f.evaluate = quintic_inverse_pair_S;
    f.evaluate_exact = [](std::span<const int> t) {
      check_tuple(t, 6);
      const int s = bra_sum(t);
      return Rational(1, (s + 1) * (s + 2));
    };
  } else if (name == "quintic_sine") {
    f.arity = Arity::Quintic;
    f.g = WeightParameter::finite(2.0);
    f.evaluate = quintic_sine_S;
    f.tabulate = [](int max_n) -> Evaluator {
      auto table = sine_table(3 * max_n + 3, max_n);
      return [table](std::span<const int> t) { return table->integrate(t); };
    };
  } else if (name == "quintic_multinomial") {
    f.arity = Arity::Quintic;
    f.g = WeightParameter::infinite();
    f.evaluate = quintic_multinomial_S;
    f.evaluate_exact = [](std::span<const int> t) {
      check_tuple(t, 6);
      const int s = bra_sum(t);
      BigInt den = 1;
      for (int n : t) den *= factorial(n);
      den *= boost::multiprecision::pow(BigInt(3), static_cast<unsigned>(s));
      return Rational(factorial(s), den);
    };
  } else if (name == "quintic_hermite") {
    f.arity = Arity::Quintic;
    f.g = WeightParameter::infinite();
    f.normalization = Normalization::C;
    f.evaluate = quintic_hermite_C;
    f.tabulate = [](int max_n) -> Evaluator {
      auto table = hermite_table(exact_gauss_order(6 * max_n), max_n);
      return [table](std::span<const int> t) {
        return hermite_prefactor(t) * table->integrate(t);
      };
    };
  } else if (name == "quintic_legendre") {
    f.arity = Arity::Quintic;
    f.g = WeightParameter::finite(1.0);
    f.normalization = Normalization::C;
    f.evaluate = quintic_legendre_C;
    f.tabulate = [](int max_n) -> Evaluator {
      auto table = legendre_table(exact_gauss_order(6 * max_n), max_n);
      return [table](std::span<const int> t) { return table->integrate(t); };
    };
  } else {
    fail(ErrorCode::InvalidArgument,
         "unknown coefficient family '" + std::string(name) + "'");
  }
  return f;
}

CoefficientFamily make_gamma_ratio(double delta) {
  CoefficientFamily f;
  f.name = "quintic_gamma_ratio";
  f.arity = Arity::Quintic;
  f.g = WeightParameter::finite(delta);
  f.evaluate = [delta](std::span<const int> t) {
    return quintic_gamma_ratio_S(t, delta);
  };
  const int integral = static_cast<int>(delta);
  if (integral == delta && integral >= 1) {
    // Gamma(n+d)/Gamma(n+1) = (n+1)...(n+d-1) and
    // Gamma(s+1)/Gamma(s+3d) = 1/((s+1)...(s+3d-1)) for integer d.
    f.evaluate_exact = [integral](std::span<const int> t) {
      check_tuple(t, 6);
      BigInt num = 1, den = 1;
      for (int n : t)
        for (int k = 1; k < integral; ++k) num *= n + k;
      const int s = bra_sum(t);
      for (int k = 1; k < 3 * integral; ++k) den *= s + k;
      return Rational(num, den);
    };
  }
  return f;
}

}  // namespace

std::vector<std::string> family_names() {
  return {"cubic_conformal",     "cubic_szego",         "quintic_inverse_pair",
          "quintic_gamma_ratio", "quintic_sine",        "quintic_multinomial",
          "quintic_hermite",     "quintic_legendre"};
}

CoefficientFamily make_family(std::string_view name,
                              std::optional<WeightParameter> g) {
  if (name == "quintic_gamma_ratio") {
    if (g && g->is_infinite())
      fail(ErrorCode::InvalidArgument,
           "quintic_gamma_ratio needs a finite delta");
    return make_gamma_ratio(g ? g->value() : 1.0);
  }
  auto family = make_native(name);
  if (g) {
    if (g->is_infinite() != family.g.is_infinite())
      fail(ErrorCode::InvalidArgument,
           family.name + (family.g.is_infinite()
                              ? " is defined only for infinite G"
                              : " is defined only for finite G"));
    family.g = *g;
  }
  return family;
}

namespace {

double weight_product(const CoefficientFamily& family,
                      std::span<const int> tuple) {
  double prod = 1.0;
  for (int n : tuple) prod *= mode_weight(family.g, n);
  return prod;
}

}  // namespace

double to_S(const CoefficientFamily& family, std::span<const int> tuple) {
  check_tuple(tuple, static_cast<std::size_t>(tuple_length(family.arity)));
  const double v = family.evaluate(tuple);
  if (family.normalization == Normalization::S) return v;
  const double s = v * weight_product(family, tuple);
  check_result(s, tuple, family.name.c_str());
  return s;
}

double to_C(const CoefficientFamily& family, std::span<const int> tuple) {
  check_tuple(tuple, static_cast<std::size_t>(tuple_length(family.arity)));
  const double v = family.evaluate(tuple);
  if (family.normalization == Normalization::C) return v;
  const double c = v / weight_product(family, tuple);
  check_result(c, tuple, family.name.c_str());
  return c;
}

std::optional<Rational> to_S_exact(const CoefficientFamily& family,
                                   std::span<const int> tuple) {
  if (!family.evaluate_exact || family.normalization != Normalization::S)
    return std::nullopt;
  return family.evaluate_exact(tuple);
}

double cubic_conformal_S(std::span<const int> t) {
  check_tuple(t, 4);
  return *std::min_element(t.begin(), t.end()) + 1.0;
}

double cubic_szego_S(std::span<const int> t) {
  check_tuple(t, 4);
  return 1.0;
}

double quintic_inverse_pair_S(std::span<const int> t) {
  check_tuple(t, 6);
  const double s = bra_sum(t);
  return 1.0 / ((s + 1.0) * (s + 2.0));
}

double quintic_gamma_ratio_S(std::span<const int> t, double delta) {
  check_tuple(t, 6);
  require(delta > 0.0, "quintic_gamma_ratio requires delta > 0");
  // Gamma(delta)^6 / Gamma(3 delta) times ratios of rising factorials.
  double prefactor = std::pow(std::tgamma(delta), 6) / std::tgamma(3.0 * delta);
  if (!std::isfinite(prefactor) || prefactor == 0.0)
    prefactor = std::exp(6.0 * std::lgamma(delta) - std::lgamma(3.0 * delta));
  double v = prefactor;
  for (int n : t) v *= rising_ratio(delta, n);
  v /= rising_ratio(3.0 * delta, bra_sum(t));
  check_result(v, t, "quintic_gamma_ratio");
  return v;
}

double quintic_sine_S(std::span<const int> t) {
  check_tuple(t, 6);
  return trig_product_integral(t);
}

double cubic_sine_prototype_S(std::span<const int> t) {
  check_tuple(t, 4);
  return 2.0 / std::numbers::pi * sine_product_integral(t);
}

double quintic_multinomial_S(std::span<const int> t) {
  check_tuple(t, 6);
  const int s = bra_sum(t);
  double v;
  if (s <= 100) {
    v = 1.0;
    for (int k = 1; k <= s; ++k) v *= k / 3.0;
    for (int n : t)
      for (int k = 2; k <= n; ++k) v /= k;
  } else {
    double log_v = std::lgamma(s + 1.0) - s * std::log(3.0);
    for (int n : t) log_v -= std::lgamma(n + 1.0);
    v = std::exp(log_v);
  }
  check_result(v, t, "quintic_multinomial");
  return v;
}

double quintic_hermite_C(std::span<const int> t) {
  check_tuple(t, 6);
  const int degree = std::accumulate(t.begin(), t.end(), 0);
  const auto& rule =
      cached_rule(QuadratureKind::GaussHermiteScaled, exact_gauss_order(degree));
  const int top = max_index(t);
  double acc = 0.0;
  for (std::size_t q = 0; q < rule.order(); ++q) {
    const auto psi = scaled_hermite_functions(top, rule.nodes[q]);
    double term = rule.bare_weights[q];
    for (int n : t) term *= psi[n];
    acc += term;
  }
  const double v = hermite_prefactor(t) * acc;
  check_result(v, t, "quintic_hermite");
  return v;
}

double quintic_legendre_C(std::span<const int> t) {
  check_tuple(t, 6);
  const int degree = std::accumulate(t.begin(), t.end(), 0);
  const auto& rule =
      cached_rule(QuadratureKind::GaussLegendre, exact_gauss_order(degree));
  double acc = 0.0;
  for (std::size_t q = 0; q < rule.order(); ++q) {
    double term = rule.weights[q];
    for (int n : t) term *= legendre_eval(n, rule.nodes[q]);
    acc += term;
  }
  return acc;
}

Rational quintic_legendre_combinatorial_exact(std::span<const int> t) {
  check_tuple(t, 6);
  // The six-fold sum only depends on the j's through J = sum j_k, so the
  // inner sum is the x^J coefficient of prod_k sum_j binom(n_k, j)^2 x^j.
  std::vector<BigInt> poly{1};
  for (int n : t) {
    std::vector<BigInt> next(poly.size() + n);
    for (std::size_t a = 0; a < poly.size(); ++a) {
      if (poly[a] == 0) continue;
      for (int j = 0; j <= n; ++j) {
        const BigInt b = binomial(n, j);
        next[a + j] += poly[a] * b * b;
      }
    }
    poly = std::move(next);
  }
  const int total = std::accumulate(t.begin(), t.end(), 0);
  Rational sum = 0;
  for (int j = 0; j <= total; ++j) {
    Rational term(poly[j], binomial(total, j));
    sum += (j % 2 == 0) ? term : Rational(-term);
  }
  return sum / (total + 1);
}

double quintic_legendre_combinatorial(std::span<const int> t) {
  return quintic_legendre_combinatorial_exact(t).convert_to<double>();
}

}  // namespace resonant

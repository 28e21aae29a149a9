// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "resonant/mode_space.hpp"

namespace resonant {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

enum class Arity { Cubic, Quintic };

/// Number of indices in a coefficient tuple: 4 for cubic, 6 for quintic.
constexpr int tuple_length(Arity a) noexcept {
  return a == Arity::Cubic ? 4 : 6;
}

/// Which normalization the family's evaluator returns: S = (prod f) C.
enum class Normalization { S, C };

using Evaluator = std::function<double(std::span<const int>)>;
using ExactEvaluator = std::function<Rational(std::span<const int>)>;
/// Builds an evaluator specialised for all indices <= max_index (shared
/// node tables). Used by the tensor builder.
using TabulatedFactory = std::function<Evaluator(int max_index)>;

/// Uniform descriptor for one resonant system.
///
/// Index tuples are ordered bra group first: (n, m, k, l) for cubic systems
/// and (n, m, i, k, l, j) for quintic ones, matching S_{nmkl} and S_{nmiklj}.
/// Callers never pass negative indices; the identity checker short-circuits
/// those to zero.
struct CoefficientFamily {
  std::string name;
  Arity arity = Arity::Cubic;
  WeightParameter g = WeightParameter::infinite();
  Normalization normalization = Normalization::S;
  Evaluator evaluate;
  ExactEvaluator evaluate_exact;  // empty when no exact form exists
  TabulatedFactory tabulate;      // empty when `evaluate` is already cheap
};

/// Registry names accepted by make_family.
std::vector<std::string> family_names();

/// Builds a registered family. `g` overrides the family's native weight
/// parameter (for quintic_gamma_ratio it is delta and defaults to 1).
/// Families native to the infinite limit reject a finite override and vice
/// versa. Unknown names throw InvalidArgument.
CoefficientFamily make_family(std::string_view name,
                              std::optional<WeightParameter> g = std::nullopt);

double to_S(const CoefficientFamily& family, std::span<const int> tuple);
double to_C(const CoefficientFamily& family, std::span<const int> tuple);
/// Exact S value when the family is S-native with an exact evaluator.
std::optional<Rational> to_S_exact(const CoefficientFamily& family,
                                   std::span<const int> tuple);

// Individual families. Quintic tuples are (n, m, i, k, l, j).

double cubic_conformal_S(std::span<const int> t);
double cubic_szego_S(std::span<const int> t);
double quintic_inverse_pair_S(std::span<const int> t);
double quintic_gamma_ratio_S(std::span<const int> t, double delta);
double quintic_sine_S(std::span<const int> t);
double quintic_multinomial_S(std::span<const int> t);
double quintic_hermite_C(std::span<const int> t);
double quintic_legendre_C(std::span<const int> t);

/// Binomial-sum representation of the six-Legendre overlap, exact.
Rational quintic_legendre_combinatorial_exact(std::span<const int> t);
double quintic_legendre_combinatorial(std::span<const int> t);

/// (2/pi) int_0^pi prod of four sines / sin^2; the cubic prototype of the
/// sine family.
double cubic_sine_prototype_S(std::span<const int> t);

}  // namespace resonant

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "resonant/error.hpp"

namespace resonant {

using Complex = std::complex<double>;

/// Finite sequence of complex numbers indexed 0..cutoff. Entries are checked
/// to be finite on construction. The tag keeps mode amplitudes and Taylor
/// coefficients from being mixed up.
template <class Tag>
class ComplexSequence {
 public:
  ComplexSequence() : values_(1) {}

  explicit ComplexSequence(int cutoff) : values_(checked_length(cutoff)) {}

  explicit ComplexSequence(std::vector<Complex> values)
      : values_(std::move(values)) {
    require(!values_.empty(), "sequence must hold at least one entry");
    for (std::size_t n = 0; n < values_.size(); ++n) {
      if (!std::isfinite(values_[n].real()) ||
          !std::isfinite(values_[n].imag()))
        fail(ErrorCode::Overflow,
             "non-finite entry at index " + std::to_string(n));
    }
  }

  static ComplexSequence unit(int index, int cutoff) {
    require(index >= 0 && index <= cutoff, "unit index outside cutoff");
    ComplexSequence s(cutoff);
    s.values_[static_cast<std::size_t>(index)] = 1.0;
    return s;
  }

  int cutoff() const noexcept { return static_cast<int>(values_.size()) - 1; }
  std::size_t size() const noexcept { return values_.size(); }

  Complex operator[](std::size_t n) const { return values_[n]; }
  Complex& operator[](std::size_t n) { return values_[n]; }

  std::span<const Complex> values() const noexcept { return values_; }
  std::span<Complex> values() noexcept { return values_; }

  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  friend bool operator==(const ComplexSequence&,
                         const ComplexSequence&) = default;

 private:
  static std::size_t checked_length(int cutoff) {
    require(cutoff >= 0, "cutoff must be nonnegative");
    return static_cast<std::size_t>(cutoff) + 1;
  }

  std::vector<Complex> values_;
};

struct ModeTag {};
struct SeriesTag {};

/// Amplitudes alpha_0..alpha_K of a truncated mode ladder.
using ModeVector = ComplexSequence<ModeTag>;
/// Taylor coefficients of a generating function at the origin.
using PowerSeries = ComplexSequence<SeriesTag>;

/// Mode-weight parameter G: a positive real or the G -> infinity limit.
class WeightParameter {
 public:
  static WeightParameter finite(double g);
  static WeightParameter infinite() noexcept { return WeightParameter(); }

  bool is_infinite() const noexcept { return infinite_; }
  /// The finite value; throws for the infinite parameter.
  double value() const;

  friend bool operator==(const WeightParameter&,
                         const WeightParameter&) = default;

 private:
  WeightParameter() = default;
  double value_ = 0.0;
  bool infinite_ = true;
};

/// (g)_n = g(g+1)...(g+n-1) by iterated product.
double pochhammer(double g, int n);

/// f_n = sqrt((G)_n / n!), or 1/sqrt(n!) in the infinite case.
double mode_weight(const WeightParameter& g, int n);

/// f_0..f_cutoff in one pass.
std::vector<double> mode_weights(const WeightParameter& g, int cutoff);

/// (g)_n / n!, the factor by which d^{g-1} z^{g-1} scales z^n (the overall
/// Gamma(g) is dropped).
double fractional_diagonal(double g, int n);

ModeVector alpha_to_beta(const ModeVector& alpha, const WeightParameter& g);
ModeVector beta_to_alpha(const ModeVector& beta, const WeightParameter& g);

/// Taylor series of (1 - p z)^{-a}: coefficient n is (a)_n / n! p^n.
PowerSeries binomial_series(double a, Complex p, int cutoff);

/// Cauchy product truncated at the common cutoff.
PowerSeries series_product(const PowerSeries& f, const PowerSeries& g);

}  // namespace resonant

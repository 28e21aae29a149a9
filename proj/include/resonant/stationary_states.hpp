// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <limits>
#include <vector>

#include "resonant/engine.hpp"
#include "resonant/mode_space.hpp"

namespace resonant {

/// Amplitudes of a closed-form stationary state plus its bifurcation data.
/// lambda and residual stay NaN until the state is verified.
struct StationaryState {
  ModeVector alpha;
  int mode = 0;
  Complex p{};
  WeightParameter g = WeightParameter::infinite();
  double lambda = std::numeric_limits<double>::quiet_NaN();
  double residual = std::numeric_limits<double>::quiet_NaN();
};

struct StationarityReport {
  double lambda = 0.0;
  /// ||F - lambda alpha|| / ||alpha|| over the verification window.
  double residual = 0.0;
  /// Im(<alpha, F>) / <alpha, alpha>; zero for a genuine stationary state.
  double imag_ratio = 0.0;
  int window = 0;
};

/// alpha_n = f_n p^n.
StationaryState mode0_state(const WeightParameter& g, Complex p, int cutoff);

/// beta_n = t_n / ((G)_n / n!) where t_n are the Taylor coefficients of
/// (conj(p) - z)^N / (1 - p z)^(N + G); alpha_n = f_n beta_n. Unnormalized.
StationaryState modeN_state(double g, Complex p, int mode, int cutoff);

/// A single excited mode of the given amplitude.
StationaryState single_mode_state(const WeightParameter& g, int mode,
                                  int cutoff, Complex amplitude = 1.0);

/// c_0..c_N with beta(z) = sum_k c_k / (1 - p z)^(k+1) for the mode-N
/// state. Refuses |p| < 1e-3.
std::vector<Complex> modeN_partial_fractions(double g, Complex p, int mode);

/// Taylor coefficients of sum_k c_k / (1 - p z)^(k+1).
PowerSeries partial_fraction_series(const std::vector<Complex>& c, Complex p,
                                    int cutoff);

/// u(z) -> u(z - conj(p)) exp(p z - |p|^2 / 2) on u = sum alpha_n z^n /
/// sqrt(n!), truncated at the input cutoff.
ModeVector magnetic_translate(const ModeVector& alpha, Complex p);

/// Fits lambda = Re <alpha, F> / <alpha, alpha> and the residual over modes
/// n <= window (window < 0 means the whole cutoff). Rejects the zero state.
StationarityReport verify_stationary(const CouplingTensor& tensor,
                                     const ModeVector& alpha,
                                     int window = -1);

/// 1 / (1 - |p|^2)^G.
double lambda_mode0_closed_form(double g, Complex p);

}  // namespace resonant

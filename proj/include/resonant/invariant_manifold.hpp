// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "resonant/engine.hpp"
#include "resonant/mode_space.hpp"

namespace resonant {

/// beta_n = (b + n a) p^n.
struct ManifoldPoint {
  Complex a{};
  Complex b{};
  Complex p{};
};

struct ManifoldFitReport {
  ManifoldPoint point;
  /// ||beta - (b + n a) p^n|| / ||beta||.
  double residual = 0.0;
};

/// alpha_n = f_n (b + n a) p^n.
ModeVector manifold_state(const ManifoldPoint& point, const WeightParameter& g,
                          int cutoff);

/// beta_n = (b + n a) p^n without the weights.
ModeVector manifold_beta(const ManifoldPoint& point, int cutoff);

/// Least-squares fit of beta to the manifold form. Starts from `guess` when
/// given and falls back to a polar grid over |p| <= 0.95 when that start
/// does not converge; (a, b) are solved exactly at each trial p, then all
/// three parameters are polished by damped Gauss-Newton. Needs at least
/// four modes above 1e-14 of the largest.
ManifoldFitReport fit_manifold(const ModeVector& beta,
                               std::optional<ManifoldPoint> guess = {});

struct ManifoldTrack {
  Trajectory trajectory;
  std::vector<ManifoldFitReport> fits;
  double max_residual = 0.0;
  bool passed = false;
};

/// Integrates the cubic flow from manifold_state(point0) and fits every
/// sample; passes when every residual is <= tolerance.
ManifoldTrack track_manifold(const CouplingTensor& tensor,
                             const ManifoldPoint& point0, double t_end,
                             const StepControl& control, double tolerance);

struct SpectrumPeriod {
  bool found = false;
  /// Spectrum never moved: every sample is a recurrence.
  bool degenerate = false;
  double period = 0.0;
  /// D at the refined minimum.
  double mismatch = 0.0;
  double d_max = 0.0;
  /// Refined times of every recurrence found, in order.
  std::vector<double> recurrences;
};

/// D(t) = sum_n (|beta_n(t)|^2 - |beta_n(0)|^2)^2 over the samples.
std::vector<double> spectrum_distance(const Trajectory& trajectory,
                                      const WeightParameter& g);

/// Recurrences are interior local minima of D below 1e-4 D_max, refined by
/// a parabola through the neighbouring samples.
SpectrumPeriod spectrum_period(const Trajectory& trajectory,
                               const WeightParameter& g);

/// Re-minimizes D near `estimate` by golden-section search, evolving from
/// the nearest earlier sample with the given step; returns the refined
/// period with D evaluated on the integrated state.
SpectrumPeriod refine_period(const CouplingTensor& tensor,
                             const Trajectory& trajectory,
                             const SpectrumPeriod& estimate, double step);

}  // namespace resonant

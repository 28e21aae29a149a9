// SPDX-License-Identifier: Apache-2.0
#include "resonant/invariant_manifold.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace resonant {

namespace {

constexpr int kRadii = 20;
constexpr int kAngles = 64;
constexpr double kMaxRadius = 0.95;

double squared_norm(const ModeVector& v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return s;
}

/// Squared misfit of beta against (b + n a) p^n.
double misfit(const ModeVector& beta, const ManifoldPoint& q) {
  double s = 0.0;
  Complex power = 1.0;
  for (std::size_t n = 0; n < beta.size(); ++n) {
    s += std::norm(beta[n] - (q.b + static_cast<double>(n) * q.a) * power);
    power *= q.p;
  }
  return s;
}

/// Exact least squares for (a, b) at fixed p.
ManifoldPoint solve_linear(const ModeVector& beta, Complex p) {
  const auto rows = static_cast<Eigen::Index>(beta.size());
  Eigen::MatrixXcd m(rows, 2);
  Eigen::VectorXcd y(rows);
  Complex power = 1.0;
  for (Eigen::Index n = 0; n < rows; ++n) {
    m(n, 0) = power;
    m(n, 1) = static_cast<double>(n) * power;
    y(n) = beta[static_cast<std::size_t>(n)];
    power *= p;
  }
  const Eigen::Vector2cd x = m.colPivHouseholderQr().solve(y);
  ManifoldPoint q{x(1), x(0), p};
  if (!std::isfinite(std::abs(q.a)) || !std::isfinite(std::abs(q.b)))
    q = ManifoldPoint{0.0, 0.0, p};
  return q;
}

/// Damped Gauss-Newton on (b, a, p); the model is holomorphic in all three
/// so the complex normal equations apply directly.
ManifoldPoint polish(const ModeVector& beta, ManifoldPoint q) {
  const auto rows = static_cast<Eigen::Index>(beta.size());
  const double scale = squared_norm(beta);
  double cost = misfit(beta, q);
  double mu = 1e-3;
  Eigen::MatrixXcd jac(rows, 3);
  Eigen::VectorXcd r(rows);
  for (int iter = 0; iter < 200 && cost > 1e-32 * scale; ++iter) {
    Complex power = 1.0, lower = 0.0;  // p^n, p^(n-1)
    for (Eigen::Index n = 0; n < rows; ++n) {
      const double dn = static_cast<double>(n);
      const Complex coeff = q.b + dn * q.a;
      jac(n, 0) = power;
      jac(n, 1) = dn * power;
      jac(n, 2) = coeff * dn * lower;
      r(n) = beta[static_cast<std::size_t>(n)] - coeff * power;
      lower = power;
      power *= q.p;
    }
    const Eigen::Matrix3cd normal = jac.adjoint() * jac;
    const Eigen::Vector3cd grad = jac.adjoint() * r;
    bool improved = false;
    while (mu < 1e20) {
      Eigen::Matrix3cd damped = normal;
      for (int d = 0; d < 3; ++d)
        damped(d, d) += mu * std::max(normal(d, d).real(), 1e-300);
      const Eigen::Vector3cd step = damped.ldlt().solve(grad);
      const ManifoldPoint trial{q.a + step(1), q.b + step(0), q.p + step(2)};
      const double trial_cost = std::abs(trial.p) < 1.0
                                    ? misfit(beta, trial)
                                    : std::numeric_limits<double>::infinity();
      if (std::isfinite(trial_cost) && trial_cost < cost) {
        const double size = step.norm();
        q = trial;
        cost = trial_cost;
        mu = std::max(mu * 0.3, 1e-12);
        improved = true;
        if (size <= 1e-15 * (std::abs(q.a) + std::abs(q.b) + std::abs(q.p)))
          return q;
        break;
      }
      mu *= 10.0;
    }
    if (!improved) break;
  }
  return q;
}

ManifoldFitReport report_for(const ModeVector& beta, const ManifoldPoint& q) {
  return ManifoldFitReport{q, std::sqrt(misfit(beta, q) / squared_norm(beta))};
}

}  // namespace

ModeVector manifold_beta(const ManifoldPoint& point, int cutoff) {
  require(std::abs(point.p) < 1.0, "|p| must be below 1");
  require(point.a != Complex{} || point.b != Complex{},
          "a and b must not both vanish");
  std::vector<Complex> beta(static_cast<std::size_t>(cutoff) + 1);
  Complex power = 1.0;
  for (int n = 0; n <= cutoff; ++n) {
    beta[n] = (point.b + static_cast<double>(n) * point.a) * power;
    power *= point.p;
  }
  return ModeVector(std::move(beta));
}

ModeVector manifold_state(const ManifoldPoint& point, const WeightParameter& g,
                          int cutoff) {
  return beta_to_alpha(manifold_beta(point, cutoff), g);
}

ManifoldFitReport fit_manifold(const ModeVector& beta,
                               std::optional<ManifoldPoint> guess) {
  double largest = 0.0;
  for (const auto& z : beta) largest = std::max(largest, std::abs(z));
  const auto significant = std::count_if(
      beta.begin(), beta.end(),
      [&](const Complex& z) { return std::abs(z) > 1e-14 * largest; });
  if (largest == 0.0 || significant < 4)
    fail(ErrorCode::Degenerate, "manifold fit needs at least 4 significant modes");

  ManifoldFitReport best;
  bool have = false;
  if (guess && std::abs(guess->p) < 1.0) {
    best = report_for(beta, polish(beta, *guess));
    have = true;
    if (best.residual <= 1e-8) return best;
  }

  // Coarse polar grid with exact inner solves; polish the three best.
  std::vector<std::pair<double, ManifoldPoint>> candidates;
  for (int i = 0; i < kRadii; ++i) {
    const double radius = kMaxRadius * i / (kRadii - 1);
    const int angles = i == 0 ? 1 : kAngles;
    for (int j = 0; j < angles; ++j) {
      const Complex p =
          std::polar(radius, 2.0 * std::numbers::pi * j / kAngles);
      const ManifoldPoint q = solve_linear(beta, p);
      candidates.emplace_back(misfit(beta, q), q);
    }
  }
  const std::size_t keep = std::min<std::size_t>(3, candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + keep,
                    candidates.end(), [](const auto& x, const auto& y) {
                      return x.first < y.first;
                    });
  for (std::size_t c = 0; c < keep; ++c) {
    const auto r = report_for(beta, polish(beta, candidates[c].second));
    if (!have || r.residual < best.residual) {
      best = r;
      have = true;
    }
  }
  return best;
}

ManifoldTrack track_manifold(const CouplingTensor& tensor,
                             const ManifoldPoint& point0, double t_end,
                             const StepControl& control, double tolerance) {
  require(tensor.arity() == Arity::Cubic,
          "the invariant manifold is defined for cubic systems");
  require(tolerance > 0.0, "tolerance must be positive");
  const WeightParameter& g = tensor.g();
  ManifoldTrack track;
  track.trajectory =
      integrate(tensor, g, manifold_state(point0, g, tensor.cutoff()), t_end,
                control);
  std::optional<ManifoldPoint> guess = point0;
  for (const auto& state : track.trajectory.states()) {
    auto fit = fit_manifold(alpha_to_beta(state, g), guess);
    guess = fit.point;
    track.max_residual = std::max(track.max_residual, fit.residual);
    track.fits.push_back(fit);
  }
  track.passed = track.max_residual <= tolerance;
  return track;
}

std::vector<double> spectrum_distance(const Trajectory& trajectory,
                                      const WeightParameter& g) {
  std::vector<double> d;
  if (trajectory.size() == 0) return d;
  const ModeVector beta0 = alpha_to_beta(trajectory.states().front(), g);
  for (const auto& state : trajectory.states()) {
    const ModeVector beta = alpha_to_beta(state, g);
    double s = 0.0;
    for (std::size_t n = 0; n < beta.size(); ++n) {
      const double diff = std::norm(beta[n]) - std::norm(beta0[n]);
      s += diff * diff;
    }
    d.push_back(s);
  }
  return d;
}

SpectrumPeriod spectrum_period(const Trajectory& trajectory,
                               const WeightParameter& g) {
  SpectrumPeriod out;
  const auto d = spectrum_distance(trajectory, g);
  if (d.size() < 3) return out;
  const auto& t = trajectory.times();
  out.d_max = *std::max_element(d.begin(), d.end());
  const double n0 = squared_norm(alpha_to_beta(trajectory.states().front(), g));
  if (out.d_max <= 1e-16 * n0 * n0) {
    out.degenerate = true;
    return out;
  }
  const double threshold = 1e-4 * out.d_max;
  for (std::size_t i = 1; i + 1 < d.size(); ++i) {
    if (!(d[i] <= d[i - 1] && d[i] < d[i + 1] && d[i] < threshold)) continue;
    // Vertex of the parabola through the three samples.
    const double x0 = t[i - 1], x1 = t[i], x2 = t[i + 1];
    const double y0 = d[i - 1], y1 = d[i], y2 = d[i + 1];
    const double num = (x1 - x0) * (x1 - x0) * (y1 - y2) -
                       (x1 - x2) * (x1 - x2) * (y1 - y0);
    const double den = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0);
    double vertex = den != 0.0 ? x1 - 0.5 * num / den : x1;
    vertex = std::clamp(vertex, x0, x2);
    const double l0 = (vertex - x1) * (vertex - x2) / ((x0 - x1) * (x0 - x2));
    const double l1 = (vertex - x0) * (vertex - x2) / ((x1 - x0) * (x1 - x2));
    const double l2 = (vertex - x0) * (vertex - x1) / ((x2 - x0) * (x2 - x1));
    const double value = std::max(0.0, l0 * y0 + l1 * y1 + l2 * y2);
    if (!out.found) {
      out.found = true;
      out.period = vertex;
      out.mismatch = value;
    }
    out.recurrences.push_back(vertex);
  }
  return out;
}

SpectrumPeriod refine_period(const CouplingTensor& tensor,
                             const Trajectory& trajectory,
                             const SpectrumPeriod& estimate, double step) {
  if (!estimate.found) return estimate;
  require(step > 0.0, "step must be positive");
  const WeightParameter& g = tensor.g();
  const auto& t = trajectory.times();
  const auto& states = trajectory.states();
  const ModeVector beta0 = alpha_to_beta(states.front(), g);
  SpectrumPeriod out = estimate;
  out.recurrences.clear();

  for (std::size_t r = 0; r < estimate.recurrences.size(); ++r) {
    const double guess = estimate.recurrences[r];
    // Bracket: samples on either side of the estimate, one sample wide.
    auto it = std::upper_bound(t.begin(), t.end(), guess);
    std::size_t hi = std::min<std::size_t>(it - t.begin(), t.size() - 1);
    std::size_t lo = hi > 1 ? hi - 2 : 0;
    hi = std::min(hi + 1, t.size() - 1);
    const ModeVector& anchor = states[lo];
    const double t_anchor = t[lo];
    auto distance_at = [&](double time) {
      const ModeVector alpha =
          time == t_anchor ? anchor
                           : evolve_to(tensor, anchor, time - t_anchor, step);
      const ModeVector beta = alpha_to_beta(alpha, g);
      double s = 0.0;
      for (std::size_t n = 0; n < beta.size(); ++n) {
        const double diff = std::norm(beta[n]) - std::norm(beta0[n]);
        s += diff * diff;
      }
      return s;
    };
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = t[lo], b = t[hi];
    double c = b - ratio * (b - a), e = a + ratio * (b - a);
    double fc = distance_at(c), fe = distance_at(e);
    for (int iter = 0; iter < 60 && b - a > 1e-13 * std::max(1.0, b); ++iter) {
      if (fc < fe) {
        b = e;
        e = c;
        fe = fc;
        c = b - ratio * (b - a);
        fc = distance_at(c);
      } else {
        a = c;
        c = e;
        fc = fe;
        e = a + ratio * (b - a);
        fe = distance_at(e);
      }
    }
    const double best_t = fc < fe ? c : e;
    const double best_d = std::min(fc, fe);
    if (r == 0) {
      out.period = best_t;
      out.mismatch = best_d;
    }
    out.recurrences.push_back(best_t);
  }
  return out;
}

}  // namespace resonant

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "resonant/coefficient_families.hpp"
#include "resonant/mode_space.hpp"

namespace resonant {

/// One canonical resonant tuple: bra and ket groups each sorted ascending,
/// bra group lexicographically <= ket group. Only the first
/// tuple_length(arity) indices are meaningful.
struct TensorEntry {
  std::array<std::uint16_t, 6> indices{};
  /// Number of ordered tuples of the full symmetric tensor represented.
  std::uint32_t multiplicity = 0;
  /// C-normalized coefficient.
  double value = 0.0;
};

/// Sparse C-normalized interaction tensor over resonant tuples with every
/// index <= cutoff, stored once per symmetry class.
class CouplingTensor {
 public:
  CouplingTensor(std::string family, Arity arity, WeightParameter g,
                 int cutoff, std::vector<TensorEntry> entries);

  const std::string& family() const noexcept { return family_; }
  Arity arity() const noexcept { return arity_; }
  const WeightParameter& g() const noexcept { return g_; }
  int cutoff() const noexcept { return cutoff_; }
  const std::vector<TensorEntry>& entries() const noexcept { return entries_; }

  /// Sum of multiplicities: the number of ordered resonant tuples.
  std::uint64_t ordered_count() const noexcept;

  /// Coefficient of an arbitrary ordered tuple; 0 when not resonant.
  double coefficient(std::span<const int> tuple) const;

 private:
  std::string family_;
  Arity arity_;
  WeightParameter g_;
  int cutoff_;
  std::vector<TensorEntry> entries_;
};

/// Multiplicity of a canonical entry: ordered arrangements of each group,
/// doubled when the two groups differ.
std::uint32_t canonical_multiplicity(std::span<const int> bra,
                                     std::span<const int> ket);

/// Tabulates C over canonical resonant tuples. S-native families are
/// converted once here.
CouplingTensor build_tensor(const CoefficientFamily& family, int cutoff);

/// F_n with i d(alpha_n)/dt = F_n, summing over all ordered resonant tuples.
ModeVector rhs(const CouplingTensor& tensor, const ModeVector& alpha);
ModeVector rhs_cubic(const CouplingTensor& tensor, const ModeVector& alpha);
ModeVector rhs_quintic(const CouplingTensor& tensor, const ModeVector& alpha);

struct ConservedSet {
  double norm = 0.0;     // N = sum |alpha_n|^2
  double energy = 0.0;   // E = sum n |alpha_n|^2
  double hamiltonian = 0.0;
  Complex charge{};      // Z
};

/// H = (1/2) sum C conj conj a a (cubic) or (1/3) sum C ... (quintic);
/// Z = sum_{n<K} sqrt((n+1)(n+G)) conj(alpha_{n+1}) alpha_n, with
/// sqrt(n+1) replacing the weight in the infinite-G limit.
ConservedSet conserved_set(const ModeVector& alpha, const WeightParameter& g,
                           const CouplingTensor& tensor);

Complex charge(const ModeVector& alpha, const WeightParameter& g);

struct StepControl {
  double step = 1e-3;
  /// Spacing between recorded samples; <= 0 records every step.
  double sample_interval = 0.0;
  /// When set, each step is compared with two half steps and halved until
  /// the difference (max abs) falls below this tolerance.
  std::optional<double> halving_tolerance;
  double min_step = 1e-12;
};

struct Drift {
  double norm = 0.0;
  double energy = 0.0;
  double hamiltonian = 0.0;
  double charge = 0.0;  // of |Z|

  double max() const noexcept;
};

/// Sampled evolution with conserved-quantity diagnostics per sample.
class Trajectory {
 public:
  void append(double t, ModeVector state, ConservedSet conserved);

  std::size_t size() const noexcept { return times_.size(); }
  const std::vector<double>& times() const noexcept { return times_; }
  const std::vector<ModeVector>& states() const noexcept { return states_; }
  const std::vector<ConservedSet>& conserved() const noexcept {
    return conserved_;
  }

  /// Max over samples of |X(t) - X(0)| / |X(0)| (absolute when X(0) = 0).
  Drift max_relative_drift() const;

 private:
  std::vector<double> times_;
  std::vector<ModeVector> states_;
  std::vector<ConservedSet> conserved_;
};

/// One classical fourth-order Runge-Kutta step of d(alpha)/dt = -i F(alpha).
ModeVector rk4_step(const CouplingTensor& tensor, const ModeVector& alpha,
                    double h);

/// Integrates from t = 0 to t_end (negative t_end integrates backwards).
/// Throws Integration on non-finite state, reporting the time.
Trajectory integrate(const CouplingTensor& tensor, const WeightParameter& g,
                     const ModeVector& alpha0, double t_end,
                     const StepControl& control);

/// Final state only; no diagnostics.
ModeVector evolve_to(const CouplingTensor& tensor, const ModeVector& alpha0,
                     double duration, double step);

// Text formats.

/// Header `resonant-tensor family=... arity=cubic|quintic G=...|inf
/// cutoff=K entries=E` then one record per canonical tuple: indices,
/// multiplicity, coefficient with 17 significant digits.
void write_tensor(std::ostream& out, const CouplingTensor& tensor);
CouplingTensor read_tensor(std::istream& in);

/// Optional per-sample manifold-fit columns appended to the trajectory CSV.
struct FitColumns {
  std::vector<double> residual, abs_a, abs_b, abs_p;
};

/// CSV: t, re_0, im_0, ..., N, E, H, re_Z, im_Z [, residual, abs_a, abs_b,
/// abs_p]; numbers with 17 significant digits.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory,
                          const FitColumns* fits = nullptr);

/// Mode-amplitude CSV for a single state: n, re, im.
void write_state_csv(std::ostream& out, const ModeVector& alpha);

/// Seeded decaying data |alpha_n| = u_n 2^{-n}, u_n uniform in [0, 1),
/// uniform phases. Uses a portable 64-bit Mersenne twister mapping.
ModeVector random_decaying_state(std::uint64_t seed, int cutoff);

}  // namespace resonant

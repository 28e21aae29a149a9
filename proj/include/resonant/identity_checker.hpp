// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <string>
#include <vector>

#include "resonant/coefficient_families.hpp"

namespace resonant {

enum class IdentityCondition {
  CubicFinite,      // cubic finite-difference condition on S_{nmkl}
  QuinticFinite,   // quintic condition with finite G
  QuinticInfinite  // quintic condition in the G -> infinity limit
};

std::string to_string(IdentityCondition c);

struct IdentityReport {
  std::string family;
  IdentityCondition condition = IdentityCondition::CubicFinite;
  /// Per-index bound B (cubic) or bra-side index-sum bound D (quintic).
  int bound = 0;
  std::size_t tuples_checked = 0;
  /// max |LHS| over all checked tuples.
  double max_residual = 0.0;
  /// max |LHS| / max(1, largest |term| of that LHS).
  double max_scaled_residual = 0.0;
  std::vector<int> worst_tuple;
  double tolerance = 0.0;
  /// Every LHS was evaluated in exact rational arithmetic.
  bool exact = false;
  /// |LHS| <= tolerance * max(1, largest |term|) for every tuple.
  bool passed = false;
};

/// All (n, m, k, l) in [0, B]^4 with n + m - 1 = k + l, lexicographic.
std::vector<std::array<int, 4>> enumerate_cubic_offset_tuples(int max_index);

/// All (n, m, i, k, l, j) with n + m + i - k - l - j = 1 and bra-side sum
/// n + m + i in [1, D], lexicographic.
std::vector<std::array<int, 6>> enumerate_quintic_offset_tuples(int max_total);

IdentityReport check_cubic_identity(const CoefficientFamily& family, double g,
                                    int max_index, double tolerance);

IdentityReport check_quintic_identity(const CoefficientFamily& family,
                                      double g, int max_total,
                                      double tolerance);

IdentityReport check_quintic_identity_inf(const CoefficientFamily& family,
                                          int max_total, double tolerance);

/// Dispatches on arity and on whether the family's G is infinite, using the
/// family's own G.
IdentityReport check_identity(const CoefficientFamily& family, int bound,
                              double tolerance);

}  // namespace resonant

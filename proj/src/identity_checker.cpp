// SPDX-License-Identifier: Apache-2.0
#include "resonant/identity_checker.hpp"

#include <algorithm>
#include <cmath>

namespace resonant {

namespace {

/// One term c * S(shifted) of a finite-difference identity. Terms with a
/// negative shifted index are dropped before evaluation.
struct Term {
  double coefficient;
  Rational exact_coefficient;
  std::array<int, 6> tuple;
};

struct Shifts {
  // Coefficient (index - 1 + G) for lowered bra indices; exact_g empty for
  // the infinite limit where it is 1.
  std::optional<Rational> exact_g;
  double g = 0.0;
  bool infinite = false;
};

std::vector<Term> identity_terms(std::span<const int> t, const Shifts& s) {
  const std::size_t half = t.size() / 2;
  std::vector<Term> terms;
  for (std::size_t a = 0; a < t.size(); ++a) {
    Term term{};
    std::copy(t.begin(), t.end(), term.tuple.begin());
    if (a < half) {
      term.tuple[a] -= 1;
      if (term.tuple[a] < 0) continue;
      if (s.infinite) {
        term.coefficient = 1.0;
        term.exact_coefficient = 1;
      } else {
        term.coefficient = t[a] - 1 + s.g;
        if (s.exact_g) term.exact_coefficient = Rational(t[a] - 1) + *s.exact_g;
      }
    } else {
      term.tuple[a] += 1;
      term.coefficient = -(t[a] + 1.0);
      term.exact_coefficient = -(t[a] + 1);
    }
    terms.push_back(term);
  }
  return terms;
}

template <std::size_t Length>
IdentityReport run_check(const CoefficientFamily& family,
                         const std::vector<std::array<int, Length>>& tuples,
                         const Shifts& shifts, IdentityReport report) {
  report.family = family.name;
  report.tuples_checked = tuples.size();
  report.exact = static_cast<bool>(family.evaluate_exact) &&
                 family.normalization == Normalization::S &&
                 (shifts.infinite || shifts.exact_g.has_value());
  report.passed = true;
  for (const auto& t : tuples) {
    const auto terms = identity_terms(t, shifts);
    double lhs = 0.0;
    double largest = 0.0;
    if (report.exact) {
      Rational exact = 0;
      for (const auto& term : terms) {
        const std::span<const int> shifted(term.tuple.data(), Length);
        const Rational v = *to_S_exact(family, shifted);
        exact += term.exact_coefficient * v;
        largest = std::max(largest,
                           std::abs(term.coefficient * v.convert_to<double>()));
      }
      lhs = std::abs(exact.convert_to<double>());
    } else {
      double acc = 0.0;
      for (const auto& term : terms) {
        const std::span<const int> shifted(term.tuple.data(), Length);
        const double v = term.coefficient * to_S(family, shifted);
        acc += v;
        largest = std::max(largest, std::abs(v));
      }
      lhs = std::abs(acc);
    }
    const double scaled = lhs / std::max(1.0, largest);
    if (report.worst_tuple.empty() || lhs > report.max_residual) {
      report.max_residual = lhs;
      report.worst_tuple.assign(t.begin(), t.end());
    }
    report.max_scaled_residual = std::max(report.max_scaled_residual, scaled);
    if (scaled > report.tolerance) report.passed = false;
  }
  return report;
}

std::optional<Rational> exact_weight(double g) {
  // Every finite double is an exact binary rational.
  if (!std::isfinite(g)) return std::nullopt;
  return Rational(g);
}

}  // namespace

std::string to_string(IdentityCondition c) {
  switch (c) {
    case IdentityCondition::CubicFinite:
      return "cubic_finite_g";
    case IdentityCondition::QuinticFinite:
      return "quintic_finite_g";
    case IdentityCondition::QuinticInfinite:
      return "quintic_infinite_g";
  }
  return "unknown";
}

std::vector<std::array<int, 4>> enumerate_cubic_offset_tuples(int max_index) {
  require(max_index >= 0, "max_index must be nonnegative");
  std::vector<std::array<int, 4>> out;
  const int b = max_index;
  for (int n = 0; n <= b; ++n)
    for (int m = 0; m <= b; ++m)
      for (int k = 0; k <= b; ++k) {
        const int l = n + m - 1 - k;
        if (l >= 0 && l <= b) out.push_back({n, m, k, l});
      }
  return out;
}

std::vector<std::array<int, 6>> enumerate_quintic_offset_tuples(int max_total) {
  require(max_total >= 0, "max_total must be nonnegative");
  std::vector<std::array<int, 6>> out;
  const int d = max_total;
  for (int n = 0; n <= d; ++n)
    for (int m = 0; n + m <= d; ++m)
      for (int i = 0; n + m + i <= d; ++i) {
        const int s = n + m + i;
        if (s < 1) continue;
        const int ket = s - 1;
        for (int k = 0; k <= ket; ++k)
          for (int l = 0; k + l <= ket; ++l)
            out.push_back({n, m, i, k, l, ket - k - l});
      }
  return out;
}

IdentityReport check_cubic_identity(const CoefficientFamily& family, double g,
                                    int max_index, double tolerance) {
  require(family.arity == Arity::Cubic, "cubic identity needs a cubic family");
  require(g > 0.0, "G must be positive");
  require(tolerance > 0.0, "tolerance must be positive");
  IdentityReport report;
  report.condition = IdentityCondition::CubicFinite;
  report.bound = max_index;
  report.tolerance = tolerance;
  Shifts shifts{exact_weight(g), g, false};
  return run_check(family, enumerate_cubic_offset_tuples(max_index), shifts,
                   report);
}

IdentityReport check_quintic_identity(const CoefficientFamily& family,
                                      double g, int max_total,
                                      double tolerance) {
  require(family.arity == Arity::Quintic,
          "quintic identity needs a quintic family");
  require(g > 0.0, "G must be positive");
  require(tolerance > 0.0, "tolerance must be positive");
  IdentityReport report;
  report.condition = IdentityCondition::QuinticFinite;
  report.bound = max_total;
  report.tolerance = tolerance;
  Shifts shifts{exact_weight(g), g, false};
  return run_check(family, enumerate_quintic_offset_tuples(max_total), shifts,
                   report);
}

IdentityReport check_quintic_identity_inf(const CoefficientFamily& family,
                                          int max_total, double tolerance) {
  require(family.arity == Arity::Quintic,
          "quintic identity needs a quintic family");
  require(family.g.is_infinite(),
          "the infinite-G condition needs a family with infinite G");
  require(tolerance > 0.0, "tolerance must be positive");
  IdentityReport report;
  report.condition = IdentityCondition::QuinticInfinite;
  report.bound = max_total;
  report.tolerance = tolerance;
  Shifts shifts{std::nullopt, 0.0, true};
  return run_check(family, enumerate_quintic_offset_tuples(max_total), shifts,
                   report);
}

IdentityReport check_identity(const CoefficientFamily& family, int bound,
                              double tolerance) {
  if (family.arity == Arity::Cubic) {
    require(!family.g.is_infinite(),
            "cubic identity is checked for finite G only");
    return check_cubic_identity(family, family.g.value(), bound, tolerance);
  }
  if (family.g.is_infinite())
    return check_quintic_identity_inf(family, bound, tolerance);
  return check_quintic_identity(family, family.g.value(), bound, tolerance);
}

}  // namespace resonant

// SPDX-License-Identifier: Apache-2.0
// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "resonant/identity_checker.hpp"
#include "resonant/invariant_manifold.hpp"
#include "resonant/stationary_states.hpp"

using namespace resonant;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome identity_exact() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = check_identity(make_family("cubic_conformal"), 20, 1e-12);
  const double secs = seconds_since(t0);
  return {r.exact && r.max_residual == 0.0 && secs < 10.0,
          fmt("tuples=%zu exact=%d residual=%g time=%.2fs", r.tuples_checked, r.exact,
              r.max_residual, secs)};
}

Outcome identity_numerical() {
  const auto t0 = std::chrono::steady_clock::now();
  struct Case {
    const char* name;
    std::optional<WeightParameter> g;
    int bound;
  };
  const std::vector<Case> cases{
      {"quintic_inverse_pair", {}, 12},
      {"quintic_gamma_ratio", WeightParameter::finite(0.5), 12},
      {"quintic_gamma_ratio", WeightParameter::finite(1.0), 12},
      {"quintic_gamma_ratio", WeightParameter::finite(2.5), 12},
      {"quintic_sine", {}, 8},
      {"quintic_multinomial", {}, 12},
      {"quintic_hermite", {}, 8},
      {"quintic_legendre", {}, 8},
  };
  bool ok = true;
  double worst = 0.0;
  std::string detail;
  for (const auto& c : cases) {
    const auto r = check_identity(make_family(c.name, c.g), c.bound, 1e-10);
    ok = ok && r.max_residual <= 1e-10;
    worst = std::max(worst, r.max_residual);
    detail += fmt(" %s%s:%.1e%s", c.name,
                  c.g ? fmt("(%g)", c.g->value()).c_str() : "", r.max_residual,
                  r.exact ? "(exact)" : "");
  }
  const double secs = seconds_since(t0);
  return {ok && secs < 300.0, fmt("max=%.2e time=%.1fs", worst, secs) + detail};
}

Outcome negative_control() {
  const auto f = make_family("cubic_szego");
  const auto r = check_identity(f, 10, 1e-12);
  // every tuple individually, in exact arithmetic with G = 1
  const Rational g = 1;
  bool all_one = true;
  for (const auto& t : enumerate_cubic_offset_tuples(10)) {
    Rational lhs = 0;
    for (int a = 0; a < 4; ++a) {
      std::array<int, 4> s = t;
      if (a < 2) {
        if (--s[a] < 0) continue;
        lhs += (Rational(t[a] - 1) + g) * *to_S_exact(f, s);
      } else {
        ++s[a];
        lhs -= Rational(t[a] + 1) * *to_S_exact(f, s);
      }
    }
    all_one = all_one && lhs == -1;
  }
  const auto tensor = build_tensor(f, 24);
  StepControl control;
  control.step = 1e-3;
  control.sample_interval = 0.1;
  double min_drift = std::numeric_limits<double>::infinity(), max_drift = 0.0;
  for (std::uint64_t seed : {1, 2, 3, 12345}) {
    const auto traj =
        integrate(tensor, f.g, random_decaying_state(seed, 24), 10.0, control);
    const double d = traj.max_relative_drift().charge;
    min_drift = std::min(min_drift, d);
    max_drift = std::max(max_drift, d);
  }
  const bool flagged_identity = !r.passed && r.max_residual == 1.0 && all_one;
  const bool flagged_drift = min_drift > 1e-8 && max_drift >= 0.1;
  return {flagged_identity && flagged_drift,
          fmt("identity FAIL flagged=%d residual=%g per-tuple=-1:%d; |Z| drift over seeds "
              "in [%.3g, %.3g]",
              !r.passed, r.max_residual, all_one, min_drift, max_drift)};
}

Outcome conservation() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto g2 = WeightParameter::finite(2.0);
  const auto tensor = build_tensor(make_family("cubic_conformal"), 24);
  const auto a0 = random_decaying_state(12345, 24);
  StepControl control;
  control.step = 1e-3;
  control.sample_interval = 0.1;
  const auto drift = integrate(tensor, g2, a0, 30.0, control).max_relative_drift();

  std::vector<double> drifts;
  for (double h : {0.04, 0.02, 0.01}) {
    control.step = h;
    control.sample_interval = 0.2;
    drifts.push_back(integrate(tensor, g2, a0, 30.0, control).max_relative_drift().max());
  }
  const double o1 = std::log2(drifts[0] / drifts[1]);
  const double o2 = std::log2(drifts[1] / drifts[2]);
  const double secs = seconds_since(t0);
  const bool ok = drift.max() <= 1e-8 && o1 >= 3.5 && o1 <= 4.5 && o2 >= 3.5 &&
                  o2 <= 4.5 && secs < 120.0;
  return {ok, fmt("drift N=%.1e E=%.1e H=%.1e |Z|=%.1e; orders %.2f %.2f "
                  "(h=0.04/0.02/0.01 drifts %.2e %.2e %.2e) time=%.1fs",
                  drift.norm, drift.energy, drift.hamiltonian, drift.charge, o1, o2,
                  drifts[0], drifts[1], drifts[2], secs)};
}

Outcome lambda_closed_form() {
  const auto tensor = build_tensor(make_family("cubic_conformal"), 48);
  bool ok = true;
  std::string detail;
  for (double r : {0.1, 0.3, 0.5}) {
    const auto s = mode0_state(WeightParameter::finite(2.0), r, 48);
    const auto rep = verify_stationary(tensor, s.alpha, 32);
    const double expect = 1.0 / std::pow(1.0 - r * r, 2);
    const double rel = std::abs(rep.lambda - expect) / expect;
    ok = ok && rel <= 1e-8;
    detail += fmt(" |p|=%g: lambda=%.15g rel=%.1e;", r, rep.lambda, rel);
  }
  return {ok, detail.substr(1)};
}

const std::vector<Complex>& sample_ps() {
  static const std::vector<Complex> ps{Complex(0.5, 0.0), Complex(0.0, 0.5),
                                       Complex(0.3, 0.3), Complex(-0.25, 0.1),
                                       Complex(0.1, 0.0)};
  return ps;
}

Outcome stationarity_cubic() {
  const auto tensor = build_tensor(make_family("cubic_conformal"), 48);
  double worst = 0.0;
  int count = 0;
  for (int N = 0; N <= 4; ++N)
    for (Complex p : sample_ps()) {
      const auto s = modeN_state(2.0, p, N, 48);
      worst = std::max(worst, verify_stationary(tensor, s.alpha, 32).residual);
      ++count;
    }
  return {worst <= 1e-9, fmt("states=%d max residual=%.2e", count, worst)};
}

Outcome stationarity_quintic() {
  double worst_finite = 0.0, worst_inf = 0.0;
  for (const char* name : {"quintic_legendre", "quintic_inverse_pair"}) {
    const auto tensor = build_tensor(make_family(name), 48);
    for (int N = 0; N <= 4; ++N)
      for (Complex p : sample_ps()) {
        const auto s = modeN_state(1.0, p, N, 48);
        worst_finite =
            std::max(worst_finite, verify_stationary(tensor, s.alpha, 32).residual);
      }
  }
  for (const char* name : {"quintic_hermite", "quintic_multinomial"}) {
    const auto tensor = build_tensor(make_family(name), 60);
    for (int k = 0; k <= 3; ++k)
      for (Complex p : {Complex(0.0, 0.0), Complex(0.5, 0.0), Complex(0.3, -0.6)}) {
        const auto a = magnetic_translate(ModeVector::unit(k, 60), p);
        worst_inf = std::max(worst_inf, verify_stationary(tensor, a, 40).residual);
      }
  }
  return {worst_finite <= 1e-9 && worst_inf <= 1e-9,
          fmt("mode-N (legendre, inverse_pair) max=%.2e; translated modes (hermite, "
              "multinomial) max=%.2e",
              worst_finite, worst_inf)};
}

Outcome selection_rules() {
  double worst_lone = 0.0, worst_parity = 0.0;
  std::size_t lone = 0, parity = 0;
  std::array<int, 6> t{};
  for (int code = 0; code < 531441; ++code) {
    int x = code, sum = 0;
    for (int& n : t) {
      n = x % 9;
      x /= 9;
      sum += n;
    }
    bool is_lone = false;
    for (int n : t) is_lone = is_lone || n == (sum - n) + 2;
    const bool odd = sum % 2 == 1;
    if (!is_lone && !odd) continue;
    const double c = std::abs(quintic_legendre_C(t));
    if (is_lone) {
      worst_lone = std::max(worst_lone, c);
      ++lone;
    }
    if (odd) {
      worst_parity = std::max(worst_parity, c);
      ++parity;
    }
  }
  return {worst_lone <= 1e-12 && worst_parity <= 1e-12,
          fmt("one-plus-five sextets=%zu max|C|=%.1e; odd-sum sextets=%zu max|C|=%.1e",
              lone, worst_lone, parity, worst_parity)};
}

Outcome combinatorial_ratio() {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  std::size_t count = 0, mismatched_zero = 0;
  std::array<int, 6> t{};
  for (int code = 0; code < 46656; ++code) {
    int x = code;
    for (int& n : t) {
      n = x % 6;
      x /= 6;
    }
    const double c = quintic_legendre_C(t);
    const double b = quintic_legendre_combinatorial(t);
    if (std::abs(c) <= 1e-12) {
      if (std::abs(b) > 1e-12) ++mismatched_zero;
      continue;
    }
    if (b == 0.0) {
      ++mismatched_zero;
      continue;
    }
    lo = std::min(lo, c / b);
    hi = std::max(hi, c / b);
    ++count;
  }
  const double mid = 0.5 * (lo + hi);
  const double spread = (hi - lo) / std::abs(mid);
  return {count > 0 && mismatched_zero == 0 && spread <= 1e-9 && mid != 0.0,
          fmt("nonvanishing sextets=%zu ratio=%.15g spread=%.1e zero-pattern mismatches=%zu",
              count, mid, spread, mismatched_zero)};
}

Outcome manifold() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto tensor = build_tensor(make_family("cubic_conformal"), 48);
  StepControl control;
  control.step = 1e-3;
  control.sample_interval = 0.05;
  const auto track = track_manifold(tensor, {0.1, 1.0, 0.3}, 95.0, control, 1e-6);
  const auto coarse = spectrum_period(track.trajectory, tensor.g());
  if (!coarse.found)
    return {false, fmt("no spectrum recurrence found; max residual=%.2e",
                       track.max_residual)};
  const auto period = refine_period(tensor, track.trajectory, coarse, 1e-3);
  const std::size_t periods = period.recurrences.size();
  double worst = 0.0;
  const double horizon = periods >= 3 ? period.recurrences[2] : 95.0;
  for (std::size_t s = 0; s < track.fits.size(); ++s)
    if (track.trajectory.times()[s] <= horizon + control.sample_interval)
      worst = std::max(worst, track.fits[s].residual);
  const bool ok = periods >= 3 && worst <= 1e-6 && period.mismatch <= 1e-6 &&
                  period.mismatch <= 1e-6 * period.d_max;
  std::string recs;
  for (double r : period.recurrences) recs += fmt(" %.10g", r);
  return {ok, fmt("T=%.10g recurrences:%s; max fit residual=%.2e; D(T)=%.2e D_max=%.2e "
                  "time=%.1fs",
                  period.period, recs.c_str(), worst, period.mismatch, period.d_max,
                  seconds_since(t0))};
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(2024);
  double worst_cubic = 0.0, worst_quintic = 0.0;
  for (const char* name : {"cubic_conformal", "cubic_szego"}) {
    const auto f = make_family(name);
    for (int K = 0; K <= 8; ++K) {
      const auto tensor = build_tensor(f, K);
      for (int s = 0; s < 20; ++s) {
        const auto a = oracle::random_state(rng, K);
        const auto fast = rhs_cubic(tensor, ModeVector(a));
        const auto ref = oracle::brute_rhs_cubic(f, a);
        const double d = oracle::max_abs_diff({fast.begin(), fast.end()}, ref) /
                         std::max(1.0, oracle::max_abs(ref));
        worst_cubic = std::max(worst_cubic, d);
      }
    }
  }
  for (const char* name : {"quintic_legendre", "quintic_inverse_pair", "quintic_hermite"}) {
    const auto f = make_family(name);
    for (int K = 0; K <= 5; ++K) {
      const auto tensor = build_tensor(f, K);
      for (int s = 0; s < 20; ++s) {
        const auto a = oracle::random_state(rng, K);
        const auto fast = rhs_quintic(tensor, ModeVector(a));
        const auto ref = oracle::brute_rhs_quintic(f, a);
        const double d = oracle::max_abs_diff({fast.begin(), fast.end()}, ref) /
                         std::max(1.0, oracle::max_abs(ref));
        worst_quintic = std::max(worst_quintic, d);
      }
    }
  }
  return {worst_cubic <= 1e-12 && worst_quintic <= 1e-12,
          fmt("cubic K<=8 max diff=%.1e; quintic K<=5 max diff=%.1e", worst_cubic,
              worst_quintic)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"exact cubic identity", identity_exact},
      {"numerical quintic identities", identity_numerical},
      {"szego negative control", negative_control},
      {"conservation and drift order", conservation},
      {"mode-0 lambda closed form", lambda_closed_form},
      {"cubic stationarity", stationarity_cubic},
      {"quintic stationarity", stationarity_quintic},
      {"legendre selection rules", selection_rules},
      {"combinatorial ratio", combinatorial_ratio},
      {"invariant manifold", manifold},
      {"rhs oracle equivalence", oracle_equivalence},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.passed;
    std::printf("criterion %2zu %s: %s | %s\n", i + 1, o.passed ? "PASS" : "FAIL",
                criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}

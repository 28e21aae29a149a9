// SPDX-License-Identifier: Apache-2.0
#include "resonant/engine.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "format.hpp"

namespace resonant {

using detail::format_number;

namespace {

int half_length(Arity a) { return tuple_length(a) / 2; }

/// Sorted multisets of `size` elements in [0, cutoff], grouped by sum and
/// lexicographic within each sum.
std::vector<std::vector<std::array<int, 3>>> multisets_by_sum(int size,
                                                              int cutoff) {
  std::vector<std::vector<std::array<int, 3>>> groups(
      static_cast<std::size_t>(size * cutoff) + 1);
  if (size == 2) {
    for (int a = 0; a <= cutoff; ++a)
      for (int b = a; b <= cutoff; ++b) groups[a + b].push_back({a, b, 0});
  } else {
    for (int a = 0; a <= cutoff; ++a)
      for (int b = a; b <= cutoff; ++b)
        for (int c = b; c <= cutoff; ++c)
          groups[a + b + c].push_back({a, b, c});
  }
  return groups;
}

std::uint32_t group_permutations(std::span<const int> g) {
  switch (g.size()) {
    case 1:
      return 1;
    case 2:
      return g[0] == g[1] ? 1 : 2;
    case 3: {
      std::array<int, 3> s{g[0], g[1], g[2]};
      std::sort(s.begin(), s.end());
      if (s[0] == s[2]) return 1;
      if (s[0] == s[1] || s[1] == s[2]) return 3;
      return 6;
    }
    default:
      break;
  }
  fail(ErrorCode::InvalidArgument, "unsupported group size");
}

/// Ordering key for canonical entries: (sum, bra, ket).
bool entry_less(const TensorEntry& x, const TensorEntry& y, int half) {
  int sx = 0, sy = 0;
  for (int a = 0; a < half; ++a) {
    sx += x.indices[a];
    sy += y.indices[a];
  }
  if (sx != sy) return sx < sy;
  return std::lexicographical_compare(x.indices.begin(),
                                      x.indices.begin() + 2 * half,
                                      y.indices.begin(),
                                      y.indices.begin() + 2 * half);
}

/// Accumulates the contributions of one canonical entry into F. Bra group
/// B (sorted), ket group K (sorted). For each distinct n in B,
/// F_n += c perms(B \ n) conj(prod B \ n) perms(K) prod K, and the same
/// with the groups swapped when B != K.
template <int Half>
void accumulate_entry(const TensorEntry& e, const Complex* a, Complex* f) {
  const auto* idx = e.indices.data();
  const double c = e.value;
  auto group_product = [&](const std::uint16_t* g) {
    Complex p = a[g[0]];
    for (int j = 1; j < Half; ++j) p *= a[g[j]];
    return p;
  };
  auto group_perms = [](const std::uint16_t* g) -> double {
    if constexpr (Half == 2) {
      return g[0] == g[1] ? 1.0 : 2.0;
    } else {
      if (g[0] == g[2]) return 1.0;
      if (g[0] == g[1] || g[1] == g[2]) return 3.0;
      return 6.0;
    }
  };
  auto scatter = [&](const std::uint16_t* bra, const std::uint16_t* ket) {
    const Complex ket_term = c * group_perms(ket) * group_product(ket);
    for (int j = 0; j < Half; ++j) {
      if (j > 0 && bra[j] == bra[j - 1]) continue;
      // Remaining bra indices after removing position j.
      if constexpr (Half == 2) {
        f[bra[j]] += ket_term * std::conj(a[bra[1 - j]]);
      } else {
        const int r0 = j == 0 ? 1 : 0;
        const int r1 = j == 2 ? 1 : 2;
        const double perms = bra[r0] == bra[r1] ? 1.0 : 2.0;
        f[bra[j]] += ket_term * perms * std::conj(a[bra[r0]] * a[bra[r1]]);
      }
    }
  };
  const std::uint16_t* bra = idx;
  const std::uint16_t* ket = idx + Half;
  scatter(bra, ket);
  if (!std::equal(bra, bra + Half, ket)) scatter(ket, bra);
}

template <int Half>
void rhs_into(const CouplingTensor& tensor, const Complex* a, Complex* f) {
  std::fill(f, f + tensor.cutoff() + 1, Complex{});
  for (const auto& e : tensor.entries()) accumulate_entry<Half>(e, a, f);
}

void rhs_raw(const CouplingTensor& tensor, const Complex* a, Complex* f) {
  if (tensor.arity() == Arity::Cubic)
    rhs_into<2>(tensor, a, f);
  else
    rhs_into<3>(tensor, a, f);
}

bool all_finite(const std::vector<Complex>& v) {
  return std::all_of(v.begin(), v.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

/// Reusable RK4 work buffers.
class Stepper {
 public:
  explicit Stepper(const CouplingTensor& tensor)
      : tensor_(tensor),
        size_(static_cast<std::size_t>(tensor.cutoff()) + 1),
        k1_(size_),
        k2_(size_),
        k3_(size_),
        k4_(size_),
        tmp_(size_) {}

  void step(std::vector<Complex>& y, double h) {
    // dy/dt = -i F(y)
    const Complex mih(0.0, -h);
    rhs_raw(tensor_, y.data(), k1_.data());
    for (std::size_t n = 0; n < size_; ++n) tmp_[n] = y[n] + 0.5 * mih * k1_[n];
    rhs_raw(tensor_, tmp_.data(), k2_.data());
    for (std::size_t n = 0; n < size_; ++n) tmp_[n] = y[n] + 0.5 * mih * k2_[n];
    rhs_raw(tensor_, tmp_.data(), k3_.data());
    for (std::size_t n = 0; n < size_; ++n) tmp_[n] = y[n] + mih * k3_[n];
    rhs_raw(tensor_, tmp_.data(), k4_.data());
    for (std::size_t n = 0; n < size_; ++n)
      y[n] += mih / 6.0 * (k1_[n] + 2.0 * k2_[n] + 2.0 * k3_[n] + k4_[n]);
  }

 private:
  const CouplingTensor& tensor_;
  std::size_t size_;
  std::vector<Complex> k1_, k2_, k3_, k4_, tmp_;
};

}  // namespace

CouplingTensor::CouplingTensor(std::string family, Arity arity,
                               WeightParameter g, int cutoff,
                               std::vector<TensorEntry> entries)
    : family_(std::move(family)),
      arity_(arity),
      g_(g),
      cutoff_(cutoff),
      entries_(std::move(entries)) {
  require(cutoff >= 0 && cutoff <= 65535, "tensor cutoff out of range");
  const int half = half_length(arity);
  for (const auto& e : entries_) {
    int bra = 0, ket = 0;
    for (int a = 0; a < half; ++a) {
      bra += e.indices[a];
      ket += e.indices[a + half];
    }
    for (int a = 0; a < 2 * half; ++a)
      require(e.indices[a] <= cutoff, "tensor entry index exceeds cutoff");
    require(bra == ket, "tensor entry violates the resonance constraint");
    require(std::is_sorted(e.indices.begin(), e.indices.begin() + half) &&
                std::is_sorted(e.indices.begin() + half,
                               e.indices.begin() + 2 * half),
            "tensor entry groups must be sorted");
  }
  std::stable_sort(entries_.begin(), entries_.end(),
                   [half](const TensorEntry& x, const TensorEntry& y) {
                     return entry_less(x, y, half);
                   });
}

std::uint64_t CouplingTensor::ordered_count() const noexcept {
  std::uint64_t total = 0;
  for (const auto& e : entries_) total += e.multiplicity;
  return total;
}

double CouplingTensor::coefficient(std::span<const int> tuple) const {
  const int half = half_length(arity_);
  require(static_cast<int>(tuple.size()) == 2 * half,
          "tuple length does not match tensor arity");
  std::array<int, 3> bra{}, ket{};
  for (int a = 0; a < half; ++a) {
    bra[a] = tuple[a];
    ket[a] = tuple[a + half];
    if (bra[a] < 0 || ket[a] < 0 || bra[a] > cutoff_ || ket[a] > cutoff_)
      return 0.0;
  }
  std::sort(bra.begin(), bra.begin() + half);
  std::sort(ket.begin(), ket.begin() + half);
  if (std::lexicographical_compare(ket.begin(), ket.begin() + half,
                                   bra.begin(), bra.begin() + half))
    std::swap(bra, ket);
  TensorEntry key;
  for (int a = 0; a < half; ++a) {
    key.indices[a] = static_cast<std::uint16_t>(bra[a]);
    key.indices[a + half] = static_cast<std::uint16_t>(ket[a]);
  }
  auto less = [half](const TensorEntry& x, const TensorEntry& y) {
    return entry_less(x, y, half);
  };
  auto it = std::lower_bound(entries_.begin(), entries_.end(), key, less);
  if (it == entries_.end() || less(key, *it)) return 0.0;
  return it->value;
}

std::uint32_t canonical_multiplicity(std::span<const int> bra,
                                     std::span<const int> ket) {
  require(bra.size() == ket.size(), "groups must have equal size");
  std::vector<int> b(bra.begin(), bra.end()), k(ket.begin(), ket.end());
  std::sort(b.begin(), b.end());
  std::sort(k.begin(), k.end());
  const std::uint32_t m = group_permutations(b) * group_permutations(k);
  return b == k ? m : 2 * m;
}

CouplingTensor build_tensor(const CoefficientFamily& family, int cutoff) {
  require(cutoff >= 0 && cutoff <= 65535, "cutoff out of range");
  const int half = half_length(family.arity);
  const Evaluator evaluate =
      family.tabulate ? family.tabulate(std::max(cutoff, 1)) : family.evaluate;
  const auto f = mode_weights(family.g, cutoff);
  const auto groups = multisets_by_sum(half, cutoff);

  std::vector<TensorEntry> entries;
  std::array<int, 6> tuple{};
  for (const auto& group : groups) {
    for (std::size_t a = 0; a < group.size(); ++a) {
      for (std::size_t b = a; b < group.size(); ++b) {
        TensorEntry e;
        for (int j = 0; j < half; ++j) {
          tuple[j] = group[a][j];
          tuple[j + half] = group[b][j];
        }
        const std::span<const int> t(tuple.data(), 2 * half);
        double v = evaluate(t);
        if (family.normalization == Normalization::S) {
          for (int n : t) v /= f[n];
        }
        if (!std::isfinite(v)) {
          std::string msg = "coefficient overflow at (";
          for (int j = 0; j < 2 * half; ++j)
            msg += (j ? "," : "") + std::to_string(tuple[j]);
          fail(ErrorCode::Overflow, msg + ")");
        }
        for (int j = 0; j < 2 * half; ++j)
          e.indices[j] = static_cast<std::uint16_t>(tuple[j]);
        e.multiplicity = canonical_multiplicity(t.first(half), t.last(half));
        e.value = v;
        entries.push_back(e);
      }
    }
  }
  return CouplingTensor(family.name, family.arity, family.g, cutoff,
                        std::move(entries));
}

ModeVector rhs(const CouplingTensor& tensor, const ModeVector& alpha) {
  require(alpha.cutoff() == tensor.cutoff(),
          "state cutoff does not match tensor cutoff");
  std::vector<Complex> out(alpha.size());
  rhs_raw(tensor, alpha.values().data(), out.data());
  return ModeVector(std::move(out));
}

ModeVector rhs_cubic(const CouplingTensor& tensor, const ModeVector& alpha) {
  require(tensor.arity() == Arity::Cubic, "rhs_cubic needs a cubic tensor");
  return rhs(tensor, alpha);
}

ModeVector rhs_quintic(const CouplingTensor& tensor, const ModeVector& alpha) {
  require(tensor.arity() == Arity::Quintic,
          "rhs_quintic needs a quintic tensor");
  return rhs(tensor, alpha);
}

Complex charge(const ModeVector& alpha, const WeightParameter& g) {
  Complex z{};
  for (int n = 0; n < alpha.cutoff(); ++n) {
    const double w = g.is_infinite() ? std::sqrt(n + 1.0)
                                     : std::sqrt((n + 1.0) * (n + g.value()));
    z += w * std::conj(alpha[n + 1]) * alpha[n];
  }
  return z;
}

ConservedSet conserved_set(const ModeVector& alpha, const WeightParameter& g,
                           const CouplingTensor& tensor) {
  ConservedSet c;
  for (std::size_t n = 0; n < alpha.size(); ++n) {
    const double p = std::norm(alpha[n]);
    c.norm += p;
    c.energy += static_cast<double>(n) * p;
  }
  const ModeVector f = rhs(tensor, alpha);
  Complex pairing{};
  for (std::size_t n = 0; n < alpha.size(); ++n)
    pairing += std::conj(alpha[n]) * f[n];
  c.hamiltonian = pairing.real() / half_length(tensor.arity());
  c.charge = charge(alpha, g);
  return c;
}

double Drift::max() const noexcept {
  return std::max({norm, energy, hamiltonian, charge});
}

void Trajectory::append(double t, ModeVector state, ConservedSet conserved) {
  if (!times_.empty()) {
    require(std::abs(t) > std::abs(times_.back()),
            "trajectory times must advance monotonically");
    require(state.cutoff() == states_.front().cutoff(),
            "trajectory states must share the cutoff");
  }
  times_.push_back(t);
  states_.push_back(std::move(state));
  conserved_.push_back(conserved);
}

Drift Trajectory::max_relative_drift() const {
  Drift d;
  if (conserved_.empty()) return d;
  const auto& c0 = conserved_.front();
  auto rel = [](double x, double x0) {
    const double diff = std::abs(x - x0);
    return x0 != 0.0 ? diff / std::abs(x0) : diff;
  };
  for (const auto& c : conserved_) {
    d.norm = std::max(d.norm, rel(c.norm, c0.norm));
    d.energy = std::max(d.energy, rel(c.energy, c0.energy));
    d.hamiltonian = std::max(d.hamiltonian, rel(c.hamiltonian, c0.hamiltonian));
    d.charge = std::max(d.charge, rel(std::abs(c.charge), std::abs(c0.charge)));
  }
  return d;
}

ModeVector rk4_step(const CouplingTensor& tensor, const ModeVector& alpha,
                    double h) {
  require(alpha.cutoff() == tensor.cutoff(),
          "state cutoff does not match tensor cutoff");
  Stepper stepper(tensor);
  std::vector<Complex> y(alpha.begin(), alpha.end());
  stepper.step(y, h);
  if (!all_finite(y))
    fail(ErrorCode::Integration, "non-finite state after one step");
  return ModeVector(std::move(y));
}

Trajectory integrate(const CouplingTensor& tensor, const WeightParameter& g,
                     const ModeVector& alpha0, double t_end,
                     const StepControl& control) {
  require(alpha0.cutoff() == tensor.cutoff(),
          "state cutoff does not match tensor cutoff");
  require(t_end != 0.0 && std::isfinite(t_end), "t_end must be nonzero");
  require(control.step > 0.0, "step must be positive");
  const double direction = t_end > 0 ? 1.0 : -1.0;
  const double span_end = std::abs(t_end);
  const double sample =
      control.sample_interval > 0 ? control.sample_interval : control.step;

  Trajectory traj;
  traj.append(0.0, alpha0, conserved_set(alpha0, g, tensor));

  Stepper stepper(tensor);
  std::vector<Complex> y(alpha0.begin(), alpha0.end());
  std::vector<Complex> full(y.size()), half(y.size());
  double t = 0.0;
  double h_adaptive = control.step;
  for (long k = 1;; ++k) {
    const double target = std::min(span_end, k * sample);
    const double length = target - t;
    if (length <= 0.0) break;
    if (!control.halving_tolerance) {
      const long n = std::max(1L, static_cast<long>(std::ceil(
                                      length / control.step - 1e-9)));
      const double h = length / n;
      for (long s = 0; s < n; ++s) {
        stepper.step(y, direction * h);
        if (!all_finite(y))
          fail(ErrorCode::Integration,
               "non-finite state at t = " +
                   format_number(direction * (t + (s + 1) * h)));
      }
    } else {
      double local = t;
      while (local < target) {
        double h = std::min(h_adaptive, target - local);
        for (;;) {
          full = y;
          stepper.step(full, direction * h);
          half = y;
          stepper.step(half, direction * 0.5 * h);
          stepper.step(half, direction * 0.5 * h);
          double err = 0.0;
          for (std::size_t n = 0; n < y.size(); ++n)
            err = std::max(err, std::abs(full[n] - half[n]));
          if (!std::isfinite(err) && h * 0.5 < control.min_step)
            fail(ErrorCode::Integration,
                 "non-finite state at t = " + format_number(direction * local));
          if ((err <= *control.halving_tolerance && std::isfinite(err)) ||
              h * 0.5 < control.min_step)
            break;
          h *= 0.5;
          h_adaptive = h;
        }
        y = half;
        local += h;
        if (!all_finite(y))
          fail(ErrorCode::Integration,
               "non-finite state at t = " + format_number(direction * local));
        if (h_adaptive < control.step) h_adaptive = std::min(control.step, 2 * h_adaptive);
      }
    }
    t = target;
    ModeVector state(y);
    traj.append(direction * t, state, conserved_set(state, g, tensor));
    if (target >= span_end) break;
  }
  return traj;
}

ModeVector evolve_to(const CouplingTensor& tensor, const ModeVector& alpha0,
                     double duration, double step) {
  require(alpha0.cutoff() == tensor.cutoff(),
          "state cutoff does not match tensor cutoff");
  require(step > 0.0, "step must be positive");
  std::vector<Complex> y(alpha0.begin(), alpha0.end());
  if (duration == 0.0) return alpha0;
  const long n = std::max(
      1L, static_cast<long>(std::ceil(std::abs(duration) / step - 1e-9)));
  const double h = duration / n;
  Stepper stepper(tensor);
  for (long s = 0; s < n; ++s) stepper.step(y, h);
  if (!all_finite(y))
    fail(ErrorCode::Integration,
         "non-finite state at t = " + format_number(duration));
  return ModeVector(std::move(y));
}

void write_tensor(std::ostream& out, const CouplingTensor& tensor) {
  const int length = tuple_length(tensor.arity());
  out << "resonant-tensor family=" << tensor.family()
      << " arity=" << (tensor.arity() == Arity::Cubic ? "cubic" : "quintic")
      << " G="
      << (tensor.g().is_infinite() ? std::string("inf")
                                   : format_number(tensor.g().value()))
      << " cutoff=" << tensor.cutoff()
      << " entries=" << tensor.entries().size() << '\n';
  for (const auto& e : tensor.entries()) {
    for (int j = 0; j < length; ++j) out << e.indices[j] << ' ';
    out << e.multiplicity << ' ' << format_number(e.value) << '\n';
  }
}

CouplingTensor read_tensor(std::istream& in) {
  std::string header;
  if (!std::getline(in, header))
    fail(ErrorCode::Parse, "missing tensor header");
  std::istringstream hs(header);
  std::string magic;
  hs >> magic;
  if (magic != "resonant-tensor")
    fail(ErrorCode::Parse, "not a resonant tensor file");
  std::map<std::string, std::string> fields;
  for (std::string token; hs >> token;) {
    const auto eq = token.find('=');
    if (eq == std::string::npos)
      fail(ErrorCode::Parse, "malformed header token '" + token + "'");
    fields[token.substr(0, eq)] = token.substr(eq + 1);
  }
  for (const char* key : {"family", "arity", "G", "cutoff", "entries"})
    if (!fields.count(key))
      fail(ErrorCode::Parse, std::string("header lacks ") + key);

  Arity arity;
  if (fields["arity"] == "cubic")
    arity = Arity::Cubic;
  else if (fields["arity"] == "quintic")
    arity = Arity::Quintic;
  else
    fail(ErrorCode::Parse, "unknown arity '" + fields["arity"] + "'");
  WeightParameter g = WeightParameter::infinite();
  int cutoff = 0;
  std::size_t count = 0;
  try {
    if (fields["G"] != "inf") g = WeightParameter::finite(std::stod(fields["G"]));
    cutoff = std::stoi(fields["cutoff"]);
    count = std::stoul(fields["entries"]);
  } catch (const std::logic_error&) {
    fail(ErrorCode::Parse, "malformed numeric header field");
  }

  const int length = tuple_length(arity);
  std::vector<TensorEntry> entries;
  entries.reserve(count);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    TensorEntry e;
    for (int j = 0; j < length; ++j) {
      long v = -1;
      if (!(ls >> v) || v < 0 || v > 65535)
        fail(ErrorCode::Parse, "bad index in record '" + line + "'");
      e.indices[j] = static_cast<std::uint16_t>(v);
    }
    std::string value;
    if (!(ls >> e.multiplicity >> value))
      fail(ErrorCode::Parse, "bad record '" + line + "'");
    try {
      e.value = std::stod(value);
    } catch (const std::logic_error&) {
      fail(ErrorCode::Parse, "bad coefficient in record '" + line + "'");
    }
    entries.push_back(e);
  }
  if (entries.size() != count)
    fail(ErrorCode::Parse, "entry count does not match header");
  try {
    return CouplingTensor(fields["family"], arity, g, cutoff,
                          std::move(entries));
  } catch (const Error& e) {
    fail(ErrorCode::Parse, e.what());
  }
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory,
                          const FitColumns* fits) {
  if (trajectory.size() == 0) return;
  const std::size_t modes = trajectory.states().front().size();
  if (fits)
    require(fits->residual.size() == trajectory.size() &&
                fits->abs_a.size() == trajectory.size() &&
                fits->abs_b.size() == trajectory.size() &&
                fits->abs_p.size() == trajectory.size(),
            "fit columns must match the trajectory length");
  out << "t";
  for (std::size_t n = 0; n < modes; ++n) out << ",re_" << n << ",im_" << n;
  out << ",N,E,H,re_Z,im_Z";
  if (fits) out << ",residual,abs_a,abs_b,abs_p";
  out << '\n';
  for (std::size_t s = 0; s < trajectory.size(); ++s) {
    out << format_number(trajectory.times()[s]);
    for (const auto& z : trajectory.states()[s])
      out << ',' << format_number(z.real()) << ',' << format_number(z.imag());
    const auto& c = trajectory.conserved()[s];
    out << ',' << format_number(c.norm) << ',' << format_number(c.energy) << ','
        << format_number(c.hamiltonian) << ',' << format_number(c.charge.real())
        << ',' << format_number(c.charge.imag());
    if (fits)
      out << ',' << format_number(fits->residual[s]) << ','
          << format_number(fits->abs_a[s]) << ',' << format_number(fits->abs_b[s])
          << ',' << format_number(fits->abs_p[s]);
    out << '\n';
  }
}

void write_state_csv(std::ostream& out, const ModeVector& alpha) {
  out << "n,re,im\n";
  for (std::size_t n = 0; n < alpha.size(); ++n)
    out << n << ',' << format_number(alpha[n].real()) << ','
        << format_number(alpha[n].imag()) << '\n';
}

ModeVector random_decaying_state(std::uint64_t seed, int cutoff) {
  require(cutoff >= 0, "cutoff must be nonnegative");
  std::mt19937_64 engine(seed);
  auto uniform = [&engine] {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
  };
  std::vector<Complex> a(static_cast<std::size_t>(cutoff) + 1);
  for (int n = 0; n <= cutoff; ++n) {
    const double magnitude = uniform() * std::ldexp(1.0, -n);
    const double phase = 2.0 * std::numbers::pi * uniform();
    a[n] = std::polar(magnitude, phase);
  }
  return ModeVector(std::move(a));
}

}  // namespace resonant

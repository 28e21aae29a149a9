// SPDX-License-Identifier: Apache-2.0
#include "resonant/resonant.h"

#include <fstream>
#include <new>
#include <string>

#include "resonant/identity_checker.hpp"
#include "resonant/invariant_manifold.hpp"
#include "resonant/stationary_states.hpp"

using namespace resonant;

struct rs_family {
  CoefficientFamily family;
};

struct rs_tensor {
  CouplingTensor tensor;
};

struct rs_trajectory {
  Trajectory trajectory;
  std::vector<ManifoldFitReport> fits;
};

namespace {

thread_local std::string last_error;

rs_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
      return RS_ERR_INVALID_ARGUMENT;
    case ErrorCode::Overflow:
      return RS_ERR_OVERFLOW;
    case ErrorCode::Singular:
      return RS_ERR_SINGULAR;
    case ErrorCode::Integration:
      return RS_ERR_INTEGRATION;
    case ErrorCode::Degenerate:
      return RS_ERR_DEGENERATE;
    case ErrorCode::Io:
      return RS_ERR_IO;
    case ErrorCode::Parse:
      return RS_ERR_PARSE;
  }
  return RS_ERR_INTERNAL;
}

template <class F>
rs_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return RS_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return RS_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return RS_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) fail(ErrorCode::InvalidArgument, std::string(what) + " is null");
}

WeightParameter to_weight(rs_weight g) {
  return g.infinite ? WeightParameter::infinite() : WeightParameter::finite(g.value);
}

rs_weight from_weight(const WeightParameter& g) {
  return g.is_infinite() ? rs_weight{0.0, 1} : rs_weight{g.value(), 0};
}

Complex to_complex(rs_complex z) { return {z.re, z.im}; }
rs_complex from_complex(Complex z) { return {z.real(), z.imag()}; }

ModeVector read_state(const rs_complex* alpha, int cutoff) {
  need(alpha, "state");
  if (cutoff < 0) fail(ErrorCode::InvalidArgument, "cutoff must be nonnegative");
  std::vector<Complex> v(static_cast<std::size_t>(cutoff) + 1);
  for (std::size_t n = 0; n < v.size(); ++n) v[n] = to_complex(alpha[n]);
  return ModeVector(std::move(v));
}

void write_state(const ModeVector& v, rs_complex* out) {
  need(out, "output state");
  for (std::size_t n = 0; n < v.size(); ++n) out[n] = from_complex(v[n]);
}

StepControl to_control(const rs_step_control* c) {
  StepControl s;
  if (!c) return s;
  s.step = c->step;
  s.sample_interval = c->sample_interval;
  if (c->halving_tolerance > 0) s.halving_tolerance = c->halving_tolerance;
  if (c->min_step > 0) s.min_step = c->min_step;
  return s;
}

rs_conserved from_conserved(const ConservedSet& c) {
  return {c.norm, c.energy, c.hamiltonian, from_complex(c.charge)};
}

ManifoldPoint to_point(const rs_manifold_point& p) {
  return {to_complex(p.a), to_complex(p.b), to_complex(p.p)};
}

rs_manifold_fit from_fit(const ManifoldFitReport& f) {
  return {{from_complex(f.point.a), from_complex(f.point.b),
           from_complex(f.point.p)},
          f.residual};
}

std::ofstream open_output(const char* path) {
  need(path, "path");
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, std::string("cannot open ") + path);
  return out;
}

void close_output(std::ofstream& out, const char* path) {
  out.close();
  if (!out) fail(ErrorCode::Io, std::string("failed writing ") + path);
}

}  // namespace

extern "C" {

const char* rs_last_error(void) { return last_error.c_str(); }

const char* rs_status_name(rs_status status) {
  switch (status) {
    case RS_OK:
      return "ok";
    case RS_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case RS_ERR_OVERFLOW:
      return "overflow";
    case RS_ERR_SINGULAR:
      return "singular";
    case RS_ERR_INTEGRATION:
      return "integration failure";
    case RS_ERR_DEGENERATE:
      return "degenerate input";
    case RS_ERR_IO:
      return "i/o error";
    case RS_ERR_PARSE:
      return "parse error";
    case RS_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown";
}

rs_status rs_mode_weight(rs_weight g, int n, double* out) {
  return guarded([&] {
    need(out, "output");
    *out = mode_weight(to_weight(g), n);
  });
}

rs_status rs_alpha_to_beta(const rs_complex* alpha, size_t count, rs_weight g,
                           rs_complex* beta) {
  return guarded([&] {
    if (count == 0) fail(ErrorCode::InvalidArgument, "empty state");
    write_state(alpha_to_beta(read_state(alpha, static_cast<int>(count) - 1),
                              to_weight(g)),
                beta);
  });
}

size_t rs_family_count(void) { return family_names().size(); }

const char* rs_family_name_at(size_t index) {
  static const std::vector<std::string> names = family_names();
  return index < names.size() ? names[index].c_str() : nullptr;
}

rs_status rs_family_create(const char* name, const rs_weight* g,
                           rs_family** out) {
  return guarded([&] {
    need(name, "family name");
    need(out, "output handle");
    std::optional<WeightParameter> w;
    if (g) w = to_weight(*g);
    *out = new rs_family{make_family(name, w)};
  });
}

void rs_family_destroy(rs_family* family) { delete family; }

const char* rs_family_name(const rs_family* family) {
  return family ? family->family.name.c_str() : nullptr;
}

int rs_family_tuple_length(const rs_family* family) {
  return family ? tuple_length(family->family.arity) : 0;
}

rs_weight rs_family_weight(const rs_family* family) {
  return family ? from_weight(family->family.g) : rs_weight{0.0, 0};
}

rs_status rs_family_eval_S(const rs_family* family, const int* tuple,
                           double* out) {
  return guarded([&] {
    need(family, "family");
    need(tuple, "tuple");
    need(out, "output");
    *out = to_S(family->family,
                std::span<const int>(tuple, tuple_length(family->family.arity)));
  });
}

rs_status rs_family_eval_C(const rs_family* family, const int* tuple,
                           double* out) {
  return guarded([&] {
    need(family, "family");
    need(tuple, "tuple");
    need(out, "output");
    *out = to_C(family->family,
                std::span<const int>(tuple, tuple_length(family->family.arity)));
  });
}

rs_status rs_check_identity(const rs_family* family, int bound,
                            double tolerance, rs_identity_report* out) {
  return guarded([&] {
    need(family, "family");
    need(out, "output");
    const IdentityReport r = check_identity(family->family, bound, tolerance);
    switch (r.condition) {
      case IdentityCondition::CubicFinite:
        out->condition = "cubic_finite_g";
        break;
      case IdentityCondition::QuinticFinite:
        out->condition = "quintic_finite_g";
        break;
      case IdentityCondition::QuinticInfinite:
        out->condition = "quintic_infinite_g";
        break;
    }
    out->bound = r.bound;
    out->tuples_checked = r.tuples_checked;
    out->max_residual = r.max_residual;
    out->max_scaled_residual = r.max_scaled_residual;
    out->tuple_length = static_cast<int>(r.worst_tuple.size());
    for (int j = 0; j < 6; ++j)
      out->worst_tuple[j] = j < out->tuple_length ? r.worst_tuple[j] : 0;
    out->tolerance = r.tolerance;
    out->exact = r.exact;
    out->passed = r.passed;
  });
}

rs_status rs_tensor_build(const rs_family* family, int cutoff,
                          rs_tensor** out) {
  return guarded([&] {
    need(family, "family");
    need(out, "output handle");
    *out = new rs_tensor{build_tensor(family->family, cutoff)};
  });
}

rs_status rs_tensor_read(const char* path, rs_tensor** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "output handle");
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::Io, std::string("cannot open ") + path);
    *out = new rs_tensor{read_tensor(in)};
  });
}

rs_status rs_tensor_write(const rs_tensor* tensor, const char* path) {
  return guarded([&] {
    need(tensor, "tensor");
    auto out = open_output(path);
    write_tensor(out, tensor->tensor);
    close_output(out, path);
  });
}

void rs_tensor_destroy(rs_tensor* tensor) { delete tensor; }

rs_status rs_tensor_info_get(const rs_tensor* tensor, rs_tensor_info* out) {
  return guarded([&] {
    need(tensor, "tensor");
    need(out, "output");
    const auto& t = tensor->tensor;
    out->cutoff = t.cutoff();
    out->tuple_length = tuple_length(t.arity());
    out->entries = t.entries().size();
    out->ordered_count = t.ordered_count();
    out->g = from_weight(t.g());
  });
}

const char* rs_tensor_family(const rs_tensor* tensor) {
  return tensor ? tensor->tensor.family().c_str() : nullptr;
}

rs_status rs_tensor_entry(const rs_tensor* tensor, uint64_t index,
                          int* indices, uint32_t* multiplicity, double* value) {
  return guarded([&] {
    need(tensor, "tensor");
    const auto& entries = tensor->tensor.entries();
    if (index >= entries.size())
      fail(ErrorCode::InvalidArgument, "entry index out of range");
    const auto& e = entries[index];
    if (indices)
      for (int j = 0; j < tuple_length(tensor->tensor.arity()); ++j)
        indices[j] = e.indices[j];
    if (multiplicity) *multiplicity = e.multiplicity;
    if (value) *value = e.value;
  });
}

rs_status rs_tensor_coefficient(const rs_tensor* tensor, const int* tuple,
                                double* out) {
  return guarded([&] {
    need(tensor, "tensor");
    need(tuple, "tuple");
    need(out, "output");
    *out = tensor->tensor.coefficient(
        std::span<const int>(tuple, tuple_length(tensor->tensor.arity())));
  });
}

rs_status rs_rhs(const rs_tensor* tensor, const rs_complex* alpha,
                 rs_complex* out) {
  return guarded([&] {
    need(tensor, "tensor");
    write_state(rhs(tensor->tensor, read_state(alpha, tensor->tensor.cutoff())),
                out);
  });
}

rs_status rs_conserved_set(const rs_tensor* tensor, const rs_complex* alpha,
                           rs_conserved* out) {
  return guarded([&] {
    need(tensor, "tensor");
    need(out, "output");
    const auto& t = tensor->tensor;
    *out = from_conserved(conserved_set(read_state(alpha, t.cutoff()), t.g(), t));
  });
}

rs_step_control rs_step_control_default(void) {
  const StepControl s;
  return {s.step, s.sample_interval, 0.0, s.min_step};
}

rs_status rs_integrate(const rs_tensor* tensor, const rs_complex* alpha0,
                       double t_end, const rs_step_control* control,
                       rs_trajectory** out) {
  return guarded([&] {
    need(tensor, "tensor");
    need(out, "output handle");
    const auto& t = tensor->tensor;
    *out = new rs_trajectory{
        integrate(t, t.g(), read_state(alpha0, t.cutoff()), t_end,
                  to_control(control)),
        {}};
  });
}

rs_status rs_evolve_to(const rs_tensor* tensor, const rs_complex* alpha0,
                       double duration, double step, rs_complex* out) {
  return guarded([&] {
    need(tensor, "tensor");
    const auto& t = tensor->tensor;
    write_state(evolve_to(t, read_state(alpha0, t.cutoff()), duration, step),
                out);
  });
}

void rs_trajectory_destroy(rs_trajectory* trajectory) { delete trajectory; }

size_t rs_trajectory_size(const rs_trajectory* trajectory) {
  return trajectory ? trajectory->trajectory.size() : 0;
}

int rs_trajectory_cutoff(const rs_trajectory* trajectory) {
  if (!trajectory || trajectory->trajectory.size() == 0) return -1;
  return trajectory->trajectory.states().front().cutoff();
}

rs_status rs_trajectory_sample(const rs_trajectory* trajectory, size_t index,
                               double* time, rs_complex* state,
                               rs_conserved* conserved) {
  return guarded([&] {
    need(trajectory, "trajectory");
    const auto& tr = trajectory->trajectory;
    if (index >= tr.size())
      fail(ErrorCode::InvalidArgument, "sample index out of range");
    if (time) *time = tr.times()[index];
    if (state) write_state(tr.states()[index], state);
    if (conserved) *conserved = from_conserved(tr.conserved()[index]);
  });
}

rs_status rs_trajectory_drift(const rs_trajectory* trajectory, rs_drift* out) {
  return guarded([&] {
    need(trajectory, "trajectory");
    need(out, "output");
    const Drift d = trajectory->trajectory.max_relative_drift();
    *out = {d.norm, d.energy, d.hamiltonian, d.charge};
  });
}

rs_status rs_trajectory_write_csv(const rs_trajectory* trajectory,
                                  const char* path) {
  return guarded([&] {
    need(trajectory, "trajectory");
    auto out = open_output(path);
    if (trajectory->fits.empty()) {
      write_trajectory_csv(out, trajectory->trajectory);
    } else {
      FitColumns cols;
      for (const auto& f : trajectory->fits) {
        cols.residual.push_back(f.residual);
        cols.abs_a.push_back(std::abs(f.point.a));
        cols.abs_b.push_back(std::abs(f.point.b));
        cols.abs_p.push_back(std::abs(f.point.p));
      }
      write_trajectory_csv(out, trajectory->trajectory, &cols);
    }
    close_output(out, path);
  });
}

rs_status rs_state_random(uint64_t seed, int cutoff, rs_complex* out) {
  return guarded([&] { write_state(random_decaying_state(seed, cutoff), out); });
}

rs_status rs_state_single_mode(int mode, int cutoff, rs_complex amplitude,
                               rs_complex* out) {
  return guarded([&] {
    write_state(single_mode_state(WeightParameter::infinite(), mode, cutoff,
                                  to_complex(amplitude))
                    .alpha,
                out);
  });
}

rs_status rs_state_mode0(rs_weight g, rs_complex p, int cutoff,
                         rs_complex* out) {
  return guarded([&] {
    write_state(mode0_state(to_weight(g), to_complex(p), cutoff).alpha, out);
  });
}

rs_status rs_state_modeN(double g, rs_complex p, int mode, int cutoff,
                         rs_complex* out) {
  return guarded([&] {
    write_state(modeN_state(g, to_complex(p), mode, cutoff).alpha, out);
  });
}

rs_status rs_partial_fractions(double g, rs_complex p, int mode,
                               rs_complex* out) {
  return guarded([&] {
    need(out, "output");
    const auto c = modeN_partial_fractions(g, to_complex(p), mode);
    for (std::size_t k = 0; k < c.size(); ++k) out[k] = from_complex(c[k]);
  });
}

rs_status rs_magnetic_translate(const rs_complex* alpha, int cutoff,
                                rs_complex p, rs_complex* out) {
  return guarded([&] {
    write_state(magnetic_translate(read_state(alpha, cutoff), to_complex(p)),
                out);
  });
}

rs_status rs_lambda_mode0(double g, rs_complex p, double* out) {
  return guarded([&] {
    need(out, "output");
    *out = lambda_mode0_closed_form(g, to_complex(p));
  });
}

rs_status rs_verify_stationary(const rs_tensor* tensor, const rs_complex* alpha,
                               int window, rs_stationarity* out) {
  return guarded([&] {
    need(tensor, "tensor");
    need(out, "output");
    const auto& t = tensor->tensor;
    const auto r = verify_stationary(t, read_state(alpha, t.cutoff()), window);
    *out = {r.lambda, r.residual, r.imag_ratio, r.window};
  });
}

rs_status rs_write_state_csv(const rs_complex* alpha, int cutoff,
                             const char* path) {
  return guarded([&] {
    const ModeVector state = read_state(alpha, cutoff);
    auto out = open_output(path);
    write_state_csv(out, state);
    close_output(out, path);
  });
}

rs_status rs_state_manifold(rs_manifold_point point, rs_weight g, int cutoff,
                            rs_complex* out) {
  return guarded([&] {
    write_state(manifold_state(to_point(point), to_weight(g), cutoff), out);
  });
}

rs_status rs_fit_manifold(const rs_complex* beta, int cutoff,
                          const rs_manifold_point* guess,
                          rs_manifold_fit* out) {
  return guarded([&] {
    need(out, "output");
    std::optional<ManifoldPoint> start;
    if (guess) start = to_point(*guess);
    *out = from_fit(fit_manifold(read_state(beta, cutoff), start));
  });
}

rs_status rs_manifold_track(const rs_tensor* tensor, rs_manifold_point point0,
                            double t_end, const rs_step_control* control,
                            rs_trajectory** out, double* max_residual) {
  return guarded([&] {
    need(tensor, "tensor");
    need(out, "output handle");
    // The tolerance only sets the pass flag, which callers judge themselves.
    ManifoldTrack track = track_manifold(tensor->tensor, to_point(point0), t_end,
                                         to_control(control), 1.0);
    if (max_residual) *max_residual = track.max_residual;
    *out = new rs_trajectory{std::move(track.trajectory), std::move(track.fits)};
  });
}

rs_status rs_trajectory_fit(const rs_trajectory* trajectory, size_t index,
                            rs_manifold_fit* out) {
  return guarded([&] {
    need(trajectory, "trajectory");
    need(out, "output");
    if (index >= trajectory->fits.size())
      fail(ErrorCode::InvalidArgument, "no manifold fit for this sample");
    *out = from_fit(trajectory->fits[index]);
  });
}

rs_status rs_spectrum_period(const rs_tensor* tensor,
                             const rs_trajectory* trajectory,
                             double refine_step, rs_period* out) {
  return guarded([&] {
    need(tensor, "tensor");
    need(trajectory, "trajectory");
    need(out, "output");
    SpectrumPeriod sp =
        spectrum_period(trajectory->trajectory, tensor->tensor.g());
    if (refine_step > 0 && sp.found)
      sp = refine_period(tensor->tensor, trajectory->trajectory, sp,
                         refine_step);
    *out = rs_period{};
    out->found = sp.found;
    out->degenerate = sp.degenerate;
    out->period = sp.period;
    out->mismatch = sp.mismatch;
    out->d_max = sp.d_max;
    out->recurrence_count = std::min<std::size_t>(sp.recurrences.size(),
                                                  RS_MAX_RECURRENCES);
    for (std::size_t r = 0; r < out->recurrence_count; ++r)
      out->recurrences[r] = sp.recurrences[r];
  });
}

}  // extern "C"

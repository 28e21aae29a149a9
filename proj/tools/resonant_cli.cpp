// SPDX-License-Identifier: Apache-2.0
// resonant: command-line driver over the C API.
#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "resonant/resonant.h"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct CliError {
  int exit_code;
  std::string message;
};

void check(rs_status s) {
  if (s == RS_OK) return;
  throw CliError{s == RS_ERR_INVALID_ARGUMENT ? kExitUsage : kExitFail,
                 std::string(rs_status_name(s)) + ": " + rs_last_error()};
}

[[noreturn]] void usage(const std::string& what) {
  throw CliError{kExitUsage, what};
}

// ---- configuration ----

enum class Kind { String, Weight, Int, Unsigned, Real, Complex, Bool };

struct Key {
  const char* name;  // config key; the flag is --name with '_' -> '-'
  Kind kind;
  const char* help;
};

const std::vector<Key> kKeys = {
    {"family", Kind::String, "coefficient family"},
    {"G", Kind::Weight, "weight parameter G (number or inf)"},
    {"cutoff", Kind::Int, "mode cutoff K"},
    {"max_index", Kind::Int, "per-index bound B for the cubic identity"},
    {"max_total", Kind::Int, "bra-side sum bound D for the quintic identity"},
    {"p", Kind::Complex, "complex parameter p as re[,im]"},
    {"N", Kind::Int, "bifurcation mode index"},
    {"a", Kind::Complex, "manifold parameter a as re[,im]"},
    {"b", Kind::Complex, "manifold parameter b as re[,im]"},
    {"amplitude", Kind::Complex, "single-mode amplitude as re[,im]"},
    {"init", Kind::String, "initial data: random|single|manifold|stationary"},
    {"t_end", Kind::Real, "final time"},
    {"step", Kind::Real, "integrator step"},
    {"sample_interval", Kind::Real, "spacing of recorded samples"},
    {"window", Kind::Int, "stationarity verification window"},
    {"tol", Kind::Real, "pass/fail tolerance"},
    {"seed", Kind::Unsigned, "random seed"},
    {"verify", Kind::Bool, "re-read the tensor and compare with fresh values"},
    {"out", Kind::String, "output directory"},
};

const Key& key_info(const std::string& name) {
  for (const auto& k : kKeys)
    if (name == k.name) return k;
  usage("unknown configuration key '" + name + "'");
}

json parse_complex_text(const std::string& text) {
  std::stringstream ss(text);
  std::string re, im;
  std::getline(ss, re, ',');
  std::getline(ss, im, ',');
  try {
    std::size_t used = 0;
    const double r = std::stod(re, &used);
    if (used != re.size()) throw std::invalid_argument(re);
    double i = 0.0;
    if (!im.empty()) {
      i = std::stod(im, &used);
      if (used != im.size()) throw std::invalid_argument(im);
    }
    return json::array({r, i});
  } catch (const std::logic_error&) {
    usage("malformed complex value '" + text + "'");
  }
}

/// Converts a flag string or config-file value to the canonical JSON form.
json normalize(const Key& key, const json& value) {
  try {
    switch (key.kind) {
      case Kind::String:
        return value.get<std::string>();
      case Kind::Weight:
        if (value.is_string()) {
          const auto s = value.get<std::string>();
          if (s == "inf" || s == "infinite") return "inf";
          return std::stod(s);
        }
        return value.get<double>();
      case Kind::Int:
        if (value.is_string()) return std::stoi(value.get<std::string>());
        return value.get<int>();
      case Kind::Unsigned:
        if (value.is_string()) return std::stoull(value.get<std::string>());
        return value.get<std::uint64_t>();
      case Kind::Real:
        if (value.is_string()) return std::stod(value.get<std::string>());
        return value.get<double>();
      case Kind::Complex:
        if (value.is_string()) return parse_complex_text(value.get<std::string>());
        if (value.is_number()) return json::array({value.get<double>(), 0.0});
        if (value.is_array() && value.size() == 2)
          return json::array({value[0].get<double>(), value[1].get<double>()});
        break;
      case Kind::Bool:
        if (value.is_string()) {
          const auto s = value.get<std::string>();
          if (s == "true" || s == "1") return true;
          if (s == "false" || s == "0") return false;
          break;
        }
        return value.get<bool>();
    }
  } catch (const std::exception&) {
  }
  usage(std::string("bad value for '") + key.name + "': " + value.dump());
}

struct Command {
  std::string name;
  json defaults;
  CLI::App* app = nullptr;
  std::string config_path;
  std::map<std::string, std::string> flags;
};

json resolve(Command& cmd) {
  json config = cmd.defaults;
  if (!cmd.config_path.empty()) {
    std::ifstream in(cmd.config_path);
    if (!in) usage("cannot open config file " + cmd.config_path);
    json file;
    try {
      file = json::parse(in);
    } catch (const json::parse_error& e) {
      usage(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!file.is_object()) usage("config file must hold a JSON object");
    for (auto it = file.begin(); it != file.end(); ++it)
      config[it.key()] = normalize(key_info(it.key()), it.value());
  }
  for (const auto& key : kKeys) {
    if (!cmd.flags.count(key.name)) continue;
    std::string flag = std::string("--") + key.name;
    for (auto& c : flag)
      if (c == '_') c = '-';
    if (cmd.app->count(flag) > 0)
      config[key.name] = normalize(key, cmd.flags.at(key.name));
  }
  config["command"] = cmd.name;
  return config;
}

rs_complex get_complex(const json& config, const char* key) {
  const auto& v = config.at(key);
  return {v[0].get<double>(), v[1].get<double>()};
}

fs::path prepare_output(const json& config) {
  const fs::path dir = config.at("out").get<std::string>();
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw CliError{kExitFail, "cannot create " + dir.string()};
  std::ofstream out(dir / "config.json", std::ios::binary);
  out << config.dump(2) << '\n';
  if (!out) throw CliError{kExitFail, "cannot write the resolved config"};
  return dir;
}

void write_summary(const fs::path& dir, const json& summary) {
  std::ofstream out(dir / "summary.json", std::ios::binary);
  out << summary.dump(2) << '\n';
  if (!out) throw CliError{kExitFail, "cannot write the summary"};
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json complex_json(rs_complex z) { return json::array({z.re, z.im}); }

// ---- handles ----

struct FamilyDeleter {
  void operator()(rs_family* f) const { rs_family_destroy(f); }
};
struct TensorDeleter {
  void operator()(rs_tensor* t) const { rs_tensor_destroy(t); }
};
struct TrajectoryDeleter {
  void operator()(rs_trajectory* t) const { rs_trajectory_destroy(t); }
};
using FamilyPtr = std::unique_ptr<rs_family, FamilyDeleter>;
using TensorPtr = std::unique_ptr<rs_tensor, TensorDeleter>;
using TrajectoryPtr = std::unique_ptr<rs_trajectory, TrajectoryDeleter>;

FamilyPtr open_family(const json& config) {
  const auto name = config.at("family").get<std::string>();
  bool known = false;
  for (std::size_t i = 0; i < rs_family_count(); ++i)
    known = known || name == rs_family_name_at(i);
  if (!known) usage("unknown family '" + name + "'");
  rs_family* f = nullptr;
  if (config.contains("G")) {
    const auto& g = config.at("G");
    const rs_weight w = g.is_string() ? rs_weight{0.0, 1}
                                      : rs_weight{g.get<double>(), 0};
    check(rs_family_create(name.c_str(), &w, &f));
  } else {
    check(rs_family_create(name.c_str(), nullptr, &f));
  }
  return FamilyPtr(f);
}

TensorPtr build(const rs_family* family, int cutoff) {
  rs_tensor* t = nullptr;
  check(rs_tensor_build(family, cutoff, &t));
  return TensorPtr(t);
}

json weight_json(rs_weight w) {
  return w.infinite ? json("inf") : json(w.value);
}

rs_step_control control_from(const json& config) {
  rs_step_control c = rs_step_control_default();
  c.step = config.at("step").get<double>();
  c.sample_interval = config.at("sample_interval").get<double>();
  return c;
}

json drift_json(const rs_drift& d) {
  return {{"N", d.norm}, {"E", d.energy}, {"H", d.hamiltonian}, {"abs_Z", d.charge}};
}

// ---- commands ----

int cmd_check_identity(const json& config) {
  const auto family = open_family(config);
  const bool cubic = rs_family_tuple_length(family.get()) == 4;
  const int bound = config.at(cubic ? "max_index" : "max_total").get<int>();
  const double tol = config.at("tol").get<double>();
  if (!(tol > 0)) usage("tol must be positive");
  const auto dir = prepare_output(config);
  rs_identity_report r{};
  check(rs_check_identity(family.get(), bound, tol, &r));
  json worst = json::array();
  for (int j = 0; j < r.tuple_length; ++j) worst.push_back(r.worst_tuple[j]);
  write_summary(dir, {{"family", rs_family_name(family.get())},
                      {"condition", r.condition},
                      {"bound", r.bound},
                      {"tuples_checked", r.tuples_checked},
                      {"max_residual", r.max_residual},
                      {"max_scaled_residual", r.max_scaled_residual},
                      {"worst_tuple", worst},
                      {"tolerance", r.tolerance},
                      {"exact", static_cast<bool>(r.exact)},
                      {"passed", static_cast<bool>(r.passed)}});
  std::cout << (r.passed ? "PASS" : "FAIL") << ' ' << r.condition << " family="
            << rs_family_name(family.get()) << " bound=" << r.bound
            << " tuples=" << r.tuples_checked
            << " max_residual=" << num(r.max_residual)
            << (r.exact ? " (exact)" : "") << '\n';
  return r.passed ? kExitPass : kExitFail;
}

int cmd_gen_tensor(const json& config) {
  const auto family = open_family(config);
  const int cutoff = config.at("cutoff").get<int>();
  const auto dir = prepare_output(config);
  const auto tensor = build(family.get(), cutoff);
  const auto path = (dir / "tensor.txt").string();
  check(rs_tensor_write(tensor.get(), path.c_str()));
  rs_tensor_info info{};
  check(rs_tensor_info_get(tensor.get(), &info));
  json summary = {{"family", rs_family_name(family.get())},
                  {"G", weight_json(info.g)},
                  {"cutoff", info.cutoff},
                  {"canonical_entries", info.entries},
                  {"ordered_tuples", info.ordered_count},
                  {"file", "tensor.txt"}};
  bool passed = true;
  if (config.at("verify").get<bool>()) {
    rs_tensor* raw = nullptr;
    check(rs_tensor_read(path.c_str(), &raw));
    const TensorPtr reread(raw);
    rs_tensor_info again{};
    check(rs_tensor_info_get(reread.get(), &again));
    double worst = 0.0;
    int idx[6];
    for (std::uint64_t e = 0; e < again.entries; ++e) {
      double stored = 0.0, fresh = 0.0;
      check(rs_tensor_entry(reread.get(), e, idx, nullptr, &stored));
      check(rs_family_eval_C(family.get(), idx, &fresh));
      const double diff = std::abs(stored - fresh) / std::max(1.0, std::abs(fresh));
      worst = std::max(worst, diff);
    }
    passed = again.entries == info.entries && worst <= 1e-13;
    summary["roundtrip_max_error"] = worst;
    summary["roundtrip_passed"] = passed;
  }
  write_summary(dir, summary);
  std::cout << (passed ? "PASS" : "FAIL") << " tensor family="
            << rs_family_name(family.get()) << " cutoff=" << info.cutoff
            << " canonical=" << info.entries
            << " ordered=" << info.ordered_count << '\n';
  return passed ? kExitPass : kExitFail;
}

/// Initial data for evolve; also reports whether the state is stationary.
std::vector<rs_complex> initial_state(const json& config, const rs_family* family,
                                      const rs_tensor* tensor, int cutoff,
                                      bool& stationary) {
  std::vector<rs_complex> a(static_cast<std::size_t>(cutoff) + 1);
  const auto init = config.at("init").get<std::string>();
  const rs_weight g = rs_family_weight(family);
  stationary = init == "single" || init == "stationary";
  if (init == "random") {
    check(rs_state_random(config.at("seed").get<std::uint64_t>(), cutoff, a.data()));
  } else if (init == "single") {
    check(rs_state_single_mode(config.at("N").get<int>(), cutoff,
                               get_complex(config, "amplitude"), a.data()));
  } else if (init == "manifold") {
    const rs_manifold_point q{get_complex(config, "a"), get_complex(config, "b"),
                              get_complex(config, "p")};
    check(rs_state_manifold(q, g, cutoff, a.data()));
  } else if (init == "stationary") {
    const int mode = config.at("N").get<int>();
    const rs_complex p = get_complex(config, "p");
    if (g.infinite) {
      std::vector<rs_complex> unit(a.size());
      check(rs_state_single_mode(mode, cutoff, {1.0, 0.0}, unit.data()));
      check(rs_magnetic_translate(unit.data(), cutoff, p, a.data()));
    } else {
      check(rs_state_modeN(g.value, p, mode, cutoff, a.data()));
    }
  } else {
    usage("unknown init '" + init + "'");
  }
  (void)tensor;
  return a;
}

int cmd_evolve(const json& config) {
  const auto family = open_family(config);
  const int cutoff = config.at("cutoff").get<int>();
  const double tol = config.at("tol").get<double>();
  if (!(tol > 0)) usage("tol must be positive");
  if (!(config.at("t_end").get<double>() > 0)) usage("t_end must be positive");
  const auto tensor = build(family.get(), cutoff);
  bool stationary = false;
  const auto a0 = initial_state(config, family.get(), tensor.get(), cutoff, stationary);
  const auto dir = prepare_output(config);
  const rs_step_control control = control_from(config);
  rs_trajectory* raw = nullptr;
  const rs_status s =
      rs_integrate(tensor.get(), a0.data(), config.at("t_end").get<double>(),
                   &control, &raw);
  if (s == RS_ERR_INTEGRATION) {
    write_summary(dir, {{"aborted", true}, {"diagnostic", rs_last_error()}});
    std::cout << "FAIL integration aborted: " << rs_last_error() << '\n';
    return kExitFail;
  }
  check(s);
  const TrajectoryPtr traj(raw);
  check(rs_trajectory_write_csv(traj.get(), (dir / "trajectory.csv").string().c_str()));
  rs_drift d{};
  check(rs_trajectory_drift(traj.get(), &d));
  const bool conserved_ok = d.norm <= tol && d.energy <= tol && d.hamiltonian <= tol;
  const bool charge_ok = d.charge <= tol;
  json summary = {{"family", rs_family_name(family.get())},
                  {"init", config.at("init")},
                  {"samples", rs_trajectory_size(traj.get())},
                  {"max_relative_drift", drift_json(d)},
                  {"tolerance", tol},
                  {"conservation_passed", conserved_ok},
                  {"charge_conserved", charge_ok}};
  bool passed = conserved_ok && charge_ok;

  if (stationary) {
    // |alpha_n(t)| must stay put for stationary data.
    std::vector<rs_complex> st(a0.size());
    double scale = 0.0;
    for (const auto& z : a0) scale = std::max(scale, std::hypot(z.re, z.im));
    double modulus = 0.0;
    for (std::size_t i = 0; i < rs_trajectory_size(traj.get()); ++i) {
      check(rs_trajectory_sample(traj.get(), i, nullptr, st.data(), nullptr));
      for (std::size_t n = 0; n < a0.size(); ++n)
        modulus = std::max(modulus, std::abs(std::hypot(st[n].re, st[n].im) -
                                              std::hypot(a0[n].re, a0[n].im)));
    }
    summary["modulus_drift"] = modulus / scale;
    passed = passed && modulus / scale <= tol;
  }
  if (config.at("init") == "single") {
    // Phase rotation at rate C_{k..k} |alpha_k|^(2(arity-1)).
    const int k = config.at("N").get<int>();
    const int length = rs_family_tuple_length(family.get());
    std::vector<int> tuple(static_cast<std::size_t>(length), k);
    double c = 0.0;
    check(rs_tensor_coefficient(tensor.get(), tuple.data(), &c));
    const double mag = std::hypot(a0[k].re, a0[k].im);
    const double rate = c * std::pow(mag, length - 2);
    std::vector<rs_complex> st(a0.size());
    double phase_error = 0.0;
    for (std::size_t i = 0; i < rs_trajectory_size(traj.get()); ++i) {
      double t = 0.0;
      check(rs_trajectory_sample(traj.get(), i, &t, st.data(), nullptr));
      const double re0 = a0[k].re, im0 = a0[k].im;
      const double cr = std::cos(rate * t), sr = -std::sin(rate * t);
      const double er = re0 * cr - im0 * sr - st[k].re;
      const double ei = re0 * sr + im0 * cr - st[k].im;
      phase_error = std::max(phase_error, std::hypot(er, ei) / mag);
    }
    summary["expected_phase_rate"] = rate;
    summary["phase_error"] = phase_error;
    const bool phase_ok = phase_error <= tol;
    summary["phase_rotation_passed"] = phase_ok;
    passed = passed && phase_ok;
  }
  summary["passed"] = passed;
  write_summary(dir, summary);
  std::cout << (passed ? "PASS" : "FAIL") << " evolve family="
            << rs_family_name(family.get()) << " drift N=" << num(d.norm)
            << " E=" << num(d.energy) << " H=" << num(d.hamiltonian)
            << " |Z|=" << num(d.charge) << '\n';
  if (!charge_ok)
    std::cout << "WARNING charge |Z| not conserved: relative drift "
              << num(d.charge) << '\n';
  return passed ? kExitPass : kExitFail;
}

int cmd_stationary(const json& config) {
  const auto family = open_family(config);
  const rs_weight g = rs_family_weight(family.get());
  const int cutoff = config.at("cutoff").get<int>();
  const int window = config.at("window").get<int>();
  const int mode = config.at("N").get<int>();
  const rs_complex p = get_complex(config, "p");
  const double tol = config.at("tol").get<double>();
  if (!(tol > 0)) usage("tol must be positive");
  if (std::hypot(p.re, p.im) >= 1.0) usage("|p| must be below 1");
  if (window > cutoff) usage("window must not exceed the cutoff");
  const auto dir = prepare_output(config);
  std::vector<rs_complex> a(static_cast<std::size_t>(cutoff) + 1);
  std::string construction;
  if (g.infinite) {
    std::vector<rs_complex> unit(a.size());
    check(rs_state_single_mode(mode, cutoff, {1.0, 0.0}, unit.data()));
    check(rs_magnetic_translate(unit.data(), cutoff, p, a.data()));
    construction = "magnetic_translation";
  } else if (mode == 0) {
    check(rs_state_mode0(g, p, cutoff, a.data()));
    construction = "mode0";
  } else {
    check(rs_state_modeN(g.value, p, mode, cutoff, a.data()));
    construction = "modeN";
  }
  const auto tensor = build(family.get(), cutoff);
  rs_stationarity r{};
  check(rs_verify_stationary(tensor.get(), a.data(), window, &r));
  check(rs_write_state_csv(a.data(), cutoff, (dir / "state.csv").string().c_str()));
  const bool passed = r.residual <= tol;
  json summary = {{"family", rs_family_name(family.get())},
                  {"G", weight_json(g)},
                  {"construction", construction},
                  {"N", mode},
                  {"p", complex_json(p)},
                  {"cutoff", cutoff},
                  {"window", r.window},
                  {"lambda", r.lambda},
                  {"residual", r.residual},
                  {"imag_ratio", r.imag_ratio},
                  {"tolerance", tol},
                  {"passed", passed}};
  if (!g.infinite && mode == 0) {
    double closed = 0.0;
    check(rs_lambda_mode0(g.value, p, &closed));
    summary["lambda_closed_form"] = closed;
    summary["lambda_relative_difference"] = std::abs(r.lambda - closed) / closed;
  }
  write_summary(dir, summary);
  std::cout << (passed ? "PASS" : "FAIL") << " stationary family="
            << rs_family_name(family.get()) << ' ' << construction
            << " N=" << mode << " lambda=" << num(r.lambda)
            << " residual=" << num(r.residual) << '\n';
  return passed ? kExitPass : kExitFail;
}

int cmd_manifold(const json& config) {
  const auto family = open_family(config);
  if (rs_family_tuple_length(family.get()) != 4)
    usage("the invariant manifold is defined for cubic families only");
  const int cutoff = config.at("cutoff").get<int>();
  const double tol = config.at("tol").get<double>();
  if (!(tol > 0)) usage("tol must be positive");
  if (!(config.at("t_end").get<double>() > 0)) usage("t_end must be positive");
  const rs_manifold_point q{get_complex(config, "a"), get_complex(config, "b"),
                            get_complex(config, "p")};
  const auto tensor = build(family.get(), cutoff);
  const auto dir = prepare_output(config);
  const rs_step_control control = control_from(config);
  rs_trajectory* raw = nullptr;
  double max_residual = 0.0;
  check(rs_manifold_track(tensor.get(), q, config.at("t_end").get<double>(),
                          &control, &raw, &max_residual));
  const TrajectoryPtr traj(raw);
  check(rs_trajectory_write_csv(traj.get(), (dir / "trajectory.csv").string().c_str()));
  rs_period period{};
  check(rs_spectrum_period(tensor.get(), traj.get(), control.step, &period));
  const bool passed = max_residual <= tol;
  json recurrences = json::array();
  for (std::size_t r = 0; r < period.recurrence_count; ++r)
    recurrences.push_back(period.recurrences[r]);
  json period_json = {{"found", static_cast<bool>(period.found)},
                      {"degenerate", static_cast<bool>(period.degenerate)},
                      {"d_max", period.d_max}};
  if (period.found) {
    period_json["T"] = period.period;
    period_json["mismatch"] = period.mismatch;
    period_json["relative_mismatch"] = period.mismatch / period.d_max;
    period_json["recurrences"] = recurrences;
  }
  write_summary(dir, {{"family", rs_family_name(family.get())},
                      {"a", complex_json(q.a)},
                      {"b", complex_json(q.b)},
                      {"p", complex_json(q.p)},
                      {"max_fit_residual", max_residual},
                      {"tolerance", tol},
                      {"invariance_passed", passed},
                      {"spectrum_period", period_json}});
  std::cout << (passed ? "PASS" : "FAIL") << " manifold family="
            << rs_family_name(family.get())
            << " max_fit_residual=" << num(max_residual);
  if (period.degenerate)
    std::cout << " period=degenerate";
  else if (period.found)
    std::cout << " period=" << num(period.period)
              << " mismatch=" << num(period.mismatch);
  else
    std::cout << " period=not-found";
  std::cout << '\n';
  return passed ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resonant-system coefficient, identity, and evolution toolkit"};
  app.require_subcommand(1);

  std::vector<std::unique_ptr<Command>> commands;
  auto add = [&](const std::string& name, const std::string& help,
                 json defaults, std::vector<std::string> keys) {
    auto cmd = std::make_unique<Command>();
    cmd->name = name;
    cmd->defaults = std::move(defaults);
    cmd->app = app.add_subcommand(name, help);
    cmd->app->add_option("--config", cmd->config_path, "JSON configuration file");
    keys.push_back("out");
    for (const auto& k : keys) {
      const Key& key = key_info(k);
      std::string flag = "--" + k;
      for (auto& c : flag)
        if (c == '_') c = '-';
      cmd->app->add_option(flag, cmd->flags[k], key.help);
    }
    commands.push_back(std::move(cmd));
  };

  add("check-identity", "check the finite-difference solvability condition",
      {{"family", "cubic_conformal"}, {"max_index", 20}, {"max_total", 8},
       {"tol", 1e-10}, {"out", "resonant-out"}},
      {"family", "G", "max_index", "max_total", "tol"});
  add("gen-tensor", "tabulate the coupling tensor",
      {{"family", "cubic_conformal"}, {"cutoff", 8}, {"verify", true},
       {"out", "resonant-out"}},
      {"family", "G", "cutoff", "verify"});
  add("evolve", "integrate the resonant system",
      {{"family", "cubic_conformal"}, {"cutoff", 24}, {"init", "random"},
       {"seed", 1}, {"N", 0}, {"p", {0.5, 0.0}}, {"a", {0.1, 0.0}},
       {"b", {1.0, 0.0}}, {"amplitude", {1.0, 0.0}}, {"t_end", 10.0},
       {"step", 1e-3}, {"sample_interval", 0.1}, {"tol", 1e-8},
       {"out", "resonant-out"}},
      {"family", "G", "cutoff", "init", "seed", "N", "p", "a", "b", "amplitude",
       "t_end", "step", "sample_interval", "tol"});
  add("stationary", "construct and verify a stationary state",
      {{"family", "cubic_conformal"}, {"cutoff", 48}, {"window", 32}, {"N", 0},
       {"p", {0.5, 0.0}}, {"tol", 1e-9}, {"out", "resonant-out"}},
      {"family", "G", "cutoff", "window", "N", "p", "tol"});
  add("manifold", "track the invariant manifold and the spectrum period",
      {{"family", "cubic_conformal"}, {"cutoff", 48}, {"a", {0.1, 0.0}},
       {"b", {1.0, 0.0}}, {"p", {0.3, 0.0}}, {"t_end", 20.0}, {"step", 1e-3},
       {"sample_interval", 0.05}, {"tol", 1e-6}, {"out", "resonant-out"}},
      {"family", "G", "cutoff", "a", "b", "p", "t_end", "step",
       "sample_interval", "tol"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    for (auto& cmd : commands) {
      if (!cmd->app->parsed()) continue;
      const json config = resolve(*cmd);
      if (cmd->name == "check-identity") return cmd_check_identity(config);
      if (cmd->name == "gen-tensor") return cmd_gen_tensor(config);
      if (cmd->name == "evolve") return cmd_evolve(config);
      if (cmd->name == "stationary") return cmd_stationary(config);
      if (cmd->name == "manifold") return cmd_manifold(config);
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << '\n';
    return e.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}

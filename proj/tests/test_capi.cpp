// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "resonant/resonant.h"

namespace {

struct Family {
  rs_family* h = nullptr;
  explicit Family(const char* name, const rs_weight* g = nullptr) {
    REQUIRE(rs_family_create(name, g, &h) == RS_OK);
  }
  ~Family() { rs_family_destroy(h); }
};

struct Tensor {
  rs_tensor* h = nullptr;
  Tensor(const rs_family* f, int cutoff) { REQUIRE(rs_tensor_build(f, cutoff, &h) == RS_OK); }
  ~Tensor() { rs_tensor_destroy(h); }
};

double abs(rs_complex z) { return std::hypot(z.re, z.im); }

}  // namespace

TEST_CASE("status names and errors") {
  CHECK(std::string(rs_status_name(RS_OK)) != "");
  rs_family* f = nullptr;
  CHECK(rs_family_create("missing", nullptr, &f) == RS_ERR_INVALID_ARGUMENT);
  CHECK(f == nullptr);
  CHECK(std::string(rs_last_error()).find("missing") != std::string::npos);
  CHECK(rs_family_create(nullptr, nullptr, &f) == RS_ERR_INVALID_ARGUMENT);
  rs_family_destroy(nullptr);
  rs_tensor_destroy(nullptr);
  rs_trajectory_destroy(nullptr);
}

TEST_CASE("mode space through the C interface") {
  double w = 0.0;
  REQUIRE(rs_mode_weight({2.0, 0}, 3, &w) == RS_OK);
  CHECK(w == doctest::Approx(2.0));
  REQUIRE(rs_mode_weight({0.0, 1}, 4, &w) == RS_OK);
  CHECK(w == doctest::Approx(1.0 / std::sqrt(24.0)));
  CHECK(rs_mode_weight({-1.0, 0}, 3, &w) == RS_ERR_INVALID_ARGUMENT);
  rs_complex alpha[3] = {{1, 0}, {std::sqrt(2.0), 0}, {0, std::sqrt(3.0)}}, beta[3];
  REQUIRE(rs_alpha_to_beta(alpha, 3, {2.0, 0}, beta) == RS_OK);
  CHECK(beta[1].re == doctest::Approx(1.0));
  CHECK(beta[2].im == doctest::Approx(1.0));
}

TEST_CASE("families and identities") {
  CHECK(rs_family_count() == 8);
  CHECK(rs_family_name_at(100) == nullptr);
  Family conformal("cubic_conformal");
  CHECK(std::string(rs_family_name(conformal.h)) == "cubic_conformal");
  CHECK(rs_family_tuple_length(conformal.h) == 4);
  CHECK(rs_family_weight(conformal.h).value == 2.0);
  const int t[4] = {2, 2, 2, 2};
  double v = 0.0;
  REQUIRE(rs_family_eval_S(conformal.h, t, &v) == RS_OK);
  CHECK(v == 3.0);
  REQUIRE(rs_family_eval_C(conformal.h, t, &v) == RS_OK);
  CHECK(v == doctest::Approx(3.0 / 9.0));

  rs_identity_report rep{};
  REQUIRE(rs_check_identity(conformal.h, 10, 1e-12, &rep) == RS_OK);
  CHECK(rep.passed);
  CHECK(rep.exact);
  CHECK(rep.max_residual == 0.0);
  CHECK(std::string(rep.condition) == "cubic_finite_g");

  Family szego("cubic_szego");
  REQUIRE(rs_check_identity(szego.h, 5, 1e-12, &rep) == RS_OK);
  CHECK_FALSE(rep.passed);
  CHECK(rep.max_residual == 1.0);

  const rs_weight d{2.5, 0};
  Family gamma("quintic_gamma_ratio", &d);
  CHECK(rs_family_weight(gamma.h).value == 2.5);
  REQUIRE(rs_check_identity(gamma.h, 6, 1e-10, &rep) == RS_OK);
  CHECK(rep.passed);
  CHECK(std::string(rep.condition) == "quintic_finite_g");
}

TEST_CASE("tensors, rhs and conserved quantities") {
  Family conformal("cubic_conformal");
  Tensor tensor(conformal.h, 2);
  rs_tensor_info info{};
  REQUIRE(rs_tensor_info_get(tensor.h, &info) == RS_OK);
  CHECK(info.cutoff == 2);
  CHECK(info.ordered_count == 19);
  CHECK(info.tuple_length == 4);
  CHECK(std::string(rs_tensor_family(tensor.h)) == "cubic_conformal");

  int idx[6];
  uint32_t mult = 0;
  double value = 0.0;
  uint64_t total = 0;
  for (uint64_t e = 0; e < info.entries; ++e) {
    REQUIRE(rs_tensor_entry(tensor.h, e, idx, &mult, &value) == RS_OK);
    total += mult;
  }
  CHECK(total == 19);
  CHECK(rs_tensor_entry(tensor.h, info.entries, idx, &mult, &value) == RS_ERR_INVALID_ARGUMENT);

  const int t[4] = {1, 1, 1, 1};
  REQUIRE(rs_tensor_coefficient(tensor.h, t, &value) == RS_OK);
  CHECK(value == doctest::Approx(0.5));

  rs_complex a[3] = {{1, 0}, {0, 0}, {0, 0}}, f[3];
  REQUIRE(rs_rhs(tensor.h, a, f) == RS_OK);
  CHECK(f[0].re == 1.0);
  rs_conserved c{};
  REQUIRE(rs_conserved_set(tensor.h, a, &c) == RS_OK);
  CHECK(c.norm == 1.0);
  CHECK(c.hamiltonian == doctest::Approx(0.5));

  const char* path = "capi_tensor.txt";
  REQUIRE(rs_tensor_write(tensor.h, path) == RS_OK);
  rs_tensor* back = nullptr;
  REQUIRE(rs_tensor_read(path, &back) == RS_OK);
  rs_tensor_info info2{};
  rs_tensor_info_get(back, &info2);
  CHECK(info2.entries == info.entries);
  rs_tensor_destroy(back);
  std::remove(path);
  CHECK(rs_tensor_read("no/such/file", &back) == RS_ERR_IO);
}

TEST_CASE("integration through the C interface") {
  Family conformal("cubic_conformal");
  Tensor tensor(conformal.h, 24);
  std::vector<rs_complex> a0(25);
  REQUIRE(rs_state_random(3, 24, a0.data()) == RS_OK);
  rs_step_control control = rs_step_control_default();
  control.step = 1e-3;
  control.sample_interval = 0.5;
  rs_trajectory* traj = nullptr;
  REQUIRE(rs_integrate(tensor.h, a0.data(), 3.0, &control, &traj) == RS_OK);
  CHECK(rs_trajectory_size(traj) == 7);
  CHECK(rs_trajectory_cutoff(traj) == 24);
  rs_drift drift{};
  REQUIRE(rs_trajectory_drift(traj, &drift) == RS_OK);
  CHECK(drift.norm <= 1e-10);
  CHECK(drift.charge <= 1e-8);
  double t = 0.0;
  std::vector<rs_complex> state(25);
  rs_conserved c{};
  REQUIRE(rs_trajectory_sample(traj, 6, &t, state.data(), &c) == RS_OK);
  CHECK(t == doctest::Approx(3.0));
  std::vector<rs_complex> end(25);
  REQUIRE(rs_evolve_to(tensor.h, a0.data(), 3.0, 1e-3, end.data()) == RS_OK);
  for (int n = 0; n <= 24; ++n) {
    CHECK(std::abs(end[n].re - state[n].re) < 1e-13);
    CHECK(std::abs(end[n].im - state[n].im) < 1e-13);
  }
  CHECK(rs_trajectory_sample(traj, 7, &t, state.data(), &c) == RS_ERR_INVALID_ARGUMENT);
  REQUIRE(rs_trajectory_write_csv(traj, "capi_traj.csv") == RS_OK);
  std::ifstream in("capi_traj.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header.rfind("t,re_0,im_0", 0) == 0);
  std::remove("capi_traj.csv");
  rs_trajectory_destroy(traj);
}

TEST_CASE("stationary states through the C interface") {
  Family conformal("cubic_conformal");
  Tensor tensor(conformal.h, 48);
  std::vector<rs_complex> a(49);
  REQUIRE(rs_state_mode0({2.0, 0}, {0.5, 0.0}, 48, a.data()) == RS_OK);
  rs_stationarity rep{};
  REQUIRE(rs_verify_stationary(tensor.h, a.data(), 32, &rep) == RS_OK);
  CHECK(rep.lambda == doctest::Approx(16.0 / 9).epsilon(1e-10));
  CHECK(rep.residual <= 1e-9);
  double lambda = 0.0;
  REQUIRE(rs_lambda_mode0(2.0, {0.5, 0.0}, &lambda) == RS_OK);
  CHECK(lambda == doctest::Approx(16.0 / 9));

  REQUIRE(rs_state_modeN(2.0, {0.2, 0.3}, 3, 48, a.data()) == RS_OK);
  REQUIRE(rs_verify_stationary(tensor.h, a.data(), 32, &rep) == RS_OK);
  CHECK(rep.residual <= 1e-9);

  rs_complex c[3];
  REQUIRE(rs_partial_fractions(2.0, {0.3, 0.0}, 2, c) == RS_OK);
  CHECK(rs_partial_fractions(2.0, {0.0, 0.0}, 2, c) != RS_OK);

  std::vector<rs_complex> unit(41), moved(41);
  REQUIRE(rs_state_single_mode(0, 40, {1.0, 0.0}, unit.data()) == RS_OK);
  REQUIRE(rs_magnetic_translate(unit.data(), 40, {0.5, 0.0}, moved.data()) == RS_OK);
  double n2 = 0.0;
  for (auto z : moved) n2 += z.re * z.re + z.im * z.im;
  CHECK(n2 == doctest::Approx(1.0).epsilon(1e-12));

  std::vector<rs_complex> zero(49);
  CHECK(rs_verify_stationary(tensor.h, zero.data(), 32, &rep) == RS_ERR_DEGENERATE);
}

TEST_CASE("manifold through the C interface") {
  Family conformal("cubic_conformal");
  Tensor tensor(conformal.h, 24);
  const rs_manifold_point point{{0.1, 0.0}, {1.0, 0.0}, {0.3, 0.0}};
  std::vector<rs_complex> a(25), beta(25);
  REQUIRE(rs_state_manifold(point, {2.0, 0}, 24, a.data()) == RS_OK);
  REQUIRE(rs_alpha_to_beta(a.data(), 25, {2.0, 0}, beta.data()) == RS_OK);
  rs_manifold_fit fit{};
  REQUIRE(rs_fit_manifold(beta.data(), 24, nullptr, &fit) == RS_OK);
  CHECK(fit.residual <= 1e-10);
  CHECK(abs(fit.point.p) == doctest::Approx(0.3).epsilon(1e-8));

  rs_step_control control = rs_step_control_default();
  control.step = 1e-2;
  control.sample_interval = 0.1;
  rs_trajectory* traj = nullptr;
  double worst = 1.0;
  REQUIRE(rs_manifold_track(tensor.h, point, 35.0, &control, &traj, &worst) == RS_OK);
  CHECK(worst <= 1e-6);
  REQUIRE(rs_trajectory_fit(traj, 3, &fit) == RS_OK);
  CHECK(fit.residual <= 1e-6);
  rs_period period{};
  REQUIRE(rs_spectrum_period(tensor.h, traj, 0.0, &period) == RS_OK);
  CHECK(period.found);
  CHECK(period.recurrence_count >= 1);
  CHECK(period.period > 0.0);
  REQUIRE(rs_trajectory_write_csv(traj, "capi_manifold.csv") == RS_OK);
  std::ifstream in("capi_manifold.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header.find("residual,abs_a,abs_b,abs_p") != std::string::npos);
  std::remove("capi_manifold.csv");
  rs_trajectory_destroy(traj);
}

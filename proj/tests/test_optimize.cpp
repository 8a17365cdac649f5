// Copyright 2026 The singlet authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>

#include "singlet/optimize.hpp"

using namespace singlet;

namespace {

SystemParams small_base() {
  SystemParams p = figure3_preset(1.0);
  p.d_t = 3;
  p.d_c = 2;
  return p;
}

}  // namespace

TEST_SUITE("optimize") {

TEST_CASE("recovers the optimum of an injected quadratic") {
  const SystemParams base = figure3_preset(1.0);
  const double c_ob = base.omega_bar + 0.031;
  const double c_eps = 0.964;
  const double c_dc = base.delta_c + 0.018;

  OptimizeOptions oo;
  oo.budget = 200;
  oo.restarts = 1;
  oo.objective = [&](const SystemParams& p) {
    const double a = p.omega_bar - c_ob;
    const double b = p.epsilon - c_eps;
    const double c = p.delta_c - c_dc;
    return -(a * a + b * b + c * c);
  };
  const OptResult res =
      optimize_frequencies(base, {"omega_bar", "epsilon", "delta_c"}, oo);
  CHECK(res.evaluations <= 200);
  CHECK(std::abs(res.best_fidelity) <= 1e-6);
  CHECK(std::abs(res.best_params.omega_bar - c_ob) <= 2e-3);
  CHECK(std::abs(res.best_params.epsilon - c_eps) <= 2e-3);
  CHECK(std::abs(res.best_params.delta_c - c_dc) <= 2e-3);
}

TEST_CASE("trace is reproducible bit for bit with a fixed seed") {
  const SystemParams base = figure3_preset(1.0);
  OptimizeOptions oo;
  oo.budget = 120;
  oo.restarts = 4;
  oo.seed = 42;
  oo.jobs = 4;
  oo.objective = [](const SystemParams& p) {
    const double a = p.omega_bar - 18.3;
    const double b = p.delta_c + 0.29;
    return -(a * a + 3.0 * b * b) + 0.1 * std::sin(37.0 * a * b);
  };
  const OptResult r1 = optimize_frequencies(base, {"omega_bar", "delta_c"}, oo);
  const OptResult r2 = optimize_frequencies(base, {"omega_bar", "delta_c"}, oo);
  REQUIRE(r1.trace.size() == r2.trace.size());
  for (std::size_t i = 0; i < r1.trace.size(); ++i) {
    CHECK(r1.trace[i].first == r2.trace[i].first);
    CHECK(r1.trace[i].second == r2.trace[i].second);
  }
}

TEST_CASE("best fidelity equals the maximum over the trace") {
  OptimizeOptions oo;
  oo.budget = 80;
  oo.restarts = 2;
  oo.objective = [](const SystemParams& p) {
    return -std::pow(p.epsilon - 1.02, 2.0);
  };
  const OptResult res = optimize_frequencies(figure3_preset(1.0), {"epsilon"}, oo);
  double max_f = -1e300;
  for (const auto& [x, f] : res.trace) {
    if (!std::isnan(f)) max_f = std::max(max_f, f);
  }
  CHECK(res.best_fidelity == max_f);
  CHECK(res.evaluations == static_cast<int>(res.trace.size()));
}

TEST_CASE("input validation") {
  const SystemParams base = figure3_preset(1.0);
  OptimizeOptions oo;
  oo.objective = [](const SystemParams&) { return 0.0; };
  CHECK_THROWS_AS(optimize_frequencies(base, {"kappa"}, oo),
                  std::invalid_argument);
  CHECK_THROWS_AS(optimize_frequencies(base, {}, oo), std::invalid_argument);
  oo.budget = 10;
  CHECK_THROWS_AS(optimize_frequencies(base, {"epsilon"}, oo),
                  std::invalid_argument);
}

TEST_CASE("all-NaN objective raises an optimization failure") {
  OptimizeOptions oo;
  oo.budget = 60;
  oo.restarts = 2;
  oo.objective = [](const SystemParams&) {
    return std::numeric_limits<double>::quiet_NaN();
  };
  CHECK_THROWS_AS(
      optimize_frequencies(figure3_preset(1.0), {"epsilon"}, oo),
      OptimizationFailure);
}

TEST_CASE("weak-drive excitation proxy peaks at the bare resonance") {
  // Oracle for the resonance location before Stark corrections: with tiny
  // drives the P_S growth from |00> peaks where delta2 = sqrt(2) g puts the
  // two-photon drive on the lower dressed state.
  SystemParams base = figure3_preset(1.0);
  base.Omega1 = 1.0 / 30.0;
  base.Omega2 = 1.0 / 30.0;

  const double guess = base.omega_bar;
  double best_val = -1.0, best_ob = 0.0;
  for (double off = -0.1; off <= 0.1001; off += 0.025) {
    SystemParams p = base;
    p.omega_bar = guess + off;
    const ModelSpec m = compile(p);
    const Matrix rho0 = initial_state("00", p.d_t, p.d_c);
    IntegrateOptions io;
    io.rtol = 1e-6;
    io.atol = 1e-10;
    io.sample_interval = 200.0;
    io.track_eigenvalues = false;
    const TimeSeries ts = integrate(m, rho0, 200.0, io);
    const double proxy = ts.populations.back()[3];
    if (proxy > best_val) {
      best_val = proxy;
      best_ob = guess + off;
    }
  }
  CHECK(std::abs(best_ob - guess) <= 0.05 + 1e-12);
  CHECK(best_val > 0.0);
}

TEST_CASE("grid scan with a single value matches a direct steady call") {
  const SystemParams base = small_base();
  GridScanOptions go;
  go.t_target = 60.0;
  go.steady.integ.track_eigenvalues = false;
  const auto scan = grid_scan(base, "delta_omega", {0.0}, go);
  REQUIRE(scan.size() == 1);
  CHECK(!scan[0].failed);

  SteadyOptions so = go.steady;
  so.t_max = 60.0;
  const ModelSpec m = compile(base);
  const SteadyReport rep =
      steady_state(m, initial_state("mixture4", base.d_t, base.d_c), so);
  CHECK(scan[0].fidelity == doctest::Approx(rep.fidelity).epsilon(1e-12));
}

TEST_CASE("grid scan output order is scheduling independent") {
  const SystemParams base = small_base();
  const std::vector<double> values = {-0.04, -0.02, 0.0, 0.02, 0.04};
  GridScanOptions go;
  go.t_target = 40.0;
  go.steady.integ.track_eigenvalues = false;
  go.jobs = 1;
  const auto serial = grid_scan(base, "delta_omega", values, go);
  go.jobs = 4;
  const auto parallel = grid_scan(base, "delta_omega", values, go);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].value == values[i]);
    CHECK(serial[i].fidelity == parallel[i].fidelity);
    CHECK(serial[i].converged == parallel[i].converged);
  }
}

TEST_CASE("per-point numerical failures are recorded, not propagated") {
  const SystemParams base = small_base();
  GridScanOptions go;
  go.t_target = 20.0;
  // impossible error control forces a step-size underflow in every point
  go.steady.integ.rtol = 1e-300;
  go.steady.integ.atol = 1e-300;
  const auto scan = grid_scan(base, "delta_omega", {0.0, 0.01}, go);
  REQUIRE(scan.size() == 2);
  for (const auto& pt : scan) {
    CHECK(pt.failed);
    CHECK(std::isnan(pt.fidelity));
  }
}

TEST_CASE("empty grid is rejected") {
  CHECK_THROWS_AS(grid_scan(small_base(), "delta_omega", {}, {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(grid_scan(small_base(), "not_a_param", {0.0}, {}),
                  ConfigError);
}

}  // TEST_SUITE

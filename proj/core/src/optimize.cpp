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

#include "singlet/optimize.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <limits>
#include <random>
#include <set>
#include <thread>

namespace singlet {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int resolve_jobs(int jobs) {
  if (jobs > 0) return jobs;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Starting point: the base's own values. For a resonance-condition preset
// these are exactly the guesses delta2 = sqrt2 g, delta_c = delta2 - delta1,
// epsilon = 1; a caller handing in an already-tuned base gets a polish run.
double start_value(const SystemParams& base, const std::string& name) {
  return get_param(base, name);
}

using Trace = std::vector<std::pair<std::vector<double>, double>>;

struct RestartResult {
  Trace trace;
};

// One Nelder-Mead run, maximizing f, at most `budget` evaluations.
RestartResult nelder_mead(const std::vector<double>& start, double edge,
                          int budget,
                          const std::function<double(const std::vector<double>&)>& f) {
  RestartResult result;
  const std::size_t n = start.size();
  int evals = 0;

  auto eval = [&](const std::vector<double>& x) -> double {
    const double v = f(x);
    result.trace.emplace_back(x, v);
    ++evals;
    return std::isnan(v) ? -std::numeric_limits<double>::infinity() : v;
  };

  struct Point {
    std::vector<double> x;
    double f;
  };
  std::vector<Point> simplex;
  simplex.push_back({start, eval(start)});
  for (std::size_t i = 0; i < n && evals < budget; ++i) {
    std::vector<double> x = start;
    x[i] += edge;
    simplex.push_back({x, eval(x)});
  }

  auto order = [&] {
    std::stable_sort(simplex.begin(), simplex.end(),
                     [](const Point& a, const Point& b) { return a.f > b.f; });
  };

  constexpr double alpha = 1.0, gamma = 2.0, beta = 0.5, sigma = 0.5;
  while (evals < budget && simplex.size() == n + 1) {
    order();
    // Simplex collapsed: nothing left to explore at double precision.
    double spread = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      spread = std::max(spread,
                        std::abs(simplex.back().x[i] - simplex.front().x[i]));
    }
    if (spread < 1e-10) break;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[p].x[i] / n;
    }
    const Point& worst = simplex.back();

    auto blend = [&](double c) {
      std::vector<double> x(n);
      for (std::size_t i = 0; i < n; ++i) {
        x[i] = centroid[i] + c * (centroid[i] - worst.x[i]);
      }
      return x;
    };

    const auto xr = blend(alpha);
    const double fr = eval(xr);
    if (fr > simplex.front().f && evals < budget) {
      const auto xe = blend(gamma);
      const double fe = eval(xe);
      simplex.back() = fe > fr ? Point{xe, fe} : Point{xr, fr};
      continue;
    }
    if (fr > simplex[n - 1].f) {
      simplex.back() = {xr, fr};
      continue;
    }
    if (evals >= budget) break;
    const auto xc = blend(fr > worst.f ? beta : -beta);
    const double fc = eval(xc);
    if (fc > std::max(fr, worst.f)) {
      simplex.back() = {xc, fc};
      continue;
    }
    // Shrink towards the best vertex.
    for (std::size_t p = 1; p < simplex.size() && evals < budget; ++p) {
      for (std::size_t i = 0; i < n; ++i) {
        simplex[p].x[i] =
            simplex[0].x[i] + sigma * (simplex[p].x[i] - simplex[0].x[i]);
      }
      simplex[p].f = eval(simplex[p].x);
    }
  }
  return result;
}

}  // namespace

OptResult optimize_frequencies(const SystemParams& base,
                               const std::vector<std::string>& free,
                               const OptimizeOptions& options) {
  static const std::set<std::string> allowed = {"omega_bar", "epsilon",
                                                "delta_c", "delta_Omega"};
  if (free.empty()) {
    throw std::invalid_argument("optimize_frequencies: no free parameters");
  }
  for (const auto& name : free) {
    if (!allowed.count(name)) {
      throw std::invalid_argument("optimize_frequencies: '" + name +
                                  "' is not tunable (allowed: omega_bar, "
                                  "epsilon, delta_c, delta_Omega)");
    }
  }
  if (options.budget < 50) {
    throw std::invalid_argument("optimize_frequencies: budget must be >= 50");
  }

  SteadyOptions steady = options.steady;
  steady.t_max = options.t_target;

  auto objective = [&](const std::vector<double>& x) -> double {
    SystemParams p = base;
    for (std::size_t i = 0; i < free.size(); ++i) {
      set_param(p, free[i], x[i]);
    }
    if (options.objective) return options.objective(p);
    try {
      const ModelSpec model = compile(p);
      const Matrix rho0 = initial_state(options.initial_state_name, p.d_t, p.d_c);
      return steady_state(model, rho0, steady).fidelity;
    } catch (const NumericalFailure&) {
      return kNaN;
    } catch (const SingularityError&) {
      return kNaN;
    }
  };

  std::vector<double> start(free.size());
  for (std::size_t i = 0; i < free.size(); ++i) {
    start[i] = start_value(base, free[i]);
  }

  const int restarts = std::max(1, options.restarts);
  const int per_restart = std::max(1, options.budget / restarts);

  auto run_restart = [&](int r) {
    std::vector<double> x0 = start;
    if (r > 0) {
      // Deterministic per-restart jitter, independent of scheduling.
      std::mt19937_64 rng(options.seed * 1000003ULL + static_cast<std::uint64_t>(r));
      std::uniform_real_distribution<double> jitter(-1.5 * options.simplex_edge,
                                                    1.5 * options.simplex_edge);
      for (auto& v : x0) v += jitter(rng);
    }
    return nelder_mead(x0, options.simplex_edge, per_restart, objective);
  };

  std::vector<RestartResult> results(restarts);
  if (resolve_jobs(options.jobs) > 1 && restarts > 1) {
    std::vector<std::future<RestartResult>> futures;
    futures.reserve(restarts);
    for (int r = 0; r < restarts; ++r) {
      futures.push_back(
          std::async(std::launch::async, [&, r] { return run_restart(r); }));
    }
    for (int r = 0; r < restarts; ++r) results[r] = futures[r].get();
  } else {
    for (int r = 0; r < restarts; ++r) results[r] = run_restart(r);
  }

  OptResult out;
  out.best_fidelity = -std::numeric_limits<double>::infinity();
  const std::vector<double>* best_x = nullptr;
  for (const auto& r : results) {
    for (const auto& entry : r.trace) {
      out.trace.push_back(entry);
      if (!std::isnan(entry.second) && entry.second > out.best_fidelity) {
        out.best_fidelity = entry.second;
        best_x = &out.trace.back().first;
      }
    }
  }
  out.evaluations = static_cast<int>(out.trace.size());
  if (!best_x) {
    throw OptimizationFailure(
        "optimize_frequencies: no finite objective value within budget");
  }
  out.best_params = base;
  for (std::size_t i = 0; i < free.size(); ++i) {
    set_param(out.best_params, free[i], (*best_x)[i]);
  }
  return out;
}

std::vector<ScanPoint> grid_scan(const SystemParams& base,
                                 const std::string& parameter,
                                 const std::vector<double>& values,
                                 const GridScanOptions& options) {
  if (values.empty()) {
    throw std::invalid_argument("grid_scan: empty value list");
  }
  get_param(base, parameter);  // validates the name up front

  SteadyOptions steady = options.steady;
  steady.t_max = options.t_target;

  std::vector<ScanPoint> out(values.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= values.size()) return;
      ScanPoint& pt = out[i];
      pt.value = values[i];
      try {
        SystemParams p = base;
        set_param(p, parameter, values[i]);
        const ModelSpec model = compile(p);
        const Matrix rho0 =
            initial_state(options.initial_state_name, p.d_t, p.d_c);
        const SteadyReport rep = steady_state(model, rho0, steady);
        pt.fidelity = rep.fidelity;
        pt.converged = rep.converged;
        pt.threshold_time = rep.threshold_time;
      } catch (const NumericalFailure&) {
        pt.fidelity = kNaN;
        pt.failed = true;
      } catch (const SingularityError&) {
        pt.fidelity = kNaN;
        pt.failed = true;
      }
    }
  };

  const int jobs =
      std::min<int>(resolve_jobs(options.jobs), static_cast<int>(values.size()));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return out;
}

}  // namespace singlet

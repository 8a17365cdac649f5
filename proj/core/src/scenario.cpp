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

#include "singlet/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <thread>

#include "singlet/effective.hpp"
#include "singlet/svg.hpp"

namespace singlet {

namespace fs = std::filesystem;

Command command_from_string(const std::string& name) {
  if (name == "evolve") return Command::Evolve;
  if (name == "steady") return Command::Steady;
  if (name == "rates") return Command::Rates;
  if (name == "benchmarks") return Command::Benchmarks;
  if (name == "spectrum") return Command::Spectrum;
  if (name == "optimize") return Command::Optimize;
  if (name == "sweep") return Command::Sweep;
  throw ConfigError("unknown command '" + name +
                    "' (expected evolve, steady, rates, benchmarks, "
                    "spectrum, optimize or sweep)");
}

std::string to_string(Command command) {
  switch (command) {
    case Command::Evolve: return "evolve";
    case Command::Steady: return "steady";
    case Command::Rates: return "rates";
    case Command::Benchmarks: return "benchmarks";
    case Command::Spectrum: return "spectrum";
    case Command::Optimize: return "optimize";
    case Command::Sweep: return "sweep";
  }
  return "?";
}

ScenarioConfig default_config() {
  ScenarioConfig config;
  config.params = figure3_preset(1.0);
  config.a_grid = parse_grid("0.5:5:10");
  return config;
}

namespace {

struct KeyValue {
  int line;
  std::string key;
  std::string value;
};

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<KeyValue> tokenize(const std::string& text) {
  std::vector<KeyValue> out;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) {
      raw.erase(hash);
    }
    const std::string stripped = trim(raw);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line) +
                        ": expected 'key = value', got '" + stripped + "'");
    }
    out.push_back({line, trim(stripped.substr(0, eq)),
                   trim(stripped.substr(eq + 1))});
  }
  return out;
}

double parse_double_value(const KeyValue& kv) {
  try {
    std::size_t used = 0;
    const double v = std::stod(kv.value, &used);
    if (used != kv.value.size()) throw std::invalid_argument("trailing text");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("line " + std::to_string(kv.line) +
                      ": cannot parse value '" + kv.value + "' for key '" +
                      kv.key + "'");
  }
}

long long parse_int_value(const KeyValue& kv) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(kv.value, &used);
    if (used != kv.value.size()) throw std::invalid_argument("trailing text");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("line " + std::to_string(kv.line) +
                      ": cannot parse integer '" + kv.value + "' for key '" +
                      kv.key + "'");
  }
}

bool parse_bool_value(const KeyValue& kv) {
  if (kv.value == "true" || kv.value == "1" || kv.value == "yes") return true;
  if (kv.value == "false" || kv.value == "0" || kv.value == "no") return false;
  throw ConfigError("line " + std::to_string(kv.line) +
                    ": cannot parse boolean '" + kv.value + "' for key '" +
                    kv.key + "'");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const std::string t = trim(item);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

bool is_state_name(const std::string& name) {
  static const std::set<std::string> names = {
      "mixture4", "ground", "00", "11", "T", "S", "T0", "S0", "T1", "S1"};
  return names.count(name) > 0;
}

bool is_double_param(const std::string& key) {
  const auto& names = param_names();
  return std::find(names.begin(), names.end(), key) != names.end();
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
  const auto colon_parts = split_list(text);
  if (text.find(':') != std::string::npos) {
    std::istringstream in(text);
    std::string lo_s, hi_s, n_s;
    if (!std::getline(in, lo_s, ':') || !std::getline(in, hi_s, ':') ||
        !std::getline(in, n_s)) {
      throw ConfigError("grid '" + text + "' is not lo:hi:count");
    }
    const double lo = std::stod(lo_s);
    const double hi = std::stod(hi_s);
    const int n = std::stoi(n_s);
    if (n < 1) throw ConfigError("grid count must be >= 1");
    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i) {
      grid[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    }
    return grid;
  }
  std::vector<double> grid;
  for (const auto& item : colon_parts) {
    grid.push_back(std::stod(item));
  }
  if (grid.empty()) throw ConfigError("grid '" + text + "' is empty");
  return grid;
}

ScenarioConfig parse_config(const std::string& text) {
  const auto pairs = tokenize(text);

  // The anharmonicity selects the baseline preset; everything else is an
  // override on top of it.
  double preset_A = 1.0;
  for (const auto& kv : pairs) {
    if (kv.key == "A") preset_A = parse_double_value(kv);
  }
  ScenarioConfig config;
  try {
    config.params = figure3_preset(preset_A);
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("A: ") + e.what());
  }
  config.a_grid = parse_grid("0.5:5:10");

  auto require_non_negative = [](const KeyValue& kv, double v) {
    if (v < 0.0) {
      throw ConfigError("line " + std::to_string(kv.line) + ": " + kv.key +
                        " must be non-negative, got " + kv.value);
    }
  };

  for (const auto& kv : pairs) {
    config.explicit_keys.insert(kv.key);
    if (kv.key == "A") {
      continue;  // consumed by the preset above
    } else if (kv.key == "command") {
      try {
        config.command = command_from_string(kv.value);
      } catch (const ConfigError& e) {
        throw ConfigError("line " + std::to_string(kv.line) + ": " + e.what());
      }
    } else if (is_double_param(kv.key)) {
      const double v = parse_double_value(kv);
      if (kv.key == "kappa" || kv.key == "gamma" || kv.key == "gamma_phi" ||
          kv.key == "nbar") {
        require_non_negative(kv, v);
      }
      set_param(config.params, kv.key, v);
    } else if (kv.key == "d_t") {
      const long long v = parse_int_value(kv);
      if (v != 3 && v != 4) {
        throw ConfigError("line " + std::to_string(kv.line) +
                          ": d_t must be 3 or 4");
      }
      config.params.d_t = static_cast<int>(v);
    } else if (kv.key == "d_c") {
      const long long v = parse_int_value(kv);
      if (v < 2) {
        throw ConfigError("line " + std::to_string(kv.line) +
                          ": d_c must be >= 2");
      }
      config.params.d_c = static_cast<int>(v);
    } else if (kv.key == "t_end") {
      config.t_end = parse_double_value(kv);
      if (!(config.t_end > 0.0)) {
        throw ConfigError("line " + std::to_string(kv.line) +
                          ": t_end must be > 0");
      }
    } else if (kv.key == "sample_interval") {
      config.sample_interval = parse_double_value(kv);
      if (!(config.sample_interval > 0.0)) {
        throw ConfigError("line " + std::to_string(kv.line) +
                          ": sample_interval must be > 0");
      }
    } else if (kv.key == "atol") {
      config.atol = parse_double_value(kv);
    } else if (kv.key == "rtol") {
      config.rtol = parse_double_value(kv);
    } else if (kv.key == "steady_tol") {
      config.steady_tol = parse_double_value(kv);
    } else if (kv.key == "t_target") {
      config.t_target = parse_double_value(kv);
    } else if (kv.key == "ghz") {
      config.ghz = parse_double_value(kv);
    } else if (kv.key == "seed") {
      config.seed = static_cast<std::uint64_t>(parse_int_value(kv));
    } else if (kv.key == "sector") {
      config.sector = static_cast<int>(parse_int_value(kv));
    } else if (kv.key == "budget") {
      config.budget = static_cast<int>(parse_int_value(kv));
      if (config.budget < 50) {
        throw ConfigError("line " + std::to_string(kv.line) +
                          ": budget must be >= 50");
      }
    } else if (kv.key == "restarts") {
      config.restarts = static_cast<int>(parse_int_value(kv));
    } else if (kv.key == "jobs") {
      config.jobs = static_cast<int>(parse_int_value(kv));
    } else if (kv.key == "svg") {
      config.svg = parse_bool_value(kv);
    } else if (kv.key == "initial_state") {
      if (!is_state_name(kv.value)) {
        throw ConfigError("line " + std::to_string(kv.line) +
                          ": unknown initial state '" + kv.value + "'");
      }
      config.initial_state_name = kv.value;
    } else if (kv.key == "output_dir") {
      config.output_dir = kv.value;
    } else if (kv.key == "sweep_param" || kv.key == "sweep_param2") {
      if (!is_double_param(kv.value)) {
        throw ConfigError("line " + std::to_string(kv.line) +
                          ": '" + kv.value + "' is not a sweepable parameter");
      }
      (kv.key == "sweep_param" ? config.sweep_param : config.sweep_param2) =
          kv.value;
    } else if (kv.key == "sweep_grid" || kv.key == "sweep_grid2" ||
               kv.key == "a_grid") {
      std::vector<double> grid;
      try {
        grid = parse_grid(kv.value);
      } catch (const std::exception& e) {
        throw ConfigError("line " + std::to_string(kv.line) + ": " + e.what());
      }
      if (kv.key == "sweep_grid") config.sweep_grid = std::move(grid);
      else if (kv.key == "sweep_grid2") config.sweep_grid2 = std::move(grid);
      else config.a_grid = std::move(grid);
    } else if (kv.key == "free") {
      config.free_params = split_list(kv.value);
      if (config.free_params.empty()) {
        throw ConfigError("line " + std::to_string(kv.line) +
                          ": free parameter list is empty");
      }
    } else {
      throw ConfigError("line " + std::to_string(kv.line) +
                        ": unknown key '" + kv.key + "'");
    }
  }

  // Frequencies not pinned explicitly follow the resonance conditions of the
  // (possibly overridden) omega, A and g.
  const double delta1 = config.params.A + config.params.g / std::sqrt(2.0);
  if (!config.explicit_keys.count("omega_bar")) {
    config.params.omega_bar = config.params.omega - delta1;
  }
  if (!config.explicit_keys.count("delta_c")) {
    config.params.delta_c = std::sqrt(2.0) * config.params.g - delta1;
  }

  if (config.command == Command::Sweep) {
    if (config.sweep_param.empty() || config.sweep_grid.empty()) {
      throw ConfigError(
          "sweep command requires sweep_param and a non-empty sweep_grid");
    }
    if (config.sweep_param2.empty() != config.sweep_grid2.empty()) {
      throw ConfigError(
          "two-parameter sweep requires both sweep_param2 and sweep_grid2");
    }
  }

  try {
    config.params.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("invalid parameter set: ") + e.what());
  }
  return config;
}

namespace {

std::string fmt17(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open '" + path.string() +
                             "' for writing");
  }
  out << text;
}

void parallel_for_index(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    jobs = hw > 0 ? static_cast<int>(hw) : 1;
  }
  jobs = std::min<int>(jobs, static_cast<int>(n));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

std::string time_axis_label(const ScenarioConfig& config) {
  std::string label = "t [1/g]";
  if (config.ghz) {
    const double ns = 1e9 / (2.0 * std::numbers::pi * *config.ghz);
    char buf[64];
    std::snprintf(buf, sizeof(buf), " (1/g = %.4g ns)", ns);
    label += buf;
  }
  return label;
}

void echo_params(std::ostringstream& out, const SystemParams& p) {
  out << "parameters (units of g):\n";
  for (const auto& name : param_names()) {
    out << "  " << name << " = " << fmt17(get_param(p, name)) << "\n";
  }
  out << "  d_t = " << p.d_t << "\n  d_c = " << p.d_c << "\n";
  out << "  delta1 = " << fmt17(p.delta1())
      << ", delta2 = " << fmt17(p.delta2())
      << ", Delta1 = " << fmt17(p.Delta1()) << "\n";
}

std::string timeseries_csv(const TimeSeries& ts) {
  std::ostringstream out;
  out << "t,P00,P11,PT,PS,nphot,trace_err,mineig\n";
  for (std::size_t i = 0; i < ts.times.size(); ++i) {
    out << fmt17(ts.times[i]);
    for (int q = 0; q < 4; ++q) out << "," << fmt17(ts.populations[i][q]);
    out << "," << fmt17(ts.photon_number[i]) << ","
        << fmt17(ts.trace_error[i]) << "," << fmt17(ts.min_eigenvalue[i])
        << "\n";
  }
  return out.str();
}

void timeseries_summary(std::ostringstream& out, const TimeSeries& ts) {
  double max_trace = 0.0, min_eig = 0.0;
  for (std::size_t i = 0; i < ts.times.size(); ++i) {
    max_trace = std::max(max_trace, ts.trace_error[i]);
    if (!std::isnan(ts.min_eigenvalue[i])) {
      min_eig = std::min(min_eig, ts.min_eigenvalue[i]);
    }
  }
  const auto& last = ts.populations.back();
  out << "samples = " << ts.times.size() << "\n";
  out << "final P00 = " << fmt17(last[0]) << ", P11 = " << fmt17(last[1])
      << ", PT = " << fmt17(last[2]) << ", PS = " << fmt17(last[3]) << "\n";
  out << "max |Tr rho - 1| = " << fmt17(max_trace) << "\n";
  out << "min eigenvalue observed = " << fmt17(min_eig) << "\n";
}

void populations_svg(const ScenarioConfig& config, const fs::path& dir,
                     const TimeSeries& ts, RunArtifacts& artifacts) {
  if (!config.svg) return;
  std::vector<SvgSeries> series(4);
  const char* labels[4] = {"P00", "P11", "PT", "PS"};
  for (int q = 0; q < 4; ++q) {
    series[q].label = labels[q];
    series[q].x = ts.times;
    series[q].y.reserve(ts.times.size());
    for (const auto& p : ts.populations) series[q].y.push_back(p[q]);
  }
  const fs::path path = dir / "populations.svg";
  write_line_chart(path.string(), "Populations", time_axis_label(config),
                   "population", series);
  artifacts.csv_paths.push_back(path.string());
}

IntegrateOptions integrate_options(const ScenarioConfig& config) {
  IntegrateOptions io;
  io.atol = config.atol;
  io.rtol = config.rtol;
  io.sample_interval = config.sample_interval;
  return io;
}

SteadyOptions steady_options(const ScenarioConfig& config) {
  SteadyOptions so;
  so.tol = config.steady_tol;
  so.t_max = config.t_end;
  so.integ = integrate_options(config);
  return so;
}

// Resonance-condition retune used by per-cell sweeps over A, g or omega;
// explicitly pinned frequencies stay put.
void retune(const ScenarioConfig& config, SystemParams& p) {
  const double delta1 = p.A + p.g / std::sqrt(2.0);
  if (!config.explicit_keys.count("omega_bar")) {
    p.omega_bar = p.omega - delta1;
  }
  if (!config.explicit_keys.count("delta_c")) {
    p.delta_c = std::sqrt(2.0) * p.g - delta1;
  }
}

}  // namespace

RunArtifacts run(const ScenarioConfig& config) {
  const fs::path dir = config.output_dir;
  fs::create_directories(dir);

  RunArtifacts artifacts;
  std::ostringstream summary;
  summary << "command = " << to_string(config.command) << "\n";
  summary << "seed = " << config.seed << "\n";
  echo_params(summary, config.params);

  auto add_csv = [&](const char* name, const std::string& content) {
    const fs::path path = dir / name;
    write_text(path, content);
    artifacts.csv_paths.push_back(path.string());
  };
  auto finalize = [&] {
    artifacts.summary = summary.str();
    write_text(dir / "summary.txt", artifacts.summary);
  };

  try {
    switch (config.command) {
      case Command::Evolve: {
        const ModelSpec model = compile(config.params);
        const Matrix rho0 = initial_state(config.initial_state_name,
                                          config.params.d_t, config.params.d_c);
        const TimeSeries ts =
            integrate(model, rho0, config.t_end, integrate_options(config));
        add_csv("timeseries.csv", timeseries_csv(ts));
        timeseries_summary(summary, ts);
        populations_svg(config, dir, ts, artifacts);
        break;
      }
      case Command::Steady: {
        const ModelSpec model = compile(config.params);
        const Matrix rho0 = initial_state(config.initial_state_name,
                                          config.params.d_t, config.params.d_c);
        TimeSeries ts;
        const SteadyReport rep =
            steady_state(model, rho0, steady_options(config), &ts);
        add_csv("timeseries.csv", timeseries_csv(ts));
        summary << "fidelity = " << fmt17(rep.fidelity) << "\n";
        summary << "converged = " << (rep.converged ? 1 : 0) << "\n";
        summary << "convergence_time = " << fmt17(rep.convergence_time) << "\n";
        summary << "window_drift = " << fmt17(rep.window_drift) << "\n";
        summary << "threshold_time = " << fmt17(rep.threshold_time) << "\n";
        timeseries_summary(summary, ts);
        populations_svg(config, dir, ts, artifacts);
        break;
      }
      case Command::Rates: {
        const EffectiveRates r = effective_rates(config.params);
        std::ostringstream csv;
        csv << "omega_eff,g_eff_S0_re,g_eff_S0_im,g_eff_T1_re,g_eff_T1_im,"
               "kappa_plus,kappa_minus,kappa_reshuffle\n";
        csv << fmt17(r.omega_eff) << "," << fmt17(r.g_eff_S0.real()) << ","
            << fmt17(r.g_eff_S0.imag()) << "," << fmt17(r.g_eff_T1.real())
            << "," << fmt17(r.g_eff_T1.imag()) << "," << fmt17(r.kappa_plus)
            << "," << fmt17(r.kappa_minus) << "," << fmt17(r.kappa_reshuffle)
            << "\n";
        add_csv("rates.csv", csv.str());
        summary << "omega_eff = " << fmt17(r.omega_eff) << "\n";
        summary << "kappa_plus = " << fmt17(r.kappa_plus) << "\n";
        summary << "kappa_minus = " << fmt17(r.kappa_minus) << "\n";
        summary << "kappa_reshuffle = " << fmt17(r.kappa_reshuffle) << "\n";
        break;
      }
      case Command::Benchmarks: {
        const Benchmarks b = benchmarks(config.params.gamma, config.params.g);
        std::ostringstream csv;
        csv << "kappa_opt,error_opt,tau,steady_fidelity\n";
        csv << fmt17(b.kappa_opt) << "," << fmt17(b.error_opt) << ","
            << fmt17(b.tau) << "," << fmt17(b.steady_fidelity) << "\n";
        add_csv("rates.csv", csv.str());
        summary << "kappa_opt = " << fmt17(b.kappa_opt) << "\n";
        summary << "error_opt = " << fmt17(b.error_opt) << "\n";
        summary << "tau = " << fmt17(b.tau) << "\n";
        break;
      }
      case Command::Spectrum: {
        std::vector<std::vector<double>> rows;
        for (const double a : config.a_grid) {
          SystemParams p = config.params;
          p.A = a;
          retune(config, p);
          rows.push_back(dressed_spectrum(p, config.sector));
        }
        std::ostringstream csv;
        csv << "A";
        for (std::size_t i = 0; i < rows.front().size(); ++i) {
          csv << ",eig" << i + 1;
        }
        csv << "\n";
        for (std::size_t r = 0; r < rows.size(); ++r) {
          csv << fmt17(config.a_grid[r]);
          for (const double e : rows[r]) csv << "," << fmt17(e);
          csv << "\n";
        }
        add_csv("spectrum.csv", csv.str());
        summary << "sector = " << config.sector << "\n";
        summary << "A values = " << config.a_grid.size() << ", eigenvalues = "
                << rows.front().size() << "\n";
        if (config.svg) {
          std::vector<SvgSeries> series(rows.front().size());
          for (std::size_t b = 0; b < series.size(); ++b) {
            series[b].label = "eig" + std::to_string(b + 1);
            series[b].x = config.a_grid;
            for (const auto& row : rows) series[b].y.push_back(row[b]);
          }
          const fs::path path = dir / "spectrum.svg";
          write_line_chart(path.string(), "Dressed-state energies", "A [g]",
                           "energy [g]", series);
          artifacts.csv_paths.push_back(path.string());
        }
        break;
      }
      case Command::Optimize: {
        OptimizeOptions oo;
        oo.budget = config.budget;
        oo.t_target = config.t_target;
        oo.restarts = config.restarts;
        oo.seed = config.seed;
        oo.jobs = config.jobs;
        oo.steady = steady_options(config);
        oo.steady.integ.track_eigenvalues = false;
        oo.initial_state_name = config.initial_state_name;
        const OptResult res =
            optimize_frequencies(config.params, config.free_params, oo);
        std::ostringstream csv;
        csv << "evaluation";
        for (const auto& name : config.free_params) csv << "," << name;
        csv << ",fidelity\n";
        for (std::size_t i = 0; i < res.trace.size(); ++i) {
          csv << i;
          for (const double v : res.trace[i].first) csv << "," << fmt17(v);
          csv << "," << fmt17(res.trace[i].second) << "\n";
        }
        add_csv("optimize.csv", csv.str());
        summary << "evaluations = " << res.evaluations << "\n";
        summary << "best_fidelity = " << fmt17(res.best_fidelity) << "\n";
        for (const auto& name : config.free_params) {
          summary << "best " << name << " = "
                  << fmt17(get_param(res.best_params, name)) << "\n";
        }
        if (config.svg) {
          SvgSeries s;
          s.label = "fidelity";
          for (std::size_t i = 0; i < res.trace.size(); ++i) {
            s.x.push_back(static_cast<double>(i));
            s.y.push_back(res.trace[i].second);
          }
          const fs::path path = dir / "optimize.svg";
          write_line_chart(path.string(), "Optimization trace", "evaluation",
                           "fidelity", {s});
          artifacts.csv_paths.push_back(path.string());
        }
        break;
      }
      case Command::Sweep: {
        const bool two = !config.sweep_param2.empty();
        const std::size_t n1 = config.sweep_grid.size();
        const std::size_t n2 = two ? config.sweep_grid2.size() : 1;
        const bool needs_retune =
            config.sweep_param == "A" || config.sweep_param == "g" ||
            config.sweep_param == "omega" || config.sweep_param2 == "A" ||
            config.sweep_param2 == "g" || config.sweep_param2 == "omega";

        struct Cell {
          double fidelity = std::numeric_limits<double>::quiet_NaN();
          bool converged = false;
          double threshold_time = -1.0;
        };
        std::vector<Cell> cells(n1 * n2);
        const SteadyOptions so = steady_options(config);
        parallel_for_index(cells.size(), config.jobs, [&](std::size_t i) {
          const std::size_t i1 = i / n2;
          const std::size_t i2 = i % n2;
          SystemParams p = config.params;
          set_param(p, config.sweep_param, config.sweep_grid[i1]);
          if (two) {
            set_param(p, config.sweep_param2, config.sweep_grid2[i2]);
          }
          if (needs_retune) retune(config, p);
          try {
            const ModelSpec model = compile(p);
            const Matrix rho0 =
                initial_state(config.initial_state_name, p.d_t, p.d_c);
            const SteadyReport rep = steady_state(model, rho0, so);
            cells[i] = {rep.fidelity, rep.converged, rep.threshold_time};
          } catch (const NumericalFailure&) {
          } catch (const SingularityError&) {
          }
        });

        std::ostringstream csv;
        csv << config.sweep_param;
        if (two) csv << "," << config.sweep_param2;
        csv << ",fidelity,converged\n";
        for (std::size_t i = 0; i < cells.size(); ++i) {
          csv << fmt17(config.sweep_grid[i / n2]);
          if (two) csv << "," << fmt17(config.sweep_grid2[i % n2]);
          csv << "," << fmt17(cells[i].fidelity) << ","
              << (cells[i].converged ? 1 : 0) << "\n";
        }
        add_csv("sweep.csv", csv.str());

        if (two) {
          // Preparation-time grid: first window whose averaged P_S crosses
          // the threshold, capped at t_end.
          std::ostringstream pt;
          pt << config.sweep_param << "," << config.sweep_param2
             << ",time_to_threshold\n";
          for (std::size_t i = 0; i < cells.size(); ++i) {
            const double t = cells[i].threshold_time >= 0.0
                                 ? cells[i].threshold_time
                                 : config.t_end;
            pt << fmt17(config.sweep_grid[i / n2]) << ","
               << fmt17(config.sweep_grid2[i % n2]) << "," << fmt17(t) << "\n";
          }
          add_csv("preptime.csv", pt.str());
        }

        std::size_t failed = 0;
        for (const auto& c : cells) failed += std::isnan(c.fidelity) ? 1 : 0;
        summary << "cells = " << cells.size() << ", failed = " << failed
                << "\n";
        if (!two && config.svg) {
          SvgSeries s;
          s.label = "fidelity";
          s.x = config.sweep_grid;
          for (const auto& c : cells) s.y.push_back(c.fidelity);
          const fs::path path = dir / "sweep.svg";
          write_line_chart(path.string(), "Fidelity sweep", config.sweep_param,
                           "fidelity", {s});
          artifacts.csv_paths.push_back(path.string());
        }
        break;
      }
    }
  } catch (const NumericalFailure& e) {
    summary << "FAILED: " << e.what() << "\n";
    finalize();
    throw;
  }

  finalize();
  return artifacts;
}

}  // namespace singlet

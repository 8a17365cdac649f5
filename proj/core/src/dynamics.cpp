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

#include "singlet/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include <Eigen/Eigenvalues>

namespace singlet {

namespace {

constexpr Complex kMinusI{0.0, -1.0};

void check_initial_state(const ModelSpec& model, const Matrix& rho0) {
  if (rho0.rows() != rho0.cols() || rho0.rows() != model.dim()) {
    throw InvalidDimensionError("integrate: rho0 dim " +
                                std::to_string(rho0.rows()) +
                                " does not match model dim " +
                                std::to_string(model.dim()));
  }
  if ((rho0 - rho0.adjoint()).cwiseAbs().maxCoeff() > 1e-9) {
    throw std::invalid_argument("integrate: rho0 is not Hermitian");
  }
  if (std::abs(rho0.trace().real() - 1.0) > 1e-9 ||
      std::abs(rho0.trace().imag()) > 1e-9) {
    throw std::invalid_argument("integrate: rho0 does not have unit trace");
  }
}

// Nonzero entries of an operator, precomputed once per run. The model
// operators (ladders, projectors, couplings) are a few percent dense, so the
// integrator applies them entry-wise instead of through full GEMMs. Storage
// and all public interfaces stay dense; this is only the hot loop.
struct TripletOp {
  struct Entry {
    int row;
    int col;
    Complex value;
  };
  std::vector<Entry> entries;

  static TripletOp from(const Matrix& m) {
    TripletOp op;
    for (int j = 0; j < m.cols(); ++j) {
      for (int i = 0; i < m.rows(); ++i) {
        if (m(i, j) != Complex{0.0, 0.0}) {
          op.entries.push_back({i, j, m(i, j)});
        }
      }
    }
    return op;
  }

  // out += alpha * M * x
  void add_left(Complex alpha, const Matrix& x, Matrix& out) const {
    for (const auto& e : entries) {
      out.row(e.row) += (alpha * e.value) * x.row(e.col);
    }
  }

  // out += alpha * x * M
  void add_right(Complex alpha, const Matrix& x, Matrix& out) const {
    for (const auto& e : entries) {
      out.col(e.col) += (alpha * e.value) * x.col(e.row);
    }
  }

  // out += M x M^dag, using t_buf for the half product.
  void add_sandwich(const Matrix& x, Matrix& t_buf, Matrix& out) const {
    t_buf.setZero();
    add_left(Complex{1.0, 0.0}, x, t_buf);
    for (const auto& e : entries) {
      out.col(e.row) += std::conj(e.value) * t_buf.col(e.col);
    }
  }
};

// Cached projector expectations for the sampled observables.
struct ObservableSet {
  std::array<Matrix, 4> projectors;  // 00, 11, T, S (x) I_cav
  Matrix photon_number;

  ObservableSet(int d_t, int d_c) {
    const auto basis = qop::bell_basis(d_t);
    const Matrix id_c = qop::identity(d_c);
    int i = 0;
    for (const char* name : {"00", "11", "T", "S"}) {
      const Vector& v = basis.at(name);
      projectors[i++] = qop::kron(Matrix(v * v.adjoint()), id_c);
    }
    photon_number =
        qop::embed(qop::number(d_c), 2, std::vector<int>{d_t, d_t, d_c});
  }

  std::array<double, 4> pops(const Matrix& rho) const {
    std::array<double, 4> out{};
    for (int i = 0; i < 4; ++i) {
      out[i] = qop::expect(projectors[i], rho).real();
    }
    return out;
  }
};

// Dormand-Prince 5(4) with FSAL, max-norm mixed error control, step size
// capped at one tenth of the drive period. Re-Hermitizes after every
// accepted step (the exact flow preserves Hermiticity; the projection only
// removes roundoff).
class Propagator {
 public:
  Propagator(const ModelSpec& model, Matrix rho0, const IntegrateOptions& opt)
      : opt_(opt), rho_(std::move(rho0)), t_(0.0) {
    const int d = model.dim();
    Matrix h_nh_static = model.h_static;
    Matrix sum_ldag_l = Matrix::Zero(d, d);
    for (const Matrix& l : model.lindblads) {
      if (l.cwiseAbs().maxCoeff() <= 1e-15) continue;
      lindblads_.push_back(TripletOp::from(l));
      sum_ldag_l.noalias() += l.adjoint() * l;
    }
    h_nh_static += Complex(0.0, -0.5) * sum_ldag_l;
    static_left_ = TripletOp::from(h_nh_static);
    static_right_ = TripletOp::from(Matrix(h_nh_static.adjoint()));

    // Group drive terms by frequency; each group contributes
    // e^{i f t} W + e^{-i f t} W^dag, which is Hermitian.
    struct Group {
      double frequency;
      Matrix op;
    };
    std::vector<Group> groups;
    for (const auto& term : model.drive_terms) {
      auto it = std::find_if(groups.begin(), groups.end(), [&](auto& g) {
        return g.frequency == term.frequency;
      });
      if (it == groups.end()) {
        groups.push_back({term.frequency, Matrix(term.amplitude * term.op)});
      } else {
        it->op += term.amplitude * term.op;
      }
    }
    for (const auto& g : groups) {
      drives_.push_back({g.frequency, TripletOp::from(g.op),
                         TripletOp::from(Matrix(g.op.adjoint()))});
    }

    max_step_ = std::numeric_limits<double>::infinity();
    if (!drives_.empty()) max_step_ = model.drive_period / 10.0;
    if (opt_.max_step > 0.0) max_step_ = std::min(max_step_, opt_.max_step);

    h_ = std::min(opt_.initial_step, max_step_);
    tmp_ = Matrix(d, d);
    for (auto& k : k_) k = Matrix(d, d);
    y_stage_ = Matrix(d, d);
    y_new_ = Matrix(d, d);
    err_mat_ = Matrix(d, d);
  }

  double t() const { return t_; }
  const Matrix& rho() const { return rho_; }

  void advance_to(double t_stop) {
    while (t_ < t_stop - 1e-12 * std::max(1.0, std::abs(t_stop))) {
      double h = std::min(h_, t_stop - t_);
      if (h < 1e-13 * std::max(1.0, std::abs(t_))) {
        throw NumericalFailure("integrate: step size underflow at t = " +
                               std::to_string(t_));
      }
      if (!k1_valid_) {
        rhs(t_, rho_, k_[0]);
        k1_valid_ = true;
      }
      if (step(h)) {
        t_ += h_accepted_;
        rho_ = 0.5 * (y_new_ + y_new_.adjoint().eval());
        k_[0].swap(k_[6]);  // FSAL
        const Complex tr = rho_.trace();
        const double trace_err = std::abs(tr - Complex(1.0, 0.0));
        if (trace_err > opt_.trace_tol) {
          throw NumericalFailure(
              "integrate: trace drift " + std::to_string(trace_err) +
              " exceeds tolerance at t = " + std::to_string(t_));
        }
      }
    }
  }

 private:
  // drho = -i (H_nh y - y H_nh^dag) + sum_k L_k y L_k^dag, where
  // H_nh = H(t) - i/2 sum_k L_k^dag L_k and H(t) enters through its
  // frequency groups: H_d(t) = sum_g (e^{i f_g t} W_g + e^{-i f_g t} W_g^dag).
  void rhs(double t, const Matrix& y, Matrix& out) {
    out.setZero();
    static_left_.add_left(kMinusI, y, out);
    static_right_.add_right(-kMinusI, y, out);
    for (const auto& g : drives_) {
      const Complex c = std::exp(Complex(0.0, g.frequency * t));
      // -i c (W y - y W) - i conj(c) (W^dag y - y W^dag)
      g.op.add_left(kMinusI * c, y, out);
      g.op.add_right(-kMinusI * c, y, out);
      g.op_adj.add_left(kMinusI * std::conj(c), y, out);
      g.op_adj.add_right(-kMinusI * std::conj(c), y, out);
    }
    for (const auto& l : lindblads_) {
      l.add_sandwich(y, tmp_, out);
    }
  }

  // One attempted step of size h. Returns true when accepted, with the new
  // state left in y_new_ and the actually used size in h_accepted_.
  bool step(double h) {
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                            a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113,
                            b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                            b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695,
                            e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                            e6 = 22.0 / 525, e7 = -1.0 / 40;
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                            c5 = 8.0 / 9;

    y_stage_ = rho_ + h * a21 * k_[0];
    rhs(t_ + c2 * h, y_stage_, k_[1]);
    y_stage_ = rho_ + h * (a31 * k_[0] + a32 * k_[1]);
    rhs(t_ + c3 * h, y_stage_, k_[2]);
    y_stage_ = rho_ + h * (a41 * k_[0] + a42 * k_[1] + a43 * k_[2]);
    rhs(t_ + c4 * h, y_stage_, k_[3]);
    y_stage_ =
        rho_ + h * (a51 * k_[0] + a52 * k_[1] + a53 * k_[2] + a54 * k_[3]);
    rhs(t_ + c5 * h, y_stage_, k_[4]);
    y_stage_ = rho_ + h * (a61 * k_[0] + a62 * k_[1] + a63 * k_[2] +
                           a64 * k_[3] + a65 * k_[4]);
    rhs(t_ + h, y_stage_, k_[5]);
    y_new_ = rho_ + h * (b1 * k_[0] + b3 * k_[2] + b4 * k_[3] + b5 * k_[4] +
                         b6 * k_[5]);
    rhs(t_ + h, y_new_, k_[6]);
    err_mat_ = h * (e1 * k_[0] + e3 * k_[2] + e4 * k_[3] + e5 * k_[4] +
                    e6 * k_[5] + e7 * k_[6]);

    // Scaled RMS norm over entries, per-entry mixed tolerance.
    const double err = std::sqrt(
        (err_mat_.cwiseAbs().array() /
         (opt_.atol + opt_.rtol * y_new_.cwiseAbs().array()))
            .square()
            .mean());

    const double factor =
        std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
    if (err <= 1.0) {
      h_accepted_ = h;
      h_ = std::min(h * factor, max_step_);
      return true;
    }
    h_ = h * factor;
    return false;
  }

  struct DriveGroup {
    double frequency;
    TripletOp op;
    TripletOp op_adj;
  };

  IntegrateOptions opt_;
  Matrix rho_;
  double t_;
  double h_ = 0.0;
  double h_accepted_ = 0.0;
  double max_step_ = 0.0;
  bool k1_valid_ = false;

  TripletOp static_left_, static_right_;
  std::vector<DriveGroup> drives_;
  std::vector<TripletOp> lindblads_;

  Matrix tmp_, y_stage_, y_new_, err_mat_;
  std::array<Matrix, 7> k_;
};

double min_eigenvalue(const Matrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(qop::hermitize(rho),
                                           Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace

Matrix lindblad_rhs(const ModelSpec& model, const Matrix& rho, double t) {
  if (rho.rows() != rho.cols() || rho.rows() != model.dim()) {
    throw InvalidDimensionError("lindblad_rhs: rho dim does not match model");
  }
  const Matrix h = model.hamiltonian(t);
  Matrix out = Complex(0.0, 1.0) * (rho * h - h * rho);
  for (const Matrix& l : model.lindblads) {
    const Matrix ldag_l = l.adjoint() * l;
    out += l * rho * l.adjoint();
    out -= 0.5 * (ldag_l * rho + rho * ldag_l);
  }
  return out;
}

Matrix build_liouvillian(const ModelSpec& model, double t) {
  const int d = model.dim();
  const Matrix id = qop::identity(d);
  const Matrix h = model.hamiltonian(t);
  Matrix liou = kMinusI * (qop::kron(id, h) - qop::kron(h.transpose(), id));
  for (const Matrix& l : model.lindblads) {
    const Matrix ldag_l = l.adjoint() * l;
    liou += qop::kron(l.conjugate(), l);
    liou -= 0.5 * qop::kron(id, ldag_l);
    liou -= 0.5 * qop::kron(ldag_l.transpose(), id);
  }
  return liou;
}

std::array<double, 4> populations(const Matrix& rho, int d_t, int d_c) {
  if (rho.rows() != rho.cols() || rho.rows() != d_t * d_t * d_c) {
    throw InvalidDimensionError("populations: rho dim does not match d_t/d_c");
  }
  return ObservableSet(d_t, d_c).pops(rho);
}

TimeSeries integrate(const ModelSpec& model, const Matrix& rho0, double t_end,
                     const IntegrateOptions& options, Matrix* rho_final) {
  if (!(t_end > 0.0)) {
    throw std::invalid_argument("integrate: t_end must be positive");
  }
  check_initial_state(model, rho0);

  const ObservableSet obs(model.dims[0], model.dims[2]);
  Propagator prop(model, rho0, options);
  TimeSeries series;

  auto record = [&](double t) {
    const Matrix& rho = prop.rho();
    series.times.push_back(t);
    series.populations.push_back(obs.pops(rho));
    series.photon_number.push_back(qop::expect(obs.photon_number, rho).real());
    series.trace_error.push_back(std::abs(rho.trace() - Complex(1.0, 0.0)));
    double eig = std::numeric_limits<double>::quiet_NaN();
    if (options.track_eigenvalues) {
      eig = min_eigenvalue(rho);
      if (eig < options.positivity_floor) {
        throw PositivityFailure(
            "integrate: min eigenvalue " + std::to_string(eig) +
            " below floor at t = " + std::to_string(t));
      }
    }
    series.min_eigenvalue.push_back(eig);
  };

  record(0.0);
  const double dt =
      options.sample_interval > 0.0 ? options.sample_interval : t_end;
  double t_next = dt;
  while (t_next < t_end - 1e-9 * t_end) {
    prop.advance_to(t_next);
    record(t_next);
    t_next += dt;
  }
  prop.advance_to(t_end);
  record(t_end);
  if (rho_final) *rho_final = prop.rho();
  return series;
}

SteadyReport steady_state(const ModelSpec& model, const Matrix& rho0,
                          const SteadyOptions& options, TimeSeries* series) {
  check_initial_state(model, rho0);
  const double window = model.drive_period;
  const int n_sub = std::max(4, options.window_samples);

  const ObservableSet obs(model.dims[0], model.dims[2]);
  Propagator prop(model, rho0, options.integ);
  SteadyReport report;

  auto observe = [&](double t) {
    const Matrix& rho = prop.rho();
    const auto pops = obs.pops(rho);
    if (series) {
      series->times.push_back(t);
      series->populations.push_back(pops);
      series->photon_number.push_back(
          qop::expect(obs.photon_number, rho).real());
      series->trace_error.push_back(std::abs(rho.trace() - Complex(1.0, 0.0)));
      series->min_eigenvalue.push_back(
          options.integ.track_eigenvalues
              ? min_eigenvalue(rho)
              : std::numeric_limits<double>::quiet_NaN());
    }
    return pops;
  };

  std::array<double, 4> edge = observe(0.0);  // shared window endpoint
  std::optional<std::array<double, 4>> prev_avg;

  int k = 0;
  while ((k + 1) * window <= options.t_max * (1.0 + 1e-12)) {
    std::array<double, 4> acc{};
    for (int i = 0; i < 4; ++i) acc[i] = 0.5 * edge[i];
    for (int i = 1; i < n_sub; ++i) {
      const double t = k * window + i * window / n_sub;
      prop.advance_to(t);
      const auto p = observe(t);
      for (int q = 0; q < 4; ++q) acc[q] += p[q];
    }
    const double t_edge = (k + 1) * window;
    prop.advance_to(t_edge);
    edge = observe(t_edge);
    for (int q = 0; q < 4; ++q) {
      acc[q] = (acc[q] + 0.5 * edge[q]) / n_sub;
    }

    report.fidelity = acc[3];
    report.window_populations = acc;
    if (report.threshold_time < 0.0 && acc[3] >= options.threshold) {
      report.threshold_time = t_edge;
    }
    if (prev_avg) {
      double drift = 0.0;
      for (int q = 0; q < 4; ++q) {
        drift = std::max(drift, std::abs(acc[q] - (*prev_avg)[q]));
      }
      report.window_drift = drift;
      if (drift < options.tol) {
        report.converged = true;
        report.convergence_time = k * window;
        return report;
      }
    }
    prev_avg = acc;
    ++k;
  }
  report.converged = false;
  report.convergence_time = k * window;
  return report;
}

}  // namespace singlet

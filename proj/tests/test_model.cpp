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

#include "singlet/dynamics.hpp"
#include "singlet/model.hpp"

using namespace singlet;

namespace {

// index of |k1, k2, n> in the product basis
int idx(const SystemParams& p, int k1, int k2, int n) {
  return (k1 * p.d_t + k2) * p.d_c + n;
}

// transmon-exchange permutation |k1,k2,n> -> |k2,k1,n>
Matrix exchange_permutation(const SystemParams& p) {
  const int dim = p.d_t * p.d_t * p.d_c;
  Matrix perm = Matrix::Zero(dim, dim);
  for (int k1 = 0; k1 < p.d_t; ++k1) {
    for (int k2 = 0; k2 < p.d_t; ++k2) {
      for (int n = 0; n < p.d_c; ++n) {
        perm(idx(p, k2, k1, n), idx(p, k1, k2, n)) = 1.0;
      }
    }
  }
  return perm;
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("figure3 preset pins the published parameter values") {
  const SystemParams p = figure3_preset(1.0);
  CHECK(p.kappa == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(p.gamma == doctest::Approx(1.0 / 5400.0).epsilon(1e-15));
  CHECK(p.Omega1 == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(p.Omega2 == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(p.omega == 20.0);
  CHECK(p.d_t == 4);
  CHECK(p.d_c == 4);
  CHECK(p.nbar == 0.0);
  CHECK(p.gamma_phi == 0.0);

  // delta2 = sqrt(2) g  <=>  omega_bar = omega - A - sqrt(2)/2
  CHECK(p.omega_bar ==
        doctest::Approx(20.0 - 1.0 - std::sqrt(2.0) / 2.0).epsilon(1e-14));
  CHECK(p.delta2() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(p.delta_c ==
        doctest::Approx(p.delta2() - p.delta1()).epsilon(1e-12));

  CHECK(figure3_preset(4.75).A == 4.75);
  CHECK_THROWS_AS(figure3_preset(0.0), ConfigError);
}

TEST_CASE("derived detunings are recomputed, never stored") {
  SystemParams p = figure3_preset(2.0);
  CHECK(p.delta1() == doctest::Approx(p.omega - p.omega_bar).epsilon(1e-15));
  CHECK(p.delta2() ==
        doctest::Approx(2.0 * (p.omega - p.omega_bar) - 2.0 * p.A)
            .epsilon(1e-15));
  CHECK(p.Delta1() == doctest::Approx(-(p.delta1() + p.epsilon)).epsilon(1e-15));
  CHECK(p.Delta2() == -p.Delta1());
  p.omega_bar += 0.25;
  CHECK(p.delta1() == doctest::Approx(p.omega - p.omega_bar).epsilon(1e-15));
}

TEST_CASE("validate rejects bad parameters") {
  SystemParams p = figure3_preset(1.0);
  p.kappa = -1.0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = figure3_preset(1.0);
  p.d_t = 5;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = figure3_preset(1.0);
  p.d_c = 1;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = figure3_preset(1.0);
  p.omega_bar = std::nan("");
  CHECK_THROWS_AS(p.validate(), ConfigError);
}

TEST_CASE("param name table round-trips every double field") {
  SystemParams p = figure3_preset(1.0);
  for (const auto& name : param_names()) {
    const double v = get_param(p, name);
    set_param(p, name, v + 0.5);
    CHECK(get_param(p, name) == v + 0.5);
    set_param(p, name, v);
  }
  CHECK_THROWS_AS(get_param(p, "no_such_param"), ConfigError);
}

TEST_CASE("free Hamiltonian is diagonal with the Duffing ladder energies") {
  SystemParams p = figure3_preset(1.0);
  p.g = 0.0;
  p.Omega1 = 0.0;
  p.Omega2 = 0.0;
  const ModelSpec m = compile(p);
  CHECK(m.drive_terms.empty());

  Matrix offdiag = m.h_static;
  offdiag.diagonal().setZero();
  CHECK(offdiag.cwiseAbs().maxCoeff() <= 1e-14);

  // |11> (x) |1>: 2 delta1 + delta_c
  const double expected = 2.0 * p.delta1() + p.delta_c;
  CHECK(m.h_static(idx(p, 1, 1, 1), idx(p, 1, 1, 1)).real() ==
        doctest::Approx(expected).epsilon(1e-13));

  // levels follow delta_k = k delta1 - A k (k-1): |3,2,0> sits at
  // (3 delta1 - 6A) + (2 delta1 - 2A)
  const double e32 = 5.0 * p.delta1() - 8.0 * p.A;
  CHECK(m.h_static(idx(p, 3, 2, 0), idx(p, 3, 2, 0)).real() ==
        doctest::Approx(e32).epsilon(1e-12));
}

TEST_CASE("singlet (x) vacuum is a dark state of the cavity coupling") {
  const SystemParams p = figure3_preset(1.0);
  SystemParams p_free = p;
  p_free.g = 0.0;
  const Matrix h_cav = compile(p).h_static - compile(p_free).h_static;

  const auto basis = qop::bell_basis(p.d_t);
  const Vector dark = qop::kron(basis.at("S"), qop::ket(p.d_c, 0));
  CHECK((h_cav * dark).norm() <= 1e-12);

  // the triplet is not dark
  const Vector bright = qop::kron(basis.at("T"), qop::ket(p.d_c, 0));
  CHECK((h_cav * bright).norm() > 0.1);
}

TEST_CASE("drive coefficients at t = 0 follow the opposite-phase convention") {
  SystemParams p = figure3_preset(1.0);
  p.theta = 0.0;
  p.delta_Omega = 1.0;
  const ModelSpec m = compile(p);
  const Matrix h_d = m.drive_hamiltonian(0.0);

  const Complex c1 = h_d(idx(p, 1, 0, 0), idx(p, 0, 0, 0));
  const Complex c2 = h_d(idx(p, 0, 1, 0), idx(p, 0, 0, 0));
  CHECK(std::abs(c1 - Complex((p.Omega1 - p.Omega2) / 2.0, 0.0)) <= 1e-14);
  CHECK(std::abs(c2 - Complex((p.Omega1 + p.Omega2) / 2.0, 0.0)) <= 1e-14);

  // upper rung carries the sqrt(2) matrix element
  const Complex c_up = h_d(idx(p, 2, 0, 0), idx(p, 1, 0, 0));
  CHECK(std::abs(c_up - std::sqrt(2.0) * c1) <= 1e-14);
}

TEST_CASE("assembled Hamiltonian is Hermitian at any time") {
  SystemParams p = figure3_preset(1.3);
  p.theta = 0.31;
  p.delta_Omega = 1.07;
  p.delta_omega = 0.02;
  p.delta_A = 0.95;
  p.delta_g = 1.04;
  const ModelSpec m = compile(p);
  for (double t : {0.0, 0.37, 1.94, 13.7}) {
    const Matrix h = m.hamiltonian(t);
    CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("zero rates give an empty effective dissipator") {
  SystemParams p = figure3_preset(1.0);
  p.gamma = 0.0;
  p.gamma_phi = 0.0;
  p.kappa = 0.0;
  const ModelSpec m = compile(p);
  double total = 0.0;
  for (const auto& l : m.lindblads) total += l.cwiseAbs().maxCoeff();
  CHECK(total <= 1e-15);
}

TEST_CASE("lindblad set matches the configured rates") {
  SystemParams p = figure3_preset(1.0);
  p.gamma_phi = 0.01;
  p.nbar = 0.05;
  const ModelSpec m = compile(p);
  // per transmon: 3 decay + 1 dephasing; resonator: loss + thermal pump
  CHECK(m.lindblads.size() == 10);

  // max matrix elements: sqrt(k gamma) on decay, sqrt(kappa(nbar+1)) sqrt(n)
  // on the loss ladder
  double max_elem = 0.0;
  for (const auto& l : m.lindblads) {
    max_elem = std::max(max_elem, l.cwiseAbs().maxCoeff());
  }
  const double expected =
      std::sqrt(p.kappa * (p.nbar + 1.0)) * std::sqrt(3.0);
  CHECK(max_elem == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("model is exchange symmetric up to the Omega2 sign") {
  SystemParams p = figure3_preset(1.0);
  const ModelSpec m = compile(p);
  SystemParams p_flip = p;
  p_flip.Omega2 = -p.Omega2;
  const ModelSpec m_flip = compile(p_flip);

  const Matrix perm = exchange_permutation(p);
  for (double t : {0.0, 0.41, 2.13}) {
    const Matrix lhs = perm * m.hamiltonian(t) * perm;
    CHECK((lhs - m_flip.hamiltonian(t)).cwiseAbs().maxCoeff() <= 1e-12);
  }

  // full generator: exchange-conjugated rhs equals rhs of the flipped model
  const int dim = m.dim();
  Matrix rho = Matrix::Zero(dim, dim);
  const auto basis = qop::bell_basis(p.d_t);
  const Vector v =
      qop::kron(Vector(basis.at("T") + basis.at("00")).normalized(),
                qop::ket(p.d_c, 0));
  rho = v * v.adjoint();
  const Matrix lhs = perm * lindblad_rhs(m, Matrix(perm * rho * perm), 0.7) * perm;
  const Matrix rhs = lindblad_rhs(m_flip, rho, 0.7);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("drive is periodic with period 2 pi / |Delta1|") {
  const SystemParams p = figure3_preset(1.0);
  const ModelSpec m = compile(p);
  const double period = p.drive_period();
  CHECK(m.drive_period == doctest::Approx(period).epsilon(1e-15));
  for (double t : {0.0, 0.83}) {
    const Matrix a = m.drive_hamiltonian(t);
    const Matrix b = m.drive_hamiltonian(t + period);
    CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("initial states") {
  const Matrix mix = initial_state("mixture4", 4, 4);
  CHECK(std::abs(mix.trace() - Complex(1.0, 0.0)) <= 1e-14);
  const auto pops = populations(mix, 4, 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(pops[i] == doctest::Approx(0.25).epsilon(1e-12));
  }

  const Matrix ground = initial_state("ground", 3, 2);
  CHECK(ground(0, 0).real() == doctest::Approx(1.0));

  CHECK_THROWS_AS(initial_state("bogus", 4, 4), ConfigError);
}

}  // TEST_SUITE

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

// Operator algebra and state construction for tensor products of two
// multi-level transmons and a resonator mode. Dense complex matrices
// throughout; the largest space used anywhere is 4*4*4 = 64.
//
// Tensor ordering is fixed project-wide as (transmon 1, transmon 2,
// resonator). Every module builds on this convention.

#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "singlet/errors.hpp"

namespace singlet {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

namespace qop {

inline constexpr Complex kImag{0.0, 1.0};

inline Matrix identity(int dim) { return Matrix::Identity(dim, dim); }

// a|n> = sqrt(n)|n-1>; also the transmon lowering operator b with the
// harmonic sqrt(k+1) matrix elements.
inline Matrix destroy(int dim) {
  if (dim < 2) {
    throw InvalidDimensionError("destroy: dim must be >= 2, got " +
                                std::to_string(dim));
  }
  Matrix a = Matrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) {
    a(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  return a;
}

inline Matrix create(int dim) { return destroy(dim).adjoint(); }

// Diagonal number operator 0,1,...,dim-1.
inline Matrix number(int dim) {
  if (dim < 1) {
    throw InvalidDimensionError("number: dim must be >= 1");
  }
  Matrix n = Matrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) n(k, k) = static_cast<double>(k);
  return n;
}

// |i><j| in a dim-dimensional space.
inline Matrix basis_op(int dim, int i, int j) {
  if (i < 0 || j < 0 || i >= dim || j >= dim) {
    throw InvalidDimensionError("basis_op: index out of range");
  }
  Matrix m = Matrix::Zero(dim, dim);
  m(i, j) = 1.0;
  return m;
}

inline Vector ket(int dim, int i) {
  if (i < 0 || i >= dim) {
    throw InvalidDimensionError("ket: index out of range");
  }
  Vector v = Vector::Zero(dim);
  v(i) = 1.0;
  return v;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

// identity (x) ... (x) op (x) ... (x) identity, with op at `slot`.
inline Matrix embed(const Matrix& op, std::size_t slot,
                    const std::vector<int>& dims) {
  if (slot >= dims.size()) {
    throw InvalidDimensionError("embed: slot " + std::to_string(slot) +
                                " out of range for " +
                                std::to_string(dims.size()) + " factors");
  }
  if (op.rows() != op.cols() || op.rows() != dims[slot]) {
    throw InvalidDimensionError(
        "embed: operator dim " + std::to_string(op.rows()) +
        " does not match factor dim " + std::to_string(dims[slot]));
  }
  Matrix out = slot == 0 ? op : identity(dims[0]);
  for (std::size_t s = 1; s < dims.size(); ++s) {
    out = kron(out, s == slot ? op : identity(dims[s]));
  }
  return out;
}

// Tr(op * rho) without forming the product.
inline Complex expect(const Matrix& op, const Matrix& rho) {
  if (op.rows() != op.cols() || rho.rows() != rho.cols() ||
      op.rows() != rho.rows()) {
    throw InvalidDimensionError("expect: dimension mismatch");
  }
  return op.cwiseProduct(rho.transpose()).sum();
}

inline bool is_hermitian(const Matrix& m, double tol = 1e-12) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

inline Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

// The eight two-transmon states used throughout: the lower quadruplet
// 00, 11, T = (01+10)/sqrt2, S = (01-10)/sqrt2 and the excited states
// T0 = (02+20)/sqrt2, S0 = (02-20)/sqrt2, T1 = (12+21)/sqrt2,
// S1 = (12-21)/sqrt2. Vectors live in the two-transmon space of
// dimension d_t^2; the resonator factor is attached by the caller.
inline std::map<std::string, Vector> bell_basis(int d_t) {
  if (d_t < 3) {
    throw InvalidDimensionError(
        "bell_basis: needs d_t >= 3 (states involve level |2>)");
  }
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  auto pair_state = [&](int k1a, int k2a, int k1b, int k2b, double sign) {
    Vector v = Vector::Zero(d_t * d_t);
    v(k1a * d_t + k2a) = inv_sqrt2;
    v(k1b * d_t + k2b) = sign * inv_sqrt2;
    return v;
  };
  std::map<std::string, Vector> basis;
  basis["00"] = ket(d_t * d_t, 0);
  basis["11"] = ket(d_t * d_t, 1 * d_t + 1);
  basis["T"] = pair_state(0, 1, 1, 0, +1.0);
  basis["S"] = pair_state(0, 1, 1, 0, -1.0);
  basis["T0"] = pair_state(0, 2, 2, 0, +1.0);
  basis["S0"] = pair_state(0, 2, 2, 0, -1.0);
  basis["T1"] = pair_state(1, 2, 2, 1, +1.0);
  basis["S1"] = pair_state(1, 2, 2, 1, -1.0);
  return basis;
}

}  // namespace qop
}  // namespace singlet

// Copyright 2026 The nhqsim Authors
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

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <vector>

namespace nhqsim {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kEigTolDefault = 1e-9;

/// Full eigendecomposition of a general (non-Hermitian) complex matrix.
///
/// Eigenvalues are sorted by (Re descending, Im ascending). Right vectors are
/// unit-norm columns of `right_vectors`; column k of `left_vectors` is a
/// unit-norm solution of A^H w = conj(lambda_k) w, matched to eigenvalue k.
/// Eigenvalues closer than the internal clustering tolerance are grouped into
/// clusters; a cluster whose eigenvector Gram matrix is rank-deficient is
/// marked defective.
struct EigenDecomposition {
  CVector eigenvalues;
  CMatrix right_vectors;
  CMatrix left_vectors;
  double residual = 0.0;  // max_k ||A v_k - lambda_k v_k||_2
  std::vector<int> cluster_id;          // per eigenvalue, contiguous from 0
  std::vector<bool> cluster_defective;  // per cluster

  int cluster_count() const { return static_cast<int>(cluster_defective.size()); }
  bool any_defective() const {
    for (bool d : cluster_defective)
      if (d) return true;
    return false;
  }
};

EigenDecomposition eig_general(const CMatrix& a, double eig_tol = kEigTolDefault);

/// Matrix exponential via scaling-and-squaring with a Pade 13/13 kernel.
CMatrix matrix_exp(const CMatrix& a);

inline constexpr double kRk4DtDefault = 1e-3;  // microseconds

/// Fixed-step classical RK4 for dv/dt = generator * v.
///
/// `v0` is the state at t_grid.front(); the returned series is sampled on
/// t_grid (the first element is v0 itself). Each grid interval is split into
/// equal substeps no longer than dt_internal.
std::vector<CVector> rk4_evolve(const CMatrix& generator, const CVector& v0,
                                std::span<const double> t_grid,
                                double dt_internal = kRk4DtDefault);

}  // namespace nhqsim

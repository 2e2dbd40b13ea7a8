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

#include "nhqsim/qsys.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nhqsim {

namespace {

constexpr Complex kI{0.0, 1.0};

// vec(A rho B) = (A (x) B^T) vec(rho) for row-major vectorization.
Superop kron_sandwich(const Matrix3& a, const Matrix3& b) {
  Superop s = Superop::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) s(3 * i + j, 3 * k + l) = a(i, k) * b(l, j);
  return s;
}

Superop anticommutator_sop(const Matrix3& p) {
  const Matrix3 id = Matrix3::Identity();
  return kron_sandwich(p, id) + kron_sandwich(id, p);
}

Superop dissipator_sop(const Matrix3& l) {
  const Matrix3 ldl = l.adjoint() * l;
  return kron_sandwich(l, l.adjoint()) - 0.5 * anticommutator_sop(ldl);
}

Superop hamiltonian_sop(const Matrix3& h) {
  const Matrix3 id = Matrix3::Identity();
  return -kI * (kron_sandwich(h, id) - kron_sandwich(id, h));
}

Matrix3 lowering_e() {  // |e><f|
  Matrix3 l = Matrix3::Zero();
  l(kE, kF) = 1.0;
  return l;
}

Matrix3 lowering_g() {  // |g><e|
  Matrix3 l = Matrix3::Zero();
  l(kG, kE) = 1.0;
  return l;
}

Matrix3 projector(int level) {
  Matrix3 p = Matrix3::Zero();
  p(level, level) = 1.0;
  return p;
}

}  // namespace

void SystemParams::validate() const {
  if (!(gamma_e >= 0.0) || !std::isfinite(gamma_e)) throw std::invalid_argument("SystemParams: gamma_e must be >= 0");
  if (!(gamma_g >= 0.0) || !std::isfinite(gamma_g)) throw std::invalid_argument("SystemParams: gamma_g must be >= 0");
  if (!std::isfinite(omega)) throw std::invalid_argument("SystemParams: omega must be finite");
  if (!(eta_e >= 0.0 && eta_e <= 1.0)) throw std::invalid_argument("SystemParams: eta_e must be in [0, 1]");
  if (!(eta_g >= 0.0 && eta_g <= 1.0)) throw std::invalid_argument("SystemParams: eta_g must be in [0, 1]");
}

DensityMatrix DensityMatrix::pure(int level) {
  if (level < 0 || level > 2) throw std::invalid_argument("DensityMatrix::pure: level out of range");
  DensityMatrix rho;
  rho.m(level, level) = 1.0;
  return rho;
}

void DensityMatrix::validate(double herm_tol, double psd_tol, double trace_tol) const {
  if (!m.allFinite()) throw std::invalid_argument("DensityMatrix: non-finite entries");
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > herm_tol)
    throw std::invalid_argument("DensityMatrix: not Hermitian within tolerance");
  Eigen::SelfAdjointEigenSolver<Matrix3> es(0.5 * (m + m.adjoint()));
  if (es.eigenvalues().minCoeff() < -psd_tol)
    throw std::invalid_argument("DensityMatrix: negative eigenvalue beyond tolerance");
  const double tr = trace();
  if (!(tr > 0.0) || tr > 1.0 + trace_tol)
    throw std::invalid_argument("DensityMatrix: trace must lie in (0, 1]");
}

KrausSet build_kraus_set(const SystemParams& params, double dt) {
  params.validate();
  if (!(dt > 0.0)) throw std::invalid_argument("build_kraus_set: dt must be positive");
  if (params.gamma_e * dt >= kMarkovGuard || params.gamma_g * dt >= kMarkovGuard)
    throw std::invalid_argument(
        "build_kraus_set: gamma * dt too large; the detectors operate in the Markovian regime");

  KrausSet k;
  k.dt = dt;
  k.no_click = Matrix3::Zero();
  k.no_click(kF, kF) = std::sqrt(1.0 - params.gamma_e * dt);
  k.no_click(kE, kE) = std::sqrt(1.0 - params.gamma_g * dt);
  k.no_click(kG, kG) = 1.0;
  k.loss_e = Matrix3::Zero();
  k.loss_e(kE, kF) = std::sqrt(params.gamma_e * dt * (1.0 - params.eta_e));
  k.loss_g = Matrix3::Zero();
  k.loss_g(kG, kE) = std::sqrt(params.gamma_g * dt * (1.0 - params.eta_g));
  k.click_e = Matrix3::Zero();
  k.click_e(kE, kF) = std::sqrt(params.gamma_e * dt * params.eta_e);
  k.click_g = Matrix3::Zero();
  k.click_g(kG, kE) = std::sqrt(params.gamma_g * dt * params.eta_g);
  return k;
}

std::pair<DensityMatrix, double> apply_no_click(const DensityMatrix& rho, const KrausSet& kraus) {
  const double tr_in = rho.trace();
  if (!(tr_in > 0.0)) throw std::invalid_argument("apply_no_click: input state has non-positive trace");
  Matrix3 num = kraus.no_click * rho.m * kraus.no_click.adjoint();
  num += kraus.loss_e * rho.m * kraus.loss_e.adjoint();
  num += kraus.loss_g * rho.m * kraus.loss_g.adjoint();
  const double norm = num.trace().real();
  if (!(norm > 0.0)) throw std::invalid_argument("apply_no_click: zero-probability update (invalid state)");
  DensityMatrix out;
  out.m = num / norm;
  out.hermitize();
  return {out, norm / tr_in};
}

std::pair<DensityMatrix, double> apply_e_click(const DensityMatrix& rho, const KrausSet& kraus) {
  const double tr_in = rho.trace();
  if (!(tr_in > 0.0)) throw std::invalid_argument("apply_e_click: input state has non-positive trace");
  Matrix3 num = kraus.click_e * rho.m * kraus.click_e.adjoint();
  const double norm = num.trace().real();
  if (!(norm > 0.0)) throw std::invalid_argument("apply_e_click: zero-probability event");
  DensityMatrix out;
  out.m = num / norm;
  out.hermitize();
  return {out, norm / tr_in};
}

std::pair<DensityMatrix, double> apply_g_click(const DensityMatrix& rho, const KrausSet& kraus) {
  const double tr_in = rho.trace();
  if (!(tr_in > 0.0)) throw std::invalid_argument("apply_g_click: input state has non-positive trace");
  Matrix3 num = kraus.click_g * rho.m * kraus.click_g.adjoint();
  const double norm = num.trace().real();
  if (!(norm > 0.0)) throw std::invalid_argument("apply_g_click: zero-probability event");
  DensityMatrix out;
  out.m = num / norm;
  out.hermitize();
  return {out, norm / tr_in};
}

Vector9 vectorize(const DensityMatrix& rho) {
  Vector9 v;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) v(3 * i + j) = rho.m(i, j);
  return v;
}

DensityMatrix unvectorize(const Vector9& v) {
  DensityMatrix rho;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) rho.m(i, j) = v(3 * i + j);
  return rho;
}

Matrix3 drive_hamiltonian(const SystemParams& params) {
  Matrix3 h = Matrix3::Zero();
  h(kF, kE) = params.omega;
  h(kE, kF) = params.omega;
  return h;
}

Superop build_lindblad(const SystemParams& params) {
  params.validate();
  Superop l = hamiltonian_sop(drive_hamiltonian(params));
  l += params.gamma_g * dissipator_sop(lowering_g());
  l += params.gamma_e * dissipator_sop(lowering_e());
  return l;
}

Superop build_hybrid_nj(const SystemParams& params) {
  params.validate();
  Superop l = hamiltonian_sop(drive_hamiltonian(params));
  l += -0.5 * params.gamma_g * params.eta_g * anticommutator_sop(projector(kE));
  l += -0.5 * params.gamma_e * params.eta_e * anticommutator_sop(projector(kF));
  l += (1.0 - params.eta_g) * params.gamma_g * dissipator_sop(lowering_g());
  l += (1.0 - params.eta_e) * params.gamma_e * dissipator_sop(lowering_e());
  return l;
}

Superop build_hybrid_j(const SystemParams& params) {
  params.validate();
  Superop l = hamiltonian_sop(drive_hamiltonian(params));
  l += -0.5 * params.gamma_g * params.eta_g * anticommutator_sop(projector(kE));
  l += (1.0 - params.eta_g) * params.gamma_g * dissipator_sop(lowering_g());
  l += params.gamma_e * dissipator_sop(lowering_e());
  return l;
}

Matrix2 build_h_eff(const SystemParams& params) {
  params.validate();
  Matrix2 h;
  h << -0.5 * kI * params.gamma_e, Complex(params.omega, 0.0),
       Complex(params.omega, 0.0), -0.5 * kI * params.gamma_g;
  return h;
}

}  // namespace nhqsim

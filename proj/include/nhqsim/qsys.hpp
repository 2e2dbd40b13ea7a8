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

#include <array>
#include <utility>

#include "nhqsim/linalg.hpp"

namespace nhqsim {

// Basis order of the three-level system: |f> (second excited), |e> (first
// excited), |g> (ground). All matrices in this project use this order.
inline constexpr int kF = 0;
inline constexpr int kE = 1;
inline constexpr int kG = 2;

using Matrix2 = Eigen::Matrix2cd;
using Matrix3 = Eigen::Matrix3cd;
using Superop = Eigen::Matrix<Complex, 9, 9>;
using Vector9 = Eigen::Matrix<Complex, 9, 1>;

/// Physical rates (MHz), drive strength (MHz) and detector efficiencies.
/// gamma_e drives |f> -> |e|, gamma_g drives |e> -> |g>; the direct
/// |f> -> |g> transition does not exist in this model.
struct SystemParams {
  double gamma_e = 0.2;
  double gamma_g = 4.0;
  double omega = 0.0;
  double eta_e = 1.0;
  double eta_g = 1.0;

  void validate() const;  // throws std::invalid_argument on bad ranges
};

/// 3x3 density matrix in the [f, e, g] basis. The trace may drop below one
/// under unnormalized hybrid evolution; validate() only requires it positive.
struct DensityMatrix {
  Matrix3 m = Matrix3::Zero();

  static DensityMatrix pure(int level);

  double trace() const { return m.trace().real(); }
  std::array<double, 3> populations() const {
    return {m(kF, kF).real(), m(kE, kE).real(), m(kG, kG).real()};
  }
  void hermitize() { m = 0.5 * (m + m.adjoint()).eval(); }
  void validate(double herm_tol = 1e-12, double psd_tol = 1e-10, double trace_tol = 1e-12) const;
};

/// The five conditional-update operators for one measurement interval dt.
/// Superscript convention (D_e D_e^L, D_g D_g^L): no_click = (00,00),
/// loss_e = (01,00), loss_g = (00,01), click_e = (10,00), click_g = (00,10).
struct KrausSet {
  double dt = 0.0;  // microseconds
  Matrix3 no_click;
  Matrix3 loss_e;
  Matrix3 loss_g;
  Matrix3 click_e;
  Matrix3 click_g;
};

// Markov-regime guard on gamma * dt for Kraus construction.
inline constexpr double kMarkovGuard = 0.1;

KrausSet build_kraus_set(const SystemParams& params, double dt);

/// No-observable-click update: the mixture of the (00,00), (01,00) and
/// (00,01) channels, renormalized. Returns the updated state and the event
/// probability evaluated on the trace-1 normalization of rho.
std::pair<DensityMatrix, double> apply_no_click(const DensityMatrix& rho, const KrausSet& kraus);

/// Detected |f> -> |e> jump. Probability is eta_e * gamma_e * dt * rho_ff / Tr(rho).
std::pair<DensityMatrix, double> apply_e_click(const DensityMatrix& rho, const KrausSet& kraus);

/// Detected |e> -> |g> jump. Probability is eta_g * gamma_g * dt * rho_ee / Tr(rho).
std::pair<DensityMatrix, double> apply_g_click(const DensityMatrix& rho, const KrausSet& kraus);

// Row-major vectorization over [f, e, g]: component order
// (ff, fe, fg, ef, ee, eg, gf, ge, gg).
Vector9 vectorize(const DensityMatrix& rho);
DensityMatrix unvectorize(const Vector9& v);

/// Drive Hamiltonian Omega * (|f><e| + |e><f|) embedded in the 3x3 space.
Matrix3 drive_hamiltonian(const SystemParams& params);

/// Full Lindblad generator: -i[H, .] plus both decay dissipators.
Superop build_lindblad(const SystemParams& params);

/// Hybrid generator conditioned on seeing no detector click on either
/// monitored channel: detected jumps act as pure anticommutator sinks,
/// undetected jumps keep their feeding terms with weight (1 - eta).
Superop build_hybrid_nj(const SystemParams& params);

/// Hybrid generator conditioned only on seeing no |e> -> |g> click; the
/// |f> -> |e> channel is averaged over and the result is eta_e independent.
Superop build_hybrid_j(const SystemParams& params);

/// Non-Hermitian effective Hamiltonian on span{|f>, |e>} (basis [f, e]):
/// [[-i gamma_e / 2, omega], [omega, -i gamma_g / 2]].
Matrix2 build_h_eff(const SystemParams& params);

}  // namespace nhqsim

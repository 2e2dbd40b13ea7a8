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

#include "nhqsim/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace nhqsim {

namespace {

// Gram-matrix singular values below this fraction of the largest count as zero.
constexpr double kGramRankTol = 1e-6;

std::vector<int> canonical_order(const CVector& ev) {
  std::vector<int> idx(ev.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (ev[a].real() != ev[b].real()) return ev[a].real() > ev[b].real();
    return ev[a].imag() < ev[b].imag();
  });
  return idx;
}

}  // namespace

EigenDecomposition eig_general(const CMatrix& a, double eig_tol) {
  const Eigen::Index n = a.rows();
  if (n == 0 || a.cols() != n) throw std::invalid_argument("eig_general: matrix must be square and non-empty");
  if (!a.allFinite()) throw std::invalid_argument("eig_general: matrix has non-finite entries");

  Eigen::ComplexEigenSolver<CMatrix> right_solver(a, /*computeEigenvectors=*/true);
  if (right_solver.info() != Eigen::Success)
    throw std::runtime_error("eig_general: eigensolver did not converge on the input matrix");
  Eigen::ComplexEigenSolver<CMatrix> left_solver(a.adjoint(), /*computeEigenvectors=*/true);
  if (left_solver.info() != Eigen::Success)
    throw std::runtime_error("eig_general: eigensolver did not converge on the adjoint matrix");

  EigenDecomposition out;
  const auto order = canonical_order(right_solver.eigenvalues());
  out.eigenvalues.resize(n);
  out.right_vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues[k] = right_solver.eigenvalues()[order[k]];
    CVector v = right_solver.eigenvectors().col(order[k]);
    out.right_vectors.col(k) = v / v.norm();
  }

  // Match each adjoint eigenpair (mu, w) to the right eigenvalue nearest to
  // conj(mu); greedy over all pairs, smallest distance first.
  const CVector mu = left_solver.eigenvalues();
  out.left_vectors.resize(n, n);
  {
    struct Cand {
      double dist;
      int left, right;
    };
    std::vector<Cand> cands;
    cands.reserve(n * n);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        cands.push_back({std::abs(std::conj(mu[j]) - out.eigenvalues[k]), j, k});
    std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
      if (x.dist != y.dist) return x.dist < y.dist;
      if (x.right != y.right) return x.right < y.right;
      return x.left < y.left;
    });
    std::vector<bool> left_used(n, false), right_used(n, false);
    for (const Cand& c : cands) {
      if (left_used[c.left] || right_used[c.right]) continue;
      left_used[c.left] = right_used[c.right] = true;
      CVector w = left_solver.eigenvectors().col(c.left);
      out.left_vectors.col(c.right) = w / w.norm();
    }
  }

  out.residual = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double r = (a * out.right_vectors.col(k) - out.eigenvalues[k] * out.right_vectors.col(k)).norm();
    out.residual = std::max(out.residual, r);
  }
  if (out.residual > std::max(eig_tol, 1e-12 * a.norm())) {
    std::ostringstream msg;
    msg << "eig_general: eigenpair residual " << out.residual << " exceeds tolerance " << eig_tol;
    throw std::runtime_error(msg.str());
  }

  // Cluster nearby eigenvalues (single linkage) and flag rank-deficient
  // eigenvector Gram matrices. The clustering tolerance must exceed the
  // eps^(1/order) splitting a defective eigenvalue exhibits in floating point.
  const double scale = std::max(1.0, a.cwiseAbs().rowwise().sum().maxCoeff());
  const double cluster_tol = std::max(100.0 * eig_tol, 1e-4 * scale);
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(out.eigenvalues[i] - out.eigenvalues[j]) <= cluster_tol) {
        int ri = find(i), rj = find(j);
        if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
      }
  out.cluster_id.assign(n, -1);
  int next_id = 0;
  std::vector<std::vector<int>> members;
  for (int i = 0; i < n; ++i) {
    int r = find(i);
    if (out.cluster_id[r] < 0) {
      out.cluster_id[r] = next_id++;
      members.emplace_back();
    }
    out.cluster_id[i] = out.cluster_id[r];
    members[out.cluster_id[i]].push_back(i);
  }
  out.cluster_defective.assign(next_id, false);
  for (int c = 0; c < next_id; ++c) {
    if (members[c].size() < 2) continue;
    CMatrix vc(n, members[c].size());
    for (size_t j = 0; j < members[c].size(); ++j) vc.col(j) = out.right_vectors.col(members[c][j]);
    Eigen::JacobiSVD<CMatrix> svd(vc);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (Eigen::Index j = 0; j < sv.size(); ++j)
      if (sv[j] > kGramRankTol * sv[0]) ++rank;
    out.cluster_defective[c] = rank < static_cast<int>(members[c].size());
  }
  return out;
}

CMatrix matrix_exp(const CMatrix& a) {
  const Eigen::Index n = a.rows();
  if (n == 0 || a.cols() != n) throw std::invalid_argument("matrix_exp: matrix must be square and non-empty");
  if (!a.allFinite()) throw std::invalid_argument("matrix_exp: matrix has non-finite entries");

  // Pade 13/13 coefficients.
  static const double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                             1187353796428800.0,  129060195264000.0,   10559470521600.0,
                             670442572800.0,      33522128640.0,       1323241920.0,
                             40840800.0,          960960.0,            16380.0,
                             182.0,               1.0};
  constexpr double theta13 = 5.371920351148152;

  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > theta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
    if (squarings > 60) {
      std::ostringstream msg;
      msg << "matrix_exp: 1-norm " << norm1 << " too large, would overflow scaling";
      throw std::runtime_error(msg.str());
    }
  }
  const CMatrix as = a / std::ldexp(1.0, squarings);
  const CMatrix id = CMatrix::Identity(n, n);
  const CMatrix a2 = as * as;
  const CMatrix a4 = a2 * a2;
  const CMatrix a6 = a2 * a4;
  const CMatrix u =
      as * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
  const CMatrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
  CMatrix f = (v - u).partialPivLu().solve(v + u);
  for (int s = 0; s < squarings; ++s) f = f * f;
  if (!f.allFinite()) {
    std::ostringstream msg;
    msg << "matrix_exp: overflow, input 1-norm " << norm1;
    throw std::runtime_error(msg.str());
  }
  return f;
}

std::vector<CVector> rk4_evolve(const CMatrix& generator, const CVector& v0,
                                std::span<const double> t_grid, double dt_internal) {
  const Eigen::Index n = generator.rows();
  if (generator.cols() != n) throw std::invalid_argument("rk4_evolve: generator must be square");
  if (v0.size() != n) throw std::invalid_argument("rk4_evolve: state dimension does not match generator");
  if (t_grid.empty()) throw std::invalid_argument("rk4_evolve: empty time grid");
  if (!(dt_internal > 0.0)) throw std::invalid_argument("rk4_evolve: dt_internal must be positive");
  for (size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1])) throw std::invalid_argument("rk4_evolve: t_grid must be strictly increasing");
  for (size_t i = 1; i < t_grid.size(); ++i)
    if (dt_internal > (t_grid[i] - t_grid[i - 1]) * (1.0 + 1e-12))
      throw std::invalid_argument("rk4_evolve: dt_internal exceeds the smallest grid spacing");

  std::vector<CVector> out;
  out.reserve(t_grid.size());
  out.push_back(v0);
  CVector v = v0;
  for (size_t i = 1; i < t_grid.size(); ++i) {
    const double span = t_grid[i] - t_grid[i - 1];
    const auto substeps = static_cast<long>(std::ceil(span / dt_internal - 1e-12));
    const double h = span / static_cast<double>(substeps);
    for (long s = 0; s < substeps; ++s) {
      const CVector k1 = generator * v;
      const CVector k2 = generator * (v + (h / 2) * k1);
      const CVector k3 = generator * (v + (h / 2) * k2);
      const CVector k4 = generator * (v + h * k3);
      v += (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace nhqsim

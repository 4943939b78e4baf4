// Copyright 2026 The qillum Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Reference computations that avoid the library's own code paths.

#include <cmath>
#include <complex>
#include <random>
#include <utility>

#include "qillum/symplectic.hpp"

namespace qillum::testing {

/// Two-mode symplectic eigenvalues from the local invariants
/// Delta = det A + det B + 2 det C and det V.
inline std::pair<Real, Real> two_mode_invariant_eigenvalues(const Matrix& v) {
  const Matrix a = v.block(0, 0, 2, 2);
  const Matrix b = v.block(2, 2, 2, 2);
  const Matrix c = v.block(0, 2, 2, 2);
  const Real delta = a.determinant() + b.determinant() + 2 * c.determinant();
  const Real det = v.determinant();
  const Real disc = std::sqrt(std::max<Real>(delta * delta - 4 * det, 0));
  return {std::sqrt((delta - disc) / 2), std::sqrt((delta + disc) / 2)};
}

/// Tr[rho0^s rho1^(1-s)] for single-mode thermal states, summed as a
/// geometric series over the shared Fock basis.
inline Real thermal_overlap_series(Real n0, Real n1, Real s) {
  const Real head = std::pow(1 / (1 + n0), s) * std::pow(1 / (1 + n1), 1 - s);
  const Real ratio = std::pow(n0 / (1 + n0), s) * std::pow(n1 / (1 + n1), 1 - s);
  return head / (1 - ratio);
}

inline Matrix rotation(Real theta, std::size_t n_modes, std::size_t mode) {
  Matrix s = Matrix::Identity(2 * n_modes, 2 * n_modes);
  const auto k = static_cast<Eigen::Index>(2 * mode);
  s(k, k) = std::cos(theta);
  s(k, k + 1) = std::sin(theta);
  s(k + 1, k) = -std::sin(theta);
  s(k + 1, k + 1) = std::cos(theta);
  return s;
}

inline Matrix squeezer(Real r, std::size_t n_modes, std::size_t mode) {
  Matrix s = Matrix::Identity(2 * n_modes, 2 * n_modes);
  const auto k = static_cast<Eigen::Index>(2 * mode);
  s(k, k) = std::exp(r);
  s(k + 1, k + 1) = std::exp(-r);
  return s;
}

/// Real beamsplitter mixing modes j and k with angle theta.
inline Matrix beamsplitter(Real theta, std::size_t n_modes, std::size_t j, std::size_t k) {
  Matrix s = Matrix::Identity(2 * n_modes, 2 * n_modes);
  const auto a = static_cast<Eigen::Index>(2 * j);
  const auto b = static_cast<Eigen::Index>(2 * k);
  for (Eigen::Index q = 0; q < 2; ++q) {
    s(a + q, a + q) = std::cos(theta);
    s(a + q, b + q) = std::sin(theta);
    s(b + q, a + q) = -std::sin(theta);
    s(b + q, b + q) = std::cos(theta);
  }
  return s;
}

/// Product of random rotations, squeezers and beamsplitters (symplectic by construction).
template <class Rng>
Matrix random_symplectic(Rng& rng, std::size_t n_modes, Real max_squeeze = 1) {
  std::uniform_real_distribution<double> angle(0, 2 * M_PI);
  std::uniform_real_distribution<double> sq(-static_cast<double>(max_squeeze), static_cast<double>(max_squeeze));
  Matrix s = Matrix::Identity(2 * n_modes, 2 * n_modes);
  for (int layer = 0; layer < 3; ++layer) {
    for (std::size_t m = 0; m < n_modes; ++m) {
      s = squeezer(sq(rng), n_modes, m) * rotation(angle(rng), n_modes, m) * s;
    }
    for (std::size_t m = 0; m + 1 < n_modes; ++m) {
      s = beamsplitter(angle(rng), n_modes, m, m + 1) * s;
    }
  }
  return s;
}

/// S diag(nu) S^T with nu in [1, 1 + max_excess].
template <class Rng>
Matrix random_physical_covariance(Rng& rng, std::size_t n_modes, Real max_excess = 5) {
  std::uniform_real_distribution<double> excess(0, static_cast<double>(max_excess));
  Vector d(2 * n_modes);
  for (std::size_t m = 0; m < n_modes; ++m) {
    d(2 * m) = d(2 * m + 1) = 1 + excess(rng);
  }
  const Matrix s = random_symplectic(rng, n_modes);
  Matrix v = s * d.asDiagonal() * s.transpose();
  return (v + v.transpose()) / 2;
}

inline Real max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace qillum::testing

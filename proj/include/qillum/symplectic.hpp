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

// Covariance-matrix and symplectic-group algebra for bosonic Gaussian states.
//
// Conventions used throughout the library:
//   * quadrature ordering (x1, p1, x2, p2, ...);
//   * vacuum variance 1, i.e. x = a + a^dagger and a thermal state of mean
//     photon number N has covariance (2N + 1) * Identity;
//   * mode 0 is the signal/return mode, mode 1 the idler.

#include <cstddef>
#include <vector>

#include "qillum/linalg.hpp"

namespace qillum {

inline constexpr Real kSymmetryTolerance = 1e-12L;
// Admits pure states under roundoff while rejecting genuinely unphysical input.
inline constexpr Real kPhysicalityTolerance = 1e-6L;
inline constexpr Real kSymplecticTolerance = 1e-10L;
inline constexpr Real kReassemblyTolerance = 1e-8L;

/// Real symmetric, positive-definite 2n x 2n matrix with all symplectic
/// eigenvalues >= 1. Construction validates; instances are always physical.
class CovarianceMatrix {
 public:
  explicit CovarianceMatrix(Matrix entries);

  std::size_t n_modes() const { return static_cast<std::size_t>(m_.rows() / 2); }
  const Matrix& matrix() const { return m_; }
  Real operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

 private:
  Matrix m_;
};

/// Real 2n x 2n matrix with S Omega S^T = Omega.
class SymplecticMatrix {
 public:
  explicit SymplecticMatrix(Matrix entries);

  static SymplecticMatrix identity(std::size_t n_modes);

  std::size_t n_modes() const { return static_cast<std::size_t>(m_.rows() / 2); }
  const Matrix& matrix() const { return m_; }
  Real operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

 private:
  Matrix m_;
};

struct GaussianState {
  Vector mean;
  CovarianceMatrix cov;

  /// Zero-mean state with covariance `v`.
  static GaussianState centered(CovarianceMatrix v);
};

/// V = transform * diag(nu_1, nu_1, ..., nu_n, nu_n) * transform^T.
struct WilliamsonDecomposition {
  SymplecticMatrix transform;
  std::vector<Real> sympl_eigenvalues;
  // Set when two symplectic eigenvalues nearly coincide; the transform is
  // then determined only up to a larger symplectic-orthogonal freedom.
  bool reduced_accuracy = false;

  Matrix reassemble() const;
  /// Relative Frobenius error of reassemble() against `v`.
  Real reassembly_error(const Matrix& v) const;
};

/// Block-diagonal direct sum of n copies of [[0, 1], [-1, 0]].
Matrix symplectic_form(std::size_t n_modes);

/// Two-mode squeezed vacuum with mean photon number `ns` per mode.
CovarianceMatrix tmsv_covariance(Real ns);

/// diag(e^r1, e^-r1, e^r2, e^-r2): local squeezers on both modes, zero phase.
SymplecticMatrix single_mode_squeeze_symplectic(Real r1, Real r2);

/// [[I cosh r, Z sinh r], [Z sinh r, I cosh r]] with Z = diag(1, -1).
SymplecticMatrix two_mode_squeeze_symplectic(Real r);

/// S V S^T.
CovarianceMatrix apply_symplectic(const SymplecticMatrix& s, const CovarianceMatrix& v);

/// Moduli of the eigenvalues of i Omega V, sorted ascending, one per mode.
/// No physicality check; accepts partially transposed matrices.
std::vector<Real> symplectic_spectrum(const Matrix& v);

std::vector<Real> symplectic_eigenvalues(const CovarianceMatrix& v);

WilliamsonDecomposition williamson(const CovarianceMatrix& v);

/// Flips the sign of the momentum quadrature of `mode` (0-based). The result
/// is generally not a physical covariance matrix.
Matrix partial_transpose(const Matrix& v, std::size_t mode);

/// Logarithmic negativity of a two-mode state, in bits.
Real log_negativity(const CovarianceMatrix& v);

}  // namespace qillum

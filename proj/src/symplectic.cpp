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

#include "qillum/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include <Eigen/Eigenvalues>

#include "checks.hpp"
#include "qillum/error.hpp"

namespace qillum {

namespace {

void require_even_square(const Matrix& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols() || m.rows() % 2 != 0) {
    throw ValidationError(std::string(what) + " must be a non-empty 2n x 2n matrix");
  }
}

}  // namespace

CovarianceMatrix::CovarianceMatrix(Matrix entries) : m_(std::move(entries)) {
  require_even_square(m_, "covariance matrix");
  if (!m_.allFinite()) {
    throw ValidationError("covariance matrix has non-finite entries");
  }
  if ((m_ - m_.transpose()).cwiseAbs().maxCoeff() > kSymmetryTolerance) {
    throw ValidationError("covariance matrix is not symmetric");
  }
  Eigen::LLT<Matrix> llt(m_);
  if (llt.info() != Eigen::Success) {
    throw NonPhysicalError("covariance matrix is not positive definite");
  }
  const auto nu = symplectic_spectrum(m_);
  if (nu.front() < 1 - kPhysicalityTolerance) {
    throw NonPhysicalError("covariance matrix violates the uncertainty principle (smallest symplectic eigenvalue " +
                           std::to_string(static_cast<double>(nu.front())) + ")");
  }
}

SymplecticMatrix::SymplecticMatrix(Matrix entries) : m_(std::move(entries)) {
  require_even_square(m_, "symplectic matrix");
  if (!m_.allFinite()) {
    throw ValidationError("symplectic matrix has non-finite entries");
  }
  const Matrix omega = symplectic_form(n_modes());
  const Real scale = std::max<Real>(1, detail::max_abs(m_));
  const Real defect = detail::max_abs(m_ * omega * m_.transpose() - omega);
  if (defect > kSymplecticTolerance * scale * scale) {
    throw ValidationError("matrix does not preserve the symplectic form (defect " +
                          std::to_string(static_cast<double>(defect)) + ")");
  }
}

SymplecticMatrix SymplecticMatrix::identity(std::size_t n_modes) {
  const auto dim = static_cast<Eigen::Index>(2 * n_modes);
  return SymplecticMatrix(Matrix::Identity(dim, dim));
}

GaussianState GaussianState::centered(CovarianceMatrix v) {
  Vector mean = Vector::Zero(v.matrix().rows());
  return GaussianState{std::move(mean), std::move(v)};
}

Matrix WilliamsonDecomposition::reassemble() const {
  Vector diag(2 * sympl_eigenvalues.size());
  for (std::size_t k = 0; k < sympl_eigenvalues.size(); ++k) {
    diag(2 * k) = diag(2 * k + 1) = sympl_eigenvalues[k];
  }
  const Matrix& s = transform.matrix();
  return s * diag.asDiagonal() * s.transpose();
}

Real WilliamsonDecomposition::reassembly_error(const Matrix& v) const {
  return (reassemble() - v).norm() / v.norm();
}

Matrix symplectic_form(std::size_t n_modes) {
  if (n_modes == 0) {
    throw ValidationError("symplectic_form needs at least one mode");
  }
  const auto dim = static_cast<Eigen::Index>(2 * n_modes);
  Matrix omega = Matrix::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; k += 2) {
    omega(k, k + 1) = 1;
    omega(k + 1, k) = -1;
  }
  return omega;
}

CovarianceMatrix tmsv_covariance(Real ns) {
  detail::require_nonnegative("N_S", ns);
  const Real a = 2 * ns + 1;
  const Real c = 2 * std::sqrt(ns * (1 + ns));
  Matrix v = Matrix::Zero(4, 4);
  v.diagonal().setConstant(a);
  v(0, 2) = v(2, 0) = c;
  v(1, 3) = v(3, 1) = -c;
  return CovarianceMatrix(std::move(v));
}

SymplecticMatrix single_mode_squeeze_symplectic(Real r1, Real r2) {
  detail::require_finite("r1", r1);
  detail::require_finite("r2", r2);
  Vector d(4);
  d << std::exp(r1), std::exp(-r1), std::exp(r2), std::exp(-r2);
  return SymplecticMatrix(d.asDiagonal());
}

SymplecticMatrix two_mode_squeeze_symplectic(Real r) {
  detail::require_finite("r", r);
  const Real ch = std::cosh(r);
  const Real sh = std::sinh(r);
  Matrix s = Matrix::Zero(4, 4);
  s.diagonal().setConstant(ch);
  s(0, 2) = s(2, 0) = sh;
  s(1, 3) = s(3, 1) = -sh;
  return SymplecticMatrix(std::move(s));
}

CovarianceMatrix apply_symplectic(const SymplecticMatrix& s, const CovarianceMatrix& v) {
  if (s.matrix().rows() != v.matrix().rows()) {
    throw ValidationError("apply_symplectic: dimension mismatch");
  }
  Matrix out = s.matrix() * v.matrix() * s.matrix().transpose();
  out = ((out + out.transpose()) / 2).eval();
  return CovarianceMatrix(std::move(out));
}

std::vector<Real> symplectic_spectrum(const Matrix& v) {
  require_even_square(v, "covariance matrix");
  using CReal = std::complex<Real>;
  using CRMatrix = Eigen::Matrix<CReal, Eigen::Dynamic, Eigen::Dynamic>;
  const std::size_t n = static_cast<std::size_t>(v.rows() / 2);

  const CRMatrix m = CReal(0, 1) * (symplectic_form(n) * v).cast<CReal>();
  Eigen::ComplexEigenSolver<CRMatrix> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("symplectic_spectrum: eigensolver did not converge");
  }
  std::vector<Real> moduli;
  moduli.reserve(2 * n);
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    moduli.push_back(std::abs(solver.eigenvalues()(k)));
  }
  std::sort(moduli.begin(), moduli.end());
  // Eigenvalues come in +-nu pairs; adjacent moduli belong to one mode.
  std::vector<Real> nu(n);
  for (std::size_t k = 0; k < n; ++k) {
    nu[k] = (moduli[2 * k] + moduli[2 * k + 1]) / 2;
  }
  return nu;
}

std::vector<Real> symplectic_eigenvalues(const CovarianceMatrix& v) { return symplectic_spectrum(v.matrix()); }

WilliamsonDecomposition williamson(const CovarianceMatrix& v) {
  const Matrix& vm = v.matrix();
  const std::size_t n = v.n_modes();
  const auto dim = vm.rows();

  Eigen::SelfAdjointEigenSolver<Matrix> root_solver(vm);
  if (root_solver.info() != Eigen::Success) {
    throw NumericalError("williamson: symmetric eigensolver did not converge");
  }
  const Matrix root = root_solver.operatorSqrt();

  // K = V^{1/2} Omega V^{1/2} is antisymmetric; its real Schur form is a
  // direct sum of nu_k [[0, 1], [-1, 0]] blocks.
  Matrix k = root * symplectic_form(n) * root;
  k = ((k - k.transpose()) / 2).eval();
  Eigen::RealSchur<Matrix> schur(k);
  if (schur.info() != Eigen::Success) {
    throw NumericalError("williamson: real Schur decomposition did not converge");
  }
  const Matrix& t = schur.matrixT();
  Matrix o = schur.matrixU();

  std::vector<Real> nu(n);
  for (std::size_t b = 0; b < n; ++b) {
    const auto i = static_cast<Eigen::Index>(2 * b);
    const Real upper = t(i, i + 1);
    const Real lower = t(i + 1, i);
    if (upper * lower >= 0) {
      throw NumericalError("williamson: Schur form is missing a 2x2 rotation block");
    }
    nu[b] = std::sqrt(-upper * lower);
    if (upper < 0) {
      o.col(i).swap(o.col(i + 1));
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return nu[a] < nu[b]; });

  Matrix s(dim, dim);
  std::vector<Real> sorted_nu(n);
  for (std::size_t b = 0; b < n; ++b) {
    const auto src = static_cast<Eigen::Index>(2 * order[b]);
    const auto dst = static_cast<Eigen::Index>(2 * b);
    sorted_nu[b] = nu[order[b]];
    const Real scale = 1 / std::sqrt(sorted_nu[b]);
    s.col(dst) = root * o.col(src) * scale;
    s.col(dst + 1) = root * o.col(src + 1) * scale;
  }

  // Fix the residual sign freedom: largest-magnitude entry of each column
  // pair positive.
  for (Eigen::Index c = 0; c < dim; c += 2) {
    Eigen::Index row = 0;
    Eigen::Index col = 0;
    s.middleCols(c, 2).cwiseAbs().maxCoeff(&row, &col);
    if (s(row, c + col) < 0) {
      s.middleCols(c, 2) *= -1;
    }
  }

  bool reduced = false;
  for (std::size_t b = 1; b < n; ++b) {
    if (sorted_nu[b] - sorted_nu[b - 1] < 1e-8L * sorted_nu[b]) {
      reduced = true;
    }
  }

  WilliamsonDecomposition out{SymplecticMatrix(std::move(s)), std::move(sorted_nu), reduced};
  const Real err = out.reassembly_error(vm);
  if (err > kReassemblyTolerance) {
    throw NumericalError("williamson: reassembly error " + std::to_string(static_cast<double>(err)));
  }
  return out;
}

Matrix partial_transpose(const Matrix& v, std::size_t mode) {
  require_even_square(v, "covariance matrix");
  const auto p_index = static_cast<Eigen::Index>(2 * mode + 1);
  if (p_index >= v.rows()) {
    throw ValidationError("partial_transpose: mode index out of range");
  }
  Matrix out = v;
  out.row(p_index) *= -1;
  out.col(p_index) *= -1;
  return out;
}

Real log_negativity(const CovarianceMatrix& v) {
  if (v.n_modes() != 2) {
    throw ValidationError("log_negativity is defined here for two-mode states only");
  }
  const auto nu = symplectic_spectrum(partial_transpose(v.matrix(), 1));
  return std::max<Real>(0, -std::log2(nu.front()));
}

}  // namespace qillum

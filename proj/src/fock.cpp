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

#include "qillum/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "qillum/error.hpp"

namespace qillum {

namespace {

constexpr double kHermitianTolerance = 1e-10;
constexpr double kNegativeFloor = -1e-9;
constexpr double kImaginaryTolerance = 1e-9;

void require_dim(std::size_t dim, const char* what) {
  if (dim < 2) {
    throw ValidationError(std::string(what) + ": Fock truncation needs at least 2 levels");
  }
}

void require_density_operator(const FockOperator& rho, const char* what) {
  if (rho.entries.rows() != rho.entries.cols() || rho.dim() != total_dim(rho.mode_dims)) {
    throw ValidationError(std::string(what) + ": operator shape does not match its mode dimensions");
  }
  const double asym = (rho.entries - rho.entries.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermitianTolerance) {
    throw ValidationError(std::string(what) + ": operator is not Hermitian (defect " + std::to_string(asym) + ")");
  }
}

Eigen::VectorXd clamped_spectrum(const Eigen::VectorXd& eigenvalues, const char* what) {
  if (eigenvalues.size() > 0 && eigenvalues.minCoeff() < kNegativeFloor) {
    throw ValidationError(std::string(what) + ": operator has eigenvalue " + std::to_string(eigenvalues.minCoeff()) +
                          " below the positivity floor");
  }
  return eigenvalues.cwiseMax(0.0);
}

// Weight of the top two levels of each mode, from the diagonal of a
// density operator (or |amplitude|^2 of a ket).
double top_level_weight(const Eigen::VectorXd& populations, const std::vector<std::size_t>& mode_dims) {
  const std::size_t total = total_dim(mode_dims);
  double worst = 0;
  std::size_t stride = total;
  for (std::size_t dim : mode_dims) {
    stride /= dim;
    double weight = 0;
    for (std::size_t idx = 0; idx < total; ++idx) {
      const std::size_t level = (idx / stride) % dim;
      if (level + 2 >= dim) {
        weight += populations(static_cast<Eigen::Index>(idx));
      }
    }
    worst = std::max(worst, weight);
  }
  return worst;
}

TruncationReport make_report(double tail, double tail_tolerance) {
  return TruncationReport{tail, tail < tail_tolerance};
}

}  // namespace

void TruncationReport::merge(const TruncationReport& other) {
  tail_mass = std::max(tail_mass, other.tail_mass);
  converged = converged && other.converged;
}

FockOperator FockOperator::projector(const FockKet& ket) {
  return FockOperator{ket.mode_dims, ket.amplitudes * ket.amplitudes.adjoint()};
}

std::size_t total_dim(const std::vector<std::size_t>& mode_dims) {
  return std::accumulate(mode_dims.begin(), mode_dims.end(), std::size_t{1}, std::multiplies<>());
}

Eigen::MatrixXd annihilation(std::size_t dim) {
  require_dim(dim, "annihilation");
  const auto d = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index n = 1; n < d; ++n) {
    a(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  return a;
}

CMatrix embed(const CMatrix& op, const std::vector<std::size_t>& mode_dims, std::size_t mode) {
  if (mode >= mode_dims.size() || static_cast<std::size_t>(op.rows()) != mode_dims[mode]) {
    throw ValidationError("embed: mode index or operator size does not match the mode dimensions");
  }
  std::size_t before = 1;
  std::size_t after = 1;
  for (std::size_t k = 0; k < mode_dims.size(); ++k) {
    if (k < mode) before *= mode_dims[k];
    if (k > mode) after *= mode_dims[k];
  }
  const CMatrix left = CMatrix::Identity(static_cast<Eigen::Index>(before), static_cast<Eigen::Index>(before));
  const CMatrix right = CMatrix::Identity(static_cast<Eigen::Index>(after), static_cast<Eigen::Index>(after));
  return Eigen::kroneckerProduct(Eigen::kroneckerProduct(left, op).eval(), right).eval();
}

TruncationReport truncation_report(const FockKet& ket, double tail_tolerance) {
  const Eigen::VectorXd populations = ket.amplitudes.cwiseAbs2();
  const double missing = std::abs(1.0 - populations.sum());
  return make_report(std::max(top_level_weight(populations, ket.mode_dims), missing), tail_tolerance);
}

TruncationReport truncation_report(const FockOperator& rho, double tail_tolerance) {
  const Eigen::VectorXd populations = rho.entries.diagonal().real();
  const double missing = std::abs(1.0 - populations.sum());
  return make_report(std::max(top_level_weight(populations, rho.mode_dims), missing), tail_tolerance);
}

FockKet tmsv_ket(double ns, std::size_t dim) { return tmsv_ket(ns, dim, dim); }

FockKet tmsv_ket(double ns, std::size_t signal_dim, std::size_t idler_dim) {
  if (!(ns >= 0) || !std::isfinite(ns)) {
    throw ValidationError("tmsv_ket: N_S must be finite and >= 0");
  }
  require_dim(signal_dim, "tmsv_ket");
  require_dim(idler_dim, "tmsv_ket");
  FockKet ket{{signal_dim, idler_dim}, CVector::Zero(static_cast<Eigen::Index>(signal_dim * idler_dim))};
  const double ratio = ns / (1 + ns);
  const std::size_t levels = std::min(signal_dim, idler_dim);
  for (std::size_t n = 0; n < levels; ++n) {
    const double amplitude = std::sqrt(std::pow(ratio, static_cast<double>(n)) / (1 + ns));
    ket.amplitudes(static_cast<Eigen::Index>(n * idler_dim + n)) = amplitude;
  }
  return ket;
}

FockOperator squeeze_unitary_single(double r, std::size_t dim) {
  if (!std::isfinite(r)) {
    throw ValidationError("squeeze_unitary_single: r must be finite");
  }
  const Eigen::MatrixXd a = annihilation(dim);
  const Eigen::MatrixXd a2 = a * a;
  const Eigen::MatrixXd generator = (r / 2) * (a2.transpose() - a2);
  const Eigen::MatrixXd u = generator.exp();
  return FockOperator{{dim}, u.cast<Complex>()};
}

FockOperator squeeze_unitary_two(double r, const std::vector<std::size_t>& mode_dims) {
  if (!std::isfinite(r)) {
    throw ValidationError("squeeze_unitary_two: r must be finite");
  }
  if (mode_dims.size() != 2) {
    throw ValidationError("squeeze_unitary_two needs exactly two modes");
  }
  const Eigen::MatrixXd a1 = Eigen::kroneckerProduct(
      annihilation(mode_dims[0]), Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(mode_dims[1]),
                                                            static_cast<Eigen::Index>(mode_dims[1])));
  const Eigen::MatrixXd a2 = Eigen::kroneckerProduct(
      Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(mode_dims[0]), static_cast<Eigen::Index>(mode_dims[0])),
      annihilation(mode_dims[1]));
  const Eigen::MatrixXd pair = a1 * a2;
  const Eigen::MatrixXd generator = r * (pair.transpose() - pair);
  const Eigen::MatrixXd u = generator.exp();
  return FockOperator{mode_dims, u.cast<Complex>()};
}

FockOperator thermal_state(double n, std::size_t dim) {
  if (!(n >= 0) || !std::isfinite(n)) {
    throw ValidationError("thermal_state: mean photon number must be finite and >= 0");
  }
  require_dim(dim, "thermal_state");
  const auto d = static_cast<Eigen::Index>(dim);
  CMatrix rho = CMatrix::Zero(d, d);
  const double ratio = n / (1 + n);
  for (Eigen::Index k = 0; k < d; ++k) {
    rho(k, k) = std::pow(ratio, static_cast<double>(k)) / (1 + n);
  }
  return FockOperator{{dim}, std::move(rho)};
}

FockOperator lossy_thermal_channel(const FockOperator& rho_signal_idler, double kappa, double nb,
                                   std::size_t env_dim) {
  if (!(kappa >= 0 && kappa < 1)) {
    throw ValidationError("lossy_thermal_channel: kappa must lie in [0, 1)");
  }
  if (!(nb >= 0) || !std::isfinite(nb)) {
    throw ValidationError("lossy_thermal_channel: N_B must be finite and >= 0");
  }
  if (rho_signal_idler.mode_dims.size() != 2) {
    throw ValidationError("lossy_thermal_channel expects a signal-idler (two-mode) state");
  }
  require_density_operator(rho_signal_idler, "lossy_thermal_channel");
  require_dim(env_dim, "lossy_thermal_channel");

  const std::size_t ds = rho_signal_idler.mode_dims[0];
  const std::size_t di = rho_signal_idler.mode_dims[1];
  const auto s_dim = static_cast<Eigen::Index>(ds);
  const auto i_dim = static_cast<Eigen::Index>(di);
  const auto e_dim = static_cast<Eigen::Index>(env_dim);

  // Beamsplitter on signal (x) environment with cos(theta) = sqrt(kappa).
  const double theta = std::acos(std::sqrt(kappa));
  const Eigen::MatrixXd as = Eigen::kroneckerProduct(annihilation(ds), Eigen::MatrixXd::Identity(e_dim, e_dim));
  const Eigen::MatrixXd ae = Eigen::kroneckerProduct(Eigen::MatrixXd::Identity(s_dim, s_dim), annihilation(env_dim));
  const Eigen::MatrixXd hop = as.transpose() * ae;
  const Eigen::MatrixXd generator = theta * (hop - hop.transpose());
  const Eigen::MatrixXd bs = generator.exp();

  const FockOperator env = thermal_state(nb / (1 - kappa), env_dim);

  Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho_signal_idler.entries);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("lossy_thermal_channel: input eigensolver did not converge");
  }
  const Eigen::VectorXd weights = clamped_spectrum(solver.eigenvalues(), "lossy_thermal_channel");
  const double weight_floor = 1e-16 * std::max(1.0, weights.maxCoeff());

  CMatrix out = CMatrix::Zero(s_dim * i_dim, s_dim * i_dim);
  CMatrix columns(s_dim * i_dim, e_dim);
  for (Eigen::Index j = 0; j < weights.size(); ++j) {
    if (weights(j) <= weight_floor) continue;
    // Eigenvector reshaped to (signal, idler).
    const CMatrix v = solver.eigenvectors().col(j).reshaped<Eigen::RowMajor>(s_dim, i_dim);
    for (Eigen::Index k = 0; k < e_dim; ++k) {
      const double pk = env.entries(k, k).real();
      if (pk * weights(j) <= weight_floor * 1e-4) continue;
      // Columns of the beamsplitter acting on |s> (x) |k>.
      CMatrix w(s_dim * e_dim, s_dim);
      for (Eigen::Index s = 0; s < s_dim; ++s) {
        w.col(s) = bs.col(s * e_dim + k).cast<Complex>();
      }
      const CMatrix psi = w * v;  // rows (s', e'), columns idler
      for (Eigen::Index s = 0; s < s_dim; ++s) {
        for (Eigen::Index e = 0; e < e_dim; ++e) {
          columns.block(s * i_dim, e, i_dim, 1) = psi.row(s * e_dim + e).transpose();
        }
      }
      out.noalias() += (weights(j) * pk) * (columns * columns.adjoint());
    }
  }
  out = ((out + out.adjoint()) / 2.0).eval();
  return FockOperator{rho_signal_idler.mode_dims, std::move(out)};
}

Eigen::VectorXd quadrature_means(const FockOperator& rho) {
  const auto n = rho.mode_dims.size();
  Eigen::VectorXd mean(static_cast<Eigen::Index>(2 * n));
  for (std::size_t j = 0; j < n; ++j) {
    const CMatrix a = embed(annihilation(rho.mode_dims[j]).cast<Complex>(), rho.mode_dims, j);
    const Complex alpha = (rho.entries * a).trace();
    mean(static_cast<Eigen::Index>(2 * j)) = 2 * alpha.real();
    mean(static_cast<Eigen::Index>(2 * j + 1)) = 2 * alpha.imag();
  }
  return mean;
}

CovarianceMatrix covariance_of(const FockOperator& rho) {
  require_density_operator(rho, "covariance_of");
  const auto n = rho.mode_dims.size();
  const auto dim = static_cast<Eigen::Index>(2 * n);
  const Complex i_unit(0, 1);

  std::vector<CMatrix> quadratures;
  quadratures.reserve(2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    const CMatrix a = embed(annihilation(rho.mode_dims[j]).cast<Complex>(), rho.mode_dims, j);
    quadratures.push_back(a + a.adjoint());
    quadratures.push_back(-i_unit * (a - a.adjoint()));
  }
  const Complex trace = rho.entries.trace();
  std::vector<CMatrix> rho_r;
  Eigen::VectorXd mean(dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    rho_r.push_back(rho.entries * quadratures[static_cast<std::size_t>(k)]);
    mean(k) = (rho_r.back().trace() / trace).real();
  }
  Matrix v(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    for (Eigen::Index l = 0; l <= k; ++l) {
      // Tr[rho r_k r_l] = sum_ij (rho r_k)_ij (r_l)_ji
      const Complex kl = (rho_r[static_cast<std::size_t>(k)].array() *
                          quadratures[static_cast<std::size_t>(l)].transpose().array())
                             .sum();
      const double sym = kl.real() / trace.real();
      v(k, l) = v(l, k) = static_cast<Real>(sym - mean(k) * mean(l));
    }
  }
  return CovarianceMatrix(std::move(v));
}

double q_s_numeric(const FockOperator& rho0, const FockOperator& rho1, double s) {
  if (!(s >= 0 && s <= 1)) {
    throw ValidationError("q_s_numeric needs s in [0, 1]");
  }
  require_density_operator(rho0, "q_s_numeric");
  require_density_operator(rho1, "q_s_numeric");
  if (rho0.mode_dims != rho1.mode_dims) {
    throw ValidationError("q_s_numeric: operators act on different spaces");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> e0(rho0.entries);
  Eigen::SelfAdjointEigenSolver<CMatrix> e1(rho1.entries);
  if (e0.info() != Eigen::Success || e1.info() != Eigen::Success) {
    throw NumericalError("q_s_numeric: eigensolver did not converge");
  }
  const Eigen::VectorXd l0 = clamped_spectrum(e0.eigenvalues(), "q_s_numeric").array().pow(s);
  const Eigen::VectorXd l1 = clamped_spectrum(e1.eigenvalues(), "q_s_numeric").array().pow(1 - s);
  const CMatrix p0 = e0.eigenvectors() * l0.cast<Complex>().asDiagonal() * e0.eigenvectors().adjoint();
  const CMatrix p1 = e1.eigenvectors() * l1.cast<Complex>().asDiagonal() * e1.eigenvectors().adjoint();
  const Complex trace = (p0.array() * p1.transpose().array()).sum();
  if (std::abs(trace.imag()) > kImaginaryTolerance) {
    throw NumericalError("q_s_numeric: trace has imaginary part " + std::to_string(trace.imag()));
  }
  return trace.real();
}

double helstrom_error_single_copy(const FockOperator& rho0, const FockOperator& rho1) {
  require_density_operator(rho0, "helstrom_error_single_copy");
  require_density_operator(rho1, "helstrom_error_single_copy");
  if (rho0.mode_dims != rho1.mode_dims) {
    throw ValidationError("helstrom_error_single_copy: operators act on different spaces");
  }
  // Same positivity screening as q_s_numeric.
  for (const auto* rho : {&rho0, &rho1}) {
    Eigen::SelfAdjointEigenSolver<CMatrix> check(rho->entries, Eigen::EigenvaluesOnly);
    clamped_spectrum(check.eigenvalues(), "helstrom_error_single_copy");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> diff(rho0.entries - rho1.entries, Eigen::EigenvaluesOnly);
  if (diff.info() != Eigen::Success) {
    throw NumericalError("helstrom_error_single_copy: eigensolver did not converge");
  }
  const double trace_norm = diff.eigenvalues().cwiseAbs().sum();
  return 0.5 * (1 - 0.5 * trace_norm);
}

OracleHypotheses oracle_hypotheses(const ScenarioParams& params, const OracleDims& dims, double tail_tolerance) {
  params.validate();
  FockKet ket = tmsv_ket(static_cast<double>(params.ns), dims.signal, dims.idler);
  const auto s_dim = static_cast<Eigen::Index>(dims.signal);
  const auto i_dim = static_cast<Eigen::Index>(dims.idler);

  switch (params.kind) {
    case ProbeKind::tmsv:
      break;
    case ProbeKind::tss: {
      const CMatrix u1 = squeeze_unitary_single(static_cast<double>(params.r1), dims.signal).entries;
      const CMatrix u2 = squeeze_unitary_single(static_cast<double>(params.r2), dims.idler).entries;
      const CMatrix psi = ket.amplitudes.reshaped<Eigen::RowMajor>(s_dim, i_dim);
      const CMatrix out = u1 * psi * u2.transpose();
      ket.amplitudes = out.reshaped<Eigen::RowMajor>();
      break;
    }
    case ProbeKind::tms: {
      const FockOperator u = squeeze_unitary_two(static_cast<double>(params.r), ket.mode_dims);
      ket.amplitudes = (u.entries * ket.amplitudes).eval();
      break;
    }
  }

  FockOperator probe = FockOperator::projector(ket);
  const auto kappa = static_cast<double>(params.kappa);
  const auto nb = static_cast<double>(params.nb);
  OracleHypotheses out{ket, lossy_thermal_channel(probe, 0.0, nb, dims.env),
                       lossy_thermal_channel(probe, kappa, nb, dims.env), {}};
  out.truncation = truncation_report(ket, tail_tolerance);
  out.truncation.merge(truncation_report(thermal_state(nb / (1 - kappa), dims.env), tail_tolerance));
  out.truncation.merge(truncation_report(out.rho0, tail_tolerance));
  out.truncation.merge(truncation_report(out.rho1, tail_tolerance));
  return out;
}

}  // namespace qillum

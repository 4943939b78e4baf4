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

// Brute-force validator on a truncated Fock space. States are dense
// vectors/matrices; multi-mode indices are row-major in mode order
// (mode 0 slowest). Nothing here depends on the Gaussian machinery except
// covariance_of, which bridges the two representations.

#include <cstddef>
#include <vector>

#include "qillum/illumination.hpp"
#include "qillum/linalg.hpp"

namespace qillum {

inline constexpr double kDefaultTailTolerance = 1e-8;

/// Probability weight sitting in the top two Fock levels of the worst mode
/// (or the missing trace, if larger).
struct TruncationReport {
  double tail_mass = 0;
  bool converged = true;

  void merge(const TruncationReport& other);
};

struct FockKet {
  std::vector<std::size_t> mode_dims;
  CVector amplitudes;

  std::size_t dim() const { return static_cast<std::size_t>(amplitudes.size()); }
};

/// Dense operator on a truncated multi-mode Fock space: density operators
/// and unitaries.
struct FockOperator {
  std::vector<std::size_t> mode_dims;
  CMatrix entries;

  std::size_t dim() const { return static_cast<std::size_t>(entries.rows()); }
  /// |psi><psi|.
  static FockOperator projector(const FockKet& ket);
};

std::size_t total_dim(const std::vector<std::size_t>& mode_dims);

/// Annihilation operator on one mode, dim x dim.
Eigen::MatrixXd annihilation(std::size_t dim);

/// Lifts a single-mode operator to mode `mode` of the product space.
CMatrix embed(const CMatrix& op, const std::vector<std::size_t>& mode_dims, std::size_t mode);

TruncationReport truncation_report(const FockKet& ket, double tail_tolerance = kDefaultTailTolerance);
TruncationReport truncation_report(const FockOperator& rho, double tail_tolerance = kDefaultTailTolerance);

/// sum_n sqrt(N^n / (1+N)^(n+1)) |n, n>, cut at `dim` levels per mode and
/// not renormalized.
FockKet tmsv_ket(double ns, std::size_t dim);
FockKet tmsv_ket(double ns, std::size_t signal_dim, std::size_t idler_dim);

/// Single-mode squeezer whose Heisenberg action matches
/// single_mode_squeeze_symplectic: x -> e^r x, p -> e^-r p.
FockOperator squeeze_unitary_single(double r, std::size_t dim);

/// Two-mode squeezer matching two_mode_squeeze_symplectic; on |0, 0> it
/// prepares a TMSV with N_S = sinh^2 r.
FockOperator squeeze_unitary_two(double r, const std::vector<std::size_t>& mode_dims);

FockOperator thermal_state(double n, std::size_t dim);

/// Mixes mode 0 of a two-mode state with a thermal bath of mean
/// N_B / (1 - kappa) on a beamsplitter of transmissivity kappa, keeping
/// a_R = sqrt(kappa) a_S + sqrt(1 - kappa) a_E, and traces out the bath.
/// Mode 1 (idler) is untouched.
FockOperator lossy_thermal_channel(const FockOperator& rho_signal_idler, double kappa, double nb,
                                   std::size_t env_dim);

/// Quadrature covariance in the vacuum-variance-1 convention.
CovarianceMatrix covariance_of(const FockOperator& rho);

/// Per-mode quadrature means.
Eigen::VectorXd quadrature_means(const FockOperator& rho);

/// Tr[rho0^s rho1^(1-s)] from the spectra of both operators.
double q_s_numeric(const FockOperator& rho0, const FockOperator& rho1, double s);

/// Minimum single-copy error with equal priors: (1 - ||rho0 - rho1||_1 / 2) / 2.
double helstrom_error_single_copy(const FockOperator& rho0, const FockOperator& rho1);

struct OracleDims {
  std::size_t signal = 14;
  std::size_t idler = 14;
  std::size_t env = 24;
};

struct OracleHypotheses {
  FockKet probe;
  FockOperator rho0;
  FockOperator rho1;
  TruncationReport truncation;
};

/// Prepares the probe of params.kind by acting with the squeezing
/// unitaries on a truncated TMSV ket and sends it through the channel with
/// kappa (target present) and kappa = 0 (target absent).
OracleHypotheses oracle_hypotheses(const ScenarioParams& params, const OracleDims& dims,
                                   double tail_tolerance = kDefaultTailTolerance);

}  // namespace qillum

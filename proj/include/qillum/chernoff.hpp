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

// Quantum Chernoff and Bhattacharyya bounds for Gaussian hypothesis pairs,
// the coherent-state benchmark, large-N_B asymptotics and advantage factors.
//
// Every bound is carried in the log domain: `exponent_per_copy` stays exact
// when 0.5 * Q^M underflows.

#include <cstdint>

#include "qillum/illumination.hpp"

namespace qillum {

struct OverlapResult {
  Real s = 0;
  Real q_s = 1;
  Real log_q_s = 0;
};

struct BoundResult {
  Real value = 0.5;  // 0.5 * Q^M; may underflow to 0
  Real log_value = 0;
  std::uint64_t m_copies = 1;
  Real s_used = 0.5;
  bool optimized = false;
  Real exponent_per_copy = 0;  // -ln(2 * value) / M

  /// -ln(2 * value) = M * exponent_per_copy.
  Real total_exponent() const { return exponent_per_copy * static_cast<Real>(m_copies); }
};

struct AdvantageResult {
  Real gamma = 0;
  Real decibels = 0;
};

/// Lambda_p(x) = ((x+1)^p + (x-1)^p) / ((x+1)^p - (x-1)^p); Lambda_p(1) = 1.
Real lambda_p(Real p, Real x);

/// G_p(x) = 2^p / ((x+1)^p - (x-1)^p); G_p(1) = 1.
Real g_p(Real p, Real x);

/// ln G_p(x), stable for large x and small p.
Real log_g_p(Real p, Real x);

/// Tr[rho0^s rho1^(1-s)] for Gaussian states with given Williamson data.
/// s in [0, 1]; s = 0 and s = 1 return the normalization limit 1, interior
/// values are clamped to [1e-9, 1 - 1e-9].
OverlapResult q_s(const GaussianState& rho0, const WilliamsonDecomposition& w0, const GaussianState& rho1,
                  const WilliamsonDecomposition& w1, Real s);

OverlapResult q_s(const HypothesisPair& pair, Real s);

/// Sigma(s) = Sigma_0(s) + Sigma_1(1 - s).
Matrix sigma_matrix(const WilliamsonDecomposition& w0, const WilliamsonDecomposition& w1, Real s);

/// det Sigma(s) through the x1..x6 factorization of the TSS structure.
struct TssSigmaFactors {
  Real x1 = 0, x2 = 0, x3 = 0, x4 = 0, x5 = 0, x6 = 0;
  Real det() const { return (x1 * x3 - x5 * x5) * (x2 * x4 - x6 * x6); }
};
TssSigmaFactors tss_sigma_factors(const TssWilliamsonData& data, Real s);

/// y1(s), y2(s), z3(s) of the TMS structure; sqrt(det Sigma) = y1 y2 - z3^2.
struct TmsSigmaTerms {
  Real y1 = 0, y2 = 0, z3 = 0;
  Real sqrt_det() const { return y1 * y2 - z3 * z3; }
};
TmsSigmaTerms tms_sigma_terms(const TmsWilliamsonData& data, Real s);

/// 0.5 * Q_{1/2}^M.
BoundResult qb_bound(const HypothesisPair& pair, std::uint64_t m);

/// 0.5 * (min_s Q_s)^M. The minimum is bracketed on a 101-point grid and
/// refined with Brent's method to 1e-10 in s; never exceeds the s = 1/2 value.
BoundResult qc_bound(const HypothesisPair& pair, std::uint64_t m);

/// Coherent-state illumination, exact pre-approximation exponent.
BoundResult coherent_qb_bound(Real ns, Real nb, Real kappa, std::uint64_t m);

/// Coherent-state illumination, large-N_B exponent M kappa N_S / (4 N_B).
BoundResult coherent_qb_asymptotic(Real ns, Real nb, Real kappa, std::uint64_t m);

/// TMSV large-N_B asymptote kappa C^2 / (4 N_B (A + sqrt(A^2 - 1))) per copy.
BoundResult tmsv_qb_asymptotic(const ScenarioParams& params);

struct TssAsymptotic {
  BoundResult bound;
  Real k1 = 0;
  Real k2 = 0;
};
TssAsymptotic tss_qb_asymptotic(const ScenarioParams& params);

struct TmsAsymptotic {
  BoundResult bound;
  Real j1 = 0;
  Real j2 = 0;
};
TmsAsymptotic tms_qb_asymptotic(const ScenarioParams& params);

/// Advantage of the TSS probe over coherent illumination at equal signal
/// photon number. n1 = sinh^2 r1.
AdvantageResult gamma1(Real ns, Real n1);

/// The same ratio written in terms of N~_S = N_S + 2 n1 N_S + n1.
Real gamma1_from_signal_photons(Real signal_photons, Real n1);

/// Advantage of the TMS probe.
AdvantageResult gamma2(Real ns, Real r);

/// r1 > 0 where gamma1(ns, sinh^2 r1) = 1, by bisection on [0, 20] to 1e-10.
Real critical_r1(Real ns);

}  // namespace qillum

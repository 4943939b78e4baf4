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

// Hypothesis covariance matrices for quantum illumination with a two-mode
// squeezed vacuum probe (TMSV), the same probe after local single-mode
// squeezers (TSS), and after a global two-mode squeezer (TMS).
//
// Target absent: the return mode is a thermal state with mean N_B.
// Target present: a_R = sqrt(kappa) a_S + sqrt(1 - kappa) a_B with the bath
// at mean N_B / (1 - kappa), so both hypotheses show background N_B.
// The idler is noiseless in both.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "qillum/symplectic.hpp"

namespace qillum {

enum class ProbeKind { tmsv, tss, tms };

std::string_view to_string(ProbeKind kind);
/// Accepts "tmsv", "tss", "tms" (case-sensitive).
ProbeKind parse_probe_kind(std::string_view text);

struct ScenarioParams {
  ProbeKind kind = ProbeKind::tmsv;
  Real ns = 0;     // mean signal photon number of the seed TMSV
  Real nb = 0;     // background mean photon number
  Real kappa = 0;  // target reflectivity, [0, 1)
  Real r1 = 0;     // TSS: signal-mode squeeze
  Real r2 = 0;     // TSS: idler-mode squeeze
  Real r = 0;      // TMS: two-mode squeeze
  std::uint64_t m = 1;

  /// Throws ValidationError on out-of-range values or on squeeze parameters
  /// set for a kind that does not use them.
  void validate() const;
};

struct ModePhotonNumbers {
  Real signal = 0;
  Real idler = 0;
};

struct Probe {
  CovarianceMatrix cov;
  ModePhotonNumbers photons;
};

struct HypothesisPair {
  CovarianceMatrix v0;
  CovarianceMatrix v1;
  WilliamsonDecomposition w0;
  WilliamsonDecomposition w1;
  Vector mean0;
  Vector mean1;
  // True when the closed-form decomposition of v1 was unusable (degenerate
  // spectrum) and the generic numerical route was substituted.
  bool w1_fallback = false;

  GaussianState state0() const { return GaussianState{mean0, v0}; }
  GaussianState state1() const { return GaussianState{mean1, v1}; }
};

/// Closed-form Williamson data of the TSS target-present covariance.
struct TssWilliamsonData {
  Real a = 0, b = 0, c = 0;
  Real gamma1_plus = 0, gamma1_minus = 0, gamma2_plus = 0, gamma2_minus = 0;
  Real f_plus = 0, f_minus = 0;
  Real g = 0, h = 0, g_plus = 0, g_minus = 0, h_plus = 0, h_minus = 0;
  Real xi = 0;
  Real beta1 = 0, beta2 = 0;
  Real delta1 = 0, delta2 = 0;
  Real zeta = 0;
  Real y1 = 0, y2 = 0, y3 = 0, y4 = 0, y5 = 0, y6 = 0, y5p = 0, y6p = 0;

  /// Rows of S_V1: [[y1, 0, y5, 0], [0, y2, 0, y6], [y5', 0, y3, 0], [0, y6', 0, y4]].
  Matrix transform() const;
};

/// Closed-form Williamson data of the TMS target-present covariance (the
/// TMSV case is r = 0).
struct TmsWilliamsonData {
  Real a_tilde = 0, c_tilde = 0, f_tilde = 0, b = 0;
  Real beta1 = 0, beta2 = 0;
  Real x_plus = 0, x_minus = 0;

  /// [[X+, X-], [X-, X+]] with X+ = diag(x+, x+), X- = diag(x-, -x-).
  Matrix transform() const;
};

/// Hypothesis covariances for the plain TMSV probe.
HypothesisPair tmsv_hypotheses(const ScenarioParams& params);

Probe tss_probe(Real ns, Real r1, Real r2);

/// Evaluates the closed-form symplectic eigenvalues and transform
/// coefficients. Does not check for degeneracy; see tss_hypotheses.
TssWilliamsonData tss_closed_form(const ScenarioParams& params);

/// For kind == tss. Uses the closed form unless |Delta_1| or |Delta_2| is
/// below 1e-12 or the closed form fails to reassemble v1, in which case
/// the generic route is used and w1_fallback is set.
HypothesisPair tss_hypotheses(const ScenarioParams& params);

Probe tms_probe(Real ns, Real r);

TmsWilliamsonData tms_closed_form(const ScenarioParams& params);

HypothesisPair tms_hypotheses(const ScenarioParams& params);

/// Dispatches on params.kind.
HypothesisPair build_hypotheses(const ScenarioParams& params);

/// Probe covariance and photon numbers for params.kind.
Probe build_probe(const ScenarioParams& params);

/// Coefficients x+- of the TMSV closed-form transform; the TSS
/// coefficients y1..y6 reduce to these at r1 = r2 = 0.
std::pair<Real, Real> tmsv_x_coefficients(const ScenarioParams& params);

}  // namespace qillum

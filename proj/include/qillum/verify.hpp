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

#include <string>
#include <vector>

#include "qillum/fock.hpp"

namespace qillum {

struct OracleCheck {
  std::string scenario;
  std::string name;
  double residual = 0;
  double threshold = 0;
  bool pass = false;
};

struct OracleReport {
  std::vector<OracleCheck> checks;

  bool all_pass() const;
  std::string to_text() const;
};

constexpr double kOracleCovarianceTolerance = 1e-5;
constexpr double kOracleOverlapTolerance = 1e-3;
constexpr double kOracleMaxBackground = 1.0;

/// Oracle-friendly defaults: (N_S, N_B, kappa) = (0.1, 0.2, 0.1) and one scenario per probe kind.
std::vector<ScenarioParams> default_oracle_scenarios();

/// Runs each scenario through the Fock oracle and the Gaussian pipeline and
/// compares them. Throws RegimeError when N_B exceeds kOracleMaxBackground.
OracleReport verify_oracle(const std::vector<ScenarioParams>& scenarios, const OracleDims& dims,
                           double tail_tolerance = kDefaultTailTolerance);

/// "S,I,E" or one value applied to the signal and idler modes.
OracleDims parse_dims(const std::string& text);

}  // namespace qillum

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

#include "qillum/verify.hpp"

#include <algorithm>
#include <sstream>

#include "qillum/chernoff.hpp"
#include "qillum/error.hpp"
#include "qillum/sweep.hpp"

namespace qillum {

std::vector<ScenarioParams> default_oracle_scenarios() {
  ScenarioParams base;
  base.ns = 0.1;
  base.nb = 0.2;
  base.kappa = 0.1;

  ScenarioParams tmsv = base;
  ScenarioParams tss = base;
  tss.kind = ProbeKind::tss;
  tss.r1 = 0.15;
  tss.r2 = 0.1;
  ScenarioParams tms = base;
  tms.kind = ProbeKind::tms;
  tms.r = 0.15;
  return {tmsv, tss, tms};
}

bool OracleReport::all_pass() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const OracleCheck& c) { return c.pass; });
}

std::string OracleReport::to_text() const {
  std::ostringstream out;
  for (const auto& c : checks) {
    out << (c.pass ? "PASS " : "FAIL ") << c.scenario << ' ' << c.name << " residual=" << format_number(c.residual)
        << " threshold=" << format_number(c.threshold) << '\n';
  }
  out << (all_pass() ? "oracle verification passed" : "oracle verification FAILED") << '\n';
  return out.str();
}

OracleReport verify_oracle(const std::vector<ScenarioParams>& scenarios, const OracleDims& dims,
                           double tail_tolerance) {
  for (const auto& p : scenarios) {
    p.validate();
    if (p.nb > kOracleMaxBackground) {
      throw RegimeError("N_B = " + format_number(static_cast<double>(p.nb)) +
                        " is outside the oracle regime: a thermal background that bright needs far more Fock levels "
                        "than a dense simulation can hold (N_B <= 1 required); use the exact Gaussian bounds instead");
    }
  }
  OracleReport report;
  for (const auto& p : scenarios) {
    std::ostringstream label;
    label << to_string(p.kind) << "(ns=" << format_number(static_cast<double>(p.ns))
          << ",nb=" << format_number(static_cast<double>(p.nb))
          << ",kappa=" << format_number(static_cast<double>(p.kappa));
    if (p.kind == ProbeKind::tss) {
      label << ",r1=" << format_number(static_cast<double>(p.r1)) << ",r2=" << format_number(static_cast<double>(p.r2));
    } else if (p.kind == ProbeKind::tms) {
      label << ",r=" << format_number(static_cast<double>(p.r));
    }
    label << ')';
    const std::string name = label.str();

    const auto oracle = oracle_hypotheses(p, dims, tail_tolerance);
    // Stop before comparing numbers from an under-resolved state.
    report.checks.push_back({name, "truncation_tail", oracle.truncation.tail_mass, tail_tolerance,
                             oracle.truncation.converged});
    if (!oracle.truncation.converged) {
      continue;
    }

    const auto gaussian = build_hypotheses(p);
    const double cov_residual = static_cast<double>(
        std::max((covariance_of(oracle.rho1).matrix() - gaussian.v1.matrix()).cwiseAbs().maxCoeff(),
                 (covariance_of(oracle.rho0).matrix() - gaussian.v0.matrix()).cwiseAbs().maxCoeff()));
    report.checks.push_back(
        {name, "covariance_max_abs", cov_residual, kOracleCovarianceTolerance, cov_residual <= kOracleCovarianceTolerance});

    const double q_gauss = static_cast<double>(q_s(gaussian, 0.5).q_s);
    const double q_fock = q_s_numeric(oracle.rho0, oracle.rho1, 0.5);
    const double q_residual = std::abs(q_fock - q_gauss) / q_gauss;
    report.checks.push_back(
        {name, "q_half_relative", q_residual, kOracleOverlapTolerance, q_residual <= kOracleOverlapTolerance});

    // Helstrom <= QB at M = 1; residual is the (non-positive when passing) excess.
    const double helstrom = helstrom_error_single_copy(oracle.rho0, oracle.rho1);
    const double excess = helstrom - q_fock / 2;
    report.checks.push_back({name, "helstrom_minus_qb", excess, 0.0, excess <= 0});
  }
  return report;
}

OracleDims parse_dims(const std::string& text) {
  const auto values = parse_grid(text);
  auto as_dim = [&](double v) {
    if (!(v >= 2) || v != static_cast<double>(static_cast<std::size_t>(v)) || v > 4096) {
      throw ValidationError("--dims: entries must be integers in [2, 4096], got '" + text + "'");
    }
    return static_cast<std::size_t>(v);
  };
  if (text.find(':') != std::string::npos) {
    throw ValidationError("--dims: expected 'S,I,E' or a single value");
  }
  if (values.size() == 1) {
    OracleDims d;
    d.signal = d.idler = as_dim(values[0]);
    return d;
  }
  if (values.size() == 3) {
    return OracleDims{as_dim(values[0]), as_dim(values[1]), as_dim(values[2])};
  }
  throw ValidationError("--dims: expected 'S,I,E' or a single value");
}

}  // namespace qillum

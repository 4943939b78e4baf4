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

#include "qillum/chernoff.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "checks.hpp"
#include "qillum/error.hpp"

namespace qillum {

namespace {

constexpr Real kSEdge = 1e-9L;
constexpr Real kLn2 = std::numbers::ln2_v<Real>;

// The grid bracket is refined to ~1e-10 in s.
constexpr int kBrentBits = 34;
constexpr std::uintmax_t kBrentMaxIter = 200;
constexpr int kScanPoints = 101;

void check_lambda_args(Real p, Real x) {
  if (!(p > 0 && p <= 1)) {
    throw ValidationError("Lambda_p / G_p need p in (0, 1], got " + std::to_string(static_cast<double>(p)));
  }
  if (!(x >= 1 - 1e-9L) || !std::isfinite(x)) {
    throw ValidationError("Lambda_p / G_p need x >= 1, got " + std::to_string(static_cast<double>(x)));
  }
}

// u = p ln((x-1)/(x+1)) <= 0; (x-1)^p / (x+1)^p = e^u.
Real log_ratio_power(Real p, Real x) { return p * std::log1p(-2 / (x + 1)); }

BoundResult make_bound(Real log_q, std::uint64_t m, Real s, bool optimized) {
  if (m < 1) {
    throw ValidationError("copy count M must be >= 1");
  }
  BoundResult out;
  out.m_copies = m;
  out.s_used = s;
  out.optimized = optimized;
  out.exponent_per_copy = -log_q;
  out.log_value = -kLn2 + static_cast<Real>(m) * log_q;
  out.value = std::exp(out.log_value);
  return out;
}

Real seed_a(Real ns) { return 2 * ns + 1; }
Real seed_c(Real ns) { return 2 * std::sqrt(ns * (1 + ns)); }

void require_asymptotic_regime(const ScenarioParams& p, ProbeKind kind) {
  p.validate();
  if (p.kind != kind) {
    throw ValidationError("scenario kind is " + std::string(to_string(p.kind)) + ", expected " +
                          std::string(to_string(kind)));
  }
  if (p.nb <= 0) {
    throw ValidationError("large-N_B asymptotics need N_B > 0");
  }
}

}  // namespace

Real lambda_p(Real p, Real x) {
  check_lambda_args(p, x);
  if (x <= 1) {
    return 1;
  }
  const Real u = log_ratio_power(p, x);
  return (1 + std::exp(u)) / -std::expm1(u);
}

Real log_g_p(Real p, Real x) {
  check_lambda_args(p, x);
  if (x <= 1) {
    return 0;
  }
  const Real u = log_ratio_power(p, x);
  return p * kLn2 - p * std::log(x + 1) - std::log(-std::expm1(u));
}

Real g_p(Real p, Real x) { return std::exp(log_g_p(p, x)); }

Matrix sigma_matrix(const WilliamsonDecomposition& w0, const WilliamsonDecomposition& w1, Real s) {
  const auto n = w0.sympl_eigenvalues.size();
  if (w1.sympl_eigenvalues.size() != n) {
    throw ValidationError("sigma_matrix: mode count mismatch");
  }
  Vector d0(2 * n);
  Vector d1(2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    d0(2 * k) = d0(2 * k + 1) = lambda_p(s, w0.sympl_eigenvalues[k]);
    d1(2 * k) = d1(2 * k + 1) = lambda_p(1 - s, w1.sympl_eigenvalues[k]);
  }
  const Matrix& s0 = w0.transform.matrix();
  const Matrix& s1 = w1.transform.matrix();
  Matrix sigma = s0 * d0.asDiagonal() * s0.transpose() + s1 * d1.asDiagonal() * s1.transpose();
  return ((sigma + sigma.transpose()) / 2).eval();
}

OverlapResult q_s(const GaussianState& rho0, const WilliamsonDecomposition& w0, const GaussianState& rho1,
                  const WilliamsonDecomposition& w1, Real s) {
  if (!(s >= 0 && s <= 1)) {
    throw ValidationError("q_s needs s in [0, 1]");
  }
  const auto n = rho0.cov.n_modes();
  if (rho1.cov.n_modes() != n || w0.sympl_eigenvalues.size() != n || w1.sympl_eigenvalues.size() != n ||
      rho0.mean.size() != rho1.mean.size()) {
    throw ValidationError("q_s: mode count mismatch");
  }
  if (s == 0 || s == 1) {
    return OverlapResult{s, 1, 0};
  }
  if (rho0.cov.matrix() == rho1.cov.matrix() && rho0.mean == rho1.mean) {
    return OverlapResult{s, 1, 0};
  }
  const Real se = std::clamp(s, kSEdge, 1 - kSEdge);

  const Matrix sigma = sigma_matrix(w0, w1, se);
  Eigen::LLT<Matrix> llt(sigma);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("q_s: Sigma(s) is not positive definite");
  }
  Real log_det = 0;
  for (Eigen::Index i = 0; i < sigma.rows(); ++i) {
    log_det += 2 * std::log(llt.matrixL()(i, i));
  }

  Real log_q = static_cast<Real>(n) * kLn2 - log_det / 2;
  for (std::size_t k = 0; k < n; ++k) {
    log_q += log_g_p(se, w0.sympl_eigenvalues[k]) + log_g_p(1 - se, w1.sympl_eigenvalues[k]);
  }
  const Vector d = rho0.mean - rho1.mean;
  if (d.squaredNorm() > 0) {
    log_q -= d.dot(llt.solve(d)) / 2;
  }
  return OverlapResult{s, std::exp(log_q), log_q};
}

OverlapResult q_s(const HypothesisPair& pair, Real s) {
  return q_s(pair.state0(), pair.w0, pair.state1(), pair.w1, s);
}

TssSigmaFactors tss_sigma_factors(const TssWilliamsonData& d, Real s) {
  const Real la1 = lambda_p(s, d.b);
  const Real la2 = lambda_p(s, d.a);
  const Real lb1 = lambda_p(1 - s, d.beta1);
  const Real lb2 = lambda_p(1 - s, d.beta2);
  const Real z2 = d.zeta * d.zeta;
  TssSigmaFactors f;
  f.x1 = la1 + d.y1 * d.y1 * lb1 + d.y5 * d.y5 * lb2;
  f.x2 = la1 + d.y2 * d.y2 * lb1 + d.y6 * d.y6 * lb2;
  f.x3 = la2 / z2 + d.y5p * d.y5p * lb1 + d.y3 * d.y3 * lb2;
  f.x4 = la2 * z2 + d.y6p * d.y6p * lb1 + d.y4 * d.y4 * lb2;
  f.x5 = d.y1 * d.y5p * lb1 + d.y3 * d.y5 * lb2;
  f.x6 = d.y2 * d.y6p * lb1 + d.y4 * d.y6 * lb2;
  return f;
}

TmsSigmaTerms tms_sigma_terms(const TmsWilliamsonData& d, Real s) {
  const Real lb1 = lambda_p(1 - s, d.beta1);
  const Real lb2 = lambda_p(1 - s, d.beta2);
  const Real xp2 = d.x_plus * d.x_plus;
  const Real xm2 = d.x_minus * d.x_minus;
  TmsSigmaTerms t;
  t.y1 = lb1 * xp2 + lb2 * xm2 + lambda_p(s, d.b);
  t.y2 = lb1 * xm2 + lb2 * xp2 + lambda_p(s, d.a_tilde);
  t.z3 = (lb1 + lb2) * d.x_plus * d.x_minus;
  return t;
}

BoundResult qb_bound(const HypothesisPair& pair, std::uint64_t m) {
  return make_bound(q_s(pair, 0.5L).log_q_s, m, 0.5L, false);
}

BoundResult qc_bound(const HypothesisPair& pair, std::uint64_t m) {
  auto log_q = [&pair](Real s) { return q_s(pair, std::clamp(s, kSEdge, 1 - kSEdge)).log_q_s; };

  // Safety net for the unimodality assumption: bracket the minimum on a grid.
  int best = 0;
  Real best_value = 0;
  for (int i = 0; i < kScanPoints; ++i) {
    const Real v = log_q(static_cast<Real>(i) / (kScanPoints - 1));
    if (i == 0 || v < best_value) {
      best = i;
      best_value = v;
    }
  }
  const Real lo = static_cast<Real>(std::max(best - 1, 0)) / (kScanPoints - 1);
  const Real hi = static_cast<Real>(std::min(best + 1, kScanPoints - 1)) / (kScanPoints - 1);

  std::uintmax_t iterations = kBrentMaxIter;
  const auto [s_min, v_min] = boost::math::tools::brent_find_minima(log_q, lo, hi, kBrentBits, iterations);
  if (iterations >= kBrentMaxIter) {
    throw NumericalError("qc_bound: minimization over s did not converge");
  }

  Real s_star = std::clamp(s_min, kSEdge, 1 - kSEdge);
  Real value = v_min;
  if (best_value < value) {
    s_star = std::clamp(static_cast<Real>(best) / (kScanPoints - 1), kSEdge, 1 - kSEdge);
    value = best_value;
  }
  const Real half = log_q(0.5L);
  if (half <= value) {
    s_star = 0.5L;
    value = half;
  }
  return make_bound(value, m, s_star, true);
}

BoundResult coherent_qb_bound(Real ns, Real nb, Real kappa, std::uint64_t m) {
  detail::require_nonnegative("N_S", ns);
  detail::require_nonnegative("N_B", nb);
  detail::require_nonnegative("kappa", kappa);
  if (kappa >= 1) {
    throw ValidationError("kappa must be < 1");
  }
  // (sqrt(1+N_B) - sqrt(N_B)) / (sqrt(1+N_B) + sqrt(N_B)) = 1 / (sqrt(1+N_B) + sqrt(N_B))^2
  const Real root_sum = std::sqrt(1 + nb) + std::sqrt(nb);
  const Real exponent = kappa * ns / (root_sum * root_sum);
  return make_bound(-exponent, m, 0.5L, false);
}

BoundResult coherent_qb_asymptotic(Real ns, Real nb, Real kappa, std::uint64_t m) {
  detail::require_nonnegative("N_S", ns);
  detail::require_nonnegative("kappa", kappa);
  detail::require_finite("N_B", nb);
  if (nb <= 0) {
    throw ValidationError("large-N_B asymptotics need N_B > 0");
  }
  return make_bound(-kappa * ns / (4 * nb), m, 0.5L, false);
}

BoundResult tmsv_qb_asymptotic(const ScenarioParams& p) {
  require_asymptotic_regime(p, ProbeKind::tmsv);
  const Real a = seed_a(p.ns);
  const Real c = seed_c(p.ns);
  const Real exponent = p.kappa * c * c / (4 * p.nb * (a + std::sqrt(a * a - 1)));
  return make_bound(-exponent, p.m, 0.5L, false);
}

TssAsymptotic tss_qb_asymptotic(const ScenarioParams& p) {
  require_asymptotic_regime(p, ProbeKind::tss);
  const Real a = seed_a(p.ns);
  const Real c = seed_c(p.ns);
  const Real root = std::sqrt(a * a - 1);
  const Real n1 = std::pow(std::sinh(p.r1), 2);
  const Real gsum = std::exp(2 * p.r1) + std::exp(-2 * p.r1);
  const Real kc2 = p.kappa * c * c;

  TssAsymptotic out;
  out.bound = make_bound(-kc2 * (2 * n1 + 1) / (4 * p.nb * (a + root)), p.m, 0.5L, false);
  const Real common = 2 * (2 - p.kappa) + p.kappa * a * gsum;
  if (root > 0) {
    out.k1 = common - kc2 / root * gsum;
    out.k2 = common - kc2 * a / (root * (a + root)) * gsum;
  } else {
    out.k1 = out.k2 = common;  // N_S = 0: C = 0 removes the singular terms
  }
  return out;
}

TmsAsymptotic tms_qb_asymptotic(const ScenarioParams& p) {
  require_asymptotic_regime(p, ProbeKind::tms);
  const Real a = seed_a(p.ns);
  const Real c = seed_c(p.ns);
  const Real at = a * std::cosh(2 * p.r) + c * std::sinh(2 * p.r);
  const Real ct = a * std::sinh(2 * p.r) + c * std::cosh(2 * p.r);
  const Real root = std::sqrt(at * at - 1);
  const Real kc2 = p.kappa * ct * ct;

  TmsAsymptotic out;
  out.bound = make_bound(-kc2 / (4 * p.nb * (at + root)), p.m, 0.5L, false);
  const Real common = 2 - p.kappa + p.kappa * at;
  if (root > 0) {
    out.j1 = common - kc2 / root;
    out.j2 = common - kc2 * at / (root * (at + root));
  } else {
    out.j1 = out.j2 = common;
  }
  return out;
}

AdvantageResult gamma1(Real ns, Real n1) {
  detail::require_nonnegative("N_S", ns);
  detail::require_nonnegative("n1", n1);
  if (ns == 0) {
    throw ValidationError("gamma1 needs N_S > 0");
  }
  const Real root_sum = std::sqrt(1 + ns) + std::sqrt(ns);
  const Real signal = ns + 2 * n1 * ns + n1;
  const Real gamma = 4 * ns * (1 + ns) * (2 * n1 + 1) / (signal * root_sum * root_sum);
  return AdvantageResult{gamma, 10 * std::log10(gamma)};
}

Real gamma1_from_signal_photons(Real signal_photons, Real n1) {
  detail::require_nonnegative("n1", n1);
  if (!(signal_photons > n1)) {
    throw ValidationError("gamma1 needs N~_S > n1");
  }
  const Real lower = signal_photons - n1;
  const Real upper = signal_photons + n1 + 1;
  const Real root_sum = std::sqrt(upper) + std::sqrt(lower);
  return 4 * lower * upper / (signal_photons * root_sum * root_sum);
}

AdvantageResult gamma2(Real ns, Real r) {
  detail::require_nonnegative("N_S", ns);
  detail::require_finite("r", r);
  const Real a = seed_a(ns);
  const Real c = seed_c(ns);
  const Real at = a * std::cosh(2 * r) + c * std::sinh(2 * r);
  const Real ct = a * std::sinh(2 * r) + c * std::cosh(2 * r);
  // (A~ - 1) / 2 expanded so that small N_S at r = 0 does not cancel.
  const Real n_bar = ns * std::cosh(2 * r) + std::pow(std::sinh(r), 2) + c * std::sinh(2 * r) / 2;
  if (!(n_bar > 0)) {
    throw ValidationError("gamma2 needs a probe with nonzero photon number");
  }
  const Real gamma = ct * ct / (n_bar * (at + std::sqrt(at * at - 1)));
  return AdvantageResult{gamma, 10 * std::log10(gamma)};
}

Real critical_r1(Real ns) {
  detail::require_nonnegative("N_S", ns);
  if (ns == 0) {
    throw ValidationError("critical_r1 needs N_S > 0");
  }
  auto excess = [ns](Real r1) { return gamma1(ns, std::pow(std::sinh(r1), 2)).gamma - 1; };
  constexpr Real lo = 0;
  constexpr Real hi = 20;
  if (!(excess(lo) > 0 && excess(hi) < 0)) {
    throw NumericalError("critical_r1: gamma1 does not cross 1 on r1 in [0, 20] for N_S = " +
                         std::to_string(static_cast<double>(ns)));
  }
  auto done = [](Real a, Real b) { return std::abs(b - a) < 1e-10L; };
  std::uintmax_t iterations = 200;
  const auto [a, b] = boost::math::tools::bisect(excess, lo, hi, done, iterations);
  return (a + b) / 2;
}

}  // namespace qillum

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

#include "qillum/illumination.hpp"

#include <cmath>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "checks.hpp"
#include "qillum/error.hpp"

namespace qillum {

namespace {

using Wide = boost::multiprecision::cpp_bin_float_50;

Real narrow(const Wide& x) { return x.convert_to<Real>(); }

// Degeneracy threshold for the Delta_1, Delta_2 denominators.
constexpr Real kDeltaFloor = 1e-12L;

Real seed_a(Real ns) { return 2 * ns + 1; }
Real seed_c(Real ns) { return 2 * std::sqrt(ns * (1 + ns)); }
Real background_b(Real nb) { return 1 + 2 * nb; }

void require_kind(const ScenarioParams& p, ProbeKind kind) {
  p.validate();
  if (p.kind != kind) {
    throw ValidationError("scenario kind is " + std::string(to_string(p.kind)) + ", expected " +
                          std::string(to_string(kind)));
  }
}

Matrix return_idler_covariance(Real fx, Real fp, Real ax, Real ap, Real cx, Real cp) {
  Matrix v = Matrix::Zero(4, 4);
  v(0, 0) = fx;
  v(1, 1) = fp;
  v(2, 2) = ax;
  v(3, 3) = ap;
  v(0, 2) = v(2, 0) = cx;
  v(1, 3) = v(3, 1) = -cp;
  return v;
}

WilliamsonDecomposition diagonal_williamson(Real alpha1, Real alpha2, Real zeta) {
  Vector d(4);
  d << 1, 1, 1 / zeta, zeta;
  return WilliamsonDecomposition{SymplecticMatrix(d.asDiagonal()), {alpha1, alpha2}, false};
}

// Returns the closed-form decomposition when it is usable for `v1`.
std::optional<WilliamsonDecomposition> checked_closed_form(const Matrix& transform, Real beta1, Real beta2,
                                                           const CovarianceMatrix& v1) {
  if (!transform.allFinite() || !std::isfinite(beta1) || !std::isfinite(beta2)) {
    return std::nullopt;
  }
  try {
    WilliamsonDecomposition w{SymplecticMatrix(transform), {beta1, beta2}, false};
    if (w.reassembly_error(v1.matrix()) > kReassemblyTolerance) {
      return std::nullopt;
    }
    return w;
  } catch (const ValidationError&) {
    return std::nullopt;
  }
}

}  // namespace

std::string_view to_string(ProbeKind kind) {
  switch (kind) {
    case ProbeKind::tmsv:
      return "tmsv";
    case ProbeKind::tss:
      return "tss";
    case ProbeKind::tms:
      return "tms";
  }
  return "unknown";
}

ProbeKind parse_probe_kind(std::string_view text) {
  if (text == "tmsv") return ProbeKind::tmsv;
  if (text == "tss") return ProbeKind::tss;
  if (text == "tms") return ProbeKind::tms;
  throw ValidationError("unknown probe kind '" + std::string(text) + "' (expected tmsv, tss or tms)");
}

void ScenarioParams::validate() const {
  detail::require_nonnegative("N_S", ns);
  detail::require_nonnegative("N_B", nb);
  detail::require_nonnegative("kappa", kappa);
  if (kappa >= 1) {
    throw ValidationError("kappa must be < 1");
  }
  detail::require_finite("r1", r1);
  detail::require_finite("r2", r2);
  detail::require_finite("r", r);
  if (m < 1) {
    throw ValidationError("copy count M must be >= 1");
  }
  if (kind != ProbeKind::tss && (r1 != 0 || r2 != 0)) {
    throw ValidationError("r1/r2 apply only to the tss probe");
  }
  if (kind != ProbeKind::tms && r != 0) {
    throw ValidationError("r applies only to the tms probe");
  }
}

Matrix TssWilliamsonData::transform() const {
  Matrix s = Matrix::Zero(4, 4);
  s(0, 0) = y1;
  s(0, 2) = y5;
  s(1, 1) = y2;
  s(1, 3) = y6;
  s(2, 0) = y5p;
  s(2, 2) = y3;
  s(3, 1) = y6p;
  s(3, 3) = y4;
  return s;
}

Matrix TmsWilliamsonData::transform() const {
  Matrix s = Matrix::Zero(4, 4);
  s(0, 0) = s(1, 1) = s(2, 2) = s(3, 3) = x_plus;
  s(0, 2) = s(2, 0) = x_minus;
  s(1, 3) = s(3, 1) = -x_minus;
  return s;
}

HypothesisPair tmsv_hypotheses(const ScenarioParams& params) {
  require_kind(params, ProbeKind::tmsv);
  const Real a = seed_a(params.ns);
  const Real b = background_b(params.nb);
  const Real c = seed_c(params.ns);
  const Real f = 2 * params.kappa * params.ns + b;
  const Real off = std::sqrt(params.kappa) * c;

  CovarianceMatrix v0(return_idler_covariance(b, b, a, a, 0, 0));
  CovarianceMatrix v1(return_idler_covariance(f, f, a, a, off, off));
  auto w0 = diagonal_williamson(b, a, 1);
  auto w1 = williamson(v1);
  return HypothesisPair{std::move(v0), std::move(v1), std::move(w0), std::move(w1), Vector::Zero(4), Vector::Zero(4),
                        false};
}

Probe tss_probe(Real ns, Real r1, Real r2) {
  detail::require_nonnegative("N_S", ns);
  auto cov = apply_symplectic(single_mode_squeeze_symplectic(r1, r2), tmsv_covariance(ns));
  const Real n1 = std::pow(std::sinh(r1), 2);
  const Real n2 = std::pow(std::sinh(r2), 2);
  return Probe{std::move(cov), ModePhotonNumbers{ns + 2 * n1 * ns + n1, ns + 2 * n2 * ns + n2}};
}

TssWilliamsonData tss_closed_form(const ScenarioParams& params) {
  require_kind(params, ProbeKind::tss);
  // Delta_2 and the y coefficients cancel to O(kappa C^2); evaluate wide and round once.
  const Wide ns(params.ns);
  const Wide kappa(params.kappa);
  const Wide a = 2 * ns + 1;
  const Wide b = 2 * Wide(params.nb) + 1;
  const Wide c = 2 * sqrt(ns * (1 + ns));
  // gamma_{j,+-} = sqrt(n_j + 1) +- sqrt(n_j) = e^{+-r_j}
  const Wide g1p = exp(Wide(params.r1));
  const Wide g1m = exp(-Wide(params.r1));
  const Wide g2p = exp(Wide(params.r2));
  const Wide g2m = exp(-Wide(params.r2));

  const Wide kc2 = kappa * c * c;
  const Wide sk_c = sqrt(kappa) * c;
  const Wide fp = b + kappa * (a * g1p * g1p - 1);
  const Wide fm = b + kappa * (a * g1m * g1m - 1);
  const Wide g = fp * fm - a * a;
  const Wide h = a * a - kc2;
  const Wide gp = fp * g1m - a * g1p;
  const Wide gm = fm * g1p - a * g1m;
  const Wide hp = a * fp - kc2 * g1p * g1p;
  const Wide hm = a * fm - kc2 * g1m * g1m;
  // xi takes the sign of G so that beta1 stays attached to the return mode.
  const Wide xi_abs = sqrt(g * g - 4 * kc2 * gp * gm);
  const Wide xi = g < 0 ? Wide(-xi_abs) : xi_abs;
  const Wide beta1 = sqrt((g + 2 * h + xi) / 2);
  const Wide beta2 = sqrt((g + 2 * h - xi) / 2);
  const Wide delta1 = fp * beta1 * beta1 - a * hp;
  const Wide delta2 = a * hp - fp * beta2 * beta2;

  const Wide root1 = sqrt(beta1 * xi * delta1);
  const Wide root2 = sqrt(beta2 * xi * delta2);
  const Wide ratio1 = sqrt(beta1 / (xi * delta1));
  const Wide ratio2 = sqrt(beta2 / (xi * delta2));
  // Overall sign of S_V1 is free; fix it so the unsqueezed limit matches the tmsv form.
  const Wide sign = xi < 0 ? -1 : 1;

  TssWilliamsonData d;
  d.a = narrow(a);
  d.b = narrow(b);
  d.c = narrow(c);
  d.gamma1_plus = narrow(g1p);
  d.gamma1_minus = narrow(g1m);
  d.gamma2_plus = narrow(g2p);
  d.gamma2_minus = narrow(g2m);
  d.zeta = narrow(sqrt(g2m / g2p));
  d.f_plus = narrow(fp);
  d.f_minus = narrow(fm);
  d.g = narrow(g);
  d.h = narrow(h);
  d.g_plus = narrow(gp);
  d.g_minus = narrow(gm);
  d.h_plus = narrow(hp);
  d.h_minus = narrow(hm);
  d.xi = narrow(xi);
  d.beta1 = narrow(beta1);
  d.beta2 = narrow(beta2);
  d.delta1 = narrow(delta1);
  d.delta2 = narrow(delta2);
  d.y1 = narrow(sign * kc2 * gp * gp * hp / (root1 * delta2));
  d.y2 = narrow(sign * ratio1 * kc2 * gp / delta2 * (2 * a * gp - g1p * (g - xi)) / 2);
  d.y3 = narrow(sign * sk_c * gp * hp * (g + xi) / (root2 * delta1) * g2p / 2);
  d.y4 = narrow(sign * ratio2 * sk_c * gp / delta1 * g2m * (fp * (g + xi) - 2 * kc2 * gp * g1p) / 2);
  d.y5 = narrow(sign * kc2 * gp * gp * hp / (root2 * delta1));
  d.y6 = narrow(sign * -ratio2 * kc2 * gp / delta1 * (g1p * (g + xi) - 2 * a * gp) / 2);
  d.y5p = narrow(sign * sk_c * gp * hp * (g - xi) / (root1 * delta2) * g2p / 2);
  d.y6p = narrow(sign * -ratio1 * sk_c * gp / delta2 * g2m * (2 * kc2 * gp * g1p - fp * (g - xi)) / 2);
  return d;
}

HypothesisPair tss_hypotheses(const ScenarioParams& params) {
  const auto d = tss_closed_form(params);
  const Real a = d.a;
  const Real sk_c = std::sqrt(params.kappa) * d.c;
  const Real ax = a * d.gamma2_plus * d.gamma2_plus;
  const Real ap = a * d.gamma2_minus * d.gamma2_minus;

  CovarianceMatrix v0(return_idler_covariance(d.b, d.b, ax, ap, 0, 0));
  CovarianceMatrix v1(return_idler_covariance(d.f_plus, d.f_minus, ax, ap, sk_c * d.gamma1_plus * d.gamma2_plus,
                                              sk_c * d.gamma1_minus * d.gamma2_minus));
  auto w0 = diagonal_williamson(d.b, a, d.zeta);

  std::optional<WilliamsonDecomposition> w1;
  if (std::abs(d.delta1) >= kDeltaFloor && std::abs(d.delta2) >= kDeltaFloor) {
    w1 = checked_closed_form(d.transform(), d.beta1, d.beta2, v1);
  }
  const bool fallback = !w1.has_value();
  if (fallback) {
    w1 = williamson(v1);
  }
  return HypothesisPair{std::move(v0), std::move(v1), std::move(w0), std::move(*w1), Vector::Zero(4), Vector::Zero(4),
                        fallback};
}

Probe tms_probe(Real ns, Real r) {
  detail::require_nonnegative("N_S", ns);
  auto cov = apply_symplectic(two_mode_squeeze_symplectic(r), tmsv_covariance(ns));
  const Real a_tilde = seed_a(ns) * std::cosh(2 * r) + seed_c(ns) * std::sinh(2 * r);
  const Real n_bar = (a_tilde - 1) / 2;
  return Probe{std::move(cov), ModePhotonNumbers{n_bar, n_bar}};
}

TmsWilliamsonData tms_closed_form(const ScenarioParams& params) {
  require_kind(params, ProbeKind::tms);
  const Wide ns(params.ns);
  const Wide kappa(params.kappa);
  const Wide r(params.r);
  const Wide a = 2 * ns + 1;
  const Wide c = 2 * sqrt(ns * (1 + ns));
  const Wide b = 2 * Wide(params.nb) + 1;
  const Wide a_tilde = a * cosh(2 * r) + c * sinh(2 * r);
  const Wide c_tilde = a * sinh(2 * r) + c * cosh(2 * r);
  const Wide f_tilde = kappa * a_tilde + b - kappa;

  const Wide sum = f_tilde + a_tilde;
  const Wide kc2 = 4 * kappa * c_tilde * c_tilde;
  const Wide root = sqrt(sum * sum - kc2);

  TmsWilliamsonData d;
  d.a_tilde = narrow(a_tilde);
  d.c_tilde = narrow(c_tilde);
  d.f_tilde = narrow(f_tilde);
  d.b = narrow(b);
  d.beta1 = narrow(((f_tilde - a_tilde) + root) / 2);
  d.beta2 = narrow(((a_tilde - f_tilde) + root) / 2);
  // beta1 + beta2 = root; sum - root rewritten to avoid cancellation at small kappa.
  d.x_plus = narrow(sqrt((sum + root) / (2 * root)));
  d.x_minus = narrow(sqrt(kc2 / (sum + root) / (2 * root)));
  return d;
}

HypothesisPair tms_hypotheses(const ScenarioParams& params) {
  const auto d = tms_closed_form(params);
  const Real off = std::sqrt(params.kappa) * d.c_tilde;
  CovarianceMatrix v0(return_idler_covariance(d.b, d.b, d.a_tilde, d.a_tilde, 0, 0));
  CovarianceMatrix v1(return_idler_covariance(d.f_tilde, d.f_tilde, d.a_tilde, d.a_tilde, off, off));
  auto w0 = diagonal_williamson(d.b, d.a_tilde, 1);

  auto w1 = checked_closed_form(d.transform(), d.beta1, d.beta2, v1);
  const bool fallback = !w1.has_value();
  if (fallback) {
    w1 = williamson(v1);
  }
  return HypothesisPair{std::move(v0), std::move(v1), std::move(w0), std::move(*w1), Vector::Zero(4), Vector::Zero(4),
                        fallback};
}

HypothesisPair build_hypotheses(const ScenarioParams& params) {
  switch (params.kind) {
    case ProbeKind::tmsv:
      return tmsv_hypotheses(params);
    case ProbeKind::tss:
      return tss_hypotheses(params);
    case ProbeKind::tms:
      return tms_hypotheses(params);
  }
  throw ValidationError("unknown probe kind");
}

Probe build_probe(const ScenarioParams& params) {
  params.validate();
  switch (params.kind) {
    case ProbeKind::tmsv:
      return Probe{tmsv_covariance(params.ns), ModePhotonNumbers{params.ns, params.ns}};
    case ProbeKind::tss:
      return tss_probe(params.ns, params.r1, params.r2);
    case ProbeKind::tms:
      return tms_probe(params.ns, params.r);
  }
  throw ValidationError("unknown probe kind");
}

std::pair<Real, Real> tmsv_x_coefficients(const ScenarioParams& params) {
  ScenarioParams tms = params;
  tms.kind = ProbeKind::tms;
  tms.r1 = tms.r2 = tms.r = 0;
  const auto d = tms_closed_form(tms);
  return {d.x_plus, d.x_minus};
}

}  // namespace qillum

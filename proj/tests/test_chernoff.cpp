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

#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "qillum/chernoff.hpp"
#include "qillum/error.hpp"

using namespace qillum;

namespace {

ScenarioParams scenario(ProbeKind kind, Real ns, Real nb, Real kappa, Real s1 = 0, Real s2 = 0) {
  ScenarioParams p;
  p.kind = kind;
  p.ns = ns;
  p.nb = nb;
  p.kappa = kappa;
  if (kind == ProbeKind::tss) {
    p.r1 = s1;
    p.r2 = s2;
  } else if (kind == ProbeKind::tms) {
    p.r = s1;
  }
  return p;
}

Real rel(Real a, Real b) { return std::abs(a - b) / std::abs(b); }

GaussianState single_mode(Real variance, Real x = 0, Real p = 0) {
  Vector mean(2);
  mean << x, p;
  return GaussianState{mean, CovarianceMatrix(variance * Matrix::Identity(2, 2))};
}

Real gamma1_ns_form(Real ns, Real n1) {
  const Real root = std::sqrt(1 + ns) + std::sqrt(ns);
  return 4 * ns * (1 + ns) * (2 * n1 + 1) / ((ns + 2 * n1 * ns + n1) * root * root);
}

}  // namespace

TEST_CASE("Lambda_p and G_p") {
  for (Real p : {0.1L, 0.5L, 0.9L, 1.0L}) {
    CHECK(lambda_p(p, 1) == 1);
    CHECK(g_p(p, 1) == 1);
  }
  CHECK(static_cast<double>(lambda_p(0.5L, 3)) == doctest::Approx(5.82842712474619).epsilon(1e-14));
  CHECK(static_cast<double>(lambda_p(0.5L, 3) - (3 + 2 * std::sqrt(2.0L))) == doctest::Approx(0).epsilon(1e-14));
  for (Real x : {2.0L, 7.5L}) CHECK(std::abs(lambda_p(1, x) - x) < 1e-15L * x);
  CHECK(std::abs(g_p(1, 3) - 1) < 1e-15);
  CHECK(static_cast<double>(g_p(0.5L, 3)) == doctest::Approx(2.414213562373095).epsilon(1e-14));
  CHECK_THROWS_AS(lambda_p(0.5L, 0.9L), ValidationError);
  CHECK_THROWS_AS(g_p(0, 2), ValidationError);
  CHECK_NOTHROW(lambda_p(0.5L, 1 - 1e-10L));

  // Direct evaluation of the defining ratios at moderate arguments.
  for (Real p : {0.25L, 0.6L}) {
    for (Real x : {1.5L, 4.0L, 40.0L}) {
      const Real up = std::pow(x + 1, p), dn = std::pow(x - 1, p);
      CHECK(rel(lambda_p(p, x), (up + dn) / (up - dn)) < 1e-15);
      CHECK(rel(g_p(p, x), std::pow(2.0L, p) / (up - dn)) < 1e-15);
      CHECK(rel(std::exp(log_g_p(p, x)), g_p(p, x)) < 1e-15);
    }
  }
}

TEST_CASE("q_s against single-mode oracles") {
  SUBCASE("thermal pairs: geometric-series trace") {
    for (auto [n0, n1] : {std::pair{0.2L, 0.7L}, std::pair{3.0L, 1.0L}, std::pair{0.0L, 0.5L}}) {
      const auto a = single_mode(2 * n0 + 1);
      const auto b = single_mode(2 * n1 + 1);
      for (Real s : {0.1L, 0.3L, 0.5L, 0.8L}) {
        const auto q = q_s(a, williamson(a.cov), b, williamson(b.cov), s);
        CHECK(rel(q.q_s, testing::thermal_overlap_series(n0, n1, s)) < 1e-12);
        CHECK(rel(q.q_s, std::exp(q.log_q_s)) < 1e-15);
      }
    }
  }
  SUBCASE("coherent pairs: exp(-|alpha - beta|^2) for every s") {
    // x = 2 Re(alpha), p = 2 Im(alpha) in the vacuum-variance-1 convention.
    const auto a = single_mode(1, 2 * 0.3L, 2 * -0.2L);
    const auto b = single_mode(1, 2 * -0.4L, 2 * 0.5L);
    const Real dist2 = 0.7L * 0.7L + 0.7L * 0.7L;
    for (Real s : {0.2L, 0.5L, 0.9L}) {
      const auto q = q_s(a, williamson(a.cov), b, williamson(b.cov), s);
      CHECK(rel(q.q_s, std::exp(-dist2)) < 1e-12);
    }
  }
}

TEST_CASE("q_s on illumination pairs") {
  for (auto kind : {ProbeKind::tmsv, ProbeKind::tss, ProbeKind::tms}) {
    const auto off = build_hypotheses(scenario(kind, 0.2L, 2, 0, 0.3L, 0.1L));
    for (Real s : {0.25L, 0.5L, 0.75L}) CHECK(q_s(off, s).q_s == 1);
  }
  // Reference from an independent 50-digit evaluation.
  const auto tms = build_hypotheses(scenario(ProbeKind::tms, 0.1L, 0.2L, 0.1L, 0.3L));
  CHECK(static_cast<double>(q_s(tms, 0.5L).q_s) == doctest::Approx(0.976424677499232).epsilon(1e-12));
}

TEST_CASE("determinant factorizations") {
  const auto p = scenario(ProbeKind::tss, 0.1L, 10, 0.05L, 0.4L, 0.2L);
  const auto pair = build_hypotheses(p);
  const auto d = tss_closed_form(p);
  for (Real s : {0.2L, 0.5L, 0.7L}) {
    const Real direct = sigma_matrix(pair.w0, pair.w1, s).determinant();
    CHECK(rel(tss_sigma_factors(d, s).det(), direct) < 1e-10);
  }
  const auto t = scenario(ProbeKind::tms, 0.1L, 5, 0.05L, 0.3L);
  const auto tpair = build_hypotheses(t);
  const auto td = tms_closed_form(t);
  for (Real s : {0.2L, 0.5L, 0.7L}) {
    const Real direct = sigma_matrix(tpair.w0, tpair.w1, s).determinant();
    CHECK(rel(tms_sigma_terms(td, s).sqrt_det(), std::sqrt(direct)) < 1e-10);
  }
}

TEST_CASE("property: q_s endpoints, symmetry and decomposition independence") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ns(0.01, 1.5), nb(0.1, 20), kappa(0.01, 0.5), sq(0, 1.5);
  for (int trial = 0; trial < 60; ++trial) {
    const auto kind = static_cast<ProbeKind>(trial % 3);
    const auto pair = build_hypotheses(scenario(kind, ns(rng), nb(rng), kappa(rng), sq(rng), sq(rng)));
    CHECK(std::abs(q_s(pair, 1e-6L).q_s - 1) < 1e-4);
    CHECK(std::abs(q_s(pair, 1 - 1e-6L).q_s - 1) < 1e-4);
    CHECK(q_s(pair, 0).q_s == 1);
    CHECK(q_s(pair, 1).q_s == 1);

    const Real forward = q_s(pair, 0.5L).q_s;
    const Real backward = q_s(pair.state1(), pair.w1, pair.state0(), pair.w0, 0.5L).q_s;
    CHECK(rel(forward, backward) < 1e-10);
    CHECK(forward <= 1 + 1e-10);

    const auto generic0 = williamson(pair.v0);
    const auto generic1 = williamson(pair.v1);
    for (Real s : {0.3L, 0.5L, 0.7L}) {
      const Real closed = q_s(pair, s).q_s;
      const Real numeric = q_s(pair.state0(), generic0, pair.state1(), generic1, s).q_s;
      CHECK(rel(closed, numeric) < 1e-9);
    }
  }
}

TEST_CASE("Bhattacharyya bound") {
  const auto off = build_hypotheses(scenario(ProbeKind::tmsv, 0.01L, 20, 0));
  for (std::uint64_t m : {1ULL, 1000ULL, 1000000000ULL}) {
    CHECK(qb_bound(off, m).value == 0.5);
    CHECK(qc_bound(off, m).value == 0.5);
  }
  const auto pair = build_hypotheses(scenario(ProbeKind::tss, 0.1L, 1, 0.1L, 0.2L, 0.1L));
  const auto one = qb_bound(pair, 1);
  CHECK(rel(one.value, q_s(pair, 0.5L).q_s / 2) < 1e-15);
  CHECK(one.s_used == 0.5L);
  CHECK_FALSE(one.optimized);

  // Huge M: the value underflows, the exponent stays exact.
  const auto many = qb_bound(pair, 1000000000000ULL);
  CHECK(rel(many.exponent_per_copy, one.exponent_per_copy) < 1e-15);
  CHECK(rel(many.total_exponent(), 1e12L * one.exponent_per_copy) < 1e-15);
  CHECK_THROWS_AS(qb_bound(pair, 0), ValidationError);
}

TEST_CASE("tmsv exponent at large background") {
  // Exact exponent against the large-N_B form kappa C^2 / (4 N_B (A + sqrt(A^2 - 1))).
  const auto p = [] {
    auto s = scenario(ProbeKind::tmsv, 0.01L, 20, 0.01L);
    s.m = 1000000;
    return s;
  }();
  const auto exact = qb_bound(build_hypotheses(p), p.m);
  const auto asym = tmsv_qb_asymptotic(p);
  CHECK(rel(exact.total_exponent(), asym.total_exponent()) < 0.05);
  // Independent 60-digit evaluation of the exact exponent.
  CHECK(static_cast<double>(exact.total_exponent()) == doctest::Approx(3.95659718985).epsilon(1e-9));
}

TEST_CASE("Chernoff bound") {
  SUBCASE("symmetric coherent pair optimizes at s = 1/2") {
    const auto a = single_mode(1, 0.4L, 0);
    const auto b = single_mode(1, -0.4L, 0);
    HypothesisPair pair{a.cov, b.cov, williamson(a.cov), williamson(b.cov), a.mean, b.mean, false};
    const auto qc = qc_bound(pair, 10);
    const auto qb = qb_bound(pair, 10);
    CHECK(rel(qc.value, qb.value) < 1e-12);
    CHECK(qc.optimized);
  }
  SUBCASE("property: P_QC <= P_QB") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> ns(0.001, 2), nb(0.1, 50), kappa(0.001, 0.5), sq(0, 2);
    std::uniform_int_distribution<int> mexp(0, 6);
    for (int trial = 0; trial < 200; ++trial) {
      auto p = scenario(static_cast<ProbeKind>(trial % 3), ns(rng), nb(rng), kappa(rng), sq(rng), sq(rng));
      p.m = static_cast<std::uint64_t>(std::pow(10, mexp(rng)));
      const auto pair = build_hypotheses(p);
      const auto qc = qc_bound(pair, p.m);
      const auto qb = qb_bound(pair, p.m);
      CHECK(qc.value <= qb.value * (1 + 1e-12L));
      CHECK(qc.log_value <= qb.log_value + 1e-12L);
      CHECK(qc.s_used >= 0);
      CHECK(qc.s_used <= 1);
    }
  }
  SUBCASE("minimum is interior and stationary") {
    const auto pair = build_hypotheses(scenario(ProbeKind::tmsv, 0.5L, 0.5L, 0.3L));
    const auto qc = qc_bound(pair, 1);
    const Real h = 1e-4L;
    CHECK(q_s(pair, qc.s_used + h).log_q_s >= -qc.exponent_per_copy);
    CHECK(q_s(pair, qc.s_used - h).log_q_s >= -qc.exponent_per_copy);
  }
}

TEST_CASE("coherent-state benchmark") {
  CHECK(coherent_qb_bound(0, 10, 0.1L, 1000).value == 0.5);
  const auto exact = coherent_qb_bound(0.01L, 100, 0.01L, 1000000);
  const auto asym = coherent_qb_asymptotic(0.01L, 100, 0.01L, 1000000);
  CHECK(rel(exact.total_exponent(), asym.total_exponent()) < 0.01);
  CHECK(rel(asym.total_exponent(), 1e6L * 0.01L * 0.01L / 400) < 1e-15);
  const Real root = std::sqrt(101.0L) + 10;
  CHECK(rel(exact.exponent_per_copy, 1e-4L * (std::sqrt(101.0L) - 10) / root) < 1e-12);

  // Asymptotic ratio against the tmsv large-N_B exponent tends to 1/4 as N_S -> 0.
  auto p = scenario(ProbeKind::tmsv, 1e-8L, 1e4L, 0.01L);
  const Real ratio =
      coherent_qb_asymptotic(p.ns, p.nb, p.kappa, 1).exponent_per_copy / tmsv_qb_asymptotic(p).exponent_per_copy;
  CHECK(rel(ratio, 0.25L) < 1e-3);
  CHECK_THROWS_AS(coherent_qb_bound(0.1L, 1, 1, 1), ValidationError);
}

TEST_CASE("squeezed-probe asymptotics") {
  const auto base = scenario(ProbeKind::tmsv, 0.01L, 100, 0.01L);
  const auto unsqueezed = tss_qb_asymptotic(scenario(ProbeKind::tss, 0.01L, 100, 0.01L, 0, 0));
  CHECK(rel(unsqueezed.bound.exponent_per_copy, tmsv_qb_asymptotic(base).exponent_per_copy) < 1e-15);
  const auto tms0 = tms_qb_asymptotic(scenario(ProbeKind::tms, 0.01L, 100, 0.01L, 0));
  CHECK(rel(tms0.bound.exponent_per_copy, tmsv_qb_asymptotic(base).exponent_per_copy) < 1e-15);

  const auto ref = tss_qb_asymptotic(scenario(ProbeKind::tss, 0.01L, 100, 0.01L, 0.3L, 0));
  for (Real r2 : {0.5L, 1.0L}) {
    const auto other = tss_qb_asymptotic(scenario(ProbeKind::tss, 0.01L, 100, 0.01L, 0.3L, r2));
    CHECK(other.bound.exponent_per_copy == ref.bound.exponent_per_copy);
  }
  // The leading exponents are the K and J differences.
  CHECK(rel((ref.k2 - ref.k1) / 800, ref.bound.exponent_per_copy) < 1e-10);
  const auto tms = tms_qb_asymptotic(scenario(ProbeKind::tms, 0.01L, 100, 0.01L, 0.3L));
  CHECK(rel((tms.j2 - tms.j1) / 400, tms.bound.exponent_per_copy) < 1e-10);

  // J2 exceeds J1 whenever kappa > 0.
  for (Real ns : {0.01L, 0.1L, 1.0L}) {
    for (Real r : {0.0L, 0.3L, 1.0L}) {
      for (Real kappa : {0.001L, 0.1L, 0.5L}) {
        const auto a = tms_qb_asymptotic(scenario(ProbeKind::tms, ns, 50, kappa, r));
        CHECK(a.j2 > a.j1);
      }
    }
  }
  CHECK_THROWS_AS(tmsv_qb_asymptotic(scenario(ProbeKind::tmsv, 0.01L, 0, 0.01L)), ValidationError);

  SUBCASE("exact exponents converge to the asymptotes") {
    for (auto kind : {ProbeKind::tss, ProbeKind::tms}) {
      Real previous = 1;
      for (Real nb : {1e2L, 1e3L, 1e4L}) {
        auto p = scenario(kind, 0.01L, nb, 0.01L, 0.3L, 0);
        p.m = 1000000;
        const Real exact = qb_bound(build_hypotheses(p), p.m).total_exponent();
        const Real asym = kind == ProbeKind::tss ? tss_qb_asymptotic(p).bound.total_exponent()
                                                 : tms_qb_asymptotic(p).bound.total_exponent();
        const Real err = rel(exact, asym);
        if (nb == 1e2L) CHECK(err < 0.05);
        CHECK(err < previous);
        previous = err;
      }
      CHECK(previous < 0.01);
    }
  }
}

TEST_CASE("advantage factors") {
  CHECK(static_cast<double>(gamma1(1e-6L, 0).gamma) == doctest::Approx(4).epsilon(0.01));
  const auto g = gamma1(0.01L, 0);
  CHECK(static_cast<double>(g.gamma) == doctest::Approx(3.30877004981343).epsilon(1e-12));
  CHECK(static_cast<double>(g.decibels) == doctest::Approx(5.19666585966966).epsilon(1e-12));
  CHECK(std::abs(g.decibels - 10 * std::log10(g.gamma)) < 1e-12);
  CHECK_THROWS_AS(gamma1(0, 0.3L), ValidationError);

  // N_S-form and photon-number form agree.
  for (Real ns : {0.001L, 0.01L, 0.3L, 2.0L}) {
    for (Real n1 : {0.0L, 0.1L, 1.0L, 10.0L}) {
      const Real signal = ns + 2 * n1 * ns + n1;
      CHECK(rel(gamma1(ns, n1).gamma, gamma1_ns_form(ns, n1)) < 1e-12);
      CHECK(rel(gamma1_from_signal_photons(signal, n1), gamma1(ns, n1).gamma) < 1e-12);
    }
  }

  CHECK(static_cast<double>(gamma2(1e-6L, 0).gamma) == doctest::Approx(4).epsilon(0.01));
  CHECK(std::abs(gamma2(0.01L, 3).gamma - 1) < 0.02);
  Real previous = INFINITY;
  for (Real r : {0.0L, 0.5L, 1.0L, 1.5L, 2.0L}) {
    const Real v = gamma2(0.1L, r).gamma;
    CHECK(v < previous);
    CHECK(v > 1);
    previous = v;
  }
  for (Real ns : {1e-4L, 0.01L, 0.5L, 1.0L, 7.0L}) {
    CHECK(rel(gamma2(ns, 0).gamma, gamma1(ns, 0).gamma) < 1e-12);
  }
  CHECK_THROWS_AS(gamma2(0, 0), ValidationError);
  CHECK_NOTHROW(gamma2(0, 0.2L));

  // Below one far into the squeezing regime.
  for (Real ns : {0.01L, 0.1L, 1.0L}) {
    const Real sh = std::sinh(10.0L);
    CHECK(gamma1(ns, sh * sh).gamma < 1);
  }
}

TEST_CASE("critical squeeze") {
  std::vector<Real> roots;
  for (Real ns : {0.01L, 0.05L, 0.1L, 0.5L, 1.0L}) {
    const Real r = critical_r1(ns);
    roots.push_back(r);
    const Real sh = std::sinh(r);
    CHECK(std::abs(gamma1(ns, sh * sh).gamma - 1) < 1e-9);
    const Real past = std::sinh(r + 0.1L);
    CHECK(gamma1(ns, past * past).gamma < 1);
  }
  const bool rising = roots[1] > roots[0];
  for (std::size_t k = 1; k < roots.size(); ++k) CHECK((roots[k] > roots[k - 1]) == rising);
  CHECK_THROWS_AS(critical_r1(0), ValidationError);
}

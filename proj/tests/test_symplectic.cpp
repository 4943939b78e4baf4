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
#include "qillum/error.hpp"
#include "qillum/symplectic.hpp"

using namespace qillum;
using qillum::testing::max_abs;

namespace {

Matrix diag4(Real a, Real b, Real c, Real d) {
  Vector v(4);
  v << a, b, c, d;
  return v.asDiagonal();
}

}  // namespace

TEST_CASE("symplectic form") {
  Matrix one(2, 2);
  one << 0, 1, -1, 0;
  CHECK(max_abs(symplectic_form(1) - one) == 0);

  const Matrix two = symplectic_form(2);
  CHECK(max_abs(two.block(0, 0, 2, 2) - one) == 0);
  CHECK(max_abs(two.block(2, 2, 2, 2) - one) == 0);
  CHECK(max_abs(two.block(0, 2, 2, 2)) == 0);

  const Matrix three = symplectic_form(3);
  CHECK(max_abs(three * three.transpose() - Matrix::Identity(6, 6)) == 0);
  CHECK(max_abs(three * three + Matrix::Identity(6, 6)) == 0);
  CHECK(max_abs(three + three.transpose()) == 0);

  CHECK_THROWS_AS(symplectic_form(0), ValidationError);
}

TEST_CASE("covariance validation") {
  CHECK_NOTHROW(CovarianceMatrix(Matrix::Identity(4, 4)));
  CHECK_THROWS_AS(CovarianceMatrix(Matrix::Identity(3, 3)), ValidationError);
  CHECK_THROWS_AS(CovarianceMatrix(0.5L * Matrix::Identity(2, 2)), NonPhysicalError);
  Matrix asym = Matrix::Identity(2, 2);
  asym(0, 1) = 1e-6L;
  CHECK_THROWS_AS(CovarianceMatrix{asym}, ValidationError);
  Matrix nan = Matrix::Identity(2, 2);
  nan(0, 0) = NAN;
  CHECK_THROWS_AS(CovarianceMatrix{nan}, ValidationError);
  // Squeezed vacuum is physical; over-squeezed variance product is not.
  CHECK_NOTHROW(CovarianceMatrix(diag4(4, 0.25L, 1, 1)));
  CHECK_THROWS_AS(CovarianceMatrix(diag4(4, 0.2L, 1, 1)), NonPhysicalError);
}

TEST_CASE("tmsv covariance") {
  CHECK(max_abs(tmsv_covariance(0).matrix() - Matrix::Identity(4, 4)) < 1e-15);

  const Matrix v = tmsv_covariance(1).matrix();
  const Real c = 2 * std::sqrt(2.0L);
  CHECK(v(0, 0) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(v(3, 3) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(static_cast<double>(v(0, 2)) == doctest::Approx(2.828427124746190).epsilon(1e-14));
  CHECK(static_cast<double>(v(0, 2) - c) == doctest::Approx(0).epsilon(1e-15));
  CHECK(static_cast<double>(v(1, 3) + c) == doctest::Approx(0).epsilon(1e-15));
  CHECK(v(0, 1) == 0);
  CHECK(v(0, 3) == 0);

  for (Real ns : {0.01L, 0.1L, 1.0L, 3.3L, 10.0L}) {
    const Matrix m = tmsv_covariance(ns).matrix();
    CHECK(std::abs(m(0, 0) * m(0, 0) - m(0, 2) * m(0, 2) - 1) < 1e-12);
    for (Real nu : symplectic_eigenvalues(tmsv_covariance(ns))) {
      CHECK(std::abs(nu - 1) < 1e-10);
    }
  }
  CHECK_THROWS_AS(tmsv_covariance(-0.1L), ValidationError);
  CHECK_THROWS_AS(tmsv_covariance(INFINITY), ValidationError);
}

TEST_CASE("squeezing symplectics") {
  CHECK(max_abs(single_mode_squeeze_symplectic(0, 0).matrix() - Matrix::Identity(4, 4)) == 0);
  const Matrix s = single_mode_squeeze_symplectic(std::log(2.0L), 0).matrix();
  CHECK(max_abs(s - diag4(2, 0.5L, 1, 1)) < 1e-15);

  // gamma_{1,+} gamma_{1,-} = 1 and gamma_{+-} = sqrt(n + 1) +- sqrt(n).
  const Matrix t = single_mode_squeeze_symplectic(0.7L, -0.3L).matrix();
  CHECK(std::abs(t(0, 0) * t(1, 1) - 1) < 1e-15);
  const Real n1 = std::pow(std::sinh(0.7L), 2);
  CHECK(std::abs(t(0, 0) - (std::sqrt(n1 + 1) + std::sqrt(n1))) < 1e-15);
  CHECK(std::abs(t(1, 1) - (std::sqrt(n1 + 1) - std::sqrt(n1))) < 1e-15);

  CHECK(max_abs(two_mode_squeeze_symplectic(0).matrix() - Matrix::Identity(4, 4)) == 0);
  const Matrix s2 = two_mode_squeeze_symplectic(0.5L).matrix();
  const Matrix omega = symplectic_form(2);
  CHECK(max_abs(s2 * omega * s2.transpose() - omega) < 1e-15);
  CHECK(std::abs(s2.determinant() - 1) < 1e-15);
  CHECK(s2(0, 2) > 0);
  CHECK(s2(1, 3) < 0);

  // Two-mode squeezing of vacuum is a TMSV with N_S' = sinh^2 r.
  for (Real r : {0.1L, 0.5L, 1.3L}) {
    const auto v = apply_symplectic(two_mode_squeeze_symplectic(r), tmsv_covariance(0));
    CHECK(max_abs(v.matrix() - tmsv_covariance(std::pow(std::sinh(r), 2)).matrix()) < 1e-14);
  }

  CHECK_THROWS_AS(two_mode_squeeze_symplectic(NAN), ValidationError);
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 1) = 0.1L;
  bad(1, 0) = 0.1L;
  CHECK_THROWS_AS(SymplecticMatrix{bad}, ValidationError);
}

TEST_CASE("apply_symplectic") {
  const auto v = tmsv_covariance(0.3L);
  CHECK(max_abs(apply_symplectic(SymplecticMatrix::identity(2), v).matrix() - v.matrix()) == 0);

  // Local squeezers scale the TMSV blocks entry by entry.
  const Real r1 = 0.4L, r2 = -0.2L;
  const Matrix tss = apply_symplectic(single_mode_squeeze_symplectic(r1, r2), v).matrix();
  const Real a = v(0, 0), c = v(0, 2);
  CHECK(std::abs(tss(0, 0) - a * std::exp(2 * r1)) < 1e-15);
  CHECK(std::abs(tss(1, 1) - a * std::exp(-2 * r1)) < 1e-15);
  CHECK(std::abs(tss(2, 2) - a * std::exp(2 * r2)) < 1e-15);
  CHECK(std::abs(tss(3, 3) - a * std::exp(-2 * r2)) < 1e-15);
  CHECK(std::abs(tss(0, 2) - c * std::exp(r1 + r2)) < 1e-15);
  CHECK(std::abs(tss(1, 3) + c * std::exp(-r1 - r2)) < 1e-15);

  CHECK_THROWS_AS(apply_symplectic(SymplecticMatrix::identity(1), v), ValidationError);
}

TEST_CASE("symplectic eigenvalues") {
  // Diagonal V0 of the squeezed-idler hypothesis: {B, A}.
  const Real ns = 0.1L, nb = 5, r2 = 0.3L;
  const Real a = 2 * ns + 1, b = 2 * nb + 1;
  const auto nu = symplectic_eigenvalues(CovarianceMatrix(diag4(b, b, a * std::exp(2 * r2), a * std::exp(-2 * r2))));
  REQUIRE(nu.size() == 2);
  CHECK(std::abs(nu[0] - 1.2L) < 1e-12);
  CHECK(std::abs(nu[1] - 11) < 1e-12);

  const auto thermal = symplectic_eigenvalues(CovarianceMatrix(diag4(5, 5, 3, 3)));
  CHECK(std::abs(thermal[0] - 3) < 1e-14);
  CHECK(std::abs(thermal[1] - 5) < 1e-14);
}

TEST_CASE("property: symplectic eigenvalues match the two-mode invariant formula") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Matrix v = testing::random_physical_covariance(rng, 2);
    const auto nu = symplectic_eigenvalues(CovarianceMatrix(v));
    const auto [lo, hi] = testing::two_mode_invariant_eigenvalues(v);
    CHECK(std::abs(nu[0] - lo) < 1e-9 * hi);
    CHECK(std::abs(nu[1] - hi) < 1e-9 * hi);
  }
}

TEST_CASE("property: symplectic conjugation preserves the spectrum and the form") {
  std::mt19937_64 rng(7);
  const Matrix omega2 = symplectic_form(2);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = trial % 3 == 0 ? 3 : 2;
    const Matrix v = testing::random_physical_covariance(rng, n);
    const SymplecticMatrix s(testing::random_symplectic(rng, n, 0.5L));
    const Matrix omega = symplectic_form(n);
    CHECK(max_abs(s.matrix() * omega * s.matrix().transpose() - omega) < 1e-10);

    const auto before = symplectic_eigenvalues(CovarianceMatrix(v));
    const auto after = symplectic_eigenvalues(apply_symplectic(s, CovarianceMatrix(v)));
    REQUIRE(before.size() == after.size());
    for (std::size_t k = 0; k < before.size(); ++k) {
      CHECK(std::abs(before[k] - after[k]) < 1e-10 * before[k]);
    }
  }
  for (Real r : {-1.0L, 0.2L, 2.0L}) {
    const Matrix s1 = single_mode_squeeze_symplectic(r, -r).matrix();
    const Matrix s2 = two_mode_squeeze_symplectic(r).matrix();
    CHECK(max_abs(s1 * omega2 * s1.transpose() - omega2) < 1e-10);
    CHECK(max_abs(s2 * omega2 * s2.transpose() - omega2) < 1e-10);
  }
}

TEST_CASE("williamson decomposition") {
  SUBCASE("diagonal thermal state") {
    const auto w = williamson(CovarianceMatrix(diag4(3, 3, 5, 5)));
    CHECK(std::abs(w.sympl_eigenvalues[0] - 3) < 1e-14);
    CHECK(std::abs(w.sympl_eigenvalues[1] - 5) < 1e-14);
    CHECK(max_abs(w.transform.matrix() - Matrix::Identity(4, 4)) < 1e-12);
  }
  SUBCASE("squeezed-idler background has the diag(1, 1, 1/zeta, zeta) form") {
    const Real a = 1.2L, b = 11, r2 = 0.3L;
    const Real zeta = std::exp(-r2);
    const auto w = williamson(CovarianceMatrix(diag4(b, b, a * std::exp(2 * r2), a * std::exp(-2 * r2))));
    // Ascending order puts A (idler) first.
    CHECK(std::abs(w.sympl_eigenvalues[0] - a) < 1e-12);
    CHECK(std::abs(w.sympl_eigenvalues[1] - b) < 1e-12);
    const Matrix s = w.transform.matrix();
    CHECK(std::abs(std::abs(s(2, 0)) + std::abs(s(2, 2)) - 1 / zeta) < 1e-12);
    CHECK(std::abs(std::abs(s(3, 1)) + std::abs(s(3, 3)) - zeta) < 1e-12);
  }
  SUBCASE("pure state") {
    const auto w = williamson(tmsv_covariance(0.7L));
    CHECK(std::abs(w.sympl_eigenvalues[0] - 1) < 1e-10);
    CHECK(std::abs(w.sympl_eigenvalues[1] - 1) < 1e-10);
    CHECK(w.reassembly_error(tmsv_covariance(0.7L).matrix()) < 1e-12);
  }
}

TEST_CASE("property: williamson round trip on known S D S^T") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = trial % 4 == 0 ? 3 : 2;
    std::uniform_real_distribution<double> excess(0.01, 8);
    std::vector<Real> nu(n);
    Vector d(2 * n);
    for (std::size_t k = 0; k < n; ++k) {
      nu[k] = 1 + excess(rng);
      d(2 * k) = d(2 * k + 1) = nu[k];
    }
    std::sort(nu.begin(), nu.end());
    const Matrix s = testing::random_symplectic(rng, n, 0.8L);
    Matrix v = s * d.asDiagonal() * s.transpose();
    v = (v + v.transpose()) / 2;
    const auto w = williamson(CovarianceMatrix(v));
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(std::abs(w.sympl_eigenvalues[k] - nu[k]) < 1e-8 * nu[k]);
    }
    CHECK(w.reassembly_error(v) < 1e-8);
    const Matrix omega = symplectic_form(n);
    CHECK(max_abs(w.transform.matrix() * omega * w.transform.matrix().transpose() - omega) < 1e-10);
  }
}

TEST_CASE("partial transpose and log-negativity") {
  const Matrix id = Matrix::Identity(4, 4);
  CHECK(max_abs(partial_transpose(id, 1) - id) == 0);

  const Matrix v = tmsv_covariance(1).matrix();
  CHECK(max_abs(partial_transpose(partial_transpose(v, 1), 1) - v) == 0);
  CHECK(max_abs(partial_transpose(partial_transpose(v, 0), 0) - v) == 0);
  CHECK_THROWS_AS(partial_transpose(v, 2), ValidationError);

  const Real expected_min = std::pow(std::sqrt(2.0L) - 1, 2);
  CHECK(std::abs(symplectic_spectrum(partial_transpose(v, 1))[0] - expected_min) < 1e-12);
  CHECK(std::abs(symplectic_spectrum(partial_transpose(v, 0))[0] - expected_min) < 1e-12);
  CHECK(static_cast<double>(log_negativity(tmsv_covariance(1))) ==
        doctest::Approx(2.5431066063272234).epsilon(1e-12));

  CHECK(log_negativity(tmsv_covariance(0)) == 0);
  CHECK(log_negativity(CovarianceMatrix(diag4(3, 3, 5, 5))) == 0);

  for (Real ns : {0.01L, 0.1L, 1.0L, 5.0L}) {
    const Real expected = -2 * std::log2(std::sqrt(1 + ns) - std::sqrt(ns));
    CHECK(std::abs(log_negativity(tmsv_covariance(ns)) - expected) < 1e-9);
  }
}

TEST_CASE("log-negativity under local and two-mode squeezing") {
  const Real ns = 0.1L;
  const auto tmsv = tmsv_covariance(ns);
  const Real base = log_negativity(tmsv);
  const auto tss = apply_symplectic(single_mode_squeeze_symplectic(0.7L, 0.3L), tmsv);
  CHECK(std::abs(log_negativity(tss) - base) < 1e-9);

  const Real r = 0.4L;
  const auto tms = apply_symplectic(two_mode_squeeze_symplectic(r), tmsv);
  CHECK(std::abs(log_negativity(tms) - base - 2 * r * std::log2(std::exp(1.0L))) < 1e-9);
}

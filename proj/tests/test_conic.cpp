// Copyright 2026 The qrt Authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qrt/conic.hpp"
#include "qrt/state.hpp"

using namespace qrt;
using Sense = ConicProgram::Sense;

namespace {

HermitianMatrix random_hermitian(Eigen::Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Eigen::MatrixXcd g(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = Complex(n(rng), n(rng));
  return symmetrize(g);
}

/// A generic Hermitian variable H = sum_k z_k B_k.
AffineMatrix hermitian_variable(ConicProgram& p, Eigen::Index d) {
  AffineMatrix h = AffineMatrix::zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index k = j; k < d; ++k) {
      HermitianMatrix e = HermitianMatrix::Zero(d, d);
      e(j, k) = e(k, j) = 1.0;
      h.add_term(p.add_variable("re"), e);
      if (j != k) {
        HermitianMatrix f = HermitianMatrix::Zero(d, d);
        f(j, k) = Complex(0, 1);
        f(k, j) = Complex(0, -1);
        h.add_term(p.add_variable("im"), f);
      }
    }
  }
  return h;
}

}  // namespace

TEST_CASE("largest eigenvalue as an SDP, with dual certificate") {
  std::mt19937_64 rng(21);
  for (Eigen::Index d : {2, 3, 5}) {
    const HermitianMatrix m = random_hermitian(d, rng);
    ConicProgram p;
    const int t = p.add_variable("t");
    AffineMatrix lhs = AffineMatrix(HermitianMatrix(-m));
    lhs.add_term(t, HermitianMatrix::Identity(d, d));
    const int c = p.add_psd(lhs, "t - M");
    p.set_objective(Sense::Minimize, ScalarAffine::variable(t));
    const ConicSolution sol = solve(p);
    REQUIRE(sol.optimal());
    CHECK(sol.primal_value == doctest::Approx(max_eigenvalue(m)).epsilon(1e-8));
    CHECK(sol.dual_value == doctest::Approx(max_eigenvalue(m)).epsilon(1e-8));
    const HermitianMatrix x = sol.psd_duals.at(static_cast<std::size_t>(c));
    CHECK(x.trace().real() == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(min_eigenvalue(x) > -1e-8);
    // Complementary slackness.
    CHECK(std::abs((x * lhs.evaluate(sol.primal_vars)).trace()) < 1e-7);
  }
}

TEST_CASE("maximization over density matrices") {
  std::mt19937_64 rng(22);
  const HermitianMatrix w = random_hermitian(3, rng);
  ConicProgram p;
  const AffineMatrix h = hermitian_variable(p, 3);
  p.add_psd(h, "H >= 0");
  ScalarAffine tr = trace_against(HermitianMatrix::Identity(3, 3), h);
  tr.constant = -1.0;
  p.add_equality(tr, "Tr H = 1");
  p.set_objective(Sense::Maximize, trace_against(w, h));
  const ConicSolution sol = solve(p);
  REQUIRE(sol.optimal());
  CHECK(sol.primal_value == doctest::Approx(max_eigenvalue(w)).epsilon(1e-8));
}

TEST_CASE("off-diagonal and imaginary zero constraints") {
  HermitianMatrix w(2, 2);
  w << 3.0, Complex(1, 1), Complex(1, -1), 2.0;
  {
    ConicProgram p;
    const AffineMatrix h = hermitian_variable(p, 2);
    p.add_psd(h, "H >= 0");
    p.add_offdiagonal_zero(h, "diagonal");
    ScalarAffine tr = trace_against(HermitianMatrix::Identity(2, 2), h);
    tr.constant = -1.0;
    p.add_equality(tr, "Tr H = 1");
    p.set_objective(Sense::Minimize, trace_against(w, h));
    const ConicSolution sol = solve(p);
    REQUIRE(sol.optimal());
    CHECK(sol.primal_value == doctest::Approx(2.0).epsilon(1e-8));
  }
  {
    // Real symmetric states: min <w, H> sees only Re w.
    ConicProgram p;
    const AffineMatrix h = hermitian_variable(p, 2);
    p.add_psd(h, "H >= 0");
    p.add_imaginary_zero(h, "real");
    ScalarAffine tr = trace_against(HermitianMatrix::Identity(2, 2), h);
    tr.constant = -1.0;
    p.add_equality(tr, "Tr H = 1");
    p.set_objective(Sense::Minimize, trace_against(w, h));
    const ConicSolution sol = solve(p);
    REQUIRE(sol.optimal());
    HermitianMatrix re = w;
    re(0, 1) = re(1, 0) = 1.0;
    CHECK(sol.primal_value == doctest::Approx(min_eigenvalue(re)).epsilon(1e-8));
  }
}

TEST_CASE("complex constraint needs the real embedding") {
  ConicProgram p;
  const int t = p.add_variable("t");
  HermitianMatrix off(2, 2);
  off << 0, Complex(0, 1), Complex(0, -1), 0;
  AffineMatrix lhs(off);
  lhs.add_term(t, HermitianMatrix::Identity(2, 2));
  p.add_psd(lhs, "[[t, i], [-i, t]]");
  p.set_objective(Sense::Minimize, ScalarAffine::variable(t));
  const ConicSolution sol = solve(p);
  REQUIRE(sol.optimal());
  CHECK(sol.primal_value == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("linear program with equalities") {
  ConicProgram p;
  const int x = p.add_variable("x");
  const int y = p.add_variable("y");
  p.add_nonnegative({-1.0, {{x, 1.0}}}, "x >= 1");
  p.add_nonnegative({-2.0, {{y, 1.0}}}, "y >= 2");
  p.add_equality({-5.0, {{x, 1.0}, {y, 1.0}}}, "x + y = 5");
  p.set_objective(Sense::Minimize, {0.0, {{x, 2.0}, {y, 1.0}}});
  const ConicSolution sol = solve(p);
  REQUIRE(sol.optimal());
  CHECK(sol.primal_value == doctest::Approx(6.0).epsilon(1e-8));
  CHECK(sol.primal_vars(x) == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(sol.nonnegative_duals(0) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(constraint_violation(p, sol.primal_vars) < 1e-8);
  RealVector bad(2);
  bad << 0.0, 5.0;
  CHECK(constraint_violation(p, bad) == doctest::Approx(1.0));
}

TEST_CASE("equality plus PSD: xy >= 1/4 on x + y = 2") {
  ConicProgram p;
  const int x = p.add_variable("x");
  const int y = p.add_variable("y");
  HermitianMatrix c = HermitianMatrix::Zero(2, 2);
  c(0, 1) = c(1, 0) = 0.5;
  HermitianMatrix ex = HermitianMatrix::Zero(2, 2), ey = HermitianMatrix::Zero(2, 2);
  ex(0, 0) = 1.0;
  ey(1, 1) = 1.0;
  p.add_psd(AffineMatrix(c).add_term(x, ex).add_term(y, ey), "[[x, 1/2], [1/2, y]]");
  p.add_equality({-2.0, {{x, 1.0}, {y, 1.0}}}, "x + y = 2");
  p.set_objective(Sense::Minimize, ScalarAffine::variable(x));
  const ConicSolution sol = solve(p);
  REQUIRE(sol.optimal());
  CHECK(sol.primal_value == doctest::Approx(1.0 - std::sqrt(3.0) / 2.0).epsilon(1e-7));
}

TEST_CASE("infeasible and unbounded programs") {
  {
    ConicProgram p;
    const int x = p.add_variable("x");
    p.add_nonnegative({-1.0, {{x, 1.0}}}, "x >= 1");
    p.add_nonnegative({0.0, {{x, -1.0}}}, "x <= 0");
    p.set_objective(Sense::Minimize, ScalarAffine::variable(x));
    CHECK(solve(p).status == SolveStatus::Infeasible);
  }
  {
    ConicProgram p;
    const int x = p.add_variable("x");
    p.add_nonnegative({0.0, {{x, -1.0}}}, "x <= 0");
    p.set_objective(Sense::Minimize, ScalarAffine::variable(x));
    CHECK(solve(p).status == SolveStatus::Unbounded);
  }
  {
    ConicProgram p;
    const int x = p.add_variable("x");
    p.add_equality({-1.0, {{x, 1.0}}}, "x = 1");
    p.add_equality({-2.0, {{x, 1.0}}}, "x = 2");
    p.set_objective(Sense::Minimize, ScalarAffine::variable(x));
    CHECK(solve(p).status == SolveStatus::Infeasible);
  }
  {
    // Semidefinite infeasibility: [[x, 1], [1, -x]] >= 0 has no solution.
    ConicProgram p;
    const int x = p.add_variable("x");
    HermitianMatrix c = HermitianMatrix::Zero(2, 2);
    c(0, 1) = c(1, 0) = 1.0;
    HermitianMatrix e = HermitianMatrix::Zero(2, 2);
    e(0, 0) = 1.0;
    e(1, 1) = -1.0;
    p.add_psd(AffineMatrix(c).add_term(x, e), "[[x, 1], [1, -x]]");
    p.set_objective(Sense::Minimize, ScalarAffine::variable(x));
    CHECK(solve(p).status == SolveStatus::Infeasible);
  }
  {
    // A constant block that is not PSD.
    ConicProgram p;
    const int x = p.add_variable("x");
    p.add_nonnegative({0.0, {{x, 1.0}}}, "x >= 0");
    p.add_psd(AffineMatrix(HermitianMatrix(-HermitianMatrix::Identity(2, 2))), "-1 >= 0");
    p.set_objective(Sense::Minimize, ScalarAffine::variable(x));
    CHECK(solve(p).status == SolveStatus::Infeasible);
  }
}

TEST_CASE("affine expression algebra") {
  AffineMatrix a(HermitianMatrix::Identity(2, 2));
  a.add_term(0, HermitianMatrix::Identity(2, 2));
  const AffineMatrix b = HermitianMatrix(2.0 * HermitianMatrix::Identity(2, 2)) - a;
  RealVector z(1);
  z << 3.0;
  CHECK(b.evaluate(z)(0, 0).real() == doctest::Approx(-2.0));
  CHECK((a * 2.0).evaluate(z)(1, 1).real() == doctest::Approx(8.0));
  CHECK((a - a).evaluate(z).norm() == doctest::Approx(0.0));
  CHECK(trace_against(HermitianMatrix::Identity(2, 2), a).evaluate(z) == doctest::Approx(8.0));
  CHECK(to_string(SolveStatus::Optimal) == "optimal");
}

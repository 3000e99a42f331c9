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

#include "qrt/monotones.hpp"
#include "qrt/oracle.hpp"
#include "test_support.hpp"

using namespace qrt;
using namespace qrt::states;

namespace {

const ResourceTheory& coh2() {
  static const ResourceTheory t = make_theory(TheoryKind::Coherence, {2});
  return t;
}
const ResourceTheory& magic() {
  static const ResourceTheory t = make_theory(TheoryKind::MagicQubit, {2});
  return t;
}

}  // namespace

TEST_CASE("MonotoneValue ordering and reciprocal") {
  const auto two = MonotoneValue::finite(2.0);
  const auto inf = MonotoneValue::infinite("support");
  CHECK(inf > two);
  CHECK(inf == MonotoneValue::infinite("other"));
  CHECK(std::isinf(inf.value()));
  CHECK(inf.reason() == "support");
  CHECK(two.reciprocal().value() == doctest::Approx(0.5));
  CHECK(inf.reciprocal().value() == 0.0);
  CHECK(MonotoneValue::finite(0.0).reciprocal().is_infinite());
  CHECK(inf.to_string() == "inf");
  CHECK(two.to_string() == "2");
}

TEST_CASE("rmax and dmax closed forms") {
  const DensityMatrix rho = testing::diag_qubit(0.8);
  const DensityMatrix sigma = testing::diag_qubit(0.4);
  CHECK(rmax(rho, sigma).value() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(dmax(rho, sigma).value() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rmax(rho, rho).value() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rmax(rho, testing::diag_qubit(1.0)).is_infinite());
  CHECK(rmax(testing::diag_qubit(1.0), rho).value() == doctest::Approx(1.25).epsilon(1e-12));
  // Non-commuting: rmax(|+><+| || 1/2) = 2.
  CHECK(rmax(DensityMatrix::pure(maximally_coherent(2)), DensityMatrix::maximally_mixed(2)).value() ==
        doctest::Approx(2.0).epsilon(1e-12));
  // Definition: rho <= rmax * sigma, tight.
  std::mt19937_64 rng(4);
  for (int k = 0; k < 20; ++k) {
    const DensityMatrix r = random_state(3, rng);
    const DensityMatrix s = random_state(3, rng);
    const double l = rmax(r, s).value();
    const HermitianMatrix gap = symmetrize(HermitianMatrix(l * s.matrix() - r.matrix()));
    CHECK(min_eigenvalue(gap) > -1e-9 * l);
    CHECK(min_eigenvalue(gap) < 1e-9 * l);
  }
}

TEST_CASE("noisy |+>: robustness, weight and Omega") {
  for (double q : {0.2, 0.5, 0.8}) {
    const DensityMatrix rho = noisy_plus(q);
    const double r = robustness(coh2(), rho).value();
    const double w = weight(coh2(), rho).value();
    const double om = projective_robustness(coh2(), rho).value();
    CHECK(r == doctest::Approx(testing::robustness_grid(rho, 100000)).epsilon(1e-6));
    CHECK(w == doctest::Approx(testing::weight_grid(rho.matrix(), 100000)).epsilon(1e-6));
    // The diagonal cone cannot absorb coherence, so the free-noise robustness diverges.
    CHECK(std_robustness(coh2(), rho).is_infinite());
    const OracleResult o = omega_grid(coh2(), rho, 10000);
    CHECK(o.contains(om, 1e-7 * om));
  }
  const DensityMatrix half = noisy_plus(0.5);
  CHECK(robustness(coh2(), half).value() == doctest::Approx(1.5).epsilon(1e-8));
  CHECK(weight(coh2(), half).value() == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(projective_robustness(coh2(), half).value() == doctest::Approx(3.0).epsilon(1e-8));
}

TEST_CASE("free states have Omega = 1 and full weight") {
  std::mt19937_64 rng(8);
  for (int k = 0; k < 10; ++k) {
    const DensityMatrix s = magic().random_free_state(rng);
    CHECK(projective_robustness(magic(), s).value() == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(robustness(magic(), s).value() == doctest::Approx(1.0).epsilon(1e-7));
  }
  CHECK(weight(coh2(), testing::diag_qubit(0.3)).value() == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("pure resource states") {
  const DensityMatrix plus = DensityMatrix::pure(maximally_coherent(2));
  CHECK(projective_robustness(coh2(), plus).is_infinite());
  CHECK(free_projective_robustness(coh2(), plus).is_infinite());
  CHECK(weight(coh2(), plus).value() == doctest::Approx(0.0).epsilon(1e-7));
  CHECK(robustness(coh2(), plus).value() == doctest::Approx(2.0).epsilon(1e-7));
  const DensityMatrix t = DensityMatrix::pure(t_state());
  CHECK(projective_robustness(magic(), t).is_infinite());
  const auto ppt = make_theory(TheoryKind::PptEntanglement, {2, 2});
  const DensityMatrix phi = DensityMatrix::pure(maximally_entangled(2));
  CHECK(projective_robustness(ppt, phi).is_infinite());
  CHECK(robustness(ppt, phi).value() == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("invariance under free unitaries") {
  std::mt19937_64 rng(12);
  const auto coh3 = make_theory(TheoryKind::Coherence, {3});
  for (int k = 0; k < 5; ++k) {
    const DensityMatrix rho = random_state(3, rng);
    const DensityMatrix moved = testing::conjugate(rho, testing::random_incoherent_unitary(3, rng));
    const double a = projective_robustness(coh3, rho).value();
    CHECK(projective_robustness(coh3, moved).value() == doctest::Approx(a).epsilon(1e-6));
  }
  const DensityMatrix t = noisy_t(0.3);
  const double base = projective_robustness(magic(), t).value();
  for (const auto& u : single_qubit_cliffords()) {
    CHECK(projective_robustness(magic(), testing::conjugate(t, u)).value() ==
          doctest::Approx(base).epsilon(1e-6));
  }
}

TEST_CASE("free fidelity") {
  CHECK(free_fidelity(magic(), DensityMatrix::pure(t_state())) ==
        doctest::Approx(testing::stabilizer_vertex_fidelity(t_state())).epsilon(1e-8));
  std::mt19937_64 rng(2);
  for (int k = 0; k < 5; ++k) {
    const ComplexVector phi = random_pure(2, rng);
    CHECK(free_fidelity(magic(), DensityMatrix::pure(phi)) ==
          doctest::Approx(testing::stabilizer_vertex_fidelity(phi)).epsilon(1e-8));
  }
  const auto ppt = make_theory(TheoryKind::PptEntanglement, {2, 2});
  CHECK(free_fidelity(ppt, DensityMatrix::pure(maximally_entangled(2))) == doctest::Approx(0.5).epsilon(1e-6));
  const auto coh4 = make_theory(TheoryKind::Coherence, {4});
  CHECK(free_fidelity(coh4, DensityMatrix::pure(maximally_coherent(4))) == doctest::Approx(0.25).epsilon(1e-8));
}

TEST_CASE("free projective robustness dominates and matches its definition") {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 5; ++k) {
    const DensityMatrix rho = random_state(2, rng);
    // Coherent residuals never lie in the diagonal cone.
    CHECK(free_projective_robustness(coh2(), rho).is_infinite());
    CHECK(definitional_omega_free(coh2(), rho, 4000).is_infinite());
  }
  const DensityMatrix d = testing::diag_qubit(0.7);
  CHECK(free_projective_robustness(coh2(), d).value() == doctest::Approx(1.0).epsilon(1e-7));
  for (double p : {0.2, 0.5}) {
    const DensityMatrix rho = noisy_t(p);
    const double omf = free_projective_robustness(magic(), rho).value();
    CHECK(omf >= projective_robustness(magic(), rho).value() * (1.0 - 1e-7));
    CHECK(std_robustness(magic(), rho).value() >= robustness(magic(), rho).value() - 1e-7);
    CHECK(definitional_omega_free(magic(), rho, 4096).contains(omf, 1e-6 * omf));
  }
}

TEST_CASE("Omega witnesses certify the value") {
  std::mt19937_64 rng(77);
  for (int k = 0; k < 6; ++k) {
    const DensityMatrix rho = random_state(2, rng);
    const ResourceTheory& th = k % 2 ? magic() : coh2();
    const MonotoneProgram mp = build_program(ProgramKind::Omega, th, rho);
    const ConicSolution sol = solve(mp.program);
    REQUIRE(sol.optimal());
    const auto w = extract_omega_witness(sol, mp, th, rho);
    REQUIRE(w.has_value());
    const WitnessCheck c = check_omega_witness(th, rho, w->a, w->b, sol.primal_value);
    CHECK(c.valid);
    CHECK(c.ratio == doctest::Approx(sol.primal_value).epsilon(1e-5));
  }
  // A deliberately wrong witness is rejected.
  const DensityMatrix rho = noisy_plus(0.5);
  const HermitianMatrix a = HermitianMatrix::Identity(2, 2);
  const HermitianMatrix b = HermitianMatrix::Identity(2, 2) * 0.1;
  CHECK_FALSE(check_omega_witness(coh2(), rho, a, b, 3.0).valid);
}

TEST_CASE("measure names") {
  for (Measure m : {Measure::Omega, Measure::OmegaFree, Measure::Robustness, Measure::StdRobustness,
                    Measure::Weight}) {
    CHECK(parse_measure(to_string(m)) == m);
  }
  CHECK_THROWS_AS(parse_measure("entropy"), ValidationError);
  CHECK(evaluate(Measure::Omega, coh2(), noisy_plus(0.5)).value() == doctest::Approx(3.0).epsilon(1e-8));
}

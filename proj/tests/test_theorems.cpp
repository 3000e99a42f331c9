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

#include "qrt/oracle.hpp"
#include "qrt/theorems.hpp"
#include "test_support.hpp"

using namespace qrt;
using namespace qrt::states;

namespace {

const ResourceTheory& coh2() {
  static const ResourceTheory t = make_theory(TheoryKind::Coherence, {2});
  return t;
}

// Omega of the noisy |+> family from the oracle bracket, not the solver.
double oracle_omega(double q) {
  const OracleResult o = omega_grid(coh2(), noisy_plus(q), 20000);
  return 0.5 * (o.lower + o.upper);
}

}  // namespace

TEST_CASE("conversions within the noisy |+> family") {
  const double o3 = oracle_omega(0.3), o6 = oracle_omega(0.6);
  CHECK(o3 == doctest::Approx(17.0 / 3.0).epsilon(1e-7));
  CHECK(o6 == doctest::Approx(7.0 / 3.0).epsilon(1e-7));

  const ConversionVerdict down = check_conversion(coh2(), noisy_plus(0.3), noisy_plus(0.6));
  CHECK(down.verdict == Verdict::Possible);
  CHECK(down.basis == "affine_criterion");
  CHECK(down.omega_from.value() == doctest::Approx(o3).epsilon(1e-7));
  CHECK(down.omega_to.value() == doctest::Approx(o6).epsilon(1e-7));

  const ConversionVerdict up = check_conversion(coh2(), noisy_plus(0.6), noisy_plus(0.3));
  CHECK(up.verdict == Verdict::Impossible);
  CHECK(up.basis == "monotonicity");
  CHECK_FALSE(up.boundary);

  const ConversionVerdict pure = check_conversion(coh2(), noisy_plus(0.3), DensityMatrix::pure(maximally_coherent(2)));
  CHECK(pure.verdict == Verdict::Impossible);
  CHECK(pure.omega_to.is_infinite());
}

TEST_CASE("reflexive conversions are possible in affine theories") {
  std::mt19937_64 rng(3);
  const auto coh3 = make_theory(TheoryKind::Coherence, {3});
  for (int k = 0; k < 5; ++k) {
    const DensityMatrix rho = random_state(3, rng);
    CHECK(check_conversion(coh3, rho, rho).verdict == Verdict::Possible);
  }
  const DensityMatrix plus = DensityMatrix::pure(maximally_coherent(2));
  CHECK(check_conversion(coh2(), plus, plus).verdict == Verdict::Possible);
}

TEST_CASE("full-dimensional theories use the free Omega of the target") {
  const auto magic = make_theory(TheoryKind::MagicQubit, {2});
  const ConversionVerdict v = check_conversion(magic, noisy_t(0.1), noisy_t(0.5));
  REQUIRE(v.omega_free_to.has_value());
  CHECK(v.omega_from >= *v.omega_free_to);
  CHECK(v.verdict == Verdict::Possible);
  CHECK(v.basis == "full_dimensional_sufficiency");
  CHECK(check_conversion(magic, noisy_t(0.5), noisy_t(0.1)).verdict == Verdict::Impossible);
  CHECK_THROWS_AS(check_conversion(magic, noisy_t(0.1), DensityMatrix::maximally_mixed(4)), ValidationError);
}

TEST_CASE("verdicts are monotone in the target's Omega") {
  // Impossible for rho' implies not Possible for any rho'' with larger Omega.
  const DensityMatrix rho = noisy_plus(0.5);
  bool seen_impossible = false;
  double omega_impossible = 0.0;
  for (double q = 0.9; q >= 0.1; q -= 0.05) {
    const ConversionVerdict v = check_conversion(coh2(), rho, noisy_plus(q));
    if (seen_impossible && v.omega_to.value() >= omega_impossible + 1e-6) {
      CHECK(v.verdict != Verdict::Possible);
    }
    if (v.verdict == Verdict::Impossible && !seen_impossible) {
      seen_impossible = true;
      omega_impossible = v.omega_to.value();
    }
  }
  CHECK(seen_impossible);
}

TEST_CASE("error thresholds") {
  const double om = oracle_omega(0.5);
  const DensityMatrix plus = DensityMatrix::pure(maximally_coherent(2));
  CHECK(error_threshold(coh2(), noisy_plus(0.5), plus) == doctest::Approx(1.0 / (om + 1.0)).epsilon(1e-7));
  CHECK(error_threshold(coh2(), noisy_plus(0.5), plus) == doctest::Approx(0.25).epsilon(1e-7));
  CHECK(error_threshold(coh2(), testing::diag_qubit(0.4), plus) == doctest::Approx(0.5).epsilon(1e-7));
  CHECK(error_threshold(MonotoneValue::infinite("support"), 0.5) == 0.0);
  CHECK_THROWS_AS(error_threshold(coh2(), noisy_plus(0.5), testing::diag_qubit(1.0)), ValidationError);
  CHECK_THROWS_AS(error_threshold(MonotoneValue::finite(3.0), 1.0), ValidationError);

  const auto magic = make_theory(TheoryKind::MagicQubit, {2});
  const DensityMatrix rho_t = noisy_t(0.2);
  const OracleResult o = omega_grid(magic, rho_t, 100000);
  const double ff = testing::stabilizer_vertex_fidelity(t_state());
  CHECK(ff == doctest::Approx((2.0 + std::sqrt(2.0)) / 4.0).epsilon(1e-12));
  const double expected = 1.0 / (ff / (1.0 - ff) * o.upper + 1.0);
  CHECK(error_threshold(magic, rho_t, DensityMatrix::pure(t_state())) == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("achievable fidelity") {
  const CanonicalState plus = coh2().canonical_state("maximally_coherent");
  const BoundReport r = achievable_fidelity(coh2(), noisy_plus(0.5), plus);
  CHECK(r.applicability.affine);
  CHECK(r.applicability.tight);
  REQUIRE(r.achievable_fidelity.has_value());
  CHECK(1.0 - *r.achievable_fidelity == doctest::Approx(0.25).epsilon(1e-7));
  CHECK(1.0 - *r.achievable_fidelity == doctest::Approx(r.epsilon_threshold).epsilon(1e-12));

  const BoundReport free = achievable_fidelity(coh2(), testing::diag_qubit(0.5), plus);
  REQUIRE(free.achievable_fidelity.has_value());
  CHECK(*free.achievable_fidelity == doctest::Approx(0.5).epsilon(1e-7));

  // Not the maximal family member: threshold only.
  const auto coh3 = make_theory(TheoryKind::Coherence, {3});
  const DensityMatrix rho3 = DensityMatrix(symmetrize(HermitianMatrix(
      0.8 * DensityMatrix::pure(maximally_coherent(3)).matrix() + 0.2 * HermitianMatrix::Identity(3, 3) / 3.0)));
  const BoundReport sub = achievable_fidelity(coh3, rho3, coh3.canonical_state("maximally_coherent", 2));
  CHECK_FALSE(sub.applicability.max_robustness_target);
  CHECK_FALSE(sub.achievable_fidelity.has_value());
  CHECK_FALSE(sub.note.empty());

  // PPT: equality of the two robustnesses is checked numerically.
  const auto ppt = make_theory(TheoryKind::PptEntanglement, {2, 2});
  const CanonicalState phi = ppt.canonical_state("maximally_entangled");
  const DensityMatrix iso(symmetrize(HermitianMatrix(0.9 * phi.state.matrix() + 0.1 * HermitianMatrix::Identity(4, 4) / 4.0)));
  const BoundReport p = achievable_fidelity(ppt, iso, phi);
  CHECK_FALSE(p.applicability.affine);
  CHECK(p.applicability.robustness_equal);
  CHECK(p.applicability.target_robustness.value() ==
        doctest::Approx(p.applicability.target_std_robustness.value()).epsilon(1e-6));
  CHECK(p.applicability.tight);
  CHECK(p.free_fidelity == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("distillable index") {
  CHECK(distillable_index(MonotoneValue::finite(3.0), 0.5) == 4);
  CHECK(distillable_index(MonotoneValue::finite(3.0), 0.25) == 2);
  CHECK(distillable_index(MonotoneValue::finite(1.0), 1e-6) == 1);
  CHECK_THROWS_AS(distillable_index(MonotoneValue::finite(3.0), 0.0), ValidationError);
  CHECK_THROWS_AS(distillable_index(MonotoneValue::finite(3.0), 1.0), ValidationError);
  CHECK_THROWS_AS(distillable_index(MonotoneValue::infinite("support"), 0.1), InfiniteResult);
  CHECK(distillable_index(coh2(), noisy_plus(0.5), 0.5, "maximally_coherent") == 4);
  CHECK_THROWS_AS(distillable_index(coh2(), noisy_plus(0.5), 0.5, "maximally_entangled"), ValidationError);

  // Agrees with the largest m whose threshold is met.
  for (double om : {1.0, 1.7, 3.0, 12.5}) {
    for (double eps : {0.01, 0.1, 0.3, 0.6}) {
      long long best = 0;
      for (int m = 1; m <= 64; ++m) {
        const double f = 1.0 / m;
        const double thr = m == 1 ? 0.0 : error_threshold(MonotoneValue::finite(om), f);
        if (thr <= eps + 1e-12) best = m;
      }
      const long long m = distillable_index(MonotoneValue::finite(om), eps);
      if (m <= 64) CHECK(m == best);
    }
  }
}

TEST_CASE("overhead bound") {
  const OverheadBound b = overhead_bound(MonotoneValue::finite(3.0), 0.5, 0.01);
  CHECK(b.copies_lower == doctest::Approx(std::log(99.0) / std::log(3.0)).epsilon(1e-12));
  CHECK(b.copies_lower == doctest::Approx(4.18266).epsilon(1e-5));
  REQUIRE(b.copies.has_value());
  CHECK(*b.copies == 5);
  CHECK_FALSE(b.infinite);

  // A single copy sits exactly at the threshold.
  const double eps = error_threshold(MonotoneValue::finite(3.0), 0.5);
  const OverheadBound one = overhead_bound(MonotoneValue::finite(3.0), 0.5, eps);
  CHECK(one.copies_lower == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(*one.copies == 1);

  // Above the free error nothing is needed; below it a free state never suffices.
  CHECK(overhead_bound(MonotoneValue::finite(3.0), 0.5, 0.6).copies_lower == 0.0);
  const OverheadBound never = overhead_bound(MonotoneValue::finite(1.0), 0.5, 0.1);
  CHECK(never.infinite);
  CHECK_FALSE(never.copies.has_value());

  // n copies with Omega^n reach eps.
  for (double e : {1e-2, 1e-4, 1e-8}) {
    const OverheadBound o = overhead_bound(MonotoneValue::finite(1.3), 0.8, e);
    const double om_n = std::pow(1.3, static_cast<double>(*o.copies));
    CHECK(error_threshold(MonotoneValue::finite(om_n), 0.8) <= e + 1e-9);
  }

  const auto magic = make_theory(TheoryKind::MagicQubit, {2});
  double prev = 0.0;
  for (double e = 1e-2; e >= 1e-12; e /= 10.0) {
    const OverheadBound o = overhead_bound(magic, noisy_t(0.2), DensityMatrix::pure(t_state()), e);
    CHECK(o.copies_lower >= prev);
    prev = o.copies_lower;
  }
}

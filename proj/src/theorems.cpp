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

#include "qrt/theorems.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace qrt {

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Possible:
      return "possible";
    case Verdict::Impossible:
      return "impossible";
    case Verdict::NecessaryConditionHolds:
      return "necessary_condition_holds";
  }
  return "unknown";
}

namespace {

/// -1: a < b outside the band, +1: a > b outside the band, 0: inside.
/// Identical values (including two infinities) compare as 0 with `exact` set.
int compare(const MonotoneValue& a, const MonotoneValue& b, bool& exact) {
  exact = (a == b);
  if (exact) return 0;
  if (a.is_infinite()) return 1;
  if (b.is_infinite()) return -1;
  const double diff = a.value() - b.value();
  if (diff > kVerdictBand) return 1;
  if (diff < -kVerdictBand) return -1;
  return 0;
}

void require_same_space(const ResourceTheory& theory, const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != theory.dim() || b.dim() != theory.dim()) {
    throw ValidationError("states must have the theory's dimension " + std::to_string(theory.dim()));
  }
}

void require_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw ValidationError("epsilon must lie in (0, 1), got " + std::to_string(epsilon));
  }
}

double checked_free_fidelity(const ResourceTheory& theory, const DensityMatrix& phi,
                             const NumericPolicy& policy) {
  const double f = free_fidelity(theory, phi, policy);
  if (f >= 1.0 - 1e-9) throw ValidationError("target is free (F_F = 1); no threshold exists");
  return f;
}

/// Canonical states of maximal size the theory ships at its dimension.
std::vector<CanonicalState> family_candidates(const ResourceTheory& theory) {
  std::vector<CanonicalState> out;
  switch (theory.kind()) {
    case TheoryKind::Coherence:
      out.push_back(theory.canonical_state("maximally_coherent"));
      break;
    case TheoryKind::PptEntanglement:
      out.push_back(theory.canonical_state("maximally_entangled"));
      break;
    case TheoryKind::MagicQubit:
      out.push_back(theory.canonical_state("t_state"));
      break;
    case TheoryKind::Imaginarity:
      break;
  }
  return out;
}

}  // namespace

ConversionVerdict check_conversion(const ResourceTheory& theory, const DensityMatrix& rho,
                                   const DensityMatrix& rho_prime, const NumericPolicy& policy) {
  require_same_space(theory, rho, rho_prime);
  ConversionVerdict v;
  v.omega_from = projective_robustness(theory, rho, policy);
  v.omega_to = projective_robustness(theory, rho_prime, policy);
  v.target_robustness_finite = robustness(theory, rho_prime, policy).is_finite();

  bool exact = false;
  const int c = compare(v.omega_from, v.omega_to, exact);
  if (c < 0) {
    v.verdict = Verdict::Impossible;
    v.basis = "monotonicity";
    return v;
  }
  const bool in_band = (c == 0 && !exact);

  if (theory.is_affine()) {
    v.basis = "affine_criterion";
    if (in_band) {
      v.verdict = Verdict::NecessaryConditionHolds;
      v.boundary = true;
      v.note = "boundary: Omega values agree within the tolerance band";
    } else {
      v.verdict = Verdict::Possible;
    }
  } else {
    v.omega_free_to = free_projective_robustness(theory, rho_prime, policy);
    bool exact_free = false;
    const int cf = compare(v.omega_from, *v.omega_free_to, exact_free);
    if (cf > 0 || exact_free) {
      v.verdict = Verdict::Possible;
      v.basis = "full_dimensional_sufficiency";
    } else {
      v.verdict = Verdict::NecessaryConditionHolds;
      v.basis = "monotonicity";
      if (cf == 0 || in_band) {
        v.boundary = true;
        v.note = "boundary: Omega values agree within the tolerance band";
      }
    }
  }
  if (!v.target_robustness_finite) {
    if (!v.note.empty()) v.note += "; ";
    v.note += "R_F(target) is infinite, outside the criterion's standing assumption";
  }
  return v;
}

double error_threshold(const MonotoneValue& omega, double free_fidelity) {
  if (!(free_fidelity > 0.0 && free_fidelity < 1.0)) {
    throw ValidationError("free fidelity must lie in (0, 1)");
  }
  if (omega.is_infinite()) return 0.0;
  return 1.0 / (free_fidelity / (1.0 - free_fidelity) * omega.value() + 1.0);
}

double error_threshold(const ResourceTheory& theory, const DensityMatrix& rho,
                       const DensityMatrix& phi, const NumericPolicy& policy) {
  require_same_space(theory, rho, phi);
  const double f = checked_free_fidelity(theory, phi, policy);
  return error_threshold(projective_robustness(theory, rho, policy), f);
}

BoundReport achievable_fidelity(const ResourceTheory& theory, const DensityMatrix& rho,
                                const CanonicalState& target, const NumericPolicy& policy) {
  require_same_space(theory, rho, target.state);
  BoundReport r;
  r.free_fidelity = checked_free_fidelity(theory, target.state, policy);
  r.omega = projective_robustness(theory, rho, policy);
  r.epsilon_threshold = error_threshold(r.omega, r.free_fidelity);

  Applicability& a = r.applicability;
  a.affine = theory.is_affine();
  a.target_robustness = robustness(theory, target.state, policy);
  a.target_std_robustness = std_robustness(theory, target.state, policy);
  a.robustness_equal =
      a.target_robustness.is_finite() && a.target_std_robustness.is_finite() &&
      std::abs(a.target_robustness.value() - a.target_std_robustness.value()) <= 1e-6;

  const auto family = family_candidates(theory);
  if (family.empty()) {
    a.family_max_robustness = a.target_robustness;
    a.max_robustness_target = false;
    r.note = "theory ships no canonical family to test maximal robustness against";
  } else {
    MonotoneValue best = MonotoneValue::finite(0.0);
    for (const auto& c : family) best = std::max(best, robustness(theory, c.state, policy));
    a.family_max_robustness = best;
    a.max_robustness_target =
        best.is_finite() && a.target_robustness.value() >= best.value() - 1e-6;
    if (!a.max_robustness_target) r.note = "invalid target: robustness below the canonical maximum";
  }

  a.tight = a.max_robustness_target && (a.affine || a.robustness_equal);
  if (a.tight) {
    r.achievable_fidelity = 1.0 - r.epsilon_threshold;
  } else if (r.note.empty()) {
    r.note = "non-tight: neither affine nor R_F = R^F_F on the target; threshold only";
  }
  return r;
}

long long distillable_index(const MonotoneValue& omega, double epsilon) {
  require_epsilon(epsilon);
  if (omega.is_infinite()) throw InfiniteResult("distillable index needs a finite Omega");
  const double m = epsilon / (1.0 - epsilon) * omega.value() + 1.0 + 1e-9;
  if (m >= 9.0e18) throw InfiniteResult("distillable index overflows");
  return static_cast<long long>(std::floor(m));
}

long long distillable_index(const ResourceTheory& theory, const DensityMatrix& rho, double epsilon,
                            std::string_view family, const NumericPolicy& policy) {
  const bool ok = (family == "maximally_coherent" && theory.kind() == TheoryKind::Coherence) ||
                  (family == "maximally_entangled" && theory.kind() == TheoryKind::PptEntanglement);
  if (!ok) {
    throw ValidationError("family '" + std::string(family) + "' has no F_F = 1/m form in theory " +
                          theory.name());
  }
  require_epsilon(epsilon);
  if (rho.dim() != theory.dim()) throw ValidationError("state dimension does not match theory");
  return distillable_index(projective_robustness(theory, rho, policy), epsilon);
}

OverheadBound overhead_bound(const MonotoneValue& omega, double free_fidelity, double epsilon) {
  require_epsilon(epsilon);
  if (!(free_fidelity > 0.0 && free_fidelity < 1.0)) {
    throw ValidationError("free fidelity must lie in (0, 1)");
  }
  OverheadBound b;
  const double arg = (1.0 - epsilon) * (1.0 - free_fidelity) / (epsilon * free_fidelity);
  if (omega.is_infinite()) {
    b.raw = 0.0;
    b.note = "Omega is infinite; a single copy is not excluded";
  } else if (omega.value() <= 1.0 + 1e-9) {
    if (arg > 1.0) {
      b.infinite = true;
      b.raw = std::numeric_limits<double>::infinity();
      b.copies_lower = b.raw;
      b.note = "free input cannot beat the free-achievable error";
      return b;
    }
    b.raw = 0.0;
  } else {
    b.raw = std::log(arg) / std::log(omega.value());
  }
  b.copies_lower = std::max(0.0, b.raw);
  const double r = std::round(b.copies_lower);
  b.copies = static_cast<long long>(std::abs(b.copies_lower - r) < 1e-9 ? r : std::ceil(b.copies_lower));
  return b;
}

OverheadBound overhead_bound(const ResourceTheory& theory, const DensityMatrix& rho,
                             const DensityMatrix& phi, double epsilon, const NumericPolicy& policy) {
  require_same_space(theory, rho, phi);
  require_epsilon(epsilon);
  const double f = checked_free_fidelity(theory, phi, policy);
  return overhead_bound(projective_robustness(theory, rho, policy), f, epsilon);
}

}  // namespace qrt

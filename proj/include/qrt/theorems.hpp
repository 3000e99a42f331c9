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

#pragma once

// Decision procedures and numeric bounds for probabilistic conversions,
// all driven by the projective robustness.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qrt/monotones.hpp"

namespace qrt {

/// Raised when a bound needs a finite Omega (or a non-free target) and gets
/// an infinite one.
class InfiniteResult : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Omega values closer than this give an inconclusive "boundary" verdict.
inline constexpr double kVerdictBand = 1e-7;

enum class Verdict { Possible, Impossible, NecessaryConditionHolds };

std::string to_string(Verdict verdict);

struct ConversionVerdict {
  Verdict verdict = Verdict::NecessaryConditionHolds;
  /// "monotonicity", "affine_criterion" or "full_dimensional_sufficiency".
  std::string basis;
  MonotoneValue omega_from;
  MonotoneValue omega_to;
  /// Omega^F of the target; only evaluated for full-dimensional theories.
  std::optional<MonotoneValue> omega_free_to;
  /// A comparison fell inside the tolerance band.
  bool boundary = false;
  /// Whether R_F(target) is finite. The affine/sufficiency criteria assume it;
  /// the status is reported, never used to decide.
  bool target_robustness_finite = true;
  std::string note;
};

/// Can rho be taken to rho_prime by a (probabilistic) free operation?
/// Impossible means not reachable even asymptotically.
ConversionVerdict check_conversion(const ResourceTheory& theory, const DensityMatrix& rho,
                                   const DensityMatrix& rho_prime,
                                   const NumericPolicy& policy = NumericPolicy::from_environment());

/// (F/(1-F) * omega + 1)^{-1}; 0 when omega is infinite.
double error_threshold(const MonotoneValue& omega, double free_fidelity);

/// Smallest error 1 - F any probabilistic free protocol can reach from rho
/// towards the pure target phi. Throws ValidationError for a free target.
double error_threshold(const ResourceTheory& theory, const DensityMatrix& rho,
                       const DensityMatrix& phi,
                       const NumericPolicy& policy = NumericPolicy::from_environment());

struct Applicability {
  /// The theory is affine.
  bool affine = false;
  /// R_F(target) == R^F_F(target) within 1e-6, checked numerically.
  bool robustness_equal = false;
  MonotoneValue target_robustness;
  MonotoneValue target_std_robustness;
  /// R_F(target) is maximal among the theory's canonical states of this size.
  bool max_robustness_target = false;
  MonotoneValue family_max_robustness;
  /// The threshold is attained, so achievable_fidelity is reported.
  bool tight = false;
};

struct BoundReport {
  double epsilon_threshold = 1.0;
  std::optional<double> achievable_fidelity;
  std::optional<long long> distillable_index;
  std::optional<double> overhead;
  Applicability applicability;
  MonotoneValue omega;
  double free_fidelity = 0.0;
  std::string note;
};

/// Threshold for the target plus the achievability analysis. When neither
/// condition holds, or the target is not of maximal robustness, only the
/// threshold is reported and `note` says why.
BoundReport achievable_fidelity(const ResourceTheory& theory, const DensityMatrix& rho,
                                const CanonicalState& target,
                                const NumericPolicy& policy = NumericPolicy::from_environment());

/// floor(eps/(1-eps) * omega + 1), nudged by 1e-9 before the floor.
/// eps must lie in (0, 1); omega must be finite.
long long distillable_index(const MonotoneValue& omega, double epsilon);

/// Largest m such that the m-level family target (F_F = 1/m) is reachable to
/// error epsilon. `family` must be the theory's maximal family.
long long distillable_index(const ResourceTheory& theory, const DensityMatrix& rho, double epsilon,
                            std::string_view family,
                            const NumericPolicy& policy = NumericPolicy::from_environment());

struct OverheadBound {
  /// log_omega((1-eps)(1-F)/(eps F)), clamped at 0; +inf when no finite
  /// number of copies suffices.
  double copies_lower = 0.0;
  /// The unclamped logarithm.
  double raw = 0.0;
  /// ceil(copies_lower), absent when infinite.
  std::optional<long long> copies;
  bool infinite = false;
  std::string note;
};

/// Minimum copies of rho needed to reach error epsilon on a target of free
/// fidelity F. Needs a theory closed under tensor products.
OverheadBound overhead_bound(const MonotoneValue& omega, double free_fidelity, double epsilon);

OverheadBound overhead_bound(const ResourceTheory& theory, const DensityMatrix& rho,
                             const DensityMatrix& phi, double epsilon,
                             const NumericPolicy& policy = NumericPolicy::from_environment());

}  // namespace qrt

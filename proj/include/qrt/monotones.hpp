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

#include <compare>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "qrt/programs.hpp"

namespace qrt {

/// An extended-real measure value: finite, or Infinite with a reason.
/// Infinite compares greater than every finite value and equal to itself.
class MonotoneValue {
 public:
  static MonotoneValue finite(double value, std::shared_ptr<const ConicSolution> certificate = {});
  static MonotoneValue infinite(std::string reason);

  bool is_finite() const { return finite_; }
  bool is_infinite() const { return !finite_; }
  /// +inf when infinite.
  double value() const;
  const std::string& reason() const { return reason_; }
  const std::shared_ptr<const ConicSolution>& certificate() const { return certificate_; }

  /// 1/value, with 0 -> Infinite and Infinite -> 0.
  MonotoneValue reciprocal() const;

  std::partial_ordering operator<=>(const MonotoneValue& other) const;
  bool operator==(const MonotoneValue& other) const;
  std::partial_ordering operator<=>(double other) const { return value() <=> other; }
  bool operator==(double other) const { return finite_ && value_ == other; }

  /// "inf" or the number with `precision` significant digits.
  std::string to_string(int precision = 9) const;

 private:
  bool finite_ = true;
  double value_ = 0.0;
  std::string reason_;
  std::shared_ptr<const ConicSolution> certificate_;
};

/// Raised when a conic solve ends without a usable verdict.
class SolverFailure : public std::runtime_error {
 public:
  SolverFailure(const std::string& what, ConicSolution solution)
      : std::runtime_error(what), solution_(std::move(solution)) {}
  const ConicSolution& solution() const { return solution_; }

 private:
  ConicSolution solution_;
};

/// inf { lambda : rho <= lambda sigma }, closed form via sigma^{-1/2} rho sigma^{-1/2}
/// on supp(sigma). Infinite("support") when supp(rho) is not inside supp(sigma).
MonotoneValue rmax(const DensityMatrix& rho, const DensityMatrix& sigma, double rank_tol = 1e-9);
/// log2 of rmax.
MonotoneValue dmax(const DensityMatrix& rho, const DensityMatrix& sigma, double rank_tol = 1e-9);

/// Generalized robustness R_F(rho) = min_{sigma in F} Rmax(rho || sigma).
MonotoneValue robustness(const ResourceTheory& theory, const DensityMatrix& rho,
                         const NumericPolicy& policy = NumericPolicy::from_environment());
/// Resource weight W_F(rho), the largest free fraction w with rho >= w sigma. In [0, 1].
MonotoneValue weight(const ResourceTheory& theory, const DensityMatrix& rho,
                     const NumericPolicy& policy = NumericPolicy::from_environment());
/// Standard (free) robustness R^F_F(rho).
MonotoneValue std_robustness(const ResourceTheory& theory, const DensityMatrix& rho,
                             const NumericPolicy& policy = NumericPolicy::from_environment());
/// Projective robustness Omega_F(rho). Infinite when no free state shares supp(rho).
MonotoneValue projective_robustness(const ResourceTheory& theory, const DensityMatrix& rho,
                                    const NumericPolicy& policy = NumericPolicy::from_environment());
/// Free projective robustness Omega^F_F(rho).
MonotoneValue free_projective_robustness(
    const ResourceTheory& theory, const DensityMatrix& rho,
    const NumericPolicy& policy = NumericPolicy::from_environment());
/// F_F(phi) = max_{sigma in F} <phi|sigma|phi> for a pure target.
double free_fidelity(const ResourceTheory& theory, const DensityMatrix& target,
                     const NumericPolicy& policy = NumericPolicy::from_environment());

enum class Measure { Omega, OmegaFree, Robustness, StdRobustness, Weight };

Measure parse_measure(std::string_view name);
std::string to_string(Measure measure);
MonotoneValue evaluate(Measure measure, const ResourceTheory& theory, const DensityMatrix& rho,
                       const NumericPolicy& policy = NumericPolicy::from_environment());

}  // namespace qrt

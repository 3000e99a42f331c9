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

#include <stdexcept>
#include <string>

namespace qrt {

/// Tolerances shared by validation, the conic solver and the tests.
struct NumericPolicy {
  /// PSD check: min eigenvalue >= -psd_tol * ||M||.
  double psd_tol = 1e-9;
  /// Equality of Hermitian entries, traces, and similar scalar checks.
  double eq_tol = 1e-9;
  /// Target relative gap / infeasibility for the interior-point solver.
  double solver_tol = 1e-10;
  /// Hermiticity check on raw input matrices.
  double hermitian_tol = 1e-12;
  /// Relative eigenvalue threshold deciding the rank of a support.
  double rank_tol = 1e-9;
  /// Iteration cap for the interior-point solver.
  int max_iterations = 200;

  /// Defaults, with `QRT_SOLVER_TOL` overriding `solver_tol` when set.
  static NumericPolicy from_environment();
};

/// Raised for inputs that violate a documented invariant.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace qrt

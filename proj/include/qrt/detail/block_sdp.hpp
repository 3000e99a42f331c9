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

// Dense primal-dual interior-point method for real block-diagonal SDPs in
// standard form:
//
//   (P)  min <C, X>   s.t. <A_i, X> = b_i,  X >= 0
//   (D)  max b^T y    s.t. S = C - sum_i y_i A_i >= 0
//
// Blocks are either dense symmetric (PSD cone) or diagonal (nonnegative
// orthant, stored as a column vector). Search direction is HKM with a
// Mehrotra predictor-corrector, from an infeasible starting point.

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace qrt::detail {

struct SdpBlock {
  Eigen::Index size = 0;
  /// Diagonal blocks store C, A_i, X and S as size x 1 vectors.
  bool diagonal = false;
};

struct BlockSdp {
  std::vector<SdpBlock> blocks;
  /// c[k]: block k of C.
  std::vector<Eigen::MatrixXd> c;
  /// a[i][k]: block k of A_i; an empty matrix marks a zero block.
  std::vector<std::vector<Eigen::MatrixXd>> a;
  Eigen::VectorXd b;

  Eigen::Index num_constraints() const { return b.size(); }
};

enum class SdpStatus {
  Optimal,
  /// (D) infeasible: X with A(X) = 0, <C, X> < 0 found.
  DualInfeasible,
  /// (P) infeasible: y with -A^T y >= 0, b^T y > 0 found.
  PrimalInfeasible,
  NumericalFailure,
};

struct SdpOptions {
  double tol = 1e-8;
  /// Threshold on the normalized residual of an infeasibility certificate.
  double infeasibility_tol = 1e-7;
  /// On breakdown, the best iterate is reported optimal if its worst
  /// residual is below this; the caller re-verifies.
  double fallback_tol = 1e-6;
  int max_iterations = 200;
};

struct SdpResult {
  SdpStatus status = SdpStatus::NumericalFailure;
  std::vector<Eigen::MatrixXd> x;
  std::vector<Eigen::MatrixXd> s;
  Eigen::VectorXd y;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double relative_gap = 0.0;
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  int iterations = 0;
  std::string message;
};

SdpResult solve_block_sdp(const BlockSdp& problem, const SdpOptions& options = {});

}  // namespace qrt::detail

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

#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "qrt/linalg.hpp"

namespace qrt {

/// A validated quantum state: Hermitian, PSD and unit trace.
class DensityMatrix {
 public:
  /// Validates `m`; throws ValidationError naming the violated invariant.
  explicit DensityMatrix(HermitianMatrix m, const NumericPolicy& policy = {});

  /// Normalizes `m` by its trace before validating.
  static DensityMatrix normalized(const HermitianMatrix& m, const NumericPolicy& policy = {});
  /// |psi><psi| / <psi|psi>.
  static DensityMatrix pure(const ComplexVector& psi);
  static DensityMatrix maximally_mixed(Eigen::Index dim);

  const HermitianMatrix& matrix() const { return matrix_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  Eigen::Index rank(double rank_tol = 1e-9) const { return numerical_rank(matrix_, rank_tol); }
  bool is_pure(double tol = 1e-9) const;

 private:
  HermitianMatrix matrix_;
};

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) tau sqrt(rho)))^2.
double fidelity(const DensityMatrix& rho, const DensityMatrix& tau);

/// A completely positive map given by Kraus operators, trace non-increasing.
struct KrausChannel {
  std::vector<Eigen::MatrixXcd> kraus_ops;
  bool trace_preserving = false;

  /// Checks sum K^dag K <= 1 (== 1 when trace_preserving) within `tol`.
  void validate(double tol = 1e-9) const;
  Eigen::Index dim_in() const { return kraus_ops.empty() ? 0 : kraus_ops.front().cols(); }
  Eigen::Index dim_out() const { return kraus_ops.empty() ? 0 : kraus_ops.front().rows(); }
  Eigen::MatrixXcd completeness() const;

  static KrausChannel identity(Eigen::Index dim);
};

struct ChannelOutput {
  /// Unnormalized sum K rho K^dag.
  HermitianMatrix out;
  /// Tr out.
  double prob = 0.0;
  /// out / prob, absent when prob < 1e-12.
  std::optional<DensityMatrix> normalized;
};

ChannelOutput apply_channel(const KrausChannel& channel, const HermitianMatrix& rho);
ChannelOutput apply_channel(const KrausChannel& channel, const DensityMatrix& rho);

enum class StandardChannel { AmplitudeDamping, Depolarizing, Dephasing };

StandardChannel parse_standard_channel(std::string_view name);

/// Single-qubit textbook Kraus representations; `param` in [0, 1].
KrausChannel standard_channel(StandardChannel kind, double param);

namespace states {

ComplexVector basis(Eigen::Index dim, Eigen::Index index);
/// (|0> + e^{i pi/4}|1>)/sqrt(2).
ComplexVector t_state();
/// sum_i |i>/sqrt(m).
ComplexVector maximally_coherent(Eigen::Index m);
/// sum_i |ii>/sqrt(m).
ComplexVector maximally_entangled(Eigen::Index m);

/// (1-q)|+><+| + q 1/2, the noisy maximally coherent qubit.
DensityMatrix noisy_plus(double q);
/// (1-p)|T><T| + p 1/2.
DensityMatrix noisy_t(double p);

/// Hilbert-Schmidt random state from a dim x dim Ginibre matrix.
DensityMatrix random_state(Eigen::Index dim, std::mt19937_64& rng);
DensityMatrix random_state_of_rank(Eigen::Index dim, Eigen::Index rank, std::mt19937_64& rng);
ComplexVector random_pure(Eigen::Index dim, std::mt19937_64& rng);
Eigen::MatrixXcd random_unitary(Eigen::Index dim, std::mt19937_64& rng);

}  // namespace states

}  // namespace qrt

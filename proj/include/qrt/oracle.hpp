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

// Brute-force verifiers. Everything here evaluates definitions directly with
// the closed-form rmax; the conic backend is never called.

#include <cstdint>
#include <string>
#include <vector>

#include "qrt/monotones.hpp"

namespace qrt {

/// The oracle has no finite parametrization of the theory's free set.
class OracleUnsupported : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// The true optimum lies in [lower, upper]. `upper` is a value attained by a
/// free state; `lower` is a heuristic (grid minimum minus the change between
/// successive resolutions). Both are +inf when no sampled free state is finite.
struct OracleResult {
  double lower = 0.0;
  double upper = 0.0;
  long long samples = 0;
  std::string parametrization;

  bool is_infinite() const;
  bool contains(double value, double tol) const { return value >= lower - tol && value <= upper + tol; }
};

/// min over free sigma of rmax(rho||sigma) * rmax(sigma||rho) over a grid of
/// at most `resolution` free states, followed by a local pattern search.
/// Coherence up to dimension 4 (diagonal simplex) and the single-qubit magic
/// theory (stabilizer octahedron).
OracleResult omega_grid(const ResourceTheory& theory, const DensityMatrix& rho, long long resolution);

/// Same grid for min over sigma of R^F_max(rho||sigma) * rmax(sigma||rho), where
/// R^F_max(rho||sigma) = min { l : l sigma - rho in cone(F) } is found by
/// bisection over l in [1, 1e3] with an exact cone-membership test.
OracleResult definitional_omega_free(const ResourceTheory& theory, const DensityMatrix& rho,
                                     long long resolution);

/// Exact membership of a Hermitian operator in cone(F) for the oracle theories.
bool in_free_cone(const ResourceTheory& theory, const HermitianMatrix& m, double tol = 1e-12);

/// At most one nonzero entry per column.
bool is_incoherent_kraus(const Eigen::MatrixXcd& k, double tol = 1e-12);

/// E(sigma) lies in cone(F) for every state of the certification set, which
/// by linearity covers all of F.
bool preserves_free(const ResourceTheory& theory, const KrausChannel& channel, double tol = 1e-9);

/// A random instrument of free, trace-non-increasing branches whose Kraus
/// operators together complete to a trace-preserving map. Deterministic in
/// `seed`. Throws std::runtime_error after 1000 rejected draws.
std::vector<KrausChannel> random_free_instrument(const ResourceTheory& theory, std::uint64_t seed);

}  // namespace qrt

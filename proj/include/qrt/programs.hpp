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
#include <string>

#include "qrt/conic.hpp"
#include "qrt/theory.hpp"

namespace qrt {

enum class ProgramKind { Omega, OmegaFree, Robustness, StdRobustness, Weight, FreeFidelity };

std::string to_string(ProgramKind kind);

/// A conic encoding of one resource measure, with the handles needed to read
/// back the optimizer and its dual.
struct MonotoneProgram {
  ProgramKind kind = ProgramKind::Omega;
  ConicProgram program;
  /// The optimized operator: sigma~ (Omega, robustness), X (weight) or sigma (fidelity).
  AffineMatrix sigma;
  int gamma_var = -1;
  /// sigma~ - rho >= 0.
  int lower_constraint = -1;
  /// gamma rho - sigma~ >= 0 (Omega) or rho - X >= 0 (weight).
  int upper_constraint = -1;
  /// The program sees rho_scale * rho; Omega is invariant under this scaling.
  double rho_scale = 1.0;
  /// sigma~ was restricted to supp(rho) because rho is rank deficient.
  bool support_reduced = false;
  /// Non-empty when the kind is degenerate for the theory.
  std::string warning;
};

/// Builds the conic program for `kind`. `target` is required for FreeFidelity
/// and must be pure.
MonotoneProgram build_program(ProgramKind kind, const ResourceTheory& theory,
                              const DensityMatrix& rho,
                              const std::optional<DensityMatrix>& target = std::nullopt);

/// Dual pair certifying Omega(rho) >= Tr(A rho) / Tr(B rho), normalized to Tr(B rho) = 1.
struct OmegaWitness {
  HermitianMatrix a;
  HermitianMatrix b;
  double ratio = 0.0;
  /// max over free sigma of Tr(A sigma) - Tr(B sigma).
  double violation = 0.0;
};

/// Reads (A, B) off the dual of an optimal Omega solve and projects it onto
/// exact feasibility. Returns nullopt when no valid dual pair is available
/// (the solve was not optimal, or rho is rank deficient and not free).
std::optional<OmegaWitness> extract_omega_witness(const ConicSolution& solution,
                                                  const MonotoneProgram& program,
                                                  const ResourceTheory& theory,
                                                  const DensityMatrix& rho);

struct WitnessCheck {
  bool valid = false;
  double ratio = 0.0;
  double violation = 0.0;
  double min_eigenvalue_a = 0.0;
  double min_eigenvalue_b = 0.0;
  std::string reason;
};

/// Checks A, B >= 0, the free-state condition Tr(A sigma) <= Tr(B sigma), and
/// that the ratio certifies at least `claimed_value - ratio_tol`.
WitnessCheck check_omega_witness(const ResourceTheory& theory, const DensityMatrix& rho,
                                 const HermitianMatrix& a, const HermitianMatrix& b,
                                 double claimed_value, double ratio_tol = 1e-5,
                                 double feasibility_tol = 1e-7);

}  // namespace qrt

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

#include "qrt/programs.hpp"

#include <cmath>

namespace qrt {

using Eigen::Index;

std::string to_string(ProgramKind kind) {
  switch (kind) {
    case ProgramKind::Omega:
      return "omega";
    case ProgramKind::OmegaFree:
      return "omega_free";
    case ProgramKind::Robustness:
      return "robustness";
    case ProgramKind::StdRobustness:
      return "std_robustness";
    case ProgramKind::Weight:
      return "weight";
    case ProgramKind::FreeFidelity:
      return "free_fidelity";
  }
  return "unknown";
}

namespace {

/// Columns spanning ker(rho); empty when rho has full rank.
Eigen::MatrixXcd kernel_basis(const HermitianMatrix& rho, double rank_tol) {
  const auto eig = hermitian_eig(rho, 1e-8);
  const double top = std::max(eig.values(0), 1e-300);
  Index rank = 0;
  while (rank < eig.values.size() && eig.values(rank) > rank_tol * top) ++rank;
  return eig.vectors.rightCols(eig.values.size() - rank);
}

/// Forces supp(expr) inside supp(rho): K^dag expr = 0 for a kernel basis K.
bool restrict_to_support(ConicProgram& p, const AffineMatrix& expr, const HermitianMatrix& rho,
                         const std::string& label) {
  const Eigen::MatrixXcd kernel = kernel_basis(rho, 1e-9);
  if (kernel.cols() == 0) return false;
  p.add_matrix_equality(expr.map([&](const Eigen::MatrixXcd& m) {
                          return Eigen::MatrixXcd(kernel.adjoint() * m);
                        }),
                        label);
  return true;
}

}  // namespace

MonotoneProgram build_program(ProgramKind kind, const ResourceTheory& theory,
                              const DensityMatrix& rho, const std::optional<DensityMatrix>& target) {
  if (rho.dim() != theory.dim()) {
    throw ValidationError("build_program: state dimension " + std::to_string(rho.dim()) +
                          " does not match theory dimension " + std::to_string(theory.dim()));
  }
  MonotoneProgram mp;
  mp.kind = kind;
  ConicProgram& p = mp.program;
  const Index d = theory.dim();
  const HermitianMatrix id = HermitianMatrix::Identity(d, d);

  switch (kind) {
    case ProgramKind::Omega:
    case ProgramKind::OmegaFree: {
      mp.rho_scale = 1.0 / max_eigenvalue(rho.matrix());
      const HermitianMatrix r = mp.rho_scale * rho.matrix();
      mp.gamma_var = p.add_variable("gamma");
      mp.sigma = theory.add_cone_element(p, "sigma");
      mp.support_reduced = restrict_to_support(p, mp.sigma, r, "supp sigma = supp rho");
      if (kind == ProgramKind::Omega) {
        mp.lower_constraint = p.add_psd(mp.sigma - r, "sigma - rho");
      } else {
        theory.constrain_to_cone(p, mp.sigma - r, "sigma - rho in cone");
        if (theory.is_affine()) {
          mp.warning = "free projective robustness diverges for all resourceful states in affine theories";
        }
      }
      AffineMatrix upper = AffineMatrix::zero(d, d);
      upper.add_term(mp.gamma_var, r);
      upper -= mp.sigma;
      mp.upper_constraint = p.add_psd(std::move(upper), "gamma rho - sigma");
      p.set_objective(ConicProgram::Sense::Minimize, ScalarAffine::variable(mp.gamma_var));
      break;
    }
    case ProgramKind::Robustness:
    case ProgramKind::StdRobustness: {
      mp.sigma = theory.add_cone_element(p, "sigma");
      if (kind == ProgramKind::Robustness) {
        mp.lower_constraint = p.add_psd(mp.sigma - rho.matrix(), "sigma - rho");
      } else {
        theory.constrain_to_cone(p, mp.sigma - rho.matrix(), "sigma - rho in cone");
      }
      p.set_objective(ConicProgram::Sense::Minimize, trace_against(id, mp.sigma));
      break;
    }
    case ProgramKind::Weight: {
      mp.sigma = theory.add_cone_element(p, "x");
      mp.support_reduced = restrict_to_support(p, mp.sigma, rho.matrix(), "supp x in supp rho");
      mp.upper_constraint = p.add_psd(rho.matrix() - mp.sigma, "rho - x");
      p.set_objective(ConicProgram::Sense::Maximize, trace_against(id, mp.sigma));
      break;
    }
    case ProgramKind::FreeFidelity: {
      if (!target) throw ValidationError("free fidelity needs a target state");
      if (target->dim() != d) throw ValidationError("free fidelity: target dimension mismatch");
      if (!target->is_pure(1e-8)) throw ValidationError("free fidelity: target must be pure");
      mp.sigma = theory.add_cone_element(p, "sigma");
      ScalarAffine trace = trace_against(id, mp.sigma);
      trace.constant -= 1.0;
      p.add_equality(trace, "Tr sigma = 1");
      p.set_objective(ConicProgram::Sense::Maximize, trace_against(target->matrix(), mp.sigma));
      break;
    }
  }
  return mp;
}

WitnessCheck check_omega_witness(const ResourceTheory& theory, const DensityMatrix& rho,
                                 const HermitianMatrix& a, const HermitianMatrix& b,
                                 double claimed_value, double ratio_tol, double feasibility_tol) {
  WitnessCheck check;
  check.min_eigenvalue_a = min_eigenvalue(a);
  check.min_eigenvalue_b = min_eigenvalue(b);
  const double tb = (b * rho.matrix()).trace().real();
  const double ta = (a * rho.matrix()).trace().real();
  check.ratio = tb > 0.0 ? ta / tb : std::numeric_limits<double>::quiet_NaN();
  // Normalize so the violation is measured against Tr(B rho) = 1.
  const double scale = tb > 0.0 ? 1.0 / tb : 1.0;
  check.violation = theory.max_over_free(symmetrize(HermitianMatrix(scale * (a - b))));
  const double psd_tol = 1e-8 * std::max({1.0, hermitian_norm(a), hermitian_norm(b)});
  if (check.min_eigenvalue_a < -psd_tol || check.min_eigenvalue_b < -psd_tol) {
    check.reason = "A or B is not positive semidefinite";
  } else if (!(tb > 0.0)) {
    check.reason = "Tr(B rho) is not positive";
  } else if (check.violation > feasibility_tol) {
    check.reason = "Tr(A sigma) > Tr(B sigma) for some free sigma";
  } else if (check.ratio < claimed_value - ratio_tol) {
    check.reason = "ratio does not certify the claimed value";
  } else {
    check.valid = true;
  }
  return check;
}

std::optional<OmegaWitness> extract_omega_witness(const ConicSolution& solution,
                                                  const MonotoneProgram& program,
                                                  const ResourceTheory& theory,
                                                  const DensityMatrix& rho) {
  if (program.kind != ProgramKind::Omega || !solution.optimal()) return std::nullopt;
  const Index d = rho.dim();
  const HermitianMatrix id = HermitianMatrix::Identity(d, d);
  OmegaWitness w;
  if (program.support_reduced) {
    // The reduced dual only certifies free states inside supp(rho).
    if (std::abs(solution.primal_value - 1.0) > 1e-7) return std::nullopt;
    w.a = id;
    w.b = id;
  } else {
    w.a = psd_part(solution.psd_duals.at(program.lower_constraint));
    w.b = psd_part(solution.psd_duals.at(program.upper_constraint));
  }
  const double tb = (w.b * rho.matrix()).trace().real();
  if (!(tb > 0.0)) return std::nullopt;
  w.a /= tb;
  w.b /= tb;
  // Shift B by the residual violation; Tr(1 sigma) = 1 on states.
  const double v = theory.max_over_free(symmetrize(HermitianMatrix(w.a - w.b)));
  if (v > 0.0) {
    w.b += v * id;
    const double tb2 = (w.b * rho.matrix()).trace().real();
    w.a /= tb2;
    w.b /= tb2;
  }
  w.ratio = (w.a * rho.matrix()).trace().real();
  w.violation = theory.max_over_free(symmetrize(HermitianMatrix(w.a - w.b)));
  return w;
}

}  // namespace qrt

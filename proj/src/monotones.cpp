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

#include "qrt/monotones.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace qrt {

MonotoneValue MonotoneValue::finite(double value, std::shared_ptr<const ConicSolution> certificate) {
  MonotoneValue v;
  v.finite_ = true;
  v.value_ = value;
  v.certificate_ = std::move(certificate);
  return v;
}

MonotoneValue MonotoneValue::infinite(std::string reason) {
  MonotoneValue v;
  v.finite_ = false;
  v.value_ = std::numeric_limits<double>::infinity();
  v.reason_ = std::move(reason);
  return v;
}

double MonotoneValue::value() const {
  return finite_ ? value_ : std::numeric_limits<double>::infinity();
}

MonotoneValue MonotoneValue::reciprocal() const {
  if (!finite_) return finite(0.0);
  if (value_ == 0.0) return infinite("reciprocal of zero");
  return finite(1.0 / value_);
}

std::partial_ordering MonotoneValue::operator<=>(const MonotoneValue& other) const {
  if (!finite_ && !other.finite_) return std::partial_ordering::equivalent;
  if (!finite_) return std::partial_ordering::greater;
  if (!other.finite_) return std::partial_ordering::less;
  return value_ <=> other.value_;
}

bool MonotoneValue::operator==(const MonotoneValue& other) const {
  return (*this <=> other) == std::partial_ordering::equivalent;
}

std::string MonotoneValue::to_string(int precision) const {
  if (!finite_) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, value_);
  return buf;
}

MonotoneValue rmax(const DensityMatrix& rho, const DensityMatrix& sigma, double rank_tol) {
  if (rho.dim() != sigma.dim()) throw ValidationError("rmax: dimension mismatch");
  const auto eig = hermitian_eig(sigma.matrix(), 1e-8);
  const double top = eig.values(0);
  Eigen::Index rank = 0;
  while (rank < eig.values.size() && eig.values(rank) > rank_tol * top) ++rank;
  const Eigen::MatrixXcd on = eig.vectors.leftCols(rank);
  const Eigen::MatrixXcd off = eig.vectors.rightCols(eig.values.size() - rank);
  if (off.cols() > 0) {
    const HermitianMatrix outside = off.adjoint() * rho.matrix() * off;
    if (hermitian_norm(outside) > rank_tol * std::max(1.0, hermitian_norm(rho.matrix()))) {
      return MonotoneValue::infinite("support: supp rho is not contained in supp sigma");
    }
  }
  const RealVector inv_sqrt = eig.values.head(rank).cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXcd sandwich =
      inv_sqrt.asDiagonal() * (on.adjoint() * rho.matrix() * on) * inv_sqrt.asDiagonal();
  return MonotoneValue::finite(max_eigenvalue(symmetrize(sandwich)));
}

MonotoneValue dmax(const DensityMatrix& rho, const DensityMatrix& sigma, double rank_tol) {
  const MonotoneValue r = rmax(rho, sigma, rank_tol);
  if (r.is_infinite()) return r;
  return MonotoneValue::finite(std::log2(r.value()));
}

namespace {

/// Measures bounded below by 1 absorb solver noise just under 1.
double snap_to_one(double v) { return (v < 1.0 && v > 1.0 - 1e-6) ? 1.0 : v; }

ConicSolution solve_checked(const MonotoneProgram& mp, const NumericPolicy& policy) {
  ConicSolution sol = solve(mp.program, policy);
  if (sol.status == SolveStatus::NumericalFailure) {
    // Retry once with a looser target before giving up.
    NumericPolicy relaxed = policy;
    relaxed.solver_tol = std::max(policy.solver_tol * 10.0, 1e-7);
    relaxed.max_iterations = policy.max_iterations * 2;
    ConicSolution retry = solve(mp.program, relaxed);
    if (retry.status != SolveStatus::NumericalFailure) return retry;
  }
  return sol;
}

[[noreturn]] void fail(const std::string& what, const ConicSolution& sol) {
  throw SolverFailure(what + ": " + to_string(sol.status) + " after " +
                          std::to_string(sol.iterations) + " iterations (" + sol.message + ")",
                      sol);
}

MonotoneValue omega_like(ProgramKind kind, const ResourceTheory& theory, const DensityMatrix& rho,
                         const NumericPolicy& policy) {
  const MonotoneProgram mp = build_program(kind, theory, rho);
  ConicSolution sol = solve_checked(mp, policy);
  switch (sol.status) {
    case SolveStatus::Optimal: {
      const double value = snap_to_one(sol.primal_value);
      return MonotoneValue::finite(value, std::make_shared<const ConicSolution>(std::move(sol)));
    }
    case SolveStatus::Infeasible: {
      // A full-rank state always shares its support with the maximally mixed
      // state, which is free in every shipped theory.
      if (rho.rank(policy.rank_tol) == rho.dim() && kind == ProgramKind::Omega) {
        fail("projective robustness reported infeasible for a full-rank state", sol);
      }
      if (kind == ProgramKind::Omega) {
        return MonotoneValue::infinite("support mismatch: no free state has the support of rho");
      }
      return MonotoneValue::infinite("no sigma~ with sigma~ - rho in cone(F) and the support of rho");
    }
    default:
      fail(to_string(kind), sol);
  }
}

}  // namespace

MonotoneValue robustness(const ResourceTheory& theory, const DensityMatrix& rho,
                         const NumericPolicy& policy) {
  const MonotoneProgram mp = build_program(ProgramKind::Robustness, theory, rho);
  ConicSolution sol = solve_checked(mp, policy);
  if (sol.status == SolveStatus::Infeasible) return MonotoneValue::infinite("no free state dominates rho");
  if (!sol.optimal()) fail("robustness", sol);
  const double v = snap_to_one(sol.primal_value);
  return MonotoneValue::finite(v, std::make_shared<const ConicSolution>(std::move(sol)));
}

MonotoneValue weight(const ResourceTheory& theory, const DensityMatrix& rho,
                     const NumericPolicy& policy) {
  const MonotoneProgram mp = build_program(ProgramKind::Weight, theory, rho);
  ConicSolution sol = solve_checked(mp, policy);
  if (!sol.optimal()) fail("weight", sol);
  const double v = std::clamp(sol.primal_value, 0.0, 1.0);
  return MonotoneValue::finite(v, std::make_shared<const ConicSolution>(std::move(sol)));
}

MonotoneValue std_robustness(const ResourceTheory& theory, const DensityMatrix& rho,
                             const NumericPolicy& policy) {
  const MonotoneProgram mp = build_program(ProgramKind::StdRobustness, theory, rho);
  ConicSolution sol = solve_checked(mp, policy);
  if (sol.status == SolveStatus::Infeasible) {
    return MonotoneValue::infinite("rho is not in the span of the free cone");
  }
  if (!sol.optimal()) fail("standard robustness", sol);
  const double v = snap_to_one(sol.primal_value);
  return MonotoneValue::finite(v, std::make_shared<const ConicSolution>(std::move(sol)));
}

MonotoneValue projective_robustness(const ResourceTheory& theory, const DensityMatrix& rho,
                                    const NumericPolicy& policy) {
  return omega_like(ProgramKind::Omega, theory, rho, policy);
}

MonotoneValue free_projective_robustness(const ResourceTheory& theory, const DensityMatrix& rho,
                                         const NumericPolicy& policy) {
  if (theory.is_affine() && !theory.is_free(rho)) {
    return MonotoneValue::infinite("diverges for all resourceful states in affine theories");
  }
  return omega_like(ProgramKind::OmegaFree, theory, rho, policy);
}

double free_fidelity(const ResourceTheory& theory, const DensityMatrix& target,
                     const NumericPolicy& policy) {
  const MonotoneProgram mp = build_program(ProgramKind::FreeFidelity, theory, target, target);
  ConicSolution sol = solve_checked(mp, policy);
  if (!sol.optimal()) fail("free fidelity", sol);
  return std::clamp(sol.primal_value, 0.0, 1.0);
}

Measure parse_measure(std::string_view name) {
  if (name == "omega") return Measure::Omega;
  if (name == "omega_free") return Measure::OmegaFree;
  if (name == "robustness") return Measure::Robustness;
  if (name == "std_robustness") return Measure::StdRobustness;
  if (name == "weight") return Measure::Weight;
  throw ValidationError("unknown measure '" + std::string(name) + "'");
}

std::string to_string(Measure measure) {
  switch (measure) {
    case Measure::Omega:
      return "omega";
    case Measure::OmegaFree:
      return "omega_free";
    case Measure::Robustness:
      return "robustness";
    case Measure::StdRobustness:
      return "std_robustness";
    case Measure::Weight:
      return "weight";
  }
  return "unknown";
}

MonotoneValue evaluate(Measure measure, const ResourceTheory& theory, const DensityMatrix& rho,
                       const NumericPolicy& policy) {
  switch (measure) {
    case Measure::Omega:
      return projective_robustness(theory, rho, policy);
    case Measure::OmegaFree:
      return free_projective_robustness(theory, rho, policy);
    case Measure::Robustness:
      return robustness(theory, rho, policy);
    case Measure::StdRobustness:
      return std_robustness(theory, rho, policy);
    case Measure::Weight:
      return weight(theory, rho, policy);
  }
  throw ValidationError("unknown measure");
}

}  // namespace qrt

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

#include "qrt/conic.hpp"

#include <cmath>
#include <cstdlib>
#include <map>

#include "qrt/detail/block_sdp.hpp"

namespace qrt {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;

/// Coefficient of every variable in `expr`, summed over repeated terms.
std::map<int, Eigen::MatrixXcd> collect(const AffineMatrix& expr) {
  std::map<int, Eigen::MatrixXcd> out;
  for (const auto& [var, coeff] : expr.terms) {
    auto it = out.find(var);
    if (it == out.end()) {
      out.emplace(var, coeff);
    } else {
      it->second += coeff;
    }
  }
  return out;
}

Eigen::RowVectorXd dense_row(const ScalarAffine& expr, int n) {
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(n);
  for (const auto& [var, coeff] : expr.terms) row(var) += coeff;
  return row;
}

/// Affine parametrization z = z0 + N w of the solutions of the equalities.
struct Parametrization {
  RealVector z0;
  MatrixXd null_basis;
  bool consistent = true;
};

Parametrization eliminate_equalities(const ConicProgram& p, double tol) {
  const int n = p.num_variables();
  Parametrization out;
  const auto& eqs = p.equality_constraints();
  if (eqs.empty()) {
    out.z0 = RealVector::Zero(n);
    out.null_basis = MatrixXd::Identity(n, n);
    return out;
  }
  MatrixXd e(eqs.size(), n);
  RealVector rhs(eqs.size());
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    e.row(static_cast<Index>(i)) = dense_row(eqs[i].expr, n);
    rhs(static_cast<Index>(i)) = -eqs[i].expr.constant;
  }
  Eigen::JacobiSVD<MatrixXd> svd(e, Eigen::ComputeThinU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double top = sv.size() > 0 ? sv(0) : 0.0;
  Index rank = 0;
  while (rank < sv.size() && sv(rank) > 1e-10 * std::max(top, 1e-300)) ++rank;
  out.z0 = RealVector::Zero(n);
  if (rank > 0) {
    const RealVector coeffs =
        (svd.matrixU().leftCols(rank).transpose() * rhs).cwiseQuotient(sv.head(rank));
    out.z0 = svd.matrixV().leftCols(rank) * coeffs;
  }
  out.null_basis = svd.matrixV().rightCols(n - rank);
  out.consistent = (e * out.z0 - rhs).norm() <= tol * (1.0 + rhs.norm());
  return out;
}

/// A PSD constraint restated over the eliminated variables w as real
/// symmetric data, compressed to the joint range of its coefficients.
struct ReducedBlock {
  int source = -1;
  bool realified = false;
  /// Columns span the retained subspace of the (possibly realified) block.
  MatrixXd basis;
  MatrixXd f0;
  std::vector<MatrixXd> fw;
};

enum class BlockFate { Keep, Drop, Infeasible };

BlockFate reduce_psd(const ConicProgram::PsdConstraint& con, int source,
                     const Parametrization& param, const NumericPolicy& policy,
                     ReducedBlock& out) {
  const Index m = param.null_basis.cols();
  const auto coeffs = collect(con.expr);
  const Eigen::MatrixXcd f0c = con.expr.evaluate(param.z0);
  std::vector<Eigen::MatrixXcd> fwc(m, Eigen::MatrixXcd::Zero(con.expr.rows(), con.expr.cols()));
  for (Index j = 0; j < m; ++j) {
    for (const auto& [var, coeff] : coeffs) {
      const double w = param.null_basis(var, j);
      if (w != 0.0) fwc[j] += w * coeff;
    }
  }

  double scale = f0c.cwiseAbs().maxCoeff();
  double imag = f0c.imag().cwiseAbs().maxCoeff();
  for (const auto& f : fwc) {
    scale = std::max(scale, f.cwiseAbs().maxCoeff());
    imag = std::max(imag, f.imag().cwiseAbs().maxCoeff());
  }
  out.source = source;
  out.realified = imag > 1e-14 * std::max(scale, 1e-300);
  auto to_real = [&](const Eigen::MatrixXcd& h) -> MatrixXd {
    const Eigen::MatrixXcd s = symmetrize(h);
    return out.realified ? realify(s) : MatrixXd(s.real());
  };
  const MatrixXd f0 = to_real(f0c);
  std::vector<MatrixXd> fw;
  fw.reserve(m);
  for (const auto& f : fwc) fw.push_back(to_real(f));

  // Joint range of {F0, F_1, ..., F_m} via the range of sum F^2.
  MatrixXd gram = f0 * f0;
  for (const auto& f : fw) gram += f * f;
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(gram);
  const double gtop = std::max(eig.eigenvalues().maxCoeff(), 0.0);
  Index keep = 0;
  for (Index i = 0; i < gram.rows(); ++i) {
    if (eig.eigenvalues()(i) > 1e-14 * gtop && gtop > 0.0) ++keep;
  }
  if (keep == 0) return BlockFate::Drop;
  out.basis = eig.eigenvectors().rightCols(keep);
  out.f0 = out.basis.transpose() * f0 * out.basis;
  out.f0 = 0.5 * (out.f0 + out.f0.transpose()).eval();
  double coeff_scale = 0.0;
  for (const auto& f : fw) {
    MatrixXd g = out.basis.transpose() * f * out.basis;
    g = 0.5 * (g + g.transpose()).eval();
    coeff_scale = std::max(coeff_scale, g.cwiseAbs().maxCoeff());
    out.fw.push_back(std::move(g));
  }
  if (coeff_scale <= 1e-13 * std::max(1.0, out.f0.cwiseAbs().maxCoeff())) {
    const double lmin = min_eigenvalue(out.f0);
    return lmin >= -policy.psd_tol * std::max(1.0, hermitian_norm(out.f0)) ? BlockFate::Drop
                                                                            : BlockFate::Infeasible;
  }
  return BlockFate::Keep;
}

}  // namespace

ScalarAffine trace_against(const Eigen::MatrixXcd& w, const AffineMatrix& expr) {
  ScalarAffine out;
  out.constant = (w * expr.constant).trace().real();
  for (const auto& [var, coeff] : expr.terms) out.terms.emplace_back(var, (w * coeff).trace().real());
  return out;
}

int ConicProgram::add_variables(int count, const std::string& name) {
  const int first = num_variables();
  for (int i = 0; i < count; ++i) {
    names_.push_back(count == 1 ? name : name + "[" + std::to_string(i) + "]");
  }
  return first;
}

int ConicProgram::add_psd(AffineMatrix expr, std::string label) {
  if (expr.rows() != expr.cols() || expr.rows() == 0) {
    throw ValidationError("PSD constraint '" + label + "' must be a nonempty square expression");
  }
  psd_.push_back({std::move(expr), std::move(label)});
  return static_cast<int>(psd_.size()) - 1;
}

int ConicProgram::add_nonnegative(ScalarAffine expr, std::string label) {
  nonneg_.push_back({std::move(expr), std::move(label)});
  return static_cast<int>(nonneg_.size()) - 1;
}

int ConicProgram::add_equality(ScalarAffine expr, std::string label) {
  eq_.push_back({std::move(expr), std::move(label)});
  return static_cast<int>(eq_.size()) - 1;
}

void ConicProgram::add_matrix_equality(const AffineMatrix& expr, const std::string& label) {
  for (Index i = 0; i < expr.rows(); ++i) {
    for (Index j = 0; j < expr.cols(); ++j) {
      ScalarAffine re{expr.constant(i, j).real(), {}};
      ScalarAffine im{expr.constant(i, j).imag(), {}};
      for (const auto& [var, coeff] : expr.terms) {
        if (coeff(i, j).real() != 0.0) re.terms.emplace_back(var, coeff(i, j).real());
        if (coeff(i, j).imag() != 0.0) im.terms.emplace_back(var, coeff(i, j).imag());
      }
      add_equality(std::move(re), label);
      add_equality(std::move(im), label);
    }
  }
}

void ConicProgram::add_offdiagonal_zero(const AffineMatrix& expr, const std::string& label) {
  for (Index i = 0; i < expr.rows(); ++i) {
    for (Index j = i + 1; j < expr.cols(); ++j) {
      ScalarAffine re{expr.constant(i, j).real(), {}};
      ScalarAffine im{expr.constant(i, j).imag(), {}};
      for (const auto& [var, coeff] : expr.terms) {
        if (coeff(i, j).real() != 0.0) re.terms.emplace_back(var, coeff(i, j).real());
        if (coeff(i, j).imag() != 0.0) im.terms.emplace_back(var, coeff(i, j).imag());
      }
      add_equality(std::move(re), label);
      add_equality(std::move(im), label);
    }
  }
}

void ConicProgram::add_imaginary_zero(const AffineMatrix& expr, const std::string& label) {
  for (Index i = 0; i < expr.rows(); ++i) {
    for (Index j = i + 1; j < expr.cols(); ++j) {
      ScalarAffine im{expr.constant(i, j).imag(), {}};
      for (const auto& [var, coeff] : expr.terms) {
        if (coeff(i, j).imag() != 0.0) im.terms.emplace_back(var, coeff(i, j).imag());
      }
      add_equality(std::move(im), label);
    }
  }
}

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal:
      return "optimal";
    case SolveStatus::Infeasible:
      return "infeasible";
    case SolveStatus::Unbounded:
      return "unbounded";
    case SolveStatus::NumericalFailure:
      return "numerical_failure";
  }
  return "unknown";
}

double constraint_violation(const ConicProgram& program, const RealVector& z) {
  double worst = 0.0;
  for (const auto& c : program.psd_constraints()) {
    worst = std::max(worst, -min_eigenvalue(c.expr.evaluate(z)));
  }
  for (const auto& c : program.nonnegative_constraints()) {
    worst = std::max(worst, -c.expr.evaluate(z));
  }
  for (const auto& c : program.equality_constraints()) {
    worst = std::max(worst, std::abs(c.expr.evaluate(z)));
  }
  return worst;
}

ConicSolution solve(const ConicProgram& program, const NumericPolicy& policy) {
  const int n = program.num_variables();
  const double sense = program.sense() == ConicProgram::Sense::Minimize ? 1.0 : -1.0;
  ConicSolution sol;
  sol.psd_duals.reserve(program.psd_constraints().size());
  for (const auto& c : program.psd_constraints()) {
    sol.psd_duals.push_back(HermitianMatrix::Zero(c.expr.rows(), c.expr.cols()));
  }
  sol.nonnegative_duals = RealVector::Zero(static_cast<Index>(program.nonnegative_constraints().size()));

  const Parametrization param = eliminate_equalities(program, policy.eq_tol);
  if (!param.consistent) {
    sol.status = SolveStatus::Infeasible;
    sol.message = "equality constraints are inconsistent";
    return sol;
  }
  const Index m = param.null_basis.cols();

  // Objective over w (minimization form): c^T z0 + c_w^T w.
  const RealVector c = sense * dense_row(program.objective(), n).transpose();
  const double c0 = sense * program.objective().constant + c.dot(param.z0);
  const RealVector cw = param.null_basis.transpose() * c;

  std::vector<ReducedBlock> psd_blocks;
  for (std::size_t k = 0; k < program.psd_constraints().size(); ++k) {
    ReducedBlock blk;
    switch (reduce_psd(program.psd_constraints()[k], static_cast<int>(k), param, policy, blk)) {
      case BlockFate::Keep:
        psd_blocks.push_back(std::move(blk));
        break;
      case BlockFate::Drop:
        break;
      case BlockFate::Infeasible:
        sol.status = SolveStatus::Infeasible;
        sol.message = "constraint '" + program.psd_constraints()[k].label +
                      "' is constant and not PSD";
        return sol;
    }
  }

  std::vector<int> lp_rows;
  std::vector<double> lp_f0;
  std::vector<RealVector> lp_fw;
  for (std::size_t k = 0; k < program.nonnegative_constraints().size(); ++k) {
    const auto& expr = program.nonnegative_constraints()[k].expr;
    const RealVector a = dense_row(expr, n).transpose();
    const double a0 = expr.evaluate(param.z0);
    const RealVector aw = param.null_basis.transpose() * a;
    if (aw.size() == 0 || aw.cwiseAbs().maxCoeff() <= 1e-13 * std::max(1.0, a.cwiseAbs().maxCoeff())) {
      if (a0 < -policy.eq_tol) {
        sol.status = SolveStatus::Infeasible;
        sol.message = "constraint '" + program.nonnegative_constraints()[k].label +
                      "' is constant and negative";
        return sol;
      }
      continue;
    }
    lp_rows.push_back(static_cast<int>(k));
    lp_f0.push_back(a0);
    lp_fw.push_back(aw);
  }

  RealVector w = RealVector::Zero(m);
  if (psd_blocks.empty() && lp_rows.empty()) {
    if (m > 0 && cw.cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, c.cwiseAbs().maxCoeff())) {
      sol.status = SolveStatus::Unbounded;
      sol.message = "objective is unbounded over the feasible affine set";
      return sol;
    }
    sol.status = SolveStatus::Optimal;
    sol.primal_vars = param.z0;
    sol.primal_value = sense * c0;
    sol.dual_value = sol.primal_value;
    sol.max_violation = constraint_violation(program, sol.primal_vars);
    return sol;
  }

  // Standard form: C = F0, A_j = -F_j, b = -c_w.
  detail::BlockSdp sdp;
  for (const auto& blk : psd_blocks) {
    sdp.blocks.push_back({blk.f0.rows(), false});
    sdp.c.push_back(blk.f0);
  }
  const bool has_lp = !lp_rows.empty();
  if (has_lp) {
    sdp.blocks.push_back({static_cast<Index>(lp_rows.size()), true});
    sdp.c.push_back(Eigen::Map<const RealVector>(lp_f0.data(), static_cast<Index>(lp_f0.size())));
  }
  sdp.b = -cw;
  sdp.a.assign(m, {});
  for (Index j = 0; j < m; ++j) {
    auto& aj = sdp.a[j];
    for (const auto& blk : psd_blocks) {
      const MatrixXd& f = blk.fw[j];
      aj.push_back(f.cwiseAbs().maxCoeff() == 0.0 ? MatrixXd() : MatrixXd(-f));
    }
    if (has_lp) {
      RealVector col(static_cast<Index>(lp_rows.size()));
      for (std::size_t r = 0; r < lp_rows.size(); ++r) col(static_cast<Index>(r)) = -lp_fw[r](j);
      aj.push_back(col.cwiseAbs().maxCoeff() == 0.0 ? MatrixXd() : MatrixXd(col));
    }
  }

  detail::SdpOptions opts;
  opts.tol = policy.solver_tol;
  opts.max_iterations = policy.max_iterations;
  const detail::SdpResult res = detail::solve_block_sdp(sdp, opts);
  sol.iterations = res.iterations;
  sol.message = res.message;

  w = res.y;
  sol.primal_vars = param.z0 + param.null_basis * w;
  for (std::size_t b = 0; b < psd_blocks.size(); ++b) {
    const auto& blk = psd_blocks[b];
    const MatrixXd z = blk.basis * res.x[b] * blk.basis.transpose();
    sol.psd_duals[blk.source] = blk.realified ? unrealify(z) : HermitianMatrix(z.cast<Complex>());
  }
  if (has_lp) {
    for (std::size_t r = 0; r < lp_rows.size(); ++r) {
      sol.nonnegative_duals(lp_rows[r]) = res.x.back()(static_cast<Index>(r), 0);
    }
  }

  const double primal_min = c0 + cw.dot(w);
  const double dual_min = c0 - res.primal_objective;
  sol.primal_value = sense * primal_min;
  sol.dual_value = sense * dual_min;
  sol.duality_gap = std::abs(primal_min - dual_min);
  sol.max_violation = constraint_violation(program, sol.primal_vars);

  switch (res.status) {
    case detail::SdpStatus::Optimal: {
      const double scale = 1.0 + std::abs(sol.primal_value);
      if (sol.duality_gap <= 1e-6 * scale && sol.max_violation <= 1e-7 * scale) {
        sol.status = SolveStatus::Optimal;
      } else {
        sol.status = SolveStatus::NumericalFailure;
        sol.message = "converged iterate fails the optimality certificate (gap " +
                      std::to_string(sol.duality_gap) + ", violation " +
                      std::to_string(sol.max_violation) + ")";
      }
      break;
    }
    case detail::SdpStatus::DualInfeasible:
      sol.status = SolveStatus::Infeasible;
      break;
    case detail::SdpStatus::PrimalInfeasible:
      sol.status = SolveStatus::Unbounded;
      break;
    case detail::SdpStatus::NumericalFailure:
      sol.status = SolveStatus::NumericalFailure;
      break;
  }
  return sol;
}

NumericPolicy NumericPolicy::from_environment() {
  NumericPolicy policy;
  if (const char* env = std::getenv("QRT_SOLVER_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && v > 0.0 && v < 1.0) policy.solver_tol = v;
  }
  return policy;
}

}  // namespace qrt

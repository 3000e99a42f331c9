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

#include "qrt/detail/block_sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qrt::detail {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using BlockVec = std::vector<MatrixXd>;

double inner(const MatrixXd& x, const MatrixXd& y) { return x.cwiseProduct(y).sum(); }

double inner(const BlockVec& x, const BlockVec& y) {
  double s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) s += inner(x[k], y[k]);
  return s;
}

double norm(const BlockVec& x) { return std::sqrt(inner(x, x)); }

MatrixXd sym(const MatrixXd& m) { return 0.5 * (m + m.transpose()); }

class Solver {
 public:
  Solver(const BlockSdp& p, const SdpOptions& o) : p_(p), o_(o), m_(p.num_constraints()) {
    for (const auto& blk : p_.blocks) n_total_ += static_cast<double>(blk.size);
  }

  SdpResult run();

 private:
  VectorXd apply_a(const BlockVec& x) const {
    VectorXd out = VectorXd::Zero(m_);
    for (Index i = 0; i < m_; ++i) {
      for (std::size_t k = 0; k < p_.blocks.size(); ++k) {
        if (p_.a[i][k].size() != 0) out(i) += inner(p_.a[i][k], x[k]);
      }
    }
    return out;
  }

  BlockVec apply_at(const VectorXd& y) const {
    BlockVec out = zeros();
    for (Index i = 0; i < m_; ++i) {
      if (y(i) == 0.0) continue;
      for (std::size_t k = 0; k < p_.blocks.size(); ++k) {
        if (p_.a[i][k].size() != 0) out[k] += y(i) * p_.a[i][k];
      }
    }
    return out;
  }

  BlockVec zeros() const {
    BlockVec out;
    out.reserve(p_.blocks.size());
    for (const auto& blk : p_.blocks) {
      out.push_back(blk.diagonal ? MatrixXd::Zero(blk.size, 1) : MatrixXd::Zero(blk.size, blk.size));
    }
    return out;
  }

  BlockVec scaled_identity(double v) const {
    BlockVec out;
    for (const auto& blk : p_.blocks) {
      out.push_back(blk.diagonal ? MatrixXd::Constant(blk.size, 1, v)
                                 : MatrixXd(v * MatrixXd::Identity(blk.size, blk.size)));
    }
    return out;
  }

  /// Largest step alpha with x + alpha dx >= 0 (may be +inf).
  double max_step(const BlockVec& x, const BlockVec& dx) const;

  bool invert(const BlockVec& s, BlockVec& sinv) const;

  /// Solves the Newton system for a given complementarity target.
  void direction(const BlockVec& x, const BlockVec& sinv, const VectorXd& rp, const BlockVec& rd,
                 const BlockVec& g, VectorXd& dy, BlockVec& dx, BlockVec& ds) const;

  bool factor_schur(const BlockVec& x, const BlockVec& sinv);

  const BlockSdp& p_;
  const SdpOptions& o_;
  Index m_;
  double n_total_ = 0.0;
  Eigen::LDLT<MatrixXd> ldlt_;
  Eigen::CompleteOrthogonalDecomposition<MatrixXd> cod_;
  bool use_cod_ = false;
};

double Solver::max_step(const BlockVec& x, const BlockVec& dx) const {
  double alpha = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < p_.blocks.size(); ++k) {
    if (p_.blocks[k].diagonal) {
      for (Index l = 0; l < x[k].rows(); ++l) {
        if (dx[k](l, 0) < 0.0) alpha = std::min(alpha, -x[k](l, 0) / dx[k](l, 0));
      }
      continue;
    }
    Eigen::LLT<MatrixXd> llt(x[k]);
    if (llt.info() != Eigen::Success) return 0.0;
    const MatrixXd linv_dx = llt.matrixL().solve(dx[k]);
    const MatrixXd w = sym(llt.matrixL().solve(linv_dx.transpose()));
    Eigen::SelfAdjointEigenSolver<MatrixXd> eig(w, Eigen::EigenvaluesOnly);
    const double lmin = eig.eigenvalues()(0);
    if (lmin < 0.0) alpha = std::min(alpha, -1.0 / lmin);
  }
  return alpha;
}

bool Solver::invert(const BlockVec& s, BlockVec& sinv) const {
  sinv.resize(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (p_.blocks[k].diagonal) {
      if ((s[k].array() <= 0.0).any()) return false;
      sinv[k] = s[k].cwiseInverse();
      continue;
    }
    Eigen::LLT<MatrixXd> llt(s[k]);
    if (llt.info() != Eigen::Success) return false;
    sinv[k] = sym(llt.solve(MatrixXd::Identity(s[k].rows(), s[k].cols())));
  }
  return true;
}

bool Solver::factor_schur(const BlockVec& x, const BlockVec& sinv) {
  MatrixXd schur = MatrixXd::Zero(m_, m_);
  for (std::size_t k = 0; k < p_.blocks.size(); ++k) {
    if (p_.blocks[k].diagonal) {
      const VectorXd d = x[k].col(0).cwiseProduct(sinv[k].col(0));
      for (Index j = 0; j < m_; ++j) {
        if (p_.a[j][k].size() == 0) continue;
        const VectorXd t = d.cwiseProduct(p_.a[j][k].col(0));
        for (Index i = 0; i <= j; ++i) {
          if (p_.a[i][k].size() == 0) continue;
          schur(i, j) += p_.a[i][k].col(0).dot(t);
        }
      }
      continue;
    }
    for (Index j = 0; j < m_; ++j) {
      if (p_.a[j][k].size() == 0) continue;
      const MatrixXd t = x[k] * p_.a[j][k] * sinv[k];
      for (Index i = 0; i <= j; ++i) {
        if (p_.a[i][k].size() == 0) continue;
        schur(i, j) += inner(p_.a[i][k], t);
      }
    }
  }
  schur = schur.selfadjointView<Eigen::Upper>();
  ldlt_.compute(schur);
  use_cod_ = false;
  const VectorXd diag = ldlt_.vectorD();
  const double dmax = diag.cwiseAbs().maxCoeff();
  if (ldlt_.info() != Eigen::Success || !(dmax > 0.0) ||
      diag.minCoeff() <= 1e-14 * dmax) {
    cod_.setThreshold(1e-13);
    cod_.compute(schur);
    use_cod_ = true;
  }
  return std::isfinite(schur.sum());
}

void Solver::direction(const BlockVec& x, const BlockVec& sinv, const VectorXd& rp,
                       const BlockVec& rd, const BlockVec& g, VectorXd& dy, BlockVec& dx,
                       BlockVec& ds) const {
  // dX = G + X (A^T dy) S^{-1};  A(dX) = rp  =>  M dy = rp - A(G).
  auto solve = [&](const VectorXd& r) {
    return use_cod_ ? VectorXd(cod_.solve(r)) : VectorXd(ldlt_.solve(r));
  };
  auto build_dx = [&](const BlockVec& aty) {
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (p_.blocks[k].diagonal) {
        dx[k] = g[k] + x[k].cwiseProduct(aty[k]).cwiseProduct(sinv[k]);
      } else {
        dx[k] = sym(g[k] + x[k] * aty[k] * sinv[k]);
      }
    }
  };
  dx.resize(x.size());
  dy = solve(rp - apply_a(g));
  BlockVec aty = apply_at(dy);
  build_dx(aty);
  // Iterative refinement against the operator itself: the Schur matrix is
  // badly conditioned close to the boundary.
  const double scale = 1.0 + rp.norm();
  for (int round = 0; round < 3; ++round) {
    const VectorXd residual = rp - apply_a(dx);
    if (residual.norm() <= 1e-14 * scale) break;
    dy += solve(residual);
    aty = apply_at(dy);
    build_dx(aty);
  }
  ds.resize(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) ds[k] = rd[k] - aty[k];
}

SdpResult Solver::run() {
  SdpResult result;

  double norm_c = 0.0;
  for (const auto& ck : p_.c) norm_c += ck.squaredNorm();
  norm_c = std::sqrt(norm_c);
  const double norm_b = p_.b.norm();

  // Starting point scaled to the data, following the usual SDPT3 heuristics.
  double xi = 10.0, eta = 10.0;
  for (std::size_t k = 0; k < p_.blocks.size(); ++k) {
    const double n = static_cast<double>(p_.blocks[k].size);
    xi = std::max(xi, std::sqrt(n));
    eta = std::max(eta, std::sqrt(n));
    eta = std::max(eta, (1.0 + p_.c[k].norm()) / std::sqrt(n));
    for (Index i = 0; i < m_; ++i) {
      if (p_.a[i][k].size() == 0) continue;
      const double an = p_.a[i][k].norm();
      xi = std::max(xi, std::sqrt(n) * (1.0 + std::abs(p_.b(i))) / (1.0 + an));
      eta = std::max(eta, (1.0 + an) / std::sqrt(n));
    }
  }

  BlockVec x = scaled_identity(xi);
  BlockVec s = scaled_identity(eta);
  VectorXd y = VectorXd::Zero(m_);
  BlockVec sinv, dx, ds, dxc, dsc;
  VectorXd dy, dyc;

  // Best iterate by the worst of gap and infeasibilities, returned if the
  // iteration later breaks down or stalls.
  SdpResult best;
  double best_merit = std::numeric_limits<double>::infinity();
  BlockVec best_x, best_s;
  VectorXd best_y;

  for (int iter = 0; iter <= o_.max_iterations; ++iter) {
    result.iterations = iter;
    const VectorXd ax = apply_a(x);
    const VectorXd rp = p_.b - ax;
    const BlockVec aty = apply_at(y);
    BlockVec rd(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) rd[k] = p_.c[k] - s[k] - aty[k];

    const double pobj = inner(p_.c, x);
    const double dobj = p_.b.dot(y);
    const double xs = inner(x, s);
    const double mu = xs / n_total_;
    result.primal_objective = pobj;
    result.dual_objective = dobj;
    result.relative_gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
    result.primal_infeasibility = rp.norm() / (1.0 + norm_b);
    result.dual_infeasibility = norm(rd) / (1.0 + norm_c);

    const double complementarity = xs / (1.0 + std::abs(pobj) + std::abs(dobj));
    const double merit = std::max({result.relative_gap, complementarity, result.primal_infeasibility,
                                   result.dual_infeasibility});
    if (merit < best_merit) {
      best_merit = merit;
      best = result;
      best_x = x;
      best_s = s;
      best_y = y;
    }
    if (std::max({result.relative_gap, complementarity, result.primal_infeasibility,
                  result.dual_infeasibility}) < o_.tol) {
      result.status = SdpStatus::Optimal;
      break;
    }

    // Infeasibility certificates, normalized so the improving functional is 1.
    if (pobj < 0.0 && ax.norm() / -pobj < o_.infeasibility_tol &&
        result.dual_infeasibility > o_.tol) {
      result.status = SdpStatus::DualInfeasible;
      result.message = "certificate X: |A(X)| / -<C,X> = " + std::to_string(ax.norm() / -pobj);
      break;
    }
    if (dobj > 0.0) {
      BlockVec ray = aty;
      for (std::size_t k = 0; k < x.size(); ++k) ray[k] += s[k];
      if (norm(ray) / dobj < o_.infeasibility_tol && result.primal_infeasibility > o_.tol) {
        result.status = SdpStatus::PrimalInfeasible;
        result.message = "certificate y: |A^T y + S| / b^T y = " + std::to_string(norm(ray) / dobj);
        break;
      }
    }
    if (iter == o_.max_iterations) {
      result.message = "iteration limit reached";
      break;
    }

    if (!invert(s, sinv) || !factor_schur(x, sinv)) {
      result.message = "loss of positive definiteness";
      break;
    }

    // Predictor: affine-scaling target.
    BlockVec g(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (p_.blocks[k].diagonal) {
        g[k] = -x[k] - x[k].cwiseProduct(rd[k]).cwiseProduct(sinv[k]);
      } else {
        g[k] = -x[k] - x[k] * rd[k] * sinv[k];
      }
    }
    direction(x, sinv, rp, rd, g, dy, dx, ds);
    const double ap = std::min(1.0, max_step(x, dx));
    const double ad = std::min(1.0, max_step(s, ds));
    double xs_aff = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      xs_aff += inner(MatrixXd(x[k] + ap * dx[k]), MatrixXd(s[k] + ad * ds[k]));
    }
    const double expo = std::max(1.0, 3.0 * std::pow(std::min(ap, ad), 2));
    const double sigma = std::clamp(std::pow(std::max(xs_aff, 0.0) / xs, expo), 0.0, 1.0);

    // Corrector with the second-order term.
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (p_.blocks[k].diagonal) {
        g[k] = sigma * mu * sinv[k] - x[k] - x[k].cwiseProduct(rd[k]).cwiseProduct(sinv[k]) -
               dx[k].cwiseProduct(ds[k]).cwiseProduct(sinv[k]);
      } else {
        g[k] = sigma * mu * sinv[k] - x[k] - x[k] * rd[k] * sinv[k] - dx[k] * ds[k] * sinv[k];
      }
    }
    direction(x, sinv, rp, rd, g, dyc, dxc, dsc);

    const double tau = std::clamp(0.9 + 0.09 * std::min(ap, ad), 0.9, 0.99);
    const double step_p = std::min(1.0, tau * max_step(x, dxc));
    const double step_d = std::min(1.0, tau * max_step(s, dsc));
    if (!(step_p > 0.0) && !(step_d > 0.0)) {
      result.message = "zero step length";
      break;
    }
    for (std::size_t k = 0; k < x.size(); ++k) {
      x[k] += step_p * dxc[k];
      s[k] += step_d * dsc[k];
      if (!p_.blocks[k].diagonal) {
        x[k] = sym(x[k]);
        s[k] = sym(s[k]);
      }
    }
    y += step_d * dyc;
  }

  if (result.status == SdpStatus::NumericalFailure && best_merit < o_.fallback_tol) {
    // Fall back to the best point seen; callers re-verify it.
    const std::string why = result.message;
    const int iterations = result.iterations;
    result = best;
    result.iterations = iterations;
    result.status = SdpStatus::Optimal;
    result.message = "best iterate after: " + why;
    x = std::move(best_x);
    s = std::move(best_s);
    y = std::move(best_y);
  }
  result.x = std::move(x);
  result.s = std::move(s);
  result.y = std::move(y);
  return result;
}

}  // namespace

SdpResult solve_block_sdp(const BlockSdp& problem, const SdpOptions& options) {
  Solver solver(problem, options);
  return solver.run();
}

}  // namespace qrt::detail

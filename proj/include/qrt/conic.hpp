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

// Small conic programs over real variables z with Hermitian-matrix-valued
// affine constraints. Complex constraints are embedded into real symmetric
// form when solved; equality constraints are eliminated by a null-space
// parametrization before the interior-point method runs.

#include <string>
#include <utility>
#include <vector>

#include "qrt/linalg.hpp"

namespace qrt {

/// constant + sum_k z_{var_k} * coeff_k, a matrix-valued affine function of z.
struct AffineMatrix {
  Eigen::MatrixXcd constant;
  std::vector<std::pair<int, Eigen::MatrixXcd>> terms;

  AffineMatrix() = default;
  explicit AffineMatrix(Eigen::MatrixXcd c) : constant(std::move(c)) {}
  static AffineMatrix zero(Eigen::Index rows, Eigen::Index cols) {
    return AffineMatrix(Eigen::MatrixXcd::Zero(rows, cols));
  }

  Eigen::Index rows() const { return constant.rows(); }
  Eigen::Index cols() const { return constant.cols(); }

  AffineMatrix& add_term(int var, Eigen::MatrixXcd coeff) {
    terms.emplace_back(var, std::move(coeff));
    return *this;
  }

  /// Applies a linear map to the constant and every coefficient.
  template <typename Fn>
  AffineMatrix map(Fn&& f) const {
    AffineMatrix out(f(constant));
    out.terms.reserve(terms.size());
    for (const auto& [var, coeff] : terms) out.terms.emplace_back(var, f(coeff));
    return out;
  }

  Eigen::MatrixXcd evaluate(const RealVector& z) const {
    Eigen::MatrixXcd out = constant;
    for (const auto& [var, coeff] : terms) out += z(var) * coeff;
    return out;
  }

  AffineMatrix& operator+=(const AffineMatrix& other) {
    constant += other.constant;
    terms.insert(terms.end(), other.terms.begin(), other.terms.end());
    return *this;
  }
  AffineMatrix& operator-=(const AffineMatrix& other) { return *this += other * -1.0; }
  AffineMatrix& operator+=(const Eigen::MatrixXcd& c) {
    constant += c;
    return *this;
  }
  AffineMatrix& operator-=(const Eigen::MatrixXcd& c) {
    constant -= c;
    return *this;
  }

  friend AffineMatrix operator*(AffineMatrix a, double s) {
    a.constant *= s;
    for (auto& t : a.terms) t.second *= s;
    return a;
  }
  friend AffineMatrix operator*(double s, AffineMatrix a) { return std::move(a) * s; }
  friend AffineMatrix operator+(AffineMatrix a, const AffineMatrix& b) { return a += b; }
  friend AffineMatrix operator-(AffineMatrix a, const AffineMatrix& b) { return a -= b; }
  friend AffineMatrix operator+(AffineMatrix a, const Eigen::MatrixXcd& b) { return a += b; }
  friend AffineMatrix operator-(AffineMatrix a, const Eigen::MatrixXcd& b) { return a -= b; }
  friend AffineMatrix operator-(const Eigen::MatrixXcd& a, AffineMatrix b) {
    return (std::move(b) * -1.0) += a;
  }
};

/// constant + sum_k z_{var_k} * coeff_k.
struct ScalarAffine {
  double constant = 0.0;
  std::vector<std::pair<int, double>> terms;

  double evaluate(const RealVector& z) const {
    double v = constant;
    for (const auto& [var, coeff] : terms) v += coeff * z(var);
    return v;
  }
  static ScalarAffine variable(int var, double coeff = 1.0) { return {0.0, {{var, coeff}}}; }
};

/// Re Tr(W * expr), as a scalar affine function.
ScalarAffine trace_against(const Eigen::MatrixXcd& w, const AffineMatrix& expr);

class ConicProgram {
 public:
  enum class Sense { Minimize, Maximize };

  struct PsdConstraint {
    AffineMatrix expr;
    std::string label;
  };
  struct ScalarConstraint {
    ScalarAffine expr;
    std::string label;
  };

  /// Returns the index of the first of `count` new variables.
  int add_variables(int count, const std::string& name);
  int add_variable(const std::string& name) { return add_variables(1, name); }
  int num_variables() const { return static_cast<int>(names_.size()); }
  const std::string& variable_name(int var) const { return names_.at(var); }

  void set_objective(Sense sense, ScalarAffine objective) {
    sense_ = sense;
    objective_ = std::move(objective);
  }
  Sense sense() const { return sense_; }
  const ScalarAffine& objective() const { return objective_; }

  /// expr >= 0 in the Hermitian PSD order; returns the constraint index.
  int add_psd(AffineMatrix expr, std::string label);
  /// expr >= 0.
  int add_nonnegative(ScalarAffine expr, std::string label);
  /// expr == 0.
  int add_equality(ScalarAffine expr, std::string label);
  /// Every entry of a (possibly rectangular, complex) expression vanishes.
  void add_matrix_equality(const AffineMatrix& expr, const std::string& label);
  /// Off-diagonal entries of a Hermitian expression vanish.
  void add_offdiagonal_zero(const AffineMatrix& expr, const std::string& label);
  /// Imaginary parts of a Hermitian expression vanish.
  void add_imaginary_zero(const AffineMatrix& expr, const std::string& label);

  const std::vector<PsdConstraint>& psd_constraints() const { return psd_; }
  const std::vector<ScalarConstraint>& nonnegative_constraints() const { return nonneg_; }
  const std::vector<ScalarConstraint>& equality_constraints() const { return eq_; }

 private:
  std::vector<std::string> names_;
  Sense sense_ = Sense::Minimize;
  ScalarAffine objective_;
  std::vector<PsdConstraint> psd_;
  std::vector<ScalarConstraint> nonneg_;
  std::vector<ScalarConstraint> eq_;
};

enum class SolveStatus { Optimal, Infeasible, Unbounded, NumericalFailure };

std::string to_string(SolveStatus status);

struct ConicSolution {
  SolveStatus status = SolveStatus::NumericalFailure;
  /// Objective at the returned point, in the program's own sense.
  double primal_value = 0.0;
  /// Lagrange dual objective.
  double dual_value = 0.0;
  double duality_gap = 0.0;
  RealVector primal_vars;
  /// One Hermitian multiplier per PSD constraint, in the order added.
  std::vector<HermitianMatrix> psd_duals;
  RealVector nonnegative_duals;
  /// Largest violation of any constraint at primal_vars (absolute).
  double max_violation = 0.0;
  int iterations = 0;
  std::string message;

  bool optimal() const { return status == SolveStatus::Optimal; }
};

ConicSolution solve(const ConicProgram& program, const NumericPolicy& policy = NumericPolicy::from_environment());

/// Largest violation of the program's constraints at z.
double constraint_violation(const ConicProgram& program, const RealVector& z);

}  // namespace qrt

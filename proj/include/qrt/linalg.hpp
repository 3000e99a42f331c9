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

// Dense Hermitian linear algebra on Eigen matrices. Everything here is a free
// function over Eigen expressions; the scalar type follows the argument.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "qrt/numeric_policy.hpp"

namespace qrt {

using Complex = std::complex<double>;
using HermitianMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

template <typename Scalar>
struct HermitianEig {
  /// Descending.
  Eigen::Matrix<typename Eigen::NumTraits<Scalar>::Real, Eigen::Dynamic, 1> values;
  /// Orthonormal columns matching `values`.
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> vectors;
};

template <typename Derived>
typename Derived::RealScalar hermitian_defect(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<typename Derived::RealScalar>::infinity();
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double tol = 1e-12) {
  if (m.rows() != m.cols() || m.rows() == 0) return false;
  const double scale = std::max<double>(1.0, m.cwiseAbs().maxCoeff());
  return hermitian_defect(m) <= tol * scale;
}

/// Averages `m` with its adjoint so the result is Hermitian to the last bit.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> symmetrize(
    const Eigen::MatrixBase<Derived>& m) {
  using Result = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Result out = (m + m.adjoint()) / typename Derived::RealScalar(2);
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    out(i, i) = typename Derived::Scalar(Eigen::numext::real(out(i, i)));
  }
  return out;
}

/// Eigendecomposition of a Hermitian matrix with eigenvalues sorted descending.
/// Throws ValidationError when the input is not Hermitian within `tol`.
template <typename Derived>
HermitianEig<typename Derived::Scalar> hermitian_eig(const Eigen::MatrixBase<Derived>& m,
                                                     double tol = 1e-12) {
  using Scalar = typename Derived::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (!is_hermitian(m, tol)) {
    throw ValidationError("hermitian_eig: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Mat> solver(symmetrize(m));
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eig: eigensolver did not converge");
  }
  const Eigen::Index n = m.rows();
  HermitianEig<Scalar> out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  (void)n;
  return out;
}

template <typename Derived>
typename Derived::RealScalar min_eigenvalue(const Eigen::MatrixBase<Derived>& m) {
  using Mat = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Eigen::SelfAdjointEigenSolver<Mat> solver(symmetrize(m), Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

template <typename Derived>
typename Derived::RealScalar max_eigenvalue(const Eigen::MatrixBase<Derived>& m) {
  using Mat = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Eigen::SelfAdjointEigenSolver<Mat> solver(symmetrize(m), Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(solver.eigenvalues().size() - 1);
}

/// Spectral norm of a Hermitian matrix.
template <typename Derived>
typename Derived::RealScalar hermitian_norm(const Eigen::MatrixBase<Derived>& m) {
  using Mat = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Eigen::SelfAdjointEigenSolver<Mat> solver(symmetrize(m), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

/// PSD up to a relative tolerance: lambda_min >= -tol * ||m||.
template <typename Derived>
bool is_psd(const Eigen::MatrixBase<Derived>& m, double tol = 1e-9) {
  using Mat = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Eigen::SelfAdjointEigenSolver<Mat> solver(symmetrize(m), Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  const double norm = ev.cwiseAbs().maxCoeff();
  return ev(0) >= -tol * std::max(norm, 1e-300);
}

/// Kronecker product.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> tensor_product(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(),
                                                                             a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// Transpose on the second tensor factor of a (dA*dB)-dimensional operator.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> partial_transpose(
    const Eigen::MatrixBase<Derived>& m, Eigen::Index dim_a, Eigen::Index dim_b) {
  if (dim_a < 1 || dim_b < 1 || m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b) {
    throw ValidationError("partial_transpose: dimension " + std::to_string(m.rows()) +
                          " does not factor as " + std::to_string(dim_a) + "x" +
                          std::to_string(dim_b));
  }
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < dim_a; ++i) {
    for (Eigen::Index j = 0; j < dim_a; ++j) {
      out.block(i * dim_b, j * dim_b, dim_b, dim_b) =
          m.block(i * dim_b, j * dim_b, dim_b, dim_b).transpose();
    }
  }
  return out;
}

/// Real symmetric embedding [[Re X, -Im X], [Im X, Re X]] of a Hermitian X.
template <typename Derived>
Eigen::Matrix<typename Derived::RealScalar, Eigen::Dynamic, Eigen::Dynamic> realify(
    const Eigen::MatrixBase<Derived>& x) {
  const Eigen::Index n = x.rows();
  Eigen::Matrix<typename Derived::RealScalar, Eigen::Dynamic, Eigen::Dynamic> out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = x.real();
  out.bottomRightCorner(n, n) = x.real();
  out.topRightCorner(n, n) = -x.imag();
  out.bottomLeftCorner(n, n) = x.imag();
  return out;
}

/// Adjoint of `realify` under the trace inner product: Tr(Z realify(X)) = Re Tr(unrealify(Z) X).
/// Maps PSD to PSD.
template <typename Derived>
Eigen::Matrix<std::complex<typename Derived::Scalar>, Eigen::Dynamic, Eigen::Dynamic> unrealify(
    const Eigen::MatrixBase<Derived>& z) {
  using Real = typename Derived::Scalar;
  const Eigen::Index n = z.rows() / 2;
  Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic> out(n, n);
  out.real() = z.topLeftCorner(n, n) + z.bottomRightCorner(n, n);
  out.imag() = z.bottomLeftCorner(n, n) - z.topRightCorner(n, n);
  return symmetrize(out);
}

/// Applies `f` to the spectrum of a Hermitian matrix.
template <typename Derived, typename Fn>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> spectral_map(
    const Eigen::MatrixBase<Derived>& m, Fn&& f) {
  using Mat = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Eigen::SelfAdjointEigenSolver<Mat> solver(symmetrize(m));
  auto values = solver.eigenvalues().unaryExpr(f).eval();
  Mat out = solver.eigenvectors() * values.asDiagonal() * solver.eigenvectors().adjoint();
  return symmetrize(out);
}

/// Square root with eigenvalues below tol*||m|| clamped to zero first.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> psd_sqrt(
    const Eigen::MatrixBase<Derived>& m, double tol = 1e-9) {
  const double scale = std::max<double>(hermitian_norm(m), 1e-300);
  return spectral_map(m, [tol, scale](auto v) {
    using R = decltype(v);
    return v <= R(tol * scale) ? R(0) : std::sqrt(v);
  });
}

/// Closest PSD matrix in Frobenius norm.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> psd_part(
    const Eigen::MatrixBase<Derived>& m) {
  return spectral_map(m, [](auto v) { return v < decltype(v)(0) ? decltype(v)(0) : v; });
}

/// Orthonormal basis (columns) of the eigenspace with eigenvalues above rank_tol*lambda_max.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> support_basis(
    const Eigen::MatrixBase<Derived>& m, double rank_tol = 1e-9) {
  const auto eig = hermitian_eig(m, 1e-8);
  const double top = std::max<double>(eig.values.cwiseAbs().maxCoeff(), 1e-300);
  Eigen::Index rank = 0;
  while (rank < eig.values.size() && eig.values(rank) > rank_tol * top) ++rank;
  return eig.vectors.leftCols(rank);
}

template <typename Derived>
Eigen::Index numerical_rank(const Eigen::MatrixBase<Derived>& m, double rank_tol = 1e-9) {
  return support_basis(m, rank_tol).cols();
}

}  // namespace qrt

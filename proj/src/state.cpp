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

#include "qrt/state.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

namespace qrt {

DensityMatrix::DensityMatrix(HermitianMatrix m, const NumericPolicy& policy) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw ValidationError("density matrix must be square with dim >= 1");
  }
  if (!is_hermitian(m, policy.hermitian_tol)) {
    throw ValidationError("density matrix is not Hermitian");
  }
  m = symmetrize(m);
  const double trace = m.trace().real();
  if (std::abs(trace - 1.0) > policy.eq_tol) {
    std::ostringstream msg;
    msg << "density matrix trace is " << trace << ", expected 1";
    throw ValidationError(msg.str());
  }
  const double lmin = min_eigenvalue(m);
  if (lmin < -policy.psd_tol * std::max(1.0, hermitian_norm(m))) {
    std::ostringstream msg;
    msg << "density matrix is not positive semidefinite (min eigenvalue " << lmin << ")";
    throw ValidationError(msg.str());
  }
  matrix_ = std::move(m);
}

DensityMatrix DensityMatrix::normalized(const HermitianMatrix& m, const NumericPolicy& policy) {
  const double trace = m.trace().real();
  if (!(trace > 0.0)) throw ValidationError("cannot normalize a matrix with non-positive trace");
  return DensityMatrix(m / trace, policy);
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  const double norm2 = psi.squaredNorm();
  if (!(norm2 > 0.0)) throw ValidationError("pure state vector is zero");
  return DensityMatrix(symmetrize(psi * psi.adjoint() / norm2));
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
  return DensityMatrix(HermitianMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

bool DensityMatrix::is_pure(double tol) const {
  return std::abs((matrix_ * matrix_).trace().real() - 1.0) <= tol;
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix::normalized(tensor_product(a.matrix(), b.matrix()));
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& tau) {
  if (rho.dim() != tau.dim()) throw ValidationError("fidelity: dimension mismatch");
  const HermitianMatrix root = psd_sqrt(rho.matrix());
  const HermitianMatrix inner = symmetrize(root * tau.matrix() * root);
  const HermitianMatrix inner_root = psd_sqrt(inner);
  const double f = std::pow(inner_root.trace().real(), 2);
  return std::clamp(f, 0.0, 1.0);
}

Eigen::MatrixXcd KrausChannel::completeness() const {
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim_in(), dim_in());
  for (const auto& k : kraus_ops) sum += k.adjoint() * k;
  return symmetrize(sum);
}

void KrausChannel::validate(double tol) const {
  if (kraus_ops.empty()) throw ValidationError("channel has no Kraus operators");
  for (const auto& k : kraus_ops) {
    if (k.rows() != dim_out() || k.cols() != dim_in()) {
      throw ValidationError("Kraus operators have inconsistent shapes");
    }
  }
  const Eigen::MatrixXcd sum = completeness();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim_in(), dim_in());
  if (max_eigenvalue(sum) > 1.0 + tol) {
    throw ValidationError("channel is trace increasing: sum K^dag K exceeds identity");
  }
  if (trace_preserving && (sum - id).cwiseAbs().maxCoeff() > tol) {
    throw ValidationError("channel flagged trace preserving but sum K^dag K != identity");
  }
}

KrausChannel KrausChannel::identity(Eigen::Index dim) {
  return {{Eigen::MatrixXcd::Identity(dim, dim)}, true};
}

ChannelOutput apply_channel(const KrausChannel& channel, const HermitianMatrix& rho) {
  if (channel.kraus_ops.empty() || channel.dim_in() != rho.rows()) {
    throw ValidationError("apply_channel: channel input dimension does not match state");
  }
  HermitianMatrix out = HermitianMatrix::Zero(channel.dim_out(), channel.dim_out());
  for (const auto& k : channel.kraus_ops) out += k * rho * k.adjoint();
  ChannelOutput result;
  result.out = symmetrize(out);
  result.prob = result.out.trace().real();
  if (result.prob >= 1e-12) {
    result.normalized = DensityMatrix::normalized(result.out);
  }
  return result;
}

ChannelOutput apply_channel(const KrausChannel& channel, const DensityMatrix& rho) {
  return apply_channel(channel, rho.matrix());
}

StandardChannel parse_standard_channel(std::string_view name) {
  if (name == "amplitude_damping") return StandardChannel::AmplitudeDamping;
  if (name == "depolarizing") return StandardChannel::Depolarizing;
  if (name == "dephasing") return StandardChannel::Dephasing;
  throw ValidationError("unknown channel '" + std::string(name) + "'");
}

KrausChannel standard_channel(StandardChannel kind, double param) {
  if (!(param >= 0.0 && param <= 1.0)) {
    throw ValidationError("channel parameter must lie in [0, 1]");
  }
  const Complex i(0.0, 1.0);
  Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  Eigen::Matrix2cd x, y, z;
  x << 0, 1, 1, 0;
  y << 0, -i, i, 0;
  z << 1, 0, 0, -1;
  KrausChannel ch;
  ch.trace_preserving = true;
  switch (kind) {
    case StandardChannel::AmplitudeDamping: {
      Eigen::Matrix2cd k0, k1;
      k0 << 1, 0, 0, std::sqrt(1.0 - param);
      k1 << 0, std::sqrt(param), 0, 0;
      ch.kraus_ops = {k0, k1};
      break;
    }
    case StandardChannel::Depolarizing: {
      // rho -> (1-p) rho + p 1/2
      const double a = std::sqrt(1.0 - 3.0 * param / 4.0);
      const double b = std::sqrt(param / 4.0);
      ch.kraus_ops = {a * id, b * x, b * y, b * z};
      break;
    }
    case StandardChannel::Dephasing: {
      // rho -> (1-p/2) rho + (p/2) Z rho Z
      ch.kraus_ops = {std::sqrt(1.0 - param / 2.0) * id, std::sqrt(param / 2.0) * z};
      break;
    }
  }
  return ch;
}

namespace states {

ComplexVector basis(Eigen::Index dim, Eigen::Index index) {
  ComplexVector v = ComplexVector::Zero(dim);
  v(index) = 1.0;
  return v;
}

ComplexVector t_state() {
  ComplexVector v(2);
  v << 1.0, std::polar(1.0, std::numbers::pi / 4.0);
  return v / std::sqrt(2.0);
}

ComplexVector maximally_coherent(Eigen::Index m) {
  return ComplexVector::Constant(m, 1.0 / std::sqrt(static_cast<double>(m)));
}

ComplexVector maximally_entangled(Eigen::Index m) {
  ComplexVector v = ComplexVector::Zero(m * m);
  for (Eigen::Index i = 0; i < m; ++i) v(i * m + i) = 1.0 / std::sqrt(static_cast<double>(m));
  return v;
}

DensityMatrix noisy_plus(double q) {
  const ComplexVector plus = maximally_coherent(2);
  return DensityMatrix(symmetrize((1.0 - q) * plus * plus.adjoint() +
                                  q * HermitianMatrix::Identity(2, 2) / 2.0));
}

DensityMatrix noisy_t(double p) {
  const ComplexVector t = t_state();
  return DensityMatrix(
      symmetrize((1.0 - p) * t * t.adjoint() + p * HermitianMatrix::Identity(2, 2) / 2.0));
}

namespace {
Eigen::MatrixXcd ginibre(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXcd g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  }
  return g;
}
}  // namespace

DensityMatrix random_state(Eigen::Index dim, std::mt19937_64& rng) {
  return random_state_of_rank(dim, dim, rng);
}

DensityMatrix random_state_of_rank(Eigen::Index dim, Eigen::Index rank, std::mt19937_64& rng) {
  const Eigen::MatrixXcd g = ginibre(dim, rank, rng);
  return DensityMatrix::normalized(symmetrize(g * g.adjoint()));
}

ComplexVector random_pure(Eigen::Index dim, std::mt19937_64& rng) {
  ComplexVector v = ginibre(dim, 1, rng).col(0);
  return v / v.norm();
}

Eigen::MatrixXcd random_unitary(Eigen::Index dim, std::mt19937_64& rng) {
  // QR of a Ginibre matrix with the phases of R's diagonal removed (Haar measure).
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(ginibre(dim, dim, rng));
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

}  // namespace states

}  // namespace qrt

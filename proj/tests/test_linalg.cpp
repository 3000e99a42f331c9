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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qrt/state.hpp"

using namespace qrt;

namespace {

HermitianMatrix random_hermitian(Eigen::Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Eigen::MatrixXcd g(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = Complex(n(rng), n(rng));
  return symmetrize(g);
}

}  // namespace

TEST_CASE("eigendecomposition reconstructs random Hermitian matrices") {
  std::mt19937_64 rng(1);
  for (Eigen::Index d : {1, 2, 3, 4, 8, 16, 32}) {
    for (int rep = 0; rep < 5; ++rep) {
      const HermitianMatrix m = random_hermitian(d, rng);
      const auto eig = hermitian_eig(m);
      const HermitianMatrix back = eig.vectors * eig.values.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
      CHECK((back - m).norm() <= 1e-12 * std::max(1.0, m.norm()));
      CHECK((eig.vectors.adjoint() * eig.vectors - Eigen::MatrixXcd::Identity(d, d)).norm() <= 1e-12 * d);
      for (Eigen::Index i = 1; i < d; ++i) CHECK(eig.values(i - 1) >= eig.values(i));
    }
  }
}

TEST_CASE("real symmetric input takes the same path") {
  Eigen::MatrixXd m(2, 2);
  m << 2, 1, 1, 2;
  const auto eig = hermitian_eig(m);
  CHECK(eig.values(0) == doctest::Approx(3.0));
  CHECK(eig.values(1) == doctest::Approx(1.0));
}

TEST_CASE("non-Hermitian input is rejected") {
  Eigen::MatrixXcd m(2, 2);
  m << 1, 2, 0, 1;
  CHECK_THROWS_AS(hermitian_eig(m), ValidationError);
  CHECK_FALSE(is_hermitian(m));
  CHECK(hermitian_defect(m) == doctest::Approx(2.0));
}

TEST_CASE("Pauli spectra and norms") {
  Eigen::Matrix2cd y;
  y << 0, Complex(0, -1), Complex(0, 1), 0;
  CHECK(min_eigenvalue(y) == doctest::Approx(-1.0));
  CHECK(max_eigenvalue(y) == doctest::Approx(1.0));
  CHECK(hermitian_norm(y) == doctest::Approx(1.0));
  CHECK_FALSE(is_psd(y));
  CHECK(is_psd(HermitianMatrix(HermitianMatrix::Identity(2, 2) + y)));
}

TEST_CASE("tensor product matches the Kronecker definition") {
  Eigen::Matrix2cd a, b;
  a << 1, 2, 3, 4;
  b << 0, 1, 1, 0;
  const Eigen::MatrixXcd k = tensor_product(a, b);
  REQUIRE(k.rows() == 4);
  CHECK(k(0, 1) == Complex(1));
  CHECK(k(2, 3) == Complex(4));
  CHECK(k(3, 0) == Complex(3));
  CHECK(k(1, 2) == Complex(2));
  CHECK(k(1, 3) == Complex(0));
}

TEST_CASE("partial transpose is an involution and flips phi_2") {
  std::mt19937_64 rng(2);
  const HermitianMatrix m = random_hermitian(6, rng);
  CHECK((partial_transpose(partial_transpose(m, 2, 3), 2, 3) - m).norm() < 1e-14);
  CHECK_THROWS_AS(partial_transpose(m, 2, 2), ValidationError);

  ComplexVector phi = ComplexVector::Zero(4);
  phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
  const HermitianMatrix pt = partial_transpose(HermitianMatrix(phi * phi.adjoint()), 2, 2);
  CHECK(min_eigenvalue(pt) == doctest::Approx(-0.5));
}

TEST_CASE("realify is an isometric embedding with adjoint unrealify") {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 5; ++rep) {
    const HermitianMatrix x = random_hermitian(3, rng);
    const Eigen::MatrixXd r = realify(x);
    CHECK((r - r.transpose()).norm() < 1e-15);
    const auto ex = hermitian_eig(x).values;
    const auto er = hermitian_eig(r).values;
    for (Eigen::Index i = 0; i < 3; ++i) {
      CHECK(er(2 * i) == doctest::Approx(ex(i)));
      CHECK(er(2 * i + 1) == doctest::Approx(ex(i)));
    }
    const Eigen::MatrixXd z = realify(random_hermitian(3, rng)) + Eigen::MatrixXd::Random(6, 6) * 0.1;
    const Eigen::MatrixXd zs = 0.5 * (z + z.transpose());
    const double lhs = (zs * r).trace();
    const double rhs = (unrealify(zs) * x).trace().real();
    CHECK(lhs == doctest::Approx(rhs));
  }
}

TEST_CASE("psd helpers") {
  std::mt19937_64 rng(4);
  const DensityMatrix rho = states::random_state(4, rng);
  const HermitianMatrix root = psd_sqrt(rho.matrix());
  CHECK((root * root - rho.matrix()).norm() < 1e-12);

  HermitianMatrix m = HermitianMatrix::Zero(2, 2);
  m(0, 0) = 2.0;
  m(1, 1) = -1.0;
  const HermitianMatrix p = psd_part(m);
  CHECK(p(0, 0).real() == doctest::Approx(2.0));
  CHECK(std::abs(p(1, 1)) < 1e-15);

  const DensityMatrix low = states::random_state_of_rank(5, 2, rng);
  CHECK(numerical_rank(low.matrix()) == 2);
  CHECK(support_basis(low.matrix()).cols() == 2);
}

TEST_CASE("spectral_map applies the function to eigenvalues") {
  HermitianMatrix m = HermitianMatrix::Zero(2, 2);
  m(0, 0) = 4.0;
  m(1, 1) = 9.0;
  const HermitianMatrix r = spectral_map(m, [](double v) { return std::sqrt(v); });
  CHECK(r(0, 0).real() == doctest::Approx(2.0));
  CHECK(r(1, 1).real() == doctest::Approx(3.0));
}

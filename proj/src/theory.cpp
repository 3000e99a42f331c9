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

#include "qrt/theory.hpp"

#include <cmath>
#include <numbers>
#include <set>

namespace qrt {

using Eigen::Index;

std::string to_string(TheoryKind kind) {
  switch (kind) {
    case TheoryKind::Coherence:
      return "coherence";
    case TheoryKind::MagicQubit:
      return "magic_qubit";
    case TheoryKind::PptEntanglement:
      return "ppt_entanglement";
    case TheoryKind::Imaginarity:
      return "imaginarity";
  }
  return "unknown";
}

TheoryKind parse_theory_kind(std::string_view name) {
  if (name == "coherence") return TheoryKind::Coherence;
  if (name == "magic_qubit" || name == "magic") return TheoryKind::MagicQubit;
  if (name == "ppt_entanglement" || name == "ppt") return TheoryKind::PptEntanglement;
  if (name == "imaginarity") return TheoryKind::Imaginarity;
  throw ValidationError("unknown theory '" + std::string(name) + "'");
}

std::vector<HermitianMatrix> hermitian_basis(Index dim) {
  std::vector<HermitianMatrix> out;
  out.reserve(dim * dim);
  for (Index j = 0; j < dim; ++j) {
    HermitianMatrix e = HermitianMatrix::Zero(dim, dim);
    e(j, j) = 1.0;
    out.push_back(e);
  }
  for (Index j = 0; j < dim; ++j) {
    for (Index k = j + 1; k < dim; ++k) {
      HermitianMatrix re = HermitianMatrix::Zero(dim, dim);
      re(j, k) = re(k, j) = 1.0;
      out.push_back(re);
      HermitianMatrix im = HermitianMatrix::Zero(dim, dim);
      im(j, k) = Complex(0.0, -1.0);
      im(k, j) = Complex(0.0, 1.0);
      out.push_back(im);
    }
  }
  return out;
}

std::vector<HermitianMatrix> real_symmetric_basis(Index dim) {
  std::vector<HermitianMatrix> out;
  for (Index j = 0; j < dim; ++j) {
    HermitianMatrix e = HermitianMatrix::Zero(dim, dim);
    e(j, j) = 1.0;
    out.push_back(e);
  }
  for (Index j = 0; j < dim; ++j) {
    for (Index k = j + 1; k < dim; ++k) {
      HermitianMatrix re = HermitianMatrix::Zero(dim, dim);
      re(j, k) = re(k, j) = 1.0;
      out.push_back(re);
    }
  }
  return out;
}

RealVector hermitian_coordinates(const HermitianMatrix& m) {
  const Index d = m.rows();
  RealVector v(d * d);
  Index at = 0;
  for (Index j = 0; j < d; ++j) v(at++) = m(j, j).real();
  const double r2 = std::sqrt(2.0);
  for (Index j = 0; j < d; ++j) {
    for (Index k = j + 1; k < d; ++k) {
      v(at++) = r2 * m(j, k).real();
      v(at++) = r2 * m(j, k).imag();
    }
  }
  return v;
}

std::vector<HermitianMatrix> single_qubit_stabilizer_projectors() {
  const Complex i(0.0, 1.0);
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<ComplexVector> kets(6, ComplexVector(2));
  kets[0] << 1.0, 0.0;
  kets[1] << 0.0, 1.0;
  kets[2] << r, r;
  kets[3] << r, -r;
  kets[4] << r, r * i;
  kets[5] << r, -r * i;
  std::vector<HermitianMatrix> out;
  for (const auto& k : kets) out.push_back(symmetrize(k * k.adjoint()));
  return out;
}

std::vector<Eigen::Matrix2cd> single_qubit_cliffords() {
  const Complex i(0.0, 1.0);
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd h, s;
  h << r, r, r, -r;
  s << 1.0, 0.0, 0.0, i;
  // Breadth-first closure of <H, S> modulo global phase.
  auto canonical = [](const Eigen::Matrix2cd& u) {
    Index pi = 0, pj = 0;
    u.cwiseAbs().maxCoeff(&pi, &pj);
    const Complex phase = u(pi, pj) / std::abs(u(pi, pj));
    return Eigen::Matrix2cd(u / phase);
  };
  auto same = [](const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    return (a - b).cwiseAbs().maxCoeff() < 1e-9;
  };
  std::vector<Eigen::Matrix2cd> group{Eigen::Matrix2cd::Identity()};
  for (std::size_t at = 0; at < group.size(); ++at) {
    for (const auto& g : {h, s}) {
      const Eigen::Matrix2cd next = canonical(g * group[at]);
      bool seen = false;
      for (const auto& u : group) seen = seen || same(u, next);
      if (!seen) group.push_back(next);
    }
  }
  return group;
}

RealVector nonnegative_least_squares(const RealMatrix& a, const RealVector& b) {
  const Index n = a.cols();
  RealVector x = RealVector::Zero(n);
  std::vector<bool> passive(n, false);
  const double tol = 1e-12 * std::max(1.0, a.cwiseAbs().maxCoeff()) * std::max(1.0, b.norm());
  for (int outer = 0; outer < 3 * static_cast<int>(n) + 10; ++outer) {
    const RealVector grad = a.transpose() * (b - a * x);
    Index best = -1;
    double best_val = tol;
    for (Index j = 0; j < n; ++j) {
      if (!passive[j] && grad(j) > best_val) {
        best_val = grad(j);
        best = j;
      }
    }
    if (best < 0) break;
    passive[best] = true;
    for (int inner = 0; inner < 3 * static_cast<int>(n) + 10; ++inner) {
      std::vector<Index> idx;
      for (Index j = 0; j < n; ++j) {
        if (passive[j]) idx.push_back(j);
      }
      RealMatrix sub(a.rows(), static_cast<Index>(idx.size()));
      for (std::size_t c = 0; c < idx.size(); ++c) sub.col(static_cast<Index>(c)) = a.col(idx[c]);
      const RealVector zs = sub.completeOrthogonalDecomposition().solve(b);
      RealVector z = RealVector::Zero(n);
      for (std::size_t c = 0; c < idx.size(); ++c) z(idx[c]) = zs(static_cast<Index>(c));
      bool feasible = true;
      for (Index j : idx) feasible = feasible && z(j) > 0.0;
      if (feasible) {
        x = z;
        break;
      }
      double alpha = 1.0;
      for (Index j : idx) {
        if (z(j) <= 0.0) alpha = std::min(alpha, x(j) / (x(j) - z(j)));
      }
      x += alpha * (z - x);
      for (Index j : idx) {
        if (x(j) <= 1e-15) {
          x(j) = 0.0;
          passive[j] = false;
        }
      }
    }
  }
  return x;
}

namespace {

bool is_power_of_two(Index d) { return d >= 2 && (d & (d - 1)) == 0; }

std::vector<HermitianMatrix> tensor_generators(const std::vector<HermitianMatrix>& a,
                                               const std::vector<HermitianMatrix>& b) {
  std::vector<HermitianMatrix> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a) {
    for (const auto& y : b) out.push_back(tensor_product(x, y));
  }
  return out;
}

RealVector dirichlet(Index n, std::mt19937_64& rng) {
  std::exponential_distribution<double> expo(1.0);
  RealVector w(n);
  for (Index i = 0; i < n; ++i) w(i) = expo(rng) + 1e-12;
  return w / w.sum();
}

}  // namespace

ResourceTheory make_theory(TheoryKind kind, const std::vector<Index>& dims) {
  ResourceTheory t;
  t.kind_ = kind;
  t.name_ = to_string(kind);
  switch (kind) {
    case TheoryKind::Coherence:
    case TheoryKind::Imaginarity:
      if (dims.size() != 1 || dims[0] < 2) {
        throw ValidationError(t.name_ + " needs a single dimension >= 2");
      }
      t.dim_ = dims[0];
      t.dims_ = dims;
      t.affine_ = true;
      t.full_dimensional_ = false;
      t.cone_.kind = ConeRepresentation::Kind::LinearSlice;
      t.cone_.description = kind == TheoryKind::Coherence ? "diagonal PSD" : "real symmetric PSD";
      break;
    case TheoryKind::MagicQubit: {
      if (dims.size() != 1 || !is_power_of_two(dims[0])) {
        throw ValidationError("magic_qubit needs a dimension 2^n");
      }
      t.dim_ = dims[0];
      t.dims_ = dims;
      t.affine_ = false;
      t.full_dimensional_ = true;
      t.cone_.kind = ConeRepresentation::Kind::Generators;
      t.cone_.description = "product stabilizer projectors";
      t.cone_.generators = single_qubit_stabilizer_projectors();
      for (Index d = 2; d < t.dim_; d *= 2) {
        t.cone_.generators = tensor_generators(t.cone_.generators, single_qubit_stabilizer_projectors());
      }
      break;
    }
    case TheoryKind::PptEntanglement:
      if (dims.size() != 2 || dims[0] < 2 || dims[1] < 2) {
        throw ValidationError("ppt_entanglement needs dims {dA, dB} with dA, dB >= 2");
      }
      t.dim_ = dims[0] * dims[1];
      t.dims_ = dims;
      t.affine_ = false;
      t.full_dimensional_ = true;
      t.cone_.kind = ConeRepresentation::Kind::LinearSlice;
      t.cone_.description = "PSD with PSD partial transpose";
      break;
  }
  return t;
}

ResourceTheory make_theory(std::string_view name, const std::vector<Index>& dims) {
  return make_theory(parse_theory_kind(name), dims);
}

std::vector<Index> default_dims(TheoryKind kind, Index dim) {
  if (kind == TheoryKind::PptEntanglement) {
    const auto root = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(dim))));
    if (root * root != dim) {
      throw ValidationError("cannot split dimension " + std::to_string(dim) +
                            " into a bipartition; pass --dims");
    }
    return {root, root};
  }
  return {dim};
}

AffineMatrix ResourceTheory::add_cone_element(ConicProgram& program, const std::string& label) const {
  AffineMatrix expr = AffineMatrix::zero(dim_, dim_);
  switch (kind_) {
    case TheoryKind::Coherence: {
      const int first = program.add_variables(static_cast<int>(dim_), label);
      for (Index j = 0; j < dim_; ++j) {
        HermitianMatrix e = HermitianMatrix::Zero(dim_, dim_);
        e(j, j) = 1.0;
        expr.add_term(first + static_cast<int>(j), e);
        program.add_nonnegative(ScalarAffine::variable(first + static_cast<int>(j)), label);
      }
      break;
    }
    case TheoryKind::Imaginarity: {
      const auto basis = real_symmetric_basis(dim_);
      const int first = program.add_variables(static_cast<int>(basis.size()), label);
      for (std::size_t j = 0; j < basis.size(); ++j) expr.add_term(first + static_cast<int>(j), basis[j]);
      program.add_psd(expr, label);
      break;
    }
    case TheoryKind::PptEntanglement: {
      const auto basis = hermitian_basis(dim_);
      const int first = program.add_variables(static_cast<int>(basis.size()), label);
      for (std::size_t j = 0; j < basis.size(); ++j) expr.add_term(first + static_cast<int>(j), basis[j]);
      program.add_psd(expr, label);
      program.add_psd(expr.map([&](const Eigen::MatrixXcd& m) {
                        return Eigen::MatrixXcd(partial_transpose(m, dims_[0], dims_[1]));
                      }),
                      label + "^T_B");
      break;
    }
    case TheoryKind::MagicQubit: {
      const auto& gens = cone_.generators;
      const int first = program.add_variables(static_cast<int>(gens.size()), label);
      for (std::size_t j = 0; j < gens.size(); ++j) {
        expr.add_term(first + static_cast<int>(j), gens[j]);
        program.add_nonnegative(ScalarAffine::variable(first + static_cast<int>(j)), label);
      }
      break;
    }
  }
  return expr;
}

void ResourceTheory::constrain_to_cone(ConicProgram& program, const AffineMatrix& expr,
                                       const std::string& label) const {
  switch (kind_) {
    case TheoryKind::Coherence: {
      program.add_offdiagonal_zero(expr, label);
      for (Index j = 0; j < dim_; ++j) {
        HermitianMatrix e = HermitianMatrix::Zero(dim_, dim_);
        e(j, j) = 1.0;
        program.add_nonnegative(trace_against(e, expr), label);
      }
      break;
    }
    case TheoryKind::Imaginarity:
      program.add_imaginary_zero(expr, label);
      program.add_psd(expr, label);
      break;
    case TheoryKind::PptEntanglement:
      program.add_psd(expr, label);
      program.add_psd(expr.map([&](const Eigen::MatrixXcd& m) {
                        return Eigen::MatrixXcd(partial_transpose(m, dims_[0], dims_[1]));
                      }),
                      label + "^T_B");
      break;
    case TheoryKind::MagicQubit: {
      const AffineMatrix member = add_cone_element(program, label + ".coeffs");
      program.add_matrix_equality(expr - member, label);
      break;
    }
  }
}

bool ResourceTheory::is_free(const DensityMatrix& rho, double tol) const {
  if (rho.dim() != dim_) throw ValidationError("is_free: state dimension does not match theory");
  const HermitianMatrix& m = rho.matrix();
  switch (kind_) {
    case TheoryKind::Coherence: {
      const HermitianMatrix off = m - HermitianMatrix(m.diagonal().asDiagonal());
      return off.cwiseAbs().maxCoeff() <= tol;
    }
    case TheoryKind::Imaginarity:
      return m.imag().cwiseAbs().maxCoeff() <= tol;
    case TheoryKind::PptEntanglement:
      return min_eigenvalue(partial_transpose(m, dims_[0], dims_[1])) >= -tol;
    case TheoryKind::MagicQubit: {
      const auto& gens = cone_.generators;
      RealMatrix a(dim_ * dim_, static_cast<Index>(gens.size()));
      for (std::size_t j = 0; j < gens.size(); ++j) a.col(static_cast<Index>(j)) = hermitian_coordinates(gens[j]);
      const RealVector b = hermitian_coordinates(m);
      const RealVector x = nonnegative_least_squares(a, b);
      return (a * x - b).norm() <= tol;
    }
  }
  return false;
}

double ResourceTheory::max_over_free(const HermitianMatrix& w) const {
  if (w.rows() != dim_) throw ValidationError("max_over_free: dimension mismatch");
  switch (kind_) {
    case TheoryKind::Coherence:
      return w.diagonal().real().maxCoeff();
    case TheoryKind::Imaginarity:
      return max_eigenvalue(RealMatrix(symmetrize(w).real()));
    case TheoryKind::MagicQubit: {
      double best = -std::numeric_limits<double>::infinity();
      for (const auto& g : cone_.generators) best = std::max(best, (w * g).trace().real());
      return best;
    }
    case TheoryKind::PptEntanglement: {
      ConicProgram p;
      const AffineMatrix sigma = add_cone_element(p, "sigma");
      ScalarAffine trace = trace_against(HermitianMatrix::Identity(dim_, dim_), sigma);
      trace.constant -= 1.0;
      p.add_equality(trace, "unit trace");
      p.set_objective(ConicProgram::Sense::Maximize, trace_against(symmetrize(w), sigma));
      NumericPolicy policy = NumericPolicy::from_environment();
      policy.solver_tol = std::min(policy.solver_tol, 1e-10);
      ConicSolution sol = solve(p, policy);
      if (!sol.optimal()) {
        policy.solver_tol = 1e-8;
        sol = solve(p, policy);
      }
      if (!sol.optimal()) {
        throw std::runtime_error("max_over_free: PPT certification solve failed: " + sol.message);
      }
      // The dual bound is the safe side for a maximization.
      return std::max(sol.primal_value, sol.dual_value);
    }
  }
  return 0.0;
}

std::vector<DensityMatrix> ResourceTheory::certification_set() const {
  std::vector<DensityMatrix> out;
  switch (kind_) {
    case TheoryKind::Coherence:
      for (Index j = 0; j < dim_; ++j) out.push_back(DensityMatrix::pure(states::basis(dim_, j)));
      break;
    case TheoryKind::MagicQubit:
      for (const auto& g : cone_.generators) out.emplace_back(g);
      break;
    case TheoryKind::PptEntanglement:
    case TheoryKind::Imaginarity:
      break;
  }
  return out;
}

DensityMatrix ResourceTheory::random_free_state(std::mt19937_64& rng) const {
  switch (kind_) {
    case TheoryKind::Coherence: {
      const RealVector p = dirichlet(dim_, rng);
      return DensityMatrix::normalized(HermitianMatrix(p.cast<Complex>().asDiagonal()));
    }
    case TheoryKind::Imaginarity: {
      std::normal_distribution<double> normal;
      RealMatrix g(dim_, dim_);
      for (Index i = 0; i < dim_; ++i) {
        for (Index j = 0; j < dim_; ++j) g(i, j) = normal(rng);
      }
      return DensityMatrix::normalized(HermitianMatrix((g * g.transpose()).cast<Complex>()));
    }
    case TheoryKind::MagicQubit: {
      const auto& gens = cone_.generators;
      const RealVector p = dirichlet(static_cast<Index>(gens.size()), rng);
      HermitianMatrix m = HermitianMatrix::Zero(dim_, dim_);
      for (std::size_t j = 0; j < gens.size(); ++j) m += p(static_cast<Index>(j)) * gens[j];
      return DensityMatrix::normalized(m);
    }
    case TheoryKind::PptEntanglement: {
      // Separable mixtures of product pure states are PPT.
      const Index terms = dim_ + 2;
      const RealVector p = dirichlet(terms, rng);
      HermitianMatrix m = HermitianMatrix::Zero(dim_, dim_);
      for (Index j = 0; j < terms; ++j) {
        const ComplexVector a = states::random_pure(dims_[0], rng);
        const ComplexVector b = states::random_pure(dims_[1], rng);
        const ComplexVector ab = tensor_product(a, b);
        m += p(j) * ab * ab.adjoint();
      }
      return DensityMatrix::normalized(symmetrize(m));
    }
  }
  return DensityMatrix::maximally_mixed(dim_);
}

CanonicalState ResourceTheory::canonical_state(std::string_view label) const {
  switch (kind_) {
    case TheoryKind::Coherence:
      return canonical_state(label, dim_);
    case TheoryKind::PptEntanglement:
      return canonical_state(label, std::min(dims_[0], dims_[1]));
    default:
      return canonical_state(label, 0);
  }
}

CanonicalState ResourceTheory::canonical_state(std::string_view label, Index m) const {
  const std::string l(label);
  if (label == "maximally_coherent" && kind_ == TheoryKind::Coherence) {
    if (m < 1 || m > dim_) throw ValidationError("maximally_coherent(m) needs 1 <= m <= dim");
    ComplexVector v = ComplexVector::Zero(dim_);
    v.head(m) = states::maximally_coherent(m);
    return {l + "(" + std::to_string(m) + ")", DensityMatrix::pure(v)};
  }
  if (label == "maximally_entangled" && kind_ == TheoryKind::PptEntanglement) {
    if (m < 1 || m > std::min(dims_[0], dims_[1])) {
      throw ValidationError("maximally_entangled(m) needs 1 <= m <= min(dA, dB)");
    }
    ComplexVector v = ComplexVector::Zero(dim_);
    for (Index i = 0; i < m; ++i) v(i * dims_[1] + i) = 1.0 / std::sqrt(static_cast<double>(m));
    return {l + "(" + std::to_string(m) + ")", DensityMatrix::pure(v)};
  }
  if (label == "t_state" && kind_ == TheoryKind::MagicQubit) {
    ComplexVector v = states::t_state();
    for (Index d = 2; d < dim_; d *= 2) v = tensor_product(v, states::t_state());
    return {l, DensityMatrix::pure(v)};
  }
  throw ValidationError("canonical state '" + l + "' is not supported by theory " + name_);
}

ResourceTheory ResourceTheory::tensor_square() const {
  switch (kind_) {
    case TheoryKind::Coherence:
    case TheoryKind::Imaginarity:
    case TheoryKind::MagicQubit:
      return make_theory(kind_, {dim_ * dim_});
    case TheoryKind::PptEntanglement:
      break;
  }
  throw ValidationError("tensor_square is not provided for " + name_ +
                        " (copies would need a subsystem reordering)");
}

}  // namespace qrt

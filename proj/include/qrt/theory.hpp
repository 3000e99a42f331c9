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

#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "qrt/conic.hpp"
#include "qrt/state.hpp"

namespace qrt {

enum class TheoryKind { Coherence, MagicQubit, PptEntanglement, Imaginarity };

std::string to_string(TheoryKind kind);
TheoryKind parse_theory_kind(std::string_view name);

/// How cone(F) is handed to the conic backend.
struct ConeRepresentation {
  enum class Kind {
    /// A linear subspace intersected with PSD-type cones.
    LinearSlice,
    /// Nonnegative combinations of fixed generators.
    Generators,
  };
  Kind kind = Kind::LinearSlice;
  /// Populated for Kind::Generators: PSD, unit trace.
  std::vector<HermitianMatrix> generators;
  /// Human-readable description of the slice, e.g. "diagonal".
  std::string description;
};

struct CanonicalState {
  std::string label;
  DensityMatrix state;
};

/// Descriptor of a set of free states F together with the hooks the conic
/// programs need to talk about cone(F). Immutable once built.
class ResourceTheory {
 public:
  TheoryKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  Eigen::Index dim() const { return dim_; }
  /// Bipartition for PPT theories; {dim} otherwise.
  const std::vector<Eigen::Index>& dims() const { return dims_; }
  const ConeRepresentation& cone() const { return cone_; }
  bool is_affine() const { return affine_; }
  bool is_full_dimensional() const { return full_dimensional_; }

  /// Adds variables for a generic element of cone(F) and returns it.
  AffineMatrix add_cone_element(ConicProgram& program, const std::string& label) const;
  /// Adds constraints forcing `expr` into cone(F).
  void constrain_to_cone(ConicProgram& program, const AffineMatrix& expr,
                         const std::string& label) const;

  /// Membership of a state in F within `tol`.
  bool is_free(const DensityMatrix& rho, double tol = 1e-8) const;
  /// max over sigma in F of Re Tr(W sigma). Closed form where F has
  /// enumerable extreme points, a conic solve for the PPT theory.
  double max_over_free(const HermitianMatrix& w) const;
  /// Finite set of free states whose convex hull is F, when one is shipped
  /// (coherence: basis states; magic: stabilizer projectors). Empty otherwise.
  std::vector<DensityMatrix> certification_set() const;

  DensityMatrix random_free_state(std::mt19937_64& rng) const;
  /// Labels: maximally_coherent, maximally_entangled, t_state.
  CanonicalState canonical_state(std::string_view label) const;
  /// Canonical targets of a family at size m (coherence: |+_m>, PPT: phi_m).
  CanonicalState canonical_state(std::string_view label, Eigen::Index m) const;

  /// Theory on two copies, with the cone built by tensoring.
  ResourceTheory tensor_square() const;

  friend ResourceTheory make_theory(TheoryKind kind, const std::vector<Eigen::Index>& dims);

 private:
  ResourceTheory() = default;

  TheoryKind kind_ = TheoryKind::Coherence;
  std::string name_;
  Eigen::Index dim_ = 0;
  std::vector<Eigen::Index> dims_;
  ConeRepresentation cone_;
  bool affine_ = false;
  bool full_dimensional_ = false;
};

/// dims: coherence/imaginarity {d}; magic_qubit {2^n}; ppt_entanglement {dA, dB}.
/// For n > 1 magic qubits the cone is generated by products of single-qubit
/// stabilizer projectors, a subset of the full stabilizer hull.
ResourceTheory make_theory(TheoryKind kind, const std::vector<Eigen::Index>& dims);
ResourceTheory make_theory(std::string_view name, const std::vector<Eigen::Index>& dims);

/// Picks default dims for a state of dimension `dim` (PPT splits a square dim evenly).
std::vector<Eigen::Index> default_dims(TheoryKind kind, Eigen::Index dim);

/// The six single-qubit stabilizer projectors |0>,|1>,|+>,|->,|+i>,|-i>.
std::vector<HermitianMatrix> single_qubit_stabilizer_projectors();
/// The 24 single-qubit Clifford unitaries (up to global phase).
std::vector<Eigen::Matrix2cd> single_qubit_cliffords();

/// Orthogonal basis of Hermitian d x d matrices: E_jj, E_jk+E_kj, i(E_jk-E_kj).
std::vector<HermitianMatrix> hermitian_basis(Eigen::Index dim);
/// Real symmetric part of the above: E_jj, E_jk+E_kj.
std::vector<HermitianMatrix> real_symmetric_basis(Eigen::Index dim);

/// Lawson-Hanson nonnegative least squares: argmin ||A x - b|| s.t. x >= 0.
RealVector nonnegative_least_squares(const RealMatrix& a, const RealVector& b);

/// Real coordinates of a Hermitian matrix in an orthonormal Hermitian basis.
RealVector hermitian_coordinates(const HermitianMatrix& m);

}  // namespace qrt

// Copyright 2026 The dchan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <string>

#include "dchan/linalg.hpp"
#include "dchan/types.hpp"

namespace dchan {

/// Returns a description of the first violated state invariant, or nothing
/// if `m` is Hermitian, unit-trace and PSD within the shared tolerances.
std::optional<std::string> density_defect(const Matrix& m);

/**
 * A positive semidefinite, unit-trace operator.
 *
 * Construction validates the matrix. Inputs that are within tolerance of the
 * state space are projected onto it: the Hermitian part is taken, eigenvalues
 * in [-1e-9, 0) are clipped to zero and the trace is renormalized. Anything
 * further out is rejected with ValidationError.
 */
class DensityOperator {
 public:
  explicit DensityOperator(const Matrix& m);

  static DensityOperator maximally_mixed(Index dim);
  /// |ψ⟩⟨ψ| for a nonzero vector, normalized internally.
  static DensityOperator pure(const Vector& psi);
  static DensityOperator basis_state(Index dim, Index k);

  Index dim() const { return matrix_.rows(); }
  const Matrix& matrix() const { return matrix_; }
  double purity() const { return (matrix_ * matrix_).trace().real(); }

 private:
  struct Trusted {};
  DensityOperator(Matrix m, Trusted) : matrix_(std::move(m)) {}
  Matrix matrix_;
};

/// A density operator on A ⊗ B with the product basis |a⟩⊗|b⟩, B fastest.
class BipartiteState {
 public:
  BipartiteState(DensityOperator state, Index dim_a, Index dim_b);
  BipartiteState(const Matrix& m, Index dim_a, Index dim_b)
      : BipartiteState(DensityOperator(m), dim_a, dim_b) {}

  Index dim_a() const { return dim_a_; }
  Index dim_b() const { return dim_b_; }
  Index dim() const { return state_.dim(); }
  const DensityOperator& state() const { return state_; }
  const Matrix& matrix() const { return state_.matrix(); }

 private:
  DensityOperator state_;
  Index dim_a_;
  Index dim_b_;
};

DensityOperator tensor(const DensityOperator& x, const DensityOperator& y);
BipartiteState product_state(const DensityOperator& a, const DensityOperator& b);

DensityOperator partial_trace(const BipartiteState& rho, Subsystem keep);

/// Convex combination w·x + (1−w)·y of two states on the same space.
BipartiteState mix(const BipartiteState& x, const BipartiteState& y, double w);

/// Maximally entangled (|00⟩ + |11⟩ + …)/√k on A ⊗ B, k = min(dimA, dimB).
BipartiteState maximally_entangled(Index dim_a, Index dim_b);

/// −Σ λ log₂ λ over the given spectrum; λ < 1e-12 contributes zero.
double entropy_bits(const RealVector& spectrum);
/// Von Neumann entropy in bits.
double von_neumann_entropy(const DensityOperator& rho);

}  // namespace dchan

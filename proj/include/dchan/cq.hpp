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

#include <cstdint>
#include <optional>
#include <vector>

#include "dchan/random.hpp"
#include "dchan/state.hpp"

// Exact (structural) tests for classical-quantum states
//   ρ = Σ_k p_k |ψ_k⟩⟨ψ_k| ⊗ ρ_B|k.

namespace dchan {

/// ‖[ρ, ρ_A ⊗ 𝟙]‖_F / max(1, ‖ρ‖_F). Zero on CQ states, but also on some
/// discordant states (any state with ρ_A ∝ 𝟙), so it is only a pre-filter.
double cq_commutator_residual(const BipartiteState& rho);

/// The worst-offending pair of B-indexed blocks A_ij = ⟨i|_B ρ |j⟩_B.
struct BlockWitness {
  Index i, j;  // first block
  Index k, l;  // second block; equal to (i, j) for a normality defect
  bool normality = false;
  double defect = 0.0;  // ‖[A_ij, A_kl]‖_F or ‖[A_ij, A_ij†]‖_F
};

struct CqCheck {
  bool is_cq = true;
  double residual = 0.0;  // worst defect / ‖ρ‖_F
  std::optional<BlockWitness> witness;
};

/// True iff all blocks A_ij are normal and mutually commute within
/// tol·‖ρ‖_F.
CqCheck is_cq_exact(const BipartiteState& rho, double tol = tol::kCq);
CqCheck is_cq_exact(const Matrix& rho, Index dim_a, Index dim_b,
                    double tol = tol::kCq);

struct CQDecomposition {
  Matrix basis;  // columns |ψ_k⟩
  RealVector probabilities;
  std::vector<DensityOperator> conditionals;  // ρ_B|k; 𝟙/dB where p_k = 0
  double residual = 0.0;  // ‖ρ − Σ p_k |ψ_k⟩⟨ψ_k| ⊗ ρ_B|k‖_F

  Matrix reconstruct() const;
};

/**
 * Finds the common eigenbasis of the blocks from a random real combination of
 * their Hermitian parts. A draw whose eigenbasis does not diagonalize every
 * block is retried with a fresh seed, at most five retries.
 *
 * Throws ValidationError if ρ is not CQ and NumericalError if every draw
 * fails or the reconstruction residual exceeds 1e-8.
 */
CQDecomposition cq_decompose(const BipartiteState& rho,
                             std::uint64_t seed = kDefaultSeed,
                             double tol = tol::kCq);

}  // namespace dchan

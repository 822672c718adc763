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
#include <string>
#include <vector>

#include "dchan/random.hpp"
#include "dchan/state.hpp"

// Convex families of classical-quantum states
//
//   Σ_BOTH t_i |ψ_i⟩⟨ψ_i| ⊗ R_i + Σ_FIXED t_i |ψ_i⟩⟨ψ_i| ⊗ σ̃_i
//     + Σ_POINT t_i ρ̃_A|i ⊗ R_i
//
// where the |ψ_i⟩ and the POINT subspaces are mutually orthogonal.

namespace dchan {

/// Rank-1 slot with a fixed conditional state on B.
struct BothEntry {
  Vector psi;
  DensityOperator state;
};

/// Rank-1 slot whose conditional state on B ranges over the convex hull of
/// `generators`. An empty list leaves the conditional unrestricted.
struct FixedEntry {
  Vector psi;
  std::vector<DensityOperator> generators;
};

/// Subspace slot (projector rank ≥ 2); the A state varies inside the
/// subspace and B is pinned to `state`.
struct PointEntry {
  Matrix projector;
  DensityOperator state;
};

struct ConvexCQSubsetSpec {
  Index dim_a = 0;
  Index dim_b = 0;
  std::vector<BothEntry> both;
  std::vector<FixedEntry> fixed;
  std::vector<PointEntry> point;

  std::size_t size() const { return both.size() + fixed.size() + point.size(); }
};

struct SpecCheck {
  bool ok = true;
  std::string diagnostic;  // first violated clause, empty when ok

  explicit operator bool() const { return ok; }
};

SpecCheck validate_spec(const ConvexCQSubsetSpec& spec);

/// Diagonal-on-A family: rank-1 FIXED entries on the columns of `basis`.
ConvexCQSubsetSpec v_diag_a(const Matrix& basis,
                            std::vector<std::vector<DensityOperator>> generators,
                            Index dim_b);
/// ρ_A ⊗ R_B with ρ_A arbitrary: a single full-space POINT entry.
ConvexCQSubsetSpec v_fixed_b(Index dim_a, const DensityOperator& r);

/// Orthonormal columns spanning the range of a projector.
Matrix range_basis(const Matrix& projector);

/// Draws one member of the family. Weights are over entries in the order
/// both, fixed, point and are renormalized; Dirichlet(1) when omitted.
/// Throws ValidationError on an invalid spec or bad weights.
BipartiteState sample_state(const ConvexCQSubsetSpec& spec,
                            const std::optional<RealVector>& weights, Rng& rng);
BipartiteState sample_state(const ConvexCQSubsetSpec& spec, std::uint64_t seed);

struct Membership {
  bool member = true;
  double residual = 0.0;  // largest violated quantity
  std::string reason;

  explicit operator bool() const { return member; }
};

Membership membership(const ConvexCQSubsetSpec& spec, const BipartiteState& rho,
                      double tol = 1e-8);

struct MixingFailure {
  int pair;
  double weight;
  double cq_residual;
  bool is_cq;
  bool member;
};

struct MixingReport {
  int pairs = 0;
  double worst_cq_residual = 0.0;
  std::vector<MixingFailure> failures;

  bool passed() const { return failures.empty(); }
};

/// Mixes n_pairs pairs of samples with uniform random weight and checks each
/// mixture for CQ-ness and membership.
MixingReport mixing_closure_check(const ConvexCQSubsetSpec& spec, int n_pairs,
                                  std::uint64_t seed = kDefaultSeed);

}  // namespace dchan

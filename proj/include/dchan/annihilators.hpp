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
#include <variant>
#include <vector>

#include "dchan/channel.hpp"
#include "dchan/structures.hpp"

// Discord-annihilating channels on AB:
//
//   Φ(ρ) = Σ_i (Π_i ⊗ Φ_i)[ℰ(ρ)]
//
// with ℰ an arbitrary channel, Π_i the pinching onto mutually orthogonal
// subspaces of A, and Φ_i either a point channel or (rank-1 subspaces only)
// the identity.

namespace dchan {

struct PointTo {
  DensityOperator state;
};
struct IdentityAction {};
using BlockAction = std::variant<PointTo, IdentityAction>;

struct PartitionEntry {
  Matrix projector;  // orthogonal projector on A
  BlockAction action;

  static PartitionEntry rank1(const Vector& psi, BlockAction action);
  static PartitionEntry multi(const Matrix& projector, const DensityOperator& r);

  Index rank() const;
  bool is_identity() const { return std::holds_alternative<IdentityAction>(action); }
};

struct DAChannelSpec {
  Index dim_a = 0;
  Index dim_b = 0;
  std::optional<QuantumChannel> pre_channel;  // identity when empty
  std::vector<PartitionEntry> partition;
};

/// Completeness Σ P_i = 𝟙 and orthogonality within 1e-10, ranks, and
/// Identity only on rank-1 entries.
SpecCheck validate_da_spec(const DAChannelSpec& spec);

/// Throws ValidationError on an invalid spec.
QuantumChannel build_da_channel(const DAChannelSpec& spec);

/// The convex CQ family containing the image: rank-1 + PointTo → both,
/// rank-1 + Identity → fixed (unrestricted), multi → point.
ConvexCQSubsetSpec induced_subset_spec(const DAChannelSpec& spec);

/// Random partition on A (each part rank 1 or, when room remains, a
/// multi-dimensional block), random actions and a random pre-channel.
DAChannelSpec random_da_spec(Index dim_a, Index dim_b, Rng& rng);

struct CertifyReport {
  int inputs = 0;  // boundary probes plus random samples
  double worst_residual = 0.0;
  std::optional<int> first_failure;
  std::optional<BipartiteState> failing_input;
  std::optional<Matrix> failing_output;

  bool passed() const { return !first_failure.has_value(); }
};

/// Applies Φ to boundary inputs (product basis states, |+⟩|+⟩, the maximally
/// entangled state, a rank-2 mixture) and then to n_samples Hilbert–Schmidt
/// states seeded by derive_seed(seed, i), testing is_cq_exact on each output.
CertifyReport apply_and_certify(const QuantumChannel& phi, Index dim_a,
                                Index dim_b, int n_samples,
                                std::uint64_t seed = kDefaultSeed,
                                double tol = tol::kCq);

struct MatchResult {
  std::optional<DAChannelSpec> spec;
  double residual = 0.0;  // Choi distance of the rebuilt channel
  CertifyReport certification;
  std::string reason;  // why no spec was returned
};

/**
 * Recovers a partition for Φ from its outputs on 𝟙/d and 4·dA² perturbed
 * inputs. The returned spec uses Φ itself as pre-channel, so it is one
 * representative among many; entries are sorted by rank, then by basis.
 */
MatchResult structural_match(const QuantumChannel& phi, Index dim_a, Index dim_b,
                             int n_samples = 200,
                             std::uint64_t seed = kDefaultSeed);

enum class LocalDAKind { ViaA, ViaB, NotDA };

struct LocalDAVerdict {
  LocalDAKind kind = LocalDAKind::NotDA;
  std::optional<BipartiteState> witness_input;
  std::optional<Matrix> witness_output;
  double residual = 0.0;
  std::string notes;
};

/// ℰ_A ⊗ ℱ_B is DA iff ℰ_A is quantum-classical or ℱ_B is a point channel.
LocalDAVerdict is_local_da(const QuantumChannel& on_a, const QuantumChannel& on_b,
                           std::uint64_t seed = kDefaultSeed);

std::string to_string(LocalDAKind kind);

}  // namespace dchan

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
#include <random>
#include <variant>

#include "dchan/state.hpp"

namespace dchan {

using Rng = std::mt19937_64;

inline constexpr std::uint64_t kDefaultSeed = 42;

/// Independent stream seed for item `index` of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// ρ = GG†/tr(GG†) with G a d×d complex Ginibre matrix.
struct HilbertSchmidt {};
struct HaarPure {};
/// ρ = GG†/tr(GG†) with G a d×k Ginibre matrix.
struct FixedRank {
  Index rank;
};
using Ensemble = std::variant<HilbertSchmidt, HaarPure, FixedRank>;

Matrix ginibre(Index rows, Index cols, Rng& rng);
Vector random_unit_vector(Index dim, Rng& rng);
/// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
Matrix random_unitary(Index dim, Rng& rng);

DensityOperator random_density(Index dim, const Ensemble& ensemble, Rng& rng);
DensityOperator random_density(Index dim, const Ensemble& ensemble,
                               std::uint64_t seed);
BipartiteState random_bipartite(Index dim_a, Index dim_b,
                                const Ensemble& ensemble, Rng& rng);

/// Flat Dirichlet(1, …, 1) weights.
RealVector random_simplex(Index n, Rng& rng);

}  // namespace dchan

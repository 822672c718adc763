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
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "dchan/annihilators.hpp"
#include "dchan/channel.hpp"

namespace dchan {

enum class VerdictKind { Yes, No, Unknown };
std::string to_string(VerdictKind kind);

/// Two inputs whose outputs differ (point test) or fail to commute (q-c
/// test); `magnitude` is ‖Φ(x) − Φ(y)‖_F or ‖[Φ(x), Φ(y)]‖_F.
struct InputPairWitness {
  Matrix x;
  Matrix y;
  double magnitude;
};

/// An input on AB whose output fails is_cq_exact with block residual
/// `magnitude`.
struct StateWitness {
  BipartiteState input;
  BipartiteState output;
  double magnitude;
};

/// Eigenvector of the partially transposed normalized Choi matrix with
/// eigenvalue `magnitude` < 0.
struct EigenWitness {
  Vector vector;
  double magnitude;
};

using Witness = std::variant<InputPairWitness, StateWitness, EigenWitness>;

struct Verdict {
  VerdictKind kind = VerdictKind::Unknown;
  std::optional<Witness> witness;
  double residual = 0.0;
  std::string notes;
};

/// Yes iff J = 𝟙 ⊗ σ within tol (Frobenius), σ = tr_in J / dimIn.
Verdict is_point_channel(const QuantumChannel& phi, double tol = 1e-8);

struct QcForm {
  std::vector<Matrix> povm;  // F_k
  Matrix basis;              // columns |k⟩
};

struct QcVerdict {
  Verdict verdict;
  std::optional<QcForm> form;
};

/// Yes iff the Choi matrix is classical on the output slot; on Yes the
/// extracted {F_k, |k⟩} rebuilds Φ within 1e-8.
QcVerdict is_qc_channel(const QuantumChannel& phi, double tol = tol::kCq);

/// PPT test on J/dimIn. Yes is only returned when dimIn·dimOut ≤ 6.
Verdict is_entanglement_breaking(const QuantumChannel& phi,
                                 double tol = tol::kPsd);

/// Deterministic probes (Bell family, product extremes, half-half mixtures of
/// noncommuting products), then seeded Hilbert–Schmidt states, until an
/// output fails is_cq_exact or `budget` inputs have been tried.
std::optional<StateWitness> find_noncq_output(const QuantumChannel& phi,
                                              Index in_a, Index in_b,
                                              Index out_a, Index out_b,
                                              std::uint64_t seed = kDefaultSeed,
                                              int budget = 500,
                                              double tol = tol::kCq);

/// The fixed probe inputs used by find_noncq_output, in order.
std::vector<BipartiteState> witness_probes(Index dim_a, Index dim_b);

struct ActsOnA {
  Index dim_b;
};
struct ActsOnB {
  Index dim_a;
};
struct ActsOnAB {
  Index dim_a;
  Index dim_b;
};
using ChannelContext = std::variant<ActsOnA, ActsOnB, ActsOnAB>;

struct ClassificationReport {
  std::string label;  // "DB-A", "not DB-A", "DB-B", "not DB-B", "DA", "NotDA",
                      // "Inconclusive"
  Verdict verdict;
  std::optional<Verdict> entanglement_breaking;  // local contexts only
  std::optional<QcForm> qc_form;
  std::optional<DAChannelSpec> da_spec;
  std::optional<double> transfer_ratio;  // σ_min / σ_max, AB context only
  std::optional<StateWitness> discordant_output;
};

/// Throws DimensionError when the channel does not fit the context.
ClassificationReport classify_channel(const QuantumChannel& phi,
                                      const ChannelContext& context,
                                      std::uint64_t seed = kDefaultSeed,
                                      double tol = tol::kCq);

// Sweep over the unital qubit tetrahedron.

struct SweepRow {
  UnitalQubitParams lambda;
  bool is_db;
  bool is_eb;
  double max_discord;
};

/// Largest discord (Hybrid strategy) of the outputs of a qubit channel acting
/// on `side` of a 2 ⊗ dim_other system, over n_probes probe states.
double max_probe_discord(const QuantumChannel& phi, Subsystem side,
                         Index dim_other, int n_probes,
                         std::uint64_t seed = kDefaultSeed);

/// Throws ValidationError unless step ∈ (0, 1].
std::vector<SweepRow> tetrahedron_sweep(double step, Subsystem side,
                                        Index dim_other = 2, int n_probes = 20,
                                        std::uint64_t seed = kDefaultSeed);

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

}  // namespace dchan

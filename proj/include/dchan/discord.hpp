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
#include <variant>
#include <vector>

#include "dchan/random.hpp"
#include "dchan/state.hpp"

namespace dchan {

/**
 * Rank-1 von Neumann measurement {|e_a⟩⟨e_a|}, stored as the unitary whose
 * columns are the |e_a⟩.
 */
class ProjectiveMeasurement {
 public:
  /// Throws unless the columns of `basis` are orthonormal within 1e-10.
  explicit ProjectiveMeasurement(const Matrix& basis);

  static ProjectiveMeasurement computational(Index dim);
  /// Qubit measurement along the Bloch direction (sinθ cosφ, sinθ sinφ, cosθ).
  static ProjectiveMeasurement from_bloch(double theta, double phi);

  Index dim() const { return basis_.rows(); }
  Index outcomes() const { return basis_.cols(); }
  const Matrix& basis() const { return basis_; }
  Matrix projector(Index a) const;
  /// Bloch vector of the first outcome (qubits only).
  Eigen::Vector3d bloch_vector() const;

 private:
  Matrix basis_;
};

/// I(A:B) = S(A) + S(B) − S(AB), in bits.
double mutual_information(const BipartiteState& rho);

struct MeasurementOutcome {
  Index index;  // which projector
  double probability;
  DensityOperator conditional;  // ρ_B|a
};

/// Outcomes of measuring A, with p_a < 1e-12 omitted.
std::vector<MeasurementOutcome> measure_and_condition(
    const BipartiteState& rho, const ProjectiveMeasurement& m);

/// S(B) − Σ_a p_a S(ρ_B|a) for a fixed measurement.
double measured_information(const BipartiteState& rho,
                            const ProjectiveMeasurement& m);

/// Bloch-angle grid: θ_i = π·i/nθ (i = 0…nθ), φ_j = 2π·j/nφ (j < nφ).
/// Qubit A only.
struct GridSearch {
  int n_theta = 32;
  int n_phi = 64;
};

/// Nelder–Mead over Givens-rotation parameters from `restarts` seeded Haar
/// unitaries plus the eigenbasis of ρ_A.
struct MultiStart {
  int restarts = 20;
  std::uint64_t seed = kDefaultSeed;
};

/// Qubit A: coarse grid, then Nelder–Mead from the best `refine` grid points.
/// Larger A: falls back to MultiStart with the given restarts and seed.
struct Hybrid {
  int n_theta = 32;
  int n_phi = 64;
  int refine = 5;
  int restarts = 20;
  std::uint64_t seed = kDefaultSeed;
};

using Strategy = std::variant<GridSearch, MultiStart, Hybrid>;

struct OptimizerTrace {
  int restarts = 0;
  std::vector<double> best_per_restart;
  long evaluations = 0;
};

struct ClassicalCorrelation {
  double value;  // J(B|A), evaluated exactly at `measurement`
  ProjectiveMeasurement measurement;
  OptimizerTrace trace;
};

/// Lower bound on J(B|A) = max over rank-1 projective measurements on A.
ClassicalCorrelation classical_correlation(const BipartiteState& rho,
                                           const Strategy& strategy = Hybrid{});

struct DiscordResult {
  double value;  // mutual_information − classical_correlation
  ProjectiveMeasurement optimal_measurement;
  double mutual_information;
  double classical_correlation;
  OptimizerTrace optimizer_trace;
};

/// Discord D^A = I(A:B) − J(B|A). Since J is a lower bound this is an upper
/// bound on the true discord; use is_cq_exact to certify zero discord.
DiscordResult discord(const BipartiteState& rho,
                      const Strategy& strategy = Hybrid{});

/// Measurement basis U0·G(params) with G a product of Givens rotations, two
/// parameters (angle, phase) per pair p < q.
Matrix givens_unitary(const Matrix& base, const RealVector& params);

}  // namespace dchan

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
#include <vector>

#include "dchan/random.hpp"
#include "dchan/state.hpp"

namespace dchan {

/**
 * A completely positive trace-preserving map L(ℂ^dimIn) → L(ℂ^dimOut).
 *
 * Both a Kraus set and the Choi matrix are held; whichever one the channel was
 * built from, the other is derived once at construction. The Choi matrix is
 *
 *   J(Φ) = Σ_ij |i⟩⟨j| ⊗ Φ(|i⟩⟨j|)
 *
 * with the input slot first and no normalization, so tr_out J = 𝟙_in.
 */
class QuantumChannel {
 public:
  /// Kraus operators are dimOut×dimIn. Throws if Σ K†K ≠ 𝟙 within `tp_tol`.
  static QuantumChannel from_kraus(std::vector<Matrix> kraus,
                                   double tp_tol = tol::kCptp);
  /// Throws if J is not PSD within −`tol`, or tr_out J ≠ 𝟙 within `tol`.
  /// The stored Kraus set comes from J's eigendecomposition, eigenvalues
  /// descending.
  static QuantumChannel from_choi(const Matrix& choi, Index dim_in,
                                  Index dim_out, double tol = tol::kCptp);

  Index dim_in() const { return dim_in_; }
  Index dim_out() const { return dim_out_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }
  const Matrix& choi() const { return choi_; }

  /// Σ_k K_k X K_k† on an arbitrary dimIn×dimIn operator.
  Matrix operator()(const Matrix& x) const;

  /// Same channel with the Kraus set re-derived from the Choi matrix.
  QuantumChannel canonical() const;

 private:
  QuantumChannel(Index dim_in, Index dim_out, std::vector<Matrix> kraus,
                 Matrix choi)
      : dim_in_(dim_in),
        dim_out_(dim_out),
        kraus_(std::move(kraus)),
        choi_(std::move(choi)) {}

  Index dim_in_;
  Index dim_out_;
  std::vector<Matrix> kraus_;
  Matrix choi_;
};

/// Choi matrix of a Kraus set, same convention as QuantumChannel::choi().
Matrix choi_from_kraus(const std::vector<Matrix>& kraus);

DensityOperator apply(const QuantumChannel& phi, const DensityOperator& rho);
/// Applies a channel on the full A ⊗ B space of `rho`.
BipartiteState apply(const QuantumChannel& phi, const BipartiteState& rho);
/// Applies `phi` to one factor of `rho`, leaving the other untouched.
BipartiteState apply_local(const QuantumChannel& phi, Subsystem side,
                           const BipartiteState& rho);

inline const Matrix& to_choi(const QuantumChannel& phi) { return phi.choi(); }
std::vector<Matrix> from_choi(const Matrix& choi, Index dim_in, Index dim_out);

/// Φ2 ∘ Φ1.
QuantumChannel compose(const QuantumChannel& second, const QuantumChannel& first);
/// Φ ⊗ 𝒥 (side A) or 𝒥 ⊗ Φ (side B) on a product space.
QuantumChannel extend(const QuantumChannel& phi, Subsystem side,
                      Index dim_other);
/// Φ_A ⊗ Φ_B.
QuantumChannel tensor(const QuantumChannel& on_a, const QuantumChannel& on_b);
/// w·Φ1 + (1−w)·Φ2.
QuantumChannel mix(const QuantumChannel& first, const QuantumChannel& second,
                   double w);

/// Frobenius distance between Choi matrices.
double choi_distance(const QuantumChannel& x, const QuantumChannel& y);

/// Returns a description of the first CPTP violation, or nothing.
std::optional<std::string> cptp_defect(const QuantumChannel& phi,
                                       double tol = tol::kCptp);

struct Determinant {
  int sign = 0;  // 0 when the matrix is exactly singular
  double log_abs = 0.0;
  double value() const;
};

/// Channel in Hermitian-basis coordinates: T_ab = tr[G_a Φ(G_b)].
struct RealTransfer {
  RealMatrix matrix;
  RealVector singular_values;  // descending
  Index rank = 0;              // σ_i ≥ 1e-8·σ_max
  bool rank_deficient = false;
  std::optional<Determinant> determinant;  // square transfer matrices only

  double min_singular_value() const;
  double max_singular_value() const;
};

RealTransfer real_transfer(const QuantumChannel& phi);
double min_singular_value(const RealTransfer& t);

// ---------------------------------------------------------------------------
// Constructors for the channel families used throughout the library.

QuantumChannel identity_channel(Index dim);
QuantumChannel unitary_channel(const Matrix& u);

/// Φ(X) = tr[X]σ. Kraus {√μ_m |v_m⟩⟨n|} from σ's eigendecomposition.
QuantumChannel make_point_channel(const DensityOperator& sigma,
                                  Index dim_in);
inline QuantumChannel make_point_channel(const DensityOperator& sigma) {
  return make_point_channel(sigma, sigma.dim());
}

/// Φ(X) = Σ_k tr[F_k X] |k⟩⟨k|. `basis` holds the orthonormal |k⟩ as columns,
/// one per POVM element.
QuantumChannel make_qc_channel(const std::vector<Matrix>& povm,
                               const Matrix& basis);
/// Complete dephasing in the orthonormal basis given by the columns of `basis`.
QuantumChannel make_dephasing(const Matrix& basis);

/// Bloch contraction factors of a unital qubit channel,
/// Φ(X) = ½(tr[X]𝟙 + λ1 tr[σx X]σx + λ2 tr[σy X]σy + λ3 tr[σz X]σz).
struct UnitalQubitParams {
  double l1 = 0.0;
  double l2 = 0.0;
  double l3 = 0.0;

  /// |λ1 + λ2| ≤ 1 + λ3 and |λ1 − λ2| ≤ 1 − λ3, within `slack`.
  bool is_cptp(double slack = 1e-12) const;
};

QuantumChannel make_unital_qubit(const UnitalQubitParams& p);
/// Qubit depolarizing channel with contraction λ on every Bloch axis.
QuantumChannel make_depolarizing_qubit(double lambda);

/// Random channel from a Haar-random Stinespring isometry with `n_kraus`
/// Kraus operators.
QuantumChannel random_channel(Index dim_in, Index dim_out, Index n_kraus,
                              Rng& rng);

}  // namespace dchan

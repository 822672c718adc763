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

#include <vector>

#include "dchan/types.hpp"

namespace dchan {

/**
 * Orthonormal Hermitian operator basis under ⟨G_a, G_b⟩ = tr[G_a G_b].
 *
 * Elements are the normalized generalized Gell-Mann matrices: G_0 = 𝟙/√d,
 * then for every pair j < k the symmetric and antisymmetric off-diagonal
 * elements, then the d−1 diagonal ones. For d = 2 this is {𝟙, X, Y, Z}/√2.
 */
class HermitianBasis {
 public:
  explicit HermitianBasis(Index dim);

  Index dim() const { return dim_; }
  Index size() const { return static_cast<Index>(elements_.size()); }
  const Matrix& operator[](Index a) const { return elements_[a]; }
  const std::vector<Matrix>& elements() const { return elements_; }

  /// Real coordinates tr[G_a X] of a Hermitian operator.
  RealVector coordinates(const Matrix& x) const;
  Matrix from_coordinates(const RealVector& c) const;

 private:
  Index dim_;
  std::vector<Matrix> elements_;
};

}  // namespace dchan

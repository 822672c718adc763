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

#include "dchan/random.hpp"

#include <cmath>

namespace dchan {

namespace {

// splitmix64 finalizer
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Matrix gram(const Matrix& g) {
  Matrix m = g * g.adjoint();
  m /= m.trace().real();
  return hermitian_part(m);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(mix64(seed + 0x9e3779b97f4a7c15ULL) ^
               (index * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL));
}

Matrix ginibre(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(rows, cols);
  // Column-major fill, real part then imaginary part per entry.
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

Vector random_unit_vector(Index dim, Rng& rng) {
  Vector v = ginibre(dim, 1, rng).col(0);
  return v / v.norm();
}

Matrix random_unitary(Index dim, Rng& rng) {
  const Matrix g = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < dim; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

DensityOperator random_density(Index dim, const Ensemble& ensemble, Rng& rng) {
  if (dim < 1) throw DimensionError("random_density: dimension must be >= 1");
  return std::visit(
      [&](const auto& e) -> DensityOperator {
        using E = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<E, HilbertSchmidt>) {
          return DensityOperator(gram(ginibre(dim, dim, rng)));
        } else if constexpr (std::is_same_v<E, HaarPure>) {
          return DensityOperator::pure(random_unit_vector(dim, rng));
        } else {
          if (e.rank < 1 || e.rank > dim) {
            throw ValidationError("random_density: rank " +
                                  std::to_string(e.rank) +
                                  " outside [1, " + std::to_string(dim) + "]");
          }
          return DensityOperator(gram(ginibre(dim, e.rank, rng)));
        }
      },
      ensemble);
}

DensityOperator random_density(Index dim, const Ensemble& ensemble,
                               std::uint64_t seed) {
  Rng rng(seed);
  return random_density(dim, ensemble, rng);
}

BipartiteState random_bipartite(Index dim_a, Index dim_b,
                                const Ensemble& ensemble, Rng& rng) {
  return BipartiteState(random_density(dim_a * dim_b, ensemble, rng), dim_a,
                        dim_b);
}

RealVector random_simplex(Index n, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  RealVector w(n);
  for (Index i = 0; i < n; ++i) w(i) = expo(rng);
  return w / w.sum();
}

}  // namespace dchan

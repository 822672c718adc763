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

#include "dchan/hermitian_basis.hpp"

#include <cmath>

namespace dchan {

HermitianBasis::HermitianBasis(Index dim) : dim_(dim) {
  if (dim < 1) throw DimensionError("HermitianBasis: dimension must be >= 1");
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  elements_.reserve(dim * dim);
  elements_.push_back(Matrix::Identity(dim, dim) / std::sqrt(double(dim)));
  for (Index j = 0; j < dim; ++j) {
    for (Index k = j + 1; k < dim; ++k) {
      Matrix sym = Matrix::Zero(dim, dim);
      sym(j, k) = inv_sqrt2;
      sym(k, j) = inv_sqrt2;
      elements_.push_back(std::move(sym));
      Matrix anti = Matrix::Zero(dim, dim);
      anti(j, k) = Complex(0.0, -inv_sqrt2);
      anti(k, j) = Complex(0.0, inv_sqrt2);
      elements_.push_back(std::move(anti));
    }
  }
  for (Index l = 1; l < dim; ++l) {
    Matrix diag = Matrix::Zero(dim, dim);
    const double norm = 1.0 / std::sqrt(double(l * (l + 1)));
    for (Index m = 0; m < l; ++m) diag(m, m) = norm;
    diag(l, l) = -double(l) * norm;
    elements_.push_back(std::move(diag));
  }
}

RealVector HermitianBasis::coordinates(const Matrix& x) const {
  if (x.rows() != dim_ || x.cols() != dim_) {
    throw DimensionError("HermitianBasis::coordinates: dimension mismatch");
  }
  RealVector c(size());
  for (Index a = 0; a < size(); ++a) {
    // tr[G X] = Σ_ij G_ij X_ji
    c(a) = elements_[a].cwiseProduct(x.transpose()).sum().real();
  }
  return c;
}

Matrix HermitianBasis::from_coordinates(const RealVector& c) const {
  if (c.size() != size()) {
    throw DimensionError("HermitianBasis::from_coordinates: size mismatch");
  }
  Matrix x = Matrix::Zero(dim_, dim_);
  for (Index a = 0; a < size(); ++a) x += c(a) * elements_[a];
  return x;
}

}  // namespace dchan

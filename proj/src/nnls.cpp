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

#include "dchan/nnls.hpp"

#include <limits>
#include <vector>

namespace dchan {

namespace {

RealVector solve_passive(const RealMatrix& a, const RealVector& b,
                         const std::vector<bool>& passive) {
  std::vector<Index> idx;
  for (Index j = 0; j < a.cols(); ++j)
    if (passive[j]) idx.push_back(j);
  RealMatrix sub(a.rows(), idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) sub.col(k) = a.col(idx[k]);
  const RealVector z_sub = sub.colPivHouseholderQr().solve(b);
  RealVector z = RealVector::Zero(a.cols());
  for (std::size_t k = 0; k < idx.size(); ++k) z(idx[k]) = z_sub(k);
  return z;
}

}  // namespace

NnlsResult nnls(const RealMatrix& a, const RealVector& b, int max_iterations) {
  if (a.rows() != b.size()) throw DimensionError("nnls: shape mismatch");
  const Index n = a.cols();
  if (max_iterations <= 0) max_iterations = static_cast<int>(3 * n + 10);
  const double eps = 1e-14 * std::max(1.0, a.norm());

  RealVector x = RealVector::Zero(n);
  std::vector<bool> passive(n, false);
  int iter = 0;
  while (iter < max_iterations) {
    const RealVector w = a.transpose() * (b - a * x);
    Index pick = -1;
    double best = eps;
    for (Index j = 0; j < n; ++j) {
      if (!passive[j] && w(j) > best) {
        best = w(j);
        pick = j;
      }
    }
    if (pick < 0) break;
    passive[pick] = true;
    ++iter;

    while (true) {
      const RealVector z = solve_passive(a, b, passive);
      bool feasible = true;
      for (Index j = 0; j < n; ++j)
        if (passive[j] && z(j) <= 0.0) feasible = false;
      if (feasible) {
        x = z;
        break;
      }
      double alpha = std::numeric_limits<double>::infinity();
      for (Index j = 0; j < n; ++j) {
        if (passive[j] && z(j) <= 0.0) alpha = std::min(alpha, x(j) / (x(j) - z(j)));
      }
      x += alpha * (z - x);
      for (Index j = 0; j < n; ++j) {
        if (passive[j] && x(j) <= eps) {
          passive[j] = false;
          x(j) = 0.0;
        }
      }
    }
  }
  return {x, (a * x - b).norm(), iter};
}

}  // namespace dchan

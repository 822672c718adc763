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

#include <algorithm>
#include <numeric>
#include <vector>

#include <Eigen/Core>

namespace dchan {

struct NelderMeadOptions {
  int max_evaluations = 400;
  double f_tolerance = 1e-13;  // stop when the simplex values spread less
  double x_tolerance = 1e-9;   // or the simplex is this small
};

template <typename Scalar>
struct NelderMeadResult {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x;
  Scalar value;
  int evaluations = 0;
};

/**
 * Derivative-free maximization with the standard Nelder–Mead simplex
 * (reflection 1, expansion 2, contraction ½, shrink ½). The initial simplex is
 * x0 plus `step` along each coordinate.
 */
template <typename Scalar, typename F>
NelderMeadResult<Scalar> nelder_mead_maximize(
    F&& f, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& x0, Scalar step,
    const NelderMeadOptions& opts = {}) {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Eigen::Index n = x0.size();
  std::vector<Vec> pts(n + 1, x0);
  std::vector<Scalar> val(n + 1);
  int evals = 0;
  auto eval = [&](const Vec& x) {
    ++evals;
    return -f(x);  // minimize the negation
  };
  for (Eigen::Index i = 0; i < n; ++i) pts[i + 1](i) += step;
  for (Eigen::Index i = 0; i <= n; ++i) val[i] = eval(pts[i]);

  std::vector<Eigen::Index> order(n + 1);
  while (evals < opts.max_evaluations) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](auto a, auto b) { return val[a] < val[b]; });
    const auto best = order.front();
    const auto worst = order.back();
    const auto second_worst = order[n - 1];

    Scalar size = 0;
    for (Eigen::Index i = 0; i <= n; ++i) {
      size = std::max(size, (pts[i] - pts[best]).cwiseAbs().maxCoeff());
    }
    if (val[worst] - val[best] <= opts.f_tolerance || size <= opts.x_tolerance) {
      break;
    }

    Vec centroid = Vec::Zero(n);
    for (Eigen::Index i = 0; i <= n; ++i)
      if (i != worst) centroid += pts[i];
    centroid /= Scalar(n);

    const Vec reflected = centroid + (centroid - pts[worst]);
    const Scalar fr = eval(reflected);
    if (fr < val[best]) {
      const Vec expanded = centroid + Scalar(2) * (centroid - pts[worst]);
      const Scalar fe = eval(expanded);
      if (fe < fr) {
        pts[worst] = expanded;
        val[worst] = fe;
      } else {
        pts[worst] = reflected;
        val[worst] = fr;
      }
      continue;
    }
    if (fr < val[second_worst]) {
      pts[worst] = reflected;
      val[worst] = fr;
      continue;
    }
    const bool outside = fr < val[worst];
    const Vec contracted =
        outside ? Vec(centroid + Scalar(0.5) * (reflected - centroid))
                : Vec(centroid + Scalar(0.5) * (pts[worst] - centroid));
    const Scalar fc = eval(contracted);
    if (fc < (outside ? fr : val[worst])) {
      pts[worst] = contracted;
      val[worst] = fc;
      continue;
    }
    for (Eigen::Index i = 0; i <= n; ++i) {
      if (i == best) continue;
      pts[i] = pts[best] + Scalar(0.5) * (pts[i] - pts[best]);
      val[i] = eval(pts[i]);
    }
  }
  const auto best = std::min_element(val.begin(), val.end()) - val.begin();
  return {pts[best], -val[best], evals};
}

}  // namespace dchan

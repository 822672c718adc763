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

#include <cmath>

#include "dchan/discord.hpp"

namespace dchan {

ProjectiveMeasurement::ProjectiveMeasurement(const Matrix& basis) : basis_(basis) {
  if (basis.rows() < 1 || basis.rows() != basis.cols()) {
    throw DimensionError("measurement basis must be a nonempty square matrix");
  }
  const Matrix gram = basis.adjoint() * basis;
  if ((gram - Matrix::Identity(basis.cols(), basis.cols())).norm() > 1e-10) {
    throw ValidationError("measurement basis is not orthonormal");
  }
}

ProjectiveMeasurement ProjectiveMeasurement::computational(Index dim) {
  return ProjectiveMeasurement(Matrix::Identity(dim, dim));
}

ProjectiveMeasurement ProjectiveMeasurement::from_bloch(double theta, double phi) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const Complex e = std::polar(1.0, phi);
  Matrix u(2, 2);
  u << c, -std::conj(e) * s, e * s, c;
  return ProjectiveMeasurement(u);
}

Matrix ProjectiveMeasurement::projector(Index a) const {
  return basis_.col(a) * basis_.col(a).adjoint();
}

Eigen::Vector3d ProjectiveMeasurement::bloch_vector() const {
  if (dim() != 2) throw DimensionError("bloch_vector: measurement is not on a qubit");
  const Matrix p = projector(0);
  return {2.0 * p(1, 0).real(), 2.0 * p(1, 0).imag(),
          (p(0, 0) - p(1, 1)).real()};
}

double mutual_information(const BipartiteState& rho) {
  return von_neumann_entropy(partial_trace(rho, Subsystem::A)) +
         von_neumann_entropy(partial_trace(rho, Subsystem::B)) -
         von_neumann_entropy(rho.state());
}

std::vector<MeasurementOutcome> measure_and_condition(
    const BipartiteState& rho, const ProjectiveMeasurement& m) {
  if (m.dim() != rho.dim_a()) {
    throw DimensionError("measure_and_condition: measurement acts on dimension " +
                         std::to_string(m.dim()) + ", subsystem A has " +
                         std::to_string(rho.dim_a()));
  }
  const Matrix id_b = Matrix::Identity(rho.dim_b(), rho.dim_b());
  std::vector<MeasurementOutcome> out;
  for (Index a = 0; a < m.outcomes(); ++a) {
    const Matrix pi = kron(m.projector(a), id_b);
    const Matrix post = pi * rho.matrix() * pi;
    const Matrix reduced =
        partial_trace(post, rho.dim_a(), rho.dim_b(), Subsystem::B);
    const double p = reduced.trace().real();
    if (p < tol::kOutcomeCutoff) continue;
    out.push_back({a, p, DensityOperator(Matrix(reduced / p))});
  }
  return out;
}

double measured_information(const BipartiteState& rho,
                            const ProjectiveMeasurement& m) {
  double conditional = 0.0;
  for (const auto& o : measure_and_condition(rho, m)) {
    conditional += o.probability * von_neumann_entropy(o.conditional);
  }
  return von_neumann_entropy(partial_trace(rho, Subsystem::B)) - conditional;
}

Matrix givens_unitary(const Matrix& base, const RealVector& params) {
  const Index d = base.cols();
  if (params.size() != d * (d - 1)) {
    throw DimensionError("givens_unitary: expected " + std::to_string(d * (d - 1)) +
                         " parameters");
  }
  Matrix u = base;
  Index k = 0;
  for (Index p = 0; p < d; ++p) {
    for (Index q = p + 1; q < d; ++q) {
      const double c = std::cos(params(k));
      const double s = std::sin(params(k));
      const Complex e = std::polar(1.0, params(k + 1));
      k += 2;
      const Vector up = u.col(p);
      const Vector uq = u.col(q);
      u.col(p) = c * up + std::conj(e) * s * uq;
      u.col(q) = -e * s * up + c * uq;
    }
  }
  return u;
}

}  // namespace dchan

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

#include "dchan/state.hpp"

#include <cmath>
#include <sstream>

namespace dchan {

EigenSystem eig_hermitian(const Matrix& h) {
  if (h.rows() != h.cols()) {
    throw DimensionError("eig_hermitian: matrix is not square");
  }
  const double defect = hermiticity_defect(h);
  if (defect > tol::kHermitian * relative_scale(h.norm())) {
    std::ostringstream msg;
    msg << "eig_hermitian: matrix is not Hermitian (‖H − H†‖_F = " << defect
        << ")";
    throw ValidationError(msg.str());
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(h));
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eig_hermitian: eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

std::optional<std::string> density_defect(const Matrix& m) {
  std::ostringstream msg;
  if (m.rows() == 0 || m.rows() != m.cols()) {
    msg << "matrix must be square and nonempty, got " << m.rows() << "x"
        << m.cols();
    return msg.str();
  }
  if (!m.allFinite()) return std::string("matrix has non-finite entries");
  const double defect = hermiticity_defect(m);
  if (defect > tol::kHermitian * relative_scale(m.norm())) {
    msg << "not Hermitian: ‖M − M†‖_F = " << defect;
    return msg.str();
  }
  const Complex tr = m.trace();
  if (std::abs(tr - 1.0) > tol::kTrace) {
    msg << "trace is " << tr.real() << (tr.imag() >= 0 ? "+" : "") << tr.imag()
        << "i, expected 1";
    return msg.str();
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(m),
                                               Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < -tol::kPsd) {
    msg << "not positive semidefinite: minimum eigenvalue " << min_eig;
    return msg.str();
  }
  return std::nullopt;
}

DensityOperator::DensityOperator(const Matrix& m) {
  if (auto defect = density_defect(m)) {
    throw ValidationError("invalid density operator: " + *defect);
  }
  Matrix h = hermitian_part(m);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.eigenvalues().minCoeff() < 0.0) {
    RealVector clipped = solver.eigenvalues().cwiseMax(0.0);
    h = solver.eigenvectors() * clipped.cast<Complex>().asDiagonal() *
        solver.eigenvectors().adjoint();
    h = hermitian_part(h);
  }
  h /= h.trace().real();
  matrix_ = std::move(h);
}

DensityOperator DensityOperator::maximally_mixed(Index dim) {
  if (dim < 1) throw DimensionError("maximally_mixed: dimension must be >= 1");
  return DensityOperator(Matrix(Matrix::Identity(dim, dim) / double(dim)),
                         Trusted{});
}

DensityOperator DensityOperator::pure(const Vector& psi) {
  const double n = psi.norm();
  if (psi.size() == 0 || n == 0.0 || !std::isfinite(n)) {
    throw ValidationError("pure: state vector must be nonzero and finite");
  }
  const Vector v = psi / n;
  return DensityOperator(Matrix(v * v.adjoint()), Trusted{});
}

DensityOperator DensityOperator::basis_state(Index dim, Index k) {
  if (k < 0 || k >= dim) throw DimensionError("basis_state: index out of range");
  Matrix m = Matrix::Zero(dim, dim);
  m(k, k) = 1.0;
  return DensityOperator(std::move(m), Trusted{});
}

BipartiteState::BipartiteState(DensityOperator state, Index dim_a, Index dim_b)
    : state_(std::move(state)), dim_a_(dim_a), dim_b_(dim_b) {
  if (dim_a < 1 || dim_b < 1 || state_.dim() != dim_a * dim_b) {
    throw DimensionError("bipartite state: dimension " +
                         std::to_string(state_.dim()) + " does not factor as " +
                         std::to_string(dim_a) + "x" + std::to_string(dim_b));
  }
}

DensityOperator tensor(const DensityOperator& x, const DensityOperator& y) {
  return DensityOperator(kron(x.matrix(), y.matrix()));
}

BipartiteState product_state(const DensityOperator& a, const DensityOperator& b) {
  return BipartiteState(tensor(a, b), a.dim(), b.dim());
}

DensityOperator partial_trace(const BipartiteState& rho, Subsystem keep) {
  return DensityOperator(
      partial_trace(rho.matrix(), rho.dim_a(), rho.dim_b(), keep));
}

BipartiteState mix(const BipartiteState& x, const BipartiteState& y, double w) {
  if (x.dim_a() != y.dim_a() || x.dim_b() != y.dim_b()) {
    throw DimensionError("mix: states live on different spaces");
  }
  if (!(w >= 0.0 && w <= 1.0)) throw ValidationError("mix: weight outside [0,1]");
  return BipartiteState(Matrix(w * x.matrix() + (1.0 - w) * y.matrix()),
                        x.dim_a(), x.dim_b());
}

BipartiteState maximally_entangled(Index dim_a, Index dim_b) {
  const Index k = std::min(dim_a, dim_b);
  Vector psi = Vector::Zero(dim_a * dim_b);
  for (Index i = 0; i < k; ++i) psi(i * dim_b + i) = 1.0;
  return BipartiteState(DensityOperator::pure(psi), dim_a, dim_b);
}

double entropy_bits(const RealVector& spectrum) {
  double s = 0.0;
  for (double p : spectrum) {
    if (p > tol::kEntropyCutoff) s -= p * std::log2(p);
  }
  return s;
}

double von_neumann_entropy(const DensityOperator& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.matrix(),
                                               Eigen::EigenvaluesOnly);
  return std::max(0.0, entropy_bits(solver.eigenvalues()));
}

}  // namespace dchan

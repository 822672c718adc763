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

#include <array>
#include <cmath>
#include <sstream>

#include "dchan/channel.hpp"

namespace dchan {

namespace {

std::array<Matrix, 4> pauli_matrices() {
  Matrix i = Matrix::Identity(2, 2);
  Matrix x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, Complex(0, -1), Complex(0, 1), 0;
  z << 1, 0, 0, -1;
  return {i, x, y, z};
}

}  // namespace

QuantumChannel identity_channel(Index dim) {
  return QuantumChannel::from_kraus({Matrix::Identity(dim, dim)});
}

QuantumChannel unitary_channel(const Matrix& u) {
  if (u.rows() != u.cols()) throw DimensionError("unitary_channel: not square");
  return QuantumChannel::from_kraus({u});
}

QuantumChannel make_point_channel(const DensityOperator& sigma, Index dim_in) {
  if (dim_in < 1) throw DimensionError("point channel: input dimension < 1");
  const EigenSystem eig = eig_hermitian(sigma.matrix());
  std::vector<Matrix> kraus;
  for (Index m = eig.values.size() - 1; m >= 0; --m) {
    const double mu = eig.values(m);
    if (mu <= tol::kEntropyCutoff) continue;
    for (Index n = 0; n < dim_in; ++n) {
      Matrix k = Matrix::Zero(sigma.dim(), dim_in);
      k.col(n) = std::sqrt(mu) * eig.vectors.col(m);
      kraus.push_back(std::move(k));
    }
  }
  return QuantumChannel::from_kraus(std::move(kraus), 1e-8);
}

QuantumChannel make_qc_channel(const std::vector<Matrix>& povm,
                               const Matrix& basis) {
  if (povm.empty()) throw ValidationError("qc channel: POVM is empty");
  if (static_cast<Index>(povm.size()) != basis.cols()) {
    throw DimensionError("qc channel: " + std::to_string(povm.size()) +
                         " POVM elements but " + std::to_string(basis.cols()) +
                         " output basis vectors");
  }
  const Index d_in = povm.front().rows();
  const Matrix gram = basis.adjoint() * basis;
  if ((gram - Matrix::Identity(basis.cols(), basis.cols())).norm() > tol::kCptp) {
    throw ValidationError("qc channel: output basis is not orthonormal");
  }
  Matrix total = Matrix::Zero(d_in, d_in);
  std::vector<Matrix> kraus;
  for (std::size_t k = 0; k < povm.size(); ++k) {
    const Matrix& f = povm[k];
    if (f.rows() != d_in || f.cols() != d_in) {
      throw DimensionError("qc channel: POVM elements have mixed shapes");
    }
    const EigenSystem eig = eig_hermitian(f);
    if (eig.values.minCoeff() < -tol::kPsd) {
      std::ostringstream msg;
      msg << "qc channel: POVM element " << k
          << " is not positive semidefinite (eigenvalue "
          << eig.values.minCoeff() << ")";
      throw ValidationError(msg.str());
    }
    total += f;
    for (Index m = 0; m < eig.values.size(); ++m) {
      if (eig.values(m) <= tol::kEntropyCutoff) continue;
      kraus.push_back(std::sqrt(eig.values(m)) * basis.col(k) *
                      eig.vectors.col(m).adjoint());
    }
  }
  if ((total - Matrix::Identity(d_in, d_in)).norm() > tol::kCptp) {
    throw ValidationError("qc channel: POVM elements do not sum to identity");
  }
  return QuantumChannel::from_kraus(std::move(kraus), 1e-8);
}

QuantumChannel make_dephasing(const Matrix& basis) {
  std::vector<Matrix> povm;
  for (Index k = 0; k < basis.cols(); ++k) {
    povm.push_back(basis.col(k) * basis.col(k).adjoint());
  }
  return make_qc_channel(povm, basis);
}

bool UnitalQubitParams::is_cptp(double slack) const {
  return std::abs(l1 + l2) <= 1.0 + l3 + slack &&
         std::abs(l1 - l2) <= 1.0 - l3 + slack;
}

QuantumChannel make_unital_qubit(const UnitalQubitParams& p) {
  if (!p.is_cptp()) {
    std::ostringstream msg;
    msg << "unital qubit channel (" << p.l1 << ", " << p.l2 << ", " << p.l3
        << ") lies outside the CPTP tetrahedron";
    throw ValidationError(msg.str());
  }
  const auto sigma = pauli_matrices();
  const double lambda[4] = {1.0, p.l1, p.l2, p.l3};
  Matrix choi = Matrix::Zero(4, 4);
  for (int mu = 0; mu < 4; ++mu) {
    choi += 0.5 * lambda[mu] * kron(sigma[mu].transpose(), sigma[mu]);
  }
  return QuantumChannel::from_choi(choi, 2, 2, 1e-9);
}

QuantumChannel make_depolarizing_qubit(double lambda) {
  return make_unital_qubit({lambda, lambda, lambda});
}

QuantumChannel random_channel(Index dim_in, Index dim_out, Index n_kraus,
                              Rng& rng) {
  if (n_kraus < 1 || n_kraus * dim_out < dim_in) {
    throw DimensionError("random_channel: need n_kraus·dim_out >= dim_in");
  }
  const Matrix g = ginibre(n_kraus * dim_out, dim_in, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  const Matrix v = qr.householderQ() * Matrix::Identity(n_kraus * dim_out, dim_in);
  std::vector<Matrix> kraus;
  for (Index k = 0; k < n_kraus; ++k) {
    kraus.push_back(v.block(k * dim_out, 0, dim_out, dim_in));
  }
  return QuantumChannel::from_kraus(std::move(kraus));
}

}  // namespace dchan

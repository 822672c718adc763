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

#include "dchan/cq.hpp"

#include <sstream>

namespace dchan {

namespace {

constexpr int kDecomposeRetries = 5;
constexpr double kReconstructionTol = 1e-8;

std::vector<Matrix> blocks_of(const Matrix& rho, Index dim_a, Index dim_b) {
  std::vector<Matrix> blocks;
  blocks.reserve(dim_b * dim_b);
  for (Index i = 0; i < dim_b; ++i)
    for (Index j = 0; j < dim_b; ++j)
      blocks.push_back(b_block(rho, dim_a, dim_b, i, j));
  return blocks;
}

}  // namespace

double cq_commutator_residual(const BipartiteState& rho) {
  const Matrix rho_a =
      partial_trace(rho.matrix(), rho.dim_a(), rho.dim_b(), Subsystem::A);
  const Matrix lifted = kron(rho_a, Matrix::Identity(rho.dim_b(), rho.dim_b()));
  return commutator(rho.matrix(), lifted).norm() /
         relative_scale(rho.matrix().norm());
}

CqCheck is_cq_exact(const Matrix& rho, Index dim_a, Index dim_b, double tol) {
  if (rho.rows() != dim_a * dim_b || rho.cols() != dim_a * dim_b) {
    throw DimensionError("is_cq_exact: operator does not match dimensions");
  }
  const std::vector<Matrix> blocks = blocks_of(rho, dim_a, dim_b);
  const double scale = rho.norm();
  CqCheck out;
  BlockWitness worst;
  worst.defect = -1.0;
  for (std::size_t x = 0; x < blocks.size(); ++x) {
    const double normal = commutator(blocks[x], blocks[x].adjoint()).norm();
    if (normal > worst.defect) {
      worst = {Index(x) / dim_b, Index(x) % dim_b, Index(x) / dim_b,
               Index(x) % dim_b, true, normal};
    }
    for (std::size_t y = x + 1; y < blocks.size(); ++y) {
      const double c = commutator(blocks[x], blocks[y]).norm();
      if (c > worst.defect) {
        worst = {Index(x) / dim_b, Index(x) % dim_b, Index(y) / dim_b,
                 Index(y) % dim_b, false, c};
      }
    }
  }
  out.witness = worst;
  out.residual = scale > 0.0 ? worst.defect / scale : 0.0;
  out.is_cq = worst.defect <= tol * scale;
  return out;
}

CqCheck is_cq_exact(const BipartiteState& rho, double tol) {
  return is_cq_exact(rho.matrix(), rho.dim_a(), rho.dim_b(), tol);
}

Matrix CQDecomposition::reconstruct() const {
  const Index da = basis.rows();
  const Index db = conditionals.empty() ? 1 : conditionals.front().dim();
  Matrix out = Matrix::Zero(da * db, da * db);
  for (Index k = 0; k < basis.cols(); ++k) {
    if (probabilities(k) == 0.0) continue;
    out += probabilities(k) *
           kron(Matrix(basis.col(k) * basis.col(k).adjoint()),
                conditionals[k].matrix());
  }
  return out;
}

CQDecomposition cq_decompose(const BipartiteState& rho, std::uint64_t seed,
                             double tol) {
  const CqCheck check = is_cq_exact(rho, tol);
  if (!check.is_cq) {
    std::ostringstream msg;
    msg << "cq_decompose: state is not classical-quantum (block residual "
        << check.residual << ")";
    throw ValidationError(msg.str());
  }
  const Index da = rho.dim_a();
  const Index db = rho.dim_b();
  const std::vector<Matrix> blocks = blocks_of(rho.matrix(), da, db);
  const double scale = rho.matrix().norm();

  for (int attempt = 0; attempt <= kDecomposeRetries; ++attempt) {
    Rng rng(derive_seed(seed, attempt));
    std::normal_distribution<double> normal;
    Matrix h = Matrix::Zero(da, da);
    for (const Matrix& blk : blocks) {
      const Matrix herm = hermitian_part(blk);
      const Matrix anti = (blk - blk.adjoint()) / Complex(0.0, 2.0);
      h += normal(rng) * herm + normal(rng) * anti;
    }
    const Matrix v = eig_hermitian(hermitian_part(h)).vectors;

    double off_diagonal = 0.0;
    for (const Matrix& blk : blocks) {
      Matrix rotated = v.adjoint() * blk * v;
      rotated.diagonal().setZero();
      off_diagonal = std::max(off_diagonal, rotated.norm());
    }
    if (off_diagonal > tol * scale) continue;

    CQDecomposition dec;
    dec.basis = v;
    dec.probabilities.resize(da);
    for (Index k = 0; k < da; ++k) {
      Matrix cond(db, db);
      for (Index i = 0; i < db; ++i)
        for (Index j = 0; j < db; ++j)
          cond(i, j) = v.col(k).dot(blocks[i * db + j] * v.col(k));
      const double p = cond.trace().real();
      if (p > tol::kOutcomeCutoff) {
        dec.probabilities(k) = p;
        dec.conditionals.emplace_back(Matrix(cond / p));
      } else {
        dec.probabilities(k) = 0.0;
        dec.conditionals.push_back(DensityOperator::maximally_mixed(db));
      }
    }
    dec.probabilities /= dec.probabilities.sum();
    dec.residual = (rho.matrix() - dec.reconstruct()).norm();
    if (dec.residual > kReconstructionTol) {
      std::ostringstream msg;
      msg << "cq_decompose: reconstruction residual " << dec.residual
          << " exceeds " << kReconstructionTol;
      throw NumericalError(msg.str());
    }
    return dec;
  }
  throw NumericalError("cq_decompose: no random combination separated the "
                       "joint eigenbasis after " +
                       std::to_string(kDecomposeRetries) + " retries");
}

}  // namespace dchan

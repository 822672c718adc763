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
#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "dchan/types.hpp"

// Dense helpers on Eigen expressions. Product spaces use the |a⟩⊗|b⟩ ordering
// with the B index running fastest, which is what Eigen's Kronecker product
// produces for kron(a, b).

namespace dchan {

template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a,
          const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out =
      Eigen::kroneckerProduct(a.derived(), b.derived());
  return out;
}

template <typename DerivedA, typename DerivedB>
auto commutator(const Eigen::MatrixBase<DerivedA>& a,
                const Eigen::MatrixBase<DerivedB>& b) {
  return (a * b - b * a).eval();
}

template <typename Derived>
typename Derived::RealScalar hermiticity_defect(
    const Eigen::MatrixBase<Derived>& m) {
  return (m - m.adjoint()).norm();
}

template <typename Derived>
auto hermitian_part(const Eigen::MatrixBase<Derived>& m) {
  return ((m + m.adjoint()) / typename Derived::RealScalar(2)).eval();
}

/// Reduced operator on the kept factor of a dimA·dimB square matrix.
template <typename Derived>
auto partial_trace(const Eigen::MatrixBase<Derived>& m, Index dim_a,
                   Index dim_b, Subsystem keep) {
  using Scalar = typename Derived::Scalar;
  using Out = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b) {
    throw DimensionError("partial_trace: operator is " +
                         std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", expected " +
                         std::to_string(dim_a * dim_b) + " square");
  }
  if (keep == Subsystem::B) {
    Out out = Out::Zero(dim_b, dim_b);
    for (Index a = 0; a < dim_a; ++a) {
      out += m.block(a * dim_b, a * dim_b, dim_b, dim_b);
    }
    return out;
  }
  Out out(dim_a, dim_a);
  for (Index a = 0; a < dim_a; ++a) {
    for (Index c = 0; c < dim_a; ++c) {
      out(a, c) = m.block(a * dim_b, c * dim_b, dim_b, dim_b).trace();
    }
  }
  return out;
}

/// Partial transpose on one factor of a dimA·dimB square matrix.
template <typename Derived>
auto partial_transpose(const Eigen::MatrixBase<Derived>& m, Index dim_a,
                       Index dim_b, Subsystem which) {
  using Scalar = typename Derived::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(m.rows(), m.cols());
  for (Index a = 0; a < dim_a; ++a) {
    for (Index c = 0; c < dim_a; ++c) {
      auto block = m.block(a * dim_b, c * dim_b, dim_b, dim_b);
      if (which == Subsystem::B) {
        out.block(a * dim_b, c * dim_b, dim_b, dim_b) = block.transpose();
      } else {
        out.block(c * dim_b, a * dim_b, dim_b, dim_b) = block;
      }
    }
  }
  return out;
}

/// Reorders a dimA·dimB operator into the dimB·dimA ordering (B ⊗ A).
template <typename Derived>
auto swap_factors(const Eigen::MatrixBase<Derived>& m, Index dim_a,
                  Index dim_b) {
  using Scalar = typename Derived::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(m.rows(), m.cols());
  for (Index a = 0; a < dim_a; ++a)
    for (Index b = 0; b < dim_b; ++b)
      for (Index c = 0; c < dim_a; ++c)
        for (Index d = 0; d < dim_b; ++d)
          out(b * dim_a + a, d * dim_a + c) = m(a * dim_b + b, c * dim_b + d);
  return out;
}

/// Block ⟨i|_B M |j⟩_B of a dimA·dimB operator, as a dimA×dimA matrix.
template <typename Derived>
auto b_block(const Eigen::MatrixBase<Derived>& m, Index dim_a, Index dim_b,
             Index i, Index j) {
  using Scalar = typename Derived::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(dim_a, dim_a);
  for (Index a = 0; a < dim_a; ++a)
    for (Index c = 0; c < dim_a; ++c) out(a, c) = m(a * dim_b + i, c * dim_b + j);
  return out;
}

/// Spectrum and eigenvectors of a Hermitian matrix, eigenvalues ascending.
struct EigenSystem {
  RealVector values;
  Matrix vectors;
};

/// Throws ValidationError when `h` is not Hermitian within
/// tol::kHermitian · max(1, ‖h‖_F).
EigenSystem eig_hermitian(const Matrix& h);

inline double relative_scale(double norm) { return std::max(1.0, norm); }

}  // namespace dchan

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

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace dchan {

template <typename Real>
using ComplexMatrixX =
    Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using ComplexVectorX = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

using Complex = std::complex<double>;
using Matrix = ComplexMatrixX<double>;
using Vector = ComplexVectorX<double>;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Which factor of a bipartite product space A ⊗ B.
enum class Subsystem { A, B };

inline const char* to_string(Subsystem s) { return s == Subsystem::A ? "A" : "B"; }

/// Numerical tolerances shared across modules. Every public check that takes
/// a tolerance defaults to one of these.
namespace tol {
inline constexpr double kHermitian = 1e-9;
inline constexpr double kTrace = 1e-9;
inline constexpr double kPsd = 1e-9;
inline constexpr double kCptp = 1e-9;
inline constexpr double kCq = 1e-8;
inline constexpr double kEntropyCutoff = 1e-12;
inline constexpr double kOutcomeCutoff = 1e-12;
inline constexpr double kOrthogonal = 1e-10;
inline constexpr double kRankRelative = 1e-8;
inline constexpr double kPointSpread = 1e-7;
}  // namespace tol

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An input violates a documented precondition (not a state, not CPTP, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed to reach its postcondition.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace dchan

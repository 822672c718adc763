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

#include "dchan/channel.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "dchan/hermitian_basis.hpp"

namespace dchan {

namespace {

// Choi eigenvalues at or below this fraction of max(1, μ_max) carry no Kraus
// operator.
constexpr double kKrausCutoff = 1e-13;

std::string dims_string(Index rows, Index cols) {
  return std::to_string(rows) + "x" + std::to_string(cols);
}

}  // namespace

Matrix choi_from_kraus(const std::vector<Matrix>& kraus) {
  if (kraus.empty()) throw ValidationError("Kraus set is empty");
  const Index d_out = kraus.front().rows();
  const Index d_in = kraus.front().cols();
  Matrix choi = Matrix::Zero(d_in * d_out, d_in * d_out);
  for (const Matrix& k : kraus) {
    // Column-major storage puts K(a, i) at i·dOut + a, the Choi row index.
    const Eigen::Map<const Vector> v(k.data(), k.size());
    choi.noalias() += v * v.adjoint();
  }
  return choi;
}

std::vector<Matrix> from_choi(const Matrix& choi, Index dim_in, Index dim_out) {
  const EigenSystem eig = eig_hermitian(choi);
  const double cutoff =
      kKrausCutoff * std::max(1.0, eig.values.maxCoeff());
  std::vector<Matrix> kraus;
  for (Index m = eig.values.size() - 1; m >= 0; --m) {
    const double mu = eig.values(m);
    if (mu <= cutoff) break;
    Matrix k(dim_out, dim_in);
    Eigen::Map<Vector>(k.data(), k.size()) = std::sqrt(mu) * eig.vectors.col(m);
    kraus.push_back(std::move(k));
  }
  if (kraus.empty()) throw ValidationError("Choi matrix has no positive part");
  return kraus;
}

QuantumChannel QuantumChannel::from_kraus(std::vector<Matrix> kraus,
                                          double tp_tol) {
  if (kraus.empty()) throw ValidationError("Kraus set is empty");
  const Index d_out = kraus.front().rows();
  const Index d_in = kraus.front().cols();
  if (d_in < 1 || d_out < 1) throw DimensionError("Kraus operators are empty");
  Matrix sum = Matrix::Zero(d_in, d_in);
  for (const Matrix& k : kraus) {
    if (k.rows() != d_out || k.cols() != d_in) {
      throw DimensionError("Kraus operators have mixed shapes: " +
                           dims_string(k.rows(), k.cols()) + " vs " +
                           dims_string(d_out, d_in));
    }
    if (!k.allFinite()) throw ValidationError("Kraus operator is not finite");
    sum.noalias() += k.adjoint() * k;
  }
  const double tp_defect = (sum - Matrix::Identity(d_in, d_in)).norm();
  if (tp_defect > tp_tol) {
    std::ostringstream msg;
    msg << "Kraus set is not trace preserving: ‖Σ K†K − 𝟙‖_F = " << tp_defect;
    throw ValidationError(msg.str());
  }
  Matrix choi = choi_from_kraus(kraus);
  return QuantumChannel(d_in, d_out, std::move(kraus), std::move(choi));
}

QuantumChannel QuantumChannel::from_choi(const Matrix& choi, Index dim_in,
                                         Index dim_out, double tol) {
  if (dim_in < 1 || dim_out < 1 || choi.rows() != dim_in * dim_out ||
      choi.cols() != dim_in * dim_out) {
    throw DimensionError("Choi matrix is " + dims_string(choi.rows(), choi.cols()) +
                         ", expected " + std::to_string(dim_in * dim_out) +
                         " square");
  }
  if (hermiticity_defect(choi) > tol * relative_scale(choi.norm())) {
    throw ValidationError("Choi matrix is not Hermitian");
  }
  const Matrix h = hermitian_part(choi);
  const EigenSystem eig = eig_hermitian(h);
  if (eig.values.minCoeff() < -tol) {
    std::ostringstream msg;
    msg << "Choi matrix is not positive semidefinite: minimum eigenvalue "
        << eig.values.minCoeff();
    throw ValidationError(msg.str());
  }
  const Matrix tr_out = partial_trace(h, dim_in, dim_out, Subsystem::A);
  const double tp_defect =
      (tr_out - Matrix::Identity(dim_in, dim_in)).norm();
  if (tp_defect > tol) {
    std::ostringstream msg;
    msg << "Choi matrix is not trace preserving: ‖tr_out J − 𝟙‖_F = "
        << tp_defect;
    throw ValidationError(msg.str());
  }
  std::vector<Matrix> kraus = dchan::from_choi(h, dim_in, dim_out);
  return QuantumChannel(dim_in, dim_out, std::move(kraus), h);
}

Matrix QuantumChannel::operator()(const Matrix& x) const {
  if (x.rows() != dim_in_ || x.cols() != dim_in_) {
    throw DimensionError("channel input is " + dims_string(x.rows(), x.cols()) +
                         ", channel expects " + dims_string(dim_in_, dim_in_));
  }
  Matrix out = Matrix::Zero(dim_out_, dim_out_);
  for (const Matrix& k : kraus_) out.noalias() += k * x * k.adjoint();
  return out;
}

QuantumChannel QuantumChannel::canonical() const {
  return QuantumChannel(dim_in_, dim_out_, dchan::from_choi(choi_, dim_in_, dim_out_),
                        choi_);
}

DensityOperator apply(const QuantumChannel& phi, const DensityOperator& rho) {
  return DensityOperator(phi(rho.matrix()));
}

BipartiteState apply(const QuantumChannel& phi, const BipartiteState& rho) {
  if (phi.dim_in() != rho.dim() || phi.dim_out() != rho.dim()) {
    throw DimensionError("apply: channel " + dims_string(phi.dim_out(), phi.dim_in()) +
                         " does not act on a " + std::to_string(rho.dim()) +
                         "-dimensional bipartite state");
  }
  return BipartiteState(DensityOperator(phi(rho.matrix())), rho.dim_a(),
                        rho.dim_b());
}

BipartiteState apply_local(const QuantumChannel& phi, Subsystem side,
                           const BipartiteState& rho) {
  if ((side == Subsystem::A ? rho.dim_a() : rho.dim_b()) != phi.dim_in()) {
    throw DimensionError(std::string("apply_local: channel input does not match "
                                     "subsystem ") + to_string(side));
  }
  const Index other = side == Subsystem::A ? rho.dim_b() : rho.dim_a();
  const QuantumChannel ext = extend(phi, side, other);
  const Index d_a = side == Subsystem::A ? phi.dim_out() : rho.dim_a();
  const Index d_b = side == Subsystem::A ? rho.dim_b() : phi.dim_out();
  return BipartiteState(DensityOperator(ext(rho.matrix())), d_a, d_b);
}

QuantumChannel compose(const QuantumChannel& second,
                       const QuantumChannel& first) {
  if (second.dim_in() != first.dim_out()) {
    throw DimensionError("compose: inner dimensions differ (" +
                         std::to_string(first.dim_out()) + " vs " +
                         std::to_string(second.dim_in()) + ")");
  }
  std::vector<Matrix> kraus;
  kraus.reserve(second.kraus().size() * first.kraus().size());
  for (const Matrix& k2 : second.kraus()) {
    for (const Matrix& k1 : first.kraus()) kraus.push_back(k2 * k1);
  }
  QuantumChannel out = QuantumChannel::from_kraus(std::move(kraus), 1e-8);
  if (static_cast<Index>(out.kraus().size()) > out.dim_in() * out.dim_out()) {
    return out.canonical();
  }
  return out;
}

QuantumChannel extend(const QuantumChannel& phi, Subsystem side,
                      Index dim_other) {
  if (dim_other < 1) throw DimensionError("extend: dimension must be >= 1");
  const Matrix id = Matrix::Identity(dim_other, dim_other);
  std::vector<Matrix> kraus;
  kraus.reserve(phi.kraus().size());
  for (const Matrix& k : phi.kraus()) {
    kraus.push_back(side == Subsystem::A ? kron(k, id) : kron(id, k));
  }
  return QuantumChannel::from_kraus(std::move(kraus), 1e-8);
}

QuantumChannel tensor(const QuantumChannel& on_a, const QuantumChannel& on_b) {
  std::vector<Matrix> kraus;
  for (const Matrix& ka : on_a.kraus()) {
    for (const Matrix& kb : on_b.kraus()) kraus.push_back(kron(ka, kb));
  }
  QuantumChannel out = QuantumChannel::from_kraus(std::move(kraus), 1e-8);
  if (static_cast<Index>(out.kraus().size()) > out.dim_in() * out.dim_out()) {
    return out.canonical();
  }
  return out;
}

QuantumChannel mix(const QuantumChannel& first, const QuantumChannel& second,
                   double w) {
  if (first.dim_in() != second.dim_in() || first.dim_out() != second.dim_out()) {
    throw DimensionError("mix: channels have different shapes");
  }
  if (!(w >= 0.0 && w <= 1.0)) throw ValidationError("mix: weight outside [0,1]");
  const Matrix choi = w * first.choi() + (1.0 - w) * second.choi();
  return QuantumChannel::from_choi(choi, first.dim_in(), first.dim_out());
}

double choi_distance(const QuantumChannel& x, const QuantumChannel& y) {
  if (x.choi().rows() != y.choi().rows()) {
    throw DimensionError("choi_distance: channels have different shapes");
  }
  return (x.choi() - y.choi()).norm();
}

std::optional<std::string> cptp_defect(const QuantumChannel& phi, double tol) {
  std::ostringstream msg;
  const Matrix& j = phi.choi();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(j),
                                               Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -tol) {
    msg << "Choi matrix has eigenvalue " << solver.eigenvalues().minCoeff();
    return msg.str();
  }
  const Matrix tr_out = partial_trace(j, phi.dim_in(), phi.dim_out(), Subsystem::A);
  const double tp = (tr_out - Matrix::Identity(phi.dim_in(), phi.dim_in())).norm();
  if (tp > tol) {
    msg << "‖tr_out J − 𝟙‖_F = " << tp;
    return msg.str();
  }
  return std::nullopt;
}

double Determinant::value() const {
  if (sign == 0) return 0.0;
  return sign * std::exp(log_abs);
}

double RealTransfer::min_singular_value() const {
  return singular_values.size() ? singular_values.minCoeff() : 0.0;
}

double RealTransfer::max_singular_value() const {
  return singular_values.size() ? singular_values.maxCoeff() : 0.0;
}

double min_singular_value(const RealTransfer& t) { return t.min_singular_value(); }

RealTransfer real_transfer(const QuantumChannel& phi) {
  const HermitianBasis in(phi.dim_in());
  const HermitianBasis out(phi.dim_out());
  RealTransfer t;
  t.matrix.resize(out.size(), in.size());
  for (Index b = 0; b < in.size(); ++b) {
    t.matrix.col(b) = out.coordinates(phi(in[b]));
  }
  Eigen::JacobiSVD<RealMatrix> svd(t.matrix);
  t.singular_values = svd.singularValues();
  const double smax = t.max_singular_value();
  t.rank = 0;
  for (double s : t.singular_values) {
    if (s >= tol::kRankRelative * smax && s > 0.0) ++t.rank;
  }
  t.rank_deficient = t.rank < std::min(t.matrix.rows(), t.matrix.cols());
  if (t.matrix.rows() == t.matrix.cols()) {
    Determinant det;
    Eigen::PartialPivLU<RealMatrix> lu(t.matrix);
    const RealVector diag = lu.matrixLU().diagonal();
    int sign = static_cast<int>(std::lround(lu.permutationP().determinant()));
    bool exact_zero = false;
    for (double u : diag) {
      if (u == 0.0) exact_zero = true;
      if (u < 0.0) sign = -sign;
    }
    double log_abs = 0.0;
    for (double s : t.singular_values) {
      if (s == 0.0) {
        exact_zero = true;
        break;
      }
      log_abs += std::log(s);
    }
    det.sign = exact_zero ? 0 : sign;
    det.log_abs =
        exact_zero ? -std::numeric_limits<double>::infinity() : log_abs;
    t.determinant = det;
  }
  return t;
}

}  // namespace dchan

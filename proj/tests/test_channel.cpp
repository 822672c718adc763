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

#include <catch_amalgamated.hpp>

#include "dchan/dchan.hpp"
#include "oracles.hpp"

using namespace dchan;
using Catch::Matchers::WithinAbs;

namespace {

Matrix pauli(char c) {
  Matrix m(2, 2);
  if (c == 'x') m << 0, 1, 1, 0;
  if (c == 'y') m << 0, Complex(0, -1), Complex(0, 1), 0;
  if (c == 'z') m << 1, 0, 0, -1;
  return m;
}

Matrix plus_minus_basis() {
  Matrix h(2, 2);
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}

}  // namespace

TEST_CASE("Kraus and Choi representations agree", "[channel]") {
  Rng rng(11);
  for (auto [din, dout, n] : {std::tuple<Index, Index, Index>{2, 2, 3}, {2, 3, 2}, {3, 2, 4},
                              {4, 4, 2}}) {
    const QuantumChannel phi = random_channel(din, dout, n, rng);
    CHECK(!cptp_defect(phi));
    const QuantumChannel back = QuantumChannel::from_choi(phi.choi(), din, dout);
    CHECK(choi_distance(phi, back) < 1e-10);
    for (int k = 0; k < 5; ++k) {
      const Matrix rho = random_density(din, HilbertSchmidt{}, rng).matrix();
      CHECK((phi(rho) - oracle::apply_via_choi(phi.choi(), rho, din, dout)).norm() < 1e-12);
      CHECK((back(rho) - phi(rho)).norm() < 1e-10);
    }
  }
}

TEST_CASE("channel construction rejects non-CPTP input", "[channel]") {
  std::vector<Matrix> k{Matrix::Identity(2, 2) * 1.1};
  CHECK_THROWS_AS(QuantumChannel::from_kraus(k), ValidationError);
  Matrix j = QuantumChannel::from_kraus({Matrix::Identity(2, 2)}).choi();
  j(0, 0) += 0.1;
  CHECK_THROWS_AS(QuantumChannel::from_choi(j, 2, 2), ValidationError);
  CHECK_THROWS_AS(QuantumChannel::from_choi(Matrix::Identity(4, 4), 3, 2), DimensionError);
}

TEST_CASE("composition, extension and tensor products", "[channel]") {
  Rng rng(12);
  const QuantumChannel f = random_channel(2, 3, 2, rng);
  const QuantumChannel g = random_channel(3, 2, 3, rng);
  const QuantumChannel h = random_channel(2, 2, 2, rng);
  const Matrix rho = random_density(2, HilbertSchmidt{}, rng).matrix();
  CHECK((compose(g, f)(rho) - g(f(rho))).norm() < 1e-12);
  CHECK(choi_distance(compose(h, compose(g, f)), compose(compose(h, g), f)) < 1e-10);
  CHECK_THROWS_AS(compose(f, f), DimensionError);

  const BipartiteState ab = random_bipartite(2, 2, HilbertSchmidt{}, rng);
  const Matrix viaA = extend(h, Subsystem::A, 2)(ab.matrix());
  const Matrix viaT = tensor(h, identity_channel(2))(ab.matrix());
  CHECK((viaA - viaT).norm() < 1e-12);
  CHECK((apply_local(h, Subsystem::A, ab).matrix() - viaA).norm() < 1e-12);
  const Matrix viaB = extend(h, Subsystem::B, 2)(ab.matrix());
  CHECK((viaB - tensor(identity_channel(2), h)(ab.matrix())).norm() < 1e-12);
}

TEST_CASE("channel mixtures", "[channel]") {
  const QuantumChannel z = make_dephasing(Matrix::Identity(2, 2));
  const QuantumChannel x = make_dephasing(plus_minus_basis());
  const QuantumChannel m = mix(z, x, 0.5);
  const Matrix rho = DensityOperator::basis_state(2, 0).matrix();
  CHECK((m(rho) - (0.5 * z(rho) + 0.5 * x(rho))).norm() < 1e-12);
  CHECK_THROWS_AS(mix(z, x, 1.5), ValidationError);
}

TEST_CASE("unital qubit channels", "[channel]") {
  SECTION("transfer matrix is diag(1, λ1, λ2, λ3)") {
    const UnitalQubitParams p{0.3, -0.2, 0.5};
    const RealTransfer t = real_transfer(make_unital_qubit(p));
    RealMatrix expect = RealMatrix::Zero(4, 4);
    expect.diagonal() << 1.0, 0.3, -0.2, 0.5;
    CHECK((t.matrix - expect).norm() < 1e-12);
    REQUIRE(t.determinant);
    CHECK_THAT(t.determinant->value(), WithinAbs(-0.03, 1e-12));
  }
  SECTION("acts on Pauli operators by scaling") {
    const QuantumChannel ch = make_unital_qubit({0.1, 0.3, -0.4});
    CHECK((ch(pauli('x')) - 0.1 * pauli('x')).norm() < 1e-12);
    CHECK((ch(pauli('y')) - 0.3 * pauli('y')).norm() < 1e-12);
    CHECK((ch(pauli('z')) + 0.4 * pauli('z')).norm() < 1e-12);
    CHECK((ch(Matrix::Identity(2, 2)) - Matrix::Identity(2, 2)).norm() < 1e-12);
  }
  SECTION("tetrahedron condition matches Choi positivity") {
    Rng rng(13);
    std::uniform_real_distribution<double> u(-1.2, 1.2);
    for (int k = 0; k < 300; ++k) {
      const UnitalQubitParams p{u(rng), u(rng), u(rng)};
      const Matrix j = oracle::bell_diagonal(p.l1, -p.l2, p.l3);  // σ_yᵀ = −σ_y
      Eigen::SelfAdjointEigenSolver<Matrix> es(j);
      const bool psd = es.eigenvalues().minCoeff() >= -1e-12;
      CHECK(p.is_cptp() == psd);
      if (psd) CHECK_NOTHROW(make_unital_qubit(p));
      else CHECK_THROWS_AS(make_unital_qubit(p), ValidationError);
    }
  }
  SECTION("depolarizing shrinks the Bloch vector uniformly") {
    const RealTransfer t = real_transfer(make_depolarizing_qubit(0.25));
    CHECK((t.matrix.diagonal() - Eigen::Vector4d(1, 0.25, 0.25, 0.25)).norm() < 1e-12);
  }
}

TEST_CASE("real transfer matrix", "[channel]") {
  for (Index d : {2, 3}) {
    const RealTransfer id = real_transfer(identity_channel(d));
    CHECK_THAT(id.min_singular_value(), WithinAbs(1.0, 1e-12));
    CHECK(!id.rank_deficient);
  }
  Rng rng(14);
  const DensityOperator sigma = random_density(3, HilbertSchmidt{}, rng);
  const RealTransfer pt = real_transfer(make_point_channel(sigma));
  CHECK(pt.rank == 1);
  CHECK(pt.rank_deficient);
  CHECK(pt.min_singular_value() < 1e-8 * pt.max_singular_value());
  const RealTransfer rect = real_transfer(random_channel(2, 3, 2, rng));
  CHECK(rect.matrix.rows() == 9);
  CHECK(rect.matrix.cols() == 4);
  CHECK(!rect.determinant);
}

TEST_CASE("standard constructors", "[channel]") {
  Rng rng(15);
  SECTION("point channel outputs sigma for every input") {
    const DensityOperator sigma = random_density(2, HilbertSchmidt{}, rng);
    const QuantumChannel pt = make_point_channel(sigma, 3);
    for (int k = 0; k < 5; ++k) {
      const Matrix rho = random_density(3, HilbertSchmidt{}, rng).matrix();
      CHECK((pt(rho) - sigma.matrix()).norm() < 1e-12);
    }
  }
  SECTION("qc channel outputs are diagonal in its basis") {
    const Matrix u = random_unitary(2, rng);
    std::vector<Matrix> povm{DensityOperator::basis_state(2, 0).matrix() * 0.7,
                             Matrix::Identity(2, 2) - DensityOperator::basis_state(2, 0).matrix() * 0.7};
    const QuantumChannel qc = make_qc_channel(povm, u);
    const Matrix out = u.adjoint() * qc(random_density(2, HilbertSchmidt{}, rng).matrix()) * u;
    CHECK(std::abs(out(0, 1)) < 1e-12);
  }
  SECTION("qc channel validation") {
    std::vector<Matrix> bad{Matrix::Identity(2, 2) * 0.5, Matrix::Identity(2, 2) * 0.4};
    CHECK_THROWS_AS(make_qc_channel(bad, Matrix::Identity(2, 2)), ValidationError);
    Matrix notortho(2, 2);
    notortho << 1, 1, 0, 1;
    std::vector<Matrix> ok{Matrix::Identity(2, 2) * 0.5, Matrix::Identity(2, 2) * 0.5};
    CHECK_THROWS_AS(make_qc_channel(ok, notortho), ValidationError);
  }
  SECTION("unitary channel") {
    const Matrix u = random_unitary(3, rng);
    const Matrix rho = random_density(3, HilbertSchmidt{}, rng).matrix();
    CHECK((unitary_channel(u)(rho) - u * rho * u.adjoint()).norm() < 1e-12);
  }
}

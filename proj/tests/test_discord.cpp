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

BipartiteState from_oracle(const oracle::Matrix& m, Index da = 2, Index db = 2) {
  return BipartiteState(Matrix(m), da, db);
}

Matrix proj(const Vector& v) { return v * v.adjoint(); }

BipartiteState random_cq(Index da, Index db, Rng& rng) {
  const Matrix u = random_unitary(da, rng);
  const RealVector p = random_simplex(da, rng);
  Matrix rho = Matrix::Zero(da * db, da * db);
  for (Index k = 0; k < da; ++k)
    rho += p(k) * kron(proj(u.col(k)), random_density(db, HilbertSchmidt{}, rng).matrix());
  return BipartiteState(rho, da, db);
}

}  // namespace

TEST_CASE("projective measurements", "[discord]") {
  const ProjectiveMeasurement z = ProjectiveMeasurement::from_bloch(0.0, 0.0);
  CHECK((z.projector(0) - DensityOperator::basis_state(2, 0).matrix()).norm() < 1e-14);
  const ProjectiveMeasurement m = ProjectiveMeasurement::from_bloch(1.1, 2.3);
  const Eigen::Vector3d n = m.bloch_vector();
  CHECK_THAT(n.norm(), WithinAbs(1.0, 1e-12));
  CHECK_THAT(n.z(), WithinAbs(std::cos(1.1), 1e-12));
  CHECK((m.projector(0) + m.projector(1) - Matrix::Identity(2, 2)).norm() < 1e-12);
  Matrix bad(2, 2);
  bad << 1, 1, 0, 1;
  CHECK_THROWS_AS(ProjectiveMeasurement(bad), ValidationError);
}

TEST_CASE("measurement statistics", "[discord]") {
  Rng rng(21);
  const BipartiteState rho = random_bipartite(2, 3, HilbertSchmidt{}, rng);
  const ProjectiveMeasurement m = ProjectiveMeasurement::from_bloch(0.4, 1.0);
  const auto outcomes = measure_and_condition(rho, m);
  double total = 0.0;
  Matrix avg = Matrix::Zero(3, 3);
  for (const auto& o : outcomes) {
    total += o.probability;
    avg += o.probability * o.conditional.matrix();
  }
  CHECK_THAT(total, WithinAbs(1.0, 1e-12));
  CHECK((avg - partial_trace(rho, Subsystem::B).matrix()).norm() < 1e-12);
  CHECK_THAT(measured_information(rho, m),
             WithinAbs(oracle::measured_information(rho.matrix(), 3, 0.4, 1.0), 1e-10));
}

TEST_CASE("mutual information", "[discord]") {
  CHECK_THAT(mutual_information(maximally_entangled(2, 2)), WithinAbs(2.0, 1e-12));
  Rng rng(22);
  for (int k = 0; k < 10; ++k) {
    const BipartiteState rho = random_bipartite(2, 3, HilbertSchmidt{}, rng);
    CHECK_THAT(mutual_information(rho),
               WithinAbs(oracle::mutual_information(rho.matrix(), 2, 3), 1e-10));
  }
}

TEST_CASE("discord of reference states", "[discord]") {
  SECTION("Bell state carries one bit") {
    const DiscordResult r = discord(maximally_entangled(2, 2));
    CHECK_THAT(r.value, WithinAbs(1.0, 1e-3));
    CHECK_THAT(r.mutual_information, WithinAbs(2.0, 1e-12));
  }
  SECTION("product states carry none") {
    Rng rng(23);
    for (int k = 0; k < 10; ++k) {
      const BipartiteState rho = product_state(random_density(2, HilbertSchmidt{}, rng),
                                               random_density(2, HilbertSchmidt{}, rng));
      CHECK(std::abs(discord(rho).value) <= 1e-6);
    }
  }
  SECTION("frozen values") {
    CHECK_THAT(discord(from_oracle(oracle::bell_diagonal(-0.5, -0.5, -0.5))).value,
               WithinAbs(oracle::kWernerHalfDiscord, 1e-6));
    const Vector k0 = Vector::Unit(2, 0), k1 = Vector::Unit(2, 1);
    const Vector kp = Vector::Ones(2) / std::sqrt(2.0);
    const Matrix m1 = 0.5 * kron(proj(k0), proj(k0)) + 0.5 * kron(proj(kp), proj(kp));
    const Matrix m2 = 0.5 * kron(proj(k0), proj(k0)) + 0.5 * kron(proj(kp), proj(k1));
    CHECK_THAT(discord(BipartiteState(m1, 2, 2)).value,
               WithinAbs(oracle::kMixZeroPlusDiscord, 1e-6));
    CHECK_THAT(discord(BipartiteState(m2, 2, 2)).value,
               WithinAbs(oracle::kMixZeroPlusOneDiscord, 1e-6));
  }
  SECTION("Bell-diagonal closed form") {
    Rng rng(24);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int checked = 0;
    while (checked < 15) {
      const double c1 = u(rng), c2 = u(rng), c3 = u(rng);
      const oracle::Matrix m = oracle::bell_diagonal(c1, c2, c3);
      Eigen::SelfAdjointEigenSolver<oracle::Matrix> es(m);
      if (es.eigenvalues().minCoeff() < 0.0) continue;
      ++checked;
      CHECK_THAT(discord(from_oracle(m)).value,
                 WithinAbs(oracle::bell_diagonal_discord(c1, c2, c3), 1e-6));
    }
  }
}

TEST_CASE("discord properties", "[discord][property]") {
  Rng rng(25);
  SECTION("zero on classical-quantum states") {
    for (int k = 0; k < 10; ++k) CHECK(discord(random_cq(2, 2, rng)).value <= 5e-3);
    for (int k = 0; k < 5; ++k) CHECK(discord(random_cq(2, 3, rng)).value <= 5e-3);
  }
  SECTION("bounded by mutual information and nonnegative") {
    for (int k = 0; k < 10; ++k) {
      const DiscordResult r = discord(random_bipartite(2, 2, HilbertSchmidt{}, rng));
      CHECK(r.value >= -1e-9);
      CHECK(r.value <= r.mutual_information + 1e-9);
      CHECK_THAT(r.value, WithinAbs(r.mutual_information - r.classical_correlation, 1e-12));
    }
  }
  SECTION("invariant under local unitaries") {
    const BipartiteState rho = random_bipartite(2, 2, HilbertSchmidt{}, rng);
    const Matrix u = kron(random_unitary(2, rng), random_unitary(2, rng));
    const BipartiteState rotated(Matrix(u * rho.matrix() * u.adjoint()), 2, 2);
    CHECK_THAT(discord(rotated).value, WithinAbs(discord(rho).value, 1e-6));
  }
  SECTION("reported value is certified at the returned measurement") {
    const BipartiteState rho = random_bipartite(2, 3, HilbertSchmidt{}, rng);
    const DiscordResult r = discord(rho);
    CHECK_THAT(r.classical_correlation,
               WithinAbs(measured_information(rho, r.optimal_measurement), 1e-12));
  }
  SECTION("grid refinement never loses") {
    const BipartiteState rho = random_bipartite(2, 2, HilbertSchmidt{}, rng);
    const double coarse = discord(rho, GridSearch{8, 16}).value;
    const double fine = discord(rho, GridSearch{16, 32}).value;
    CHECK(fine <= coarse + 1e-12);
    CHECK(discord(rho, Hybrid{}).value <= fine + 1e-12);
  }
}

TEST_CASE("hybrid optimizer agrees with a dense grid", "[discord][oracle]") {
  Rng rng(26);
  for (int k = 0; k < 8; ++k) {
    const BipartiteState rho = random_bipartite(2, 2, HilbertSchmidt{}, rng);
    const double reference = oracle::grid_discord(rho.matrix(), 2, 64, 128);
    const double value = discord(rho).value;
    CHECK(value <= reference + 1e-9);
    CHECK_THAT(value, WithinAbs(reference, 1e-3));
  }
}

TEST_CASE("higher-dimensional A uses rank-1 Givens search", "[discord]") {
  Rng rng(27);
  CHECK_THROWS_AS(discord(random_bipartite(3, 2, HilbertSchmidt{}, rng), GridSearch{}),
                  ValidationError);
  const BipartiteState cq = random_cq(3, 2, rng);
  CHECK(discord(cq, MultiStart{}).value <= 5e-3);
  CHECK(discord(cq, Hybrid{}).value <= 5e-3);
  const DiscordResult ent = discord(maximally_entangled(3, 3), MultiStart{5});
  CHECK_THAT(ent.value, WithinAbs(std::log2(3.0), 1e-3));
  const Matrix u = ent.optimal_measurement.basis();
  CHECK((u.adjoint() * u - Matrix::Identity(3, 3)).norm() < 1e-10);
}

TEST_CASE("Givens parametrization is unitary", "[discord]") {
  Rng rng(28);
  const Matrix base = random_unitary(3, rng);
  RealVector params = RealVector::Random(6);
  const Matrix u = givens_unitary(base, params);
  CHECK((u.adjoint() * u - Matrix::Identity(3, 3)).norm() < 1e-12);
  CHECK((givens_unitary(base, RealVector::Zero(6)) - base).norm() < 1e-14);
  CHECK_THROWS_AS(givens_unitary(base, RealVector::Zero(5)), DimensionError);
}

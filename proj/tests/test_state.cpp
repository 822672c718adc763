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

TEST_CASE("kron and partial traces agree with explicit loops", "[state]") {
  Rng rng(1);
  for (auto [da, db] : {std::pair<Index, Index>{2, 2}, {2, 3}, {3, 2}, {3, 3}}) {
    const Matrix m = ginibre(da * db, da * db, rng);
    CHECK((partial_trace(m, da, db, Subsystem::A) - oracle::trace_out_b(m, da, db)).norm() <
          1e-12);
    CHECK((partial_trace(m, da, db, Subsystem::B) - oracle::trace_out_a(m, da, db)).norm() <
          1e-12);
    const Matrix a = ginibre(da, da, rng), b = ginibre(db, db, rng);
    CHECK((kron(a, b) - oracle::kron(a, b)).norm() < 1e-12);
  }
}

TEST_CASE("partial trace rejects mismatched dimensions", "[state]") {
  const Matrix m = Matrix::Identity(5, 5);
  CHECK_THROWS_AS(partial_trace(m, 2, 2, Subsystem::A), DimensionError);
}

TEST_CASE("partial transpose and factor swap", "[state]") {
  Rng rng(2);
  const Matrix a = ginibre(2, 2, rng), b = ginibre(3, 3, rng);
  const Matrix ab = kron(a, b);
  CHECK((partial_transpose(ab, 2, 3, Subsystem::B) - kron(a, Matrix(b.transpose()))).norm() <
        1e-12);
  CHECK((partial_transpose(ab, 2, 3, Subsystem::A) - kron(Matrix(a.transpose()), b)).norm() <
        1e-12);
  CHECK((swap_factors(ab, 2, 3) - kron(b, a)).norm() < 1e-12);
}

TEST_CASE("density operator validation", "[state]") {
  SECTION("rejects non-Hermitian, indefinite and wrong-trace input") {
    Matrix m(2, 2);
    m << 0.5, 0.3, 0.0, 0.5;
    CHECK_THROWS_AS(DensityOperator(m), ValidationError);
    m << 1.2, 0.0, 0.0, -0.2;
    CHECK_THROWS_AS(DensityOperator(m), ValidationError);
    m << 0.6, 0.0, 0.0, 0.6;
    CHECK_THROWS_AS(DensityOperator(m), ValidationError);
  }
  SECTION("clips tiny negative eigenvalues") {
    Matrix m(2, 2);
    m << 1.0 + 5e-10, 0.0, 0.0, -5e-10;
    const DensityOperator rho(m);
    CHECK(rho.matrix()(1, 1).real() >= 0.0);
    CHECK_THAT(rho.matrix().trace().real(), WithinAbs(1.0, 1e-15));
  }
  SECTION("factories") {
    CHECK_THAT(DensityOperator::maximally_mixed(4).purity(), WithinAbs(0.25, 1e-15));
    CHECK_THAT(DensityOperator::pure(Vector::Ones(3)).purity(), WithinAbs(1.0, 1e-14));
    CHECK(DensityOperator::basis_state(3, 2).matrix()(2, 2) == Complex(1.0));
  }
}

TEST_CASE("bipartite state checks its factorization", "[state]") {
  CHECK_THROWS_AS(BipartiteState(DensityOperator::maximally_mixed(4), 3, 2), DimensionError);
  const BipartiteState phi = maximally_entangled(2, 2);
  CHECK((partial_trace(phi, Subsystem::A).matrix() - Matrix::Identity(2, 2) / 2.0).norm() <
        1e-14);
  CHECK_THAT(phi.state().purity(), WithinAbs(1.0, 1e-14));
}

TEST_CASE("entropies", "[state]") {
  CHECK_THAT(von_neumann_entropy(DensityOperator::maximally_mixed(4)), WithinAbs(2.0, 1e-12));
  CHECK_THAT(von_neumann_entropy(DensityOperator::pure(Vector::Ones(2))),
             WithinAbs(0.0, 1e-12));
  Rng rng(3);
  for (int k = 0; k < 20; ++k) {
    const DensityOperator rho = random_density(3, HilbertSchmidt{}, rng);
    CHECK_THAT(von_neumann_entropy(rho), WithinAbs(oracle::entropy(rho.matrix()), 1e-10));
  }
}

TEST_CASE("random ensembles are valid and reproducible", "[state][random]") {
  CHECK(derive_seed(42, 0) != derive_seed(42, 1));
  CHECK(derive_seed(42, 7) == derive_seed(42, 7));
  const DensityOperator x = random_density(3, HilbertSchmidt{}, 9);
  const DensityOperator y = random_density(3, HilbertSchmidt{}, 9);
  CHECK((x.matrix() - y.matrix()).norm() == 0.0);

  Rng rng(4);
  for (Index r = 1; r <= 4; ++r) {
    const DensityOperator rho = random_density(4, FixedRank{r}, rng);
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
    Index rank = 0;
    for (Index k = 0; k < 4; ++k) rank += es.eigenvalues()(k) > 1e-10;
    CHECK(rank == r);
  }
  CHECK_THROWS_AS(random_density(3, FixedRank{4}, rng), ValidationError);
  CHECK_THAT(random_density(3, HaarPure{}, rng).purity(), WithinAbs(1.0, 1e-12));

  const Matrix u = random_unitary(4, rng);
  CHECK((u.adjoint() * u - Matrix::Identity(4, 4)).norm() < 1e-12);
  const RealVector t = random_simplex(5, rng);
  CHECK_THAT(t.sum(), WithinAbs(1.0, 1e-14));
  CHECK((t.array() >= 0.0).all());
}

TEST_CASE("generalized Gell-Mann basis", "[state]") {
  for (Index d : {2, 3, 4}) {
    const HermitianBasis hb(d);
    REQUIRE(hb.size() == d * d);
    for (Index a = 0; a < hb.size(); ++a) {
      CHECK(hermiticity_defect(hb[a]) < 1e-14);
      for (Index b = 0; b < hb.size(); ++b) {
        const double ip = (hb[a].adjoint() * hb[b]).trace().real();
        CHECK_THAT(ip, WithinAbs(a == b ? 1.0 : 0.0, 1e-13));
      }
    }
    Rng rng(d);
    const Matrix h = hermitian_part(ginibre(d, d, rng));
    CHECK((hb.from_coordinates(hb.coordinates(h)) - h).norm() < 1e-12);
  }
}

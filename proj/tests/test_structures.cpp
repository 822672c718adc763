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

using namespace dchan;
using Catch::Matchers::WithinAbs;

namespace {

Matrix proj(const Vector& v) { return v * v.adjoint(); }

DensityOperator hs(Index d, Rng& rng) { return random_density(d, HilbertSchmidt{}, rng); }

// 3 ⊗ 2 spec with one entry of each kind in a random basis.
ConvexCQSubsetSpec mixed_spec(Rng& rng) {
  ConvexCQSubsetSpec s;
  s.dim_a = 4;
  s.dim_b = 2;
  const Matrix w = random_unitary(4, rng);
  s.both.push_back({w.col(0), hs(2, rng)});
  s.fixed.push_back({w.col(1), {hs(2, rng), hs(2, rng), hs(2, rng)}});
  s.point.push_back({Matrix(w.col(2) * w.col(2).adjoint() + w.col(3) * w.col(3).adjoint()),
                     hs(2, rng)});
  return s;
}

}  // namespace

TEST_CASE("spec validation", "[structures]") {
  Rng rng(41);
  SECTION("z-basis both entries with distinct conditionals") {
    ConvexCQSubsetSpec s;
    s.dim_a = s.dim_b = 2;
    s.both.push_back({Vector::Unit(2, 0), hs(2, rng)});
    s.both.push_back({Vector::Unit(2, 1), hs(2, rng)});
    CHECK(validate_spec(s).ok);
  }
  SECTION("overlapping point entries name the pair") {
    ConvexCQSubsetSpec s;
    s.dim_a = 3;
    s.dim_b = 2;
    Matrix p1 = Matrix::Zero(3, 3), p2 = Matrix::Zero(3, 3);
    p1(0, 0) = p1(1, 1) = 1.0;
    p2(1, 1) = p2(2, 2) = 1.0;
    s.point.push_back({p1, hs(2, rng)});
    s.point.push_back({p2, hs(2, rng)});
    const SpecCheck c = validate_spec(s);
    CHECK_FALSE(c.ok);
    CHECK(c.diagnostic.find("point[0]") != std::string::npos);
    CHECK(c.diagnostic.find("point[1]") != std::string::npos);
  }
  SECTION("full-space point entry") {
    CHECK(validate_spec(v_fixed_b(3, hs(2, rng))).ok);
  }
  SECTION("rank and normalization clauses") {
    ConvexCQSubsetSpec s;
    s.dim_a = s.dim_b = 2;
    s.point.push_back({proj(Vector::Unit(2, 0)), hs(2, rng)});
    CHECK(validate_spec(s).diagnostic.find("rank") != std::string::npos);
    ConvexCQSubsetSpec t;
    t.dim_a = t.dim_b = 2;
    t.both.push_back({Vector::Ones(2), hs(2, rng)});
    CHECK(validate_spec(t).diagnostic.find("unit") != std::string::npos);
    ConvexCQSubsetSpec e;
    e.dim_a = e.dim_b = 2;
    CHECK_FALSE(validate_spec(e).ok);
  }
}

TEST_CASE("samples are classical-quantum members", "[structures][property]") {
  Rng rng(42);
  const ConvexCQSubsetSpec s = mixed_spec(rng);
  REQUIRE(validate_spec(s).ok);
  for (int k = 0; k < 100; ++k) {
    const BipartiteState rho = sample_state(s, std::nullopt, rng);
    CHECK(is_cq_exact(rho).is_cq);
    CHECK(membership(s, rho).member);
  }
}

TEST_CASE("special families", "[structures]") {
  Rng rng(43);
  SECTION("fixed-B family samples are products") {
    const DensityOperator r = hs(2, rng);
    const BipartiteState rho = sample_state(v_fixed_b(3, r), 7);
    const Matrix a = partial_trace(rho, Subsystem::A).matrix();
    CHECK((rho.matrix() - kron(a, r.matrix())).norm() < 1e-12);
  }
  SECTION("diagonal-A family with explicit weights") {
    const ConvexCQSubsetSpec s = v_diag_a(Matrix::Identity(2, 2), {}, 2);
    RealVector w(2);
    w << 3.0, 1.0;
    const BipartiteState rho = sample_state(s, w, rng);
    CHECK_THAT(partial_trace(rho, Subsystem::A).matrix()(0, 0).real(), WithinAbs(0.75, 1e-12));
    CHECK(membership(s, rho).member);
  }
  SECTION("bad weights") {
    const ConvexCQSubsetSpec s = v_diag_a(Matrix::Identity(2, 2), {}, 2);
    CHECK_THROWS_AS(sample_state(s, RealVector::Ones(3), rng), ValidationError);
    CHECK_THROWS_AS(sample_state(s, RealVector(RealVector::Constant(2, -1.0)), rng),
                    ValidationError);
  }
}

TEST_CASE("membership rejects off-structure states", "[structures]") {
  Rng rng(44);
  const ConvexCQSubsetSpec s = mixed_spec(rng);
  const BipartiteState rho = sample_state(s, std::nullopt, rng);
  REQUIRE(membership(s, rho).member);

  SECTION("perturbed point conditional") {
    ConvexCQSubsetSpec t = s;
    t.point[0].state = DensityOperator(0.98 * t.point[0].state.matrix() +
                                       0.02 * DensityOperator::basis_state(2, 0).matrix());
    const Membership m = membership(t, rho);
    CHECK_FALSE(m.member);
    CHECK(m.reason.find("point[0]") != std::string::npos);
  }
  SECTION("perturbed both conditional") {
    ConvexCQSubsetSpec t = s;
    t.both[0].state = DensityOperator(0.98 * t.both[0].state.matrix() +
                                      0.02 * DensityOperator::basis_state(2, 1).matrix());
    CHECK_FALSE(membership(t, rho).member);
  }
  SECTION("conditional outside the generator hull") {
    ConvexCQSubsetSpec t = s;
    t.fixed[0].generators = {DensityOperator::basis_state(2, 0)};
    CHECK_FALSE(membership(t, rho).member);
  }
  SECTION("coherence between subspaces") {
    ConvexCQSubsetSpec diag;
    diag.dim_a = diag.dim_b = 2;
    diag.fixed.push_back({Vector::Unit(2, 0), {}});
    diag.fixed.push_back({Vector::Unit(2, 1), {}});
    const BipartiteState coherent(
        kron(DensityOperator::pure(Vector::Ones(2)).matrix(), hs(2, rng).matrix()), 2, 2);
    const Membership m = membership(diag, coherent);
    CHECK_FALSE(m.member);
    CHECK(m.reason.find("coherence") != std::string::npos);
  }
  SECTION("support outside the declared subspaces") {
    ConvexCQSubsetSpec partial;
    partial.dim_a = partial.dim_b = 2;
    partial.fixed.push_back({Vector::Unit(2, 0), {}});
    const BipartiteState outside = product_state(DensityOperator::basis_state(2, 1), hs(2, rng));
    CHECK_FALSE(membership(partial, outside).member);
  }
}

TEST_CASE("mixtures within one family stay inside it", "[structures][property]") {
  Rng rng(45);
  for (int k = 0; k < 3; ++k) {
    const MixingReport r = mixing_closure_check(mixed_spec(rng), 50, derive_seed(5, k));
    CHECK(r.passed());
    CHECK(r.pairs == 50);
    CHECK(r.worst_cq_residual < 1e-8);
  }
  const MixingReport fb = mixing_closure_check(v_fixed_b(2, hs(2, rng)), 50);
  CHECK(fb.passed());
}

TEST_CASE("mixing single-entry families: commuting or equal conditionals", "[structures][property]") {
  Rng rng(46);
  std::bernoulli_distribution coin(0.5);
  for (int k = 0; k < 100; ++k) {
    const Vector v1 = random_unit_vector(2, rng);
    const Vector w2 = coin(rng) ? v1 : random_unit_vector(2, rng);
    const DensityOperator s1 = hs(2, rng);
    const DensityOperator s2 = coin(rng) ? s1 : hs(2, rng);
    const Matrix p1 = proj(v1), p2 = proj(w2);
    const Matrix mix = 0.5 * kron(p1, s1.matrix()) + 0.5 * kron(p2, s2.matrix());
    const bool commuting = commutator(p1, p2).norm() <= 1e-10;
    const bool equal = (s1.matrix() - s2.matrix()).norm() <= 1e-10;
    CHECK(is_cq_exact(BipartiteState(mix, 2, 2)).is_cq == (commuting || equal));
  }
}

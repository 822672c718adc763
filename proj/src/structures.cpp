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

#include "dchan/structures.hpp"

#include <cmath>
#include <sstream>

#include "dchan/cq.hpp"
#include "dchan/hermitian_basis.hpp"
#include "dchan/nnls.hpp"

namespace dchan {

namespace {

enum class Kind { Both, Fixed, Point };

struct Slot {
  Kind kind;
  std::size_t index;
  Matrix projector;
  std::string label() const {
    const char* name = kind == Kind::Both    ? "both"
                       : kind == Kind::Fixed ? "fixed"
                                             : "point";
    return std::string(name) + "[" + std::to_string(index) + "]";
  }
};

std::vector<Slot> slots_of(const ConvexCQSubsetSpec& spec) {
  std::vector<Slot> out;
  for (std::size_t i = 0; i < spec.both.size(); ++i) {
    const Vector& v = spec.both[i].psi;
    out.push_back({Kind::Both, i, v * v.adjoint()});
  }
  for (std::size_t i = 0; i < spec.fixed.size(); ++i) {
    const Vector& v = spec.fixed[i].psi;
    out.push_back({Kind::Fixed, i, v * v.adjoint()});
  }
  for (std::size_t i = 0; i < spec.point.size(); ++i)
    out.push_back({Kind::Point, i, spec.point[i].projector});
  return out;
}

std::string fail(const std::string& where, const std::string& what) {
  return where + ": " + what;
}

std::optional<std::string> check_vector(const Vector& v, Index dim,
                                        const std::string& where) {
  if (v.size() != dim)
    return fail(where, "psi has length " + std::to_string(v.size()) +
                           ", expected " + std::to_string(dim));
  if (std::abs(v.norm() - 1.0) > tol::kOrthogonal)
    return fail(where, "psi is not a unit vector");
  return std::nullopt;
}

std::optional<std::string> check_state(const DensityOperator& s, Index dim,
                                       const std::string& where) {
  if (s.dim() != dim)
    return fail(where, "state has dimension " + std::to_string(s.dim()) +
                           ", expected " + std::to_string(dim));
  return std::nullopt;
}

}  // namespace

Matrix range_basis(const Matrix& projector) {
  const EigenSystem es = eig_hermitian(hermitian_part(projector));
  Index rank = 0;
  for (Index k = 0; k < es.values.size(); ++k)
    if (es.values(k) > 0.5) ++rank;
  return es.vectors.rightCols(rank);
}

SpecCheck validate_spec(const ConvexCQSubsetSpec& spec) {
  auto bad = [](std::string msg) { return SpecCheck{false, std::move(msg)}; };
  if (spec.dim_a < 1 || spec.dim_b < 1) return bad("dims: must be positive");
  if (spec.size() == 0) return bad("entries: spec declares no entries");

  for (std::size_t i = 0; i < spec.both.size(); ++i) {
    const std::string where = "both[" + std::to_string(i) + "]";
    if (auto e = check_vector(spec.both[i].psi, spec.dim_a, where)) return bad(*e);
    if (auto e = check_state(spec.both[i].state, spec.dim_b, where)) return bad(*e);
  }
  for (std::size_t i = 0; i < spec.fixed.size(); ++i) {
    const std::string where = "fixed[" + std::to_string(i) + "]";
    if (auto e = check_vector(spec.fixed[i].psi, spec.dim_a, where)) return bad(*e);
    for (std::size_t g = 0; g < spec.fixed[i].generators.size(); ++g) {
      if (auto e = check_state(spec.fixed[i].generators[g], spec.dim_b,
                               where + ".generators[" + std::to_string(g) + "]"))
        return bad(*e);
    }
  }
  for (std::size_t i = 0; i < spec.point.size(); ++i) {
    const std::string where = "point[" + std::to_string(i) + "]";
    const Matrix& p = spec.point[i].projector;
    if (p.rows() != spec.dim_a || p.cols() != spec.dim_a)
      return bad(fail(where, "projector is not dimA x dimA"));
    if (hermiticity_defect(p) > tol::kOrthogonal ||
        (p * p - p).norm() > tol::kOrthogonal)
      return bad(fail(where, "not an orthogonal projector"));
    const double rank = p.trace().real();
    if (rank < 2.0 - 1e-6)
      return bad(fail(where, "projector rank " + std::to_string(std::lround(rank)) +
                                 " < 2 (use a rank-1 entry)"));
    if (auto e = check_state(spec.point[i].state, spec.dim_b, where)) return bad(*e);
  }

  const std::vector<Slot> slots = slots_of(spec);
  for (std::size_t x = 0; x < slots.size(); ++x) {
    for (std::size_t y = x + 1; y < slots.size(); ++y) {
      const double overlap = (slots[x].projector * slots[y].projector).norm();
      if (overlap > tol::kOrthogonal) {
        std::ostringstream msg;
        msg << slots[x].label() << " and " << slots[y].label()
            << " are not orthogonal (overlap " << overlap << ")";
        return bad(msg.str());
      }
    }
  }
  return {};
}

ConvexCQSubsetSpec v_diag_a(const Matrix& basis,
                            std::vector<std::vector<DensityOperator>> generators,
                            Index dim_b) {
  ConvexCQSubsetSpec spec;
  spec.dim_a = basis.rows();
  spec.dim_b = dim_b;
  generators.resize(basis.cols());
  for (Index k = 0; k < basis.cols(); ++k)
    spec.fixed.push_back({basis.col(k), std::move(generators[k])});
  return spec;
}

ConvexCQSubsetSpec v_fixed_b(Index dim_a, const DensityOperator& r) {
  ConvexCQSubsetSpec spec;
  spec.dim_a = dim_a;
  spec.dim_b = r.dim();
  spec.point.push_back({Matrix::Identity(dim_a, dim_a), r});
  return spec;
}

BipartiteState sample_state(const ConvexCQSubsetSpec& spec,
                            const std::optional<RealVector>& weights, Rng& rng) {
  if (const SpecCheck c = validate_spec(spec); !c)
    throw ValidationError("sample_state: invalid spec: " + c.diagnostic);
  const Index n = static_cast<Index>(spec.size());
  RealVector t;
  if (weights) {
    if (weights->size() != n)
      throw ValidationError("sample_state: expected " + std::to_string(n) +
                            " weights");
    if ((weights->array() < 0.0).any() || weights->sum() <= 0.0)
      throw ValidationError("sample_state: weights must be nonnegative with "
                            "positive sum");
    t = *weights / weights->sum();
  } else {
    t = random_simplex(n, rng);
  }

  const Index da = spec.dim_a;
  const Index db = spec.dim_b;
  Matrix rho = Matrix::Zero(da * db, da * db);
  Index k = 0;
  for (const BothEntry& e : spec.both) {
    rho += t(k++) * kron(Matrix(e.psi * e.psi.adjoint()), e.state.matrix());
  }
  for (const FixedEntry& e : spec.fixed) {
    Matrix sigma;
    if (e.generators.empty()) {
      sigma = random_density(db, HilbertSchmidt{}, rng).matrix();
    } else {
      const RealVector w = random_simplex(e.generators.size(), rng);
      sigma = Matrix::Zero(db, db);
      for (std::size_t g = 0; g < e.generators.size(); ++g)
        sigma += w(g) * e.generators[g].matrix();
    }
    rho += t(k++) * kron(Matrix(e.psi * e.psi.adjoint()), sigma);
  }
  for (const PointEntry& e : spec.point) {
    const Matrix q = range_basis(e.projector);
    const Matrix local = random_density(q.cols(), HilbertSchmidt{}, rng).matrix();
    rho += t(k++) * kron(Matrix(q * local * q.adjoint()), e.state.matrix());
  }
  return BipartiteState(rho, da, db);
}

BipartiteState sample_state(const ConvexCQSubsetSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  return sample_state(spec, std::nullopt, rng);
}

Membership membership(const ConvexCQSubsetSpec& spec, const BipartiteState& rho,
                      double tol) {
  auto reject = [](double r, std::string why) {
    return Membership{false, r, std::move(why)};
  };
  if (rho.dim_a() != spec.dim_a || rho.dim_b() != spec.dim_b)
    return reject(0.0, "dimension mismatch");

  const Index da = spec.dim_a;
  const Index db = spec.dim_b;
  const Matrix id_b = Matrix::Identity(db, db);
  const Matrix& m = rho.matrix();
  const std::vector<Slot> slots = slots_of(spec);

  Matrix covered = Matrix::Zero(da, da);
  std::vector<Matrix> lifted;
  for (const Slot& s : slots) {
    covered += s.projector;
    lifted.push_back(kron(s.projector, id_b));
  }
  const Matrix outside = kron(Matrix(Matrix::Identity(da, da) - covered), id_b);
  if (const double r = (outside * m).norm(); r > tol)
    return reject(r, "support leaves the declared subspaces");

  Membership out;
  for (std::size_t x = 0; x < slots.size(); ++x) {
    for (std::size_t y = x + 1; y < slots.size(); ++y) {
      const double r = (lifted[x] * m * lifted[y]).norm();
      if (r > tol)
        return reject(r, "coherence between " + slots[x].label() + " and " +
                             slots[y].label());
      out.residual = std::max(out.residual, r);
    }
  }

  const HermitianBasis hb(db);
  for (std::size_t x = 0; x < slots.size(); ++x) {
    const Slot& s = slots[x];
    const Matrix block = lifted[x] * m * lifted[x];
    const double weight = block.trace().real();
    if (weight <= tol) continue;
    const Matrix marginal_a = partial_trace(block, da, db, Subsystem::A);
    const Matrix cond_b = partial_trace(block, da, db, Subsystem::B) / weight;
    const Matrix* target = nullptr;
    if (s.kind == Kind::Both) target = &spec.both[s.index].state.matrix();
    if (s.kind == Kind::Point) target = &spec.point[s.index].state.matrix();

    if (target) {
      const double r = (block - kron(marginal_a, *target)).norm();
      if (r > tol)
        return reject(r, s.label() + ": conditional state on B differs from R");
      out.residual = std::max(out.residual, r);
      continue;
    }
    const std::vector<DensityOperator>& gens = spec.fixed[s.index].generators;
    if (gens.empty()) continue;
    RealMatrix a(hb.size(), gens.size());
    for (std::size_t g = 0; g < gens.size(); ++g)
      a.col(g) = hb.coordinates(gens[g].matrix());
    const NnlsResult fit = nnls(a, hb.coordinates(cond_b));
    if (fit.residual > tol)
      return reject(fit.residual,
                    s.label() + ": conditional state outside the generator hull");
    out.residual = std::max(out.residual, fit.residual);
  }
  return out;
}

MixingReport mixing_closure_check(const ConvexCQSubsetSpec& spec, int n_pairs,
                                  std::uint64_t seed) {
  MixingReport report;
  report.pairs = n_pairs;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 0; k < n_pairs; ++k) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(k)));
    const BipartiteState x = sample_state(spec, std::nullopt, rng);
    const BipartiteState y = sample_state(spec, std::nullopt, rng);
    const double w = unit(rng);
    const BipartiteState z = mix(x, y, w);
    const CqCheck cq = is_cq_exact(z);
    const bool member = membership(spec, z).member;
    report.worst_cq_residual = std::max(report.worst_cq_residual, cq.residual);
    if (!cq.is_cq || !member)
      report.failures.push_back({k, w, cq.residual, cq.is_cq, member});
  }
  return report;
}

}  // namespace dchan

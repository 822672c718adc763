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

#include "dchan/annihilators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "dchan/classify.hpp"
#include "dchan/cq.hpp"

namespace dchan {

namespace {

constexpr double kPointSpread = tol::kPointSpread;
constexpr double kMatchResidual = 1e-7;

// Coefficient sequence used to order entries.
std::vector<double> sort_key(const PartitionEntry& e) {
  std::vector<double> key{static_cast<double>(e.rank()), e.is_identity() ? 1.0 : 0.0};
  for (Index j = 0; j < e.projector.cols(); ++j)
    for (Index i = 0; i < e.projector.rows(); ++i) {
      key.push_back(-e.projector(i, j).real());
      key.push_back(-e.projector(i, j).imag());
    }
  return key;
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace

PartitionEntry PartitionEntry::rank1(const Vector& psi, BlockAction action) {
  const double n = psi.norm();
  if (n == 0.0) throw ValidationError("partition entry: zero vector");
  const Vector v = psi / n;
  return {v * v.adjoint(), std::move(action)};
}

PartitionEntry PartitionEntry::multi(const Matrix& projector,
                                     const DensityOperator& r) {
  return {projector, PointTo{r}};
}

Index PartitionEntry::rank() const {
  return static_cast<Index>(std::lround(projector.trace().real()));
}

SpecCheck validate_da_spec(const DAChannelSpec& spec) {
  auto bad = [](std::string msg) { return SpecCheck{false, std::move(msg)}; };
  if (spec.dim_a < 1 || spec.dim_b < 1) return bad("dims: must be positive");
  if (spec.partition.empty()) return bad("partition: no entries");
  const Index d = spec.dim_a * spec.dim_b;
  if (spec.pre_channel &&
      (spec.pre_channel->dim_in() != d || spec.pre_channel->dim_out() != d))
    return bad("pre_channel: must act on the " + std::to_string(d) +
               "-dimensional joint system");

  Matrix total = Matrix::Zero(spec.dim_a, spec.dim_a);
  for (std::size_t i = 0; i < spec.partition.size(); ++i) {
    const PartitionEntry& e = spec.partition[i];
    const std::string where = "partition[" + std::to_string(i) + "]";
    const Matrix& p = e.projector;
    if (p.rows() != spec.dim_a || p.cols() != spec.dim_a)
      return bad(where + ": projector is not dimA x dimA");
    if (hermiticity_defect(p) > tol::kOrthogonal ||
        (p * p - p).norm() > tol::kOrthogonal)
      return bad(where + ": not an orthogonal projector");
    if (e.rank() < 1) return bad(where + ": zero projector");
    if (e.rank() >= 2 && e.is_identity())
      return bad(where + ": identity action on a rank-" + std::to_string(e.rank()) +
                 " subspace; subspaces of dimension two or more must carry a "
                 "point channel");
    if (const auto* pt = std::get_if<PointTo>(&e.action); pt && pt->state.dim() != spec.dim_b)
      return bad(where + ": point state is not dimB-dimensional");
    for (std::size_t j = 0; j < i; ++j) {
      const double overlap = (p * spec.partition[j].projector).norm();
      if (overlap > tol::kOrthogonal) {
        std::ostringstream msg;
        msg << "partition[" << j << "] and " << where
            << " are not orthogonal (overlap " << overlap << ")";
        return bad(msg.str());
      }
    }
    total += p;
  }
  const double gap = (total - Matrix::Identity(spec.dim_a, spec.dim_a)).norm();
  if (gap > tol::kOrthogonal) {
    std::ostringstream msg;
    msg << "partition: projectors do not sum to the identity on A (defect " << gap
        << ")";
    return bad(msg.str());
  }
  return {};
}

QuantumChannel build_da_channel(const DAChannelSpec& spec) {
  if (const SpecCheck c = validate_da_spec(spec); !c)
    throw ValidationError("build_da_channel: " + c.diagnostic);
  const Index db = spec.dim_b;
  const Matrix id_b = Matrix::Identity(db, db);
  std::vector<Matrix> kraus;
  for (const PartitionEntry& e : spec.partition) {
    if (e.is_identity()) {
      kraus.push_back(kron(e.projector, id_b));
      continue;
    }
    const QuantumChannel point =
        make_point_channel(std::get<PointTo>(e.action).state, db);
    for (const Matrix& k : point.kraus()) kraus.push_back(kron(e.projector, k));
  }
  QuantumChannel post = QuantumChannel::from_kraus(std::move(kraus), 1e-8);
  if (!spec.pre_channel) return post.canonical();
  return compose(post, *spec.pre_channel).canonical();
}

ConvexCQSubsetSpec induced_subset_spec(const DAChannelSpec& spec) {
  ConvexCQSubsetSpec out;
  out.dim_a = spec.dim_a;
  out.dim_b = spec.dim_b;
  for (const PartitionEntry& e : spec.partition) {
    if (e.rank() >= 2) {
      out.point.push_back({e.projector, std::get<PointTo>(e.action).state});
      continue;
    }
    const Vector psi = range_basis(e.projector).col(0);
    if (e.is_identity()) {
      out.fixed.push_back({psi, {}});
    } else {
      out.both.push_back({psi, std::get<PointTo>(e.action).state});
    }
  }
  return out;
}

DAChannelSpec random_da_spec(Index dim_a, Index dim_b, Rng& rng) {
  DAChannelSpec spec;
  spec.dim_a = dim_a;
  spec.dim_b = dim_b;
  const Matrix u = random_unitary(dim_a, rng);
  std::bernoulli_distribution coin(0.5);
  Index start = 0;
  while (start < dim_a) {
    const Index left = dim_a - start;
    Index size = 1;
    if (left >= 2 && coin(rng)) {
      std::uniform_int_distribution<Index> pick(2, left);
      size = pick(rng);
    }
    const Matrix q = u.middleCols(start, size);
    const DensityOperator r = random_density(dim_b, HilbertSchmidt{}, rng);
    if (size >= 2) {
      spec.partition.push_back(PartitionEntry::multi(q * q.adjoint(), r));
    } else if (coin(rng)) {
      spec.partition.push_back(PartitionEntry::rank1(q.col(0), IdentityAction{}));
    } else {
      spec.partition.push_back(PartitionEntry::rank1(q.col(0), PointTo{r}));
    }
    start += size;
  }
  const Index d = dim_a * dim_b;
  std::uniform_int_distribution<Index> n_kraus(2, std::max<Index>(2, d));
  spec.pre_channel = random_channel(d, d, n_kraus(rng), rng);
  return spec;
}

CertifyReport apply_and_certify(const QuantumChannel& phi, Index dim_a,
                                Index dim_b, int n_samples, std::uint64_t seed,
                                double tol) {
  const Index d = dim_a * dim_b;
  if (phi.dim_in() != d || phi.dim_out() != d)
    throw DimensionError("apply_and_certify: channel does not act on " +
                         std::to_string(dim_a) + "x" + std::to_string(dim_b));
  std::vector<BipartiteState> probes;
  for (Index a = 0; a < dim_a; ++a)
    for (Index b = 0; b < dim_b; ++b)
      probes.push_back(product_state(DensityOperator::basis_state(dim_a, a),
                                     DensityOperator::basis_state(dim_b, b)));
  auto plus = [](Index dim) {
    return DensityOperator::pure(Vector::Ones(dim));
  };
  probes.push_back(product_state(plus(dim_a), plus(dim_b)));
  const BipartiteState bell = maximally_entangled(dim_a, dim_b);
  probes.push_back(bell);
  probes.push_back(mix(bell,
                       product_state(DensityOperator::basis_state(dim_a, 0),
                                     DensityOperator::basis_state(dim_b, 1 % dim_b)),
                       0.5));

  CertifyReport report;
  const int total = static_cast<int>(probes.size()) + n_samples;
  for (int k = 0; k < total; ++k) {
    const int p = static_cast<int>(probes.size());
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(std::max(0, k - p))));
    const BipartiteState input =
        k < p ? probes[k] : random_bipartite(dim_a, dim_b, HilbertSchmidt{}, rng);
    const Matrix output = phi(input.matrix());
    const CqCheck check = is_cq_exact(output, dim_a, dim_b, tol);
    report.worst_residual = std::max(report.worst_residual, check.residual);
    if (!check.is_cq && !report.first_failure) {
      report.first_failure = k;
      report.failing_input = input;
      report.failing_output = output;
    }
  }
  report.inputs = total;
  return report;
}

MatchResult structural_match(const QuantumChannel& phi, Index dim_a, Index dim_b,
                             int n_samples, std::uint64_t seed) {
  MatchResult result;
  result.certification = apply_and_certify(phi, dim_a, dim_b, n_samples, seed);
  if (!result.certification.passed()) {
    result.reason = "an output failed the classical-quantum test";
    return result;
  }

  const Index da = dim_a;
  const Index db = dim_b;
  const Index d = da * db;
  Rng rng(derive_seed(seed, 0x5eedULL << 32));
  std::vector<Matrix> outputs;
  outputs.push_back(phi(Matrix(Matrix::Identity(d, d) / double(d))));
  for (Index k = 0; k < 4 * da * da; ++k) {
    const Matrix x = random_density(d, HilbertSchmidt{}, rng).matrix();
    outputs.push_back(phi(Matrix(0.5 * Matrix::Identity(d, d) / double(d) + 0.5 * x)));
  }

  // Split A into the part the image reaches and the part it never touches.
  Matrix weight = Matrix::Zero(da, da);
  for (const Matrix& w : outputs) weight += partial_trace(w, da, db, Subsystem::A);
  const EigenSystem ws = eig_hermitian(hermitian_part(weight));
  const double wmax = std::max(ws.values.maxCoeff(), 1e-300);
  Index unseen = 0;
  while (unseen < da && ws.values(unseen) <= 1e-10 * wmax) ++unseen;
  const Matrix s = ws.vectors.rightCols(da - unseen);
  const Matrix s_perp = ws.vectors.leftCols(unseen);

  std::vector<Matrix> blocks;
  for (const Matrix& w : outputs)
    for (Index i = 0; i < db; ++i)
      for (Index j = 0; j < db; ++j) blocks.push_back(b_block(w, da, db, i, j));

  std::normal_distribution<double> normal;
  Matrix h = Matrix::Zero(da, da);
  for (const Matrix& blk : blocks) {
    h += normal(rng) * hermitian_part(blk) +
         normal(rng) * Matrix((blk - blk.adjoint()) / Complex(0.0, 2.0));
  }
  const Matrix v = s * eig_hermitian(hermitian_part(Matrix(s.adjoint() * h * s))).vectors;

  const std::size_t n = v.cols();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = k + 1; l < n; ++l) {
      double coherence = 0.0;
      for (const Matrix& blk : blocks)
        coherence = std::max(coherence, std::abs(v.col(k).dot(blk * v.col(l))));
      if (coherence > kPointSpread) parent[find_root(parent, k)] = find_root(parent, l);
    }
  }

  DAChannelSpec spec;
  spec.dim_a = da;
  spec.dim_b = db;
  spec.pre_channel = phi;
  const Matrix id_b = Matrix::Identity(db, db);
  for (std::size_t root = 0; root < n; ++root) {
    if (find_root(parent, root) != root) continue;
    std::vector<Index> cols;
    for (std::size_t k = 0; k < n; ++k)
      if (find_root(parent, k) == root) cols.push_back(static_cast<Index>(k));
    Matrix q(da, static_cast<Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) q.col(c) = v.col(cols[c]);
    const Matrix proj = q * q.adjoint();
    const Matrix lifted = kron(proj, id_b);

    std::vector<Matrix> conditionals;
    Matrix mean = Matrix::Zero(db, db);
    for (const Matrix& w : outputs) {
      const Matrix blk = lifted * w * lifted;
      const double t = blk.trace().real();
      if (t <= 1e-9) continue;
      conditionals.push_back(partial_trace(blk, da, db, Subsystem::B) / t);
      mean += conditionals.back();
    }
    mean /= double(conditionals.size());
    double spread = 0.0;
    for (const Matrix& c : conditionals) spread = std::max(spread, (c - mean).norm());

    const DensityOperator r(hermitian_part(mean));
    if (cols.size() >= 2) {
      spec.partition.push_back(PartitionEntry::multi(proj, r));
    } else if (spread <= kPointSpread) {
      spec.partition.push_back(PartitionEntry::rank1(q.col(0), PointTo{r}));
    } else {
      spec.partition.push_back(PartitionEntry::rank1(q.col(0), IdentityAction{}));
    }
  }
  if (unseen >= 2) {
    spec.partition.push_back(PartitionEntry::multi(
        s_perp * s_perp.adjoint(), DensityOperator::maximally_mixed(db)));
  } else if (unseen == 1) {
    spec.partition.push_back(PartitionEntry::rank1(
        s_perp.col(0), PointTo{DensityOperator::maximally_mixed(db)}));
  }

  std::sort(spec.partition.begin(), spec.partition.end(),
            [](const PartitionEntry& x, const PartitionEntry& y) {
              return sort_key(x) < sort_key(y);
            });

  try {
    result.residual = choi_distance(build_da_channel(spec), phi);
  } catch (const Error& e) {
    result.reason = std::string("recovered partition is invalid: ") + e.what();
    return result;
  }
  if (result.residual > kMatchResidual * relative_scale(phi.choi().norm())) {
    std::ostringstream msg;
    msg << "recovered partition does not reproduce the channel (Choi residual "
        << result.residual << ")";
    result.reason = msg.str();
    return result;
  }
  result.spec = std::move(spec);
  return result;
}

LocalDAVerdict is_local_da(const QuantumChannel& on_a, const QuantumChannel& on_b,
                           std::uint64_t seed) {
  LocalDAVerdict out;
  const QcVerdict qc = is_qc_channel(on_a);
  if (qc.verdict.kind == VerdictKind::Yes) {
    out.kind = LocalDAKind::ViaA;
    out.residual = qc.verdict.residual;
    out.notes = "channel on A is quantum-classical";
    return out;
  }
  const Verdict point = is_point_channel(on_b);
  if (point.kind == VerdictKind::Yes) {
    out.kind = LocalDAKind::ViaB;
    out.residual = point.residual;
    out.notes = "channel on B is a point channel";
    return out;
  }
  out.kind = LocalDAKind::NotDA;
  const QuantumChannel joint = tensor(on_a, on_b);
  const auto w = find_noncq_output(joint, on_a.dim_in(), on_b.dim_in(),
                                   on_a.dim_out(), on_b.dim_out(), seed);
  if (w) {
    out.witness_input = w->input;
    out.witness_output = w->output.matrix();
    out.residual = w->magnitude;
    out.notes = "output of the witness input is not classical-quantum";
  } else {
    out.notes = "neither factor qualifies; no witness found within budget";
  }
  return out;
}

std::string to_string(LocalDAKind kind) {
  switch (kind) {
    case LocalDAKind::ViaA:
      return "DA_via_A";
    case LocalDAKind::ViaB:
      return "DA_via_B";
    case LocalDAKind::NotDA:
      return "NotDA";
  }
  return "NotDA";
}

}  // namespace dchan

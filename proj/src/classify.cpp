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

#include "dchan/classify.hpp"

#include <cmath>
#include <sstream>

#include "dchan/cq.hpp"

namespace dchan {

namespace {

constexpr double kRebuildTol = 1e-8;
constexpr double kDeterminantScreen = 1e-8;
constexpr int kCertifySamples = 200;

// |i⟩⟨i|, |i±j⟩ and |i±ij⟩ for i < j. Spans the Hermitian operators.
std::vector<Matrix> pair_probes(Index dim) {
  std::vector<Matrix> out;
  for (Index i = 0; i < dim; ++i) out.push_back(DensityOperator::basis_state(dim, i).matrix());
  for (Index i = 0; i < dim; ++i) {
    for (Index j = i + 1; j < dim; ++j) {
      for (const Complex phase : {Complex(1, 0), Complex(-1, 0), Complex(0, 1),
                                  Complex(0, -1)}) {
        Vector v = Vector::Zero(dim);
        v(i) = 1.0;
        v(j) = phase;
        out.push_back(DensityOperator::pure(v).matrix());
      }
    }
  }
  return out;
}

template <typename Score>
InputPairWitness best_pair(const QuantumChannel& phi, Score score) {
  const std::vector<Matrix> probes = pair_probes(phi.dim_in());
  std::vector<Matrix> images;
  for (const Matrix& x : probes) images.push_back(phi(x));
  InputPairWitness best{probes[0], probes[0], -1.0};
  for (std::size_t a = 0; a < probes.size(); ++a) {
    for (std::size_t b = a + 1; b < probes.size(); ++b) {
      const double s = score(images[a], images[b]);
      if (s > best.magnitude) best = {probes[a], probes[b], s};
    }
  }
  return best;
}

Vector ket(Index dim, Index k) {
  Vector v = Vector::Zero(dim);
  v(k) = 1.0;
  return v;
}

Vector plus(Index dim, Complex phase = Complex(1, 0)) {
  Vector v = Vector::Zero(dim);
  v(0) = 1.0 / std::sqrt(2.0);
  v(1) = phase / std::sqrt(2.0);
  return v;
}

Matrix proj(const Vector& v) { return v * v.adjoint(); }

std::string fmt(double x) {
  std::ostringstream s;
  s << x;
  return s.str();
}

}  // namespace

std::string to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Yes:
      return "Yes";
    case VerdictKind::No:
      return "No";
    case VerdictKind::Unknown:
      return "Unknown";
  }
  return "Unknown";
}

Verdict is_point_channel(const QuantumChannel& phi, double tol) {
  const Index din = phi.dim_in();
  const Index dout = phi.dim_out();
  const Matrix& j = phi.choi();
  const Matrix sigma = partial_trace(j, din, dout, Subsystem::B) / double(din);
  Verdict v;
  v.residual = (j - kron(Matrix(Matrix::Identity(din, din)), sigma)).norm();
  if (v.residual <= tol) {
    v.kind = VerdictKind::Yes;
    v.notes = "Choi matrix factors as identity tensor a fixed output state";
    return v;
  }
  v.kind = VerdictKind::No;
  v.witness = best_pair(phi, [](const Matrix& x, const Matrix& y) {
    return (x - y).norm();
  });
  v.notes = "two inputs are mapped to different outputs";
  return v;
}

QcVerdict is_qc_channel(const QuantumChannel& phi, double tol) {
  const Index din = phi.dim_in();
  const Index dout = phi.dim_out();
  const Matrix swapped = swap_factors(phi.choi(), din, dout) / double(din);
  const CqCheck check = is_cq_exact(swapped, dout, din, tol);
  QcVerdict out;
  out.verdict.residual = check.residual;
  if (!check.is_cq) {
    out.verdict.kind = VerdictKind::No;
    out.verdict.witness = best_pair(phi, [](const Matrix& x, const Matrix& y) {
      return commutator(x, y).norm();
    });
    out.verdict.notes = "two outputs do not commute";
    return out;
  }
  try {
    const CQDecomposition dec = cq_decompose(BipartiteState(swapped, dout, din));
    QcForm form;
    form.basis = dec.basis;
    for (Index k = 0; k < dec.basis.cols(); ++k) {
      form.povm.push_back(double(din) * dec.probabilities(k) *
                          dec.conditionals[k].matrix().transpose());
    }
    const double rebuilt =
        choi_distance(make_qc_channel(form.povm, form.basis), phi);
    if (rebuilt > kRebuildTol * relative_scale(phi.choi().norm())) {
      out.verdict.kind = VerdictKind::Unknown;
      out.verdict.notes = "classical output slot, but the extracted measurement "
                          "rebuilds the channel only to " + fmt(rebuilt);
      return out;
    }
    out.verdict.kind = VerdictKind::Yes;
    out.verdict.notes = "Choi matrix is classical on the output slot";
    out.form = std::move(form);
  } catch (const Error& e) {
    out.verdict.kind = VerdictKind::Unknown;
    out.verdict.notes = std::string("measurement extraction failed: ") + e.what();
  }
  return out;
}

Verdict is_entanglement_breaking(const QuantumChannel& phi, double tol) {
  const Index din = phi.dim_in();
  const Index dout = phi.dim_out();
  const Matrix pt =
      partial_transpose(Matrix(phi.choi() / double(din)), din, dout, Subsystem::B);
  const EigenSystem es = eig_hermitian(hermitian_part(pt));
  const double lowest = es.values(0);
  Verdict v;
  v.residual = std::max(0.0, -lowest);
  if (lowest < -tol) {
    v.kind = VerdictKind::No;
    v.witness = EigenWitness{es.vectors.col(0), lowest};
    v.notes = "partially transposed Choi matrix has eigenvalue " + fmt(lowest);
  } else if (din * dout <= 6) {
    v.kind = VerdictKind::Yes;
    v.notes = "positive partial transpose, which is sufficient in these dimensions";
  } else if (is_point_channel(phi).kind == VerdictKind::Yes ||
             is_qc_channel(phi).verdict.kind == VerdictKind::Yes) {
    v.kind = VerdictKind::Yes;
    v.notes = "channel has an explicit measure-and-prepare form";
  } else {
    v.kind = VerdictKind::Unknown;
    v.notes = "positive partial transpose; not decisive for dimensions " +
              std::to_string(din) + "x" + std::to_string(dout);
  }
  return v;
}

std::vector<BipartiteState> witness_probes(Index dim_a, Index dim_b) {
  std::vector<BipartiteState> out;
  const Index d = std::min(dim_a, dim_b);
  auto pure = [&](const Vector& v) {
    return BipartiteState(DensityOperator::pure(v), dim_a, dim_b);
  };
  auto product = [&](const Matrix& a, const Matrix& b) {
    return BipartiteState(Matrix(kron(a, b)), dim_a, dim_b);
  };

  // Bell family: (X^s Z^t ⊗ 𝟙)|Φ⟩ on the first d levels.
  const double pi = std::acos(-1.0);
  for (Index s = 0; s < d; ++s) {
    for (Index t = 0; t < d; ++t) {
      Vector v = Vector::Zero(dim_a * dim_b);
      for (Index k = 0; k < d; ++k) {
        const Complex phase = std::polar(1.0, 2.0 * pi * double(t * k) / double(d));
        v(((k + s) % d) * dim_b + k) += phase;
      }
      out.push_back(pure(v));
    }
  }
  for (Index a = 0; a < dim_a; ++a)
    for (Index b = 0; b < dim_b; ++b) out.push_back(pure(kron(ket(dim_a, a), ket(dim_b, b))));
  if (dim_a < 2 || dim_b < 2) return out;

  const Complex i(0.0, 1.0);
  const Matrix pa = proj(plus(dim_a)), pb = proj(plus(dim_b));
  const Matrix za = proj(ket(dim_a, 0)), zb = proj(ket(dim_b, 0));
  const Matrix ob = proj(ket(dim_b, 1));
  out.push_back(product(pa, pb));
  out.push_back(product(pa, zb));
  out.push_back(product(za, pb));
  out.push_back(product(proj(plus(dim_a, i)), proj(plus(dim_b, i))));

  auto half = [&](const Matrix& a1, const Matrix& b1, const Matrix& a2,
                  const Matrix& b2) {
    return BipartiteState(Matrix(0.5 * kron(a1, b1) + 0.5 * kron(a2, b2)), dim_a,
                          dim_b);
  };
  out.push_back(half(za, zb, pa, pb));
  out.push_back(half(za, zb, pa, ob));
  out.push_back(half(za, zb, proj(plus(dim_a, i)), pb));
  out.push_back(half(za, pb, pa, zb));
  return out;
}

std::optional<StateWitness> find_noncq_output(const QuantumChannel& phi,
                                              Index in_a, Index in_b,
                                              Index out_a, Index out_b,
                                              std::uint64_t seed, int budget,
                                              double tol) {
  if (phi.dim_in() != in_a * in_b || phi.dim_out() != out_a * out_b)
    throw DimensionError("find_noncq_output: channel does not match dimensions");
  auto test = [&](const BipartiteState& input) -> std::optional<StateWitness> {
    const Matrix output = phi(input.matrix());
    const CqCheck check = is_cq_exact(output, out_a, out_b, tol);
    if (check.is_cq) return std::nullopt;
    return StateWitness{input, BipartiteState(output, out_a, out_b), check.residual};
  };
  int tried = 0;
  for (const BipartiteState& probe : witness_probes(in_a, in_b)) {
    if (tried++ >= budget) return std::nullopt;
    if (auto w = test(probe)) return w;
  }
  for (std::uint64_t k = 0; tried < budget; ++k, ++tried) {
    Rng rng(derive_seed(seed, k));
    if (auto w = test(random_bipartite(in_a, in_b, HilbertSchmidt{}, rng))) return w;
  }
  return std::nullopt;
}

ClassificationReport classify_channel(const QuantumChannel& phi,
                                      const ChannelContext& context,
                                      std::uint64_t seed, double tol) {
  ClassificationReport report;
  if (const auto* c = std::get_if<ActsOnA>(&context)) {
    QcVerdict qc = is_qc_channel(phi, tol);
    report.verdict = qc.verdict;
    report.qc_form = std::move(qc.form);
    report.entanglement_breaking = is_entanglement_breaking(phi);
    if (report.verdict.kind == VerdictKind::Yes) {
      report.label = "DB-A";
    } else if (report.verdict.kind == VerdictKind::No) {
      report.label = "not DB-A";
      report.discordant_output =
          find_noncq_output(extend(phi, Subsystem::A, c->dim_b), phi.dim_in(),
                            c->dim_b, phi.dim_out(), c->dim_b, seed, 500, tol);
    } else {
      report.label = "Inconclusive";
    }
    return report;
  }
  if (const auto* c = std::get_if<ActsOnB>(&context)) {
    report.verdict = is_point_channel(phi);
    report.entanglement_breaking = is_entanglement_breaking(phi);
    if (report.verdict.kind == VerdictKind::Yes) {
      report.label = "DB-B";
    } else {
      report.label = "not DB-B";
      report.discordant_output =
          find_noncq_output(extend(phi, Subsystem::B, c->dim_a), c->dim_a,
                            phi.dim_in(), c->dim_a, phi.dim_out(), seed, 500, tol);
    }
    return report;
  }

  const auto& c = std::get<ActsOnAB>(context);
  const Index d = c.dim_a * c.dim_b;
  if (phi.dim_in() != d || phi.dim_out() != d)
    throw DimensionError("classify_channel: channel is " +
                         std::to_string(phi.dim_out()) + "x" +
                         std::to_string(phi.dim_in()) + ", context expects " +
                         std::to_string(d) + "x" + std::to_string(d));
  const RealTransfer rt = real_transfer(phi);
  report.transfer_ratio = rt.min_singular_value() /
                          std::max(rt.max_singular_value(), 1e-300);

  auto not_da = [&](StateWitness w, std::string notes) {
    report.label = "NotDA";
    report.verdict.kind = VerdictKind::No;
    report.verdict.residual = w.magnitude;
    report.verdict.witness = w;
    report.verdict.notes = std::move(notes);
    report.discordant_output = std::move(w);
    return report;
  };
  const CertifyReport cert =
      apply_and_certify(phi, c.dim_a, c.dim_b, kCertifySamples, seed, tol);
  if (!cert.passed()) {
    const BipartiteState out(*cert.failing_output, c.dim_a, c.dim_b);
    return not_da({*cert.failing_input, out, is_cq_exact(out, tol).residual},
                  "sampled input produced a discordant output");
  }
  if (*report.transfer_ratio >= kDeterminantScreen) {
    if (auto w = find_noncq_output(phi, c.dim_a, c.dim_b, c.dim_a, c.dim_b, seed,
                                   500, tol))
      return not_da(*w, "full-rank transfer matrix; witness search found a "
                        "discordant output");
    report.label = "Inconclusive";
    report.verdict.kind = VerdictKind::Unknown;
    report.verdict.notes = "transfer matrix has full rank, which excludes "
                           "annihilation, but no witness was found";
    return report;
  }
  MatchResult match = structural_match(phi, c.dim_a, c.dim_b, kCertifySamples, seed);
  report.verdict.residual = match.residual;
  if (match.spec) {
    report.label = "DA";
    report.verdict.kind = VerdictKind::Yes;
    report.verdict.notes = "recovered pinching partition reproduces the channel";
    report.da_spec = std::move(match.spec);
  } else {
    report.label = "Inconclusive";
    report.verdict.kind = VerdictKind::Unknown;
    report.verdict.notes = match.reason;
  }
  return report;
}

}  // namespace dchan

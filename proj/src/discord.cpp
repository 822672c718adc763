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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "dchan/discord.hpp"
#include "dchan/nelder_mead.hpp"

namespace dchan {

namespace {

// p·S(X/p) for an unnormalized conditional state X with tr X = p, from the
// eigenvalues x_i of X: −Σ x_i log₂ x_i + p log₂ p.
double weighted_entropy(const double* x, Index n, double p) {
  double s = p * std::log2(p);
  for (Index i = 0; i < n; ++i) {
    if (x[i] > tol::kEntropyCutoff * p) s -= x[i] * std::log2(x[i]);
  }
  return std::max(0.0, s);
}

/**
 * Evaluates S(B) − Σ_a p_a S(ρ_B|a) for many candidate bases on A without
 * forming Π⊗𝟙. The unnormalized conditional state for outcome |e⟩ is
 * Σ_ac ē_a e_c ρ_ac, where ρ_ac is the (a, c) block of ρ.
 */
class MeasuredInformation {
 public:
  explicit MeasuredInformation(const BipartiteState& rho)
      : da_(rho.dim_a()), db_(rho.dim_b()), blocks_(da_ * da_ * db_ * db_) {
    const Matrix& m = rho.matrix();
    for (Index a = 0; a < da_; ++a)
      for (Index c = 0; c < da_; ++c)
        for (Index i = 0; i < db_; ++i)
          for (Index j = 0; j < db_; ++j)
            blocks_[((a * da_ + c) * db_ + i) * db_ + j] =
                m(a * db_ + i, c * db_ + j);
    entropy_b_ = von_neumann_entropy(partial_trace(rho, Subsystem::B));
    if (db_ > 2) scratch_.resize(db_, db_);
  }

  Index dim_a() const { return da_; }

  /// Columns of `basis` are the measurement vectors.
  double operator()(const Matrix& basis) {
    ++evaluations_;
    double conditional = 0.0;
    for (Index k = 0; k < basis.cols(); ++k) {
      conditional += outcome_entropy(basis.col(k));
    }
    return entropy_b_ - conditional;
  }

  long evaluations() const { return evaluations_; }

 private:
  double outcome_entropy(const Vector& e) {
    if (db_ == 1) return 0.0;
    if (db_ == 2) {
      Complex x00 = 0.0, x01 = 0.0, x11 = 0.0;
      for (Index a = 0; a < da_; ++a) {
        for (Index c = 0; c < da_; ++c) {
          const Complex w = std::conj(e(a)) * e(c);
          const Complex* b = &blocks_[(a * da_ + c) * 4];
          x00 += w * b[0];
          x01 += w * b[1];
          x11 += w * b[3];
        }
      }
      const double t = x00.real() + x11.real();
      if (t < tol::kOutcomeCutoff) return 0.0;
      const double half_gap = std::sqrt(
          0.25 * (x00.real() - x11.real()) * (x00.real() - x11.real()) +
          std::norm(x01));
      const double x[2] = {0.5 * t + half_gap, 0.5 * t - half_gap};
      return weighted_entropy(x, 2, t);
    }
    scratch_.setZero();
    for (Index a = 0; a < da_; ++a) {
      for (Index c = 0; c < da_; ++c) {
        const Complex w = std::conj(e(a)) * e(c);
        const Complex* b = &blocks_[(a * da_ + c) * db_ * db_];
        for (Index i = 0; i < db_; ++i)
          for (Index j = 0; j < db_; ++j) scratch_(i, j) += w * b[i * db_ + j];
      }
    }
    const double t = scratch_.trace().real();
    if (t < tol::kOutcomeCutoff) return 0.0;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(scratch_, Eigen::EigenvaluesOnly);
    return weighted_entropy(solver.eigenvalues().data(), db_, t);
  }

  Index da_;
  Index db_;
  std::vector<Complex> blocks_;
  double entropy_b_ = 0.0;
  Matrix scratch_;
  long evaluations_ = 0;
};

Matrix bloch_basis(double theta, double phi) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const Complex e = std::polar(1.0, phi);
  Matrix u(2, 2);
  u << c, -std::conj(e) * s, e * s, c;
  return u;
}

struct Candidate {
  double value;
  Matrix basis;
};

ClassicalCorrelation finish(MeasuredInformation& f, const Candidate& best,
                            OptimizerTrace trace) {
  trace.evaluations = f.evaluations();
  // Gram–Schmidt polish so the stored measurement passes the 1e-10 check.
  Eigen::HouseholderQR<Matrix> qr(best.basis);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < q.cols(); ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  const double value = f(q);
  return {value, ProjectiveMeasurement(q), std::move(trace)};
}

struct GridScan {
  std::vector<double> values;  // row-major over (θ index, φ index)
  int n_theta;
  int n_phi;
  double theta(std::size_t k) const {
    return std::numbers::pi * double(k / n_phi) / n_theta;
  }
  double phi(std::size_t k) const {
    return 2.0 * std::numbers::pi * double(k % n_phi) / n_phi;
  }
};

GridScan scan_grid(MeasuredInformation& f, int n_theta, int n_phi) {
  if (n_theta < 1 || n_phi < 1) {
    throw ValidationError("grid strategy needs n_theta, n_phi >= 1");
  }
  GridScan g{{}, n_theta, n_phi};
  g.values.reserve(std::size_t(n_theta + 1) * n_phi);
  for (int i = 0; i <= n_theta; ++i) {
    for (int j = 0; j < n_phi; ++j) {
      g.values.push_back(f(bloch_basis(std::numbers::pi * i / n_theta,
                                       2.0 * std::numbers::pi * j / n_phi)));
    }
  }
  return g;
}

std::size_t argmax_first(const std::vector<double>& v) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < v.size(); ++k)
    if (v[k] > v[best]) best = k;
  return best;
}

ClassicalCorrelation run_grid(MeasuredInformation& f, const GridSearch& s) {
  const GridScan g = scan_grid(f, s.n_theta, s.n_phi);
  const std::size_t k = argmax_first(g.values);
  OptimizerTrace trace;
  trace.best_per_restart = {g.values[k]};
  return finish(f, {g.values[k], bloch_basis(g.theta(k), g.phi(k))},
                std::move(trace));
}

ClassicalCorrelation run_hybrid_qubit(MeasuredInformation& f, const Hybrid& s) {
  const GridScan g = scan_grid(f, s.n_theta, s.n_phi);
  std::vector<std::size_t> order(g.values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return g.values[a] > g.values[b];
  });

  Candidate best{g.values[order.front()],
                 bloch_basis(g.theta(order.front()), g.phi(order.front()))};
  OptimizerTrace trace;
  const double step = std::numbers::pi / s.n_theta;
  const int refine = std::min<int>(s.refine, static_cast<int>(order.size()));
  for (int r = 0; r < refine; ++r) {
    const std::size_t k = order[r];
    RealVector x0(2);
    x0 << g.theta(k), g.phi(k);
    auto objective = [&](const RealVector& x) { return f(bloch_basis(x(0), x(1))); };
    const auto res = nelder_mead_maximize<double>(objective, x0, step);
    trace.best_per_restart.push_back(res.value);
    if (res.value > best.value) best = {res.value, bloch_basis(res.x(0), res.x(1))};
  }
  trace.restarts = refine;
  return finish(f, best, std::move(trace));
}

ClassicalCorrelation run_multistart(MeasuredInformation& f,
                                    const BipartiteState& rho, int restarts,
                                    std::uint64_t seed) {
  const Index d = f.dim_a();
  std::vector<Matrix> starts;
  starts.push_back(eig_hermitian(partial_trace(rho.matrix(), rho.dim_a(),
                                               rho.dim_b(), Subsystem::A))
                       .vectors);
  Rng rng(seed);
  for (int r = 0; r < restarts; ++r) starts.push_back(random_unitary(d, rng));

  OptimizerTrace trace;
  Candidate best{-1.0, starts.front()};
  NelderMeadOptions opts;
  opts.max_evaluations = static_cast<int>(200 * std::max<Index>(1, d * (d - 1)));
  for (const Matrix& u0 : starts) {
    if (d == 1) {
      const double v = f(u0);
      trace.best_per_restart.push_back(v);
      if (v > best.value) best = {v, u0};
      continue;
    }
    auto objective = [&](const RealVector& x) { return f(givens_unitary(u0, x)); };
    const auto res = nelder_mead_maximize<double>(
        objective, RealVector::Zero(d * (d - 1)), 0.3, opts);
    trace.best_per_restart.push_back(res.value);
    if (res.value > best.value) best = {res.value, givens_unitary(u0, res.x)};
  }
  trace.restarts = static_cast<int>(starts.size());
  return finish(f, best, std::move(trace));
}

}  // namespace

ClassicalCorrelation classical_correlation(const BipartiteState& rho,
                                           const Strategy& strategy) {
  MeasuredInformation f(rho);
  return std::visit(
      [&](const auto& s) -> ClassicalCorrelation {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, GridSearch>) {
          if (rho.dim_a() != 2) {
            throw ValidationError("grid strategy requires a qubit A (dimA = " +
                                  std::to_string(rho.dim_a()) + ")");
          }
          return run_grid(f, s);
        } else if constexpr (std::is_same_v<S, MultiStart>) {
          return run_multistart(f, rho, s.restarts, s.seed);
        } else {
          if (rho.dim_a() == 2) return run_hybrid_qubit(f, s);
          return run_multistart(f, rho, s.restarts, s.seed);
        }
      },
      strategy);
}

DiscordResult discord(const BipartiteState& rho, const Strategy& strategy) {
  const double info = mutual_information(rho);
  ClassicalCorrelation cc = classical_correlation(rho, strategy);
  return {info - cc.value, std::move(cc.measurement), info, cc.value,
          std::move(cc.trace)};
}

}  // namespace dchan

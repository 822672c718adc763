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

#include <cmath>
#include <cstdio>

#include "dchan/classify.hpp"
#include "dchan/discord.hpp"

namespace dchan {

double max_probe_discord(const QuantumChannel& phi, Subsystem side,
                         Index dim_other, int n_probes, std::uint64_t seed) {
  const Index da = side == Subsystem::A ? phi.dim_in() : dim_other;
  const Index db = side == Subsystem::A ? dim_other : phi.dim_in();
  const Index oa = side == Subsystem::A ? phi.dim_out() : dim_other;
  const Index ob = side == Subsystem::A ? dim_other : phi.dim_out();
  const QuantumChannel ext = extend(phi, side, dim_other);

  std::vector<BipartiteState> probes = witness_probes(da, db);
  if (static_cast<int>(probes.size()) > n_probes)
    probes.erase(probes.begin() + n_probes, probes.end());
  for (std::uint64_t k = 0; static_cast<int>(probes.size()) < n_probes; ++k) {
    Rng rng(derive_seed(seed, k));
    probes.push_back(random_bipartite(da, db, HilbertSchmidt{}, rng));
  }
  double best = 0.0;
  for (const BipartiteState& p : probes) {
    const BipartiteState out(ext(p.matrix()), oa, ob);
    best = std::max(best, discord(out, Hybrid{}).value);
  }
  return best;
}

std::vector<SweepRow> tetrahedron_sweep(double step, Subsystem side,
                                        Index dim_other, int n_probes,
                                        std::uint64_t seed) {
  if (!(step > 0.0 && step <= 1.0))
    throw ValidationError("tetrahedron_sweep: step must lie in (0, 1]");
  const int n = static_cast<int>(std::floor(2.0 / step + 1e-9));
  std::vector<SweepRow> rows;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      for (int k = 0; k <= n; ++k) {
        const UnitalQubitParams p{-1.0 + i * step, -1.0 + j * step, -1.0 + k * step};
        if (!p.is_cptp()) continue;
        const QuantumChannel ch = make_unital_qubit(p);
        const bool is_db =
            side == Subsystem::A
                ? is_qc_channel(ch).verdict.kind == VerdictKind::Yes
                : is_point_channel(ch).kind == VerdictKind::Yes;
        const bool is_eb = is_entanglement_breaking(ch).kind == VerdictKind::Yes;
        rows.push_back({p, is_db, is_eb,
                        max_probe_discord(ch, side, dim_other, n_probes, seed)});
      }
    }
  }
  return rows;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "l1,l2,l3,is_db,is_eb,max_discord\n";
  char line[160];
  for (const SweepRow& r : rows) {
    std::snprintf(line, sizeof line, "%.9g,%.9g,%.9g,%s,%s,%.9g\n", r.lambda.l1,
                  r.lambda.l2, r.lambda.l3, r.is_db ? "true" : "false",
                  r.is_eb ? "true" : "false", r.max_discord);
    os << line;
  }
}

}  // namespace dchan

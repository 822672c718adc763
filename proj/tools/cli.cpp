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

#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <sstream>

#include "dchan/dchan.hpp"

namespace dchan::cli {

namespace {

constexpr double kTransferScreen = 1e-8;

struct Common {
  std::uint64_t seed = kDefaultSeed;
  double tol_cq = tol::kCq;
  double tol_cptp = tol::kCptp;
  std::string out;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  sub->add_option("--tol-cq", c.tol_cq, "Classical-quantum block tolerance")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sub->add_option("--tol-cptp", c.tol_cptp, "CPTP tolerance for channel input")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sub->add_option("--out", c.out, "Output file (default: standard output)");
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Subsystem parse_side(const std::string& s) {
  return s == "A" ? Subsystem::A : Subsystem::B;
}

std::pair<Index, Index> ab_dims(const ChannelFile& file, Index dim_a, Index dim_b,
                                const std::string& where) {
  const Index d = file.channel.dim_in();
  if (file.channel.dim_out() != d)
    throw InputError(where + ": channel on AB must have d_in = d_out");
  if (dim_a > 0 && dim_b > 0) {
    if (dim_a * dim_b != d)
      throw InputError("--dim-a/--dim-b: product " + std::to_string(dim_a * dim_b) +
                       " does not match channel dimension " + std::to_string(d));
    return {dim_a, dim_b};
  }
  if (file.dims) return *file.dims;
  if (dim_a > 0 && d % dim_a == 0) return {dim_a, d / dim_a};
  if (dim_b > 0 && d % dim_b == 0) return {d / dim_b, dim_b};
  throw InputError(where + ": dims missing; give \"dims\" in the file or "
                   "--dim-a/--dim-b");
}

Json witness_json(const BipartiteState& input, const Matrix& output, Index dim_a,
                  Index dim_b, double residual) {
  return {{"input", state_to_json(input)},
          {"output", {{"dims", Json::array({dim_a, dim_b})},
                      {"matrix", matrix_to_json(output)}}},
          {"residual", residual}};
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discord-destroying channel toolkit"};
  app.require_subcommand(1);

  Common common;

  std::string state_path, strategy = "hybrid";
  int n_theta = 32, n_phi = 64, restarts = 20;
  auto* c_discord = app.add_subcommand("discord", "Quantum discord of a bipartite state");
  c_discord->add_option("state", state_path, "State JSON file")->required();
  c_discord->add_option("--strategy", strategy, "Optimizer")
      ->check(CLI::IsMember({"hybrid", "grid", "multistart"}))
      ->capture_default_str();
  c_discord->add_option("--n-theta", n_theta)->check(CLI::PositiveNumber)->capture_default_str();
  c_discord->add_option("--n-phi", n_phi)->check(CLI::PositiveNumber)->capture_default_str();
  c_discord->add_option("--restarts", restarts)->check(CLI::NonNegativeNumber)->capture_default_str();
  add_common(c_discord, common);

  std::string channel_path, side;
  Index dim_a = 0, dim_b = 0;
  auto* c_classify = app.add_subcommand("classify", "Classify a channel");
  c_classify->add_option("channel", channel_path, "Channel JSON file")->required();
  c_classify->add_option("--side", side, "Where the channel acts")
      ->required()
      ->check(CLI::IsMember({"A", "B", "AB"}));
  c_classify->add_option("--dim-a", dim_a, "Dimension of A")->check(CLI::PositiveNumber);
  c_classify->add_option("--dim-b", dim_b, "Dimension of B")->check(CLI::PositiveNumber);
  add_common(c_classify, common);

  double step = 0.25;
  std::string sweep_side = "A";
  Index dim_other = 2;
  int probes = 20;
  auto* c_sweep = app.add_subcommand("tetra-sweep", "Sweep the unital qubit tetrahedron");
  c_sweep->add_option("--step", step, "Grid spacing in (0, 1]")->required();
  c_sweep->add_option("--side", sweep_side)
      ->check(CLI::IsMember({"A", "B"}))
      ->capture_default_str();
  c_sweep->add_option("--dim-other", dim_other)->check(CLI::PositiveNumber)->capture_default_str();
  c_sweep->add_option("--probes", probes)->check(CLI::PositiveNumber)->capture_default_str();
  add_common(c_sweep, common);

  std::string spec_path;
  bool random_spec = false;
  auto* c_gen = app.add_subcommand("gen-da", "Build a discord-annihilating channel");
  auto* spec_opt = c_gen->add_option("--spec", spec_path, "DA spec JSON file");
  auto* random_opt = c_gen->add_flag("--random", random_spec, "Draw a random spec");
  spec_opt->excludes(random_opt);
  c_gen->add_option("--dim-a", dim_a, "Dimension of A (random mode)")->check(CLI::PositiveNumber);
  c_gen->add_option("--dim-b", dim_b, "Dimension of B (random mode)")->check(CLI::PositiveNumber);
  add_common(c_gen, common);

  int samples = 200;
  std::string witness_path = "da_witness.json";
  auto* c_verify = app.add_subcommand("verify-da", "Certify a channel as discord-annihilating");
  c_verify->add_option("--channel", channel_path, "Channel JSON file")->required();
  c_verify->add_option("--samples", samples)->check(CLI::PositiveNumber)->capture_default_str();
  c_verify->add_option("--dim-a", dim_a)->check(CLI::PositiveNumber);
  c_verify->add_option("--dim-b", dim_b)->check(CLI::PositiveNumber);
  c_verify->add_option("--witness-out", witness_path, "Where to write a counterexample")
      ->capture_default_str();
  add_common(c_verify, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  try {
    if (*c_discord) {
      const BipartiteState rho = bipartite_state_from_json(read_json_file(state_path));
      Strategy s = Hybrid{n_theta, n_phi, 5, restarts, common.seed};
      if (strategy == "grid") s = GridSearch{n_theta, n_phi};
      if (strategy == "multistart") s = MultiStart{restarts, common.seed};
      const DiscordResult r = discord(rho, s);
      Json j = to_json(r);
      j["dims"] = Json::array({rho.dim_a(), rho.dim_b()});
      j["strategy"] = strategy;
      emit(dump(j), common.out, out);
      return kSuccess;
    }
    if (*c_classify) {
      const ChannelFile file =
          channel_from_json(read_json_file(channel_path), "channel", common.tol_cptp);
      ChannelContext ctx = ActsOnA{dim_b > 0 ? dim_b : 2};
      if (side == "B") ctx = ActsOnB{dim_a > 0 ? dim_a : 2};
      if (side == "AB") {
        const auto [a, b] = ab_dims(file, dim_a, dim_b, channel_path);
        ctx = ActsOnAB{a, b};
      }
      const ClassificationReport r =
          classify_channel(file.channel, ctx, common.seed, common.tol_cq);
      emit(dump({{"side", side}, {"report", to_json(r)}}), common.out, out);
      return kSuccess;
    }
    if (*c_sweep) {
      if (!(step > 0.0 && step <= 1.0))
        throw InputError("--step: must lie in (0, 1], got " + std::to_string(step));
      const auto rows =
          tetrahedron_sweep(step, parse_side(sweep_side), dim_other, probes, common.seed);
      std::ostringstream csv;
      write_sweep_csv(csv, rows);
      emit(csv.str(), common.out, out);
      return kSuccess;
    }
    if (*c_gen) {
      DAChannelSpec spec;
      if (!spec_path.empty()) {
        spec = da_spec_from_json(read_json_file(spec_path), "spec", common.tol_cptp);
      } else if (random_spec) {
        Rng rng(common.seed);
        spec = random_da_spec(dim_a > 0 ? dim_a : 2, dim_b > 0 ? dim_b : 2, rng);
      } else {
        throw InputError("gen-da: give --spec FILE or --random");
      }
      const QuantumChannel phi = build_da_channel(spec);
      const Json channel = channel_to_json(phi, std::make_pair(spec.dim_a, spec.dim_b));
      if (common.out.empty()) {
        out << dump({{"spec", da_spec_to_json(spec)}, {"channel", channel}});
      } else {
        write_text_file(common.out, dump(channel));
        out << dump({{"spec", da_spec_to_json(spec)}, {"channel_file", common.out}});
      }
      return kSuccess;
    }
    if (*c_verify) {
      const ChannelFile file =
          channel_from_json(read_json_file(channel_path), "channel", common.tol_cptp);
      const auto [a, b] = ab_dims(file, dim_a, dim_b, channel_path);
      const CertifyReport cert =
          apply_and_certify(file.channel, a, b, samples, common.seed, common.tol_cq);
      const RealTransfer rt = real_transfer(file.channel);
      const double ratio =
          rt.min_singular_value() / std::max(rt.max_singular_value(), 1e-300);
      const bool screen = ratio < kTransferScreen;
      Json report = {{"dims", Json::array({a, b})},
                     {"certification", to_json(cert)},
                     {"transfer_ratio", ratio},
                     {"transfer_screen_passed", screen},
                     {"passed", cert.passed() && screen}};
      if (cert.passed() && screen) {
        emit(dump(report), common.out, out);
        return kSuccess;
      }
      Json witness;
      if (!cert.passed()) {
        witness = witness_json(*cert.failing_input, *cert.failing_output, a, b,
                               is_cq_exact(*cert.failing_output, a, b, common.tol_cq).residual);
      } else if (auto w = find_noncq_output(file.channel, a, b, a, b, common.seed, 500,
                                            common.tol_cq)) {
        witness = witness_json(w->input, w->output.matrix(), a, b, w->magnitude);
      } else {
        witness = {{"note", "transfer matrix has full rank; no discordant output "
                            "found within budget"}};
      }
      write_text_file(witness_path, dump(witness));
      report["witness_file"] = witness_path;
      emit(dump(report), common.out, out);
      err << "verify-da: channel is not discord-annihilating; witness written to "
          << witness_path << "\n";
      return kCertificationFailure;
    }
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}

}  // namespace dchan::cli

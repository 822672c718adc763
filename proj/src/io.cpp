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

#include "dchan/io.hpp"

#include <fstream>
#include <sstream>

namespace dchan {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw InputError(path + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(path + "." + key, "missing field");
  return *it;
}

Index positive_index(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 1)
    fail(path, "expected a positive integer");
  return static_cast<Index>(j.get<long long>());
}

std::pair<Index, Index> read_dims(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty() || j.size() > 2)
    fail(path, "expected [dA, dB] or [d]");
  const Index a = positive_index(j[0], path + "[0]");
  const Index b = j.size() == 2 ? positive_index(j[1], path + "[1]") : 1;
  return {a, b};
}

Complex entry(const Json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  fail(path, "expected a number or [re, im]");
}

Json number_pair(Complex z) { return Json::array({z.real(), z.imag()}); }

// Global phase fixed so the first significant component is real positive.
Vector fix_phase(Vector v) {
  for (Index k = 0; k < v.size(); ++k) {
    if (std::abs(v(k)) > 1e-8) {
      v *= std::conj(v(k)) / std::abs(v(k));
      v(k) = std::abs(v(k));
      break;
    }
  }
  return v;
}

DensityOperator density_from_json(const Json& j, Index dim, const std::string& path) {
  try {
    return DensityOperator(matrix_from_json(j, dim, dim, path));
  } catch (const InputError&) {
    throw;
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

std::string kind_name(VerdictKind k) { return to_string(k); }

Json dims_json(Index a, Index b) { return Json::array({a, b}); }

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) out.push_back(number_pair(m(r, c)));
  return out;
}

Matrix matrix_from_json(const Json& j, Index rows, Index cols,
                        const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of entries");
  if (static_cast<Index>(j.size()) != rows * cols)
    fail(path, "expected " + std::to_string(rows * cols) + " entries (" +
                   std::to_string(rows) + "x" + std::to_string(cols) + "), got " +
                   std::to_string(j.size()));
  Matrix m(rows, cols);
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c)
      m(r, c) = entry(j[r * cols + c], path + "[" + std::to_string(r * cols + c) + "]");
  return m;
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Index k = 0; k < v.size(); ++k) out.push_back(number_pair(v(k)));
  return out;
}

Vector vector_from_json(const Json& j, Index size, const std::string& path) {
  return matrix_from_json(j, size, 1, path).col(0);
}

Json state_to_json(const BipartiteState& rho) {
  return {{"dims", dims_json(rho.dim_a(), rho.dim_b())},
          {"matrix", matrix_to_json(rho.matrix())}};
}

Json state_to_json(const DensityOperator& rho) {
  return {{"dims", Json::array({rho.dim()})}, {"matrix", matrix_to_json(rho.matrix())}};
}

BipartiteState bipartite_state_from_json(const Json& j, const std::string& path) {
  const auto [da, db] = read_dims(field(j, "dims", path), path + ".dims");
  const std::string mpath = path + ".matrix";
  const Matrix m = matrix_from_json(field(j, "matrix", path), da * db, da * db, mpath);
  try {
    return BipartiteState(m, da, db);
  } catch (const Error& e) {
    fail(mpath, e.what());
  }
}

Json channel_to_json(const QuantumChannel& phi,
                     std::optional<std::pair<Index, Index>> dims) {
  Json data = Json::array();
  const QuantumChannel canonical = phi.canonical();
  for (const Matrix& k : canonical.kraus()) data.push_back(matrix_to_json(k));
  Json out = {{"type", "kraus"},
              {"d_in", phi.dim_in()},
              {"d_out", phi.dim_out()},
              {"data", data}};
  if (dims) out["dims"] = dims_json(dims->first, dims->second);
  return out;
}

ChannelFile channel_from_json(const Json& j, const std::string& path, double tol) {
  const Json& type = field(j, "type", path);
  if (!type.is_string()) fail(path + ".type", "expected \"kraus\" or \"choi\"");
  const Index din = positive_index(field(j, "d_in", path), path + ".d_in");
  const Index dout = positive_index(field(j, "d_out", path), path + ".d_out");
  const Json& data = field(j, "data", path);
  const std::string dpath = path + ".data";

  std::optional<std::pair<Index, Index>> dims;
  if (j.contains("dims")) {
    dims = read_dims(j["dims"], path + ".dims");
    if (dims->first * dims->second != din || din != dout)
      fail(path + ".dims", "product of dims must equal d_in = d_out");
  }
  try {
    if (type == "kraus") {
      if (!data.is_array() || data.empty())
        fail(dpath, "expected a nonempty list of Kraus operators");
      std::vector<Matrix> kraus;
      for (std::size_t k = 0; k < data.size(); ++k)
        kraus.push_back(matrix_from_json(data[k], dout, din,
                                         dpath + "[" + std::to_string(k) + "]"));
      return {QuantumChannel::from_kraus(std::move(kraus), tol), dims};
    }
    if (type == "choi") {
      const Matrix choi = matrix_from_json(data, din * dout, din * dout, dpath);
      return {QuantumChannel::from_choi(choi, din, dout, tol), dims};
    }
  } catch (const InputError&) {
    throw;
  } catch (const Error& e) {
    fail(dpath, e.what());
  }
  fail(path + ".type", "expected \"kraus\" or \"choi\"");
}

Json subset_spec_to_json(const ConvexCQSubsetSpec& spec) {
  Json both = Json::array(), fixed = Json::array(), point = Json::array();
  for (const BothEntry& e : spec.both)
    both.push_back({{"psi", vector_to_json(fix_phase(e.psi))},
                    {"state", matrix_to_json(e.state.matrix())}});
  for (const FixedEntry& e : spec.fixed) {
    Json gens = Json::array();
    for (const DensityOperator& g : e.generators) gens.push_back(matrix_to_json(g.matrix()));
    fixed.push_back({{"psi", vector_to_json(fix_phase(e.psi))}, {"generators", gens}});
  }
  for (const PointEntry& e : spec.point)
    point.push_back({{"projector", matrix_to_json(e.projector)},
                     {"state", matrix_to_json(e.state.matrix())}});
  return {{"dims", dims_json(spec.dim_a, spec.dim_b)},
          {"both", both},
          {"fixed", fixed},
          {"point", point}};
}

ConvexCQSubsetSpec subset_spec_from_json(const Json& j, const std::string& path) {
  ConvexCQSubsetSpec spec;
  std::tie(spec.dim_a, spec.dim_b) = read_dims(field(j, "dims", path), path + ".dims");
  auto list = [&](const char* key) {
    if (!j.contains(key)) return Json::array();
    if (!j[key].is_array()) fail(path + "." + key, "expected an array");
    return j[key];
  };
  const Json both = list("both"), fixed = list("fixed"), point = list("point");
  for (std::size_t i = 0; i < both.size(); ++i) {
    const std::string p = path + ".both[" + std::to_string(i) + "]";
    spec.both.push_back(
        {vector_from_json(field(both[i], "psi", p), spec.dim_a, p + ".psi"),
         density_from_json(field(both[i], "state", p), spec.dim_b, p + ".state")});
  }
  for (std::size_t i = 0; i < fixed.size(); ++i) {
    const std::string p = path + ".fixed[" + std::to_string(i) + "]";
    FixedEntry e{vector_from_json(field(fixed[i], "psi", p), spec.dim_a, p + ".psi"), {}};
    if (fixed[i].contains("generators")) {
      const Json& g = fixed[i]["generators"];
      if (!g.is_array()) fail(p + ".generators", "expected an array");
      for (std::size_t k = 0; k < g.size(); ++k)
        e.generators.push_back(density_from_json(
            g[k], spec.dim_b, p + ".generators[" + std::to_string(k) + "]"));
    }
    spec.fixed.push_back(std::move(e));
  }
  for (std::size_t i = 0; i < point.size(); ++i) {
    const std::string p = path + ".point[" + std::to_string(i) + "]";
    spec.point.push_back(
        {matrix_from_json(field(point[i], "projector", p), spec.dim_a, spec.dim_a,
                          p + ".projector"),
         density_from_json(field(point[i], "state", p), spec.dim_b, p + ".state")});
  }
  if (const SpecCheck c = validate_spec(spec); !c) fail(path, c.diagnostic);
  return spec;
}

Json da_spec_to_json(const DAChannelSpec& spec) {
  Json partition = Json::array();
  for (const PartitionEntry& e : spec.partition) {
    Json entry;
    if (e.rank() == 1) {
      entry["kind"] = "rank1";
      entry["psi"] = vector_to_json(fix_phase(range_basis(e.projector).col(0)));
    } else {
      entry["kind"] = "multi";
      entry["projector"] = matrix_to_json(e.projector);
    }
    if (const auto* pt = std::get_if<PointTo>(&e.action)) {
      entry["action"] = "point";
      entry["state"] = matrix_to_json(pt->state.matrix());
    } else {
      entry["action"] = "identity";
    }
    partition.push_back(std::move(entry));
  }
  Json out = {{"dims", dims_json(spec.dim_a, spec.dim_b)}, {"partition", partition}};
  if (spec.pre_channel) out["pre_channel"] = channel_to_json(*spec.pre_channel);
  return out;
}

DAChannelSpec da_spec_from_json(const Json& j, const std::string& path, double tol) {
  DAChannelSpec spec;
  std::tie(spec.dim_a, spec.dim_b) = read_dims(field(j, "dims", path), path + ".dims");
  if (j.contains("pre_channel") && !j["pre_channel"].is_null())
    spec.pre_channel = channel_from_json(j["pre_channel"], path + ".pre_channel", tol).channel;
  const Json& part = field(j, "partition", path);
  if (!part.is_array()) fail(path + ".partition", "expected an array");
  for (std::size_t i = 0; i < part.size(); ++i) {
    const std::string p = path + ".partition[" + std::to_string(i) + "]";
    const Json& e = part[i];
    const Json& kind = field(e, "kind", p);
    const Json& action = field(e, "action", p);
    if (action != "point" && action != "identity")
      fail(p + ".action", "expected \"point\" or \"identity\"");
    BlockAction act = IdentityAction{};
    if (action == "point")
      act = PointTo{density_from_json(field(e, "state", p), spec.dim_b, p + ".state")};
    if (kind == "rank1") {
      const Vector psi = vector_from_json(field(e, "psi", p), spec.dim_a, p + ".psi");
      if (psi.norm() == 0.0) fail(p + ".psi", "zero vector");
      spec.partition.push_back(PartitionEntry::rank1(psi, std::move(act)));
    } else if (kind == "multi") {
      const Matrix proj = matrix_from_json(field(e, "projector", p), spec.dim_a,
                                           spec.dim_a, p + ".projector");
      if (action == "identity")
        fail(p + ".action", "identity action on a multi-dimensional subspace; "
                            "subspaces of dimension two or more must carry a "
                            "point channel");
      spec.partition.push_back({proj, std::move(act)});
    } else {
      fail(p + ".kind", "expected \"rank1\" or \"multi\"");
    }
  }
  if (const SpecCheck c = validate_da_spec(spec); !c) fail(path, c.diagnostic);
  return spec;
}

Json to_json(const DiscordResult& r) {
  return {{"discord", r.value},
          {"mutual_information", r.mutual_information},
          {"classical_correlation", r.classical_correlation},
          {"optimal_measurement", matrix_to_json(r.optimal_measurement.basis())},
          {"evaluations", r.optimizer_trace.evaluations},
          {"restarts", r.optimizer_trace.restarts}};
}

Json to_json(const Verdict& v) {
  Json out = {{"kind", kind_name(v.kind)}, {"residual", v.residual}, {"notes", v.notes}};
  if (v.witness) {
    std::visit(
        [&](const auto& w) {
          using T = std::decay_t<decltype(w)>;
          if constexpr (std::is_same_v<T, InputPairWitness>) {
            out["witness"] = {{"type", "input_pair"},
                              {"x", matrix_to_json(w.x)},
                              {"y", matrix_to_json(w.y)},
                              {"magnitude", w.magnitude}};
          } else if constexpr (std::is_same_v<T, StateWitness>) {
            out["witness"] = {{"type", "state"},
                              {"input", state_to_json(w.input)},
                              {"output", state_to_json(w.output)},
                              {"magnitude", w.magnitude}};
          } else {
            out["witness"] = {{"type", "eigenvector"},
                              {"vector", vector_to_json(w.vector)},
                              {"eigenvalue", w.magnitude}};
          }
        },
        *v.witness);
  }
  return out;
}

Json to_json(const ClassificationReport& r) {
  Json out = {{"label", r.label}, {"verdict", to_json(r.verdict)}};
  if (r.entanglement_breaking)
    out["entanglement_breaking"] = to_json(*r.entanglement_breaking);
  if (r.qc_form) {
    Json povm = Json::array();
    for (const Matrix& f : r.qc_form->povm) povm.push_back(matrix_to_json(f));
    out["qc_form"] = {{"povm", povm}, {"basis", matrix_to_json(r.qc_form->basis)}};
  }
  if (r.da_spec) {
    Json spec = da_spec_to_json(*r.da_spec);
    spec.erase("pre_channel");  // the channel itself
    out["da_spec"] = spec;
  }
  if (r.transfer_ratio) out["transfer_ratio"] = *r.transfer_ratio;
  if (r.discordant_output)
    out["discordant_output"] = {{"input", state_to_json(r.discordant_output->input)},
                                {"output", state_to_json(r.discordant_output->output)},
                                {"residual", r.discordant_output->magnitude}};
  return out;
}

Json to_json(const CertifyReport& r) {
  Json out = {{"inputs", r.inputs},
              {"passed", r.passed()},
              {"worst_residual", r.worst_residual}};
  if (r.first_failure) {
    out["first_failure"] = *r.first_failure;
    out["failing_input"] = state_to_json(*r.failing_input);
    out["failing_output"] = matrix_to_json(*r.failing_output);
  }
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(path, "cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, column = 1;
    for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    fail(path, "invalid JSON at line " + std::to_string(line) + ", column " +
                   std::to_string(column));
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError(path + ": cannot open for writing");
  out << text;
  if (!out) throw NumericalError(path + ": write failed");
}

}  // namespace dchan

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

#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <utility>

#include "dchan/annihilators.hpp"
#include "dchan/classify.hpp"
#include "dchan/discord.hpp"
#include "dchan/structures.hpp"

// JSON encodings. Complex arrays are flat, row-major lists of [re, im]
// pairs; a bare number is accepted for a real entry.
//
//   state:    {"dims": [dA, dB] | [d], "matrix": [...]}
//   channel:  {"type": "kraus" | "choi", "d_in": n, "d_out": m,
//              "data": [[...], ...] | [...], "dims": [dA, dB]?}
//   subset:   {"dims": [dA, dB], "both": [{"psi", "state"}],
//              "fixed": [{"psi", "generators"}], "point": [{"projector", "state"}]}
//   da spec:  {"dims": [dA, dB], "pre_channel": channel?,
//              "partition": [{"kind": "rank1" | "multi", "psi" | "projector",
//                             "action": "point" | "identity", "state"?}]}

namespace dchan {

using Json = nlohmann::json;

/// Malformed input. The message starts with the offending JSON path.
class InputError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, Index rows, Index cols,
                        const std::string& path);
Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j, Index size, const std::string& path);

Json state_to_json(const BipartiteState& rho);
Json state_to_json(const DensityOperator& rho);
/// Accepts dims of length 1 (read as d ⊗ 1) or 2.
BipartiteState bipartite_state_from_json(const Json& j,
                                         const std::string& path = "state");

struct ChannelFile {
  QuantumChannel channel;
  std::optional<std::pair<Index, Index>> dims;  // AB factorization, if given
};

/// Writes the canonical Kraus form.
Json channel_to_json(const QuantumChannel& phi,
                     std::optional<std::pair<Index, Index>> dims = std::nullopt);
ChannelFile channel_from_json(const Json& j, const std::string& path = "channel",
                              double tol = tol::kCptp);

Json subset_spec_to_json(const ConvexCQSubsetSpec& spec);
ConvexCQSubsetSpec subset_spec_from_json(const Json& j,
                                         const std::string& path = "spec");

Json da_spec_to_json(const DAChannelSpec& spec);
/// Checks the partition with validate_da_spec and throws InputError on
/// violation.
DAChannelSpec da_spec_from_json(const Json& j, const std::string& path = "spec",
                                double tol = tol::kCptp);

Json to_json(const DiscordResult& r);
Json to_json(const Verdict& v);
Json to_json(const ClassificationReport& r);
Json to_json(const CertifyReport& r);

/// Parse errors report line and column.
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace dchan

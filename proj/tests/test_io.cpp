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

#include <filesystem>
#include <fstream>

#include "dchan/dchan.hpp"
#include "dchan/io.hpp"

using namespace dchan;

namespace {

template <typename F>
std::string input_error(F&& f) {
  try {
    f();
  } catch (const InputError& e) {
    return e.what();
  }
  return {};
}

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.rfind(prefix, 0) == 0;
}

}  // namespace

TEST_CASE("matrix encoding", "[io]") {
  Matrix m(2, 2);
  m << Complex(1, 2), 3, Complex(0, -1), 0.5;
  const Json j = matrix_to_json(m);
  CHECK(j.size() == 4);
  CHECK((matrix_from_json(j, 2, 2, "m") - m).norm() == 0.0);
  CHECK(matrix_from_json(Json::parse("[1, 0, 0, 1]"), 2, 2, "m") == Matrix::Identity(2, 2));
  CHECK(starts_with(input_error([&] { matrix_from_json(j, 3, 3, "m"); }), "m:"));
  CHECK(starts_with(input_error([] { matrix_from_json(Json::parse("[1, \"x\"]"), 1, 2, "m"); }),
                    "m[1]:"));
}

TEST_CASE("state round trip", "[io]") {
  Rng rng(71);
  const BipartiteState rho = random_bipartite(3, 2, HilbertSchmidt{}, rng);
  const BipartiteState back = bipartite_state_from_json(state_to_json(rho));
  CHECK(back.dim_a() == 3);
  CHECK(back.dim_b() == 2);
  CHECK((back.matrix() - rho.matrix()).norm() < 1e-15);

  const DensityOperator single = random_density(2, HilbertSchmidt{}, rng);
  CHECK(bipartite_state_from_json(state_to_json(single)).dim_b() == 1);

  SECTION("error paths name the field") {
    Json j = state_to_json(rho);
    j.erase("dims");
    CHECK(starts_with(input_error([&] { bipartite_state_from_json(j); }), "state.dims:"));
    Json k = state_to_json(rho);
    k["dims"] = Json::array({2, 2});
    CHECK(starts_with(input_error([&] { bipartite_state_from_json(k); }), "state.matrix:"));
    Json neg = Json::parse(R"({"dims": [2], "matrix": [2, 0, 0, -1]})");
    CHECK(starts_with(input_error([&] { bipartite_state_from_json(neg); }), "state.matrix:"));
  }
}

TEST_CASE("channel round trip", "[io]") {
  Rng rng(72);
  const QuantumChannel phi = random_channel(2, 3, 2, rng);
  const ChannelFile back = channel_from_json(channel_to_json(phi));
  CHECK(choi_distance(back.channel, phi) < 1e-12);
  CHECK_FALSE(back.dims.has_value());

  const QuantumChannel ab = random_channel(4, 4, 2, rng);
  const ChannelFile with_dims = channel_from_json(channel_to_json(ab, std::pair<Index, Index>{2, 2}));
  REQUIRE(with_dims.dims.has_value());
  CHECK(with_dims.dims->first == 2);

  Json choi = {{"type", "choi"}, {"d_in", 2}, {"d_out", 2},
               {"data", matrix_to_json(identity_channel(2).choi())}};
  CHECK(choi_distance(channel_from_json(choi).channel, identity_channel(2)) < 1e-12);

  SECTION("errors") {
    Json bad = channel_to_json(phi);
    bad["type"] = "stinespring";
    CHECK(starts_with(input_error([&] { channel_from_json(bad); }), "channel.type:"));
    Json scaled = channel_to_json(phi);
    scaled["data"][0][0] = Json::array({5.0, 0.0});
    CHECK(starts_with(input_error([&] { channel_from_json(scaled); }), "channel.data:"));
    Json dims = channel_to_json(ab);
    dims["dims"] = Json::array({3, 2});
    CHECK(starts_with(input_error([&] { channel_from_json(dims); }), "channel.dims:"));
    Json missing = channel_to_json(phi);
    missing.erase("d_in");
    CHECK(starts_with(input_error([&] { channel_from_json(missing); }), "channel.d_in:"));
  }
}

TEST_CASE("spec round trips", "[io]") {
  Rng rng(73);
  SECTION("subset spec") {
    ConvexCQSubsetSpec s;
    s.dim_a = 3;
    s.dim_b = 2;
    const Matrix u = random_unitary(3, rng);
    s.both.push_back({u.col(0), random_density(2, HilbertSchmidt{}, rng)});
    s.fixed.push_back({u.col(1), {random_density(2, HilbertSchmidt{}, rng)}});
    s.fixed.push_back({u.col(2), {}});
    const ConvexCQSubsetSpec back = subset_spec_from_json(subset_spec_to_json(s));
    REQUIRE(back.size() == 3);
    CHECK(validate_spec(back).ok);
    const BipartiteState rho = sample_state(s, 5);
    CHECK(membership(back, rho).member);
  }
  SECTION("annihilator spec") {
    const DAChannelSpec s = random_da_spec(3, 2, rng);
    const DAChannelSpec back = da_spec_from_json(da_spec_to_json(s));
    CHECK(back.partition.size() == s.partition.size());
    CHECK(choi_distance(build_da_channel(back), build_da_channel(s)) < 1e-10);
  }
  SECTION("identity on a block is rejected") {
    const Json j = Json::parse(R"({"dims": [2, 2], "partition": [
        {"kind": "multi", "projector": [1, 0, 0, 1], "action": "identity"}]})");
    const std::string msg = input_error([&] { da_spec_from_json(j); });
    CHECK(starts_with(msg, "spec"));
    CHECK(msg.find("point channel") != std::string::npos);
  }
}

TEST_CASE("reports serialize", "[io]") {
  const DiscordResult d = discord(maximally_entangled(2, 2));
  const Json j = to_json(d);
  CHECK(j.at("discord").get<double>() == Catch::Approx(1.0).margin(1e-6));
  const Json c = to_json(classify_channel(make_depolarizing_qubit(0.5), ActsOnA{2}));
  CHECK(c.at("label") == "not DB-A");
  CHECK(c.contains("verdict"));
}

TEST_CASE("file helpers", "[io]") {
  const auto dir = std::filesystem::temp_directory_path() / "dchan_io_test";
  std::filesystem::create_directories(dir);
  const std::string good = (dir / "good.json").string();
  write_text_file(good, R"({"a": 1})");
  CHECK(read_json_file(good).at("a") == 1);

  const std::string bad = (dir / "bad.json").string();
  write_text_file(bad, "{\n  \"a\": 1,\n  \"b\": ]\n}\n");
  const std::string msg = input_error([&] { read_json_file(bad); });
  CHECK(msg.find("line 3") != std::string::npos);
  CHECK(msg.find("column") != std::string::npos);
  CHECK_FALSE(input_error([&] { read_json_file((dir / "absent.json").string()); }).empty());
  std::filesystem::remove_all(dir);
}

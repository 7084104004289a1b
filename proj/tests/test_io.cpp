// Copyright 2026 The Nucleo Authors.
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

#include <gtest/gtest.h>

#include <random>
#include <string>

#include "nucleo/io.hpp"
#include "support.hpp"

namespace nucleo::io {
namespace {

using nucleo::testing::q;

const std::string kData = NUCLEO_DATA_DIR;

std::string location_of(auto&& parse) {
  try {
    parse();
  } catch (const ParseError& e) {
    return e.location();
  }
  return "<accepted>";
}

TEST(ParseNetwork, BundledNetworkMatchesFixture) {
  FlowNetwork from_file = parse_network(read_file(kData + "/flow10.json"), "flow10.json");
  FlowNetwork built = nucleo::testing::flow10();
  ASSERT_EQ(from_file.edges().size(), built.edges().size());
  for (std::size_t k = 0; k < built.edges().size(); ++k) {
    EXPECT_EQ(from_file.edges()[k].id, built.edges()[k].id);
    EXPECT_EQ(from_file.edges()[k].capacity, built.edges()[k].capacity);
    EXPECT_EQ(from_file.edges()[k].owner, built.edges()[k].owner);
    EXPECT_EQ(from_file.edges()[k].tail, built.edges()[k].tail);
    EXPECT_EQ(from_file.edges()[k].head, built.edges()[k].head);
  }
}

TEST(ParseNetwork, CapacityForms) {
  FlowNetwork net = parse_network(R"({"nodes": ["s", "a", "t"], "source": "s", "sink": "t", "edges": [
      {"id": "e1", "tail": "s", "head": "a", "capacity": "7/3", "owner": 1},
      {"id": "e2", "tail": "a", "head": "t", "capacity": "0.25", "owner": 2},
      {"id": "e3", "tail": "s", "head": "t", "capacity": 1.5, "owner": 2}]})");
  EXPECT_EQ(net.edges()[0].capacity, q("7/3"));
  EXPECT_EQ(net.edges()[1].capacity, q("1/4"));
  EXPECT_EQ(net.edges()[2].capacity, q("3/2"));
}

TEST(ParseNetwork, ErrorLocations) {
  const char* base = R"({"nodes": ["s", "t"], "source": "s", "sink": "t", "edges": [%s]})";
  auto with_edges = [&](const std::string& edges) {
    std::string text = base;
    text.replace(text.find("%s"), 2, edges);
    return text;
  };
  EXPECT_EQ(location_of([&] {
              parse_network(with_edges(R"({"id": "f1", "tail": "s", "head": "t", "capacity": "x", "owner": 1})"));
            }),
            "/edges/0/capacity");
  EXPECT_EQ(location_of([&] {
              parse_network(with_edges(R"({"id": "f1", "tail": "s", "head": "t", "capacity": 1, "owner": 0})"));
            }),
            "/edges/0/owner");
  EXPECT_EQ(location_of([&] {
              parse_network(with_edges(R"({"id": "f1", "tail": "s", "head": "t", "capacity": 1.5e-7, "owner": 1})"));
            }),
            "/edges/0/capacity");
  EXPECT_EQ(location_of([&] { parse_network(with_edges(R"({"id": "f1", "tail": "s", "capacity": 1, "owner": 1})")); }),
            "/edges/0");
  EXPECT_EQ(location_of([&] {
              parse_network(with_edges(R"({"id": "f1", "tail": "t", "head": "s", "capacity": 1, "owner": 1})"));
            }),
            "/");
  EXPECT_EQ(location_of([] { parse_network("{\n  \"nodes\": [\"s\",\n  ]\n}"); }), "3:3");
  EXPECT_EQ(location_of([] { parse_network(R"({"nodes": "s"})"); }), "/nodes");
}

TEST(ParseGame, DenseAndSparse) {
  TUGame dense = parse_game(R"({"n": 2, "coalitions": [
      {"players": [1], "value": "0"}, {"players": [2], "value": 0},
      {"players": [2, 1], "value": "3/2"}]})");
  EXPECT_EQ(dense(Coalition(3)), q("3/2"));
  TUGame sparse = parse_game(R"({"n": 3, "sparse": true, "coalitions": [{"players": [1, 3], "value": "0.5"}]})");
  EXPECT_EQ(sparse(Coalition::from_labels({1, 3})), q("1/2"));
  EXPECT_EQ(sparse(Coalition(7)), Rational(0));
}

TEST(ParseGame, EnforcesTotality) {
  EXPECT_EQ(location_of([] { parse_game(R"({"n": 2, "coalitions": [{"players": [1, 2], "value": 1}]})"); }),
            "/coalitions");
}

TEST(ParseGame, ErrorLocations) {
  EXPECT_EQ(location_of([] { parse_game(R"({"n": 0, "coalitions": []})"); }), "/n");
  EXPECT_EQ(location_of([] {
              parse_game(R"({"n": 2, "sparse": true, "coalitions": [{"players": [3], "value": 1}]})");
            }),
            "/coalitions/0/players/0");
  EXPECT_EQ(location_of([] {
              parse_game(R"({"n": 2, "sparse": true, "coalitions": [{"players": [1, 1], "value": 1}]})");
            }),
            "/coalitions/0/players/1");
  EXPECT_EQ(location_of([] {
              parse_game(R"({"n": 2, "sparse": true, "coalitions": [{"players": [1], "value": 1},
                                                                    {"players": [1], "value": 2}]})");
            }),
            "/coalitions/1");
  EXPECT_EQ(location_of([] {
              parse_game(R"({"n": 2, "sparse": true, "coalitions": [{"players": [], "value": 1}]})");
            }),
            "/coalitions/0/value");
  EXPECT_EQ(location_of([] { parse_game(R"({"n": 2, "sparse": "yes", "coalitions": []})"); }), "/sparse");
}

TEST(ParseGame, PlayerLimit) {
  EXPECT_THROW(parse_game(R"({"n": 21, "sparse": true, "coalitions": []})"), LimitError);
  EXPECT_THROW(parse_game(R"({"n": 5, "sparse": true, "coalitions": []})", "<input>", 4), LimitError);
}

TEST(GameJson, RoundTrip) {
  std::mt19937_64 rng(8);
  for (int k = 0; k < 10; ++k) {
    TUGame g = nucleo::testing::random_game(rng, 1 + k % 5);
    std::string text = game_to_json(g);
    EXPECT_EQ(parse_game(text), g);
    EXPECT_EQ(game_to_json(parse_game(text)), text);
  }
}

TEST(SolutionJson, RoundTripAndDecimals) {
  Allocation x = parse_solution(read_file(kData + "/xstar2.json"));
  EXPECT_EQ(x, nucleo::testing::xstar2());
  EXPECT_EQ(parse_solution(solution_to_json(nucleo::testing::nu())), nucleo::testing::nu());
  EXPECT_EQ(location_of([] { parse_solution(R"({"payoffs": ["1", true]})"); }), "/payoffs/1");
}

TEST(DetectKind, ByTopLevelKey) {
  EXPECT_EQ(detect_kind(R"({"edges": []})"), DocumentKind::network);
  EXPECT_EQ(detect_kind(R"({"n": 1, "coalitions": []})"), DocumentKind::game);
  EXPECT_EQ(detect_kind(R"({"payoffs": []})"), DocumentKind::solution);
  EXPECT_EQ(location_of([] { detect_kind(R"({"other": 1})"); }), "/");
  EXPECT_EQ(location_of([] { detect_kind("[1, 2"); }), "1:6");
}

TEST(ReadFile, MissingFile) {
  EXPECT_EQ(location_of([] { read_file("/nonexistent/file.json"); }), "-");
}

TEST(Digest, StableFnv1a) {
  EXPECT_EQ(digest(""), "cbf29ce484222325");
  EXPECT_EQ(digest("a"), "af63dc4c8601ec8c");
}

}  // namespace
}  // namespace nucleo::io

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

#include "nucleo/io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace nucleo::io {

using nlohmann::json;

ParseError::ParseError(std::string source, std::string location, const std::string& message)
    : std::runtime_error(source + ":" + location + ": " + message),
      source_(std::move(source)), location_(std::move(location)) {}

namespace {

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return std::to_string(line) + ":" + std::to_string(column);
}

class Reader {
 public:
  Reader(std::string_view text, std::string_view source) : source_(source) {
    try {
      doc_ = json::parse(text);
    } catch (const json::parse_error& e) {
      // e.byte is one past the offending character
      throw ParseError(source_, line_column(text, e.byte > 0 ? e.byte - 1 : 0), e.what());
    }
  }

  const json& doc() const { return doc_; }

  [[noreturn]] void fail(const std::string& pointer, const std::string& message) const {
    throw ParseError(source_, pointer.empty() ? "/" : pointer, message);
  }

  const json& member(const json& object, const std::string& pointer, const char* key) const {
    if (!object.is_object()) fail(pointer, "expected an object");
    auto it = object.find(key);
    if (it == object.end()) fail(pointer, std::string("missing field \"") + key + "\"");
    return *it;
  }

  const json& array(const json& object, const std::string& pointer, const char* key) const {
    const json& value = member(object, pointer, key);
    if (!value.is_array()) fail(pointer + "/" + key, "expected an array");
    return value;
  }

  std::string string(const json& value, const std::string& pointer) const {
    if (!value.is_string()) fail(pointer, "expected a string");
    return value.get<std::string>();
  }

  std::size_t label(const json& value, const std::string& pointer) const {
    if (!value.is_number_integer()) fail(pointer, "expected a positive integer");
    const auto v = value.get<long long>();
    if (v < 1) fail(pointer, "expected a positive integer, got " + std::to_string(v));
    return static_cast<std::size_t>(v);
  }

  Rational number(const json& value, const std::string& pointer) const {
    std::string text;
    if (value.is_string()) {
      text = value.get<std::string>();
    } else if (value.is_number_integer()) {
      text = value.dump();
    } else if (value.is_number_float()) {
      text = value.dump();
      if (text.find_first_of("eE") != std::string::npos) {
        fail(pointer, "write non-integer " + text + " as a \"p/q\" or decimal string");
      }
    } else {
      fail(pointer, "expected a number or a \"p/q\" string");
    }
    try {
      return Rational::parse(text);
    } catch (const std::exception& e) {
      fail(pointer, e.what());
    }
  }

 private:
  std::string source_;
  json doc_;
};

std::string ptr(const std::string& base, std::size_t index) { return base + "/" + std::to_string(index); }

}  // namespace

DocumentKind detect_kind(std::string_view text, std::string_view source) {
  Reader reader(text, source);
  const json& doc = reader.doc();
  if (!doc.is_object()) reader.fail("", "expected a JSON object");
  if (doc.contains("edges")) return DocumentKind::network;
  if (doc.contains("coalitions")) return DocumentKind::game;
  if (doc.contains("payoffs")) return DocumentKind::solution;
  reader.fail("", "not a network, game or solution document (no \"edges\", \"coalitions\" or \"payoffs\")");
}

FlowNetwork parse_network(std::string_view text, std::string_view source) {
  Reader reader(text, source);
  const json& doc = reader.doc();
  std::vector<std::string> nodes;
  const json& node_list = reader.array(doc, "", "nodes");
  for (std::size_t i = 0; i < node_list.size(); ++i) {
    nodes.push_back(reader.string(node_list[i], ptr("/nodes", i)));
  }
  std::string s = reader.string(reader.member(doc, "", "source"), "/source");
  std::string t = reader.string(reader.member(doc, "", "sink"), "/sink");
  std::vector<EdgeSpec> edges;
  const json& edge_list = reader.array(doc, "", "edges");
  for (std::size_t i = 0; i < edge_list.size(); ++i) {
    const std::string at = ptr("/edges", i);
    const json& e = edge_list[i];
    EdgeSpec spec;
    spec.id = reader.string(reader.member(e, at, "id"), at + "/id");
    spec.tail = reader.string(reader.member(e, at, "tail"), at + "/tail");
    spec.head = reader.string(reader.member(e, at, "head"), at + "/head");
    spec.capacity = reader.number(reader.member(e, at, "capacity"), at + "/capacity");
    spec.owner = reader.label(reader.member(e, at, "owner"), at + "/owner");
    edges.push_back(std::move(spec));
  }
  try {
    return FlowNetwork::create(std::move(nodes), std::move(s), std::move(t), edges);
  } catch (const NetworkError& e) {
    reader.fail("", std::string("network audit failed: ") + e.what());
  }
}

TUGame parse_game(std::string_view text, std::string_view source, std::size_t player_limit) {
  Reader reader(text, source);
  const json& doc = reader.doc();
  const json& n_value = reader.member(doc, "", "n");
  if (!n_value.is_number_integer() || n_value.get<long long>() < 1) {
    reader.fail("/n", "expected a positive player count");
  }
  const auto n = static_cast<std::size_t>(n_value.get<long long>());
  if (n > player_limit || n > kMaxPlayersHard) {
    throw LimitError("game has " + std::to_string(n) + " players, above the limit of " +
                     std::to_string(std::min(player_limit, kMaxPlayersHard)));
  }
  bool sparse = false;
  if (doc.contains("sparse")) {
    if (!doc["sparse"].is_boolean()) reader.fail("/sparse", "expected true or false");
    sparse = doc["sparse"].get<bool>();
  }

  TUGame game(n);
  std::vector<bool> seen(game.coalition_count(), false);
  const json& entries = reader.array(doc, "", "coalitions");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string at = ptr("/coalitions", i);
    const json& players = reader.array(entries[i], at, "players");
    std::uint64_t mask = 0;
    for (std::size_t k = 0; k < players.size(); ++k) {
      const std::size_t label = reader.label(players[k], ptr(at + "/players", k));
      if (label > n) reader.fail(ptr(at + "/players", k), "player " + std::to_string(label) + " outside 1.." + std::to_string(n));
      const std::uint64_t bit = std::uint64_t{1} << (label - 1);
      if (mask & bit) reader.fail(ptr(at + "/players", k), "player " + std::to_string(label) + " listed twice");
      mask |= bit;
    }
    if (seen[mask]) reader.fail(at, "coalition " + Coalition(mask).str() + " listed twice");
    seen[mask] = true;
    Rational value = reader.number(reader.member(entries[i], at, "value"), at + "/value");
    if (mask == 0 && !value.is_zero()) reader.fail(at + "/value", "the empty coalition must be worth 0");
    game.set_worth(Coalition(mask), std::move(value));
  }
  if (!sparse) {
    for (std::uint64_t mask = 1; mask < game.coalition_count(); ++mask) {
      if (!seen[mask]) {
        reader.fail("/coalitions", "coalition " + Coalition(mask).str() +
                                       " has no value (set \"sparse\": true to default omitted coalitions to 0)");
      }
    }
  }
  return game;
}

Allocation parse_solution(std::string_view text, std::string_view source) {
  Reader reader(text, source);
  const json& payoffs = reader.array(reader.doc(), "", "payoffs");
  std::vector<Rational> values;
  for (std::size_t i = 0; i < payoffs.size(); ++i) {
    values.push_back(reader.number(payoffs[i], ptr("/payoffs", i)));
  }
  return Allocation(std::move(values));
}

std::string game_to_json(const TUGame& game) {
  // Hand-formatted so that one coalition sits on each line.
  std::ostringstream out;
  out << "{\n  \"n\": " << game.player_count() << ",\n  \"sparse\": false,\n  \"coalitions\": [";
  for (std::uint64_t mask = 1; mask < game.coalition_count(); ++mask) {
    out << (mask == 1 ? "\n" : ",\n") << "    {\"players\": [";
    bool first = true;
    for (Player p : Coalition(mask).players()) {
      out << (first ? "" : ", ") << (p + 1);
      first = false;
    }
    out << "], \"value\": \"" << game.worths()[mask].str() << "\"}";
  }
  out << "\n  ]\n}\n";
  return out.str();
}

std::string solution_to_json(const Allocation& x) {
  json doc;
  doc["payoffs"] = json::array();
  for (const auto& v : x.payoffs()) doc["payoffs"].push_back(v.str());
  return doc.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, "-", "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string digest(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(hash));
  return buffer;
}

}  // namespace nucleo::io

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

#ifndef NUCLEO_IO_HPP
#define NUCLEO_IO_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "nucleo/flow.hpp"
#include "nucleo/game.hpp"

namespace nucleo::io {

/// Malformed input document. `location()` is "line:column" for syntax
/// errors and a JSON pointer such as "/edges/3/capacity" otherwise.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, std::string location, const std::string& message);
  const std::string& source() const { return source_; }
  const std::string& location() const { return location_; }

 private:
  std::string source_;
  std::string location_;
};

enum class DocumentKind { network, game, solution };

/// Classifies a document by its top-level keys ("edges", "coalitions",
/// "payoffs").
DocumentKind detect_kind(std::string_view text, std::string_view source = "<input>");

/// {"nodes": [...], "source": "s", "sink": "t",
///  "edges": [{"id": "f1", "tail": "s", "head": "1", "capacity": "3", "owner": 1}, ...]}
/// Capacities may be integers, "p/q" strings or decimal strings. Audit
/// failures are reported as ParseError too.
FlowNetwork parse_network(std::string_view text, std::string_view source = "<input>");

/// {"n": 3, "sparse": false, "coalitions": [{"players": [1, 2], "value": "1/2"}, ...]}
/// Without "sparse": true every nonempty coalition must be listed.
/// Throws LimitError when n exceeds `player_limit`.
TUGame parse_game(std::string_view text, std::string_view source = "<input>",
                  std::size_t player_limit = 20);

/// {"payoffs": ["1", "1/5", ...]}
Allocation parse_solution(std::string_view text, std::string_view source = "<input>");

/// Dense game document with coalitions in increasing mask order.
std::string game_to_json(const TUGame& game);
std::string solution_to_json(const Allocation& x);

/// Reads a whole file; throws ParseError (location "-") when unreadable.
std::string read_file(const std::string& path);

/// 64-bit FNV-1a digest as 16 hex digits, for run reports.
std::string digest(std::string_view bytes);

}  // namespace nucleo::io

#endif  // NUCLEO_IO_HPP

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

#ifndef NUCLEO_FLOW_HPP
#define NUCLEO_FLOW_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nucleo/coalition.hpp"
#include "nucleo/game.hpp"
#include "nucleo/rational.hpp"

namespace nucleo {

/// Edge as given in a network description; `owner` is a one-based player
/// label.
struct EdgeSpec {
  std::string id;
  std::string tail;
  std::string head;
  Rational capacity;
  std::size_t owner = 0;
};

/// Audited edge with node indices resolved.
struct Edge {
  std::string id;
  std::size_t tail = 0;
  std::size_t head = 0;
  Rational capacity;
  std::size_t owner = 0;  // one-based label

  Player player() const { return owner - 1; }
};

/// Subset of a network's edges, by edge index.
class EdgeSet {
 public:
  EdgeSet() = default;
  explicit EdgeSet(std::size_t edge_count) : bits_(edge_count, false) {}

  static EdgeSet all(std::size_t edge_count);

  std::size_t universe() const { return bits_.size(); }
  bool contains(std::size_t edge) const { return edge < bits_.size() && bits_[edge]; }
  void insert(std::size_t edge) { bits_.at(edge) = true; }
  void erase(std::size_t edge) { bits_.at(edge) = false; }
  std::size_t size() const;
  bool empty() const { return size() == 0; }
  bool is_subset_of(const EdgeSet& other) const;
  std::vector<std::size_t> indices() const;

  friend bool operator==(const EdgeSet&, const EdgeSet&) = default;
  friend auto operator<=>(const EdgeSet& a, const EdgeSet& b) { return a.indices() <=> b.indices(); }

 private:
  std::vector<bool> bits_;
};

/// Thrown when a network description fails its audit.
class NetworkError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Directed network with owned, capacitated edges. Immutable once built.
///
/// Audit rules: source and sink are distinct known nodes, node names are
/// unique, every edge endpoint is a known node, no edge enters the source or
/// leaves the sink, capacities are nonnegative, edge ids are unique, and the
/// owner labels form exactly {1..n}.
class FlowNetwork {
 public:
  /// Throws NetworkError when the audit fails.
  static FlowNetwork create(std::vector<std::string> nodes, std::string source, std::string sink,
                            const std::vector<EdgeSpec>& edges);

  const std::vector<std::string>& nodes() const { return nodes_; }
  std::size_t source() const { return source_; }
  std::size_t sink() const { return sink_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t player_count() const { return players_; }

  std::optional<std::size_t> find_edge(std::string_view id) const;
  /// Throws std::invalid_argument for an unknown id.
  EdgeSet edge_set(const std::vector<std::string>& ids) const;
  EdgeSet all_edges() const { return EdgeSet::all(edges_.size()); }
  EdgeSet edges_owned_by(Coalition coalition) const;

  Rational capacity(const EdgeSet& edges) const;
  std::string describe(const EdgeSet& edges) const;  // "{f4,f6,f10}"

 private:
  FlowNetwork() = default;

  std::vector<std::string> nodes_;
  std::size_t source_ = 0;
  std::size_t sink_ = 0;
  std::vector<Edge> edges_;
  std::size_t players_ = 0;
};

/// Maximum source-to-sink flow using only `allowed` edges (shortest
/// augmenting paths, exact arithmetic).
Rational max_flow(const FlowNetwork& network, const EdgeSet& allowed);

/// Thrown when an enumeration would exceed a configured size limit.
class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FlowGameOptions {
  std::size_t player_limit = 20;
  std::size_t jobs = 1;
};

/// v(S) = max flow over the edges owned by members of S, for every S.
/// Throws LimitError when the player count exceeds options.player_limit.
TUGame build_flow_game(const FlowNetwork& network, const FlowGameOptions& options = {});

/// Every distinct edge set crossing a source-side/sink-side node bipartition
/// whose capacity equals the maximum flow, in increasing edge-index order.
/// Throws LimitError when more than `inner_node_limit` nodes besides source
/// and sink would have to be enumerated.
std::vector<EdgeSet> enumerate_min_cuts(const FlowNetwork& network,
                                        std::size_t inner_node_limit = 20);

/// Pays each player the capacity of their edges in `cut`. Throws
/// std::invalid_argument unless `cut` is one of enumerate_min_cuts().
Allocation cut_allocation(const FlowNetwork& network, const EdgeSet& cut);

}  // namespace nucleo

#endif  // NUCLEO_FLOW_HPP

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

#include "nucleo/flow.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <map>
#include <set>
#include <thread>

namespace nucleo {

EdgeSet EdgeSet::all(std::size_t edge_count) {
  EdgeSet set(edge_count);
  for (std::size_t e = 0; e < edge_count; ++e) set.insert(e);
  return set;
}

std::size_t EdgeSet::size() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

bool EdgeSet::is_subset_of(const EdgeSet& other) const {
  for (std::size_t e = 0; e < bits_.size(); ++e) {
    if (bits_[e] && !other.contains(e)) return false;
  }
  return true;
}

std::vector<std::size_t> EdgeSet::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < bits_.size(); ++e) {
    if (bits_[e]) out.push_back(e);
  }
  return out;
}

FlowNetwork FlowNetwork::create(std::vector<std::string> nodes, std::string source,
                                std::string sink, const std::vector<EdgeSpec>& edges) {
  FlowNetwork net;
  std::map<std::string, std::size_t, std::less<>> index;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].empty()) throw NetworkError("node names must be nonempty");
    if (!index.emplace(nodes[i], i).second) throw NetworkError("duplicate node \"" + nodes[i] + "\"");
  }
  auto lookup = [&](const std::string& name, const std::string& what) {
    auto it = index.find(name);
    if (it == index.end()) throw NetworkError(what + " \"" + name + "\" is not a declared node");
    return it->second;
  };
  net.source_ = lookup(source, "source");
  net.sink_ = lookup(sink, "sink");
  if (net.source_ == net.sink_) throw NetworkError("source and sink must differ");

  std::set<std::string, std::less<>> ids;
  std::set<std::size_t> owners;
  for (const EdgeSpec& spec : edges) {
    if (spec.id.empty()) throw NetworkError("edge ids must be nonempty");
    if (!ids.insert(spec.id).second) throw NetworkError("duplicate edge id \"" + spec.id + "\"");
    Edge edge;
    edge.id = spec.id;
    edge.tail = lookup(spec.tail, "tail of edge " + spec.id);
    edge.head = lookup(spec.head, "head of edge " + spec.id);
    if (edge.head == net.source_) throw NetworkError("edge " + spec.id + " enters the source");
    if (edge.tail == net.sink_) throw NetworkError("edge " + spec.id + " leaves the sink");
    if (spec.capacity.sign() < 0) throw NetworkError("edge " + spec.id + " has negative capacity");
    if (spec.owner == 0) throw NetworkError("edge " + spec.id + " owner must be >= 1");
    edge.capacity = spec.capacity;
    edge.owner = spec.owner;
    owners.insert(spec.owner);
    net.edges_.push_back(std::move(edge));
  }
  if (!owners.empty() && *owners.rbegin() != owners.size()) {
    for (std::size_t label = 1; label <= *owners.rbegin(); ++label) {
      if (!owners.contains(label)) {
        throw NetworkError("player labels must be 1..n without gaps; player " +
                           std::to_string(label) + " owns no edge");
      }
    }
  }
  if (owners.size() > kMaxPlayersHard) {
    throw NetworkError("network has " + std::to_string(owners.size()) + " players; at most " +
                       std::to_string(kMaxPlayersHard) + " are supported");
  }
  net.players_ = owners.size();
  net.nodes_ = std::move(nodes);
  return net;
}

std::optional<std::size_t> FlowNetwork::find_edge(std::string_view id) const {
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (edges_[e].id == id) return e;
  }
  return std::nullopt;
}

EdgeSet FlowNetwork::edge_set(const std::vector<std::string>& ids) const {
  EdgeSet set(edges_.size());
  for (const auto& id : ids) {
    auto e = find_edge(id);
    if (!e) throw std::invalid_argument("unknown edge id \"" + id + "\"");
    set.insert(*e);
  }
  return set;
}

EdgeSet FlowNetwork::edges_owned_by(Coalition coalition) const {
  EdgeSet set(edges_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (coalition.contains(edges_[e].player())) set.insert(e);
  }
  return set;
}

Rational FlowNetwork::capacity(const EdgeSet& edges) const {
  Rational total;
  for (std::size_t e : edges.indices()) total += edges_.at(e).capacity;
  return total;
}

std::string FlowNetwork::describe(const EdgeSet& edges) const {
  std::string out = "{";
  bool first = true;
  for (std::size_t e : edges.indices()) {
    if (!first) out += ',';
    out += edges_.at(e).id;
    first = false;
  }
  return out + "}";
}

Rational max_flow(const FlowNetwork& network, const EdgeSet& allowed) {
  struct Arc {
    std::size_t to;
    std::size_t reverse;
    Rational residual;
  };
  const std::size_t node_count = network.nodes().size();
  std::vector<std::vector<Arc>> graph(node_count);
  for (std::size_t e = 0; e < network.edges().size(); ++e) {
    const Edge& edge = network.edges()[e];
    if (!allowed.contains(e) || edge.capacity.is_zero() || edge.tail == edge.head) continue;
    graph[edge.tail].push_back({edge.head, graph[edge.head].size(), edge.capacity});
    graph[edge.head].push_back({edge.tail, graph[edge.tail].size() - 1, Rational(0)});
  }

  const std::size_t s = network.source();
  const std::size_t t = network.sink();
  Rational total;
  constexpr auto kNone = static_cast<std::size_t>(-1);
  while (true) {
    // (node, arc index) used to reach each node
    std::vector<std::pair<std::size_t, std::size_t>> parent(node_count, {kNone, kNone});
    parent[s] = {s, kNone};
    std::deque<std::size_t> queue{s};
    while (!queue.empty() && parent[t].first == kNone) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t a = 0; a < graph[u].size(); ++a) {
        const Arc& arc = graph[u][a];
        if (arc.residual.sign() > 0 && parent[arc.to].first == kNone) {
          parent[arc.to] = {u, a};
          queue.push_back(arc.to);
        }
      }
    }
    if (parent[t].first == kNone) break;

    Rational bottleneck;
    bool first = true;
    for (std::size_t v = t; v != s; v = parent[v].first) {
      const Arc& arc = graph[parent[v].first][parent[v].second];
      if (first || arc.residual < bottleneck) bottleneck = arc.residual;
      first = false;
    }
    for (std::size_t v = t; v != s; v = parent[v].first) {
      Arc& arc = graph[parent[v].first][parent[v].second];
      arc.residual -= bottleneck;
      graph[arc.to][arc.reverse].residual += bottleneck;
    }
    total += bottleneck;
  }
  return total;
}

TUGame build_flow_game(const FlowNetwork& network, const FlowGameOptions& options) {
  const std::size_t n = network.player_count();
  if (n > options.player_limit) {
    throw LimitError("flow game has " + std::to_string(n) + " players, above the enumeration limit of " +
                     std::to_string(options.player_limit) +
                     "; raise the limit explicitly if 2^n max-flow computations are acceptable");
  }
  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<Rational> worth(count);
  std::atomic<std::uint64_t> next{1};
  auto worker = [&] {
    for (std::uint64_t mask = next++; mask < count; mask = next++) {
      worth[mask] = max_flow(network, network.edges_owned_by(Coalition(mask)));
    }
  };
  const std::size_t jobs = std::max<std::size_t>(1, options.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }
  return TUGame(n, std::move(worth));
}

std::vector<EdgeSet> enumerate_min_cuts(const FlowNetwork& network, std::size_t inner_node_limit) {
  std::vector<std::size_t> inner;
  for (std::size_t v = 0; v < network.nodes().size(); ++v) {
    if (v != network.source() && v != network.sink()) inner.push_back(v);
  }
  if (inner.size() > inner_node_limit || inner.size() >= 63) {
    throw LimitError("cut enumeration over " + std::to_string(inner.size()) +
                     " inner nodes exceeds the limit of " + std::to_string(inner_node_limit));
  }
  const Rational target = max_flow(network, network.all_edges());
  std::set<std::vector<std::size_t>> found;
  std::vector<bool> source_side(network.nodes().size());
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << inner.size()); ++mask) {
    std::fill(source_side.begin(), source_side.end(), false);
    source_side[network.source()] = true;
    for (std::size_t k = 0; k < inner.size(); ++k) {
      if ((mask >> k) & 1U) source_side[inner[k]] = true;
    }
    std::vector<std::size_t> crossing;
    Rational capacity;
    for (std::size_t e = 0; e < network.edges().size(); ++e) {
      const Edge& edge = network.edges()[e];
      if (source_side[edge.tail] && !source_side[edge.head]) {
        crossing.push_back(e);
        capacity += edge.capacity;
      }
    }
    if (capacity == target) found.insert(std::move(crossing));
  }
  std::vector<EdgeSet> cuts;
  for (const auto& indices : found) {
    EdgeSet set(network.edges().size());
    for (std::size_t e : indices) set.insert(e);
    cuts.push_back(std::move(set));
  }
  return cuts;
}

Allocation cut_allocation(const FlowNetwork& network, const EdgeSet& cut) {
  const auto cuts = enumerate_min_cuts(network);
  if (std::find(cuts.begin(), cuts.end(), cut) == cuts.end()) {
    throw std::invalid_argument(network.describe(cut) + " is not a minimum cut of the network");
  }
  Allocation x(network.player_count());
  for (std::size_t e : cut.indices()) {
    const Edge& edge = network.edges()[e];
    x[edge.player()] += edge.capacity;
  }
  return x;
}

}  // namespace nucleo

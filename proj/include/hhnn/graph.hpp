#pragma once

#include "hhnn/network.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace hhnn {

inline constexpr std::int64_t kDefaultNodeCap = 1'000'000;

struct TransitionEdge {
  std::int64_t from = 0;
  std::int64_t to = 0;
  int neuron = 0;

  bool operator==(const TransitionEdge&) const = default;
};

/// Complete single-update transition structure of a finite-state network:
/// one node per joint state, one edge per state-changing neuron update.
/// Nodes are mixed-radix numbers over the activation's state set with
/// neuron 0 as the most significant digit.  Edges are stored sorted by
/// (from, neuron), in CSR form.
class TransitionGraph {
public:
  TransitionGraph(AlgebraPtr algebra, std::vector<HNumber> states, int n_neurons,
                  std::vector<TransitionEdge> sorted_edges);

  std::int64_t node_count() const { return node_count_; }
  int neuron_count() const { return n_; }
  const std::vector<HNumber>& states() const { return states_; }
  const std::vector<TransitionEdge>& edges() const { return edges_; }

  std::span<const TransitionEdge> out_edges(std::int64_t node) const {
    const auto b = offsets_[static_cast<std::size_t>(node)];
    const auto e = offsets_[static_cast<std::size_t>(node) + 1];
    return {edges_.data() + b, static_cast<std::size_t>(e - b)};
  }

  bool is_fixed_point(std::int64_t node) const { return out_edges(node).empty(); }

  std::int64_t encode(const StateVector& x) const;
  StateVector decode(std::int64_t node) const;

private:
  AlgebraPtr algebra_;
  std::vector<HNumber> states_;
  int n_;
  std::int64_t node_count_;
  std::vector<TransitionEdge> edges_;
  std::vector<std::int64_t> offsets_;
  std::unordered_map<std::string, int> state_index_;
};

/// Exhaustively applies every single-neuron update to every joint state.
/// Rejects infinite state sets and |S|^N above node_cap (std::length_error).
/// The parallel and serial versions produce identical graphs.
TransitionGraph enumerate_graph(const Network& net, std::int64_t node_cap = kDefaultNodeCap);
TransitionGraph enumerate_graph_serial(const Network& net,
                                       std::int64_t node_cap = kDefaultNodeCap);

struct Classification {
  std::vector<std::int64_t> fixed_points;  // out-degree 0
  std::vector<std::int64_t> cyclic_nodes;  // on a directed cycle
};

/// Fixed points plus all nodes lying on some directed cycle (members of a
/// strongly connected component of size >= 2; single-update edges never
/// self-loop).
Classification classify(const TransitionGraph& g);

/// Fixed points reachable from the given node, ascending.
std::vector<std::int64_t> reachable_fixed_points(const TransitionGraph& g, std::int64_t from);

/// Deterministic DOT rendering; nodes are labeled with their state tuples.
/// When highlight is set, every edge leaving a node reachable from it is
/// drawn red.
std::string to_dot(const TransitionGraph& g, std::optional<std::int64_t> highlight = {});

}  // namespace hhnn

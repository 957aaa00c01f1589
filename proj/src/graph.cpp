#include "hhnn/graph.hpp"

#include <algorithm>
#include <cstring>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace hhnn {

namespace {

std::string state_key(const HNumber& s) {
  std::string key(s.coeffs().size() * sizeof(double), '\0');
  std::memcpy(key.data(), s.data(), key.size());
  return key;
}

}  // namespace

TransitionGraph::TransitionGraph(AlgebraPtr algebra, std::vector<HNumber> states, int n_neurons,
                                 std::vector<TransitionEdge> sorted_edges)
    : algebra_(std::move(algebra)), states_(std::move(states)), n_(n_neurons),
      edges_(std::move(sorted_edges)) {
  node_count_ = 1;
  for (int i = 0; i < n_; ++i) node_count_ *= static_cast<std::int64_t>(states_.size());
  offsets_.assign(static_cast<std::size_t>(node_count_) + 1, 0);
  for (const TransitionEdge& e : edges_) ++offsets_[static_cast<std::size_t>(e.from) + 1];
  for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
  for (std::size_t s = 0; s < states_.size(); ++s)
    state_index_.emplace(state_key(states_[s]), static_cast<int>(s));
}

std::int64_t TransitionGraph::encode(const StateVector& x) const {
  if (x.size() != static_cast<std::size_t>(n_))
    throw std::invalid_argument("state vector length does not match the graph");
  std::int64_t node = 0;
  for (const HNumber& xi : x) {
    const auto it = state_index_.find(state_key(xi));
    if (it == state_index_.end())
      throw std::invalid_argument("state component is not in the graph's state set");
    node = node * static_cast<std::int64_t>(states_.size()) + it->second;
  }
  return node;
}

StateVector TransitionGraph::decode(std::int64_t node) const {
  if (node < 0 || node >= node_count_) throw std::out_of_range("node index out of range");
  StateVector x(static_cast<std::size_t>(n_), HNumber::zero(algebra_));
  const auto radix = static_cast<std::int64_t>(states_.size());
  for (int i = n_ - 1; i >= 0; --i) {
    x[static_cast<std::size_t>(i)] = states_[static_cast<std::size_t>(node % radix)];
    node /= radix;
  }
  return x;
}

namespace {

struct EnumPlan {
  const Network* net = nullptr;
  std::vector<HNumber> states;
  std::unordered_map<std::string, int> state_index;
  std::int64_t node_count = 0;
  int n = 0, d = 0, n_states = 0;
  std::vector<std::int64_t> place;  // place[i] = |S|^(n-1-i)
  std::vector<double> wx;           // wx[((i*n + j)*|S| + s) * d .. +d) = w(i,j) * state_s
};

EnumPlan plan_enumeration(const Network& net, std::int64_t node_cap) {
  if (!net.activation().finite_states())
    throw std::invalid_argument("transition graphs need a finite state set");
  EnumPlan plan;
  plan.net = &net;
  plan.states = net.activation().state_set(net.algebra());
  plan.n = net.size();
  plan.d = net.algebra()->dim();
  plan.n_states = static_cast<int>(plan.states.size());

  plan.node_count = 1;
  for (int i = 0; i < plan.n; ++i) {
    if (plan.node_count > node_cap / plan.n_states)
      throw std::length_error("state space exceeds the node cap");
    plan.node_count *= plan.n_states;
  }

  plan.place.assign(static_cast<std::size_t>(plan.n), 1);
  for (int i = plan.n - 2; i >= 0; --i)
    plan.place[static_cast<std::size_t>(i)] =
        plan.place[static_cast<std::size_t>(i) + 1] * plan.n_states;

  for (int s = 0; s < plan.n_states; ++s)
    plan.state_index.emplace(state_key(plan.states[static_cast<std::size_t>(s)]), s);

  plan.wx.assign(static_cast<std::size_t>(plan.n) * plan.n * plan.n_states * plan.d, 0.0);
  for (int i = 0; i < plan.n; ++i)
    for (int j = 0; j < plan.n; ++j)
      for (int s = 0; s < plan.n_states; ++s) {
        double* dst = &plan.wx[((static_cast<std::size_t>(i) * plan.n + j) * plan.n_states + s) *
                               plan.d];
        net.algebra()->mul_acc(net.w(i, j).data(),
                               plan.states[static_cast<std::size_t>(s)].data(), dst);
      }
  return plan;
}

void node_edges(const EnumPlan& plan, std::int64_t node, std::vector<int>& digits,
                std::vector<double>& v, std::vector<TransitionEdge>& out) {
  std::int64_t rest = node;
  for (int i = 0; i < plan.n; ++i) {
    digits[static_cast<std::size_t>(i)] = static_cast<int>(rest / plan.place[static_cast<std::size_t>(i)]);
    rest %= plan.place[static_cast<std::size_t>(i)];
  }
  for (int i = 0; i < plan.n; ++i) {
    std::fill(v.begin(), v.end(), 0.0);
    for (int j = 0; j < plan.n; ++j) {
      const double* src = &plan.wx[((static_cast<std::size_t>(i) * plan.n + j) * plan.n_states +
                                    digits[static_cast<std::size_t>(j)]) *
                                   plan.d];
      for (int k = 0; k < plan.d; ++k) v[static_cast<std::size_t>(k)] += src[k];
    }
    const auto next = plan.net->activation().apply(HNumber(plan.net->algebra(), v));
    if (!next) continue;
    const auto it = plan.state_index.find(state_key(*next));
    if (it == plan.state_index.end())
      throw std::logic_error("activation produced a value outside its state set");
    const int s_new = it->second;
    const int s_old = digits[static_cast<std::size_t>(i)];
    if (s_new == s_old) continue;
    out.push_back({node, node + (s_new - s_old) * plan.place[static_cast<std::size_t>(i)], i});
  }
}

TransitionGraph enumerate_impl(const Network& net, std::int64_t node_cap, bool parallel) {
  EnumPlan plan = plan_enumeration(net, node_cap);

  // Contiguous node chunks keep the concatenated edge list in node order
  // regardless of thread count.
  constexpr std::int64_t chunk_size = 4096;
  const auto n_chunks = static_cast<std::size_t>((plan.node_count + chunk_size - 1) / chunk_size);
  std::vector<std::vector<TransitionEdge>> chunk_edges(n_chunks);

#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(n_chunks); ++c) {
    std::vector<int> digits(static_cast<std::size_t>(plan.n));
    std::vector<double> v(static_cast<std::size_t>(plan.d));
    auto& out = chunk_edges[static_cast<std::size_t>(c)];
    const std::int64_t lo = c * chunk_size;
    const std::int64_t hi = std::min(plan.node_count, lo + chunk_size);
    for (std::int64_t node = lo; node < hi; ++node) node_edges(plan, node, digits, v, out);
  }

  std::size_t total = 0;
  for (const auto& ce : chunk_edges) total += ce.size();
  std::vector<TransitionEdge> edges;
  edges.reserve(total);
  for (const auto& ce : chunk_edges) edges.insert(edges.end(), ce.begin(), ce.end());

  return TransitionGraph(net.algebra(), std::move(plan.states), plan.n, std::move(edges));
}

}  // namespace

TransitionGraph enumerate_graph(const Network& net, std::int64_t node_cap) {
  return enumerate_impl(net, node_cap, true);
}

TransitionGraph enumerate_graph_serial(const Network& net, std::int64_t node_cap) {
  return enumerate_impl(net, node_cap, false);
}

namespace {

// Iterative Tarjan; the explicit stack keeps million-node graphs from
// exhausting the call stack.
std::vector<std::int64_t> cyclic_nodes_of(const TransitionGraph& g) {
  const std::int64_t n = g.node_count();
  constexpr std::int64_t kUnvisited = -1;
  std::vector<std::int64_t> index(static_cast<std::size_t>(n), kUnvisited);
  std::vector<std::int64_t> lowlink(static_cast<std::size_t>(n), 0);
  std::vector<char> on_stack(static_cast<std::size_t>(n), 0);
  std::vector<std::int64_t> stack;
  std::vector<std::int64_t> cyclic;
  std::int64_t counter = 0;

  struct Frame {
    std::int64_t node;
    std::size_t edge;
  };
  std::vector<Frame> call;

  for (std::int64_t root = 0; root < n; ++root) {
    if (index[static_cast<std::size_t>(root)] != kUnvisited) continue;
    call.push_back({root, 0});
    while (!call.empty()) {
      Frame& f = call.back();
      const auto u = static_cast<std::size_t>(f.node);
      if (f.edge == 0) {
        index[u] = lowlink[u] = counter++;
        stack.push_back(f.node);
        on_stack[u] = 1;
      }
      const auto out = g.out_edges(f.node);
      bool descended = false;
      while (f.edge < out.size()) {
        const std::int64_t w = out[f.edge].to;
        ++f.edge;
        if (index[static_cast<std::size_t>(w)] == kUnvisited) {
          call.push_back({w, 0});
          descended = true;
          break;
        }
        if (on_stack[static_cast<std::size_t>(w)])
          lowlink[u] = std::min(lowlink[u], index[static_cast<std::size_t>(w)]);
      }
      if (descended) continue;
      // u finished
      if (lowlink[u] == index[u]) {
        std::vector<std::int64_t> comp;
        std::int64_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[static_cast<std::size_t>(w)] = 0;
          comp.push_back(w);
        } while (w != f.node);
        if (comp.size() >= 2) cyclic.insert(cyclic.end(), comp.begin(), comp.end());
      }
      const std::int64_t done = f.node;
      call.pop_back();
      if (!call.empty()) {
        const auto parent = static_cast<std::size_t>(call.back().node);
        lowlink[parent] = std::min(lowlink[parent], lowlink[static_cast<std::size_t>(done)]);
      }
    }
  }
  std::sort(cyclic.begin(), cyclic.end());
  return cyclic;
}

}  // namespace

Classification classify(const TransitionGraph& g) {
  Classification result;
  for (std::int64_t node = 0; node < g.node_count(); ++node)
    if (g.is_fixed_point(node)) result.fixed_points.push_back(node);
  result.cyclic_nodes = cyclic_nodes_of(g);
  return result;
}

namespace {

std::vector<char> reachable_from(const TransitionGraph& g, std::int64_t from) {
  std::vector<char> seen(static_cast<std::size_t>(g.node_count()), 0);
  std::deque<std::int64_t> queue;
  seen[static_cast<std::size_t>(from)] = 1;
  queue.push_back(from);
  while (!queue.empty()) {
    const std::int64_t u = queue.front();
    queue.pop_front();
    for (const TransitionEdge& e : g.out_edges(u))
      if (!seen[static_cast<std::size_t>(e.to)]) {
        seen[static_cast<std::size_t>(e.to)] = 1;
        queue.push_back(e.to);
      }
  }
  return seen;
}

}  // namespace

std::vector<std::int64_t> reachable_fixed_points(const TransitionGraph& g, std::int64_t from) {
  if (from < 0 || from >= g.node_count()) throw std::out_of_range("node index out of range");
  const std::vector<char> seen = reachable_from(g, from);
  std::vector<std::int64_t> fixed;
  for (std::int64_t node = 0; node < g.node_count(); ++node)
    if (seen[static_cast<std::size_t>(node)] && g.is_fixed_point(node)) fixed.push_back(node);
  return fixed;
}

std::string to_dot(const TransitionGraph& g, std::optional<std::int64_t> highlight) {
  std::vector<char> hot;
  if (highlight) {
    if (*highlight < 0 || *highlight >= g.node_count())
      throw std::out_of_range("highlight node out of range");
    hot = reachable_from(g, *highlight);
  }

  std::ostringstream os;
  os << "digraph transitions {\n";
  os << "  rankdir=LR;\n";
  os << "  node [shape=box, fontsize=10];\n";
  for (std::int64_t node = 0; node < g.node_count(); ++node) {
    const StateVector x = g.decode(node);
    os << "  n" << node << " [label=\"" << node << ": (";
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (i) os << ", ";
      os << to_string(x[i]);
    }
    os << ")\"";
    if (g.is_fixed_point(node)) os << ", peripheries=2";
    os << "];\n";
  }
  for (const TransitionEdge& e : g.edges()) {
    os << "  n" << e.from << " -> n" << e.to << " [label=\"" << e.neuron << "\"";
    if (!hot.empty() && hot[static_cast<std::size_t>(e.from)]) os << ", color=red";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace hhnn

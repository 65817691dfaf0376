#include "ckso/flow.hpp"

#include <limits>
#include <stdexcept>

namespace ckso {

namespace {
constexpr std::int64_t kFlowInf = std::numeric_limits<std::int64_t>::max() / 4;
}

FlowNetwork::FlowNetwork(int num_nodes, int source, int sink)
    : adj_(num_nodes), source_(source), sink_(sink) {
  if (source < 0 || source >= num_nodes || sink < 0 || sink >= num_nodes ||
      source == sink)
    throw std::invalid_argument("bad source/sink");
}

int FlowNetwork::add_arc(int from, int to, std::int64_t capacity) {
  if (capacity < 0) throw std::invalid_argument("negative arc capacity");
  if (capacity > kFlowInf) throw std::overflow_error("arc capacity too large");
  if (to == source_ || from == sink_)
    throw std::invalid_argument("arc into source or out of sink");
  int id = static_cast<int>(arc_pos_.size());
  arc_pos_.push_back({from, static_cast<int>(adj_[from].size())});
  adj_[from].push_back({to, capacity, static_cast<int>(adj_[to].size())});
  adj_[to].push_back({from, 0, static_cast<int>(adj_[from].size()) - 1});
  return id;
}

bool FlowNetwork::bfs_levels() {
  level_.assign(adj_.size(), -1);
  std::vector<int> queue;
  queue.push_back(source_);
  level_[source_] = 0;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    int v = queue[qi];
    for (const Edge& e : adj_[v]) {
      if (e.cap > 0 && level_[e.to] < 0) {
        level_[e.to] = level_[v] + 1;
        queue.push_back(e.to);
      }
    }
  }
  return level_[sink_] >= 0;
}

std::int64_t FlowNetwork::dfs_augment(int v, std::int64_t limit) {
  if (v == sink_) return limit;
  for (int& i = iter_[v]; i < static_cast<int>(adj_[v].size()); ++i) {
    Edge& e = adj_[v][i];
    if (e.cap <= 0 || level_[e.to] != level_[v] + 1) continue;
    std::int64_t pushed = dfs_augment(e.to, std::min(limit, e.cap));
    if (pushed > 0) {
      e.cap -= pushed;
      adj_[e.to][e.rev].cap += pushed;
      return pushed;
    }
  }
  return 0;
}

std::int64_t FlowNetwork::max_flow() {
  std::int64_t total = 0;
  while (bfs_levels()) {
    iter_.assign(adj_.size(), 0);
    while (std::int64_t pushed = dfs_augment(source_, kFlowInf)) {
      if (total > kFlowInf - pushed) throw std::overflow_error("flow overflow");
      total += pushed;
    }
  }
  return total;
}

std::int64_t FlowNetwork::flow_on(int arc_id) const {
  auto [node, slot] = arc_pos_[arc_id];
  const Edge& e = adj_[node][slot];
  return adj_[e.to][e.rev].cap;  // reverse capacity equals pushed flow
}

std::int64_t FlowNetwork::capacity_of(int arc_id) const {
  auto [node, slot] = arc_pos_[arc_id];
  const Edge& e = adj_[node][slot];
  return e.cap + adj_[e.to][e.rev].cap;
}

std::pair<int, int> FlowNetwork::arc_endpoints(int arc_id) const {
  auto [node, slot] = arc_pos_[arc_id];
  return {node, adj_[node][slot].to};
}

bool transportation_feasible(const std::vector<std::int64_t>& supplies,
                             const std::vector<std::int64_t>& demands,
                             const std::vector<std::pair<int, int>>& arcs) {
  const int ns = static_cast<int>(supplies.size());
  const int nd = static_cast<int>(demands.size());
  std::int64_t total_demand = 0;
  for (std::int64_t d : demands) {
    if (d < 0) throw std::invalid_argument("negative demand");
    if (total_demand > kFlowInf - d) throw std::overflow_error("demand overflow");
    total_demand += d;
  }
  if (total_demand == 0) return true;

  FlowNetwork net(ns + nd + 2, ns + nd, ns + nd + 1);
  for (int i = 0; i < ns; ++i) {
    if (supplies[i] < 0) throw std::invalid_argument("negative supply");
    if (supplies[i] > 0) net.add_arc(net.source(), i, supplies[i]);
  }
  for (int j = 0; j < nd; ++j)
    if (demands[j] > 0) net.add_arc(ns + j, net.sink(), demands[j]);
  for (const auto& [i, j] : arcs) net.add_arc(i, ns + j, kFlowInf);
  return net.max_flow() == total_demand;
}

}  // namespace ckso

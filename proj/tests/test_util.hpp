// Shared helpers for the test suite: compact instance builders and the
// independent brute-force oracles the module tests check against.

#ifndef CKSO_TEST_UTIL_HPP
#define CKSO_TEST_UTIL_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ckso/generators.hpp"
#include "ckso/instance.hpp"
#include "ckso/transfer.hpp"

namespace ckso::testutil {

// Bipartite graph from edge pairs; capacities listed per facility id.
inline GraphInstance graph(
    std::vector<std::pair<std::string, std::int64_t>> facilities,
    std::vector<std::string> clients,
    std::vector<std::pair<std::string, std::string>> edges,  // (client, facility)
    std::int64_t k, std::int64_t p,
    CapacityMode mode = CapacityMode::Hard) {
  return make_graph_instance(std::move(clients), std::move(facilities), edges, k, p,
                             mode);
}

// A client-facility path c0 - f0 - c1 - f1 - ... of the given hop length
// starting at a client; handy for distance-controlled fixtures.
inline GraphInstance path_graph(int num_clients, int num_facilities,
                                std::vector<std::int64_t> caps, std::int64_t k,
                                std::int64_t p) {
  std::vector<std::string> clients;
  std::vector<std::pair<std::string, std::int64_t>> facilities;
  for (int c = 0; c < num_clients; ++c) clients.push_back("c" + std::to_string(c));
  for (int f = 0; f < num_facilities; ++f)
    facilities.push_back({"f" + std::to_string(f), caps[f]});
  std::vector<std::pair<std::string, std::string>> edges;
  for (int f = 0; f < num_facilities; ++f) {
    edges.push_back({"c" + std::to_string(f), "f" + std::to_string(f)});
    if (f + 1 < num_clients)
      edges.push_back({"c" + std::to_string(f + 1), "f" + std::to_string(f)});
  }
  return graph(facilities, clients, edges, k, p);
}

// Def-style transfer condition checked over every subset U (independent of
// the max-flow path used by the implementation).
inline bool transfer_holds_bruteforce(const HostMetric& metric,
                                      const std::vector<std::int64_t>& caps,
                                      const TransferVector& y,
                                      const TransferVector& y2, int r) {
  if (y.den != y2.den) return false;
  if (y.total_num() != y2.total_num()) return false;
  const int n = metric.n;
  for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) {
    __int128 demand = 0, supply = 0;
    for (int u = 0; u < n; ++u)
      if (mask & (1ull << u)) demand += static_cast<__int128>(caps[u]) * y.num[u];
    for (int v = 0; v < n; ++v) {
      bool near = false;
      for (int u = 0; u < n && !near; ++u)
        if ((mask & (1ull << u)) && metric.within(v, u, r)) near = true;
      if (near) supply += static_cast<__int128>(caps[v]) * y2.num[v];
    }
    if (supply < demand) return false;
  }
  return true;
}

// All ways to split k and p over `n` components (for DP cross-checks).
inline void enumerate_partitions(
    int n, std::int64_t k, std::int64_t p,
    const std::function<bool(int, std::int64_t, std::int64_t)>& feas,
    std::vector<std::pair<std::int64_t, std::int64_t>>& current,
    std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>>& found) {
  if (static_cast<int>(current.size()) == n) {
    if (k == 0 && p == 0) found.push_back(current);
    return;
  }
  int i = static_cast<int>(current.size());
  for (std::int64_t ki = 0; ki <= k; ++ki)
    for (std::int64_t pi = 0; pi <= p; ++pi) {
      if (!feas(i, ki, pi)) continue;
      current.push_back({ki, pi});
      enumerate_partitions(n, k - ki, p - pi, feas, current, found);
      current.pop_back();
    }
}

}  // namespace ckso::testutil

#endif

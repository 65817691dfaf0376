#include "ckso/generators.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>

namespace ckso {

std::uint64_t Rng::next() {
  // splitmix64: tiny, seed-stable across platforms.
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::int64_t Rng::below(std::int64_t n) {
  if (n <= 0) throw std::invalid_argument("Rng::below needs n > 0");
  return static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(n));
}

std::int64_t Rng::range(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw std::invalid_argument("Rng::range needs lo <= hi");
  return lo + below(hi - lo + 1);
}

namespace {

std::string padded(const char* prefix, int value, int width) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%0*d", prefix, width, value);
  return buf;
}

}  // namespace

GapInstance gen_gap(int r) {
  if (r < 2) throw std::invalid_argument("gen_gap requires r >= 2");
  const int big_n = 2 * r;

  std::vector<std::string> clients;
  std::vector<std::pair<std::string, std::int64_t>> facilities;
  std::vector<std::pair<std::string, std::string>> edges;
  const std::int64_t cap = 4 * big_n;

  // Two hubs with two facilities each and 6N leaf clients per side.
  clients.push_back("c1");
  clients.push_back("c2");
  for (int i = 1; i <= 2; ++i) {
    std::string fa = "f" + std::to_string(i) + "a";
    std::string fb = "f" + std::to_string(i) + "b";
    facilities.push_back({fa, cap});
    facilities.push_back({fb, cap});
    std::string hub = "c" + std::to_string(i);
    edges.push_back({hub, fa});
    edges.push_back({hub, fb});
    for (int j = 1; j <= 6 * big_n; ++j) {
      std::string cid = padded(("c" + std::to_string(i) + "x").c_str(), j, 3);
      clients.push_back(cid);
      edges.push_back({cid, fa});
      edges.push_back({cid, fb});
    }
  }
  // The hub-to-hub path: N + 1 vertices, interior alternating F / C.
  std::string prev = "c1";
  for (int pos = 1; pos < big_n; ++pos) {
    std::string id;
    if (pos % 2 == 1) {
      id = padded("pf", pos, 2);
      facilities.push_back({id, cap});
    } else {
      id = padded("pc", pos, 2);
      clients.push_back(id);
    }
    if (pos % 2 == 1)
      edges.push_back({prev, id});
    else
      edges.push_back({id, prev});
    prev = id;
  }
  edges.push_back({"c2", prev});

  GapInstance out;
  out.graph = make_graph_instance(clients, facilities, edges, 3, 12 * big_n,
                                  CapacityMode::Hard);
  for (const char* id : {"f1a", "f2a"}) {
    auto it = std::lower_bound(out.graph.facility_ids.begin(),
                               out.graph.facility_ids.end(), std::string(id));
    out.suggested_skeleton.push_back(
        static_cast<int>(it - out.graph.facility_ids.begin()));
  }
  return out;
}

MetricInstance gen_random(const RandomSpec& spec) {
  if (spec.num_clients <= 0 || spec.num_facilities <= 0)
    throw std::invalid_argument("gen_random: empty sides");
  if (spec.p < 0 || spec.p > spec.num_clients)
    throw std::invalid_argument("gen_random: p out of range");
  if (spec.k < 0 ||
      (spec.capacity_mode == CapacityMode::Hard && spec.k > spec.num_facilities))
    throw std::invalid_argument("gen_random: k out of range");
  if (spec.cap_min < 0 || spec.cap_min > spec.cap_max)
    throw std::invalid_argument("gen_random: bad capacity range");

  Rng rng(spec.seed);
  const int width = spec.num_clients > 100 || spec.num_facilities > 100 ? 3 : 2;

  std::vector<std::string> clients;
  for (int c = 0; c < spec.num_clients; ++c) clients.push_back(padded("c", c, width));
  std::vector<std::pair<std::string, std::int64_t>> facilities;
  std::int64_t shared_cap = rng.range(spec.cap_min, spec.cap_max);
  for (int f = 0; f < spec.num_facilities; ++f) {
    std::int64_t cap = spec.uniform ? shared_cap : rng.range(spec.cap_min, spec.cap_max);
    facilities.push_back({padded("f", f, width), cap});
  }

  if (spec.model == RandomModel::Metric) {
    // L1 distances between grid points satisfy the triangle inequality by
    // construction; co-located points are allowed.
    std::vector<std::pair<std::int64_t, std::int64_t>> pts;
    for (int i = 0; i < spec.num_clients + spec.num_facilities; ++i)
      pts.push_back({rng.below(spec.grid_side), rng.below(spec.grid_side)});
    std::map<std::pair<std::string, std::string>, double> dmap;
    std::vector<std::string> all_ids;
    for (const auto& id : clients) all_ids.push_back(id);
    for (const auto& [id, cap] : facilities) all_ids.push_back(id);
    for (std::size_t a = 0; a < all_ids.size(); ++a)
      for (std::size_t b = 0; b < all_ids.size(); ++b) {
        double d = static_cast<double>(std::abs(pts[a].first - pts[b].first) +
                                       std::abs(pts[a].second - pts[b].second));
        dmap[{all_ids[a], all_ids[b]}] = d;
      }
    return make_metric_instance(Mode::Supplier, spec.capacity_mode, spec.k, spec.p,
                                clients, facilities, dmap);
  }

  // Graph model: optional spanning structure for connectivity, then a few
  // extra random edges per client.
  std::vector<std::pair<std::string, std::string>> edges;
  std::set<std::pair<int, int>> seen;
  auto add = [&](int c, int f) {
    if (seen.insert({c, f}).second)
      edges.push_back({clients[c], facilities[f].first});
  };
  if (spec.connected) {
    add(0, 0);
    for (int c = 1; c < spec.num_clients; ++c)
      add(c, static_cast<int>(rng.below(spec.num_facilities)));
    for (int f = 1; f < spec.num_facilities; ++f)
      add(static_cast<int>(rng.below(spec.num_clients)), f);
  }
  for (int c = 0; c < spec.num_clients; ++c) {
    std::int64_t extra = rng.below(3);
    for (std::int64_t e = 0; e < extra; ++e)
      add(c, static_cast<int>(rng.below(spec.num_facilities)));
  }
  if (edges.empty()) add(0, 0);
  GraphInstance g =
      make_graph_instance(clients, facilities, edges, spec.k, spec.p,
                          spec.capacity_mode);
  return metric_from_graph(g);
}

}  // namespace ckso

#include "ckso/instance.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "ckso/graph_algos.hpp"

namespace ckso {

int variant_factor(Variant v) {
  switch (v) {
    case Variant::Hard:
    case Variant::Soft:
      return 25;
    case Variant::Uniform:
      return 23;
    case Variant::UniformSoft:
      return 13;
  }
  return 25;
}

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::Hard:
      return "hard";
    case Variant::Soft:
      return "soft";
    case Variant::Uniform:
      return "uniform";
    case Variant::UniformSoft:
      return "uniform-soft";
  }
  return "?";
}

const char* mode_name(Mode m) { return m == Mode::Supplier ? "supplier" : "center"; }

const char* capacity_mode_name(CapacityMode m) {
  return m == CapacityMode::Hard ? "hard" : "soft";
}

std::size_t GraphInstance::num_edges() const {
  std::size_t total = 0;
  for (const auto& a : adj_client) total += a.size();
  return total;
}

bool GraphInstance::has_edge(int client, int facility) const {
  const auto& a = adj_client[client];
  return std::find(a.begin(), a.end(), facility) != a.end();
}

void GraphInstance::add_edge(int client, int facility) {
  adj_client[client].push_back(facility);
  adj_facility[facility].push_back(client);
}

void GraphInstance::sort_adjacency() {
  for (auto& a : adj_client) std::sort(a.begin(), a.end());
  for (auto& a : adj_facility) std::sort(a.begin(), a.end());
}

bool GraphInstance::uniform_capacities() const {
  for (const auto& c : capacities)
    if (c != capacities.front()) return false;
  return true;
}

bool MetricInstance::uniform_capacities() const {
  for (const auto& c : capacities)
    if (c != capacities.front()) return false;
  return true;
}

std::optional<int> MetricInstance::client_index(const std::string& id) const {
  auto it = std::lower_bound(client_ids.begin(), client_ids.end(), id);
  if (it == client_ids.end() || *it != id) return std::nullopt;
  return static_cast<int>(it - client_ids.begin());
}

std::optional<int> MetricInstance::facility_index(const std::string& id) const {
  auto it = std::lower_bound(facility_ids.begin(), facility_ids.end(), id);
  if (it == facility_ids.end() || *it != id) return std::nullopt;
  return static_cast<int>(it - facility_ids.begin());
}

namespace {

void sort_unique_or_throw(std::vector<std::string>& ids, const char* what) {
  std::sort(ids.begin(), ids.end());
  auto dup = std::adjacent_find(ids.begin(), ids.end());
  if (dup != ids.end())
    throw std::invalid_argument(std::string("duplicate ") + what + " id: " + *dup);
}

}  // namespace

MetricInstance make_metric_instance(
    Mode mode, CapacityMode cap_mode, std::int64_t k, std::int64_t p,
    std::vector<std::string> clients,
    std::vector<std::pair<std::string, std::int64_t>> facilities,
    const std::map<std::pair<std::string, std::string>, double>& distances) {
  MetricInstance inst;
  inst.mode = mode;
  inst.capacity_mode = cap_mode;
  inst.k = k;
  inst.p = p;
  inst.client_ids = std::move(clients);
  sort_unique_or_throw(inst.client_ids, "client");
  std::sort(facilities.begin(), facilities.end());
  for (std::size_t i = 1; i < facilities.size(); ++i)
    if (facilities[i].first == facilities[i - 1].first)
      throw std::invalid_argument("duplicate facility id: " + facilities[i].first);
  for (auto& [id, cap] : facilities) {
    inst.facility_ids.push_back(id);
    inst.capacities.push_back(cap);
  }

  const int n = inst.universe_size();
  inst.dist.assign(static_cast<std::size_t>(n) * n, 0.0);
  auto id_of = [&](int u) -> const std::string& {
    return u < inst.num_clients() ? inst.client_ids[u]
                                  : inst.facility_ids[u - inst.num_clients()];
  };
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (id_of(a) == id_of(b)) {
        inst.dist_univ_ref(a, b) = 0.0;
        continue;
      }
      auto it = distances.find({id_of(a), id_of(b)});
      if (it == distances.end()) it = distances.find({id_of(b), id_of(a)});
      if (it == distances.end())
        throw std::invalid_argument("missing distance between " + id_of(a) +
                                    " and " + id_of(b));
      inst.dist_univ_ref(a, b) = it->second;
    }
  }
  return inst;
}

GraphInstance make_graph_instance(
    std::vector<std::string> clients,
    std::vector<std::pair<std::string, std::int64_t>> facilities,
    const std::vector<std::pair<std::string, std::string>>& edges,
    std::int64_t k, std::int64_t p, CapacityMode cap_mode) {
  GraphInstance g;
  g.k = k;
  g.p = p;
  g.capacity_mode = cap_mode;
  g.client_ids = std::move(clients);
  sort_unique_or_throw(g.client_ids, "client");
  std::sort(facilities.begin(), facilities.end());
  for (std::size_t i = 1; i < facilities.size(); ++i)
    if (facilities[i].first == facilities[i - 1].first)
      throw std::invalid_argument("duplicate facility id: " + facilities[i].first);
  for (auto& [id, cap] : facilities) {
    g.facility_ids.push_back(id);
    g.capacities.push_back(cap);
  }
  g.adj_client.assign(g.client_ids.size(), {});
  g.adj_facility.assign(g.facility_ids.size(), {});
  std::set<std::pair<int, int>> seen;
  for (const auto& [cid, fid] : edges) {
    auto ci = std::lower_bound(g.client_ids.begin(), g.client_ids.end(), cid);
    auto fi = std::lower_bound(g.facility_ids.begin(), g.facility_ids.end(), fid);
    if (ci == g.client_ids.end() || *ci != cid)
      throw std::invalid_argument("edge references unknown client: " + cid);
    if (fi == g.facility_ids.end() || *fi != fid)
      throw std::invalid_argument("edge references unknown facility: " + fid);
    int c = static_cast<int>(ci - g.client_ids.begin());
    int f = static_cast<int>(fi - g.facility_ids.begin());
    if (seen.insert({c, f}).second) g.add_edge(c, f);
  }
  g.sort_adjacency();
  return g;
}

MetricInstance metric_from_graph(const GraphInstance& g, Mode mode) {
  MetricInstance inst;
  inst.mode = mode;
  inst.capacity_mode = g.capacity_mode;
  inst.k = g.k;
  inst.p = g.p;
  inst.client_ids = g.client_ids;
  inst.facility_ids = g.facility_ids;
  inst.capacities = g.capacities;
  const int n = inst.universe_size();
  inst.dist.assign(static_cast<std::size_t>(n) * n, kInfDist);
  std::vector<int> hops = vertex_distance_matrix(g);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int h = hops[static_cast<std::size_t>(a) * n + b];
      inst.dist_univ_ref(a, b) = h == kUnreachable ? kInfDist : static_cast<double>(h);
    }
  inst.graph = g;
  return inst;
}

std::int64_t Solution::total_open() const {
  std::int64_t total = 0;
  for (const auto& [id, mult] : open) total += mult;
  return total;
}

ValidationReport validate_metric(const MetricInstance& inst) {
  ValidationReport report;
  auto add = [&](std::string msg) { report.violations.push_back(std::move(msg)); };
  const int n = inst.universe_size();
  auto id_of = [&](int u) -> const std::string& {
    return u < inst.num_clients() ? inst.client_ids[u]
                                  : inst.facility_ids[u - inst.num_clients()];
  };

  for (int a = 0; a < n; ++a) {
    if (inst.dist_univ(a, a) != 0.0)
      add("d(" + id_of(a) + "," + id_of(a) + ") != 0");
    for (int b = a + 1; b < n; ++b) {
      double dab = inst.dist_univ(a, b);
      double dba = inst.dist_univ(b, a);
      if (dab != dba)
        add("asymmetric: d(" + id_of(a) + "," + id_of(b) + ")=" +
            std::to_string(dab) + " vs " + std::to_string(dba));
      if (dab < 0.0) add("negative distance between " + id_of(a) + " and " + id_of(b));
      if (std::isnan(dab)) add("NaN distance between " + id_of(a) + " and " + id_of(b));
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      for (int c = 0; c < n; ++c) {
        if (c == a || c == b) continue;
        if (inst.dist_univ(a, b) > inst.dist_univ(a, c) + inst.dist_univ(c, b)) {
          std::ostringstream os;
          os << "triangle violation: d(" << id_of(a) << "," << id_of(b) << ")="
             << inst.dist_univ(a, b) << " > " << inst.dist_univ(a, c) << " + "
             << inst.dist_univ(c, b) << " via " << id_of(c);
          add(os.str());
        }
      }
    }

  if (inst.p < 0 || inst.p > inst.num_clients())
    add("p out of range: " + std::to_string(inst.p));
  if (inst.k < 0) add("k negative");
  if (inst.capacity_mode == CapacityMode::Hard && inst.k > inst.num_facilities())
    add("k exceeds facility count in hard mode");
  if (inst.capacity_mode == CapacityMode::Soft &&
      inst.k > inst.num_clients() + inst.num_facilities())
    add("k exceeds |clients| + |facilities| in soft mode");
  for (std::size_t i = 0; i < inst.capacities.size(); ++i)
    if (inst.capacities[i] < 0)
      add("negative capacity at " + inst.facility_ids[i]);
  return report;
}

namespace {

template <class DistFn>
VerifyReport verify_solution_impl(const Solution& sol, std::int64_t k, std::int64_t p,
                                  CapacityMode cap_mode,
                                  const std::vector<std::string>& client_ids,
                                  const std::vector<std::string>& facility_ids,
                                  const std::vector<std::int64_t>& caps,
                                  DistFn dist, double r) {
  VerifyReport report;
  auto add = [&](std::string msg) { report.violations.push_back(std::move(msg)); };

  auto client_idx = [&](const std::string& id) -> int {
    auto it = std::lower_bound(client_ids.begin(), client_ids.end(), id);
    if (it == client_ids.end() || *it != id) return -1;
    return static_cast<int>(it - client_ids.begin());
  };
  auto facility_idx = [&](const std::string& id) -> int {
    auto it = std::lower_bound(facility_ids.begin(), facility_ids.end(), id);
    if (it == facility_ids.end() || *it != id) return -1;
    return static_cast<int>(it - facility_ids.begin());
  };

  std::map<int, int> mult;
  bool ids_ok = true;
  for (const auto& [id, m] : sol.open) {
    int f = facility_idx(id);
    if (f < 0) {
      add("unknown facility id in open set: " + id);
      ids_ok = false;
      continue;
    }
    if (m <= 0) add("non-positive multiplicity at " + id);
    mult[f] += m;
    if (cap_mode == CapacityMode::Hard && mult[f] > 1)
      add("hard capacities: facility opened more than once: " + id);
  }
  std::int64_t total_open = 0;
  for (auto& [f, m] : mult) total_open += m;
  if (total_open != k)
    add("total open multiplicity " + std::to_string(total_open) + " != k=" +
        std::to_string(k));

  if (static_cast<std::int64_t>(sol.assign.size()) != p)
    add("served count " + std::to_string(sol.assign.size()) + " != p=" +
        std::to_string(p));

  std::set<int> served;
  std::map<int, std::int64_t> load;
  double achieved = 0.0;
  for (const auto& [cid, fid] : sol.assign) {
    int c = client_idx(cid);
    int f = facility_idx(fid);
    if (c < 0) {
      add("unknown client id in assignment: " + cid);
      ids_ok = false;
      continue;
    }
    if (f < 0) {
      add("unknown facility id in assignment: " + fid);
      ids_ok = false;
      continue;
    }
    if (!served.insert(c).second) add("client assigned twice: " + cid);
    if (mult.find(f) == mult.end()) add("client " + cid + " assigned to closed facility " + fid);
    load[f] += 1;
    double d = dist(c, f);
    achieved = std::max(achieved, d);
    if (!(d <= r)) {
      std::ostringstream os;
      os << "assignment " << cid << "->" << fid << " at distance " << d << " > " << r;
      add(os.str());
    }
  }
  for (const auto& [f, used] : load) {
    auto it = mult.find(f);
    std::int64_t allowed = it == mult.end() ? 0 : caps[f] * it->second;
    if (used > allowed)
      add("capacity exceeded at " + facility_ids[f] + ": " + std::to_string(used) +
          " > " + std::to_string(allowed));
  }
  (void)ids_ok;
  report.achieved_radius = achieved;
  return report;
}

}  // namespace

VerifyReport verify_solution(const MetricInstance& inst, const Solution& sol, double r) {
  return verify_solution_impl(
      sol, inst.k, inst.p, inst.capacity_mode, inst.client_ids, inst.facility_ids,
      inst.capacities, [&](int c, int f) { return inst.dist_cf(c, f); }, r);
}

VerifyReport verify_solution(const GraphInstance& g, const Solution& sol, int r) {
  std::vector<int> hops = vertex_distance_matrix(g);
  const int n = g.num_clients() + g.num_facilities();
  auto dist = [&](int c, int f) {
    int h = hops[static_cast<std::size_t>(c) * n + facility_vertex(g, f)];
    return h == kUnreachable ? kInfDist : static_cast<double>(h);
  };
  return verify_solution_impl(sol, g.k, g.p, g.capacity_mode, g.client_ids,
                              g.facility_ids, g.capacities, dist,
                              static_cast<double>(r));
}

}  // namespace ckso

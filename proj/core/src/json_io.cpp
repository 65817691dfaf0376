#include "ckso/json_io.hpp"

#include <fstream>
#include <map>
#include <nlohmann/json.hpp>

namespace ckso {

using nlohmann::json;

namespace {

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return j;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << text;
}

}  // namespace

MetricInstance parse_instance(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
  try {
    Mode mode = Mode::Supplier;
    if (j.contains("mode")) {
      std::string m = j.at("mode");
      if (m == "supplier")
        mode = Mode::Supplier;
      else if (m == "center")
        mode = Mode::Center;
      else
        throw ParseError("unknown mode: " + m);
    }
    CapacityMode cap_mode = CapacityMode::Hard;
    if (j.contains("capacity_mode")) {
      std::string m = j.at("capacity_mode");
      if (m == "hard")
        cap_mode = CapacityMode::Hard;
      else if (m == "soft")
        cap_mode = CapacityMode::Soft;
      else
        throw ParseError("unknown capacity_mode: " + m);
    }
    std::int64_t k = j.at("k");
    std::int64_t p = j.at("p");
    std::vector<std::string> clients = j.at("clients");
    std::vector<std::pair<std::string, std::int64_t>> facilities;
    for (const auto& f : j.at("facilities"))
      facilities.push_back({f.at("id"), f.at("cap")});

    const json& metric = j.at("metric");
    std::string type = metric.at("type");
    if (type == "matrix") {
      std::vector<std::string> order = metric.at("order");
      const json& values = metric.at("values");
      if (values.size() != order.size())
        throw ParseError("metric values row count differs from order");
      std::map<std::pair<std::string, std::string>, double> dmap;
      for (std::size_t a = 0; a < order.size(); ++a) {
        if (values[a].size() != order.size())
          throw ParseError("metric values are not square");
        for (std::size_t b = 0; b < order.size(); ++b)
          dmap[{order[a], order[b]}] = values[a][b];
      }
      return make_metric_instance(mode, cap_mode, k, p, clients, facilities, dmap);
    }
    if (type == "graph") {
      std::vector<std::pair<std::string, std::string>> edges;
      for (const auto& e : metric.at("edges")) edges.push_back({e.at(0), e.at(1)});
      GraphInstance g = make_graph_instance(clients, facilities, edges, k, p, cap_mode);
      return metric_from_graph(g, mode);
    }
    throw ParseError("unknown metric type: " + type);
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

MetricInstance load_instance(const std::string& path) {
  return parse_instance(read_file(path).dump());
}

std::string instance_to_json(const MetricInstance& inst) {
  json j;
  j["mode"] = mode_name(inst.mode);
  j["capacity_mode"] = capacity_mode_name(inst.capacity_mode);
  j["k"] = inst.k;
  j["p"] = inst.p;
  j["clients"] = inst.client_ids;
  json facs = json::array();
  for (int f = 0; f < inst.num_facilities(); ++f)
    facs.push_back({{"id", inst.facility_ids[f]}, {"cap", inst.capacities[f]}});
  j["facilities"] = std::move(facs);

  if (inst.graph) {
    json edges = json::array();
    const GraphInstance& g = *inst.graph;
    for (int c = 0; c < g.num_clients(); ++c)
      for (int f : g.adj_client[c])
        edges.push_back(json::array({g.client_ids[c], g.facility_ids[f]}));
    j["metric"] = {{"type", "graph"}, {"edges", std::move(edges)}};
  } else {
    // One row per universe id; ids shared between roles appear once.
    std::vector<std::string> order;
    std::vector<int> univ;
    std::map<std::string, int> seen;
    auto push = [&](const std::string& id, int u) {
      if (seen.emplace(id, u).second) {
        order.push_back(id);
        univ.push_back(u);
      }
    };
    for (int c = 0; c < inst.num_clients(); ++c) push(inst.client_ids[c], c);
    for (int f = 0; f < inst.num_facilities(); ++f)
      push(inst.facility_ids[f], inst.num_clients() + f);
    json values = json::array();
    for (std::size_t a = 0; a < order.size(); ++a) {
      json row = json::array();
      for (std::size_t b = 0; b < order.size(); ++b)
        row.push_back(inst.dist_univ(univ[a], univ[b]));
      values.push_back(std::move(row));
    }
    j["metric"] = {{"type", "matrix"}, {"order", order}, {"values", values}};
  }
  return j.dump(2);
}

void save_instance(const MetricInstance& inst, const std::string& path) {
  write_file(path, instance_to_json(inst));
}

Solution parse_solution(const std::string& json_text) {
  try {
    json j = json::parse(json_text);
    Solution sol;
    sol.radius = j.at("radius");
    for (const auto& o : j.at("open"))
      sol.open.push_back({o.at("id"), o.at("mult")});
    for (const auto& a : j.at("assign")) sol.assign.push_back({a.at(0), a.at(1)});
    return sol;
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
}

Solution load_solution(const std::string& path) {
  return parse_solution(read_file(path).dump());
}

std::string solution_to_json(const Solution& sol) {
  json j;
  j["radius"] = sol.radius;
  json open = json::array();
  for (const auto& [id, mult] : sol.open)
    open.push_back({{"id", id}, {"mult", mult}});
  j["open"] = std::move(open);
  json assign = json::array();
  for (const auto& [c, f] : sol.assign) assign.push_back(json::array({c, f}));
  j["assign"] = std::move(assign);
  return j.dump(2);
}

void save_solution(const Solution& sol, const std::string& path) {
  write_file(path, solution_to_json(sol));
}

}  // namespace ckso

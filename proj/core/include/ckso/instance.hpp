// Instance and solution data model shared by the whole solver suite.
//
// A supplier instance has separate client and facility point sets over a
// symmetric distance function; a center instance uses one shared vertex set
// for both roles.  Distances are stored as a full matrix over the tagged
// universe [clients..., facilities...], so co-located points (distance 0)
// and instances backed by unweighted bipartite graphs (hop distances) fit
// the same layout.

#ifndef CKSO_INSTANCE_HPP
#define CKSO_INSTANCE_HPP

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ckso {

enum class Mode { Supplier, Center };
enum class CapacityMode { Hard, Soft };

// Algorithm path selector.  Hard and Soft guarantee a factor of 25,
// Uniform 23 and UniformSoft 13.
enum class Variant { Hard, Soft, Uniform, UniformSoft };

int variant_factor(Variant v);
const char* variant_name(Variant v);
const char* mode_name(Mode m);
const char* capacity_mode_name(CapacityMode m);

constexpr double kInfDist = std::numeric_limits<double>::infinity();

class PipelineError : public std::runtime_error {
 public:
  PipelineError(std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

// Unweighted bipartite graph form of the problem: a "distance-1 solution"
// assigns each served client to an adjacent open facility.
struct GraphInstance {
  std::vector<std::string> client_ids;    // sorted, unique
  std::vector<std::string> facility_ids;  // sorted, unique
  std::vector<std::int64_t> capacities;   // per facility index
  std::vector<std::vector<int>> adj_client;    // client -> facility indices
  std::vector<std::vector<int>> adj_facility;  // facility -> client indices
  std::int64_t k = 0;
  std::int64_t p = 0;
  CapacityMode capacity_mode = CapacityMode::Hard;

  int num_clients() const { return static_cast<int>(client_ids.size()); }
  int num_facilities() const { return static_cast<int>(facility_ids.size()); }
  std::size_t num_edges() const;
  bool has_edge(int client, int facility) const;
  void add_edge(int client, int facility);
  void sort_adjacency();  // deterministic order downstream

  bool uniform_capacities() const;
};

struct MetricInstance {
  Mode mode = Mode::Supplier;
  CapacityMode capacity_mode = CapacityMode::Hard;
  std::int64_t k = 0;
  std::int64_t p = 0;
  std::vector<std::string> client_ids;    // sorted, unique
  std::vector<std::string> facility_ids;  // sorted, unique
  std::vector<std::int64_t> capacities;   // per facility index

  // Full symmetric matrix over the universe [clients..., facilities...].
  // Entry (a,b) is dist_[a * n + b] with n = |C| + |F|.
  std::vector<double> dist;

  // Present when the instance was defined by a bipartite graph; distances
  // above are then hop counts and solve/oracle radii are hop radii.
  std::optional<GraphInstance> graph;

  int num_clients() const { return static_cast<int>(client_ids.size()); }
  int num_facilities() const { return static_cast<int>(facility_ids.size()); }
  int universe_size() const { return num_clients() + num_facilities(); }

  double dist_univ(int a, int b) const {
    return dist[static_cast<std::size_t>(a) * universe_size() + b];
  }
  // client index / facility index accessor
  double dist_cf(int client, int facility) const {
    return dist_univ(client, num_clients() + facility);
  }
  double& dist_univ_ref(int a, int b) {
    return dist[static_cast<std::size_t>(a) * universe_size() + b];
  }

  bool uniform_capacities() const;

  std::optional<int> client_index(const std::string& id) const;
  std::optional<int> facility_index(const std::string& id) const;
};

// Builders assign dense indices by sorted id; duplicate ids are rejected.
MetricInstance make_metric_instance(
    Mode mode, CapacityMode cap_mode, std::int64_t k, std::int64_t p,
    std::vector<std::string> clients,
    std::vector<std::pair<std::string, std::int64_t>> facilities,
    const std::map<std::pair<std::string, std::string>, double>& distances);

GraphInstance make_graph_instance(
    std::vector<std::string> clients,
    std::vector<std::pair<std::string, std::int64_t>> facilities,
    const std::vector<std::pair<std::string, std::string>>& edges,
    std::int64_t k, std::int64_t p,
    CapacityMode cap_mode = CapacityMode::Hard);

// Derives the hop metric of a graph instance (infinity across components).
MetricInstance metric_from_graph(const GraphInstance& g, Mode mode = Mode::Supplier);

struct Solution {
  std::vector<std::pair<std::string, int>> open;  // facility id, multiplicity
  std::vector<std::pair<std::string, std::string>> assign;  // client -> facility
  double radius = 0.0;

  std::int64_t total_open() const;
  std::size_t num_served() const { return assign.size(); }
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

struct VerifyReport {
  std::vector<std::string> violations;
  double achieved_radius = 0.0;
  bool ok() const { return violations.empty(); }
};

// Reports every violated symmetry / triangle / range constraint; an empty
// report means the instance is valid.
ValidationReport validate_metric(const MetricInstance& inst);

// Confirms all solution invariants and radius <= r.
VerifyReport verify_solution(const MetricInstance& inst, const Solution& sol, double r);
VerifyReport verify_solution(const GraphInstance& g, const Solution& sol, int r);

}  // namespace ckso

#endif  // CKSO_INSTANCE_HPP

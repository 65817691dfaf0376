// Instance generators: the unbounded-gap construction and seeded random
// instances for property tests and benchmarks.

#ifndef CKSO_GENERATORS_HPP
#define CKSO_GENERATORS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ckso/instance.hpp"

namespace ckso {

// Deterministic across platforms: raw mt19937_64 with modulo draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed * 0x9E3779B97F4A7C15ull + 1) {}
  std::uint64_t next();
  // uniform in [0, n)
  std::int64_t below(std::int64_t n);
  // uniform in [lo, hi]
  std::int64_t range(std::int64_t lo, std::int64_t hi);

 private:
  std::uint64_t state_;
};

struct GapInstance {
  GraphInstance graph;
  std::vector<int> suggested_skeleton;  // facility indices
};

// The N = 2r construction: a path between two hub clients, two facilities
// per hub, 6N leaf clients per side, uniform capacity 4N, k = 3, p = 12N.
// Its strengthened LP is feasible while no distance-r solution exists.
GapInstance gen_gap(int r);

enum class RandomModel { Metric, Graph };

struct RandomSpec {
  int num_clients = 8;
  int num_facilities = 4;
  std::int64_t k = 2;
  std::int64_t p = 4;
  std::int64_t cap_min = 1;
  std::int64_t cap_max = 4;
  RandomModel model = RandomModel::Metric;
  bool connected = true;           // graph model only
  int grid_side = 10;              // metric model: L1 distances on a grid
  CapacityMode capacity_mode = CapacityMode::Hard;
  bool uniform = false;            // draw one shared capacity
  std::uint64_t seed = 1;
};

MetricInstance gen_random(const RandomSpec& spec);

}  // namespace ckso

#endif  // CKSO_GENERATORS_HPP

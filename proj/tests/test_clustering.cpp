#include "doctest.h"

#include "ckso/clustering.hpp"
#include "ckso/generators.hpp"
#include "ckso/graph_algos.hpp"
#include "ckso/lp.hpp"
#include "ckso/skeleton.hpp"
#include "test_util.hpp"

using namespace ckso;

TEST_CASE("prune_and_split shapes") {
  SUBCASE("everything within 5 of a single skeleton vertex stays together") {
    auto g = testutil::path_graph(4, 4, {1, 1, 1, 1}, 1, 2);
    auto dec = prune_and_split(g, {0});
    // d(f0, f3) = 6 > 5 prunes the far end but c3 (hop 5... c3-f3 only).
    REQUIRE(!dec.components.empty());
    CHECK(dec.components[0].skeleton == std::vector<int>{0});
  }
  SUBCASE("vertices beyond distance 5 are removed") {
    // Path f0 c0 f1 c1 f2 c2 f3: d(f0, f3) = 6, d(f0, c2) = 5.
    auto g = testutil::graph(
        {{"f0", 1}, {"f1", 1}, {"f2", 1}, {"f3", 1}}, {"c0", "c1", "c2"},
        {{"c0", "f0"}, {"c0", "f1"}, {"c1", "f1"}, {"c1", "f2"}, {"c2", "f2"},
         {"c2", "f3"}},
        1, 1);
    auto dec = prune_and_split(g, {0});
    REQUIRE(dec.components.size() == 1);
    const Component& comp = dec.components[0];
    CHECK(comp.graph.num_facilities() == 3);  // f3 pruned
    CHECK(comp.graph.num_clients() == 3);     // c2 kept at distance 5
  }
  SUBCASE("two skeleton vertices with distant 5-balls split") {
    // Two disjoint stars linked to nothing: distance is infinite (>= 12).
    auto g = testutil::graph(
        {{"f0", 2}, {"f1", 2}}, {"a0", "a1", "b0", "b1"},
        {{"a0", "f0"}, {"a1", "f0"}, {"b0", "f1"}, {"b1", "f1"}}, 2, 2);
    auto dec = prune_and_split(g, {0, 1});
    REQUIRE(dec.components.size() == 2);
    CHECK(dec.components[0].skeleton.size() == 1);
    CHECK(dec.components[1].skeleton.size() == 1);
  }
}

TEST_CASE("decomposition invariant: every kept vertex within 5 of its S_i") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    RandomSpec spec;
    spec.num_clients = 16;
    spec.num_facilities = 8;
    spec.k = 4;
    spec.p = 6;
    spec.model = RandomModel::Graph;
    spec.connected = seed % 2 == 0;
    spec.seed = seed;
    auto inst = gen_random(spec);
    GraphInstance g = cap_truncate(*inst.graph);
    auto cands = skeleton_candidates(g, g.k);
    const auto& skel = cands.back().facilities;
    auto dec = prune_and_split(g, skel);

    std::size_t skel_total = 0;
    for (const Component& comp : dec.components) {
      REQUIRE(!comp.skeleton.empty());
      skel_total += comp.skeleton.size();
      std::vector<int> sources;
      for (int s : comp.skeleton) sources.push_back(facility_vertex(comp.graph, s));
      auto dm = multi_source_distances(comp.graph, sources);
      const int n = comp.graph.num_clients() + comp.graph.num_facilities();
      for (int v = 0; v < n; ++v) {
        CHECK(dm.reachable(v));
        CHECK(dm.at(v) <= 5);
        if (is_facility_vertex(comp.graph, v)) CHECK(dm.at(v) <= 4);
      }
    }
    CHECK(skel_total == skel.size());
  }
}

namespace {

// One facility of capacity 1 with a single adjacent client; the component
// LP is feasible only with k_i = 1 and p_i <= 1.
ComponentDecomposition two_identical_components() {
  auto g = testutil::graph({{"f0", 1}, {"f1", 1}}, {"c0", "c1"},
                           {{"c0", "f0"}, {"c1", "f1"}}, 2, 2);
  return prune_and_split(g, {0, 1});
}

FeasOracle lp_oracle(const ComponentDecomposition& dec, bool soft = false) {
  return [&dec, soft](int i, std::int64_t ki, std::int64_t pi) {
    const Component& comp = dec.components[i];
    LPModel m = build_lp(comp.graph, comp.skeleton, ki, pi, !soft);
    return lp_feasible(m).feasible;
  };
}

}  // namespace

TEST_CASE("partition_dp") {
  SUBCASE("single component passes through (k, p)") {
    auto g = testutil::graph({{"f", 2}}, {"c0", "c1"}, {{"c0", "f"}, {"c1", "f"}},
                             1, 2);
    auto dec = prune_and_split(g, {0});
    REQUIRE(dec.components.size() == 1);
    auto part = partition_dp(dec, 1, 2, lp_oracle(dec));
    REQUIRE(part.has_value());
    CHECK((*part)[0].k_i == 1);
    CHECK((*part)[0].p_i == 2);
    CHECK_FALSE(partition_dp(dec, 1, 3, lp_oracle(dec)).has_value());
  }
  SUBCASE("two identical unit components force (1,1), (1,1)") {
    auto dec = two_identical_components();
    REQUIRE(dec.components.size() == 2);
    auto part = partition_dp(dec, 2, 2, lp_oracle(dec));
    REQUIRE(part.has_value());
    CHECK((*part)[0].k_i == 1);
    CHECK((*part)[0].p_i == 1);
    CHECK((*part)[1].k_i == 1);
    CHECK((*part)[1].p_i == 1);
  }
  SUBCASE("components needing two facilities each reject k=3") {
    // Each side: two unit facilities sharing two clients; serving both
    // clients needs both facilities, so (k_i, p_i) = (2, 2) is forced.
    auto g = testutil::graph(
        {{"f0", 1}, {"f1", 1}, {"g0", 1}, {"g1", 1}}, {"a0", "a1", "b0", "b1"},
        {{"a0", "f0"}, {"a0", "f1"}, {"a1", "f0"}, {"a1", "f1"},
         {"b0", "g0"}, {"b0", "g1"}, {"b1", "g0"}, {"b1", "g1"}},
        3, 4);
    auto dec = prune_and_split(g, {0, 2});
    REQUIRE(dec.components.size() == 2);
    CHECK_FALSE(partition_dp(dec, 3, 4, lp_oracle(dec)).has_value());
    auto part = partition_dp(dec, 4, 4, lp_oracle(dec));
    REQUIRE(part.has_value());
    CHECK((*part)[0].k_i == 2);
  }
}

TEST_CASE("partition_dp agrees with exhaustive enumeration") {
  int cases = 0;
  for (std::uint64_t seed = 1; cases < 40; ++seed) {
    RandomSpec spec;
    spec.num_clients = 9;
    spec.num_facilities = 6;
    spec.k = 3;
    spec.p = 4;
    spec.cap_max = 2;
    spec.model = RandomModel::Graph;
    spec.connected = false;
    spec.seed = seed;
    auto inst = gen_random(spec);
    GraphInstance g = cap_truncate(*inst.graph);
    auto cands = skeleton_candidates(g, g.k);
    auto dec = prune_and_split(g, cands.back().facilities);
    if (dec.components.size() > 3) continue;

    Rng rng(seed * 101);
    std::int64_t k = rng.range(static_cast<std::int64_t>(cands.back().facilities.size()), 6);
    std::int64_t p = rng.range(0, 6);

    auto feas = lp_oracle(dec);
    auto dp = partition_dp(dec, k, p, feas);

    std::vector<std::pair<std::int64_t, std::int64_t>> current;
    std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> found;
    testutil::enumerate_partitions(static_cast<int>(dec.components.size()), k, p,
                                   feas, current, found);
    CHECK(dp.has_value() == !found.empty());
    if (dp) {
      // The returned witness must itself be one of the enumerated splits.
      std::int64_t ksum = 0, psum = 0;
      for (std::size_t i = 0; i < dp->size(); ++i) {
        CHECK(feas(static_cast<int>(i), (*dp)[i].k_i, (*dp)[i].p_i));
        ksum += (*dp)[i].k_i;
        psum += (*dp)[i].p_i;
      }
      CHECK(ksum == k);
      CHECK(psum == p);
    }
    ++cases;
  }
  CHECK(cases == 40);
}

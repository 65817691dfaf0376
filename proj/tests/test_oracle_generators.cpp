#include "doctest.h"

#include "ckso/generators.hpp"
#include "ckso/graph_algos.hpp"
#include "ckso/lp.hpp"
#include "ckso/oracle.hpp"
#include "ckso/thresholding.hpp"
#include "test_util.hpp"

using namespace ckso;

TEST_CASE("exact_opt basics") {
  SUBCASE("forced assignment at distance 5") {
    std::map<std::pair<std::string, std::string>, double> d;
    d[{"c", "f"}] = 5;
    auto inst = make_metric_instance(Mode::Supplier, CapacityMode::Hard, 1, 1,
                                     {"c"}, {{"f", 1}}, d);
    auto out = exact_opt(inst);
    REQUIRE(out.feasible);
    CHECK(out.opt == 5.0);
    CHECK(out.witness->radius == 5.0);
  }
  SUBCASE("p=0 is optimum zero with any k facilities") {
    std::map<std::pair<std::string, std::string>, double> d;
    d[{"c", "f"}] = 5;
    auto inst = make_metric_instance(Mode::Supplier, CapacityMode::Hard, 1, 0,
                                     {"c"}, {{"f", 1}}, d);
    auto out = exact_opt(inst);
    REQUIRE(out.feasible);
    CHECK(out.opt == 0.0);
    CHECK(out.witness->total_open() == 1);
  }
  SUBCASE("k=0 with p>0 is infeasible") {
    std::map<std::pair<std::string, std::string>, double> d;
    d[{"c", "f"}] = 5;
    auto inst = make_metric_instance(Mode::Supplier, CapacityMode::Hard, 0, 1,
                                     {"c"}, {{"f", 1}}, d);
    CHECK_FALSE(exact_opt(inst).feasible);
  }
  SUBCASE("budget refusal raises, never guesses") {
    RandomSpec spec;
    spec.num_clients = 6;
    spec.num_facilities = 6;
    spec.k = 3;
    spec.p = 4;
    spec.seed = 4;
    auto inst = gen_random(spec);
    OracleOptions opts;
    opts.flow_budget = 5;
    CHECK_THROWS_AS(exact_opt(inst, opts), OracleBudgetExceeded);
  }
}

TEST_CASE("gap instance generator") {
  auto gap = gen_gap(2);
  const GraphInstance& g = gap.graph;
  SUBCASE("shape: N=4, p=48, uniform capacity 16, six facilities") {
    CHECK(g.p == 48);
    CHECK(g.k == 3);
    CHECK(g.num_facilities() == 6);
    CHECK(g.num_clients() == 2 + 48 + 1);  // hubs + leaves + path client
    for (auto c : g.capacities) CHECK(c == 16);
  }
  SUBCASE("skeleton separation d(f_{1,1}, f_{2,1}) = 6") {
    REQUIRE(gap.suggested_skeleton.size() == 2);
    auto dm = single_source_distances(
        g, facility_vertex(g, gap.suggested_skeleton[0]));
    CHECK(dm.at(facility_vertex(g, gap.suggested_skeleton[1])) == 6);
  }
  SUBCASE("strengthened LP is feasible while radius 2 is not") {
    LPModel m = build_lp(g, gap.suggested_skeleton, 3, 48);
    CHECK(lp_feasible(m).feasible);
    auto inst = metric_from_graph(g);
    CHECK_FALSE(oracle_feasible_at(inst, 2.0));
    // Capacity 16 < 24 side clients forces two facilities per side, and the
    // facilities within radius 4 of the two sides are disjoint sets, so
    // radius 4 needs four openings; radius 5 brings the path facilities in
    // range of everything and 3 * 16 = p.
    auto out = exact_opt(inst);
    REQUIRE(out.feasible);
    CHECK(out.opt == 5.0);
  }
  SUBCASE("r below 2 is rejected") { CHECK_THROWS(gen_gap(1)); }
}

TEST_CASE("gen_random determinism and validity") {
  SUBCASE("same seed, same instance") {
    RandomSpec spec;
    spec.num_clients = 9;
    spec.num_facilities = 5;
    spec.k = 2;
    spec.p = 4;
    spec.seed = 42;
    auto a = gen_random(spec);
    auto b = gen_random(spec);
    CHECK(a.dist == b.dist);
    CHECK(a.capacities == b.capacities);
    spec.model = RandomModel::Graph;
    auto c = gen_random(spec);
    auto d = gen_random(spec);
    CHECK(c.dist == d.dist);
  }
  SUBCASE("metric model always validates") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      RandomSpec spec;
      spec.num_clients = 7;
      spec.num_facilities = 4;
      spec.k = 2;
      spec.p = 3;
      spec.seed = seed;
      CHECK(validate_metric(gen_random(spec)).ok());
    }
  }
  SUBCASE("oracle-checkable sizes stay within the default budget") {
    RandomSpec spec;
    spec.num_clients = 15;
    spec.num_facilities = 8;
    spec.k = 3;
    spec.p = 8;
    spec.seed = 7;
    auto inst = gen_random(spec);
    auto out = exact_opt(inst);  // C(8,3) = 56 subsets per threshold
    CHECK(out.feasible);
  }
  SUBCASE("unsatisfiable parameters are rejected") {
    RandomSpec spec;
    spec.num_clients = 3;
    spec.num_facilities = 2;
    spec.k = 3;  // k > |F| in hard mode
    spec.p = 1;
    CHECK_THROWS(gen_random(spec));
    spec.k = 1;
    spec.p = 5;  // p > |C|
    CHECK_THROWS(gen_random(spec));
  }
}

TEST_CASE("oracle self-consistency on random instances") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    RandomSpec spec;
    spec.num_clients = 8;
    spec.num_facilities = 5;
    spec.k = 2;
    spec.p = 5;
    spec.seed = seed;
    auto inst = gen_random(spec);
    auto out = exact_opt(inst);
    if (!out.feasible) continue;
    REQUIRE(out.witness.has_value());
    CHECK(out.witness->radius == out.opt);
    CHECK(verify_solution(inst, *out.witness, out.opt).ok());
    // No smaller threshold admits a solution.
    ThresholdSet taus = candidate_thresholds(inst);
    for (double tau : taus.values) {
      if (tau >= out.opt) break;
      CHECK_FALSE(oracle_feasible_at(inst, tau));
    }
  }
}

TEST_CASE("soft oracle enumerates multisets") {
  // One site of capacity 1: soft allows stacking copies.
  std::map<std::pair<std::string, std::string>, double> d;
  d[{"c1", "f"}] = 2;
  d[{"c2", "f"}] = 2;
  d[{"c1", "c2"}] = 4;
  auto inst = make_metric_instance(Mode::Supplier, CapacityMode::Soft, 2, 2,
                                   {"c1", "c2"}, {{"f", 1}}, d);
  auto out = exact_opt(inst);
  REQUIRE(out.feasible);
  CHECK(out.opt == 2.0);
  REQUIRE(out.witness->open.size() == 1);
  CHECK(out.witness->open[0].second == 2);  // multiplicity two
}

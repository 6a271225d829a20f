#include <algorithm>
#include <iterator>
#include <random>

#include "doctest.h"
#include "dynseg/similarity.hpp"
#include "test_util.hpp"

using namespace dynseg;
using testutil::snap;

TEST_CASE("node similarity") {
  Snapshot prev = snap(0, 10, {}, {0, 1, 2});
  Snapshot next = snap(10, 20, {}, {1, 2, 3});
  CHECK(node_similarity(prev, next) == 0.5);          // 2 common / 4 united
  CHECK(node_similarity(prev, prev) == 1.0);
  Snapshot empty_a = snap(0, 10, {});
  Snapshot empty_b = snap(10, 20, {});
  CHECK(node_similarity(empty_a, empty_b) == 1.0);    // empty pair: unchanged
}

TEST_CASE("link similarity") {
  Snapshot prev = snap(0, 10, {{0, 1}});
  Snapshot next = snap(10, 20, {{0, 1}, {1, 2}});
  CHECK(link_similarity(prev, next) == 0.5);
  Snapshot other = snap(10, 20, {{5, 6}});
  CHECK(link_similarity(prev, other) == 0.0);
  CHECK(link_similarity(snap(0, 10, {}), snap(10, 20, {})) == 1.0);
}

TEST_CASE("neighbor stability") {
  Snapshot prev = snap(0, 10, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  Snapshot next = snap(10, 20, {{0, 1}, {0, 2}});
  CHECK(neighbor_stability(0, prev, next) == 0.5);  // {1,2,3,4} vs {1,2}
  CHECK(neighbor_stability(1, prev, next) == 1.0);  // unchanged {0}

  Snapshot iso_a = snap(0, 10, {}, {7});
  Snapshot iso_b = snap(10, 20, {}, {7});
  CHECK(neighbor_stability(7, iso_a, iso_b) == 1.0);  // isolated in both

  CHECK_THROWS_AS((void)neighbor_stability(3, prev, next), Error);  // 3 left
}

TEST_CASE("neighborhood similarity on the shrinking star") {
  // Star 0-{1,2,3,4} -> 0-{1,2}: common {0,1,2}, stabilities {1/2, 1, 1}.
  Snapshot prev = snap(0, 10, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  Snapshot next = snap(10, 20, {{0, 1}, {0, 2}});
  CHECK(neighborhood_similarity(prev, next) ==
        doctest::Approx(5.0 / 6.0).epsilon(1e-15));
  CHECK(link_similarity(prev, next) == 0.5);  // the two metrics diverge here
}

TEST_CASE("neighborhood similarity conventions") {
  Snapshot a = snap(0, 10, {{0, 1}, {1, 2}});
  CHECK(neighborhood_similarity(a, a) == 1.0);
  Snapshot b = snap(10, 20, {{8, 9}});
  CHECK(neighborhood_similarity(a, b) == 0.0);  // no common nodes
}

TEST_CASE("adjacency correlation") {
  // Over union {0,1,2}: prev links {(0,1)}, next {(0,1),(1,2)} gives
  // indicator vectors (1,0,0) and (1,1,0) on pairs (01,02,12) -> r = 0.5.
  Snapshot prev = snap(0, 10, {{0, 1}}, {2});
  Snapshot next = snap(10, 20, {{0, 1}, {1, 2}});
  CHECK(adjacency_correlation(prev, next) == doctest::Approx(0.5).epsilon(1e-12));

  Snapshot same = snap(0, 10, {{0, 1}, {1, 2}});
  CHECK(adjacency_correlation(same, same) == 1.0);

  Snapshot no_links = snap(10, 20, {}, {0, 1, 2});
  CHECK(adjacency_correlation(prev, no_links) == 0.0);  // constant vector

  Snapshot complete_a = snap(0, 10, {{0, 1}, {0, 2}, {1, 2}});
  Snapshot complete_b = snap(10, 20, {{0, 1}, {0, 2}, {1, 2}});
  CHECK(adjacency_correlation(complete_a, complete_b) == 0.0);  // all-ones
}

TEST_CASE("jaccard metrics are symmetric and bounded") {
  std::mt19937 rng(17);
  for (int round = 0; round < 40; ++round) {
    Snapshot a = testutil::random_snapshot(rng, 14, 0.3, 0, 10);
    Snapshot b = testutil::random_snapshot(rng, 14, 0.3, 10, 20);
    for (double s : {node_similarity(a, b), link_similarity(a, b),
                     neighborhood_similarity(a, b)}) {
      CHECK(s >= 0.0);
      CHECK(s <= 1.0);
    }
    CHECK(node_similarity(a, b) == node_similarity(b, a));
    CHECK(link_similarity(a, b) == link_similarity(b, a));
    CHECK(neighborhood_similarity(a, b) == neighborhood_similarity(b, a));
    const double g = adjacency_correlation(a, b);
    CHECK(g == adjacency_correlation(b, a));
    CHECK(g >= -1.0);
    CHECK(g <= 1.0);
  }
}

TEST_CASE("jaccard extremes characterize equality and disjointness") {
  std::mt19937 rng(19);
  for (int round = 0; round < 60; ++round) {
    Snapshot a = testutil::random_snapshot(rng, 10, 0.25, 0, 10);
    Snapshot b = testutil::random_snapshot(rng, 10, 0.25, 10, 20);
    CHECK((node_similarity(a, b) == 1.0) == (a.nodes() == b.nodes()));
    CHECK((link_similarity(a, b) == 1.0) == (a.links() == b.links()));
    std::vector<NodeId> common_nodes;
    std::set_intersection(a.nodes().begin(), a.nodes().end(), b.nodes().begin(),
                          b.nodes().end(), std::back_inserter(common_nodes));
    if (common_nodes.empty() && !(a.nodes().empty() && b.nodes().empty()))
      CHECK(node_similarity(a, b) == 0.0);
  }
}

TEST_CASE("scores are invariant under node relabeling") {
  std::mt19937 rng(29);
  for (int round = 0; round < 20; ++round) {
    Snapshot a = testutil::random_snapshot(rng, 12, 0.3, 0, 10);
    Snapshot b = testutil::random_snapshot(rng, 12, 0.3, 10, 20);

    std::vector<NodeId> perm(40);
    for (NodeId v = 0; v < 40; ++v) perm[v] = v;
    std::shuffle(perm.begin(), perm.end(), rng);
    auto relabel = [&](const Snapshot& s, std::int64_t t0, std::int64_t t1) {
      std::vector<NodeId> nodes;
      std::vector<Link> links;
      for (NodeId v : s.nodes()) nodes.push_back(perm[v]);
      for (const Link& l : s.links()) links.push_back(make_link(perm[l.a], perm[l.b]));
      return Snapshot(Interval{t0, t1}, std::move(nodes), std::move(links));
    };
    Snapshot ra = relabel(a, 0, 10);
    Snapshot rb = relabel(b, 10, 20);

    CHECK(node_similarity(a, b) == node_similarity(ra, rb));
    CHECK(link_similarity(a, b) == link_similarity(ra, rb));
    CHECK(neighborhood_similarity(a, b) == neighborhood_similarity(ra, rb));
    CHECK(adjacency_correlation(a, b) == adjacency_correlation(ra, rb));
  }
}

TEST_CASE("series over a network") {
  DynamicNetwork net;
  net.epsilon = 10;
  net.span = Interval{0, 30};
  net.snapshots = {snap(0, 10, {{0, 1}}), snap(10, 20, {{0, 1}}),
                   snap(20, 30, {{5, 6}})};
  SimilaritySeries s = series(net, Metric::link);
  REQUIRE(s.scores.size() == 2);
  CHECK(s.scores[0].score == 1.0);
  CHECK(s.scores[1].score == 0.0);
  CHECK(s.scores[0].prev_interval == Interval{0, 10});
  CHECK(s.scores[1].next_interval == Interval{20, 30});
}

TEST_CASE("series length and error cases") {
  DynamicNetwork net;
  net.epsilon = 10;
  net.span = Interval{0, 100};
  for (int k = 0; k < 10; ++k)
    net.snapshots.push_back(snap(k * 10, (k + 1) * 10, {{0, 1}}));
  CHECK(series(net, Metric::node).scores.size() == 9);

  DynamicNetwork single;
  single.epsilon = 10;
  single.span = Interval{0, 10};
  single.snapshots = {snap(0, 10, {{0, 1}})};
  CHECK_THROWS_AS((void)series(single, Metric::node), Error);
}

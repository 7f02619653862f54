#include <algorithm>
#include <numeric>
#include <set>

#include "doctest.h"
#include "drawable/error.hpp"
#include "drawable/graph.hpp"
#include "drawable/io.hpp"
#include "drawable/oracle.hpp"
#include "drawable/rng.hpp"

using namespace drawable;

namespace {

Graph random_graph(Rng& rng, Vertex n, double p = 0.5) {
  std::vector<Pair> e;
  for (Vertex b = 1; b < n; ++b)
    for (Vertex a = 0; a < b; ++a)
      if (rng.uniform() < p) e.push_back({a, b});
  return Graph(n, std::move(e));
}

std::vector<Vertex> random_perm(Rng& rng, Vertex n) {
  std::vector<Vertex> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

// Isomorphism by trying every permutation.
bool brute_isomorphic(const Graph& g, const Graph& h) {
  if (g.order() != h.order() || g.size() != h.size()) return false;
  std::vector<Vertex> p(g.order());
  std::iota(p.begin(), p.end(), 0);
  do {
    if (relabel(g, p) == h) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

VertexSet random_subset(Rng& rng, Vertex n) {
  VertexSet s;
  for (Vertex v = 0; v < n; ++v)
    if (rng.below(2)) s.push_back(v);
  return s;
}

}  // namespace

TEST_CASE("pair indexer") {
  CHECK(pair_index(0, 1) == 0);
  CHECK(pair_index(1, 2) == 2);
  CHECK(pair_index(0, 4) == 6);
  CHECK(pair_index(4, 0) == 6);
  for (std::uint64_t i = 0; i < 20000; ++i) CHECK(pair_index(index_pair(i)) == i);
  for (Vertex n = 2; n < 40; ++n) {
    std::set<std::uint64_t> idx;
    for (Vertex b = 1; b < n; ++b)
      for (Vertex a = 0; a < b; ++a) idx.insert(pair_index(a, b));
    CHECK(idx.size() == pair_count(n));
    CHECK(*idx.rbegin() == pair_count(n) - 1);
  }
  const Pair far = index_pair(pair_index(123456, 7654321));
  CHECK(far == Pair{123456, 7654321});
}

TEST_CASE("graph construction validates its input") {
  CHECK_THROWS_AS(Graph(3, {{0, 3}}), PreconditionError);
  CHECK_THROWS_AS(Graph(3, {{1, 1}}), PreconditionError);
  CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), PreconditionError);
  const Graph g(4, {{2, 3}, {0, 1}});
  CHECK(g.edges() == std::vector<Pair>{{0, 1}, {2, 3}});
  CHECK(g.adjacent(3, 2));
  CHECK_FALSE(g.adjacent(0, 2));
}

TEST_CASE("isolated union") {
  const Graph kk = isolated_union(clique(2), clique(2));
  CHECK(kk.order() == 4);
  CHECK(kk.edges() == std::vector<Pair>{{0, 1}, {2, 3}});
  CHECK(isolated_union(path_graph(4), Graph(0)) == path_graph(4));
  CHECK(isolated_union({clique(1), clique(1), clique(1)}) == anticlique(3));
}

TEST_CASE("complement, switching and modification") {
  CHECK(complement(clique(3)) == anticlique(3));
  CHECK(switch_graph(isolated_union(clique(2), clique(1)), {2}) == clique(3));
  CHECK(modify(cycle_graph(5), {}) == cycle_graph(5));
  CHECK(modify(clique(2), {{0, 1}}) == anticlique(2));
  CHECK(induced(cycle_graph(5), {0, 1, 2}) == path_graph(3));
}

TEST_CASE("involutions on random graphs") {
  Rng rng(17);
  for (int t = 0; t < 200; ++t) {
    const Vertex n = 1 + static_cast<Vertex>(rng.below(12));
    const Graph g = random_graph(rng, n);
    CHECK(complement(complement(g)) == g);
    const auto s = random_subset(rng, n);
    CHECK(switch_graph(switch_graph(g, s), s) == g);
    std::vector<Pair> flips;
    for (std::uint64_t i = 0; i < pair_count(n); ++i)
      if (rng.below(4) == 0) flips.push_back(index_pair(i));
    CHECK(modify(modify(g, flips), flips) == g);
  }
}

TEST_CASE("degree census") {
  CHECK(degree_census(path_graph(3)) == DegreeCensus{{1, 2}, {2, 1}});
  CHECK(degree_census(star_graph(3)) == DegreeCensus{{1, 3}, {3, 1}});
  CHECK(degree_census(anticlique(2)) == DegreeCensus{{0, 2}});
}

TEST_CASE("census conservation and additivity") {
  Rng rng(23);
  for (int t = 0; t < 200; ++t) {
    const Graph g = random_graph(rng, static_cast<Vertex>(rng.below(15)), rng.uniform());
    const Graph h = random_graph(rng, static_cast<Vertex>(rng.below(15)), rng.uniform());
    const auto cg = degree_census(g);
    std::size_t count = 0, weighted = 0;
    for (const auto& [d, c] : cg) {
      count += c;
      weighted += d * c;
    }
    CHECK(count == g.order());
    CHECK(weighted == 2 * g.size());
    auto sum = cg;
    for (const auto& [d, c] : degree_census(h)) sum[d] += c;
    CHECK(degree_census(isolated_union(g, h)) == sum);
    CHECK(components(isolated_union(g, h)).size() == components(g).size() + components(h).size());
  }
}

TEST_CASE("components") {
  CHECK(components(isolated_union(clique(2), clique(2))) == std::vector<VertexSet>{{0, 1}, {2, 3}});
  CHECK(components(clique(3)) == std::vector<VertexSet>{{0, 1, 2}});
  CHECK(components(anticlique(3)).size() == 3);
  CHECK(is_connected(cycle_graph(6)));
  CHECK_FALSE(is_connected(anticlique(2)));
}

TEST_CASE("isomorphism") {
  const Graph p3 = path_graph(3);
  CHECK(is_isomorphic(p3, relabel(p3, {2, 0, 1})));
  CHECK_FALSE(is_isomorphic(clique(3), p3));
  CHECK(is_isomorphic(cycle_graph(5), complement(cycle_graph(5))));
  CHECK(brute_isomorphic(cycle_graph(5), complement(cycle_graph(5))));
  CHECK_FALSE(is_isomorphic(cycle_graph(6), isolated_union(clique(3), clique(3))));
}

TEST_CASE("isomorphism agrees with brute force and preserves censuses") {
  Rng rng(31);
  for (int t = 0; t < 300; ++t) {
    const Vertex n = 1 + static_cast<Vertex>(rng.below(7));
    const Graph g = random_graph(rng, n);
    const Graph h = rng.below(2) ? relabel(g, random_perm(rng, n)) : random_graph(rng, n);
    const bool iso = is_isomorphic(g, h);
    CHECK(iso == brute_isomorphic(g, h));
    if (iso) CHECK(degree_census(g) == degree_census(h));
    if (iso) CHECK(canonical_code(g) == canonical_code(h));
  }
  // Backtracking range, 9..12 vertices.
  for (int t = 0; t < 40; ++t) {
    const Vertex n = 9 + static_cast<Vertex>(rng.below(4));
    const Graph g = random_graph(rng, n);
    CHECK(is_isomorphic(g, relabel(g, random_perm(rng, n))));
    CHECK_FALSE(is_isomorphic(g, modify(g, {{0, 1}})));
  }
  CHECK_THROWS_AS(is_isomorphic(cycle_graph(13), relabel(cycle_graph(13), random_perm(rng, 13))),
                  SizeCapError);
}

TEST_CASE("induced search") {
  CHECK(find_induced(path_graph(4), clique(1)) == Embedding{0});
  CHECK_FALSE(find_induced(anticlique(5), clique(2)).has_value());
  const auto e = find_induced(cycle_graph(5), path_graph(3));
  REQUIRE(e.has_value());
  CHECK(verify_induced(cycle_graph(5), path_graph(3), *e));
  CHECK_FALSE(find_induced(cycle_graph(5), path_graph(3), {0, 1, 3}).has_value());
  CHECK_FALSE(find_induced(clique(4), path_graph(3)).has_value());
  CHECK(find_subgraph(clique(4), path_graph(3)).has_value());
}

TEST_CASE("induced search is sound and complete on small graphs") {
  Rng rng(37);
  for (int t = 0; t < 200; ++t) {
    const Graph g = random_graph(rng, 3 + static_cast<Vertex>(rng.below(6)));
    const Graph h = random_graph(rng, 1 + static_cast<Vertex>(rng.below(4)));
    const auto e = find_induced(g, h);
    if (e) {
      CHECK(verify_induced(g, h, *e));
      for (std::size_t i = 0; i < e->size(); ++i)
        for (std::size_t j = i + 1; j < e->size(); ++j)
          CHECK(g.adjacent((*e)[i], (*e)[j]) == h.adjacent(static_cast<Vertex>(i), static_cast<Vertex>(j)));
    } else {
      // No vertex subset of the right size induces a copy.
      bool found = false;
      const Vertex n = g.order(), k = h.order();
      for (std::uint32_t mask = 0; mask < (1u << n) && !found; ++mask) {
        if (static_cast<Vertex>(std::popcount(mask)) != k) continue;
        VertexSet s;
        for (Vertex v = 0; v < n; ++v)
          if ((mask >> v) & 1) s.push_back(v);
        found = brute_isomorphic(induced(g, s), h);
      }
      CHECK_FALSE(found);
    }
  }
}

TEST_CASE("catalog counts") {
  const auto cat = graph_catalog(6);
  std::map<Vertex, std::size_t> by_order;
  for (const auto& g : cat) ++by_order[g.order()];
  CHECK(by_order == std::map<Vertex, std::size_t>{{1, 1}, {2, 2}, {3, 4}, {4, 11}, {5, 34}, {6, 156}});
  CHECK(graph_catalog(1).size() == 1);
  CHECK(graph_catalog(2).size() == 3);
  std::set<std::string> codes;
  for (const auto& g : cat) CHECK(codes.insert(canonical_code(g)).second);
  const auto conn = connected_catalog(4);
  CHECK(conn.size() == 1 + 1 + 2 + 6);
  CHECK(conn[0] == clique(1));
  CHECK(conn[1] == clique(2));
}

TEST_CASE("catalog of size four by brute-force dedup") {
  std::vector<Graph> reps;
  for (std::uint32_t mask = 0; mask < 64; ++mask) {
    std::vector<Pair> e;
    for (std::uint64_t i = 0; i < 6; ++i)
      if ((mask >> i) & 1) e.push_back(index_pair(i));
    const Graph g(4, std::move(e));
    if (std::none_of(reps.begin(), reps.end(), [&](const Graph& r) { return brute_isomorphic(r, g); }))
      reps.push_back(g);
  }
  CHECK(reps.size() == 11);
}

TEST_CASE("codes") {
  CHECK(canonical_code(clique(2)) == canonical_code(clique(2)));
  Rng rng(41);
  for (int t = 0; t < 100; ++t) {
    const Graph g = random_graph(rng, 1 + static_cast<Vertex>(rng.below(11)));
    CHECK(graph_from_code(adjacency_code(g)) == g);
    CHECK(graph_label(g) == adjacency_code(g));
  }
  CHECK(graph_label(path_graph(13)).rfind("13;", 0) == 0);
  CHECK_THROWS_AS(graph_from_code("3:zz"), ParseError);
  CHECK_THROWS_AS(canonical_code(clique(9)), SizeCapError);
  // Tree-like keys separate non-isomorphic trees beyond the permutation range.
  const Graph a = path_graph(12);
  const Graph b = modify(path_graph(12), {{10, 11}, {0, 11}});
  CHECK(is_connected(b));
  CHECK(canonical_key(a) == canonical_key(relabel(a, random_perm(rng, 12))));
  CHECK(canonical_key(a) != canonical_key(star_graph(11)));
  CHECK(tree_like_code(cycle_graph(20)) == tree_like_code(relabel(cycle_graph(20), random_perm(rng, 20))));
}

TEST_CASE("weak universality scan") {
  CHECK(weak_universality_scan(clique(5), 3).level == 1);
  CHECK(weak_universality_scan(clique(5), 3).first_missing == anticlique(2));
  CHECK(weak_universality_scan(anticlique(10), 3).level == 1);
  const Graph u = GraphOracle::canonical_ufin(3).prefix(60);
  CHECK(weak_universality_scan(u, 3).level >= 3);
}

TEST_CASE("rado witness statistics") {
  CHECK(rado_witness_stats(clique(3), 1).fraction() == doctest::Approx(0.5));
  CHECK(rado_witness_stats(anticlique(4), 1).fraction() == doctest::Approx(0.5));
  int high = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed)
    high += rado_witness_stats(GraphOracle::uniform(seed).prefix(64), 2).fraction() >= 0.99;
  CHECK(high >= 19);
}

TEST_CASE("oracles") {
  const auto u = GraphOracle::uniform(9);
  for (Vertex a = 0; a < 30; ++a)
    for (Vertex b = a + 1; b < 30; ++b) CHECK(u.adjacent(a, b) == u.adjacent(b, a));
  CHECK_THROWS_AS(u.adjacent(3, 3), PreconditionError);
  CHECK(GraphOracle::complement_of(u).prefix(20) == complement(u.prefix(20)));
  CHECK(GraphOracle::parse("co-ufin:3").prefix(10) ==
        complement(GraphOracle::canonical_ufin(3).prefix(10)));
  CHECK(GraphOracle::clique().prefix(4) == clique(4));
  CHECK_THROWS_AS(GraphOracle::parse("bogus"), ParseError);
}

TEST_CASE("edge list and literals") {
  Rng rng(43);
  const Graph g = random_graph(rng, 20);
  CHECK(parse_edge_list(edge_list(g)) == g);
  CHECK(parse_graph("K3") == clique(3));
  CHECK(parse_graph("A2") == anticlique(2));
  CHECK(parse_graph("S3") == star_graph(3));
  CHECK(parse_graph(adjacency_code(cycle_graph(5))) == cycle_graph(5));
  CHECK_THROWS_AS(parse_edge_list("0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("Q4"), ParseError);
  CHECK(dot(clique(2)).find("0 -- 1") != std::string::npos);
}

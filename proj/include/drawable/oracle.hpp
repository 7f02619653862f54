#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>

#include "drawable/graph.hpp"

namespace drawable {

// Deterministic adjacency over the vertex set omega; the lazy stand-in for an
// infinite graph. Queries are symmetric and repeatable.
class GraphOracle {
 public:
  using Query = std::function<bool(Vertex, Vertex)>;

  GraphOracle(Query query, std::string kind);

  bool adjacent(Vertex a, Vertex b) const;
  const std::string& kind() const { return kind_; }
  Graph prefix(Vertex n) const;

  static GraphOracle clique();
  static GraphOracle anticlique();
  // Connected catalog graphs of <= catalog_size vertices laid out round-robin
  // as components, extended indefinitely.
  static GraphOracle canonical_ufin(unsigned catalog_size = 4);
  // Edge {a,b} present iff hash(seed, nu(a,b)) < p.
  static GraphOracle uniform(std::uint64_t seed, double p = 0.5);
  // A finite graph, with no edges beyond its vertex range.
  static GraphOracle from_graph(Graph g);
  static GraphOracle complement_of(const GraphOracle& o);

  // Parses clique | anticlique | ufin:<s> | uniform:<seed>[:<p>] | co-<oracle>.
  static GraphOracle parse(const std::string& text);

 private:
  Query query_;
  std::string kind_;
};

}  // namespace drawable

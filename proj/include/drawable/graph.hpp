#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace drawable {

using Vertex = std::uint32_t;

struct Pair {
  Vertex a = 0;
  Vertex b = 1;
  friend bool operator==(const Pair&, const Pair&) = default;
};

// Colexicographic indexer nu: {a,b} with a<b maps to b(b-1)/2 + a.
std::uint64_t pair_index(Vertex a, Vertex b);
inline std::uint64_t pair_index(const Pair& p) { return pair_index(p.a, p.b); }
Pair index_pair(std::uint64_t i);
inline std::uint64_t pair_count(std::uint64_t n) { return n * (n - (n > 0)) / 2; }
// Orders pairs by their colex index.
inline bool colex_less(const Pair& x, const Pair& y) {
  return x.b != y.b ? x.b < y.b : x.a < y.a;
}
Pair make_pair(Vertex u, Vertex v);

// Finite simple undirected graph on {0..n-1}. Immutable; edges are kept in
// colex order and adjacency lists sorted.
class Graph {
 public:
  Graph() = default;
  explicit Graph(Vertex n);
  Graph(Vertex n, std::vector<Pair> edges);

  Vertex order() const { return n_; }
  std::size_t size() const { return edges_.size(); }
  const std::vector<Pair>& edges() const { return edges_; }
  std::span<const Vertex> neighbors(Vertex v) const;
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  bool adjacent(Vertex u, Vertex v) const;

  friend bool operator==(const Graph& x, const Graph& y) {
    return x.n_ == y.n_ && x.edges_ == y.edges_;
  }

 private:
  Vertex n_ = 0;
  std::vector<Pair> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> adj_;
};

using VertexSet = std::vector<Vertex>;  // sorted, duplicate free
using DegreeCensus = std::map<std::size_t, std::size_t>;

Graph clique(Vertex n);
Graph anticlique(Vertex n);
Graph path_graph(Vertex n);
Graph cycle_graph(Vertex n);
Graph star_graph(Vertex leaves);

Graph isolated_union(const Graph& g, const Graph& h);
Graph isolated_union(const std::vector<Graph>& parts);
Graph complement(const Graph& g);
Graph induced(const Graph& g, const VertexSet& a);
Graph switch_graph(const Graph& g, const VertexSet& s);
Graph modify(const Graph& g, const std::vector<Pair>& flips);
Graph relabel(const Graph& g, const std::vector<Vertex>& perm);  // v -> perm[v]

DegreeCensus degree_census(const Graph& g);
std::vector<VertexSet> components(const Graph& g);
bool is_connected(const Graph& g);

// Exact isomorphism: canonical minimization up to 8 vertices, pruned
// backtracking up to 12. Larger inputs throw SizeCapError unless an invariant
// already separates them.
bool is_isomorphic(const Graph& g, const Graph& h);

using Embedding = std::vector<Vertex>;  // image of vertex i of the pattern

// Lexicographically least induced embedding of h into g with image in `within`
// (all of g when empty).
std::optional<Embedding> find_induced(const Graph& g, const Graph& h,
                                      const VertexSet& within = {});
// Adjacency-callback variant for lazily queried graphs.
std::optional<Embedding> find_induced_by(const std::function<bool(Vertex, Vertex)>& adjacent,
                                         const Graph& h, const VertexSet& within);
// Lexicographically least (not necessarily induced) subgraph embedding.
std::optional<Embedding> find_subgraph(const Graph& g, const Graph& h);
bool verify_induced(const Graph& g, const Graph& h, const Embedding& e);

// Canonical code "n:hex" of the colex pair bitstring, pair {0,1} first, minimized
// over all vertex permutations. Requires n <= 8.
std::string canonical_code(const Graph& g);
// Canonical code valid for every size: the permutation code up to 8 vertices,
// otherwise a code for graphs whose components are trees or unicyclic. Throws
// SizeCapError for anything else.
std::string canonical_key(const Graph& g);
// Canonical code of a connected graph with at most one cycle, any size.
std::string tree_like_code(const Graph& g);
Graph canonical_form(const Graph& g);  // n <= 8
std::string adjacency_code(const Graph& g);  // unminimized "n:hex"
Graph graph_from_code(const std::string& code);
// adjacency_code up to 11 vertices, otherwise "n;a-b,c-d,...".
std::string graph_label(const Graph& g);

// All non-isomorphic graphs on 1..s vertices sorted by (size, code). s <= 6.
std::vector<Graph> graph_catalog(unsigned s);
std::vector<Graph> connected_catalog(unsigned s);

struct UniversalityScan {
  unsigned level = 0;                 // largest s with all graphs of <= s vertices induced
  std::optional<Graph> first_missing;  // certificate for level + 1
};
UniversalityScan weak_universality_scan(const Graph& g, unsigned max_size);

struct WitnessStats {
  std::uint64_t pairs = 0;
  std::uint64_t witnessed = 0;
  double fraction() const { return pairs ? static_cast<double>(witnessed) / pairs : 0.0; }
};
WitnessStats rado_witness_stats(const Graph& g, unsigned s);

}  // namespace drawable

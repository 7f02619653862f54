#include "drawable/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "drawable/error.hpp"

namespace drawable {

std::uint64_t pair_index(Vertex a, Vertex b) {
  if (a == b) throw PreconditionError("pair needs two distinct vertices");
  if (a > b) std::swap(a, b);
  return static_cast<std::uint64_t>(b) * (b - 1) / 2 + a;
}

Pair index_pair(std::uint64_t i) {
  auto b = static_cast<std::uint64_t>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(i))) / 2.0);
  while (b > 1 && b * (b - 1) / 2 > i) --b;
  while ((b + 1) * b / 2 <= i) ++b;
  return Pair{static_cast<Vertex>(i - b * (b - 1) / 2), static_cast<Vertex>(b)};
}

Pair make_pair(Vertex u, Vertex v) {
  if (u == v) throw PreconditionError("pair needs two distinct vertices");
  return u < v ? Pair{u, v} : Pair{v, u};
}

Graph::Graph(Vertex n) : n_(n), offsets_(static_cast<std::size_t>(n) + 1, 0) {}

Graph::Graph(Vertex n, std::vector<Pair> edges) : n_(n), edges_(std::move(edges)) {
  for (auto& e : edges_) {
    e = make_pair(e.a, e.b);
    if (e.b >= n_) {
      throw PreconditionError("edge {" + std::to_string(e.a) + "," + std::to_string(e.b) +
                              "} outside vertex range " + std::to_string(n_));
    }
  }
  std::sort(edges_.begin(), edges_.end(), colex_less);
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
    throw PreconditionError("duplicate edge");
  }
  offsets_.assign(static_cast<std::size_t>(n_) + 1, 0);
  for (const auto& e : edges_) {
    ++offsets_[e.a + 1];
    ++offsets_[e.b + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  adj_.resize(2 * edges_.size());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& e : edges_) {
    adj_[fill[e.a]++] = e.b;
    adj_[fill[e.b]++] = e.a;
  }
  for (Vertex v = 0; v < n_; ++v) {
    std::sort(adj_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
              adj_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]));
  }
}

std::span<const Vertex> Graph::neighbors(Vertex v) const {
  return {adj_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  if (u >= n_ || v >= n_ || u == v) return false;
  if (degree(u) > degree(v)) std::swap(u, v);
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

Graph clique(Vertex n) {
  std::vector<Pair> e;
  for (Vertex b = 1; b < n; ++b)
    for (Vertex a = 0; a < b; ++a) e.push_back({a, b});
  return Graph(n, std::move(e));
}

Graph anticlique(Vertex n) { return Graph(n); }

Graph path_graph(Vertex n) {
  std::vector<Pair> e;
  for (Vertex v = 1; v < n; ++v) e.push_back({v - 1, v});
  return Graph(n, std::move(e));
}

Graph cycle_graph(Vertex n) {
  if (n < 3) throw PreconditionError("cycle needs at least 3 vertices");
  std::vector<Pair> e;
  for (Vertex v = 1; v < n; ++v) e.push_back({v - 1, v});
  e.push_back({0, n - 1});
  return Graph(n, std::move(e));
}

Graph star_graph(Vertex leaves) {
  std::vector<Pair> e;
  for (Vertex v = 1; v <= leaves; ++v) e.push_back({0, v});
  return Graph(leaves + 1, std::move(e));
}

Graph isolated_union(const Graph& g, const Graph& h) {
  std::vector<Pair> e = g.edges();
  const Vertex shift = g.order();
  for (const auto& p : h.edges()) e.push_back({p.a + shift, p.b + shift});
  return Graph(g.order() + h.order(), std::move(e));
}

Graph isolated_union(const std::vector<Graph>& parts) {
  std::vector<Pair> e;
  Vertex shift = 0;
  for (const auto& g : parts) {
    for (const auto& p : g.edges()) e.push_back({p.a + shift, p.b + shift});
    shift += g.order();
  }
  return Graph(shift, std::move(e));
}

Graph complement(const Graph& g) {
  std::vector<Pair> e;
  const Vertex n = g.order();
  e.reserve(pair_count(n) - g.size());
  for (Vertex b = 1; b < n; ++b)
    for (Vertex a = 0; a < b; ++a)
      if (!g.adjacent(a, b)) e.push_back({a, b});
  return Graph(n, std::move(e));
}

namespace {

void check_set(const Graph& g, const VertexSet& a) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] >= g.order()) {
      throw PreconditionError("vertex " + std::to_string(a[i]) + " out of range " +
                              std::to_string(g.order()));
    }
    if (i && a[i - 1] >= a[i]) throw PreconditionError("vertex set must be sorted and distinct");
  }
}

}  // namespace

Graph induced(const Graph& g, const VertexSet& a) {
  check_set(g, a);
  std::vector<Vertex> pos(g.order(), static_cast<Vertex>(-1));
  for (std::size_t i = 0; i < a.size(); ++i) pos[a[i]] = static_cast<Vertex>(i);
  std::vector<Pair> e;
  for (Vertex v : a)
    for (Vertex w : g.neighbors(v))
      if (v < w && pos[w] != static_cast<Vertex>(-1)) e.push_back({pos[v], pos[w]});
  return Graph(static_cast<Vertex>(a.size()), std::move(e));
}

Graph switch_graph(const Graph& g, const VertexSet& s) {
  check_set(g, s);
  std::vector<char> in(g.order(), 0);
  for (Vertex v : s) in[v] = 1;
  std::vector<Pair> e;
  for (const auto& p : g.edges())
    if (in[p.a] == in[p.b]) e.push_back(p);
  for (Vertex b = 1; b < g.order(); ++b)
    for (Vertex a = 0; a < b; ++a)
      if (in[a] != in[b] && !g.adjacent(a, b)) e.push_back({a, b});
  return Graph(g.order(), std::move(e));
}

Graph modify(const Graph& g, const std::vector<Pair>& flips) {
  std::vector<Pair> f;
  for (const auto& p : flips) {
    Pair q = make_pair(p.a, p.b);
    if (q.b >= g.order()) throw PreconditionError("flip outside vertex range");
    f.push_back(q);
  }
  std::sort(f.begin(), f.end(), colex_less);
  f.erase(std::unique(f.begin(), f.end()), f.end());
  std::vector<Pair> e;
  std::set_symmetric_difference(g.edges().begin(), g.edges().end(), f.begin(), f.end(),
                                std::back_inserter(e), colex_less);
  return Graph(g.order(), std::move(e));
}

Graph relabel(const Graph& g, const std::vector<Vertex>& perm) {
  if (perm.size() != g.order()) throw PreconditionError("permutation size mismatch");
  std::vector<Pair> e;
  e.reserve(g.size());
  for (const auto& p : g.edges()) e.push_back(make_pair(perm[p.a], perm[p.b]));
  return Graph(g.order(), std::move(e));
}

DegreeCensus degree_census(const Graph& g) {
  DegreeCensus c;
  for (Vertex v = 0; v < g.order(); ++v) ++c[g.degree(v)];
  return c;
}

std::vector<VertexSet> components(const Graph& g) {
  std::vector<VertexSet> out;
  std::vector<char> seen(g.order(), 0);
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < g.order(); ++s) {
    if (seen[s]) continue;
    VertexSet comp;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (Vertex w : g.neighbors(v)) {
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

bool is_connected(const Graph& g) { return g.order() <= 1 || components(g).size() == 1; }

}  // namespace drawable

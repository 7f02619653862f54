#include <algorithm>
#include <numeric>

#include "drawable/error.hpp"
#include "drawable/graph.hpp"

namespace drawable {

namespace {

// Backtracking over pattern vertices 0..h-1 in order. Candidates for pattern
// vertex i are drawn in increasing order, so the first complete assignment is
// the lexicographically least one.
template <class Adjacent, class Candidates>
bool extend(const Graph& h, bool induced_mode, Adjacent&& adjacent, Candidates&& candidates,
            Embedding& e, std::vector<char>& used_flag, std::size_t i) {
  if (i == h.order()) return true;
  const auto i_v = static_cast<Vertex>(i);
  bool found = false;
  candidates(i_v, e, [&](Vertex c) {
    if (used_flag[c]) return false;
    for (Vertex j = 0; j < i_v; ++j) {
      const bool want = h.adjacent(i_v, j);
      if (want || induced_mode) {
        if (adjacent(c, e[j]) != want) return false;
      }
    }
    e[i] = c;
    used_flag[c] = 1;
    if (extend(h, induced_mode, adjacent, candidates, e, used_flag, i + 1)) {
      found = true;
      return true;
    }
    used_flag[c] = 0;
    return false;
  });
  return found;
}

// Earliest already-placed neighbour of pattern vertex i, if any.
std::optional<Vertex> anchor_of(const Graph& h, Vertex i) {
  for (Vertex w : h.neighbors(i))
    if (w < i) return w;
  return std::nullopt;
}

std::optional<Embedding> search_concrete(const Graph& g, const Graph& h, const VertexSet& within,
                                         bool induced_mode) {
  if (h.order() == 0) return Embedding{};
  std::vector<char> allowed(g.order(), within.empty() ? 1 : 0);
  for (Vertex v : within) {
    if (v >= g.order()) throw PreconditionError("search set outside graph");
    allowed[v] = 1;
  }
  std::vector<Vertex> all;
  if (within.empty()) {
    all.resize(g.order());
    std::iota(all.begin(), all.end(), 0);
  } else {
    all = within;
  }
  std::vector<std::optional<Vertex>> anchors(h.order());
  for (Vertex i = 0; i < h.order(); ++i) anchors[i] = anchor_of(h, i);

  auto candidates = [&](Vertex i, const Embedding& e, auto&& visit) {
    if (anchors[i]) {
      for (Vertex c : g.neighbors(e[*anchors[i]])) {
        if (allowed[c] && g.degree(c) >= h.degree(i) && visit(c)) return;
      }
    } else {
      for (Vertex c : all) {
        if (g.degree(c) >= h.degree(i) && visit(c)) return;
      }
    }
  };
  auto adjacent = [&](Vertex x, Vertex y) { return g.adjacent(x, y); };
  Embedding e(h.order());
  std::vector<char> used(g.order(), 0);
  if (extend(h, induced_mode, adjacent, candidates, e, used, 0)) return e;
  return std::nullopt;
}

}  // namespace

std::optional<Embedding> find_induced(const Graph& g, const Graph& h, const VertexSet& within) {
  return search_concrete(g, h, within, true);
}

std::optional<Embedding> find_subgraph(const Graph& g, const Graph& h) {
  return search_concrete(g, h, {}, false);
}

std::optional<Embedding> find_induced_by(const std::function<bool(Vertex, Vertex)>& adjacent,
                                         const Graph& h, const VertexSet& within) {
  if (h.order() == 0) return Embedding{};
  if (within.empty()) return std::nullopt;
  const Vertex top = within.back() + 1;
  auto candidates = [&](Vertex, const Embedding&, auto&& visit) {
    for (Vertex c : within)
      if (visit(c)) return;
  };
  Embedding e(h.order());
  std::vector<char> used(top, 0);
  if (extend(h, true, adjacent, candidates, e, used, 0)) return e;
  return std::nullopt;
}

bool verify_induced(const Graph& g, const Graph& h, const Embedding& e) {
  if (e.size() != h.order()) return false;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] >= g.order()) return false;
    for (std::size_t j = 0; j < i; ++j) {
      if (e[i] == e[j]) return false;
      if (g.adjacent(e[i], e[j]) !=
          h.adjacent(static_cast<Vertex>(i), static_cast<Vertex>(j)))
        return false;
    }
  }
  return true;
}

namespace {

bool backtrack_iso(const Graph& g, const Graph& h, const std::vector<Vertex>& order,
                   std::vector<Vertex>& map, std::vector<char>& taken, std::size_t depth) {
  if (depth == order.size()) return true;
  const Vertex v = order[depth];
  for (Vertex w = 0; w < h.order(); ++w) {
    if (taken[w] || h.degree(w) != g.degree(v)) continue;
    bool ok = true;
    for (std::size_t d = 0; d < depth && ok; ++d) {
      const Vertex u = order[d];
      ok = g.adjacent(u, v) == h.adjacent(map[u], w);
    }
    if (!ok) continue;
    map[v] = w;
    taken[w] = 1;
    if (backtrack_iso(g, h, order, map, taken, depth + 1)) return true;
    taken[w] = 0;
  }
  return false;
}

}  // namespace

bool is_isomorphic(const Graph& g, const Graph& h) {
  if (g.order() != h.order() || g.size() != h.size()) return false;
  if (degree_census(g) != degree_census(h)) return false;
  if (g.order() <= 8) return canonical_code(g) == canonical_code(h);
  if (g.order() > 12) {
    throw SizeCapError("is_isomorphic supports at most 12 vertices, got " +
                       std::to_string(g.order()));
  }
  // Place high-degree vertices first, then keep the order connected.
  std::vector<Vertex> order(g.order());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
  std::vector<Vertex> map(g.order());
  std::vector<char> taken(h.order(), 0);
  return backtrack_iso(g, h, order, map, taken, 0);
}

WitnessStats rado_witness_stats(const Graph& g, unsigned s) {
  WitnessStats st;
  const Vertex n = g.order();
  std::vector<Vertex> subset;
  // Enumerate subsets T in increasing lexicographic order, then all A/B splits of T.
  std::function<void(Vertex)> rec = [&](Vertex start) {
    if (!subset.empty()) {
      const std::size_t t = subset.size();
      for (std::uint64_t mask = 0; mask < (1ULL << t); ++mask) {
        ++st.pairs;
        for (Vertex v = 0; v < n; ++v) {
          bool ok = true;
          for (std::size_t i = 0; i < t && ok; ++i) {
            if (subset[i] == v) ok = false;
            else ok = g.adjacent(v, subset[i]) == static_cast<bool>((mask >> i) & 1);
          }
          if (ok) {
            ++st.witnessed;
            break;
          }
        }
      }
    }
    if (subset.size() == s) return;
    for (Vertex v = start; v < n; ++v) {
      subset.push_back(v);
      rec(v + 1);
      subset.pop_back();
    }
  };
  rec(0);
  return st;
}

}  // namespace drawable

#include <algorithm>

#include "drawable/error.hpp"
#include "drawable/graph.hpp"

namespace drawable {

namespace {

// AHU code of the tree hanging from `root`, never stepping onto `blocked`
// vertices. Iterative post-order to keep long paths off the call stack.
std::string rooted_code(const Graph& g, Vertex root, const std::vector<char>& blocked) {
  struct Frame {
    Vertex v;
    Vertex parent;
    std::size_t next = 0;
    std::vector<std::string> kids;
  };
  std::vector<Frame> stack;
  stack.push_back({root, root, 0, {}});
  std::string result;
  while (!stack.empty()) {
    Frame& f = stack.back();
    auto nb = g.neighbors(f.v);
    if (f.next < nb.size()) {
      const Vertex w = nb[f.next++];
      if (w == f.parent || blocked[w]) continue;
      stack.push_back({w, f.v, 0, {}});
      continue;
    }
    std::sort(f.kids.begin(), f.kids.end());
    std::string code = "(";
    for (auto& k : f.kids) code += k;
    code += ")";
    stack.pop_back();
    if (stack.empty()) {
      result = std::move(code);
    } else {
      stack.back().kids.push_back(std::move(code));
    }
  }
  return result;
}

std::string tree_code(const Graph& g) {
  const Vertex n = g.order();
  if (n == 1) return "T()";
  // Peel leaves layer by layer to find the center(s).
  std::vector<std::size_t> deg(n);
  std::vector<Vertex> layer;
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    if (deg[v] <= 1) layer.push_back(v);
  }
  std::size_t remaining = n;
  while (remaining > 2) {
    std::vector<Vertex> next;
    remaining -= layer.size();
    for (Vertex v : layer) {
      for (Vertex w : g.neighbors(v)) {
        if (--deg[w] == 1) next.push_back(w);
      }
    }
    layer = std::move(next);
  }
  std::vector<char> blocked(n, 0);
  if (layer.size() == 1) return "T" + rooted_code(g, layer[0], blocked);
  const Vertex c1 = layer[0], c2 = layer[1];
  blocked[c2] = 1;
  std::string a = rooted_code(g, c1, blocked);
  blocked[c2] = 0;
  blocked[c1] = 1;
  std::string b = rooted_code(g, c2, blocked);
  if (b < a) std::swap(a, b);
  return "E" + a + b;
}

std::string unicyclic_code(const Graph& g) {
  const Vertex n = g.order();
  std::vector<std::size_t> deg(n);
  std::vector<char> on_cycle(n, 1);
  std::vector<Vertex> leaves;
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    if (deg[v] == 1) leaves.push_back(v);
  }
  while (!leaves.empty()) {
    const Vertex v = leaves.back();
    leaves.pop_back();
    on_cycle[v] = 0;
    for (Vertex w : g.neighbors(v)) {
      if (on_cycle[w] && --deg[w] == 1) leaves.push_back(w);
    }
  }
  // Walk the cycle.
  Vertex start = 0;
  while (!on_cycle[start]) ++start;
  std::vector<Vertex> cycle{start};
  Vertex prev = start, cur = start;
  while (true) {
    Vertex nxt = cur;
    for (Vertex w : g.neighbors(cur)) {
      if (on_cycle[w] && w != prev) {
        nxt = w;
        break;
      }
    }
    if (nxt == start) break;
    if (cycle.size() > 2 && nxt == cycle.front()) break;
    prev = cur;
    cur = nxt;
    cycle.push_back(cur);
    if (cycle.size() > n) throw PreconditionError("cycle walk failed");
  }
  std::vector<std::string> hang;
  for (Vertex v : cycle) hang.push_back(rooted_code(g, v, on_cycle));
  // Least rotation or reflection of the hanging-tree sequence.
  const std::size_t L = hang.size();
  std::vector<std::string> best;
  for (int dir = 0; dir < 2; ++dir) {
    for (std::size_t r = 0; r < L; ++r) {
      std::vector<std::string> cand(L);
      for (std::size_t i = 0; i < L; ++i) {
        cand[i] = dir == 0 ? hang[(r + i) % L] : hang[(r + L - i) % L];
      }
      if (best.empty() || cand < best) best = std::move(cand);
    }
  }
  std::string code = "U" + std::to_string(L) + "[";
  for (auto& s : best) code += s;
  return code + "]";
}

}  // namespace

std::string tree_like_code(const Graph& g) {
  if (g.order() == 0) return "T";
  if (!is_connected(g)) throw PreconditionError("tree_like_code needs a connected graph");
  if (g.size() + 1 == g.order()) return tree_code(g);
  if (g.size() == g.order()) return unicyclic_code(g);
  throw SizeCapError("exact code for graphs with more than one cycle is limited to 8 vertices");
}

}  // namespace drawable

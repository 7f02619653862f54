#include <algorithm>
#include <map>

#include "drawable/constructions.hpp"
#include "drawable/error.hpp"

namespace drawable {

namespace {

// Every induced embedding of h into g, one per image set (the first found in
// lexicographic order of the embedding).
std::vector<Embedding> induced_copies(const Graph& g, const Graph& h) {
  std::map<VertexSet, Embedding> by_set;
  Embedding cur;
  std::vector<char> taken(g.order(), 0);
  auto rec = [&](auto&& self) -> void {
    const std::size_t i = cur.size();
    if (i == h.order()) {
      VertexSet s(cur.begin(), cur.end());
      std::sort(s.begin(), s.end());
      by_set.emplace(std::move(s), cur);
      return;
    }
    for (Vertex c = 0; c < g.order(); ++c) {
      if (taken[c]) continue;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j)
        ok = g.adjacent(cur[j], c) == h.adjacent(static_cast<Vertex>(j), static_cast<Vertex>(i));
      if (!ok) continue;
      taken[c] = 1;
      cur.push_back(c);
      self(self);
      cur.pop_back();
      taken[c] = 0;
    }
  };
  rec(rec);
  std::vector<std::pair<Embedding, VertexSet>> ordered;
  for (auto& [s, e] : by_set) ordered.push_back({e, s});
  std::sort(ordered.begin(), ordered.end());
  std::vector<Embedding> out;
  for (auto& [e, s] : ordered) out.push_back(std::move(e));
  return out;
}

std::uint64_t colouring_count(Vertex n, unsigned k) {
  std::uint64_t total = 1;
  for (Vertex i = 0; i < n; ++i) {
    if (total > (std::uint64_t{1} << 26) / k) {
      throw SizeCapError("verify_ramsey: " + std::to_string(k) + "^" + std::to_string(n) +
                         " colourings exceed the enumeration cap");
    }
    total *= k;
  }
  return total;
}

std::vector<unsigned> decode(std::uint64_t c, Vertex n, unsigned k) {
  std::vector<unsigned> col(n);
  for (Vertex i = n; i-- > 0;) {
    col[i] = static_cast<unsigned>(c % k);
    c /= k;
  }
  return col;
}

bool colouring_ok(const Graph& x, const Graph& h, unsigned k, std::uint64_t c) {
  const auto col = decode(c, x.order(), k);
  std::vector<VertexSet> parts(k);
  for (Vertex v = 0; v < x.order(); ++v) parts[col[v]].push_back(v);
  for (const auto& p : parts) {
    if (p.size() < h.order() || p.empty()) continue;
    if (find_induced(x, h, p)) return true;
  }
  return false;
}

RamseyVerdict finish(std::uint64_t first_fail, std::uint64_t total, Vertex n, unsigned k) {
  RamseyVerdict v;
  v.holds = first_fail == total;
  v.colourings = v.holds ? total : first_fail + 1;
  if (!v.holds) v.counterexample = decode(first_fail, n, k);
  return v;
}

void check_args(const Graph& h, unsigned k) {
  if (k < 1) throw PreconditionError("ramsey needs k >= 1");
  if (h.order() < 1) throw PreconditionError("ramsey needs a nonempty H");
}

}  // namespace

Graph ramsey_graph(const Graph& h, unsigned k, Vertex size_cap) {
  check_args(h, k);
  const Vertex n = h.order();
  if (n == 1 || k == 1) return h;
  if (n == 2) return h.adjacent(0, 1) ? clique(k + 1) : anticlique(k + 1);

  VertexSet base(n - 1);
  for (Vertex i = 0; i + 1 < n; ++i) base[i] = i;
  const Graph x = ramsey_graph(induced(h, base), k, size_cap);
  const auto copies = induced_copies(x, induced(h, base));
  const Graph y = ramsey_graph(h, k - 1, size_cap);
  const std::uint64_t total = x.order() + copies.size() * std::uint64_t{y.order()};
  if (total > size_cap) {
    throw SizeCapError("ramsey_graph would need " + std::to_string(total) +
                       " vertices, cap is " + std::to_string(size_cap));
  }
  std::vector<Pair> e = x.edges();
  Vertex start = x.order();
  for (const auto& b : copies) {
    for (const auto& ye : y.edges()) e.push_back({start + ye.a, start + ye.b});
    for (Vertex w = 0; w < y.order(); ++w)
      for (Vertex j = 0; j + 1 < n; ++j)
        if (h.adjacent(j, n - 1)) e.push_back(make_pair(b[j], start + w));
    start += y.order();
  }
  return Graph(start, std::move(e));
}

RamseyVerdict verify_ramsey_serial(const Graph& x, const Graph& h, unsigned k) {
  check_args(h, k);
  const std::uint64_t total = colouring_count(x.order(), k);
  for (std::uint64_t c = 0; c < total; ++c)
    if (!colouring_ok(x, h, k, c)) return finish(c, total, x.order(), k);
  return finish(total, total, x.order(), k);
}

RamseyVerdict verify_ramsey(const Graph& x, const Graph& h, unsigned k) {
  check_args(h, k);
  const std::uint64_t total = colouring_count(x.order(), k);
  constexpr std::uint64_t chunk = 256;
  const auto chunks = static_cast<std::int64_t>((total + chunk - 1) / chunk);
  std::uint64_t first_fail = total;
#pragma omp parallel for schedule(dynamic, 4) reduction(min : first_fail)
  for (std::int64_t ci = 0; ci < chunks; ++ci) {
    const std::uint64_t lo = static_cast<std::uint64_t>(ci) * chunk;
    const std::uint64_t hi = std::min(total, lo + chunk);
    for (std::uint64_t c = lo; c < hi; ++c) {
      if (!colouring_ok(x, h, k, c)) {
        first_fail = std::min(first_fail, c);
        break;
      }
    }
  }
  return finish(first_fail, total, x.order(), k);
}

}  // namespace drawable

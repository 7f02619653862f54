#include "drawable/oracle.hpp"

#include <algorithm>
#include <charconv>

#include "drawable/error.hpp"
#include "drawable/rng.hpp"

namespace drawable {

GraphOracle::GraphOracle(Query query, std::string kind)
    : query_(std::move(query)), kind_(std::move(kind)) {}

bool GraphOracle::adjacent(Vertex a, Vertex b) const {
  if (a == b) throw PreconditionError("oracle query on a loop");
  return a < b ? query_(a, b) : query_(b, a);
}

Graph GraphOracle::prefix(Vertex n) const {
  std::vector<Pair> e;
  for (Vertex b = 1; b < n; ++b)
    for (Vertex a = 0; a < b; ++a)
      if (query_(a, b)) e.push_back({a, b});
  return Graph(n, std::move(e));
}

GraphOracle GraphOracle::clique() {
  return GraphOracle([](Vertex, Vertex) { return true; }, "clique");
}

GraphOracle GraphOracle::anticlique() {
  return GraphOracle([](Vertex, Vertex) { return false; }, "anticlique");
}

GraphOracle GraphOracle::canonical_ufin(unsigned catalog_size) {
  struct Layout {
    std::vector<Graph> graphs;
    std::vector<Vertex> starts;  // start of each component within one round
    Vertex round = 0;
  };
  auto layout = std::make_shared<Layout>();
  layout->graphs = connected_catalog(catalog_size);
  for (const auto& g : layout->graphs) {
    layout->starts.push_back(layout->round);
    layout->round += g.order();
  }
  auto locate = [layout](Vertex v) {
    const Vertex r = v / layout->round;
    const Vertex off = v % layout->round;
    const auto it = std::upper_bound(layout->starts.begin(), layout->starts.end(), off);
    const auto comp = static_cast<std::size_t>(it - layout->starts.begin() - 1);
    return std::tuple<std::uint64_t, std::size_t, Vertex>(
        static_cast<std::uint64_t>(r) * layout->graphs.size() + comp, comp,
        off - layout->starts[comp]);
  };
  return GraphOracle(
      [layout, locate](Vertex a, Vertex b) {
        const auto [ca, ga, la] = locate(a);
        const auto [cb, gb, lb] = locate(b);
        return ca == cb && layout->graphs[ga].adjacent(la, lb);
      },
      "canonical-ufin:" + std::to_string(catalog_size));
}

GraphOracle GraphOracle::uniform(std::uint64_t seed, double p) {
  if (!(p > 0.0 && p < 1.0)) throw PreconditionError("uniform oracle needs p in (0,1)");
  return GraphOracle(
      [seed, p](Vertex a, Vertex b) { return hash_uniform(seed, pair_index(a, b)) < p; },
      "uniform:" + std::to_string(seed) + ":" + std::to_string(p));
}

GraphOracle GraphOracle::from_graph(Graph g) {
  auto shared = std::make_shared<Graph>(std::move(g));
  return GraphOracle([shared](Vertex a, Vertex b) { return shared->adjacent(a, b); },
                     "graph:" + std::to_string(shared->order()));
}

GraphOracle GraphOracle::complement_of(const GraphOracle& o) {
  auto inner = o.query_;
  return GraphOracle([inner](Vertex a, Vertex b) { return !inner(a, b); }, "co-" + o.kind_);
}

GraphOracle GraphOracle::parse(const std::string& text) {
  if (text.rfind("co-", 0) == 0) return complement_of(parse(text.substr(3)));
  if (text == "clique") return clique();
  if (text == "anticlique") return anticlique();
  auto number = [&](std::string_view s, auto& out) {
    auto r = std::from_chars(s.data(), s.data() + s.size(), out);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size()) {
      throw ParseError("bad oracle parameter in '" + text + "'");
    }
  };
  if (text.rfind("ufin:", 0) == 0) {
    unsigned s = 0;
    number(std::string_view(text).substr(5), s);
    if (s < 1 || s > 5) throw PreconditionError("ufin oracle catalog size must be 1..5");
    return canonical_ufin(s);
  }
  if (text == "ufin") return canonical_ufin();
  if (text.rfind("uniform:", 0) == 0) {
    std::string_view rest = std::string_view(text).substr(8);
    const auto colon = rest.find(':');
    std::uint64_t seed = 0;
    double p = 0.5;
    number(rest.substr(0, colon), seed);
    if (colon != std::string_view::npos) number(rest.substr(colon + 1), p);
    return uniform(seed, p);
  }
  throw ParseError("unknown oracle '" + text + "'");
}

}  // namespace drawable

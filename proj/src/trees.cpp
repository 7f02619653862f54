#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "drawable/constructions.hpp"
#include "drawable/error.hpp"

namespace drawable {

namespace {

void check_demand(const DegreeDemand& demand) {
  auto it = demand.find(0);
  if (it != demand.end() && it->second != 0) {
    throw PreconditionError("degree demand must not ask for isolated vertices");
  }
}

}  // namespace

CaterpillarTree caterpillar_tree(const DegreeDemand& demand, Vertex truncation) {
  check_demand(demand);
  if (demand.count(2) && demand.at(2) != 0) {
    throw PreconditionError("degree-2 vertices are spine fillers and cannot be demanded");
  }
  std::size_t hubs = 0, leaves = 0;
  std::vector<std::size_t> hub_degrees;
  for (const auto& [d, c] : demand) {
    if (d <= 2) continue;
    hubs += c;
    leaves += (d - 2) * c;
    hub_degrees.insert(hub_degrees.end(), c, d);
  }
  const std::size_t a1 = 1 + leaves;
  if (demand.count(1) && demand.at(1) != a1) {
    throw PreconditionError("leaf demand " + std::to_string(demand.at(1)) +
                            " violates the leaf equation, which gives " + std::to_string(a1));
  }
  if (truncation < leaves + hubs + 2) {
    throw PreconditionError("truncation " + std::to_string(truncation) +
                            " too small for the demanded caterpillar");
  }
  const Vertex spine = truncation - static_cast<Vertex>(leaves);
  std::vector<Pair> e;
  for (Vertex i = 1; i < spine; ++i) e.push_back({i - 1, i});
  Vertex next = spine;
  for (std::size_t h = 0; h < hub_degrees.size(); ++h) {
    const Vertex hub = static_cast<Vertex>(h + 1);
    for (std::size_t j = 0; j + 2 < hub_degrees[h]; ++j) e.push_back({hub, next++});
  }
  CaterpillarTree out;
  out.tree = Graph(truncation, std::move(e));
  out.spine_ends = {0, spine - 1};
  out.intended[1] = a1;
  const std::size_t fillers = truncation - a1 - hubs;
  if (fillers) out.intended[2] = fillers;
  for (auto d : hub_degrees) ++out.intended[d];
  return out;
}

// Demands at degree 1 are ignored: every level-1 vertex without a demand is a leaf.
Graph star_of_stars(const DegreeDemand& demand, Vertex truncation) {
  check_demand(demand);
  std::vector<std::size_t> degrees;
  std::size_t needed = 1;
  for (const auto& [d, c] : demand) {
    if (d < 2) continue;
    degrees.insert(degrees.end(), c, d);
    needed += d * c;
  }
  if (truncation < needed) {
    throw PreconditionError("truncation " + std::to_string(truncation) + " below the " +
                            std::to_string(needed) + " vertices the demand needs");
  }
  std::vector<Pair> e;
  Vertex next = 1 + static_cast<Vertex>(degrees.size());
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    const Vertex mid = static_cast<Vertex>(i + 1);
    e.push_back({0, mid});
    for (std::size_t j = 1; j < degrees[i]; ++j) e.push_back({mid, next++});
  }
  while (next < truncation) e.push_back({0, next++});
  return Graph(truncation, std::move(e));
}

Graph v_tree_unpadded(unsigned n) {
  if (n < 1) throw PreconditionError("v_tree needs n >= 1");
  std::vector<Pair> e{{0, 1}, {0, 2}, {0, 3}};
  Vertex prev = 2;
  for (Vertex i = 0; i < n; ++i) {
    e.push_back({prev, 4 + i});
    prev = 4 + i;
  }
  e.push_back({prev, prev + 1});
  e.push_back({prev, prev + 2});
  return Graph(6 + n, std::move(e));
}

Vertex v_tree_size(unsigned n) {
  if (n < 1) throw PreconditionError("v_tree needs n >= 1");
  Vertex total = 0, size = 0;
  for (unsigned i = 1; i <= n; ++i) {
    size = std::max<Vertex>(6 + i, total + 1);
    total += size;
  }
  return size;
}

Graph v_tree(unsigned n) {
  const Graph base = v_tree_unpadded(n);
  const Vertex size = v_tree_size(n);
  std::vector<Pair> e = base.edges();
  Vertex prev = 4 + n;  // first child of the splitting vertex
  for (Vertex v = base.order(); v < size; ++v) {
    e.push_back({prev, v});
    prev = v;
  }
  return Graph(size, std::move(e));
}

Pair v_tree_extra_pair(unsigned n) { return {4 + n, 5 + n}; }

Graph v_tree_prime(unsigned n) { return modify(v_tree(n), {v_tree_extra_pair(n)}); }

Graph theta_graph(const std::vector<bool>& theta) {
  std::vector<Graph> parts;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const auto n = static_cast<unsigned>(i + 1);
    parts.push_back(theta[i] ? v_tree_prime(n) : v_tree(n));
  }
  return isolated_union(parts);
}

ThetaType theta_decompose(const Graph& g, unsigned max_n) {
  std::unordered_map<std::string, std::pair<unsigned, bool>> known;
  for (unsigned n = 1; n <= max_n; ++n) {
    known[tree_like_code(v_tree(n))] = {n, false};
    known[tree_like_code(v_tree_prime(n))] = {n, true};
  }
  const auto comps = components(g);
  std::vector<std::vector<std::pair<std::size_t, bool>>> matched(max_n + 1);
  unsigned top = 0;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const Graph h = induced(g, comps[c]);
    if (h.size() > h.order()) continue;
    auto it = known.find(tree_like_code(h));
    if (it == known.end()) continue;
    matched[it->second.first].push_back({c, it->second.second});
    top = std::max(top, it->second.first);
  }
  ThetaType out;
  out.max_n = top;
  for (unsigned n = top; n >= 1; --n) {
    if (matched[n].size() != 1) {
      out.k = n;
      break;
    }
  }
  std::vector<char> used(comps.size(), 0);
  for (unsigned n = out.k + 1; n <= top; ++n) {
    out.theta.push_back(matched[n][0].second);
    used[matched[n][0].first] = 1;
  }
  VertexSet rest;
  for (std::size_t c = 0; c < comps.size(); ++c)
    if (!used[c]) rest.insert(rest.end(), comps[c].begin(), comps[c].end());
  std::sort(rest.begin(), rest.end());
  out.leftover = induced(g, rest);
  return out;
}

DsRecovery ds_recovery(const Graph& g, const std::vector<Graph>& candidates) {
  DsRecovery out;
  const auto comps = components(g);
  std::size_t largest = 0;
  for (const auto& c : comps) largest = std::max(largest, c.size());
  std::vector<std::pair<DegreeCensus, std::size_t>> tally;
  for (const auto& c : comps) {
    if (2 * c.size() < largest || c.empty()) continue;
    auto census = degree_census(induced(g, c));
    auto it = std::find_if(tally.begin(), tally.end(),
                           [&](const auto& t) { return t.first == census; });
    if (it == tally.end()) tally.push_back({std::move(census), 1});
    else ++it->second;
  }
  std::size_t best = 0;
  for (const auto& [census, count] : tally) {
    if (count > best) {
      best = count;
      out.modal = census;
    }
  }
  for (const auto& cand : candidates) {
    const auto census = degree_census(cand);
    std::map<std::size_t, std::pair<std::size_t, std::size_t>> both;
    for (const auto& [d, c] : census) both[d].first = c;
    for (const auto& [d, c] : out.modal) both[d].second = c;
    std::size_t dist = 0;
    for (const auto& [d, cc] : both) {
      dist += cc.first > cc.second ? cc.first - cc.second : cc.second - cc.first;
    }
    out.distances.push_back(dist);
  }
  if (!out.distances.empty()) {
    out.index = static_cast<std::size_t>(
        std::min_element(out.distances.begin(), out.distances.end()) - out.distances.begin());
  }
  return out;
}

}  // namespace drawable

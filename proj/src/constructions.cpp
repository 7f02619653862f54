#include "drawable/constructions.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "drawable/error.hpp"

namespace drawable {

Graph ufin_prefix(std::size_t component_budget, unsigned catalog_size) {
  if (catalog_size < 1 || catalog_size > 5) {
    throw PreconditionError("ufin_prefix catalog size must be 1..5");
  }
  const auto catalog = connected_catalog(catalog_size);
  std::vector<Graph> parts;
  parts.reserve(component_budget);
  for (std::size_t i = 0; i < component_budget; ++i) parts.push_back(catalog[i % catalog.size()]);
  return isolated_union(parts);
}

namespace {

Graph stored_form(const Graph& g) { return g.order() <= 8 ? canonical_form(g) : g; }

struct Builder {
  ClosedFamilyApprox& f;
  std::unordered_set<std::string> seen;

  // Returns true when the graph was new and got appended.
  bool add(const Graph& g, const ClosureStep& step) {
    std::string key = canonical_key(g);
    if (!seen.insert(key).second) return false;
    f.members.push_back(stored_form(g));
    f.keys.push_back(std::move(key));
    f.log.push_back(step);
    return true;
  }
};

}  // namespace

ClosedFamilyApprox closure(const std::vector<Graph>& k0, const ClosureBudget& budget) {
  if (budget.max_members == 0) throw PreconditionError("closure needs a positive member budget");
  ClosedFamilyApprox f;
  f.budget = budget;
  Builder b{f, {}};
  auto full = [&] { return f.members.size() >= budget.max_members; };
  for (std::size_t i = 0; i < k0.size() && !full(); ++i) {
    b.add(k0[i], {ClosureStep::Op::Seed, i, 0, {}});
  }
  for (std::size_t i = 0; i < f.members.size(); ++i) {
    for (std::size_t j = 0; j < f.members.size() && !full(); ++j) {
      if (f.members[i].order() + f.members[j].order() > budget.max_vertices) continue;
      const auto [lo, hi] = std::minmax(i, j);
      b.add(isolated_union(f.members[lo], f.members[hi]), {ClosureStep::Op::Union, lo, hi, {}});
    }
    const Graph g = f.members[i];
    for (std::uint64_t p = 0; p < pair_count(g.order()) && !full(); ++p) {
      const Pair pr = index_pair(p);
      b.add(modify(g, {pr}), {ClosureStep::Op::Flip, i, 0, pr});
    }
    if (full()) {
      f.exhausted = true;
      break;
    }
  }
  return f;
}

std::vector<Graph> replay_closure(const std::vector<Graph>& k0,
                                  const std::vector<ClosureStep>& log) {
  std::vector<Graph> members;
  for (const auto& step : log) {
    Graph g;
    switch (step.op) {
      case ClosureStep::Op::Seed:
        g = k0.at(step.a);
        break;
      case ClosureStep::Op::Union:
        g = isolated_union(members.at(step.a), members.at(step.b));
        break;
      case ClosureStep::Op::Flip:
        g = modify(members.at(step.a), {step.flip});
        break;
    }
    members.push_back(stored_form(g));
  }
  return members;
}

Graph un_prefix(const ClosedFamilyApprox& family, std::size_t component_budget) {
  if (family.members.empty()) throw PreconditionError("un_prefix needs a nonempty family");
  std::vector<Graph> parts;
  parts.reserve(component_budget);
  for (std::size_t i = 0; i < component_budget; ++i)
    parts.push_back(family.members[i % family.members.size()]);
  return isolated_union(parts);
}

std::optional<std::size_t> partition_find_universal(const Graph& g,
                                                    const std::vector<VertexSet>& parts,
                                                    unsigned s) {
  if (s > 4) throw PreconditionError("partition_find_universal supports s <= 4");
  for (std::size_t i = 0; i < parts.size(); ++i) {
    VertexSet part = parts[i];
    std::sort(part.begin(), part.end());
    if (weak_universality_scan(induced(g, part), s).level >= s) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> indivisibility_check(const Graph& g,
                                                const std::array<VertexSet, 2>& parts,
                                                const std::vector<Graph>& targets) {
  for (std::size_t side = 0; side < 2; ++side) {
    std::vector<char> blocked(g.order(), 0);
    VertexSet pool = parts[side];
    std::sort(pool.begin(), pool.end());
    bool ok = true;
    for (const auto& t : targets) {
      VertexSet avail;
      for (Vertex v : pool)
        if (!blocked[v]) avail.push_back(v);
      if (avail.empty()) {
        ok = t.order() == 0;
        if (!ok) break;
        continue;
      }
      const auto e = find_induced(g, t, avail);
      if (!e) {
        ok = false;
        break;
      }
      for (Vertex v : *e) {
        blocked[v] = 1;
        for (Vertex w : g.neighbors(v)) blocked[w] = 1;
      }
    }
    if (ok) return side;
  }
  return std::nullopt;
}

}  // namespace drawable

#include <algorithm>

#include "drawable/constructions.hpp"
#include "drawable/error.hpp"

namespace drawable {

const char* basis_side_name(BasisSide s) {
  return s == BasisSide::UFin ? "ufin" : "complement";
}

namespace {

// Tests whether a vertex set contains every graph on at most three vertices,
// reusing the last embedding found per pattern while it stays inside the set.
class SmallUniversality {
 public:
  explicit SmallUniversality(const GraphOracle& o)
      : oracle_(o), patterns_(graph_catalog(3)), cache_(patterns_.size()) {}

  bool test(const VertexSet& s, const std::vector<char>& member) {
    if (s.size() < 3) return false;
    auto adj = [this](Vertex a, Vertex b) { return oracle_.adjacent(a, b); };
    for (std::size_t i = 0; i < patterns_.size(); ++i) {
      auto& c = cache_[i];
      if (c && std::all_of(c->begin(), c->end(), [&](Vertex v) { return member[v] != 0; })) {
        continue;
      }
      c = find_induced_by(adj, patterns_[i], s);
      if (!c) return false;
    }
    return true;
  }

 private:
  const GraphOracle& oracle_;
  std::vector<Graph> patterns_;
  std::vector<std::optional<Embedding>> cache_;
};

}  // namespace

BasisResult basis_extract(const GraphOracle& oracle, Vertex budget,
                          const std::vector<Graph>& targets) {
  if (budget < 1) throw PreconditionError("basis_extract needs a positive budget");
  BasisResult out;
  out.f.assign(budget, '0');

  VertexSet u(budget);
  for (Vertex k = 0; k < budget; ++k) u[k] = k;
  SmallUniversality uni0(oracle), uni1(oracle);
  std::vector<char> m0(budget, 0), m1(budget, 0);
  std::size_t passed[2] = {0, 0};
  for (Vertex n = 0; n < budget; ++n) {
    VertexSet s0, s1;
    for (Vertex k : u) {
      if (k <= n) continue;
      (oracle.adjacent(n, k) ? s1 : s0).push_back(k);
    }
    if (s0.empty() && s1.empty()) break;  // remaining bits stay 0 by the tie rule
    for (Vertex k : s0) m0[k] = 1;
    for (Vertex k : s1) m1[k] = 1;
    int bit;
    if (uni0.test(s0, m0)) {
      bit = 0;
      ++passed[0];
    } else if (uni1.test(s1, m1)) {
      bit = 1;
      ++passed[1];
    } else {
      bit = s1.size() > s0.size() ? 1 : 0;
    }
    for (Vertex k : s0) m0[k] = 0;
    for (Vertex k : s1) m1[k] = 0;
    out.f[n] = bit ? '1' : '0';
    u = bit ? std::move(s1) : std::move(s0);
  }

  const std::size_t ones = static_cast<std::size_t>(std::count(out.f.begin(), out.f.end(), '1'));
  const bool side1 = passed[0] + passed[1] > 0 ? passed[1] > passed[0] : 2 * ones > out.f.size();
  out.side = side1 ? BasisSide::Complement : BasisSide::UFin;
  const char side_bit = side1 ? '1' : '0';

  // U_n recomputed for the increasing stage indices the witness search visits.
  VertexSet alive(budget);
  for (Vertex k = 0; k < budget; ++k) alive[k] = k;
  Vertex stage = 0;
  auto advance = [&](Vertex n) {
    for (; stage < n; ++stage) {
      const bool want = out.f[stage] == '1';
      VertexSet next;
      for (Vertex k : alive)
        if (k > stage && oracle.adjacent(stage, k) == want) next.push_back(k);
      alive = std::move(next);
    }
  };
  auto adj = [&](Vertex a, Vertex b) { return oracle.adjacent(a, b); };
  Vertex n = 0;
  for (const auto& t : targets) {
    advance(n);
    VertexSet cand;
    for (Vertex k : alive)
      if (k >= n && out.f[k] == side_bit) cand.push_back(k);
    out.surviving = cand.size();
    const Graph pattern = side1 ? complement(t) : t;
    auto e = find_induced_by(adj, pattern, cand);
    if (!e) break;
    VertexSet w(e->begin(), e->end());
    std::sort(w.begin(), w.end());
    n = w.empty() ? n : w.back() + 1;
    out.witnesses.push_back(std::move(w));
    out.embeddings.push_back(std::move(*e));
  }
  out.complete = out.witnesses.size() == targets.size();
  if (out.witnesses.empty() && !targets.empty()) {
    throw BudgetError("basis_extract: budget exhausted before any witness; surviving U_n has " +
                          std::to_string(out.surviving) + " vertices",
                      static_cast<double>(out.surviving));
  }
  return out;
}

}  // namespace drawable

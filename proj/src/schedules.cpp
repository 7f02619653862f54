#include "drawable/schedules.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "drawable/constructions.hpp"
#include "drawable/error.hpp"

namespace drawable {

namespace {

std::uint64_t truncation_for(const ScheduleConfig& cfg, std::uint64_t pairs) {
  return cfg.truncation ? cfg.truncation : std::max<std::uint64_t>(8 * pairs, 64);
}

EdgeSchedule blank(std::string builder, std::string source, Vertex n) {
  EdgeSchedule s;
  s.builder = std::move(builder);
  s.source = std::move(source);
  s.vertex_budget = n;
  s.table.resize(pair_count(n));
  return s;
}

void require(const ProbSeq& seq, SeqFlag f, const std::string& who) {
  if (!classify(seq).has(f)) {
    throw PreconditionError(who + " needs a " + flag_name(f) + " sequence, got " + seq.text());
  }
}

// Unmet targets throw under strict configs and are recorded otherwise.
void enforce(EdgeSchedule& s, const ScheduleConfig& cfg, bool ok, const std::string& msg,
             double achieved) {
  if (ok) return;
  if (cfg.strict) throw BudgetError(msg, achieved);
  s.shortfalls.push_back(msg);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// Index pool over one residue class of the source sequence; local index i maps
// to global index stride*i + offset.
struct Part {
  ProbSeq seq;
  IndexPool pool;
  std::uint64_t stride;
  std::uint64_t offset;
  std::vector<std::uint64_t> used;

  Part(const ProbSeq& full, std::uint64_t stride_, std::uint64_t offset_, std::uint64_t n)
      : seq(stride_ == 1 ? full : ProbSeq::subsequence(full, stride_, offset_)),
        pool(seq, n),
        stride(stride_),
        offset(offset_) {}

  std::uint64_t global(std::uint64_t i) const { return stride * i + offset; }

  std::uint64_t take(std::optional<std::uint64_t> i, const char* what) {
    if (!i) {
      throw BudgetError(std::string("index pool exhausted while drawing ") + what +
                            "; raise the truncation",
                        static_cast<double>(pool.size()));
    }
    used.push_back(global(*i));
    return *i;
  }
  std::uint64_t smallest(const char* what) { return take(pool.take_smallest(), what); }
  std::uint64_t largest(const char* what) { return take(pool.take_largest(), what); }
  std::uint64_t lowest(const char* what) { return take(pool.take_lowest(), what); }
};

void assign(EdgeSchedule& s, std::uint64_t i, const Part& part, std::uint64_t local,
            std::optional<bool> planned, const std::string& region) {
  Assignment& x = s.table[i];
  x.prob = part.pool.prob(local);
  x.source = part.global(local);
  x.planned = planned;
  x.region = s.region_id(region);
}

std::vector<int> block_membership(const std::vector<ScheduleBlock>& blocks, Vertex n) {
  std::vector<int> of(n, -1);
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (Vertex v : blocks[b].vertices) of[v] = static_cast<int>(b);
  return of;
}

std::vector<std::uint64_t> sorted(std::vector<std::uint64_t> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Fills every pair among vertices >= layout shift: cross pairs from the
// split_summable selection of `main` and then its smallest values, planned block
// pairs round-robin from the extremes of `main`, A0 pairs in index order of `a0`.
void fill_ufin(EdgeSchedule& s, const UfinLayout& layout, Vertex first, Part& main, Part& a0,
               const ScheduleConfig& cfg, std::vector<std::uint64_t>& split_used) {
  const Vertex n = s.vertex_budget;
  const auto of = block_membership(layout.blocks, n);

  auto picks = split_summable(main.seq, cfg.summable_budget, main.pool.size());
  for (auto i : picks) main.pool.take(i);
  std::size_t next_pick = 0;
  for (Vertex b = first + 1; b < n; ++b) {
    for (Vertex a = first; a < b; ++a) {
      if (of[a] >= 0 && of[a] == of[b]) continue;
      std::uint64_t local;
      if (next_pick < picks.size()) {
        local = picks[next_pick++];
        main.used.push_back(main.global(local));
        split_used.push_back(main.global(local));
      } else {
        local = main.smallest("cross pairs");
      }
      assign(s, pair_index(a, b), main, local, false, "cross");
    }
  }
  for (const auto& blk : layout.blocks) {
    if (blk.family == "A0") continue;
    for (Vertex j = 1; j < blk.vertices.size(); ++j) {
      for (Vertex i = 0; i < j; ++i) {
        const bool bit = blk.plan.adjacent(i, j);
        const auto local = bit ? main.largest("block edges") : main.smallest("block non-edges");
        assign(s, pair_index(blk.vertices[i], blk.vertices[j]), main, local, bit, "block");
      }
    }
  }
  for (const auto& blk : layout.blocks) {
    if (blk.family != "A0") continue;
    const auto local = a0.lowest("A0 pairs");
    assign(s, pair_index(blk.vertices[0], blk.vertices[1]), a0, local, std::nullopt, "a0");
  }
}

void check_families(EdgeSchedule& s, const ScheduleConfig& cfg, const std::string& prefix) {
  for (const auto& [key, value] : s.budget) {
    if (key.rfind("family:" + prefix, 0) != 0) continue;
    enforce(s, cfg, value >= cfg.divergence_target,
            key + " = " + fmt(value) + " below target " + fmt(cfg.divergence_target), value);
  }
}

}  // namespace

EdgeSchedule identity_schedule(const ProbSeq& seq, Vertex vertex_budget) {
  EdgeSchedule s = blank("identity", seq.text(), vertex_budget);
  const auto r = s.region_id("all");
  for (std::uint64_t i = 0; i < s.table.size(); ++i) s.table[i] = {seq.eval(i), i, std::nullopt, r};
  s.budget = compute_budget(s);
  return s;
}

EdgeSchedule replicate_schedule(const GraphOracle& target, Vertex vertex_budget) {
  EdgeSchedule s = blank("replicate", "interleave(1-(geom:1/2),geom:1/2)", vertex_budget);
  s.params["target"] = target.kind();
  const auto re = s.region_id("edge");
  const auto rn = s.region_id("non_edge");
  std::uint64_t e = 0, f = 0;
  for (std::uint64_t i = 0; i < s.table.size(); ++i) {
    const Pair pr = index_pair(i);
    const bool bit = target.adjacent(pr.a, pr.b);
    const std::uint64_t m = bit ? ++e : ++f;
    const Probability tail = m <= 1000 ? Probability::from_value(std::ldexp(1.0, -static_cast<int>(m)))
                                       : Probability::from_log(-static_cast<double>(m) * std::numbers::ln2);
    s.table[i] = {bit ? tail.flipped() : tail, bit ? 2 * (m - 1) : 2 * (m - 1) + 1, bit,
                  bit ? re : rn};
  }
  s.budget = compute_budget(s);
  return s;
}

UfinLayout ufin_layout(Vertex vertex_count, unsigned catalog_size, Vertex shift) {
  UfinLayout out;
  out.catalog = connected_catalog(catalog_size);
  Vertex v = 0;
  for (std::size_t round = 0;; ++round) {
    auto place = [&](const std::string& family, const Graph& plan) {
      if (v + plan.order() > vertex_count) return false;
      ScheduleBlock b{family, {}, plan};
      for (Vertex i = 0; i < plan.order(); ++i) b.vertices.push_back(shift + v + i);
      out.blocks.push_back(std::move(b));
      out.round_of.push_back(round);
      v += plan.order();
      return true;
    };
    if (!place("A0", anticlique(2))) break;
    bool complete = true;
    for (std::size_t g = 0; g < out.catalog.size() && complete; ++g)
      complete = place("G" + std::to_string(g), out.catalog[g]);
    if (!complete) break;
  }
  out.covered = v;
  return out;
}

EdgeSchedule ufin_schedule(const ProbSeq& seq, Vertex vertex_budget, unsigned catalog_size,
                           const ScheduleConfig& cfg) {
  require(seq, SeqFlag::BC_M0, "ufin_schedule");
  EdgeSchedule s = blank("ufin", seq.text(), vertex_budget);
  const auto layout = ufin_layout(vertex_budget, catalog_size);
  Part pool(seq, 1, 0, truncation_for(cfg, s.table.size()));
  std::vector<std::uint64_t> split_used;
  fill_ufin(s, layout, 0, pool, pool, cfg, split_used);
  s.blocks = layout.blocks;
  s.params["catalog_size"] = std::to_string(catalog_size);
  for (std::size_t g = 0; g < layout.catalog.size(); ++g)
    s.params["family:G" + std::to_string(g)] = canonical_code(layout.catalog[g]);
  s.index_classes["I"] = sorted(split_used);
  s.index_classes["used"] = sorted(pool.used);
  s.budget = compute_budget(s);
  check_families(s, cfg, "G");
  return s;
}

EdgeSchedule suspended_schedule(const ProbSeq& seq, Vertex vertex_budget, unsigned catalog_size,
                                const ScheduleConfig& cfg) {
  if (vertex_budget < 1) throw PreconditionError("suspended_schedule needs at least vertex 0");
  require(seq, SeqFlag::BC_M0, "suspended_schedule");
  EdgeSchedule s = blank("suspended", seq.text(), vertex_budget);
  const std::uint64_t n_part = truncation_for(cfg, s.table.size()) / 3 + 1;
  Part I(seq, 3, 0, n_part), J(seq, 3, 1, n_part), K(seq, 3, 2, n_part);
  for (const Part* p : {&I, &J, &K}) require(p->seq, SeqFlag::BC_M0, "suspended_schedule part");

  const auto layout = ufin_layout(vertex_budget - 1, catalog_size, 1);
  std::vector<std::uint64_t> split_used;
  fill_ufin(s, layout, 1, I, K, cfg, split_used);

  // pi pairs: blocks of G_i in round j follow pattern k = j mod 2^#G_i
  std::vector<int> pattern_bit(vertex_budget, -1);
  for (std::size_t b = 0; b < layout.blocks.size(); ++b) {
    const auto& blk = layout.blocks[b];
    if (blk.family == "A0") continue;
    const std::size_t width = blk.vertices.size();
    const std::uint64_t k = layout.round_of[b] % (std::uint64_t{1} << width);
    for (std::size_t t = 0; t < width; ++t) pattern_bit[blk.vertices[t]] = (k >> t) & 1;
    Graph ext_plan = isolated_union(anticlique(1), blk.plan);
    std::vector<Pair> extra;
    for (std::size_t t = 0; t < width; ++t)
      if ((k >> t) & 1) extra.push_back({0, static_cast<Vertex>(t + 1)});
    ext_plan = modify(ext_plan, extra);
    VertexSet verts{0};
    verts.insert(verts.end(), blk.vertices.begin(), blk.vertices.end());
    s.blocks.push_back({blk.family + "/w" + std::to_string(k), std::move(verts), ext_plan});
  }
  for (Vertex v = 1; v < vertex_budget; ++v) {
    if (pattern_bit[v] >= 0) continue;
    assign(s, pair_index(0, v), J, J.smallest("pi-A0 pairs"), false, "pi_a0");
  }
  for (Vertex v = 1; v < vertex_budget; ++v) {
    if (pattern_bit[v] < 0) continue;
    const bool bit = pattern_bit[v] == 1;
    const auto local = bit ? J.largest("pi edges") : J.smallest("pi non-edges");
    assign(s, pair_index(0, v), J, local, bit, "pi");
  }
  s.blocks.insert(s.blocks.begin(), layout.blocks.begin(), layout.blocks.end());
  s.params["catalog_size"] = std::to_string(catalog_size);
  s.params["pi"] = "0";
  s.index_classes["I"] = sorted(I.used);
  s.index_classes["J"] = sorted(J.used);
  s.index_classes["K"] = sorted(K.used);
  s.index_classes["I_split"] = sorted(split_used);
  s.budget = compute_budget(s);
  const double pa = s.budget["region:pi_a0:p"];
  enforce(s, cfg, pa <= cfg.summable_budget,
          "pi-A0 sum " + fmt(pa) + " above " + fmt(cfg.summable_budget), pa);
  check_families(s, cfg, "G");
  return s;
}

EdgeSchedule closure_schedule(const std::vector<Graph>& family, const ProbSeq& seq,
                              Vertex vertex_budget, const ScheduleConfig& cfg) {
  if (family.empty()) throw PreconditionError("closure_schedule needs a nonempty family");
  for (const auto& g : family)
    if (g.order() == 0) throw PreconditionError("closure_schedule family member without vertices");
  require(seq, SeqFlag::Acc01, "closure_schedule");
  EdgeSchedule s = blank("closure", seq.text(), vertex_budget);

  // Blocks B^m_n enumerated along diagonals n + m = d, each carrying K[n mod t].
  std::vector<std::uint64_t> free_pairs;
  Vertex v = 0;
  bool full = false;
  for (std::size_t d = 0; !full; ++d) {
    for (std::size_t n = 0; n <= d; ++n) {
      const std::size_t m = d - n;
      const Graph& g = family[n % family.size()];
      if (v + g.order() > vertex_budget) {
        full = true;
        break;
      }
      ScheduleBlock b{"K" + std::to_string(n % family.size()), {}, g};
      for (Vertex i = 0; i < g.order(); ++i) b.vertices.push_back(v + i);
      if (m == n && g.order() >= 2) free_pairs.push_back(pair_index(v, v + 1));
      s.blocks.push_back(std::move(b));
      v += g.order();
    }
  }
  const auto of = block_membership(s.blocks, vertex_budget);
  std::vector<char> bit_of(s.table.size(), 0);
  for (const auto& b : s.blocks)
    for (const auto& e : b.plan.edges()) bit_of[pair_index(b.vertices[e.a], b.vertices[e.b])] = 1;
  std::vector<char> is_free(s.table.size(), 0);
  for (auto i : free_pairs) is_free[i] = 1;

  Part pool(seq, 1, 0, truncation_for(cfg, s.table.size()));
  std::vector<std::uint64_t> a0, a1, a2;
  for (std::uint64_t i = 0; i < s.table.size(); ++i) {
    if (is_free[i] || bit_of[i]) continue;
    const auto local = pool.smallest("A0");
    a0.push_back(local);
    const Pair pr = index_pair(i);
    assign(s, i, pool, local, false, of[pr.a] >= 0 && of[pr.a] == of[pr.b] ? "a0_block" : "a0_cross");
  }
  for (std::uint64_t i = 0; i < s.table.size(); ++i) {
    if (!bit_of[i]) continue;
    const auto local = pool.largest("A1");
    a1.push_back(local);
    assign(s, i, pool, local, true, "a1");
  }
  for (auto i : free_pairs) {
    const auto local = pool.lowest("A2");
    a2.push_back(local);
    assign(s, i, pool, local, std::nullopt, "a2_free");
  }
  s.index_classes["A0"] = sorted(a0);
  s.index_classes["A1"] = sorted(a1);
  s.index_classes["A2"] = sorted(a2);
  s.params["epsilon"] = fmt(cfg.epsilon);
  for (std::size_t i = 0; i < family.size(); ++i)
    s.params["family:K" + std::to_string(i)] = graph_label(family[i]);
  s.budget = compute_budget(s);
  const double p0 = s.budget["class:A0:p"], q1 = s.budget["class:A1:q"];
  enforce(s, cfg, p0 <= cfg.epsilon, "A0 sum " + fmt(p0) + " above epsilon", p0);
  enforce(s, cfg, q1 <= cfg.epsilon, "A1 co-sum " + fmt(q1) + " above epsilon", q1);
  return s;
}

ProbSeq sum_g_descriptor(const ProbSeq& seq) { return ProbSeq::subsequence(seq, 3, 0); }

EdgeSchedule sum_with_fixed_schedule(const EdgeSchedule& g_sched, const Graph& h,
                                     const ProbSeq& seq, const ScheduleConfig& cfg) {
  require(seq, SeqFlag::Acc01, "sum_with_fixed_schedule");
  const ProbSeq g_seq = sum_g_descriptor(seq);
  require(g_seq, SeqFlag::Acc01, "sum_with_fixed_schedule G part");
  const bool sourced =
      std::any_of(g_sched.table.begin(), g_sched.table.end(), [](const Assignment& x) { return x.source; });
  if (sourced && g_sched.source != g_seq.text()) {
    throw PreconditionError("G schedule must draw from " + g_seq.text() + ", got '" +
                            g_sched.source + "'");
  }
  const Vertex nh = h.order();
  const Vertex n = nh + g_sched.vertex_budget;
  EdgeSchedule s = blank("sum_with_fixed", seq.text(), n);

  std::uint64_t max_source = 0;
  for (const auto& x : g_sched.table)
    if (x.source) max_source = std::max(max_source, *x.source);
  Part pool(seq, 1, 0, std::max(truncation_for(cfg, s.table.size()), 3 * max_source + 3));
  for (std::uint64_t i = 0; i < pool.pool.size(); i += 3) pool.pool.take(i);

  std::vector<std::uint64_t> a_g;
  for (Vertex b = nh + 1; b < n; ++b) {
    for (Vertex a = nh; a < b; ++a) {
      Assignment x = g_sched.at(a - nh, b - nh);
      x.region = s.region_id("g:" + g_sched.regions.at(x.region));
      if (x.source) {
        x.source = 3 * *x.source;
        a_g.push_back(*x.source);
      }
      s.table[pair_index(a, b)] = x;
    }
  }
  std::vector<std::uint64_t> s_gh, s_h, b_h;
  for (Vertex b = nh; b < n; ++b) {
    for (Vertex a = 0; a < std::min(b, nh); ++a) {
      const auto local = pool.smallest("S_GH");
      s_gh.push_back(local);
      assign(s, pair_index(a, b), pool, local, false, "cross");
    }
  }
  for (Vertex b = 1; b < nh; ++b) {
    for (Vertex a = 0; a < b; ++a) {
      if (h.adjacent(a, b)) continue;
      const auto local = pool.smallest("S_H");
      s_h.push_back(local);
      assign(s, pair_index(a, b), pool, local, false, "h_non_edge");
    }
  }
  for (const auto& e : h.edges()) {
    const auto local = pool.largest("B_H");
    b_h.push_back(local);
    assign(s, pair_index(e.a, e.b), pool, local, true, "h_edge");
  }

  VertexSet dh(nh);
  for (Vertex i = 0; i < nh; ++i) dh[i] = i;
  s.blocks.push_back({"H", dh, h});
  for (auto b : g_sched.blocks) {
    for (auto& v : b.vertices) v += nh;
    b.family = "g:" + b.family;
    s.blocks.push_back(std::move(b));
  }
  s.index_classes["A_G"] = sorted(a_g);
  s.index_classes["S_GH"] = sorted(s_gh);
  s.index_classes["S_H"] = sorted(s_h);
  s.index_classes["B_H"] = sorted(b_h);
  s.params["g_builder"] = g_sched.builder;
  s.params["h"] = graph_label(h);
  s.budget = compute_budget(s);
  const double c = s.budget["class:S_GH:p"], sh = s.budget["class:S_H:p"],
               bh = s.budget["class:B_H:q"];
  enforce(s, cfg, c <= cfg.epsilon, "S_GH sum " + fmt(c) + " above epsilon", c);
  enforce(s, cfg, sh <= cfg.epsilon, "S_H sum " + fmt(sh) + " above epsilon", sh);
  enforce(s, cfg, bh <= cfg.epsilon, "B_H co-sum " + fmt(bh) + " above epsilon", bh);
  return s;
}

EdgeSchedule star_schedule(const ProbSeq& seq, Vertex star_count, Vertex vertex_budget,
                           const ScheduleConfig& cfg) {
  if (star_count < 1) throw PreconditionError("star_schedule needs at least one star vertex");
  if (star_count >= vertex_budget) throw PreconditionError("star_schedule needs vertices off the star");
  require(seq, SeqFlag::BC_M0, "star_schedule");
  EdgeSchedule s = blank("star", seq.text(), vertex_budget);
  Part pool(seq, 1, 0, truncation_for(cfg, s.table.size()));
  auto picks = split_summable(seq, cfg.epsilon, pool.pool.size());
  for (auto i : picks) pool.pool.take(i);
  std::size_t next_pick = 0;
  std::vector<std::uint64_t> off;
  for (Vertex b = star_count + 1; b < vertex_budget; ++b) {
    for (Vertex a = star_count; a < b; ++a) {
      std::uint64_t local;
      if (next_pick < picks.size()) {
        local = picks[next_pick++];
        pool.used.push_back(local);
      } else {
        local = pool.smallest("off-star pairs");
      }
      off.push_back(local);
      assign(s, pair_index(a, b), pool, local, false, "off_star");
    }
  }
  for (std::uint64_t i = 0; i < s.table.size(); ++i) {
    if (index_pair(i).a >= star_count) continue;
    assign(s, i, pool, pool.lowest("star pairs"), std::nullopt, "star");
  }
  s.index_classes["off_star"] = sorted(off);
  s.params["star_count"] = std::to_string(star_count);
  s.budget = compute_budget(s);
  const double o = s.budget["region:off_star:p"];
  enforce(s, cfg, o <= cfg.epsilon, "off-star sum " + fmt(o) + " above epsilon", o);
  return s;
}

EdgeSchedule theta_schedule(unsigned depth, Vertex vertex_budget, const ScheduleConfig& cfg) {
  if (depth < 1) throw PreconditionError("theta_schedule needs depth >= 1");
  EdgeSchedule s = blank("theta", "", vertex_budget);
  Vertex v = 0;
  unsigned built = 0;
  for (unsigned n = 1; n <= depth; ++n) {
    const Graph g = v_tree(n);
    if (v + g.order() > vertex_budget) break;
    ScheduleBlock b{"B" + std::to_string(n), {}, g};
    for (Vertex i = 0; i < g.order(); ++i) b.vertices.push_back(v + i);
    s.blocks.push_back(std::move(b));
    v += g.order();
    built = n;
  }
  if (built == 0) throw PreconditionError("vertex budget below the first theta block");
  const auto of = block_membership(s.blocks, vertex_budget);
  const auto rb = s.region_id("block");
  const auto rc = s.region_id("coin");
  const auto rx = s.region_id("cross");
  for (const auto& b : s.blocks) {
    const unsigned n = static_cast<unsigned>(&b - s.blocks.data()) + 1;
    const double m = static_cast<double>(pair_count(b.vertices.size()));
    const Probability delta = Probability::from_value(cfg.epsilon * std::ldexp(1.0, -static_cast<int>(n)) / (m - 1));
    const Pair coin = v_tree_extra_pair(n);
    for (Vertex j = 1; j < b.vertices.size(); ++j) {
      for (Vertex i = 0; i < j; ++i) {
        const auto idx = pair_index(b.vertices[i], b.vertices[j]);
        if (Pair{i, j} == coin) {
          s.table[idx] = {Probability::from_value(0.5), std::nullopt, std::nullopt, rc};
        } else {
          const bool bit = b.plan.adjacent(i, j);
          s.table[idx] = {bit ? delta.flipped() : delta, std::nullopt, bit, rb};
        }
      }
    }
  }
  const double c = cfg.epsilon * 6.0 / (std::numbers::pi * std::numbers::pi);
  std::uint64_t rank = 0;
  for (std::uint64_t i = 0; i < s.table.size(); ++i) {
    const Pair pr = index_pair(i);
    if (of[pr.a] >= 0 && of[pr.a] == of[pr.b]) continue;
    const double r1 = static_cast<double>(++rank);
    s.table[i] = {Probability::from_value(c / (r1 * r1)), std::nullopt, false, rx};
  }
  s.params["depth"] = std::to_string(built);
  s.params["epsilon"] = fmt(cfg.epsilon);
  s.budget = compute_budget(s);
  double residual = 0.0;
  for (const auto& [key, value] : s.budget)
    if (key.rfind("family_residual:", 0) == 0) residual += value;
  s.budget["theta_residual"] = residual;
  return s;
}

}  // namespace drawable

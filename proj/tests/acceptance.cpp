// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "drawable/constructions.hpp"
#include "drawable/error.hpp"
#include "drawable/measure.hpp"
#include "drawable/rng.hpp"
#include "drawable/sampler.hpp"
#include "drawable/schedules.hpp"

using namespace drawable;

namespace {

constexpr double kSigmas = 4.0;
constexpr double kRelTol = 1e-12;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

bool close_rel(double a, double b) {
  return std::abs(a - b) <= kRelTol * std::max(std::abs(a), std::abs(b));
}

bool block_realized(const Graph& g, const ScheduleBlock& b) {
  for (std::size_t j = 0; j < b.vertices.size(); ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (g.adjacent(b.vertices[i], b.vertices[j]) != b.plan.adjacent(i, j)) return false;
  return true;
}

// ---------------------------------------------------------------- 1
Outcome cylinder_agreement() {
  Outcome o;
  const std::uint64_t samples = 100000;
  const std::vector<ProbSeq> seqs{ProbSeq::parse("invlog:3"), ProbSeq::parse("const:0.3"),
                                  ProbSeq::parse("interleave(geom:1/2,1-(geom:1/2))")};
  Rng rng(20240601);
  int checked = 0;
  double worst = 0.0;
  for (std::size_t s = 0; s < seqs.size(); ++s) {
    for (int t = 0; t < 50; ++t) {
      CylinderConstraint c;
      const std::size_t coords = 1 + rng.below(12);
      while (c.size() < coords) c[rng.below(24)] = rng.below(2) == 1;
      const double p = cylinder_prob(seqs[s], c);
      const double f = cylinder_frequency(seqs[s], c, samples, 1000 * s + t);
      const double sd = std::sqrt(p * (1 - p) / samples);
      const double z = sd > 0 ? std::abs(f - p) / sd : (f == p ? 0.0 : INFINITY);
      worst = std::max(worst, z);
      o.require(z <= kSigmas, seqs[s].text() + fmt(" constraint %.0f off by %.2f sigma", t, z));
      ++checked;
    }
  }
  if (o.ok) o.detail = fmt("%.0f constraints, worst %.2f sigma", checked, worst);
  return o;
}

// ---------------------------------------------------------------- 2
Outcome replicate_deviations() {
  Outcome o;
  const Vertex n = 64;
  const std::uint64_t trials = 1000;
  const auto s = replicate_schedule(GraphOracle::canonical_ufin(4), n);
  const auto [mean, var] = expected_deviations(s, n);
  HarnessOptions opt;
  opt.analyzers = {Analyzer::Deviations};
  opt.late_rank = 10;
  const auto rep = trial_harness(s, n, trials, opt, 7);
  const double got = rep.aggregates.at("deviations").mean;
  const double sd = std::sqrt(var / trials);
  std::size_t clean = 0;
  for (const auto& r : rep.records) clean += r.late_deviations == 0;
  const double frac = static_cast<double>(clean) / trials;
  o.require(mean <= 2.0, fmt("analytic mean %.4f above 2", mean));
  o.require(std::abs(got - mean) <= kSigmas * sd, fmt("mean %.4f vs %.4f (sd %.4f)", got, mean, sd));
  o.require(frac >= 0.95, fmt("late-clean fraction %.3f", frac));
  if (o.ok) o.detail = fmt("mean %.4f vs analytic %.4f, late-clean %.3f", got, mean, frac);
  return o;
}

// ---------------------------------------------------------------- 3
Outcome ufin_emergence() {
  Outcome o;
  const Vertex n = 200;
  const std::uint64_t trials = 500;
  const auto s = ufin_schedule(ProbSeq::parse("invlog:3"), n, 2);
  const auto cross_id = std::find(s.regions.begin(), s.regions.end(), "cross") - s.regions.begin();
  double cross_var = 0.0;
  for (const auto& x : s.table)
    if (x.region == cross_id) cross_var += x.prob.value() * x.prob.complement();
  const double cross_sum = s.budget.at("region:cross:p");

  // Exact probability that every G family has a realized block.
  std::map<std::string, double> miss;
  for (const auto& b : s.blocks)
    if (b.family[0] == 'G') {
      auto [it, fresh] = miss.try_emplace(b.family, 1.0);
      it->second *= 1.0 - std::exp(s.block_log_realization(b));
    }
  double exact = 1.0;
  for (const auto& [f, m] : miss) exact *= 1.0 - m;

  double cross_mean = 0.0;
  std::size_t all_realized = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const Graph g = sample_prefix(s, n, trial_seed(3, t));
    for (const auto& e : g.edges()) cross_mean += s.at(e.a, e.b).region == cross_id;
    std::set<std::string> seen;
    for (const auto& b : s.blocks)
      if (b.family[0] == 'G' && block_realized(g, b)) seen.insert(b.family);
    all_realized += seen.size() == miss.size();
  }
  cross_mean /= trials;
  const double frac = static_cast<double>(all_realized) / trials;
  const double sd = std::sqrt(exact * (1 - exact) / trials);
  o.require(cross_mean <= cross_sum + kSigmas * std::sqrt(cross_var / trials),
            fmt("cross edges %.2f above audit %.2f", cross_mean, cross_sum));
  o.require(frac >= 0.75, fmt("families realized in %.3f of trials", frac));
  o.require(std::abs(frac - exact) <= kSigmas * sd, fmt("realized %.3f vs exact %.4f", frac, exact));
  if (o.ok)
    o.detail = fmt("cross %.1f <= audit %.1f, realized %.3f", cross_mean, cross_sum, frac) +
               fmt(" vs exact %.4f", exact);
  return o;
}

// ---------------------------------------------------------------- 4
Outcome theta_coin() {
  Outcome o;
  const unsigned depth = 4;
  const Vertex n = 63;
  const std::uint64_t trials = 10000;
  const auto s = theta_schedule(depth, n);
  std::vector<std::size_t> base(depth, 0), total(depth, 0);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const Graph g = sample_prefix(s, n, trial_seed(4, t));
    for (unsigned k = 0; k < s.blocks.size(); ++k) {
      const auto& b = s.blocks[k];
      const Graph local = induced(g, b.vertices);
      const Graph prime = modify(b.plan, {v_tree_extra_pair(k + 1)});
      if (local == b.plan) {
        ++base[k];
        ++total[k];
      } else if (local == prime) {
        ++total[k];
      }
    }
  }
  std::size_t b_all = 0, t_all = 0;
  for (unsigned k = 0; k < depth; ++k) {
    b_all += base[k];
    t_all += total[k];
    const double f = static_cast<double>(base[k]) / total[k];
    o.require(std::abs(f - 0.5) <= kSigmas * std::sqrt(0.25 / total[k]),
              fmt("block %.0f: fraction %.4f of %.0f", k + 1, f, total[k]));
  }
  const double f = static_cast<double>(b_all) / t_all;
  o.require(std::abs(f - 0.5) <= kSigmas * std::sqrt(0.25 / t_all), fmt("fraction %.4f", f));
  if (o.ok) o.detail = fmt("B_n fraction %.4f over %.0f realized blocks", f, t_all);
  return o;
}

// ---------------------------------------------------------------- 5
bool class_contains(const Graph& x, const Graph& h, const std::vector<unsigned>& colour, unsigned k) {
  for (unsigned c = 0; c < k; ++c) {
    VertexSet cls;
    for (Vertex v = 0; v < x.order(); ++v)
      if (colour[v] == c) cls.push_back(v);
    if (find_induced(x, h, cls)) return true;
  }
  return false;
}

Outcome ramsey() {
  Outcome o;
  for (unsigned k = 1; k <= 3; ++k) {
    const Graph x = ramsey_graph(clique(1), k);
    o.require(verify_ramsey(x, clique(1), k).holds, fmt("K1 k=%.0f", k));
    const Graph a = ramsey_graph(anticlique(2), k);
    o.require(a == anticlique(k + 1), fmt("A2 k=%.0f shape", k));
    o.require(verify_ramsey(a, anticlique(2), k).holds, fmt("A2 k=%.0f", k));
  }
  const Graph k3 = ramsey_graph(clique(2), 2);
  o.require(k3 == clique(3), "K2 k=2 shape");
  o.require(verify_ramsey(k3, clique(2), 2).holds, "K2 k=2");
  const Graph h = path_graph(3);
  const Graph x = ramsey_graph(h, 2);
  o.require(x.order() <= 24, "P3 build above the size cap");
  o.require(verify_ramsey(x, h, 2).holds, "P3 k=2");
  const auto bad = verify_ramsey(clique(2), clique(2), 2);
  o.require(!bad.holds, "K2 on K2 passed");
  o.require(bad.counterexample.size() == 2 && !class_contains(clique(2), clique(2), bad.counterexample, 2),
            "K2 on K2 certificate");
  if (o.ok) o.detail = fmt("P3 k=2 build has %.0f vertices, %.0f colourings", x.order(),
                           static_cast<double>(verify_ramsey(x, h, 2).colourings));
  return o;
}

// ---------------------------------------------------------------- 6
// Witnesses induce their targets (complemented on the complement side), and
// different witnesses see no edges (all edges on the complement side).
bool witnesses_verify(const Graph& g, const BasisResult& r, const std::vector<Graph>& targets) {
  if (!r.complete || r.embeddings.size() != targets.size()) return false;
  const bool dual = r.side == BasisSide::Complement;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const Graph want = dual ? complement(targets[i]) : targets[i];
    if (!verify_induced(g, want, r.embeddings[i])) return false;
    for (std::size_t j = 0; j < i; ++j)
      for (Vertex v : r.witnesses[i])
        for (Vertex w : r.witnesses[j])
          if (g.adjacent(v, w) != dual) return false;
  }
  return true;
}

Outcome basis() {
  Outcome o;
  const std::vector<Graph> targets{clique(1), clique(2), path_graph(3)};
  const auto ufin = GraphOracle::canonical_ufin(4);
  const auto r = basis_extract(ufin, 2000, targets);
  o.require(r.side == BasisSide::UFin, "canonical oracle side");
  o.require(witnesses_verify(ufin.prefix(2000), r, targets), "canonical oracle witnesses");
  const auto co = GraphOracle::complement_of(ufin);
  const auto rc = basis_extract(co, 2000, targets);
  o.require(rc.side == BasisSide::Complement, "complement oracle side");
  o.require(witnesses_verify(co.prefix(2000), rc, targets), "complement oracle witnesses");
  const std::vector<Graph> small{clique(2), path_graph(3)};
  int good = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto u = GraphOracle::uniform(seed);
    const auto ru = basis_extract(u, 5000, small);
    good += witnesses_verify(u.prefix(5000), ru, small);
  }
  o.require(good >= 48, fmt("uniform seeds verified %.0f/50", good));
  if (o.ok) o.detail = fmt("canonical and complement verified, uniform %.0f/50", good);
  return o;
}

// ---------------------------------------------------------------- 7
Outcome kakutani_examples() {
  Outcome o;
  const auto half = ProbSeq::parse("const:1/2");
  std::vector<Param> prefix;
  for (int n = 0; n < 30; ++n) prefix.push_back(Param::of(0.5 + 1.0 / ((n + 2.0) * (n + 2.0))));
  const auto near = ProbSeq::table(prefix, half);
  const auto same = kakutani(ProbSeq::parse("invlog:3"), ProbSeq::parse("invlog:3"), 1000);
  o.require(same.verdict == Verdict::Equivalent && same.partial_sum == 0.0, "p = q");
  o.require(kakutani(half, ProbSeq::parse("const:1/4"), 1000).verdict == Verdict::Singular,
            "1/2 vs 1/4");
  o.require(kakutani(half, near, 1000).verdict == Verdict::Equivalent, "1/2 vs 1/2 + 1/(n+2)^2");
  const std::vector<ProbSeq> seqs{half, ProbSeq::parse("const:1/4"), ProbSeq::parse("invlog:3"),
                                  ProbSeq::parse("geom:1/2"), ProbSeq::parse("1-(geom:1/3)"), near};
  for (const auto& p : seqs)
    for (const auto& q : seqs) {
      const auto pq = kakutani(p, q, 500), qp = kakutani(q, p, 500);
      o.require(pq.verdict == qp.verdict && pq.partial_sum == qp.partial_sum,
                "asymmetric on " + p.text() + " / " + q.text());
      double prev = 0.0;
      for (std::uint64_t N : {1u, 10u, 100u, 500u}) {
        const double s = hellinger_partial(p, q, N);
        o.require(s >= prev, "S_N decreased on " + p.text() + " / " + q.text());
        prev = s;
      }
    }
  if (o.ok) o.detail = "3 examples, 36 ordered pairs symmetric and monotone";
  return o;
}

// ---------------------------------------------------------------- 8
Outcome degree_separation() {
  Outcome o;
  const Graph a = caterpillar_tree({{3, 2}}, 500).tree;
  const Graph b = caterpillar_tree({{4, 2}}, 500).tree;
  const Graph ga = un_prefix(closure({a}, {64, 500}), 128);
  const Graph gb = un_prefix(closure({b}, {64, 500}), 128);
  const auto ra = ds_recovery(ga, {a, b});
  const auto rb = ds_recovery(gb, {a, b});
  o.require(ra.index == 0, fmt("generator A recovered as %.0f", ra.index));
  o.require(rb.index == 1, fmt("generator B recovered as %.0f", rb.index));
  const auto ca = degree_census(ga), cb = degree_census(gb);
  std::set<std::size_t> degrees;
  for (const auto& [d, c] : ca) degrees.insert(d);
  for (const auto& [d, c] : cb) degrees.insert(d);
  std::size_t differ = 0;
  for (std::size_t d : degrees) {
    const auto x = ca.count(d) ? ca.at(d) : 0, y = cb.count(d) ? cb.at(d) : 0;
    differ += x != y;
  }
  o.require(differ >= 5, fmt("censuses differ at %.0f degrees", differ));
  if (o.ok)
    o.detail = fmt("recovered 0 and 1, distances %.0f/%.0f, censuses differ at %.0f degrees",
                   ra.distances[0], ra.distances[1], differ);
  return o;
}

// ---------------------------------------------------------------- 9
NullCover random_cover(Rng& rng) {
  NullCover c;
  const std::size_t levels = 1 + rng.below(3);
  for (std::size_t l = 0; l < levels; ++l) {
    const std::size_t n = 3 + rng.below(6);
    const std::size_t members = 1 + rng.below(5);
    for (std::size_t m = 0; m < members; ++m) {
      std::string s(n, '0');
      for (auto& ch : s) ch = rng.below(2) ? '1' : '0';
      c.insert(s);
    }
  }
  return c;
}

Outcome null_covers() {
  Outcome o;
  const auto seq = ProbSeq::parse("interleave(const:1/3,invlog:5)");
  Rng rng(909);
  for (int t = 0; t < 100; ++t) {
    const auto c = random_cover(rng);
    std::vector<std::uint64_t> q;
    for (std::uint64_t i = 0; i < 3; ++i)
      if (rng.below(2)) q.push_back(i);
    const auto tr = translate_cover(c, q, seq);
    const double bound = tr.bound_factor * cover_mass(c, seq);
    o.require(cover_mass(tr.cover, seq) <= bound * (1 + kRelTol), fmt("translate bound, cover %.0f", t));
    o.require(translate_cover(tr.cover, q, seq).cover == c, fmt("translate involution, cover %.0f", t));
    const unsigned s = static_cast<unsigned>(rng.below(3));
    const auto tc = tail_closure(c, s, seq);
    o.require(cover_mass(tc.cover, seq) <= tc.mass_bound * (1 + kRelTol), fmt("tail bound, cover %.0f", t));
    std::string x(10, '0');
    for (auto& ch : x) ch = rng.below(2) ? '1' : '0';
    std::size_t expect = 0;
    for (const auto& [n, level] : c.levels())
      for (const auto& str : level) expect += x.compare(0, n, str) == 0;
    o.require(hits(c, x, 10) == expect, fmt("hits mismatch, cover %.0f", t));
  }
  if (o.ok) o.detail = "100 covers: translate, tail and hits";
  return o;
}

// ---------------------------------------------------------------- 10
void graph_properties(Outcome& o) {
  std::map<Vertex, std::size_t> by_order;
  const auto cat = graph_catalog(6);
  for (const auto& g : cat) ++by_order[g.order()];
  o.require(by_order == std::map<Vertex, std::size_t>{{1, 1}, {2, 2}, {3, 4}, {4, 11}, {5, 34}, {6, 156}},
            "catalog counts");
  Rng rng(10);
  for (int t = 0; t < 200; ++t) {
    const Graph g = cat[rng.below(cat.size())];
    const Graph h = cat[rng.below(cat.size())];
    o.require(complement(complement(g)) == g, "complement involution");
    VertexSet s;
    for (Vertex v = 0; v < g.order(); ++v)
      if (rng.below(2)) s.push_back(v);
    o.require(switch_graph(switch_graph(g, s), s) == g, "switch involution");
    std::vector<Pair> flips;
    for (std::uint64_t i = 0; i < pair_count(g.order()); ++i)
      if (rng.below(3) == 0) flips.push_back(index_pair(i));
    o.require(modify(modify(g, flips), flips) == g, "modify involution");
    const auto c = degree_census(g);
    std::size_t count = 0, degree_sum = 0;
    for (const auto& [d, k] : c) {
      count += k;
      degree_sum += d * k;
    }
    o.require(count == g.order() && degree_sum == 2 * g.size(), "census conservation");
    const Graph u = isolated_union(g, h);
    auto sum = degree_census(h);
    for (const auto& [d, k] : c) sum[d] += k;
    o.require(degree_census(u) == sum, "census additivity");
    o.require(components(u).size() == components(g).size() + components(h).size(), "component count");
    std::vector<Vertex> perm(g.order());
    for (Vertex v = 0; v < g.order(); ++v) perm[v] = v;
    for (Vertex v = g.order(); v > 1; --v) std::swap(perm[v - 1], perm[rng.below(v)]);
    const Graph r = relabel(g, perm);
    o.require(is_isomorphic(g, r) && degree_census(r) == c, "isomorphic relabel census");
    if (g.order() <= h.order())
      if (const auto e = find_induced(h, g)) o.require(verify_induced(h, g, *e), "find_induced soundness");
  }
}

void probseq_properties(Outcome& o) {
  const std::vector<std::string> texts{"const:1/2", "const:0.1", "invlog:3", "geom:1/2", "1-(geom:1/3)",
                                       "interleave(geom:1/2,1-(geom:1/2))", "interleave(invlog:4,const:0.3)",
                                       "sub(invlog:3,3,1)", "table[0.2,0.9;geom:1/4]"};
  const std::pair<SeqFlag, SeqFlag> swaps[] = {{SeqFlag::BC0, SeqFlag::BC1},
                                               {SeqFlag::BC_M0, SeqFlag::BC_M1},
                                               {SeqFlag::SummableP, SeqFlag::SummableCoP}};
  for (const auto& t : texts) {
    const auto seq = ProbSeq::parse(t);
    for (std::uint64_t n : {0ull, 1ull, 17ull, 1000ull, 999999ull}) {
      const auto p = seq.eval(n);
      o.require(std::isfinite(p.log()) && std::isfinite(p.log_complement()) &&
                    (p.log() < 0 || p.log_complement() < 0),
                "open interval on " + t);
    }
    const auto c = classify(seq), d = classify(ProbSeq::one_minus(seq));
    for (const auto& [x, y] : swaps)
      o.require(c.has(x) == d.has(y) && c.has(y) == d.has(x), "duality on " + t);
    for (SeqFlag f : {SeqFlag::BC, SeqFlag::Sep, SeqFlag::Acc01})
      o.require(c.has(f) == d.has(f), "duality preserves on " + t);
    if (c.has(SeqFlag::SummableP)) {
      const double limit = symbolic_sum(seq).value_or(INFINITY);
      double prev = 0.0;
      for (std::uint64_t N : {1u, 10u, 100u, 1000u}) {
        const double s = partial_sums(seq, 1, N).first;
        o.require(s >= prev && s <= limit * (1 + kRelTol), "partial sums on " + t);
        prev = s;
      }
    }
  }
  const auto seq = ProbSeq::parse("invlog:3");
  const std::vector<std::uint64_t> reserved{0, 5, 9};
  const auto plan = plan_blocks(seq, 2, 3.0, 5000, reserved);
  std::set<std::uint64_t> used(reserved.begin(), reserved.end());
  double sum = 0.0;
  for (const auto& b : plan.blocks) {
    double prod = 1.0;
    for (std::size_t i = 0; i < b.indices.size(); ++i) {
      o.require(used.insert(b.indices[i]).second, "plan_blocks overlap");
      const auto p = seq.eval(b.indices[i]);
      prod *= i < plan.k ? p.value() : p.complement();
    }
    sum += prod;
  }
  o.require(close_rel(plan.running_sum, sum), "plan_blocks running sum");
}

void schedule_properties(Outcome& o) {
  const auto acc = ProbSeq::parse("interleave(geom:1/2,1-(geom:1/2))");
  const std::vector<EdgeSchedule> all{
      identity_schedule(ProbSeq::parse("invlog:3"), 40),
      replicate_schedule(GraphOracle::canonical_ufin(4), 64),
      ufin_schedule(ProbSeq::parse("invlog:3"), 200, 2),
      suspended_schedule(acc, 120, 2),
      closure_schedule({path_graph(3), clique(1), cycle_graph(4)}, acc, 80),
      star_schedule(ProbSeq::parse("interleave(geom:1/2,const:1/2)"), 2, 60),
      theta_schedule(4, 120)};
  for (const auto& s : all) {
    const std::string who = s.builder;
    o.require(s.table.size() == pair_count(s.vertex_budget), "table not total: " + who);
    std::set<std::uint64_t> sources;
    double zero = 0.0, one = 0.0;
    std::map<std::string, double> rp, rq, cp, cq, fam;
    std::map<std::uint64_t, std::vector<std::string>> class_of;
    for (const auto& [c, idx] : s.index_classes)
      for (auto i : idx) class_of[i].push_back(c);
    for (const auto& x : s.table) {
      o.require(std::isfinite(x.prob.log()) && std::isfinite(x.prob.log_complement()),
                "probability at the boundary: " + who);
      if (x.source) {
        o.require(sources.insert(*x.source).second, "repeated source: " + who);
        if (auto it = class_of.find(*x.source); it != class_of.end())
          for (const auto& c : it->second) {
            cp[c] += x.prob.value();
            cq[c] += x.prob.complement();
          }
      }
      if (x.planned) (*x.planned ? one : zero) += *x.planned ? x.prob.complement() : x.prob.value();
      rp[s.regions.at(x.region)] += x.prob.value();
      rq[s.regions.at(x.region)] += x.prob.complement();
    }
    for (const auto& b : s.blocks) {
      double log_r = 0.0;
      for (std::size_t j = 0; j < b.vertices.size(); ++j)
        for (std::size_t i = 0; i < j; ++i) {
          const auto& x = s.at(b.vertices[i], b.vertices[j]);
          if (x.planned) log_r += *x.planned ? x.prob.log() : x.prob.log_complement();
        }
      fam[b.family] += std::exp(log_r);
    }
    auto agree = [&](const std::string& key, double v) {
      const auto it = s.budget.find(key);
      o.require(it != s.budget.end() && close_rel(it->second, v),
                who + " " + key + fmt(" audit %.17g vs %.17g", it == s.budget.end() ? NAN : it->second, v));
    };
    agree("planned_zero", zero);
    agree("planned_one", one);
    for (const auto& [r, v] : rp) agree("region:" + r + ":p", v);
    for (const auto& [r, v] : rq) agree("region:" + r + ":q", v);
    for (const auto& [c, v] : cp) agree("class:" + c + ":p", v);
    for (const auto& [c, v] : cq) agree("class:" + c + ":q", v);
    for (const auto& [f, v] : fam) agree("family:" + f, v);
  }
  // Geometric tail of the replicate schedule beyond plan index m.
  const auto& rep = all[1];
  std::map<bool, std::uint64_t> rank;
  std::map<std::uint64_t, double> beyond;
  for (const auto& x : rep.table) {
    if (!x.planned) continue;
    const auto r = ++rank[*x.planned];
    const double q = *x.planned ? x.prob.complement() : x.prob.value();
    for (std::uint64_t m : {1u, 5u, 10u, 20u})
      if (r > m) beyond[m] += q;
  }
  for (const auto& [m, v] : beyond)
    o.require(v <= std::ldexp(1.0, -static_cast<int>(m) + 1) * (1 + kRelTol), fmt("replicate tail m=%.0f", m));
}

Outcome properties() {
  Outcome o;
  graph_properties(o);
  probseq_properties(o);
  schedule_properties(o);
  if (o.ok) o.detail = "graph, probseq and schedule suites";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "cylinder measure agreement", 60, cylinder_agreement},
      {2, "replicate schedule deviations", 60, replicate_deviations},
      {3, "ufin schedule emergence", 300, ufin_emergence},
      {4, "theta coin fairness", 60, theta_coin},
      {5, "ramsey construction", 120, ramsey},
      {6, "basis extraction", 300, basis},
      {7, "kakutani dichotomy", 1, kakutani_examples},
      {8, "degree-sequence separation", 60, degree_separation},
      {9, "null-cover machinery", 60, null_covers},
      {10, "property suites", 120, properties},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.ok = false;
      out.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (out.ok && secs > c.limit_seconds) {
      out.ok = false;
      out.detail = fmt("runtime %.1fs above %.0fs", secs, c.limit_seconds);
    }
    failed += !out.ok;
    std::printf("%s %2d %-30s %.2fs  %s\n", out.ok ? "PASS" : "FAIL", c.id, c.name, secs, out.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}

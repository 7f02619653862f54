#include "drawable/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "drawable/error.hpp"
#include "drawable/io.hpp"
#include "drawable/rng.hpp"

namespace drawable {

namespace {

constexpr const char* kAnalyzerNames[] = {"deviations", "components", "degrees", "universality",
                                          "witness"};

void check_budget(const EdgeSchedule& sched, Vertex n) {
  if (n > sched.vertex_budget) {
    throw PreconditionError("prefix of " + std::to_string(n) + " vertices beyond schedule budget " +
                            std::to_string(sched.vertex_budget));
  }
}

// Position of each planned pair among planned pairs with the same bit, from 1.
std::vector<std::uint64_t> plan_ranks(const EdgeSchedule& sched, Vertex n) {
  std::vector<std::uint64_t> rank(pair_count(n), 0);
  std::uint64_t next[2] = {0, 0};
  for (std::uint64_t i = 0; i < rank.size(); ++i) {
    const auto& x = sched.table[i];
    if (x.planned) rank[i] = ++next[*x.planned];
  }
  return rank;
}

TrialRecord run_trial(const EdgeSchedule& sched, Vertex n, std::uint64_t t,
                      const HarnessOptions& opt, const std::vector<std::uint64_t>& ranks,
                      std::uint64_t seed) {
  TrialRecord r;
  r.trial = t;
  const Graph g = sample_prefix(sched, n, trial_seed(seed, t));
  r.edges = g.size();
  auto has = [&](Analyzer a) {
    return std::find(opt.analyzers.begin(), opt.analyzers.end(), a) != opt.analyzers.end();
  };
  if (has(Analyzer::Deviations)) {
    for (const auto& p : deviation_report(g, sched)) {
      ++r.deviations;
      if (ranks[pair_index(p)] >= opt.late_rank) ++r.late_deviations;
    }
  }
  if (has(Analyzer::Components))
    for (const auto& c : components(g)) ++r.component_sizes[c.size()];
  if (has(Analyzer::Degrees)) r.degrees = degree_census(g);
  if (has(Analyzer::Universality)) r.universality = weak_universality_scan(g, opt.universality_max).level;
  if (has(Analyzer::Witness)) r.witness_fraction = rado_witness_stats(g, opt.witness_size).fraction();
  return r;
}

void add(std::map<std::string, std::vector<double>>& m, const std::string& k, double v) {
  m[k].push_back(v);
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

SampleReport finish(const EdgeSchedule& sched, Vertex n, std::uint64_t trials,
                    const HarnessOptions& opt, std::uint64_t seed,
                    std::vector<TrialRecord> records) {
  SampleReport rep;
  rep.trials = trials;
  rep.seed = seed;
  rep.n = n;
  rep.analyzers = opt.analyzers;
  rep.schedule_digest = schedule_digest(sched);
  rep.records = std::move(records);
  rep.aggregates = aggregate_records(rep.records, rep.analyzers);
  std::string text = rep.schedule_digest + " " + std::to_string(n) + " " +
                     std::to_string(trials) + " " + std::to_string(seed) + "\n";
  for (const auto& [name, a] : rep.aggregates) {
    text += name + " " + fmt17(a.mean) + " " + fmt17(a.min) + " " + fmt17(a.max);
    for (const auto& [v, c] : a.histogram) text += " " + std::to_string(v) + ":" + std::to_string(c);
    text += "\n";
  }
  rep.digest = digest_of(text);
  return rep;
}

HarnessOptions normalized(HarnessOptions opt) {
  std::sort(opt.analyzers.begin(), opt.analyzers.end());
  opt.analyzers.erase(std::unique(opt.analyzers.begin(), opt.analyzers.end()), opt.analyzers.end());
  return opt;
}

}  // namespace

const char* analyzer_name(Analyzer a) { return kAnalyzerNames[static_cast<int>(a)]; }

Analyzer parse_analyzer(const std::string& name) {
  for (int i = 0; i < 5; ++i)
    if (name == kAnalyzerNames[i]) return static_cast<Analyzer>(i);
  throw ParseError("unknown analyzer '" + name + "'");
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  return Rng::stream(seed, trial)();
}

Graph sample_prefix(const EdgeSchedule& sched, Vertex n, std::uint64_t seed) {
  check_budget(sched, n);
  Rng rng(seed);
  std::vector<Pair> e;
  const std::uint64_t m = pair_count(n);
  for (std::uint64_t i = 0; i < m; ++i) {
    const Probability& p = sched.table[i].prob;
    const double u = rng.uniform();
    // Compare against the smaller side so values near 1 keep their precision.
    const bool edge = p.upper() ? !(u < p.small()) : u < p.small();
    if (edge) e.push_back(index_pair(i));
  }
  return Graph(n, std::move(e));
}

std::vector<Pair> deviation_report(const Graph& g, const EdgeSchedule& sched) {
  check_budget(sched, g.order());
  std::vector<Pair> out;
  const std::uint64_t m = pair_count(g.order());
  for (std::uint64_t i = 0; i < m; ++i) {
    const auto& x = sched.table[i];
    if (!x.planned) continue;
    const Pair p = index_pair(i);
    if (g.adjacent(p.a, p.b) != *x.planned) out.push_back(p);
  }
  return out;
}

std::map<std::string, Aggregate> aggregate_records(const std::vector<TrialRecord>& records,
                                                   const std::vector<Analyzer>& analyzers) {
  std::map<std::string, std::vector<double>> values;
  std::set<std::string> fractional;  // metrics without a histogram
  auto has = [&](Analyzer a) {
    return std::find(analyzers.begin(), analyzers.end(), a) != analyzers.end();
  };
  for (const auto& r : records) {
    add(values, "edges", static_cast<double>(r.edges));
    if (has(Analyzer::Deviations)) {
      add(values, "deviations", static_cast<double>(r.deviations));
      add(values, "late_deviations", static_cast<double>(r.late_deviations));
    }
    if (has(Analyzer::Universality)) add(values, "universality", r.universality);
    if (has(Analyzer::Witness)) add(values, "witness_fraction", r.witness_fraction);
    if (has(Analyzer::Components)) {
      std::size_t count = 0, largest = 0;
      for (const auto& [s, c] : r.component_sizes) {
        count += c;
        largest = std::max(largest, s);
      }
      add(values, "component_count", static_cast<double>(count));
      add(values, "largest_component", static_cast<double>(largest));
    }
  }
  // Census entries: mean count per size or degree, zero when a trial lacks it.
  auto census_means = [&](const std::string& prefix, auto member) {
    std::map<std::size_t, std::vector<double>> per;
    for (const auto& r : records)
      for (const auto& [k, c] : r.*member) per[k];
    for (auto& [k, v] : per) {
      for (const auto& r : records) {
        auto it = (r.*member).find(k);
        v.push_back(it == (r.*member).end() ? 0.0 : static_cast<double>(it->second));
      }
      values[prefix + std::to_string(k)] = v;
      fractional.insert(prefix + std::to_string(k));
    }
  };
  if (has(Analyzer::Components)) census_means("component_size:", &TrialRecord::component_sizes);
  if (has(Analyzer::Degrees)) census_means("degree:", &TrialRecord::degrees);

  std::map<std::string, Aggregate> out;
  for (const auto& [name, v] : values) {
    if (v.empty()) continue;
    Aggregate a;
    a.min = *std::min_element(v.begin(), v.end());
    a.max = *std::max_element(v.begin(), v.end());
    double sum = 0.0;
    for (double x : v) sum += x;
    a.mean = sum / static_cast<double>(v.size());
    const bool whole = name != "witness_fraction" && !fractional.count(name);
    if (whole)
      for (double x : v) ++a.histogram[static_cast<std::int64_t>(std::llround(x))];
    out[name] = std::move(a);
  }
  return out;
}

SampleReport trial_harness(const EdgeSchedule& sched, Vertex n, std::uint64_t trials,
                           const HarnessOptions& options, std::uint64_t seed) {
  if (trials < 1) throw PreconditionError("trial_harness needs trials >= 1");
  check_budget(sched, n);
  const auto opt = normalized(options);
  const auto ranks = plan_ranks(sched, n);
  std::vector<TrialRecord> records(trials);
  const auto count = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t t = 0; t < count; ++t) {
    records[static_cast<std::size_t>(t)] =
        run_trial(sched, n, static_cast<std::uint64_t>(t), opt, ranks, seed);
  }
  return finish(sched, n, trials, opt, seed, std::move(records));
}

SampleReport trial_harness_serial(const EdgeSchedule& sched, Vertex n, std::uint64_t trials,
                                  const HarnessOptions& options, std::uint64_t seed) {
  if (trials < 1) throw PreconditionError("trial_harness needs trials >= 1");
  check_budget(sched, n);
  const auto opt = normalized(options);
  const auto ranks = plan_ranks(sched, n);
  std::vector<TrialRecord> records;
  records.reserve(trials);
  for (std::uint64_t t = 0; t < trials; ++t) records.push_back(run_trial(sched, n, t, opt, ranks, seed));
  return finish(sched, n, trials, opt, seed, std::move(records));
}

std::pair<double, double> expected_deviations(const EdgeSchedule& sched, Vertex n) {
  check_budget(sched, n);
  double mean = 0.0, var = 0.0;
  for (std::uint64_t i = 0; i < pair_count(n); ++i) {
    const auto& x = sched.table[i];
    if (!x.planned) continue;
    const double d = *x.planned ? x.prob.complement() : x.prob.value();
    mean += d;
    var += d * (1.0 - d);
  }
  return {mean, var};
}

}  // namespace drawable

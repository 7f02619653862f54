#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "drawable/graph.hpp"
#include "drawable/schedule.hpp"

namespace drawable {

// One uniform per pair, consumed in colex order, so a longer prefix extends a
// shorter one drawn with the same seed.
Graph sample_prefix(const EdgeSchedule& sched, Vertex n, std::uint64_t seed);

// Planned pairs inside the graph's vertex range whose outcome differs from the plan.
std::vector<Pair> deviation_report(const Graph& g, const EdgeSchedule& sched);

enum class Analyzer { Deviations, Components, Degrees, Universality, Witness };
const char* analyzer_name(Analyzer a);
Analyzer parse_analyzer(const std::string& name);

struct TrialRecord {
  std::uint64_t trial = 0;
  std::size_t edges = 0;
  std::size_t deviations = 0;
  std::size_t late_deviations = 0;  // deviations on pairs with plan rank >= late_rank
  DegreeCensus component_sizes;
  DegreeCensus degrees;
  unsigned universality = 0;
  double witness_fraction = 0.0;
  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

struct Aggregate {
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::map<std::int64_t, std::size_t> histogram;  // integer-valued metrics only
  friend bool operator==(const Aggregate&, const Aggregate&) = default;
};

struct HarnessOptions {
  std::vector<Analyzer> analyzers;
  unsigned universality_max = 3;
  unsigned witness_size = 2;
  // Plan rank of a pair: its position among planned pairs of the same bit, from 1.
  std::uint64_t late_rank = 10;
};

struct SampleReport {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  Vertex n = 0;
  std::vector<Analyzer> analyzers;  // sorted, duplicate free
  std::string schedule_digest;
  std::vector<TrialRecord> records;
  std::map<std::string, Aggregate> aggregates;
  std::string digest;
};

std::map<std::string, Aggregate> aggregate_records(const std::vector<TrialRecord>& records,
                                                   const std::vector<Analyzer>& analyzers);

// Trial t samples with seed derived from (seed, t); trials run in parallel and
// are merged in trial order.
SampleReport trial_harness(const EdgeSchedule& sched, Vertex n, std::uint64_t trials,
                           const HarnessOptions& options, std::uint64_t seed);
SampleReport trial_harness_serial(const EdgeSchedule& sched, Vertex n, std::uint64_t trials,
                                  const HarnessOptions& options, std::uint64_t seed);

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

// Expected deviation count and its variance over the planned pairs of the
// first n vertices (Poisson-binomial).
std::pair<double, double> expected_deviations(const EdgeSchedule& sched, Vertex n);

}  // namespace drawable

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "drawable/graph.hpp"
#include "drawable/probability.hpp"

namespace drawable {

struct Assignment {
  Probability prob = Probability::from_value(0.5);
  std::optional<std::uint64_t> source;  // index into the source sequence
  std::optional<bool> planned;          // empty for free pairs
  std::uint8_t region = 0;              // index into EdgeSchedule::regions
  friend bool operator==(const Assignment&, const Assignment&) = default;
};

// A group of vertices carrying a planned graph. Its realization probability is
// the product over planned pairs inside the block (free pairs excluded).
struct ScheduleBlock {
  std::string family;
  VertexSet vertices;
  Graph plan;  // on local indices 0..#vertices-1
  friend bool operator==(const ScheduleBlock&, const ScheduleBlock&) = default;
};

// Probability assignment to every pair below `vertex_budget`, stored in colex
// order, together with its audit: planned bits, regions, blocks, index classes
// and the budget report.
//
// Budget report keys:
//   planned_zero / planned_one     sum of p over planned-0 pairs / of 1-p over planned-1
//   region:<r>:p / region:<r>:q    sums of p and 1-p over a region
//   family:<f>                     sum of block realization probabilities
//   family_residual:<f>            sum of 1 - realization
//   class:<c>:p / class:<c>:q      sums over pairs whose source lies in an index class
struct EdgeSchedule {
  std::string builder;
  std::string source;  // descriptor text; empty for explicit probabilities
  Vertex vertex_budget = 0;
  std::vector<Assignment> table;
  std::vector<std::string> regions;
  std::vector<ScheduleBlock> blocks;
  std::map<std::string, std::vector<std::uint64_t>> index_classes;
  std::map<std::string, std::string> params;
  std::map<std::string, double> budget;
  std::vector<std::string> shortfalls;

  const Assignment& at(Vertex a, Vertex b) const;
  const Assignment& at(std::uint64_t index) const { return table.at(index); }
  std::uint64_t pair_total() const { return table.size(); }
  bool has_plan() const;
  // Planned-edge graph on the first n vertices (free pairs absent).
  Graph planned_graph(Vertex n) const;
  double block_log_realization(const ScheduleBlock& b) const;
  std::uint8_t region_id(const std::string& name);

  friend bool operator==(const EdgeSchedule&, const EdgeSchedule&) = default;
};

std::map<std::string, double> compute_budget(const EdgeSchedule& s);

// Throws PreconditionError when the table is not total on the budget, a source
// index repeats, or a block refers to vertices outside the budget.
void validate_schedule(const EdgeSchedule& s);

}  // namespace drawable

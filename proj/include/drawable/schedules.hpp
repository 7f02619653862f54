#pragma once

#include <cstdint>
#include <vector>

#include "drawable/graph.hpp"
#include "drawable/oracle.hpp"
#include "drawable/probseq.hpp"
#include "drawable/schedule.hpp"

namespace drawable {

struct ScheduleConfig {
  double epsilon = 0.01;             // summability budgets of the explicit constructions
  double divergence_target = 2.0;    // per-family block sums
  double summable_budget = 1.0;      // budget handed to split_summable
  std::uint64_t truncation = 0;      // source indices considered; 0 picks 8 x pair count
  bool strict = true;                // unmet targets throw instead of landing in shortfalls
};

// Pair with colex index i gets p_i.
EdgeSchedule identity_schedule(const ProbSeq& seq, Vertex vertex_budget);

// The n-th planned edge gets 1 - 2^-n and the n-th planned non-edge 2^-n, n >= 1.
EdgeSchedule replicate_schedule(const GraphOracle& target, Vertex vertex_budget);

EdgeSchedule ufin_schedule(const ProbSeq& seq, Vertex vertex_budget, unsigned catalog_size,
                           const ScheduleConfig& cfg = {});

// Vertex 0 is the suspension vertex; the rest follows the ufin layout.
EdgeSchedule suspended_schedule(const ProbSeq& seq, Vertex vertex_budget, unsigned catalog_size,
                                const ScheduleConfig& cfg = {});

EdgeSchedule closure_schedule(const std::vector<Graph>& family, const ProbSeq& seq,
                              Vertex vertex_budget, const ScheduleConfig& cfg = {});

// Descriptor whose indices feed the G part of sum_with_fixed_schedule.
ProbSeq sum_g_descriptor(const ProbSeq& seq);
EdgeSchedule sum_with_fixed_schedule(const EdgeSchedule& g_sched, const Graph& h,
                                     const ProbSeq& seq, const ScheduleConfig& cfg = {});

EdgeSchedule star_schedule(const ProbSeq& seq, Vertex star_count, Vertex vertex_budget,
                           const ScheduleConfig& cfg = {});

EdgeSchedule theta_schedule(unsigned depth, Vertex vertex_budget, const ScheduleConfig& cfg = {});

// Vertex layout shared by ufin_schedule and suspended_schedule: round-robin of
// a two-vertex A0 block followed by one block per connected catalog graph.
struct UfinLayout {
  std::vector<Graph> catalog;
  std::vector<ScheduleBlock> blocks;  // families "A0" and "G<i>"
  std::vector<std::size_t> round_of;  // round index per block
  Vertex covered = 0;                 // vertices inside complete blocks
};
UfinLayout ufin_layout(Vertex vertex_count, unsigned catalog_size, Vertex shift = 0);

}  // namespace drawable

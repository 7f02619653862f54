#include "drawable/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "drawable/error.hpp"

namespace drawable {

const Assignment& EdgeSchedule::at(Vertex a, Vertex b) const {
  const std::uint64_t i = pair_index(a, b);
  if (i >= table.size()) {
    throw PreconditionError("pair {" + std::to_string(a) + "," + std::to_string(b) +
                            "} beyond schedule budget " + std::to_string(vertex_budget));
  }
  return table[i];
}

bool EdgeSchedule::has_plan() const {
  return std::any_of(table.begin(), table.end(), [](const Assignment& x) { return x.planned; });
}

Graph EdgeSchedule::planned_graph(Vertex n) const {
  std::vector<Pair> e;
  for (std::uint64_t i = 0; i < pair_count(n); ++i) {
    if (table.at(i).planned.value_or(false)) e.push_back(index_pair(i));
  }
  return Graph(n, std::move(e));
}

double EdgeSchedule::block_log_realization(const ScheduleBlock& b) const {
  double lp = 0.0;
  for (std::size_t j = 1; j < b.vertices.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      const Assignment& x = at(b.vertices[i], b.vertices[j]);
      if (x.planned) lp += x.prob.log_of(*x.planned);
    }
  }
  return lp;
}

std::uint8_t EdgeSchedule::region_id(const std::string& name) {
  auto it = std::find(regions.begin(), regions.end(), name);
  if (it != regions.end()) return static_cast<std::uint8_t>(it - regions.begin());
  if (regions.size() >= 255) throw PreconditionError("too many schedule regions");
  regions.push_back(name);
  return static_cast<std::uint8_t>(regions.size() - 1);
}

std::map<std::string, double> compute_budget(const EdgeSchedule& s) {
  std::map<std::string, double> out;
  out["planned_zero"] = 0.0;
  out["planned_one"] = 0.0;
  std::vector<double> rp(s.regions.size(), 0.0), rq(s.regions.size(), 0.0);
  for (const auto& x : s.table) {
    if (x.planned) {
      if (*x.planned) out["planned_one"] += x.prob.complement();
      else out["planned_zero"] += x.prob.value();
    }
    rp.at(x.region) += x.prob.value();
    rq.at(x.region) += x.prob.complement();
  }
  for (std::size_t r = 0; r < s.regions.size(); ++r) {
    out["region:" + s.regions[r] + ":p"] = rp[r];
    out["region:" + s.regions[r] + ":q"] = rq[r];
  }
  for (const auto& b : s.blocks) {
    const double lr = s.block_log_realization(b);
    out["family:" + b.family] += std::exp(lr);
    out["family_residual:" + b.family] += -std::expm1(lr);
  }
  if (!s.index_classes.empty()) {
    std::map<std::uint64_t, const Assignment*> by_source;
    for (const auto& x : s.table)
      if (x.source) by_source[*x.source] = &x;
    for (const auto& [name, indices] : s.index_classes) {
      double p = 0.0, q = 0.0;
      for (auto idx : indices) {
        auto it = by_source.find(idx);
        if (it == by_source.end()) continue;
        p += it->second->prob.value();
        q += it->second->prob.complement();
      }
      out["class:" + name + ":p"] = p;
      out["class:" + name + ":q"] = q;
    }
  }
  return out;
}

void validate_schedule(const EdgeSchedule& s) {
  if (s.table.size() != pair_count(s.vertex_budget)) {
    throw PreconditionError("schedule table does not cover every pair below the budget");
  }
  std::unordered_set<std::uint64_t> seen;
  for (const auto& x : s.table) {
    if (x.source && !seen.insert(*x.source).second) {
      throw PreconditionError("source index " + std::to_string(*x.source) + " used twice");
    }
    if (x.region >= s.regions.size()) throw PreconditionError("assignment region out of range");
  }
  for (const auto& b : s.blocks) {
    if (b.plan.order() != b.vertices.size()) throw PreconditionError("block plan size mismatch");
    for (Vertex v : b.vertices)
      if (v >= s.vertex_budget) throw PreconditionError("block vertex beyond budget");
  }
}

}  // namespace drawable

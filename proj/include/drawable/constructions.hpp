#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "drawable/graph.hpp"
#include "drawable/oracle.hpp"

namespace drawable {

// Isolated union of the first `component_budget` entries of the round-robin over
// connected catalog graphs of at most `catalog_size` vertices.
Graph ufin_prefix(std::size_t component_budget, unsigned catalog_size);

struct ClosureBudget {
  std::size_t max_members = 64;
  Vertex max_vertices = 4;
};

struct ClosureStep {
  enum class Op { Seed, Union, Flip };
  Op op = Op::Seed;
  std::size_t a = 0;  // Seed: position in K0; Union/Flip: member index
  std::size_t b = 0;  // Union: second member
  Pair flip;          // Flip: pair toggled in member a
};

// Members are deduplicated by canonical_key; graphs up to 8 vertices are stored
// in canonical form. The log lists exactly the steps that produced a member.
struct ClosedFamilyApprox {
  std::vector<Graph> members;
  std::vector<std::string> keys;
  std::vector<ClosureStep> log;
  ClosureBudget budget;
  bool exhausted = false;  // member budget reached before the closure settled
};

ClosedFamilyApprox closure(const std::vector<Graph>& k0, const ClosureBudget& budget);
std::vector<Graph> replay_closure(const std::vector<Graph>& k0,
                                  const std::vector<ClosureStep>& log);

// Isolated union cycling the family members for `component_budget` components.
Graph un_prefix(const ClosedFamilyApprox& family, std::size_t component_budget);

// Graph X such that every k-colouring of its vertices has a colour class
// containing an induced copy of h.
Graph ramsey_graph(const Graph& h, unsigned k, Vertex size_cap = 100000);

struct RamseyVerdict {
  bool holds = true;
  std::vector<unsigned> counterexample;  // colour per vertex, lexicographically least
  std::uint64_t colourings = 0;
};
RamseyVerdict verify_ramsey(const Graph& x, const Graph& h, unsigned k);
RamseyVerdict verify_ramsey_serial(const Graph& x, const Graph& h, unsigned k);

std::optional<std::size_t> partition_find_universal(const Graph& g,
                                                    const std::vector<VertexSet>& parts,
                                                    unsigned s);

enum class BasisSide { UFin, Complement };
const char* basis_side_name(BasisSide s);

struct BasisResult {
  std::string f;  // '0'/'1' per decided vertex
  BasisSide side = BasisSide::UFin;
  std::vector<VertexSet> witnesses;
  std::vector<Embedding> embeddings;  // target vertex i -> witnesses[m] member
  std::size_t surviving = 0;          // size of U_n when the search stopped
  bool complete = false;              // every target received a witness
};
BasisResult basis_extract(const GraphOracle& oracle, Vertex budget,
                          const std::vector<Graph>& targets);

using DegreeDemand = std::map<std::size_t, std::size_t>;

struct CaterpillarTree {
  Graph tree;
  std::array<Vertex, 2> spine_ends{};
  DegreeCensus intended;  // census with both spine ends counted as interior vertices
};
CaterpillarTree caterpillar_tree(const DegreeDemand& demand, Vertex truncation);

Graph star_of_stars(const DegreeDemand& demand, Vertex truncation);

// V_n and V'_n with padded sizes 7, 8, 16, 32, ...
Vertex v_tree_size(unsigned n);
Graph v_tree(unsigned n);
Graph v_tree_prime(unsigned n);
Graph v_tree_unpadded(unsigned n);
// Pair that V'_n adds to V_n.
Pair v_tree_extra_pair(unsigned n);

struct ThetaType {
  std::vector<bool> theta;  // theta[i] describes n = k + 1 + i
  unsigned k = 0;
  unsigned max_n = 0;
  Graph leftover;
};
ThetaType theta_decompose(const Graph& g, unsigned max_n);
// Isolated union of V_n or V'_n for n = 1..theta.size().
Graph theta_graph(const std::vector<bool>& theta);

struct DsRecovery {
  std::size_t index = 0;
  std::vector<std::size_t> distances;
  DegreeCensus modal;  // most frequent census among components of at least half the largest size
};
// L1 distance between each candidate's census and the modal component census.
DsRecovery ds_recovery(const Graph& g, const std::vector<Graph>& candidates);

std::optional<std::size_t> indivisibility_check(const Graph& g,
                                                const std::array<VertexSet, 2>& parts,
                                                const std::vector<Graph>& targets);

}  // namespace drawable

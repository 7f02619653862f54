#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "drawable/graph.hpp"
#include "drawable/probseq.hpp"
#include "drawable/rng.hpp"
#include "drawable/schedule.hpp"

namespace drawable {

// Coordinate -> required bit.
using CylinderConstraint = std::map<std::uint64_t, bool>;

double cylinder_log_prob(const ProbSeq& seq, const CylinderConstraint& c);
double cylinder_prob(const ProbSeq& seq, const CylinderConstraint& c);

// Truncated Bartoszynski cover: level n holds a sorted, duplicate-free set of
// length-n bit strings over '0'/'1'.
class NullCover {
 public:
  void insert(const std::string& bits);
  const std::map<std::size_t, std::vector<std::string>>& levels() const { return levels_; }
  bool contains(const std::string& bits) const;
  std::size_t truncation() const;  // longest level present, 0 when empty
  std::size_t member_count() const;

  // One "n bitstring" line per member, levels ascending.
  std::string text() const;
  static NullCover parse(const std::string& text);

  friend bool operator==(const NullCover&, const NullCover&) = default;

 private:
  std::map<std::size_t, std::vector<std::string>> levels_;
};

double string_log_mass(const ProbSeq& seq, const std::string& bits);
double cover_mass(const NullCover& cover, const ProbSeq& seq);

struct Translation {
  NullCover cover;
  double bound_factor = 1.0;  // C = prod max(p,1-p)/min(p,1-p) over the support
};
// Support of the rational point: coordinates carrying a 1.
Translation translate_cover(const NullCover& cover, const std::vector<std::uint64_t>& support,
                            const ProbSeq& seq);

struct TailClosure {
  NullCover cover;
  double mass_bound = 0.0;
};
TailClosure tail_closure(const NullCover& cover, unsigned s, const ProbSeq& seq);

std::size_t hits(const NullCover& cover, const std::string& x, std::size_t N);

enum class Verdict { Equivalent, Singular, Undetermined };
const char* verdict_name(Verdict v);

struct KakutaniReport {
  Verdict verdict = Verdict::Undetermined;
  double partial_sum = 0.0;
  std::uint64_t N = 0;
};
// Hellinger-type series S_N and the symbolic equivalence/singularity decision.
double hellinger_partial(const ProbSeq& p, const ProbSeq& q, std::uint64_t N);
Verdict kakutani_symbolic(const ProbSeq& p, const ProbSeq& q);
KakutaniReport kakutani(const ProbSeq& p, const ProbSeq& q, std::uint64_t N);

double empirical_density(const std::string& x, std::size_t n);

// Bits x_0..x_{len-1} drawn coordinate-wise from the sequence.
std::string sample_bits(const ProbSeq& seq, std::size_t len, Rng& rng);

// Empirical frequency of the cylinder over `samples` draws; samples are split
// into fixed chunks with one RNG stream each, so both versions agree exactly.
double cylinder_frequency(const ProbSeq& seq, const CylinderConstraint& c,
                          std::uint64_t samples, std::uint64_t seed);
double cylinder_frequency_serial(const ProbSeq& seq, const CylinderConstraint& c,
                                 std::uint64_t samples, std::uint64_t seed);

double witness_sum(const EdgeSchedule& sched, const VertexSet& a, const VertexSet& b,
                   Vertex N);

}  // namespace drawable

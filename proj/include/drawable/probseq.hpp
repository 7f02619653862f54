#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "drawable/probability.hpp"

namespace drawable {

// A numeric parameter that remembers how it was written, so `1/3` prints back
// as `1/3` and decimals print in shortest round-trip form.
struct Param {
  double value = 0.0;
  std::string text;

  static Param of(double v);
  static Param rational(std::int64_t num, std::int64_t den);
  static Param parse(std::string_view text);
  friend bool operator==(const Param& a, const Param& b) { return a.text == b.text; }
};

// Symbolic description of a sequence (p_n) in (0,1)^omega.
//   Constant(c)          p_n = c
//   InverseLog(a)        p_n = 1/ln(n+a), a > e
//   Geometric(r)         p_n = r^(n+1)
//   OneMinus(d)          p_n = 1 - d_n
//   Interleave(d0, d1)   p_2n = d0_n, p_2n+1 = d1_n
//   Table(prefix, tail)  explicit prefix; tail evaluated at the absolute index
//   Subsequence(d, s, o) p_n = d_{s n + o}
class ProbSeq {
 public:
  enum class Family { Constant, InverseLog, Geometric, OneMinus, Interleave, Table, Subsequence };

  static ProbSeq constant(Param c);
  static ProbSeq inverse_log(Param a);
  static ProbSeq geometric(Param r);
  static ProbSeq one_minus(ProbSeq inner);
  static ProbSeq interleave(ProbSeq even, ProbSeq odd);
  static ProbSeq table(std::vector<Param> prefix, std::optional<ProbSeq> tail);
  static ProbSeq subsequence(ProbSeq inner, std::uint64_t stride, std::uint64_t offset);

  // Grammar: const:c | invlog:a | geom:r | 1-(seq) | interleave(seq,seq)
  //          | table[v,...] | table[v,...;seq] | sub(seq,stride,offset)
  static ProbSeq parse(std::string_view text);
  std::string text() const;

  Family family() const;
  const Param& param() const;                 // Constant, InverseLog, Geometric
  const ProbSeq& child(std::size_t i) const;  // OneMinus/Subsequence: 0; Interleave: 0, 1
  const std::vector<Param>& prefix() const;   // Table
  const ProbSeq* tail() const;                // Table; null when absent
  std::uint64_t stride() const;               // Subsequence
  std::uint64_t offset() const;               // Subsequence

  Probability eval(std::uint64_t n) const;

  friend bool operator==(const ProbSeq& a, const ProbSeq& b) { return a.text() == b.text(); }

  struct Node;

 private:
  explicit ProbSeq(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

enum class SeqFlag : unsigned {
  BC = 1u << 0,
  BC0 = 1u << 1,
  BC1 = 1u << 2,
  BC_M0 = 1u << 3,
  BC_M1 = 1u << 4,
  Sep = 1u << 5,
  Acc01 = 1u << 6,
  SummableP = 1u << 7,
  SummableCoP = 1u << 8,
  Unknown = 1u << 9,
};

class SeqClass {
 public:
  SeqClass() = default;
  // Adds the implied flags (BC0 => BC, BC_M0; BC1 => BC, BC_M1) and rejects
  // SummableP together with BC.
  static SeqClass from_bits(unsigned bits);

  bool has(SeqFlag f) const { return (bits_ & static_cast<unsigned>(f)) != 0; }
  unsigned bits() const { return bits_; }
  std::vector<std::string> names() const;
  friend bool operator==(const SeqClass&, const SeqClass&) = default;

 private:
  unsigned bits_ = 0;
};

const char* flag_name(SeqFlag f);

SeqClass classify(const ProbSeq& seq);

// (sum_{n<N} p_n^k, sum_{n<N} (1-p_n)^k), accumulated in index order.
std::pair<double, double> partial_sums(const ProbSeq& seq, unsigned k, std::uint64_t N);

// Closed-form sum of p_n (or of 1-p_n when `complement`) when the sequence is
// summable on that side and the form is supported.
std::optional<double> symbolic_sum(const ProbSeq& seq, bool complement = false);

// Index set I with sum_{n in I} p_n <= budget taken by the geometric-threshold rule.
std::vector<std::uint64_t> split_summable(const ProbSeq& seq, double budget, std::uint64_t N);

struct IndexBlock {
  std::vector<std::uint64_t> indices;  // k edge slots, then k non-edge slots
  double log_success = 0.0;
  double success = 0.0;
};

struct BlockPlan {
  unsigned k = 0;
  std::vector<IndexBlock> blocks;
  double running_sum = 0.0;
};

BlockPlan plan_blocks(const ProbSeq& seq, unsigned k, double target_sum, std::uint64_t N,
                      const std::vector<std::uint64_t>& reserved = {});

// Unused-index bookkeeping over {0..N-1} shared by the block planner and the
// schedule builders. Orders are by probability with ties to the lower index.
class IndexPool {
 public:
  IndexPool(const ProbSeq& seq, std::uint64_t N);

  std::uint64_t size() const { return N_; }
  std::uint64_t available() const { return available_; }
  bool used(std::uint64_t i) const { return used_[i] != 0; }
  const Probability& prob(std::uint64_t i) const { return probs_[i]; }

  void take(std::uint64_t i);
  std::optional<std::uint64_t> take_smallest();
  std::optional<std::uint64_t> take_largest();
  std::optional<std::uint64_t> take_lowest();

 private:
  std::uint64_t N_;
  std::uint64_t available_;
  std::vector<Probability> probs_;
  std::vector<std::uint64_t> ascending_;
  std::vector<std::uint64_t> descending_;
  std::vector<char> used_;
  std::size_t lo_ = 0, hi_ = 0, next_ = 0;
};

}  // namespace drawable

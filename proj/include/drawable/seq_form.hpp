#pragma once

#include <cstdint>
#include <memory>

#include "drawable/probseq.hpp"

namespace drawable {

// Tail normal form of a descriptor: Table prefixes dropped, OneMinus pushed to
// the leaves, Subsequence folded into leaf strides. Leaves:
//   Constant     p_n = c
//   InverseLog   p_n = 1/ln(stride n + shift)
//   Geometric    p_n = r^(stride n + offset + 1)
// each possibly flipped to 1 - p_n. Unknown marks a Table without tail.
struct SeqForm {
  enum class Kind { Constant, InverseLog, Geometric, Interleave, Unknown };

  Kind kind = Kind::Unknown;
  bool flipped = false;
  Probability constant = Probability::from_value(0.5);
  double base = 0.0;  // InverseLog shift or Geometric ratio
  std::uint64_t stride = 1;
  std::uint64_t offset = 0;
  std::shared_ptr<const SeqForm> even, odd;
};

using SeqFormPtr = std::shared_ptr<const SeqForm>;

SeqFormPtr tail_form(const ProbSeq& seq);
SeqFormPtr sub_form(const SeqFormPtr& f, std::uint64_t stride, std::uint64_t offset);
SeqFormPtr flip_form(const SeqFormPtr& f);

// Limit of the leaf sequence; meaningless for Interleave and Unknown.
double leaf_limit(const SeqForm& f);

bool same_form(const SeqForm& a, const SeqForm& b);

}  // namespace drawable

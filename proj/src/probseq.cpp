#include "drawable/probseq.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <numbers>

#include "drawable/error.hpp"
#include "drawable/seq_form.hpp"

namespace drawable {

struct ProbSeq::Node {
  Family family = Family::Constant;
  Param param;
  std::vector<ProbSeq> children;
  std::vector<Param> prefix;
  std::vector<Probability> prefix_probs;
  bool has_tail = false;
  std::uint64_t stride = 1;
  std::uint64_t offset = 0;
  Probability constant = Probability::from_value(0.5);
  double log_r = 0.0;
};

ProbSeq ProbSeq::constant(Param c) {
  auto node = std::make_shared<Node>();
  node->family = Family::Constant;
  node->constant = Probability::from_value(c.value);
  node->param = std::move(c);
  return ProbSeq(std::move(node));
}

ProbSeq ProbSeq::inverse_log(Param a) {
  if (!(std::log(a.value) > 1.0) || !std::isfinite(a.value)) {
    throw PreconditionError("invlog parameter must exceed e so that p_0 < 1, got " + a.text);
  }
  auto node = std::make_shared<Node>();
  node->family = Family::InverseLog;
  node->param = std::move(a);
  return ProbSeq(std::move(node));
}

ProbSeq ProbSeq::geometric(Param r) {
  if (!(r.value > 0.0 && r.value < 1.0)) {
    throw PreconditionError("geom ratio must lie in (0,1), got " + r.text);
  }
  auto node = std::make_shared<Node>();
  node->family = Family::Geometric;
  node->log_r = std::log(r.value);
  node->param = std::move(r);
  return ProbSeq(std::move(node));
}

ProbSeq ProbSeq::one_minus(ProbSeq inner) {
  auto node = std::make_shared<Node>();
  node->family = Family::OneMinus;
  node->children.push_back(std::move(inner));
  return ProbSeq(std::move(node));
}

ProbSeq ProbSeq::interleave(ProbSeq even, ProbSeq odd) {
  auto node = std::make_shared<Node>();
  node->family = Family::Interleave;
  node->children.push_back(std::move(even));
  node->children.push_back(std::move(odd));
  return ProbSeq(std::move(node));
}

ProbSeq ProbSeq::table(std::vector<Param> prefix, std::optional<ProbSeq> tail) {
  if (prefix.empty() && !tail) throw PreconditionError("table needs a prefix or a tail");
  auto node = std::make_shared<Node>();
  node->family = Family::Table;
  for (const auto& v : prefix) node->prefix_probs.push_back(Probability::from_value(v.value));
  node->prefix = std::move(prefix);
  if (tail) {
    node->has_tail = true;
    node->children.push_back(std::move(*tail));
  }
  return ProbSeq(std::move(node));
}

ProbSeq ProbSeq::subsequence(ProbSeq inner, std::uint64_t stride, std::uint64_t offset) {
  if (stride == 0) throw PreconditionError("subsequence stride must be positive");
  auto node = std::make_shared<Node>();
  node->family = Family::Subsequence;
  node->stride = stride;
  node->offset = offset;
  node->children.push_back(std::move(inner));
  return ProbSeq(std::move(node));
}

ProbSeq::Family ProbSeq::family() const { return node_->family; }
const Param& ProbSeq::param() const { return node_->param; }
const ProbSeq& ProbSeq::child(std::size_t i) const { return node_->children.at(i); }
const std::vector<Param>& ProbSeq::prefix() const { return node_->prefix; }
const ProbSeq* ProbSeq::tail() const {
  return node_->has_tail ? &node_->children.front() : nullptr;
}
std::uint64_t ProbSeq::stride() const { return node_->stride; }
std::uint64_t ProbSeq::offset() const { return node_->offset; }

Probability ProbSeq::eval(std::uint64_t n) const {
  const Node& nd = *node_;
  switch (nd.family) {
    case Family::Constant:
      return nd.constant;
    case Family::InverseLog:
      return Probability::from_value(1.0 / std::log(static_cast<double>(n) + nd.param.value));
    case Family::Geometric: {
      const double e = static_cast<double>(n) + 1.0;
      const double lp = e * nd.log_r;
      if (lp > -700.0) return Probability::from_value(std::pow(nd.param.value, e));
      return Probability::from_log(lp);
    }
    case Family::OneMinus:
      return nd.children[0].eval(n).flipped();
    case Family::Interleave:
      return nd.children[n % 2].eval(n / 2);
    case Family::Table:
      if (n < nd.prefix_probs.size()) return nd.prefix_probs[n];
      if (!nd.has_tail) {
        throw PreconditionError("table without tail evaluated at index " + std::to_string(n));
      }
      return nd.children[0].eval(n);
    case Family::Subsequence: {
      std::uint64_t idx = 0;
      if (__builtin_mul_overflow(nd.stride, n, &idx) ||
          __builtin_add_overflow(idx, nd.offset, &idx)) {
        throw PreconditionError("subsequence index overflow");
      }
      return nd.children[0].eval(idx);
    }
  }
  return nd.constant;
}

// ---------------------------------------------------------------------------
// Tail normal form

namespace {

SeqFormPtr make_leaf(SeqForm::Kind kind) {
  auto f = std::make_shared<SeqForm>();
  f->kind = kind;
  return f;
}

SeqFormPtr make_interleave(SeqFormPtr even, SeqFormPtr odd) {
  auto f = std::make_shared<SeqForm>();
  f->kind = SeqForm::Kind::Interleave;
  f->even = std::move(even);
  f->odd = std::move(odd);
  return f;
}

}  // namespace

SeqFormPtr flip_form(const SeqFormPtr& f) {
  auto g = std::make_shared<SeqForm>(*f);
  switch (f->kind) {
    case SeqForm::Kind::Unknown:
      return f;
    case SeqForm::Kind::Constant:
      g->constant = f->constant.flipped();
      return g;
    case SeqForm::Kind::Interleave:
      g->even = flip_form(f->even);
      g->odd = flip_form(f->odd);
      return g;
    default:
      g->flipped = !f->flipped;
      return g;
  }
}

SeqFormPtr sub_form(const SeqFormPtr& f, std::uint64_t s, std::uint64_t o) {
  if (s == 1 && o == 0) return f;
  switch (f->kind) {
    case SeqForm::Kind::Unknown:
    case SeqForm::Kind::Constant:
      return f;
    case SeqForm::Kind::InverseLog: {
      auto g = std::make_shared<SeqForm>(*f);
      g->base = f->base + static_cast<double>(f->stride) * static_cast<double>(o);
      g->stride = f->stride * s;
      return g;
    }
    case SeqForm::Kind::Geometric: {
      auto g = std::make_shared<SeqForm>(*f);
      g->offset = f->stride * o + f->offset;
      g->stride = f->stride * s;
      return g;
    }
    case SeqForm::Kind::Interleave:
      if (s % 2 == 0) {
        return o % 2 == 0 ? sub_form(f->even, s / 2, o / 2) : sub_form(f->odd, s / 2, (o - 1) / 2);
      }
      if (o % 2 == 0) {
        return make_interleave(sub_form(f->even, s, o / 2), sub_form(f->odd, s, (s + o - 1) / 2));
      }
      return make_interleave(sub_form(f->odd, s, (o - 1) / 2), sub_form(f->even, s, (s + o) / 2));
  }
  return f;
}

SeqFormPtr tail_form(const ProbSeq& seq) {
  using F = ProbSeq::Family;
  switch (seq.family()) {
    case F::Constant: {
      auto f = std::make_shared<SeqForm>();
      f->kind = SeqForm::Kind::Constant;
      f->constant = seq.eval(0);
      return f;
    }
    case F::InverseLog: {
      auto f = std::make_shared<SeqForm>();
      f->kind = SeqForm::Kind::InverseLog;
      f->base = seq.param().value;
      return f;
    }
    case F::Geometric: {
      auto f = std::make_shared<SeqForm>();
      f->kind = SeqForm::Kind::Geometric;
      f->base = seq.param().value;
      return f;
    }
    case F::OneMinus:
      return flip_form(tail_form(seq.child(0)));
    case F::Interleave:
      return make_interleave(tail_form(seq.child(0)), tail_form(seq.child(1)));
    case F::Table:
      return seq.tail() ? tail_form(*seq.tail()) : make_leaf(SeqForm::Kind::Unknown);
    case F::Subsequence:
      return sub_form(tail_form(seq.child(0)), seq.stride(), seq.offset());
  }
  return make_leaf(SeqForm::Kind::Unknown);
}

double leaf_limit(const SeqForm& f) {
  switch (f.kind) {
    case SeqForm::Kind::Constant:
      return f.constant.value();
    case SeqForm::Kind::InverseLog:
    case SeqForm::Kind::Geometric:
      return f.flipped ? 1.0 : 0.0;
    default:
      return std::numeric_limits<double>::quiet_NaN();
  }
}

bool same_form(const SeqForm& a, const SeqForm& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case SeqForm::Kind::Unknown:
      return false;
    case SeqForm::Kind::Constant:
      return a.constant == b.constant;
    case SeqForm::Kind::Interleave:
      return same_form(*a.even, *b.even) && same_form(*a.odd, *b.odd);
    case SeqForm::Kind::InverseLog:
      return a.flipped == b.flipped && a.stride == b.stride && a.base == b.base;
    case SeqForm::Kind::Geometric:
      return a.flipped == b.flipped && a.stride == b.stride && a.offset == b.offset &&
             a.base == b.base;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Classification

namespace {

struct Traits {
  bool known = true;
  bool div_p = false, div_q = false;  // sum p^k (resp. (1-p)^k) infinite for all k
  bool sum_p = false, sum_q = false;
  bool acc0 = false, acc1 = false;    // some subsequence tends to 0 (resp. 1)
  bool lim0 = false, lim1 = false;
  bool sep0 = false, sep1 = false;    // bounded away from 0 (resp. 1)

  Traits flipped() const {
    Traits t = *this;
    std::swap(t.div_p, t.div_q);
    std::swap(t.sum_p, t.sum_q);
    std::swap(t.acc0, t.acc1);
    std::swap(t.lim0, t.lim1);
    std::swap(t.sep0, t.sep1);
    return t;
  }
};

Traits traits_of(const SeqForm& f) {
  Traits t;
  switch (f.kind) {
    case SeqForm::Kind::Unknown:
      t.known = false;
      return t;
    case SeqForm::Kind::Constant:
      t.div_p = t.div_q = t.sep0 = t.sep1 = true;
      return t;
    case SeqForm::Kind::InverseLog:
      t.div_p = t.div_q = t.acc0 = t.lim0 = t.sep1 = true;
      return f.flipped ? t.flipped() : t;
    case SeqForm::Kind::Geometric:
      t.sum_p = t.div_q = t.acc0 = t.lim0 = t.sep1 = true;
      return f.flipped ? t.flipped() : t;
    case SeqForm::Kind::Interleave: {
      const Traits a = traits_of(*f.even);
      const Traits b = traits_of(*f.odd);
      t.known = a.known && b.known;
      t.div_p = a.div_p || b.div_p;
      t.div_q = a.div_q || b.div_q;
      t.sum_p = a.sum_p && b.sum_p;
      t.sum_q = a.sum_q && b.sum_q;
      t.acc0 = a.acc0 || b.acc0;
      t.acc1 = a.acc1 || b.acc1;
      t.lim0 = a.lim0 && b.lim0;
      t.lim1 = a.lim1 && b.lim1;
      t.sep0 = a.sep0 && b.sep0;
      t.sep1 = a.sep1 && b.sep1;
      return t;
    }
  }
  return t;
}

constexpr unsigned bit(SeqFlag f) { return static_cast<unsigned>(f); }

}  // namespace

const char* flag_name(SeqFlag f) {
  switch (f) {
    case SeqFlag::BC: return "BC";
    case SeqFlag::BC0: return "BC0";
    case SeqFlag::BC1: return "BC1";
    case SeqFlag::BC_M0: return "BC_M0";
    case SeqFlag::BC_M1: return "BC_M1";
    case SeqFlag::Sep: return "Sep";
    case SeqFlag::Acc01: return "Acc01";
    case SeqFlag::SummableP: return "SummableP";
    case SeqFlag::SummableCoP: return "SummableCoP";
    case SeqFlag::Unknown: return "Unknown";
  }
  return "?";
}

SeqClass SeqClass::from_bits(unsigned bits) {
  if (bits & bit(SeqFlag::BC0)) bits |= bit(SeqFlag::BC) | bit(SeqFlag::BC_M0);
  if (bits & bit(SeqFlag::BC1)) bits |= bit(SeqFlag::BC) | bit(SeqFlag::BC_M1);
  if ((bits & bit(SeqFlag::SummableP)) && (bits & bit(SeqFlag::BC))) {
    throw PreconditionError("SummableP and BC are mutually exclusive");
  }
  SeqClass c;
  c.bits_ = bits;
  return c;
}

std::vector<std::string> SeqClass::names() const {
  std::vector<std::string> out;
  for (unsigned b = 1; b <= bit(SeqFlag::Unknown); b <<= 1) {
    if (bits_ & b) out.emplace_back(flag_name(static_cast<SeqFlag>(b)));
  }
  return out;
}

SeqClass classify(const ProbSeq& seq) {
  const Traits t = traits_of(*tail_form(seq));
  if (!t.known) return SeqClass::from_bits(bit(SeqFlag::Unknown));
  unsigned bits = 0;
  const bool bc = t.div_p && t.div_q;
  if (bc) bits |= bit(SeqFlag::BC);
  if (bc && t.lim0) bits |= bit(SeqFlag::BC0);
  if (bc && t.lim1) bits |= bit(SeqFlag::BC1);
  if (bc && t.acc0) bits |= bit(SeqFlag::BC_M0);
  if (bc && t.acc1) bits |= bit(SeqFlag::BC_M1);
  if (t.sep0 && t.sep1) bits |= bit(SeqFlag::Sep);
  if (t.acc0 && t.acc1) bits |= bit(SeqFlag::Acc01);
  if (t.sum_p) bits |= bit(SeqFlag::SummableP);
  if (t.sum_q) bits |= bit(SeqFlag::SummableCoP);
  return SeqClass::from_bits(bits);
}

// ---------------------------------------------------------------------------
// Sums

std::pair<double, double> partial_sums(const ProbSeq& seq, unsigned k, std::uint64_t N) {
  if (k == 0 || N == 0) throw PreconditionError("partial_sums needs k >= 1 and N >= 1");
  double sp = 0.0, sq = 0.0;
  for (std::uint64_t n = 0; n < N; ++n) {
    const Probability p = seq.eval(n);
    if (k == 1) {
      sp += p.value();
      sq += p.complement();
    } else {
      sp += std::exp(k * p.log());
      sq += std::exp(k * p.log_complement());
    }
  }
  return {sp, sq};
}

namespace {

std::optional<double> sub_sum(const ProbSeq& seq, std::uint64_t s, std::uint64_t o, bool co) {
  using F = ProbSeq::Family;
  switch (seq.family()) {
    case F::Constant:
    case F::InverseLog:
      return std::nullopt;
    case F::Geometric: {
      if (co) return std::nullopt;
      const double r = seq.param().value;
      return std::pow(r, static_cast<double>(o) + 1.0) / -std::expm1(s * std::log(r));
    }
    case F::OneMinus:
      return sub_sum(seq.child(0), s, o, !co);
    case F::Interleave: {
      const ProbSeq& a = seq.child(0);
      const ProbSeq& b = seq.child(1);
      std::optional<double> x, y;
      if (s % 2 == 0) {
        return o % 2 == 0 ? sub_sum(a, s / 2, o / 2, co) : sub_sum(b, s / 2, (o - 1) / 2, co);
      }
      if (o % 2 == 0) {
        x = sub_sum(a, s, o / 2, co);
        y = sub_sum(b, s, (s + o - 1) / 2, co);
      } else {
        x = sub_sum(b, s, (o - 1) / 2, co);
        y = sub_sum(a, s, (s + o) / 2, co);
      }
      if (!x || !y) return std::nullopt;
      return *x + *y;
    }
    case F::Table: {
      if (s != 1 || o != 0 || !seq.tail()) return std::nullopt;
      auto t = sub_sum(*seq.tail(), 1, 0, co);
      if (!t) return std::nullopt;
      double total = *t;
      for (std::uint64_t n = 0; n < seq.prefix().size(); ++n) {
        const Probability own = seq.eval(n);
        const Probability tl = seq.tail()->eval(n);
        total += co ? own.complement() - tl.complement() : own.value() - tl.value();
      }
      return total;
    }
    case F::Subsequence:
      return sub_sum(seq.child(0), seq.stride() * s, seq.stride() * o + seq.offset(), co);
  }
  return std::nullopt;
}

// Min-tree over per-index keys answering "first live index with key < t".
class FirstBelow {
 public:
  explicit FirstBelow(const std::vector<double>& keys) {
    size_ = 1;
    while (size_ < keys.size()) size_ <<= 1;
    tree_.assign(2 * size_, std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < keys.size(); ++i) tree_[size_ + i] = keys[i];
    for (std::size_t i = size_ - 1; i >= 1; --i) tree_[i] = std::min(tree_[2 * i], tree_[2 * i + 1]);
  }
  std::optional<std::size_t> first_below(double t) const {
    if (!(tree_[1] < t)) return std::nullopt;
    std::size_t i = 1;
    while (i < size_) i = tree_[2 * i] < t ? 2 * i : 2 * i + 1;
    return i - size_;
  }
  void remove(std::size_t idx) {
    std::size_t i = size_ + idx;
    tree_[i] = std::numeric_limits<double>::infinity();
    for (i >>= 1; i >= 1; i >>= 1) tree_[i] = std::min(tree_[2 * i], tree_[2 * i + 1]);
  }

 private:
  std::size_t size_ = 1;
  std::vector<double> tree_;
};

}  // namespace

std::optional<double> symbolic_sum(const ProbSeq& seq, bool complement) {
  const SeqClass c = classify(seq);
  if (!c.has(complement ? SeqFlag::SummableCoP : SeqFlag::SummableP)) return std::nullopt;
  return sub_sum(seq, 1, 0, complement);
}

std::vector<std::uint64_t> split_summable(const ProbSeq& seq, double budget, std::uint64_t N) {
  if (!classify(seq).has(SeqFlag::BC_M0)) {
    throw PreconditionError("split_summable needs a BC_M0 sequence, got " + seq.text());
  }
  if (!(budget > 0.0)) throw PreconditionError("split_summable budget must be positive");
  std::vector<double> linear(N), logs(N);
  std::uint64_t eligible = 0;
  const double first_threshold = budget / 4.0;
  for (std::uint64_t n = 0; n < N; ++n) {
    const Probability p = seq.eval(n);
    linear[n] = p.value();
    logs[n] = p.log();
    if (linear[n] < first_threshold) ++eligible;
  }
  const auto needed = static_cast<std::uint64_t>(std::floor(std::log2(static_cast<double>(N))));
  if (eligible < needed) {
    throw BudgetError("split_summable: only " + std::to_string(eligible) + " of " +
                          std::to_string(N) + " indices fall below budget/4; need " +
                          std::to_string(needed),
                      static_cast<double>(eligible));
  }
  FirstBelow by_value(linear), by_log(logs);
  std::vector<std::uint64_t> picked;
  const double log_budget = std::log(budget);
  for (std::uint64_t j = 1;; ++j) {
    const double t = std::ldexp(budget, -static_cast<int>(std::min<std::uint64_t>(j + 1, 1u << 20)));
    std::optional<std::size_t> hit;
    if (t >= DBL_MIN) {
      hit = by_value.first_below(t);
    } else {
      hit = by_log.first_below(log_budget - static_cast<double>(j + 1) * std::numbers::ln2);
    }
    if (!hit) break;
    picked.push_back(*hit);
    by_value.remove(*hit);
    by_log.remove(*hit);
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

// ---------------------------------------------------------------------------
// Index pool and block planning

IndexPool::IndexPool(const ProbSeq& seq, std::uint64_t N)
    : N_(N), available_(N), ascending_(N), descending_(N), used_(N, 0) {
  probs_.reserve(N);
  std::vector<double> logit(N);
  for (std::uint64_t n = 0; n < N; ++n) {
    probs_.push_back(seq.eval(n));
    logit[n] = probs_.back().logit();
  }
  for (std::uint64_t n = 0; n < N; ++n) ascending_[n] = descending_[n] = n;
  std::sort(ascending_.begin(), ascending_.end(), [&](auto a, auto b) {
    return logit[a] != logit[b] ? logit[a] < logit[b] : a < b;
  });
  std::sort(descending_.begin(), descending_.end(), [&](auto a, auto b) {
    return logit[a] != logit[b] ? logit[a] > logit[b] : a < b;
  });
}

void IndexPool::take(std::uint64_t i) {
  if (i >= N_) throw PreconditionError("index " + std::to_string(i) + " beyond truncation");
  if (!used_[i]) {
    used_[i] = 1;
    --available_;
  }
}

std::optional<std::uint64_t> IndexPool::take_smallest() {
  while (lo_ < N_ && used_[ascending_[lo_]]) ++lo_;
  if (lo_ == N_) return std::nullopt;
  const std::uint64_t i = ascending_[lo_];
  take(i);
  return i;
}

std::optional<std::uint64_t> IndexPool::take_largest() {
  while (hi_ < N_ && used_[descending_[hi_]]) ++hi_;
  if (hi_ == N_) return std::nullopt;
  const std::uint64_t i = descending_[hi_];
  take(i);
  return i;
}

std::optional<std::uint64_t> IndexPool::take_lowest() {
  while (next_ < N_ && used_[next_]) ++next_;
  if (next_ == N_) return std::nullopt;
  const std::uint64_t i = next_;
  take(i);
  return i;
}

BlockPlan plan_blocks(const ProbSeq& seq, unsigned k, double target_sum, std::uint64_t N,
                      const std::vector<std::uint64_t>& reserved) {
  if (k == 0) throw PreconditionError("plan_blocks needs k >= 1");
  if (!classify(seq).has(SeqFlag::BC)) {
    throw PreconditionError("plan_blocks needs a Borel-Cantelli sequence, got " + seq.text());
  }
  IndexPool pool(seq, N);
  for (auto r : reserved) {
    if (r < N) pool.take(r);
  }
  // Keep one index out of every 2k+1 consecutive ones.
  for (std::uint64_t n = 2 * k; n < N; n += 2 * k + 1) pool.take(n);

  BlockPlan plan;
  plan.k = k;
  while (plan.running_sum < target_sum) {
    IndexBlock block;
    for (unsigned side = 0; side < 2; ++side) {
      for (unsigned i = 0; i < k; ++i) {
        auto idx = side == 0 ? pool.take_largest() : pool.take_smallest();
        if (!idx) {
          throw BudgetError("plan_blocks: target " + std::to_string(target_sum) +
                                " unreachable within N = " + std::to_string(N) +
                                "; achieved " + std::to_string(plan.running_sum),
                            plan.running_sum);
        }
        block.indices.push_back(*idx);
        block.log_success += pool.prob(*idx).log_of(side == 0);
      }
    }
    block.success = std::exp(block.log_success);
    plan.running_sum += block.success;
    plan.blocks.push_back(std::move(block));
  }
  return plan;
}

}  // namespace drawable

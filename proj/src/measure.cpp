#include "drawable/measure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "drawable/error.hpp"
#include "drawable/seq_form.hpp"

namespace drawable {

double cylinder_log_prob(const ProbSeq& seq, const CylinderConstraint& c) {
  double lp = 0.0;
  for (const auto& [coord, bit] : c) lp += seq.eval(coord).log_of(bit);
  return lp;
}

double cylinder_prob(const ProbSeq& seq, const CylinderConstraint& c) {
  return std::exp(cylinder_log_prob(seq, c));
}

// ---------------------------------------------------------------------------
// Null covers

namespace {

void check_bits(const std::string& bits) {
  for (char ch : bits)
    if (ch != '0' && ch != '1') throw ParseError("bit string may only contain 0 and 1");
}

}  // namespace

void NullCover::insert(const std::string& bits) {
  check_bits(bits);
  auto& level = levels_[bits.size()];
  auto it = std::lower_bound(level.begin(), level.end(), bits);
  if (it == level.end() || *it != bits) level.insert(it, bits);
}

bool NullCover::contains(const std::string& bits) const {
  auto it = levels_.find(bits.size());
  return it != levels_.end() && std::binary_search(it->second.begin(), it->second.end(), bits);
}

std::size_t NullCover::truncation() const {
  return levels_.empty() ? 0 : levels_.rbegin()->first;
}

std::size_t NullCover::member_count() const {
  std::size_t c = 0;
  for (const auto& [n, level] : levels_) c += level.size();
  return c;
}

std::string NullCover::text() const {
  std::string out;
  for (const auto& [n, level] : levels_)
    for (const auto& s : level) out += std::to_string(n) + " " + s + "\n";
  return out;
}

NullCover NullCover::parse(const std::string& text) {
  NullCover cover;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::size_t n = 0;
    std::string bits;
    if (!(ls >> n)) throw ParseError("cover line " + std::to_string(lineno) + ": missing level");
    ls >> bits;  // level 0 has an empty string
    if (bits.size() != n) {
      throw ParseError("cover line " + std::to_string(lineno) + ": string length " +
                       std::to_string(bits.size()) + " differs from level " + std::to_string(n));
    }
    cover.insert(bits);
  }
  return cover;
}

double string_log_mass(const ProbSeq& seq, const std::string& bits) {
  double lp = 0.0;
  for (std::size_t i = 0; i < bits.size(); ++i) lp += seq.eval(i).log_of(bits[i] == '1');
  return lp;
}

double cover_mass(const NullCover& cover, const ProbSeq& seq) {
  double total = 0.0;
  for (const auto& [n, level] : cover.levels()) {
    // Per-coordinate logs are shared across the level.
    std::vector<double> l1(n), l0(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Probability p = seq.eval(i);
      l1[i] = p.log();
      l0[i] = p.log_complement();
    }
    for (const auto& s : level) {
      double lp = 0.0;
      for (std::size_t i = 0; i < n; ++i) lp += s[i] == '1' ? l1[i] : l0[i];
      total += std::exp(lp);
    }
  }
  return total;
}

Translation translate_cover(const NullCover& cover, const std::vector<std::uint64_t>& support,
                            const ProbSeq& seq) {
  Translation t;
  if (support.empty()) {
    t.cover = cover;
    return t;
  }
  const std::uint64_t top = *std::max_element(support.begin(), support.end());
  for (const auto& [n, level] : cover.levels()) {
    if (n <= top) {
      throw PreconditionError("translate_cover: level " + std::to_string(n) +
                              " is too short for support coordinate " + std::to_string(top));
    }
  }
  double log_c = 0.0;
  std::vector<std::uint64_t> sup = support;
  std::sort(sup.begin(), sup.end());
  sup.erase(std::unique(sup.begin(), sup.end()), sup.end());
  for (auto i : sup) {
    const Probability p = seq.eval(i);
    log_c += std::abs(p.log() - p.log_complement());
  }
  t.bound_factor = std::exp(log_c);
  for (const auto& [n, level] : cover.levels()) {
    for (std::string s : level) {
      for (auto i : sup) s[i] = s[i] == '1' ? '0' : '1';
      t.cover.insert(s);
    }
  }
  return t;
}

TailClosure tail_closure(const NullCover& cover, unsigned s, const ProbSeq& seq) {
  if (s > 24) throw SizeCapError("tail_closure enumerates 2^s translates; s <= 24");
  if (!cover.levels().empty() && s > cover.levels().begin()->first) {
    throw PreconditionError("tail_closure: support bound exceeds the shortest level");
  }
  TailClosure out;
  const double mass = cover_mass(cover, seq);
  for (std::uint64_t mask = 0; mask < (1ULL << s); ++mask) {
    std::vector<std::uint64_t> support;
    for (unsigned i = 0; i < s; ++i)
      if ((mask >> i) & 1) support.push_back(i);
    const Translation t = translate_cover(cover, support, seq);
    out.mass_bound += t.bound_factor * mass;
    for (const auto& [n, level] : t.cover.levels())
      for (const auto& str : level) out.cover.insert(str);
  }
  return out;
}

std::size_t hits(const NullCover& cover, const std::string& x, std::size_t N) {
  if (x.size() < N) throw PreconditionError("hits: prefix shorter than N");
  std::size_t count = 0;
  for (const auto& [n, level] : cover.levels()) {
    if (n > N) break;
    if (std::binary_search(level.begin(), level.end(), x.substr(0, n))) ++count;
  }
  return count;
}

// ---------------------------------------------------------------------------
// Kakutani

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Equivalent: return "Equivalent";
    case Verdict::Singular: return "Singular";
    case Verdict::Undetermined: return "Undetermined";
  }
  return "?";
}

double hellinger_partial(const ProbSeq& p, const ProbSeq& q, std::uint64_t N) {
  double s = 0.0;
  for (std::uint64_t n = 0; n < N; ++n) {
    const Probability a = p.eval(n);
    const Probability b = q.eval(n);
    // Difference taken on the side where both values keep full precision.
    const double d = (a.value() > 0.5 && b.value() > 0.5) ? b.complement() - a.complement()
                                                          : a.value() - b.value();
    const double r1 = std::sqrt(a.value()) + std::sqrt(b.value());
    const double r0 = std::sqrt(a.complement()) + std::sqrt(b.complement());
    s += d * d / (r1 * r1) + d * d / (r0 * r0);
  }
  return s;
}

namespace {

SeqFormPtr half(const SeqFormPtr& f, unsigned parity) {
  if (f->kind == SeqForm::Kind::Interleave) return parity == 0 ? f->even : f->odd;
  return sub_form(f, 2, parity);
}

Verdict decide(const SeqFormPtr& a, const SeqFormPtr& b) {
  using K = SeqForm::Kind;
  if (a->kind == K::Unknown || b->kind == K::Unknown) return Verdict::Undetermined;
  if (a->kind == K::Interleave || b->kind == K::Interleave) {
    const Verdict even = decide(half(a, 0), half(b, 0));
    const Verdict odd = decide(half(a, 1), half(b, 1));
    if (even == Verdict::Singular || odd == Verdict::Singular) return Verdict::Singular;
    if (even == Verdict::Equivalent && odd == Verdict::Equivalent) return Verdict::Equivalent;
    return Verdict::Undetermined;
  }
  if (same_form(*a, *b)) return Verdict::Equivalent;
  // Different limits leave a summand bounded away from zero.
  if (a->kind == K::Constant || b->kind == K::Constant) return Verdict::Singular;
  if (a->flipped != b->flipped) return Verdict::Singular;
  // Both tend to the same endpoint.
  if (a->kind == K::Geometric && b->kind == K::Geometric) return Verdict::Equivalent;
  if (a->kind != b->kind) return Verdict::Singular;  // summable against divergent
  // 1/ln(s n + c) against 1/ln(s' n + c'): the gap is ln(s/s')/ln^2 n.
  return a->stride == b->stride ? Verdict::Equivalent : Verdict::Singular;
}

}  // namespace

Verdict kakutani_symbolic(const ProbSeq& p, const ProbSeq& q) {
  return decide(tail_form(p), tail_form(q));
}

KakutaniReport kakutani(const ProbSeq& p, const ProbSeq& q, std::uint64_t N) {
  KakutaniReport r;
  r.N = N;
  r.partial_sum = hellinger_partial(p, q, N);
  r.verdict = kakutani_symbolic(p, q);
  return r;
}

double empirical_density(const std::string& x, std::size_t n) {
  if (n == 0 || x.size() < n) throw PreconditionError("empirical_density needs 1 <= n <= |x|");
  return static_cast<double>(std::count(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n), '1')) /
         static_cast<double>(n);
}

std::string sample_bits(const ProbSeq& seq, std::size_t len, Rng& rng) {
  std::string out(len, '0');
  for (std::size_t i = 0; i < len; ++i)
    if (rng.uniform() < seq.eval(i).value()) out[i] = '1';
  return out;
}

namespace {

constexpr std::uint64_t kChunk = 4096;

std::uint64_t chunk_hits(const std::vector<double>& p, const CylinderConstraint& c,
                         std::uint64_t begin, std::uint64_t end, std::uint64_t seed,
                         std::uint64_t chunk) {
  Rng rng = Rng::stream(seed, chunk);
  std::vector<char> bits(p.size());
  std::uint64_t count = 0;
  for (std::uint64_t s = begin; s < end; ++s) {
    for (std::size_t i = 0; i < p.size(); ++i) bits[i] = rng.uniform() < p[i];
    bool ok = true;
    for (const auto& [coord, bit] : c) ok = ok && (bits[coord] != 0) == bit;
    count += ok;
  }
  return count;
}

std::vector<double> coordinate_probs(const ProbSeq& seq, const CylinderConstraint& c) {
  const std::size_t len = c.empty() ? 0 : c.rbegin()->first + 1;
  std::vector<double> p(len);
  for (std::size_t i = 0; i < len; ++i) p[i] = seq.eval(i).value();
  return p;
}

}  // namespace

double cylinder_frequency(const ProbSeq& seq, const CylinderConstraint& c,
                          std::uint64_t samples, std::uint64_t seed) {
  if (samples == 0) throw PreconditionError("cylinder_frequency needs samples >= 1");
  const auto p = coordinate_probs(seq, c);
  const auto chunks = static_cast<std::int64_t>((samples + kChunk - 1) / kChunk);
  std::uint64_t total = 0;
#pragma omp parallel for reduction(+ : total) schedule(static)
  for (std::int64_t k = 0; k < chunks; ++k) {
    const auto begin = static_cast<std::uint64_t>(k) * kChunk;
    total += chunk_hits(p, c, begin, std::min(samples, begin + kChunk), seed,
                        static_cast<std::uint64_t>(k));
  }
  return static_cast<double>(total) / static_cast<double>(samples);
}

double cylinder_frequency_serial(const ProbSeq& seq, const CylinderConstraint& c,
                                 std::uint64_t samples, std::uint64_t seed) {
  if (samples == 0) throw PreconditionError("cylinder_frequency needs samples >= 1");
  const auto p = coordinate_probs(seq, c);
  std::uint64_t total = 0;
  for (std::uint64_t k = 0; k * kChunk < samples; ++k) {
    total += chunk_hits(p, c, k * kChunk, std::min(samples, (k + 1) * kChunk), seed, k);
  }
  return static_cast<double>(total) / static_cast<double>(samples);
}

double witness_sum(const EdgeSchedule& sched, const VertexSet& a, const VertexSet& b, Vertex N) {
  std::vector<char> mark(std::max<Vertex>(N, sched.vertex_budget), 0);
  for (Vertex v : a) {
    if (v >= sched.vertex_budget) throw PreconditionError("witness set beyond schedule budget");
    mark[v] = 1;
  }
  for (Vertex v : b) {
    if (v >= sched.vertex_budget) throw PreconditionError("witness set beyond schedule budget");
    if (mark[v] == 1) throw PreconditionError("witness_sum needs disjoint A and B");
    mark[v] = 2;
  }
  if (N > sched.vertex_budget) throw PreconditionError("witness_sum truncation beyond budget");
  double total = 0.0;
  for (Vertex v = 0; v < N; ++v) {
    if (mark[v]) continue;
    double lp = 0.0;
    for (Vertex k : a) lp += sched.at(v, k).prob.log();
    for (Vertex l : b) lp += sched.at(v, l).prob.log_complement();
    total += std::exp(lp);
  }
  return total;
}

}  // namespace drawable

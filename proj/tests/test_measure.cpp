#include <cmath>

#include "doctest.h"
#include "drawable/error.hpp"
#include "drawable/measure.hpp"
#include "drawable/schedules.hpp"

using namespace drawable;

namespace {

ProbSeq P(const std::string& text) { return ProbSeq::parse(text); }

NullCover cover_of(std::initializer_list<const char*> members) {
  NullCover c;
  for (const char* m : members) c.insert(m);
  return c;
}

// Mass of a cover by brute-force enumeration of the longest level's cylinders.
double brute_mass(const NullCover& c, const ProbSeq& seq) {
  double total = 0.0;
  for (const auto& [n, level] : c.levels()) {
    for (const auto& s : level) {
      double p = 1.0;
      for (std::size_t i = 0; i < n; ++i) p *= s[i] == '1' ? seq.eval(i).value() : seq.eval(i).complement();
      total += p;
    }
  }
  return total;
}

NullCover random_cover(Rng& rng, std::size_t min_len) {
  NullCover c;
  const std::size_t levels = 1 + rng.below(3);
  for (std::size_t l = 0; l < levels; ++l) {
    const std::size_t n = min_len + rng.below(5);
    const std::size_t members = 1 + rng.below(4);
    for (std::size_t m = 0; m < members; ++m) {
      std::string s(n, '0');
      for (auto& ch : s) ch = rng.below(2) ? '1' : '0';
      c.insert(s);
    }
  }
  return c;
}

}  // namespace

TEST_CASE("cylinder probabilities") {
  CHECK(cylinder_prob(P("const:1/2"), {{0, true}, {3, false}, {9, true}}) == doctest::Approx(0.125));
  CHECK(cylinder_prob(P("table[0.3,0.8;const:1/2]"), {{0, true}, {1, false}}) ==
        doctest::Approx(0.06).epsilon(1e-12));
  CHECK(cylinder_prob(P("geom:1/2"), {}) == 1.0);
  // Far coordinates stay representable in log space.
  const double lp = cylinder_log_prob(P("geom:1/2"), {{3000, true}, {3001, true}});
  CHECK(lp == doctest::Approx(-(3001 + 3002) * std::log(2.0)));
}

TEST_CASE("cover mass") {
  NullCover full = cover_of({"00", "01", "10", "11"});
  CHECK(cover_mass(full, P("const:1/2")) == doctest::Approx(1.0));
  CHECK(cover_mass(NullCover{}, P("const:1/2")) == 0.0);
  CHECK(cover_mass(cover_of({"1", "11"}), P("const:1/2")) == doctest::Approx(0.75));
  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    const auto c = random_cover(rng, 1);
    const auto seq = P("interleave(invlog:4,1-(geom:1/3))");
    CHECK(cover_mass(c, seq) == doctest::Approx(brute_mass(c, seq)).epsilon(1e-12));
  }
}

TEST_CASE("cover text format round trips and is canonical") {
  const auto c = cover_of({"11", "1", "11", "010"});
  CHECK(c.member_count() == 3);
  CHECK(c.truncation() == 3);
  CHECK(c.text() == "1 1\n2 11\n3 010\n");
  CHECK(NullCover::parse(c.text()) == c);
  CHECK_THROWS_AS(NullCover::parse("2 1\n"), ParseError);
  CHECK_THROWS_AS(NullCover::parse("2 1x\n"), ParseError);
}

TEST_CASE("translation bound factors") {
  const auto c = cover_of({"010", "111"});
  const auto id = translate_cover(c, {}, P("const:1/3"));
  CHECK(id.cover == c);
  CHECK(id.bound_factor == 1.0);
  CHECK(translate_cover(c, {0}, P("const:1/3")).bound_factor == doctest::Approx(2.0));
  CHECK(translate_cover(c, {0, 1}, P("const:1/3")).bound_factor == doctest::Approx(4.0));
  CHECK(translate_cover(c, {0}, P("const:1/3")).cover == cover_of({"110", "011"}));
  CHECK_THROWS_AS(translate_cover(c, {3}, P("const:1/3")), PreconditionError);
}

TEST_CASE("translation bound and involution on random covers") {
  Rng rng(2024);
  const auto seq = P("interleave(const:1/3,invlog:5)");
  for (int t = 0; t < 100; ++t) {
    const auto c = random_cover(rng, 4);
    std::vector<std::uint64_t> q;
    for (std::uint64_t i = 0; i < 4; ++i)
      if (rng.below(2)) q.push_back(i);
    const auto tr = translate_cover(c, q, seq);
    CHECK(cover_mass(tr.cover, seq) <= tr.bound_factor * cover_mass(c, seq) * (1 + 1e-12));
    CHECK(translate_cover(tr.cover, q, seq).cover == c);
  }
}

TEST_CASE("tail closure") {
  const auto c = cover_of({"0101", "1100"});
  const auto half = P("const:1/2");
  auto tc = tail_closure(c, 0, half);
  CHECK(tc.cover == c);
  CHECK(tc.mass_bound == doctest::Approx(cover_mass(c, half)));
  tc = tail_closure(c, 3, half);
  CHECK(tc.mass_bound == doctest::Approx(8 * cover_mass(c, half)));
  CHECK(cover_mass(tc.cover, half) <= tc.mass_bound);
  const auto third = P("const:1/3");
  tc = tail_closure(c, 1, third);
  CHECK(tc.mass_bound == doctest::Approx(3 * cover_mass(c, third)));
  CHECK(cover_mass(tc.cover, third) <= tc.mass_bound * (1 + 1e-12));
}

TEST_CASE("hits") {
  CHECK(hits(NullCover{}, "0000", 4) == 0);
  NullCover zeros;
  for (int n = 1; n <= 5; ++n) zeros.insert(std::string(n, '0'));
  CHECK(hits(zeros, std::string(8, '0'), 8) == 5);
  CHECK(hits(cover_of({"10"}), "1011", 4) == 1);
  CHECK(hits(cover_of({"10"}), "1011", 1) == 0);
}

TEST_CASE("hits matches brute-force membership") {
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    const auto c = random_cover(rng, 1);
    std::string x(10, '0');
    for (auto& ch : x) ch = rng.below(2) ? '1' : '0';
    std::size_t expect = 0;
    for (const auto& [n, level] : c.levels())
      for (const auto& s : level) expect += x.compare(0, n, s) == 0;
    CHECK(hits(c, x, 10) == expect);
  }
}

TEST_CASE("kakutani verdicts") {
  const auto half = P("const:1/2");
  const auto invlog = P("invlog:3");
  auto r = kakutani(invlog, invlog, 1000);
  CHECK(r.verdict == Verdict::Equivalent);
  CHECK(r.partial_sum == 0.0);
  CHECK(kakutani(half, P("const:1/4"), 100).verdict == Verdict::Singular);
  // 1/2 + 1/(n+2)^2 on a finite prefix, 1/2 on the tail.
  std::string text = "table[";
  for (int n = 0; n < 30; ++n) {
    if (n) text += ",";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", 0.5 + 1.0 / ((n + 2.0) * (n + 2.0)));
    text += buf;
  }
  text += ";const:1/2]";
  const auto near = P(text);
  CHECK(kakutani(half, near, 100).verdict == Verdict::Equivalent);
  CHECK(kakutani(P("geom:1/2"), P("geom:1/3"), 100).verdict == Verdict::Equivalent);
  CHECK(kakutani(P("geom:1/2"), invlog, 100).verdict == Verdict::Singular);
  CHECK(kakutani(P("table[0.5]"), half, 1).verdict == Verdict::Undetermined);
}

TEST_CASE("kakutani series is symmetric and monotone") {
  const std::vector<ProbSeq> seqs{P("const:1/2"), P("const:1/4"), P("invlog:3"), P("geom:1/2"),
                                  P("1-(geom:1/3)"), P("interleave(geom:1/2,1-(geom:1/2))")};
  for (const auto& a : seqs) {
    for (const auto& b : seqs) {
      const auto ab = kakutani(a, b, 200);
      const auto ba = kakutani(b, a, 200);
      CHECK(ab.verdict == ba.verdict);
      CHECK(ab.partial_sum == ba.partial_sum);
      double prev = 0.0;
      for (std::uint64_t N : {1u, 5u, 20u, 100u, 200u}) {
        const double s = hellinger_partial(a, b, N);
        CHECK(s >= prev);
        prev = s;
      }
      // Direct formula.
      double direct = 0.0;
      for (std::uint64_t n = 0; n < 50; ++n) {
        const double p = a.eval(n).value(), q = b.eval(n).value();
        direct += std::pow(std::sqrt(p) - std::sqrt(q), 2) +
                  std::pow(std::sqrt(1 - p) - std::sqrt(1 - q), 2);
      }
      CHECK(hellinger_partial(a, b, 50) == doctest::Approx(direct).epsilon(1e-9));
    }
  }
}

TEST_CASE("empirical density") {
  CHECK(empirical_density(std::string(10, '0'), 10) == 0.0);
  CHECK(empirical_density("0101010101", 10) == 0.5);
  CHECK(empirical_density(std::string(7, '1'), 7) == 1.0);
  CHECK_THROWS_AS(empirical_density("01", 3), PreconditionError);
}

TEST_CASE("law of large numbers on constant sequences") {
  for (double c : {0.5, 0.2}) {
    const auto seq = ProbSeq::constant(Param::of(c));
    const std::size_t n = 10000;
    const double tol = 4 * std::sqrt(c * (1 - c) / n);
    int inside = 0;
    for (int t = 0; t < 1000; ++t) {
      Rng rng = Rng::stream(99, t);
      inside += std::abs(empirical_density(sample_bits(seq, n, rng), n) - c) <= tol;
    }
    CHECK(inside >= 990);
  }
}

TEST_CASE("cylinder frequency within four sigma") {
  const auto seq = P("interleave(invlog:4,const:0.3)");
  const CylinderConstraint c{{0, true}, {2, false}, {5, true}};
  const double p = cylinder_prob(seq, c);
  const std::uint64_t samples = 100000;
  const double f = cylinder_frequency(seq, c, samples, 3);
  CHECK(std::abs(f - p) <= 4 * std::sqrt(p * (1 - p) / samples));
  CHECK(cylinder_frequency(seq, {}, 10, 3) == 1.0);
}

TEST_CASE("witness sums") {
  const auto s = identity_schedule(P("const:1/2"), 12);
  CHECK(witness_sum(s, {0}, {1}, 10) == doctest::Approx(2.0));
  CHECK(witness_sum(s, {}, {}, 5) == doctest::Approx(5.0));
  CHECK(witness_sum(s, {0, 1}, {}, 12) == doctest::Approx(2.5));
  CHECK_THROWS_AS(witness_sum(s, {0}, {0}, 10), PreconditionError);
}

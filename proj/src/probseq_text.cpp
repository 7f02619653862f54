#include <cctype>
#include <charconv>
#include <cmath>

#include "drawable/error.hpp"
#include "drawable/probseq.hpp"

namespace drawable {

Param Param::of(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return Param{v, std::string(buf, res.ptr)};
}

Param Param::rational(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw PreconditionError("rational parameter needs a positive denominator");
  return Param{static_cast<double>(num) / static_cast<double>(den),
               std::to_string(num) + "/" + std::to_string(den)};
}

Param Param::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    std::int64_t num = 0, den = 0;
    auto a = std::from_chars(text.data(), text.data() + slash, num);
    auto b = std::from_chars(text.data() + slash + 1, text.data() + text.size(), den);
    if (a.ec != std::errc() || a.ptr != text.data() + slash || b.ec != std::errc() ||
        b.ptr != text.data() + text.size() || den <= 0) {
      throw ParseError("bad rational parameter '" + std::string(text) + "'");
    }
    return Param{static_cast<double>(num) / static_cast<double>(den), std::string(text)};
  }
  double v = 0.0;
  auto r = std::from_chars(text.data(), text.data() + text.size(), v);
  if (r.ec != std::errc() || r.ptr != text.data() + text.size() || text.empty()) {
    throw ParseError("bad numeric parameter '" + std::string(text) + "'");
  }
  return Param{v, std::string(text)};
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  ProbSeq parse_all() {
    ProbSeq seq = parse_seq();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return seq;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("sequence '" + std::string(s_) + "': " + what + " at offset " +
                     std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(std::string_view token) {
    skip_ws();
    if (s_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view token) {
    if (!eat(token)) fail("expected '" + std::string(token) + "'");
  }

  Param number() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) ||
                                 std::string_view(".eE+-/").find(s_[pos_]) != std::string_view::npos)) {
      ++pos_;
    }
    if (start == pos_) fail("expected a number");
    return Param::parse(s_.substr(start, pos_ - start));
  }

  std::uint64_t integer() {
    skip_ws();
    std::uint64_t v = 0;
    auto r = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (r.ec != std::errc()) fail("expected an integer");
    pos_ = static_cast<std::size_t>(r.ptr - s_.data());
    return v;
  }

  ProbSeq parse_seq() {
    if (eat("const:")) return ProbSeq::constant(number());
    if (eat("invlog:")) return ProbSeq::inverse_log(number());
    if (eat("geom:")) return ProbSeq::geometric(number());
    if (eat("1-(")) {
      ProbSeq inner = parse_seq();
      expect(")");
      return ProbSeq::one_minus(std::move(inner));
    }
    if (eat("interleave(")) {
      ProbSeq a = parse_seq();
      expect(",");
      ProbSeq b = parse_seq();
      expect(")");
      return ProbSeq::interleave(std::move(a), std::move(b));
    }
    if (eat("table[")) {
      std::vector<Param> prefix;
      std::optional<ProbSeq> tail;
      if (!eat(";") && !eat("]")) {
        prefix.push_back(number());
        while (eat(",")) prefix.push_back(number());
        if (eat(";")) tail = parse_seq();
        expect("]");
      } else if (s_[pos_ - 1] == ';') {
        tail = parse_seq();
        expect("]");
      }
      return ProbSeq::table(std::move(prefix), std::move(tail));
    }
    if (eat("sub(")) {
      ProbSeq inner = parse_seq();
      expect(",");
      const std::uint64_t stride = integer();
      expect(",");
      const std::uint64_t offset = integer();
      expect(")");
      return ProbSeq::subsequence(std::move(inner), stride, offset);
    }
    fail("unknown sequence family");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

ProbSeq ProbSeq::parse(std::string_view text) { return Parser(text).parse_all(); }

std::string ProbSeq::text() const {
  switch (family()) {
    case Family::Constant:
      return "const:" + param().text;
    case Family::InverseLog:
      return "invlog:" + param().text;
    case Family::Geometric:
      return "geom:" + param().text;
    case Family::OneMinus:
      return "1-(" + child(0).text() + ")";
    case Family::Interleave:
      return "interleave(" + child(0).text() + "," + child(1).text() + ")";
    case Family::Table: {
      std::string out = "table[";
      for (std::size_t i = 0; i < prefix().size(); ++i) {
        if (i) out += ",";
        out += prefix()[i].text;
      }
      if (tail()) out += ";" + tail()->text();
      return out + "]";
    }
    case Family::Subsequence:
      return "sub(" + child(0).text() + "," + std::to_string(stride()) + "," +
             std::to_string(offset()) + ")";
  }
  return {};
}

}  // namespace drawable

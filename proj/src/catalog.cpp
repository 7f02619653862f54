#include <algorithm>
#include <mutex>
#include <numeric>

#include "drawable/error.hpp"
#include "drawable/graph.hpp"

namespace drawable {

namespace {

// Bit string over colex pairs packed with pair 0 as the most significant bit,
// so numeric order equals lexicographic order of the strings.
using Code = std::uint64_t;

Code pack(const Graph& g) {
  const std::uint64_t p = pair_count(g.order());
  Code c = 0;
  for (const auto& e : g.edges()) c |= Code{1} << (p - 1 - pair_index(e));
  return c;
}

std::string hex_of(Vertex n, Code c) {
  const std::uint64_t p = pair_count(n);
  const std::uint64_t digits = (p + 3) / 4;
  std::string out = std::to_string(n) + ":";
  static const char* kHex = "0123456789abcdef";
  const std::uint64_t pad = digits * 4 - p;
  for (std::uint64_t d = 0; d < digits; ++d) {
    const std::uint64_t shift = (digits - 1 - d) * 4;
    const unsigned nibble = static_cast<unsigned>((c << pad >> shift) & 0xF);
    out.push_back(kHex[nibble]);
  }
  return out;
}

struct PairTable {
  std::vector<Pair> pairs;
  explicit PairTable(Vertex n) {
    for (std::uint64_t i = 0; i < pair_count(n); ++i) pairs.push_back(index_pair(i));
  }
};

Code permuted(Code c, const PairTable& t, const std::vector<Vertex>& perm) {
  const std::uint64_t p = t.pairs.size();
  Code out = 0;
  for (std::uint64_t i = 0; i < p; ++i) {
    if ((c >> (p - 1 - i)) & 1) {
      out |= Code{1} << (p - 1 - pair_index(perm[t.pairs[i].a], perm[t.pairs[i].b]));
    }
  }
  return out;
}

Code minimal_code(const Graph& g) {
  const Vertex n = g.order();
  const PairTable table(n);
  const Code c = pack(g);
  Code best = c;
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    best = std::min(best, permuted(c, table, perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

bool is_minimal(Code c, const PairTable& table, Vertex n) {
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  while (std::next_permutation(perm.begin(), perm.end())) {
    if (permuted(c, table, perm) < c) return false;
  }
  return true;
}

Graph unpack(Vertex n, Code c) {
  const std::uint64_t p = pair_count(n);
  std::vector<Pair> e;
  for (std::uint64_t i = 0; i < p; ++i)
    if ((c >> (p - 1 - i)) & 1) e.push_back(index_pair(i));
  return Graph(n, std::move(e));
}

}  // namespace

std::string adjacency_code(const Graph& g) {
  if (g.order() > 11) throw SizeCapError("adjacency code supports at most 11 vertices");
  return hex_of(g.order(), pack(g));
}

std::string graph_label(const Graph& g) {
  if (g.order() <= 11) return adjacency_code(g);
  std::string out = std::to_string(g.order()) + ";";
  bool first = true;
  for (const auto& e : g.edges()) {
    if (!first) out += ',';
    first = false;
    out += std::to_string(e.a) + "-" + std::to_string(e.b);
  }
  return out;
}

std::string canonical_code(const Graph& g) {
  if (g.order() > 8) throw SizeCapError("canonical code supports at most 8 vertices");
  return hex_of(g.order(), minimal_code(g));
}

Graph canonical_form(const Graph& g) {
  if (g.order() > 8) throw SizeCapError("canonical form supports at most 8 vertices");
  return unpack(g.order(), minimal_code(g));
}

Graph graph_from_code(const std::string& code) {
  const auto colon = code.find(':');
  if (colon == std::string::npos) throw ParseError("graph code needs 'n:hex'");
  Vertex n = 0;
  try {
    n = static_cast<Vertex>(std::stoul(code.substr(0, colon)));
  } catch (const std::exception&) {
    throw ParseError("bad vertex count in graph code '" + code + "'");
  }
  if (n > 11) throw SizeCapError("graph code supports at most 11 vertices");
  const std::uint64_t p = pair_count(n);
  const std::uint64_t digits = (p + 3) / 4;
  const std::string hex = code.substr(colon + 1);
  if (hex.size() != digits) throw ParseError("graph code '" + code + "' has wrong length");
  Code c = 0;
  for (char ch : hex) {
    const auto pos = std::string("0123456789abcdef").find(ch);
    if (pos == std::string::npos) throw ParseError("bad hex digit in graph code");
    c = (c << 4) | pos;
  }
  const std::uint64_t pad = digits * 4 - p;
  if (c & ((Code{1} << pad) - 1)) throw ParseError("graph code has nonzero padding");
  return unpack(n, c >> pad);
}

std::vector<Graph> graph_catalog(unsigned s) {
  if (s > 6) throw SizeCapError("graph_catalog supports s <= 6");
  static std::once_flag once;
  static std::vector<Graph> full;
  std::call_once(once, [] {
    for (Vertex n = 1; n <= 6; ++n) {
      const PairTable table(n);
      const Code limit = Code{1} << pair_count(n);
      for (Code c = 0; c < limit; ++c) {
        if (is_minimal(c, table, n)) full.push_back(unpack(n, c));
      }
    }
  });
  std::vector<Graph> out;
  for (const auto& g : full)
    if (g.order() <= s) out.push_back(g);
  return out;
}

std::vector<Graph> connected_catalog(unsigned s) {
  std::vector<Graph> out;
  for (auto& g : graph_catalog(s))
    if (is_connected(g)) out.push_back(std::move(g));
  return out;
}

UniversalityScan weak_universality_scan(const Graph& g, unsigned max_size) {
  if (max_size > 5) throw PreconditionError("weak_universality_scan supports maxSize <= 5");
  UniversalityScan scan;
  for (const auto& h : graph_catalog(max_size)) {
    if (h.order() > scan.level + 1) scan.level = h.order() - 1;
    if (!find_induced(g, h)) {
      scan.first_missing = h;
      return scan;
    }
  }
  scan.level = max_size;
  return scan;
}

std::string canonical_key(const Graph& g) {
  if (g.order() <= 8) return "m" + canonical_code(g);
  std::vector<std::string> parts;
  for (const auto& comp : components(g)) {
    parts.push_back(tree_like_code(induced(g, comp)));
  }
  std::sort(parts.begin(), parts.end());
  std::string key = "t" + std::to_string(g.order()) + ":";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) key += "+";
    key += parts[i];
  }
  return key;
}

}  // namespace drawable

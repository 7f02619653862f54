#include "drawable/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "drawable/error.hpp"

namespace drawable {

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

Json probability_json(const Probability& p) {
  return {{"p", p.value()},
          {"small", p.small()},
          {"upper", p.upper()},
          {"logp", p.log()},
          {"logq", p.log_complement()}};
}

Probability probability_from_json(const Json& j) {
  return Probability::from_parts(j.at("small").get<double>(), j.at("upper").get<bool>(),
                                 j.at("logp").get<double>(), j.at("logq").get<double>());
}

Json schedule_json(const EdgeSchedule& s) {
  Json j;
  j["schema"] = "drawable.schedule/1";
  j["indexer"] = "colex: {a,b} with a<b -> b(b-1)/2 + a";
  j["builder"] = s.builder;
  j["source"] = s.source;
  j["vertex_budget"] = s.vertex_budget;
  j["regions"] = s.regions;
  j["params"] = s.params;
  j["index_classes"] = s.index_classes;
  j["budget"] = s.budget;
  j["shortfalls"] = s.shortfalls;
  Json blocks = Json::array();
  for (const auto& b : s.blocks) {
    Json plan = Json::array();
    for (const auto& e : b.plan.edges()) plan.push_back({e.a, e.b});
    blocks.push_back({{"family", b.family}, {"vertices", b.vertices}, {"plan", std::move(plan)}});
  }
  j["blocks"] = std::move(blocks);
  Json table = Json::array();
  for (std::uint64_t i = 0; i < s.table.size(); ++i) {
    const auto& x = s.table[i];
    const Pair p = index_pair(i);
    Json row = probability_json(x.prob);
    row["pair"] = {p.a, p.b};
    row["source"] = x.source ? Json(*x.source) : Json(nullptr);
    row["planned"] = x.planned ? Json(*x.planned ? 1 : 0) : Json(nullptr);
    row["region"] = x.region;
    table.push_back(std::move(row));
  }
  j["table"] = std::move(table);
  return j;
}

EdgeSchedule schedule_from_json(const Json& j) {
  if (j.value("schema", "") != "drawable.schedule/1") throw ParseError("not a schedule document");
  EdgeSchedule s;
  s.builder = j.at("builder").get<std::string>();
  s.source = j.at("source").get<std::string>();
  s.vertex_budget = j.at("vertex_budget").get<Vertex>();
  s.regions = j.at("regions").get<std::vector<std::string>>();
  s.params = j.at("params").get<std::map<std::string, std::string>>();
  s.index_classes = j.at("index_classes").get<std::map<std::string, std::vector<std::uint64_t>>>();
  s.budget = j.at("budget").get<std::map<std::string, double>>();
  s.shortfalls = j.at("shortfalls").get<std::vector<std::string>>();
  for (const auto& b : j.at("blocks")) {
    auto vertices = b.at("vertices").get<VertexSet>();
    std::vector<Pair> plan;
    for (const auto& e : b.at("plan")) plan.push_back(make_pair(e[0].get<Vertex>(), e[1].get<Vertex>()));
    const auto order = static_cast<Vertex>(vertices.size());
    s.blocks.push_back({b.at("family").get<std::string>(), std::move(vertices), Graph(order, std::move(plan))});
  }
  const auto& table = j.at("table");
  s.table.reserve(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto& row = table[i];
    const auto pair = row.at("pair");
    if (pair_index(pair[0].get<Vertex>(), pair[1].get<Vertex>()) != i) {
      throw ParseError("schedule table row " + std::to_string(i) + " is out of colex order");
    }
    Assignment x;
    x.prob = probability_from_json(row);
    if (!row.at("source").is_null()) x.source = row.at("source").get<std::uint64_t>();
    if (!row.at("planned").is_null()) x.planned = row.at("planned").get<int>() != 0;
    x.region = row.at("region").get<std::uint8_t>();
    s.table.push_back(x);
  }
  validate_schedule(s);
  return s;
}

std::string schedule_digest(const EdgeSchedule& s) { return digest_of(schedule_json(s).dump()); }

Json class_json(const ProbSeq& seq) {
  const auto c = classify(seq);
  return {{"schema", "drawable.classify/1"}, {"sequence", seq.text()}, {"classes", c.names()}};
}

Json census_json(const DegreeCensus& c) {
  Json j = Json::object();
  for (const auto& [d, n] : c) j[std::to_string(d)] = n;
  return j;
}

Json report_json(const SampleReport& r, bool with_records) {
  Json j;
  j["schema"] = "drawable.report/1";
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["n"] = r.n;
  Json names = Json::array();
  for (auto a : r.analyzers) names.push_back(analyzer_name(a));
  j["analyzers"] = std::move(names);
  j["schedule_digest"] = r.schedule_digest;
  Json agg = Json::object();
  for (const auto& [name, a] : r.aggregates) {
    Json h = Json::object();
    for (const auto& [v, c] : a.histogram) h[std::to_string(v)] = c;
    agg[name] = {{"mean", a.mean}, {"min", a.min}, {"max", a.max}, {"histogram", std::move(h)}};
  }
  j["aggregates"] = std::move(agg);
  j["digest"] = r.digest;
  if (with_records) {
    Json recs = Json::array();
    for (const auto& t : r.records) {
      recs.push_back({{"trial", t.trial},
                      {"edges", t.edges},
                      {"deviations", t.deviations},
                      {"late_deviations", t.late_deviations},
                      {"component_sizes", census_json(t.component_sizes)},
                      {"degrees", census_json(t.degrees)},
                      {"universality", t.universality},
                      {"witness_fraction", t.witness_fraction}});
    }
    j["records"] = std::move(recs);
  }
  return j;
}

Json basis_json(const BasisResult& r) {
  return {{"schema", "drawable.basis/1"},
          {"f", r.f},
          {"side", basis_side_name(r.side)},
          {"witnesses", r.witnesses},
          {"embeddings", r.embeddings},
          {"surviving", r.surviving},
          {"complete", r.complete}};
}

Json ramsey_json(const RamseyVerdict& v) {
  Json j = {{"holds", v.holds}, {"colourings", v.colourings}};
  if (!v.holds) j["counterexample"] = v.counterexample;
  return j;
}

Json kakutani_json(const KakutaniReport& r, const ProbSeq& p, const ProbSeq& q) {
  return {{"schema", "drawable.kakutani/1"},
          {"p", p.text()},
          {"q", q.text()},
          {"verdict", verdict_name(r.verdict)},
          {"partial_sum", r.partial_sum},
          {"N", r.N}};
}

std::string edge_list(const Graph& g) {
  std::string out = "n " + std::to_string(g.order()) + "\n";
  for (const auto& e : g.edges()) out += std::to_string(e.a) + " " + std::to_string(e.b) + "\n";
  return out;
}

Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::optional<Vertex> n;
  std::vector<Pair> e;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "n") {
      Vertex v;
      if (n || !(ls >> v)) throw ParseError("edge list: bad header at line " + std::to_string(lineno));
      n = v;
      continue;
    }
    if (!n) throw ParseError("edge list: missing 'n <count>' header");
    Vertex a = 0, b = 0;
    auto r = std::from_chars(first.data(), first.data() + first.size(), a);
    if (r.ec != std::errc() || r.ptr != first.data() + first.size() || !(ls >> b)) {
      throw ParseError("edge list: bad edge at line " + std::to_string(lineno));
    }
    e.push_back(make_pair(a, b));
  }
  if (!n) throw ParseError("edge list: missing 'n <count>' header");
  return Graph(*n, std::move(e));
}

std::string dot(const Graph& g, const std::string& name) {
  std::string out = "graph " + name + " {\n";
  for (Vertex v = 0; v < g.order(); ++v) out += "  " + std::to_string(v) + ";\n";
  for (const auto& e : g.edges())
    out += "  " + std::to_string(e.a) + " -- " + std::to_string(e.b) + ";\n";
  return out + "}\n";
}

Graph parse_graph(const std::string& text) {
  if (text.empty()) throw ParseError("empty graph literal");
  if (text[0] == '@') return parse_edge_list(read_file(text.substr(1)));
  if (text.find(':') != std::string::npos) return graph_from_code(text);
  Vertex n = 0;
  const char* begin = text.data() + 1;
  const char* end = text.data() + text.size();
  auto r = std::from_chars(begin, end, n);
  if (r.ec != std::errc() || r.ptr != end) throw ParseError("bad graph literal '" + text + "'");
  switch (text[0]) {
    case 'K': return clique(n);
    case 'A': return anticlique(n);
    case 'P': return path_graph(n);
    case 'C': return cycle_graph(n);
    case 'S': return star_graph(n);
    default: throw ParseError("bad graph literal '" + text + "'");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << data)) throw IoError("cannot write " + path);
}

}  // namespace drawable

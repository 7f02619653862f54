#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "json.hpp"

#include "drawable/constructions.hpp"
#include "drawable/graph.hpp"
#include "drawable/measure.hpp"
#include "drawable/probseq.hpp"
#include "drawable/sampler.hpp"
#include "drawable/schedule.hpp"

namespace drawable {

using Json = nlohmann::json;

std::uint64_t fnv1a(std::string_view data);
std::string hex64(std::uint64_t x);
inline std::string digest_of(std::string_view data) { return hex64(fnv1a(data)); }

Json probability_json(const Probability& p);
Probability probability_from_json(const Json& j);

Json schedule_json(const EdgeSchedule& s);
EdgeSchedule schedule_from_json(const Json& j);
std::string schedule_digest(const EdgeSchedule& s);

Json class_json(const ProbSeq& seq);
Json report_json(const SampleReport& r, bool with_records = false);
Json basis_json(const BasisResult& r);
Json ramsey_json(const RamseyVerdict& v);
Json kakutani_json(const KakutaniReport& r, const ProbSeq& p, const ProbSeq& q);
Json census_json(const DegreeCensus& c);

// "n <order>" header followed by one "a b" line per edge.
std::string edge_list(const Graph& g);
Graph parse_edge_list(const std::string& text);
std::string dot(const Graph& g, const std::string& name = "G");

// K<n> | A<n> | P<n> | C<n> | S<leaves> | <n>:<hex> | @<edge-list file>
Graph parse_graph(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& data);

}  // namespace drawable

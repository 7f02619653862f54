#include "drawable/cli.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "drawable/constructions.hpp"
#include "drawable/error.hpp"
#include "drawable/io.hpp"
#include "drawable/measure.hpp"
#include "drawable/sampler.hpp"

namespace drawable {

std::vector<std::string> split_top(const std::string& text, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : text) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  return out;
}

namespace {

unsigned to_unsigned(const std::string& s, const std::string& what) {
  unsigned v = 0;
  auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size()) {
    throw ParseError("bad " + what + " '" + s + "'");
  }
  return v;
}

std::vector<Graph> graph_list(const std::vector<std::string>& items) {
  std::vector<Graph> out;
  for (const auto& s : items) out.push_back(parse_graph(s));
  return out;
}

std::vector<std::uint64_t> index_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  if (text.empty()) return out;
  for (const auto& s : split_top(text)) out.push_back(to_unsigned(s, "index"));
  return out;
}

DegreeDemand parse_demand(const std::string& text) {
  DegreeDemand d;
  if (text.empty()) return d;
  for (const auto& item : split_top(text)) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ParseError("demand entries look like degree:count");
    d[to_unsigned(item.substr(0, colon), "degree")] = to_unsigned(item.substr(colon + 1), "count");
  }
  return d;
}

Json graph_json(const Graph& g) {
  Json e = Json::array();
  for (const auto& p : g.edges()) e.push_back({p.a, p.b});
  return {{"order", g.order()}, {"edges", std::move(e)}};
}

struct Outcome {
  std::string text;
  std::map<std::string, std::string> files;  // path -> contents digest
  std::optional<std::uint64_t> seed;
  std::vector<std::string> extra_args;  // appended to the recorded command line
};

}  // namespace

EdgeSchedule build_schedule(const std::string& spec, Vertex vertex_budget,
                            const ScheduleConfig& cfg) {
  const auto open = spec.find('(');
  if (open == std::string::npos || spec.back() != ')') {
    throw ParseError("schedule spec looks like builder(args), got '" + spec + "'");
  }
  const std::string name = spec.substr(0, open);
  const auto args = split_top(spec.substr(open + 1, spec.size() - open - 2));
  auto need = [&](std::size_t lo, std::size_t hi) {
    if (args.size() < lo || args.size() > hi) {
      throw ParseError("wrong argument count for schedule builder '" + name + "'");
    }
  };
  if (name == "identity") {
    need(1, 1);
    return identity_schedule(ProbSeq::parse(args[0]), vertex_budget);
  }
  if (name == "replicate") {
    need(1, 1);
    return replicate_schedule(GraphOracle::parse(args[0]), vertex_budget);
  }
  if (name == "ufin" || name == "suspended") {
    need(1, 2);
    const unsigned s = args.size() > 1 ? to_unsigned(args[1], "catalog size") : 3;
    const auto seq = ProbSeq::parse(args[0]);
    return name == "ufin" ? ufin_schedule(seq, vertex_budget, s, cfg)
                          : suspended_schedule(seq, vertex_budget, s, cfg);
  }
  if (name == "closure") {
    need(2, 64);
    return closure_schedule(graph_list({args.begin() + 1, args.end()}), ProbSeq::parse(args[0]),
                            vertex_budget, cfg);
  }
  if (name == "star") {
    need(2, 2);
    return star_schedule(ProbSeq::parse(args[0]), to_unsigned(args[1], "star count"),
                         vertex_budget, cfg);
  }
  if (name == "theta") {
    need(1, 1);
    return theta_schedule(to_unsigned(args[0], "depth"), vertex_budget, cfg);
  }
  if (name == "sum") {
    need(2, 64);
    const Graph h = parse_graph(args[0]);
    const auto seq = ProbSeq::parse(args[1]);
    if (vertex_budget < h.order()) throw PreconditionError("vertex budget below #H");
    const Vertex ng = vertex_budget - h.order();
    const auto g_seq = sum_g_descriptor(seq);
    const EdgeSchedule g = args.size() == 2
                               ? identity_schedule(g_seq, ng)
                               : closure_schedule(graph_list({args.begin() + 2, args.end()}),
                                                  g_seq, ng, cfg);
    return sum_with_fixed_schedule(g, h, seq, cfg);
  }
  throw ParseError("unknown schedule builder '" + name + "'");
}

namespace {

void add_config(CLI::App* sub, ScheduleConfig& cfg, bool& lenient) {
  sub->add_option("--epsilon", cfg.epsilon, "summability budget of explicit constructions");
  sub->add_option("--target", cfg.divergence_target, "per-family divergence target");
  sub->add_option("--summable-budget", cfg.summable_budget, "budget for split_summable");
  sub->add_option("--truncation", cfg.truncation, "source indices considered (0 = automatic)");
  sub->add_flag("--lenient", lenient, "record unmet targets instead of failing");
}

NullCover load_cover(const std::string& path) { return NullCover::parse(read_file(path)); }

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
             bool write_manifest);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        bool write_manifest) {
  try {
    return dispatch(args, out, err, write_manifest);
  } catch (const Error& e) {
    err << Json{{"schema", "drawable.error/1"}, {"kind", e.kind()}, {"message", e.what()}}.dump()
        << "\n";
    return 2;
  } catch (const Json::exception& e) {
    err << Json{{"schema", "drawable.error/1"}, {"kind", "parse"}, {"message", e.what()}}.dump()
        << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << Json{{"schema", "drawable.error/1"}, {"kind", "internal"}, {"message", e.what()}}.dump()
        << "\n";
    return 3;
  }
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
             bool write_manifest) {
  CLI::App app{"Schedules, samplers and finite witnesses for drawable random graphs"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string manifest = "drawable-manifest.json";
  bool no_manifest = false;
  app.add_option("--manifest", manifest, "where the run manifest is written");
  app.add_flag("--no-manifest", no_manifest, "skip writing the run manifest");

  std::string seq_a, seq_b, spec, graph_text, oracle_text = "ufin:4", targets_text, out_path,
                                                   cover_path, support_text, x_bits, ds_text,
                                                   analyzers_text = "deviations",
                                                   edges_path, dot_path, name, demand_text,
                                                   bits_text, seeds_text = "K1", format = "edges";
  unsigned k = 1, s = 2, universality = 0, witness = 0, catalog = 3, components_n = 10;
  std::uint64_t N = 1000, n = 0, trials = 1, budget = 0, truncation = 0, max_members = 64;
  std::optional<std::uint64_t> seed;
  bool verify = false, components_flag = false, records = false, lenient = false, prime = false;
  ScheduleConfig cfg;

  auto* classify_cmd = app.add_subcommand("classify", "sequence classes");
  classify_cmd->add_option("seq", seq_a)->required();

  auto* sums_cmd = app.add_subcommand("sums", "partial sums of p^k and (1-p)^k");
  sums_cmd->add_option("seq", seq_a)->required();
  sums_cmd->add_option("--k", k);
  sums_cmd->add_option("--n", N);

  auto* schedule_cmd = app.add_subcommand("schedule", "build a schedule with its audit");
  schedule_cmd->add_option("spec", spec)->required();
  schedule_cmd->add_option("--n", n, "vertex budget")->required();
  schedule_cmd->add_option("--out", out_path);
  add_config(schedule_cmd, cfg, lenient);

  auto* sample_cmd = app.add_subcommand("sample", "Monte-Carlo trials over a schedule");
  sample_cmd->add_option("--schedule", spec)->required();
  sample_cmd->add_option("--n", n, "vertices sampled")->required();
  sample_cmd->add_option("--budget", budget, "schedule vertex budget (default --n)");
  sample_cmd->add_option("--trials", trials);
  sample_cmd->add_option("--seed", seed);
  sample_cmd->add_option("--analyzers", analyzers_text);
  sample_cmd->add_option("--universality", universality);
  sample_cmd->add_option("--witness", witness);
  sample_cmd->add_option("--edges", edges_path, "edge list of trial 0");
  sample_cmd->add_option("--dot", dot_path, "DOT rendering of trial 0");
  sample_cmd->add_flag("--records", records);
  add_config(sample_cmd, cfg, lenient);

  auto* analyze_cmd = app.add_subcommand("analyze", "structural report on a graph");
  analyze_cmd->add_option("graph", graph_text)->required();
  analyze_cmd->add_option("--ds", ds_text, "comma separated candidate graphs");
  analyze_cmd->add_flag("--components", components_flag);
  analyze_cmd->add_option("--universality", universality);
  analyze_cmd->add_option("--witness", witness);

  auto* ramsey_cmd = app.add_subcommand("ramsey", "partition graph for H and k colours");
  ramsey_cmd->add_option("H", graph_text)->required();
  ramsey_cmd->add_option("k", k)->required();
  ramsey_cmd->add_flag("--verify", verify);

  auto* basis_cmd = app.add_subcommand("basis-extract", "U_fin or complement extraction");
  basis_cmd->add_option("--oracle", oracle_text);
  basis_cmd->add_option("--budget", budget)->required();
  basis_cmd->add_option("--targets", targets_text)->required();

  auto* kakutani_cmd = app.add_subcommand("kakutani", "equivalence or singularity of mu_p, mu_q");
  kakutani_cmd->add_option("p", seq_a)->required();
  kakutani_cmd->add_option("q", seq_b)->required();
  kakutani_cmd->add_option("--n", N);

  auto* cover_cmd = app.add_subcommand("cover", "null cover operations");
  cover_cmd->require_subcommand(1);
  auto* mass_cmd = cover_cmd->add_subcommand("mass");
  mass_cmd->add_option("seq", seq_a)->required();
  mass_cmd->add_option("--cover", cover_path)->required();
  auto* translate_cmd = cover_cmd->add_subcommand("translate");
  translate_cmd->add_option("seq", seq_a)->required();
  translate_cmd->add_option("--cover", cover_path)->required();
  translate_cmd->add_option("--support", support_text);
  translate_cmd->add_option("--out", out_path);
  auto* tail_cmd = cover_cmd->add_subcommand("tail");
  tail_cmd->add_option("seq", seq_a)->required();
  tail_cmd->add_option("--cover", cover_path)->required();
  tail_cmd->add_option("--s", s);
  tail_cmd->add_option("--out", out_path);
  auto* hits_cmd = cover_cmd->add_subcommand("hits");
  hits_cmd->add_option("--cover", cover_path)->required();
  hits_cmd->add_option("--x", x_bits)->required();
  hits_cmd->add_option("--n", N);

  auto* construct_cmd = app.add_subcommand("construct", "deterministic constructions");
  construct_cmd->add_option("name", name)->required()->check(CLI::IsMember(
      {"ufin-prefix", "caterpillar", "star-of-stars", "v-tree", "theta", "closure", "un-prefix"}));
  construct_cmd->add_option("--components", components_n);
  construct_cmd->add_option("--catalog", catalog);
  construct_cmd->add_option("--demand", demand_text);
  construct_cmd->add_option("--truncation", truncation);
  construct_cmd->add_option("--n", n);
  construct_cmd->add_flag("--prime", prime);
  construct_cmd->add_option("--bits", bits_text);
  construct_cmd->add_option("--seeds", seeds_text);
  construct_cmd->add_option("--max-members", max_members);
  construct_cmd->add_option("--max-vertices", budget);
  construct_cmd->add_option("--format", format)->check(CLI::IsMember({"edges", "dot", "json"}));

  auto* replay_cmd = app.add_subcommand("replay", "re-run a manifest and compare digests");
  replay_cmd->add_option("manifest", out_path)->required();

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    throw ParseError(std::string("usage: ") + e.what());
  }
  cfg.strict = !lenient;

  Outcome res;
  auto emit = [&](const Json& j) { res.text = j.dump(2) + "\n"; };
  auto save = [&](const std::string& path, const std::string& data) {
    write_file(path, data);
    res.files[path] = digest_of(data);
  };
  auto render = [&](const Graph& g) {
    if (format == "dot") res.text = dot(g);
    else if (format == "json") res.text = graph_json(g).dump(2) + "\n";
    else res.text = edge_list(g);
  };

  if (*classify_cmd) {
    emit(class_json(ProbSeq::parse(seq_a)));
  } else if (*sums_cmd) {
    const auto seq = ProbSeq::parse(seq_a);
    const auto [p, q] = partial_sums(seq, k, N);
    Json j{{"schema", "drawable.sums/1"}, {"sequence", seq.text()}, {"k", k}, {"N", N},
           {"sum_p", p}, {"sum_q", q}};
    if (k == 1) {
      if (auto v = symbolic_sum(seq, false)) j["closed_form_p"] = *v;
      if (auto v = symbolic_sum(seq, true)) j["closed_form_q"] = *v;
    }
    emit(j);
  } else if (*schedule_cmd) {
    const auto sched = build_schedule(spec, static_cast<Vertex>(n), cfg);
    Json j = schedule_json(sched);
    if (!out_path.empty()) {
      save(out_path, j.dump() + "\n");
      emit({{"schema", "drawable.schedule-summary/1"}, {"builder", sched.builder},
            {"digest", schedule_digest(sched)}, {"budget", sched.budget},
            {"shortfalls", sched.shortfalls}, {"out", out_path}});
    } else {
      emit(j);
    }
  } else if (*sample_cmd) {
    if (!seed) {
      seed = (static_cast<std::uint64_t>(std::random_device{}()) << 32) ^ std::random_device{}();
      res.extra_args = {"--seed", std::to_string(*seed)};
    }
    res.seed = seed;
    const auto sched = build_schedule(spec, static_cast<Vertex>(budget ? budget : n), cfg);
    HarnessOptions opt;
    for (const auto& a : split_top(analyzers_text)) opt.analyzers.push_back(parse_analyzer(a));
    if (universality) opt.universality_max = universality;
    if (witness) opt.witness_size = witness;
    const auto rep = trial_harness(sched, static_cast<Vertex>(n), trials, opt, *seed);
    if (!edges_path.empty() || !dot_path.empty()) {
      const Graph g = sample_prefix(sched, static_cast<Vertex>(n), trial_seed(*seed, 0));
      if (!edges_path.empty()) save(edges_path, edge_list(g));
      if (!dot_path.empty()) save(dot_path, dot(g));
    }
    emit(report_json(rep, records));
  } else if (*analyze_cmd) {
    const Graph g = parse_graph(graph_text);
    Json j{{"schema", "drawable.analyze/1"}, {"order", g.order()}, {"size", g.size()},
           {"census", census_json(degree_census(g))}};
    if (components_flag) {
      Json sizes = Json::array();
      for (const auto& c : components(g)) sizes.push_back(c.size());
      j["components"] = std::move(sizes);
    }
    if (universality) {
      const auto scan = weak_universality_scan(g, universality);
      j["universality"] = {{"level", scan.level},
                           {"first_missing", scan.first_missing
                                                 ? Json(graph_label(*scan.first_missing))
                                                 : Json(nullptr)}};
    }
    if (witness) {
      const auto w = rado_witness_stats(g, witness);
      j["witness"] = {{"pairs", w.pairs}, {"witnessed", w.witnessed}, {"fraction", w.fraction()}};
    }
    if (!ds_text.empty()) {
      const auto r = ds_recovery(g, graph_list(split_top(ds_text)));
      j["ds"] = {{"index", r.index}, {"distances", r.distances},
                 {"modal", census_json(r.modal)}};
    }
    emit(j);
  } else if (*ramsey_cmd) {
    const Graph h = parse_graph(graph_text);
    const Graph x = ramsey_graph(h, k);
    Json j{{"schema", "drawable.ramsey/1"}, {"H", graph_label(h)}, {"k", k},
           {"graph", graph_json(x)}};
    if (verify) j["verify"] = ramsey_json(verify_ramsey(x, h, k));
    emit(j);
  } else if (*basis_cmd) {
    const auto r = basis_extract(GraphOracle::parse(oracle_text), static_cast<Vertex>(budget),
                                 graph_list(split_top(targets_text)));
    Json j = basis_json(r);
    j["oracle"] = oracle_text;
    emit(j);
  } else if (*kakutani_cmd) {
    const auto p = ProbSeq::parse(seq_a), q = ProbSeq::parse(seq_b);
    emit(kakutani_json(kakutani(p, q, N), p, q));
  } else if (*mass_cmd) {
    const auto seq = ProbSeq::parse(seq_a);
    const auto cover = load_cover(cover_path);
    emit({{"schema", "drawable.cover-mass/1"}, {"sequence", seq.text()},
          {"members", cover.member_count()}, {"mass", cover_mass(cover, seq)}});
  } else if (*translate_cmd) {
    const auto seq = ProbSeq::parse(seq_a);
    const auto cover = load_cover(cover_path);
    const auto t = translate_cover(cover, index_list(support_text), seq);
    if (!out_path.empty()) save(out_path, t.cover.text());
    emit({{"schema", "drawable.cover-translate/1"}, {"mass", cover_mass(cover, seq)},
          {"translated_mass", cover_mass(t.cover, seq)}, {"bound_factor", t.bound_factor},
          {"members", t.cover.member_count()}});
  } else if (*tail_cmd) {
    const auto seq = ProbSeq::parse(seq_a);
    const auto t = tail_closure(load_cover(cover_path), s, seq);
    if (!out_path.empty()) save(out_path, t.cover.text());
    emit({{"schema", "drawable.cover-tail/1"}, {"mass", cover_mass(t.cover, seq)},
          {"mass_bound", t.mass_bound}, {"members", t.cover.member_count()}});
  } else if (*hits_cmd) {
    const auto cover = load_cover(cover_path);
    emit({{"schema", "drawable.cover-hits/1"}, {"N", N}, {"hits", hits(cover, x_bits, N)}});
  } else if (*construct_cmd) {
    if (name == "ufin-prefix") {
      render(ufin_prefix(components_n, catalog));
    } else if (name == "caterpillar") {
      const auto c = caterpillar_tree(parse_demand(demand_text), static_cast<Vertex>(truncation));
      if (format == "json") {
        res.text = Json{{"graph", graph_json(c.tree)},
                        {"spine_ends", c.spine_ends},
                        {"intended", census_json(c.intended)},
                        {"census", census_json(degree_census(c.tree))}}
                       .dump(2) + "\n";
      } else {
        render(c.tree);
      }
    } else if (name == "star-of-stars") {
      render(star_of_stars(parse_demand(demand_text), static_cast<Vertex>(truncation)));
    } else if (name == "v-tree") {
      render(prime ? v_tree_prime(static_cast<unsigned>(n)) : v_tree(static_cast<unsigned>(n)));
    } else if (name == "theta") {
      std::vector<bool> bits;
      for (char c : bits_text) {
        if (c != '0' && c != '1') throw ParseError("theta bits are 0/1");
        bits.push_back(c == '1');
      }
      render(theta_graph(bits));
    } else {
      const auto fam = closure(graph_list(split_top(seeds_text)),
                               {max_members, static_cast<Vertex>(budget ? budget : 4)});
      if (name == "un-prefix") {
        render(un_prefix(fam, components_n));
      } else {
        Json members = Json::array();
        for (const auto& g : fam.members) members.push_back(graph_label(g));
        res.text = Json{{"schema", "drawable.closure/1"}, {"members", members},
                        {"keys", fam.keys}, {"exhausted", fam.exhausted}}
                       .dump(2) + "\n";
      }
    }
  } else if (*replay_cmd) {
    const Json m = Json::parse(read_file(out_path));
    if (m.value("schema", "") != "drawable.manifest/1") throw ParseError("not a run manifest");
    std::ostringstream o, e;
    const int status = run(m.at("args").get<std::vector<std::string>>(), o, e, false);
    const std::string digest = digest_of(o.str());
    const bool match = status == 0 && digest == m.at("outputs").at("stdout").get<std::string>();
    emit({{"schema", "drawable.replay/1"}, {"manifest", out_path}, {"match", match},
          {"expected", m.at("outputs").at("stdout")}, {"actual", digest}});
    out << res.text;
    if (!e.str().empty()) err << e.str();
    return match ? 0 : 1;
  }

  out << res.text;
  if (write_manifest && !no_manifest) {
    std::vector<std::string> recorded;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i] == "--manifest") {
        ++i;
        continue;
      }
      if (args[i].rfind("--manifest=", 0) == 0) continue;
      recorded.push_back(args[i]);
    }
    recorded.insert(recorded.end(), res.extra_args.begin(), res.extra_args.end());
    Json outputs{{"stdout", digest_of(res.text)}};
    for (const auto& [path, d] : res.files) outputs[path] = d;
    Json mj{{"schema", "drawable.manifest/1"},
            {"command", app.get_subcommands().front()->get_name()},
            {"args", recorded},
            {"seed", res.seed ? Json(*res.seed) : Json(nullptr)},
            {"version", kVersion},
            {"outputs", outputs}};
    write_file(manifest, mj.dump(2) + "\n");
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return run(args, out, err, true);
}

}  // namespace drawable

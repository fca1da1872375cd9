#include "cli.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rtlab/constructions.hpp"
#include "rtlab/drc.hpp"
#include "rtlab/io.hpp"
#include "rtlab/report.hpp"
#include "rtlab/sphere.hpp"
#include "rtlab/verifiers.hpp"

namespace rtlab::cli {

using nlohmann::json;

namespace {

/// Flags named after params.json keys. Values are parsed as JSON scalars
/// and merged over the file.
class KeyFlags {
 public:
  void attach(CLI::App* app, std::initializer_list<const char*> keys) {
    for (const char* key : keys) app->add_option(std::string("--") + key, values_[key], "overrides params key");
  }
  json patch() const {
    json j = json::object();
    for (const auto& [k, v] : values_) {
      if (v.empty()) continue;
      try {
        j[k] = json::parse(v);
      } catch (const json::parse_error&) {
        j[k] = v;
      }
    }
    return j;
  }

 private:
  std::map<std::string, std::string> values_;
};

const std::initializer_list<const char*> kConstructionKeys = {
    "r", "z", "alpha", "beta", "epsilon", "k", "theta", "u", "blowup_t", "gamma", "pattern_cap", "seed"};
const std::initializer_list<const char*> kDrcKeys = {"a", "m", "n",  "r", "t",       "s",   "delta",
                                                     "epsilon", "beta", "N", "w", "retries", "codegree_threshold", "seed"};

SearchBudget budget_from(std::optional<std::uint64_t> nodes) {
  SearchBudget b;
  if (nodes) b.max_nodes = *nodes;
  return b;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

std::string read_first_token(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open " + path);
  std::string tag, r;
  f >> tag >> r;
  if (tag != "HG") throw ParseError("missing HG header in " + path);
  return r;
}

int verdict_code(Verdict v) {
  switch (v) {
    case Verdict::holds: return kExitHolds;
    case Verdict::violated: return kExitViolated;
    case Verdict::budget_exceeded: return kExitBudget;
  }
  return kExitInput;
}

// ---------------------------------------------------------------- construct

struct ConstructArgs {
  std::string type, params, out, info, partition, write_partition, input;
  bool sampled = false;
  std::size_t vertex_cap = 5000, samples = 200'000;
  std::optional<std::uint64_t> budget;
  int q = 2, t = 3, ell = 2;
  std::string a;
  KeyFlags keys;
};

ConstructionParams resolve(const std::string& file, const KeyFlags& keys) {
  ConstructionParams p;
  if (!file.empty()) merge_json(p, load_json(file));
  merge_json(p, keys.patch());
  p.validate();
  return p;
}

SpherePartition partition_for(const ConstructionParams& p, const std::string& file) {
  if (file.empty()) return build_partition(p.k, p.z, p.theta, derive_seed(p.seed, "partition"));
  std::ifstream in(file);
  if (!in) throw ParseError("cannot open " + file);
  SpherePartition part = read_partition(in);
  if (part.k != p.k || part.z != p.z) throw std::invalid_argument("partition file disagrees with k or z");
  return part;
}

int do_construct(const ConstructArgs& a, std::ostream& out) {
  const ConstructionParams p = resolve(a.params, a.keys);
  SphereHypergraphOptions opts;
  opts.sampled = a.sampled;
  opts.vertex_cap = a.vertex_cap;
  opts.samples = a.samples;
  opts.budget = budget_from(a.budget);
  json summary{{"type", a.type}, {"params", to_json(p)}};

  auto keep_partition = [&](const SpherePartition& part) {
    if (a.write_partition.empty()) return;
    std::ostringstream s;
    write_partition(s, part);
    write_text(a.write_partition, s.str());
  };

  if (a.type == "be") {
    const SpherePartition part = partition_for(p, a.partition);
    keep_partition(part);
    const SimpleGraph g = bollobas_erdos(part, p.epsilon, p.k);
    save_graph(a.out, g);
    summary["vertices"] = g.num_vertices();
    summary["edges"] = g.num_edges();
  } else if (a.type == "sphere" || a.type == "full") {
    const SpherePartition part = partition_for(p, a.partition);
    keep_partition(part);
    Hypergraph h;
    ConstructionInfo info;
    if (a.type == "sphere") {
      SphereHypergraph s = sphere_hypergraph(p, part, opts);
      h = std::move(s.hypergraph);
      info = s.info;
    } else {
      FullConstruction f = full_construction(p, part, opts);
      h = std::move(f.hypergraph);
      info = f.info;
    }
    save_hypergraph(a.out, h);
    if (!a.info.empty()) write_text(a.info, to_json(info).dump(2) + "\n");
    summary["vertices"] = h.num_vertices();
    summary["edges"] = h.num_edges();
  } else if (a.type == "corollary") {
    SimpleGraph g;
    if (!a.input.empty()) {
      g = load_graph(a.input);
    } else {
      const FullConstruction f = full_construction(p, partition_for(p, a.partition), opts);
      g = shadow_first_parts(f.hypergraph, a.ell);
    }
    Rational mix;
    if (a.a.empty()) {
      mix = optimize_a(a.t, a.ell, a.q).a_star;
    } else {
      try {
        const auto slash = a.a.find('/');
        mix = slash == std::string::npos ? Rational(BigInt(a.a))
                                         : Rational(BigInt(a.a.substr(0, slash)), BigInt(a.a.substr(slash + 1)));
      } catch (const std::exception&) {
        throw std::invalid_argument("--a must be a rational p/q");
      }
    }
    const CorollaryGraph c = corollary_graph(g, a.q, a.t, mix, greedy_kfree_provider(a.t), p.seed);
    save_graph(a.out, c.graph);
    summary["a"] = to_string(mix);
    summary["vertices"] = c.graph.num_vertices();
    summary["edges"] = c.graph.num_edges();
    summary["inner_edges"] = c.inner_edges;
  } else {
    throw std::invalid_argument("unknown construction type " + a.type);
  }
  out << summary.dump(2) << '\n';
  return kExitHolds;
}

// ------------------------------------------------------------------ verify

struct VerifyArgs {
  std::string check, file, info, witness, format = "json";
  int s = 4, t = 2, ell = 9;
  std::optional<std::size_t> bound;
  std::optional<std::uint64_t> budget;
};

int emit_pattern(const PatternResult& res, const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  err << "verdict=" << to_string(res.verdict) << " nodes=" << res.nodes << '\n';
  if (res.witness) {
    const std::string text = to_json(*res.witness).dump() + "\n";
    out << text;
    if (!a.witness.empty()) write_text(a.witness, text);
  }
  return verdict_code(res.verdict);
}

int do_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  const SearchBudget budget = budget_from(a.budget);
  const bool graph_file = read_first_token(a.file) == "2";

  if (a.check == "clique") {
    const SimpleGraph g = graph_file ? load_graph(a.file) : shadow(load_hypergraph(a.file));
    return emit_pattern(find_clique(g, a.s, budget), a, out, err);
  }
  if (a.check == "alpha_t") {
    BoundResult b;
    if (graph_file)
      b = alpha_t(load_graph(a.file), a.t, budget);
    else
      b = hyper_independence(load_hypergraph(a.file), budget);
    json j{{"lower", b.lower}, {"upper", b.upper}, {"exact", b.exact}, {"nodes", b.nodes}, {"witness", b.witness}};
    out << j.dump() << '\n';
    // With --bound B the property is "value < B".
    if (!a.bound) return b.exact ? kExitHolds : kExitBudget;
    if (b.lower >= *a.bound) return kExitViolated;
    return b.upper < *a.bound ? kExitHolds : kExitBudget;
  }
  if (a.check == "density") {
    VerificationReport rep;
    json meta = json::object();
    if (graph_file) {
      rep = density_report(load_graph(a.file));
    } else if (!a.info.empty()) {
      const ConstructionInfo info = info_from_json(load_json(a.info));
      rep = density_report(load_hypergraph(a.file), info);
      meta = to_json(info.params);
    } else {
      rep = density_report(shadow(load_hypergraph(a.file)));
    }
    emit_report(out, rep, parse_report_format(a.format), meta);
    return verdict_code(rep.verdict);
  }
  if (graph_file) throw std::invalid_argument(a.check + " needs a hypergraph file");
  const Hypergraph h = load_hypergraph(a.file);
  if (a.check == "tk") return emit_pattern(find_tk(h, a.s, budget), a, out, err);
  if (a.check == "tkf") return emit_pattern(find_tkf_core(h, a.s, budget), a, out, err);
  if (a.check == "split-core") return emit_pattern(scan_split_core(h, budget), a, out, err);
  if (a.check == "sparse") return emit_pattern(scan_sparse_patterns(h, a.ell, budget), a, out, err);
  throw std::invalid_argument("unknown check " + a.check);
}

// ------------------------------------------------------------------ report

struct ReportArgs {
  std::string file, info, from, out, format = "csv";
};

int do_report(const ReportArgs& a, std::ostream& out) {
  VerificationReport rep;
  json meta = json::object();
  if (!a.from.empty()) {
    const json j = load_json(a.from);
    rep = report_from_json(j);
    if (j.contains("meta")) meta = j.at("meta");
  } else if (a.file.empty()) {
    throw std::invalid_argument("report needs FILE or --from");
  } else if (read_first_token(a.file) == "2") {
    rep = density_report(load_graph(a.file));
  } else {
    if (a.info.empty()) throw std::invalid_argument("hypergraph reports need --info");
    const ConstructionInfo info = info_from_json(load_json(a.info));
    rep = density_report(load_hypergraph(a.file), info);
    meta = to_json(info.params);
    meta["type"] = info.type;
  }
  std::ostringstream s;
  emit_report(s, rep, parse_report_format(a.format), meta);
  if (a.out.empty())
    out << s.str();
  else
    write_text(a.out, s.str());
  return verdict_code(rep.verdict);
}

// --------------------------------------------------------------------- drc

struct DrcArgs {
  std::string params, file;
  bool gate = false;
  KeyFlags keys;
};

DrcParams resolve_drc(const DrcArgs& a, std::uint64_t& seed, DrcParams p) {
  json merged = a.params.empty() ? json::object() : load_json(a.params);
  const json patch = a.keys.patch();
  for (const auto& [k, v] : patch.items()) merged[k] = v;
  merge_json(p, merged);
  seed = merged.value("seed", std::uint64_t{1});
  return p;
}

int do_drc(const std::string& mode, const DrcArgs& a, std::ostream& out) {
  std::uint64_t seed = 1;
  if (mode == "find-set") {
    const DrcParams p = resolve_drc(a, seed, DrcParams{});
    const DrcResult r = drc_find_set(load_graph(a.file), p, seed, true);
    out << json{{"success", r.success}, {"set", r.set}, {"trials", r.trials}, {"failure", r.failure}}.dump() << '\n';
    return r.success ? kExitHolds : kExitViolated;
  }
  const Hypergraph h = load_hypergraph(a.file);
  if (mode == "find-f") {
    FSearchOptions opts;
    opts.drc = resolve_drc(a, seed, opts.drc);
    opts.seed = seed;
    opts.feasibility_gate = a.gate;
    const FResult r = find_f_witness(h, opts);
    json j{{"trials", r.trials}, {"failed_stage", r.failed_stage}};
    if (r.witness) {
      j["x"] = r.witness->x;
      j["y"] = r.witness->y;
      j["z"] = r.witness->z;
      j["edges"] = r.witness->edges;
      j["tk6"] = r.witness->tk6 ? to_json(*r.witness->tk6) : json(nullptr);
    }
    out << j.dump() << '\n';
    return r.witness ? kExitHolds : kExitViolated;
  }
  const DrcParams p = resolve_drc(a, seed, DrcParams{});
  const TkfResult r = find_tkf5_tk4(h, p.codegree_threshold, seed);
  json j{{"failure", r.failure}, {"x", r.x}, {"y", r.y}, {"codegree", r.codegree}};
  j["tkf5"] = r.tkf5 ? to_json(*r.tkf5) : json(nullptr);
  j["tk4"] = r.tk4 ? to_json(*r.tk4) : json(nullptr);
  out << j.dump() << '\n';
  return r.tkf5 && r.tk4 ? kExitHolds : kExitViolated;
}

// ------------------------------------------------------------------ sphere

struct SphereArgs {
  int k = 10, t_max = 3;
  std::size_t z = 20, draws = 100'000, refinements = 100;
  double theta = 0.1, alpha = 0.3, beta = 0.3, s = 0, gamma = 0.1;
  std::uint64_t seed = 1;
  std::string out;
};

int do_sphere(const std::string& mode, const SphereArgs& a, std::ostream& out) {
  if (mode == "partition") {
    const SpherePartition p = build_partition(a.k, a.z, a.theta, a.seed);
    std::ostringstream s;
    write_partition(s, p);
    if (a.out.empty())
      out << s.str();
    else
      write_text(a.out, s.str());
    return kExitHolds;
  }
  if (mode == "eps-k") {
    const EpsK e = find_eps_k(a.alpha, a.beta, a.t_max);
    json p2 = json::array();
    for (const auto& c : e.p2)
      p2.push_back({{"t", c.t}, {"estimate", c.estimate}, {"required", c.required}, {"holds", c.holds}});
    out << json{{"epsilon", e.epsilon}, {"k", e.k},   {"theta", e.theta}, {"p1_measure", e.p1_measure},
                {"p3_measure", e.p3_measure}, {"p2", p2}}
               .dump()
        << '\n';
    return kExitHolds;
  }
  if (mode == "cap") {
    out << json{{"k", a.k}, {"s", a.s}, {"measure", cap_measure(a.k, a.s)}}.dump() << '\n';
    return kExitHolds;
  }
  Rng rng = derive_rng(a.seed, "cli.p4");
  const P4Search r = p4_search(a.k, a.gamma, a.draws, a.refinements, rng);
  out << json{{"k", a.k}, {"gamma", a.gamma}, {"best_margin", r.best_margin}, {"draws", r.random_draws},
              {"refinements", r.refinements}}
             .dump()
      << '\n';
  return r.best_margin < 0 ? kExitHolds : kExitViolated;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ramsey-Turan constructions and verifiers", "rtlab"};
  app.require_subcommand(1);

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "Build a graph or hypergraph");
  construct->add_option("--type", ca.type, "be | sphere | full | corollary")
      ->required()
      ->check(CLI::IsMember({"be", "sphere", "full", "corollary"}));
  construct->add_option("--params", ca.params, "params.json");
  construct->add_option("--out", ca.out, "output file")->required();
  construct->add_option("--info", ca.info, "construction info JSON (sphere, full)");
  construct->add_option("--partition", ca.partition, "read the sphere partition from a file");
  construct->add_option("--write-partition", ca.write_partition, "save the sphere partition");
  construct->add_flag("--sampled", ca.sampled, "sample edges instead of enumerating");
  construct->add_option("--vertex-cap", ca.vertex_cap);
  construct->add_option("--samples", ca.samples);
  construct->add_option("--budget", ca.budget, "node budget");
  construct->add_option("--input", ca.input, "corollary: base graph (default: shadow of the full construction)");
  construct->add_option("--q", ca.q, "corollary: q");
  construct->add_option("--t", ca.t, "corollary: T classes are K_{t+1}-free");
  construct->add_option("--ell", ca.ell, "corollary: number of parts in the shadow");
  construct->add_option("--a", ca.a, "corollary: mixing ratio p/q (default: optimum)");
  ca.keys.attach(construct, kConstructionKeys);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check a property of a graph or hypergraph");
  verify->add_option("--check", va.check)
      ->required()
      ->check(CLI::IsMember({"clique", "alpha_t", "tk", "tkf", "split-core", "sparse", "density"}));
  verify->add_option("--s", va.s, "pattern size");
  verify->add_option("--t", va.t, "alpha_t: forbidden clique size");
  verify->add_option("--ell", va.ell, "sparse: vertex cap");
  verify->add_option("--bound", va.bound, "alpha_t: property is value < bound");
  verify->add_option("--info", va.info, "density: construction info JSON");
  verify->add_option("--witness", va.witness, "also write the witness here");
  verify->add_option("--format", va.format)->check(CLI::IsMember({"csv", "json"}));
  verify->add_option("--budget", va.budget, "node budget");
  verify->add_option("FILE", va.file)->required();

  ReportArgs ra;
  auto* report = app.add_subcommand("report", "Density report as CSV or JSON");
  report->add_option("FILE", ra.file);
  report->add_option("--info", ra.info, "construction info JSON");
  report->add_option("--from", ra.from, "re-emit a JSON report");
  report->add_option("--format", ra.format)->check(CLI::IsMember({"csv", "json"}));
  report->add_option("--out", ra.out);

  int ot = 3, oell = 2, oq = 2;
  auto* optimize = app.add_subcommand("optimize", "Optimal mixing ratio for the corollary join");
  optimize->add_option("--t", ot)->required();
  optimize->add_option("--ell", oell)->required();
  optimize->add_option("--q", oq)->required();

  DrcArgs da;
  std::string drc_mode;
  auto* drc = app.add_subcommand("drc", "Dependent random choice procedures");
  drc->add_option("MODE", drc_mode)->required()->check(CLI::IsMember({"find-set", "find-f", "find-tkf5"}));
  drc->add_option("FILE", da.file)->required();
  drc->add_option("--params", da.params, "params.json");
  drc->add_flag("--gate", da.gate, "find-f: require the feasibility inequality");
  da.keys.attach(drc, kDrcKeys);

  SphereArgs sa;
  std::string sphere_mode;
  auto* sphere = app.add_subcommand("sphere", "Sphere numerics");
  sphere->add_option("MODE", sphere_mode)->required()->check(CLI::IsMember({"partition", "eps-k", "cap", "p4"}));
  sphere->add_option("--k", sa.k);
  sphere->add_option("--z", sa.z);
  sphere->add_option("--theta", sa.theta);
  sphere->add_option("--seed", sa.seed);
  sphere->add_option("--alpha", sa.alpha);
  sphere->add_option("--beta", sa.beta);
  sphere->add_option("--t-max", sa.t_max);
  sphere->add_option("--s", sa.s, "cap threshold");
  sphere->add_option("--gamma", sa.gamma);
  sphere->add_option("--draws", sa.draws);
  sphere->add_option("--refinements", sa.refinements);
  sphere->add_option("--out", sa.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    err << app.help();
    return kExitInput;
  }

  try {
    if (*construct) return do_construct(ca, out);
    if (*verify) return do_verify(va, out, err);
    if (*report) return do_report(ra, out);
    if (*optimize) {
      const MixingOptimum m = optimize_a(ot, oell, oq);
      out << "a*=" << to_string(m.a_star) << " bound=" << to_string(m.bound) << (m.clamped ? " clamped" : "") << '\n';
      return kExitHolds;
    }
    if (*drc) return do_drc(drc_mode, da, out);
    if (*sphere) return do_sphere(sphere_mode, sa, out);
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace rtlab::cli

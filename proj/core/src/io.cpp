#include "rtlab/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace rtlab {

using nlohmann::json;

namespace {

template <class T>
T read_value(std::istream& in, const char* what) {
  T v{};
  if (!(in >> v)) throw ParseError(std::string("expected ") + what);
  return v;
}

struct Header {
  int r;
  std::size_t n, m;
  int parts;
};

Header read_header(std::istream& in) {
  std::string tag;
  if (!(in >> tag) || tag != "HG") throw ParseError("missing HG header");
  Header h{};
  h.r = read_value<int>(in, "uniformity");
  const auto n = read_value<long long>(in, "vertex count");
  const auto m = read_value<long long>(in, "edge count");
  h.parts = read_value<int>(in, "part count");
  if (h.r < 1 || n < 0 || m < 0 || h.parts < 0) throw ParseError("negative header field");
  h.n = static_cast<std::size_t>(n);
  h.m = static_cast<std::size_t>(m);
  return h;
}

struct Body {
  std::vector<int> labels;
  std::vector<Vertex> flat;
};

Body read_body(std::istream& in, const Header& h) {
  Body b;
  b.labels.resize(h.n);
  for (auto& l : b.labels) {
    l = read_value<int>(in, "part label");
    if (l < -1 || (h.parts > 0 && l >= h.parts) || (h.parts == 0 && l != -1))
      throw ParseError("part label out of range");
  }
  b.flat.reserve(h.m * static_cast<std::size_t>(h.r));
  for (std::size_t e = 0; e < h.m; ++e)
    for (int i = 0; i < h.r; ++i) {
      const auto v = read_value<long long>(in, "edge vertex");
      if (v < 0 || static_cast<std::size_t>(v) >= h.n) throw ParseError("edge vertex out of range");
      const auto x = static_cast<Vertex>(v);
      if (i > 0 && x <= b.flat.back()) throw ParseError("edge vertices must be strictly increasing");
      b.flat.push_back(x);
    }
  std::string extra;
  if (in >> extra) throw ParseError("trailing data after the last edge");
  return b;
}

void write_labels(std::ostream& out, std::span<const int> parts, std::size_t n) {
  for (std::size_t v = 0; v < n; ++v) out << (parts.empty() ? kNoPart : parts[v]) << '\n';
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

}  // namespace

void write_hypergraph(std::ostream& out, const Hypergraph& h) {
  out << "HG " << h.uniformity() << ' ' << h.num_vertices() << ' ' << h.num_edges() << ' '
      << std::max(h.num_parts(), 0) << '\n';
  write_labels(out, h.parts(), h.num_vertices());
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    const auto ed = h.edge(e);
    for (std::size_t i = 0; i < ed.size(); ++i) out << (i ? " " : "") << ed[i];
    out << '\n';
  }
}

Hypergraph read_hypergraph(std::istream& in) {
  const Header h = read_header(in);
  Body b = read_body(in, h);
  try {
    return Hypergraph::from_flat(h.n, h.r, std::move(b.flat), std::move(b.labels), h.parts);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

void write_graph(std::ostream& out, const SimpleGraph& g) {
  out << "HG 2 " << g.num_vertices() << ' ' << g.num_edges() << ' ' << std::max(g.num_parts(), 0) << '\n';
  write_labels(out, g.parts(), g.num_vertices());
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

SimpleGraph read_graph(std::istream& in) {
  const Header h = read_header(in);
  if (h.r != 2) throw ParseError("graph files need r = 2");
  const Body b = read_body(in, h);
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (std::size_t i = 0; i + 1 < b.flat.size(); i += 2) edges.emplace_back(b.flat[i], b.flat[i + 1]);
  SimpleGraph g;
  try {
    g = SimpleGraph::from_edges(h.n, std::move(edges));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  for (std::size_t v = 0; v < h.n; ++v) g.set_part(static_cast<Vertex>(v), b.labels[v]);
  g.set_num_parts(h.parts);
  return g;
}

void save_hypergraph(const std::string& path, const Hypergraph& h) {
  auto out = open_out(path);
  write_hypergraph(out, h);
}

Hypergraph load_hypergraph(const std::string& path) {
  auto in = open_in(path);
  return read_hypergraph(in);
}

void save_graph(const std::string& path, const SimpleGraph& g) {
  auto out = open_out(path);
  write_graph(out, g);
}

SimpleGraph load_graph(const std::string& path) {
  auto in = open_in(path);
  return read_graph(in);
}

void write_partition(std::ostream& out, const SpherePartition& p) {
  const auto flags = out.flags();
  const auto prec = out.precision();
  out << std::setprecision(17);
  out << "SPHERE " << p.k << ' ' << p.z << ' ' << p.seed << ' ' << p.theta << '\n';
  for (const auto& rep : p.reps) {
    const auto c = rep.coords();
    for (std::size_t i = 0; i < c.size(); ++i) out << (i ? " " : "") << c[i];
    out << '\n';
  }
  out.flags(flags);
  out.precision(prec);
}

SpherePartition read_partition(std::istream& in) {
  std::string tag;
  if (!(in >> tag) || tag != "SPHERE") throw ParseError("missing SPHERE header");
  SpherePartition p;
  p.k = read_value<int>(in, "dimension");
  const auto z = read_value<long long>(in, "domain count");
  p.seed = read_value<std::uint64_t>(in, "seed");
  p.theta = read_value<double>(in, "theta");
  if (p.k < 1 || z < 1) throw ParseError("bad SPHERE header");
  p.z = static_cast<std::size_t>(z);
  p.domain_diam_bound = p.theta / 4;
  for (std::size_t i = 0; i < p.z; ++i) {
    std::vector<double> c(static_cast<std::size_t>(p.k) + 1);
    for (auto& x : c) x = read_value<double>(in, "coordinate");
    try {
      // Keep written coordinates bit-exact; renormalize only hand-edited ones.
      double n2 = 0;
      for (double x : c) n2 += x * x;
      p.reps.push_back(std::abs(n2 - 1) <= 1e-12 ? SpherePoint::from_unit(std::move(c))
                                                 : SpherePoint::normalized(std::move(c)));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }
  return p;
}

namespace {

template <class T>
void take(const json& j, const char* key, T& field) {
  if (j.contains(key)) {
    try {
      field = j.at(key).get<T>();
    } catch (const json::exception& e) {
      throw ParseError(std::string("bad value for ") + key + ": " + e.what());
    }
  }
}

void reject_unknown(const json& j, std::initializer_list<const char*> keys) {
  if (!j.is_object()) throw ParseError("parameters must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    bool known = false;
    for (const char* key : keys) known = known || k == key;
    if (!known) throw ParseError("unknown parameter " + k);
  }
}

}  // namespace

json to_json(const ConstructionParams& p) {
  return json{{"r", p.r},         {"z", p.z},         {"alpha", p.alpha},
              {"beta", p.beta},   {"epsilon", p.epsilon}, {"k", p.k},
              {"theta", p.theta}, {"u", p.u},         {"blowup_t", p.blowup_t},
              {"gamma", p.gamma}, {"pattern_cap", p.pattern_cap}, {"seed", p.seed}};
}

void merge_json(ConstructionParams& p, const json& j) {
  reject_unknown(j, {"r", "z", "alpha", "beta", "epsilon", "k", "theta", "u", "blowup_t", "gamma", "pattern_cap",
                     "seed"});
  take(j, "r", p.r);
  take(j, "z", p.z);
  take(j, "alpha", p.alpha);
  take(j, "beta", p.beta);
  take(j, "epsilon", p.epsilon);
  take(j, "k", p.k);
  take(j, "blowup_t", p.blowup_t);
  take(j, "gamma", p.gamma);
  take(j, "seed", p.seed);
  // Derived fields follow their sources unless given explicitly.
  if (j.contains("theta"))
    take(j, "theta", p.theta);
  else if (j.contains("epsilon") || j.contains("k"))
    p.theta = p.epsilon / std::sqrt(static_cast<double>(p.k));
  if (j.contains("u"))
    take(j, "u", p.u);
  else if (j.contains("r"))
    p.u = (p.r + 1) / 2;
  if (j.contains("pattern_cap"))
    take(j, "pattern_cap", p.pattern_cap);
  else if (j.contains("r"))
    p.pattern_cap = p.r * p.r * p.r;
}

json to_json(const DrcParams& p) {
  return json{{"a", p.a},       {"m", p.m},         {"n", p.n},       {"r", p.r},
              {"t", p.t},       {"s", p.s},         {"delta", p.delta}, {"epsilon", p.epsilon},
              {"beta", p.beta}, {"N", p.N},         {"w", p.w},       {"retries", p.retries},
              {"codegree_threshold", p.codegree_threshold}};
}

void merge_json(DrcParams& p, const json& j) {
  reject_unknown(j, {"a", "m", "n", "r", "t", "s", "delta", "epsilon", "beta", "N", "w", "retries",
                     "codegree_threshold", "seed"});
  take(j, "a", p.a);
  take(j, "m", p.m);
  take(j, "n", p.n);
  take(j, "r", p.r);
  take(j, "t", p.t);
  take(j, "s", p.s);
  take(j, "delta", p.delta);
  take(j, "epsilon", p.epsilon);
  take(j, "beta", p.beta);
  take(j, "N", p.N);
  take(j, "w", p.w);
  take(j, "retries", p.retries);
  take(j, "codegree_threshold", p.codegree_threshold);
}

json to_json(const ConstructionInfo& info) {
  return json{{"type", info.type},
              {"params", to_json(info.params)},
              {"tuples_per_part", info.tuples_per_part},
              {"base_cross", info.base_cross},
              {"base_inside", info.base_inside},
              {"sampled", info.sampled},
              {"cross_estimate", {info.cross_estimate.value, info.cross_estimate.half_width}},
              {"inside_estimate", {info.inside_estimate.value, info.inside_estimate.half_width}},
              {"blowup_t", info.blowup_t},
              {"blowup_p", info.blowup_p},
              {"inside_blown_kept", info.inside_blown_kept},
              {"pattern_deletions", info.pattern_deletions},
              {"part_size", info.part_size}};
}

ConstructionInfo info_from_json(const json& j) {
  ConstructionInfo info;
  try {
    info.type = j.at("type").get<std::string>();
    merge_json(info.params, j.at("params"));
    info.tuples_per_part = j.at("tuples_per_part").get<std::size_t>();
    info.base_cross = j.at("base_cross").get<std::size_t>();
    info.base_inside = j.at("base_inside").get<std::size_t>();
    info.sampled = j.at("sampled").get<bool>();
    info.cross_estimate = {j.at("cross_estimate").at(0).get<double>(), j.at("cross_estimate").at(1).get<double>()};
    info.inside_estimate = {j.at("inside_estimate").at(0).get<double>(), j.at("inside_estimate").at(1).get<double>()};
    info.blowup_t = j.at("blowup_t").get<int>();
    info.blowup_p = j.at("blowup_p").get<double>();
    info.inside_blown_kept = j.at("inside_blown_kept").get<std::size_t>();
    info.pattern_deletions = j.at("pattern_deletions").get<std::size_t>();
    info.part_size = j.at("part_size").get<std::size_t>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad construction info: ") + e.what());
  }
  return info;
}

json load_json(const std::string& path) {
  auto in = open_in(path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

json to_json(const Embedding& e) {
  json roles = json::array();
  for (Role r : e.roles) roles.push_back(r == Role::core ? "core" : "subdivision");
  return json{{"host", e.host}, {"roles", roles}, {"edges", e.host_edges}};
}

Embedding embedding_from_json(const json& j) {
  Embedding e;
  try {
    e.host = j.at("host").get<std::vector<Vertex>>();
    for (const auto& r : j.at("roles")) {
      const auto s = r.get<std::string>();
      if (s != "core" && s != "subdivision") throw ParseError("unknown role " + s);
      e.roles.push_back(s == "core" ? Role::core : Role::subdivision);
    }
    e.host_edges = j.at("edges").get<std::vector<std::vector<Vertex>>>();
  } catch (const json::exception& ex) {
    throw ParseError(std::string("bad embedding: ") + ex.what());
  }
  if (e.roles.size() != e.host.size()) throw ParseError("roles and host differ in length");
  return e;
}

}  // namespace rtlab

#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "rtlab/constructions.hpp"
#include "rtlab/drc.hpp"
#include "rtlab/hypergraph.hpp"
#include "rtlab/sphere.hpp"

#include <json.hpp>

namespace rtlab {

/// Malformed input file. The CLI maps it to exit code 2.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Hypergraph files:
//   HG r n m parts
//   n lines: part label (-1 if none)
//   m lines: r sorted vertex ids
// Graph files are the same with r = 2.
void write_hypergraph(std::ostream& out, const Hypergraph& h);
Hypergraph read_hypergraph(std::istream& in);
void write_graph(std::ostream& out, const SimpleGraph& g);
SimpleGraph read_graph(std::istream& in);

void save_hypergraph(const std::string& path, const Hypergraph& h);
Hypergraph load_hypergraph(const std::string& path);
void save_graph(const std::string& path, const SimpleGraph& g);
SimpleGraph load_graph(const std::string& path);

// Partition files: "SPHERE k z seed theta", then z lines of k+1
// coordinates with 17 significant digits.
void write_partition(std::ostream& out, const SpherePartition& p);
SpherePartition read_partition(std::istream& in);

nlohmann::json to_json(const ConstructionParams& p);
/// Missing keys keep their current values; unknown keys are rejected.
void merge_json(ConstructionParams& p, const nlohmann::json& j);
nlohmann::json to_json(const DrcParams& p);
void merge_json(DrcParams& p, const nlohmann::json& j);
nlohmann::json to_json(const ConstructionInfo& info);
ConstructionInfo info_from_json(const nlohmann::json& j);
nlohmann::json load_json(const std::string& path);

nlohmann::json to_json(const Embedding& e);
Embedding embedding_from_json(const nlohmann::json& j);

}  // namespace rtlab

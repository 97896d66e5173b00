#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "cayjoin/caps.hpp"
#include "cayjoin/graphs.hpp"
#include "cayjoin/groups.hpp"
#include "cayjoin/gwp.hpp"
#include "cayjoin/synth.hpp"
#include "cayjoin/xjoin.hpp"

namespace cayjoin::io {

using json = nlohmann::json;

/// {"kind": "cyclic"|"dihedral"|"quaternion8"|"elementary_abelian"|"product"|"table", ...}
groups::GroupSpec parse_group_spec(const json& j);

/// {"vertices": [label, ...], "edges": [[u, v], ...]} with endpoints given as
/// labels or as vertex indices.
graphs::Graph parse_graph(const json& j);
json graph_to_json(const graphs::Graph& g);

/// Vertices and edges sorted lexicographically by label.
std::string to_dot(const graphs::Graph& g, const std::string& name = "W");
std::string to_edge_list(const graphs::Graph& g);

struct Outputs {
  std::string graph;
  std::string report;
};

struct Scenario {
  enum class Kind { Cayley, XJoin };
  Kind kind = Kind::Cayley;
  std::string name;
  synth::CayleyScenario cayley;
  xjoin::XJoinInput xjoin;
  Caps caps;
  Outputs outputs;
};

/// Unknown keys are rejected with Error(InvalidInput). Caps: `base`, then the
/// scenario's "caps" object, then XJOIN_CAPS.
Scenario parse_scenario(const json& j, Caps base = {});
/// Parse errors are reported as Error(InvalidInput) naming the file.
Scenario load_scenario(const std::filesystem::path& path, Caps base = {});
json load_json(const std::filesystem::path& path);

json scaffold_report(const gwp::Scaffold& s);
json hypotheses_json(const synth::HypothesisReport& h);
/// Everything except timing; callers add "timing_ms".
json certificate_report(const synth::CayleyCertificate& c);

/// Writes through a temporary file and renames it into place.
void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace cayjoin::io

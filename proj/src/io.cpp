#include "cayjoin/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "cayjoin/error.hpp"

namespace cayjoin::io {

using graphs::Graph;
using groups::Elem;
using groups::GroupSpec;

namespace {

void require_object(const json& j, const std::string& what) {
  if (!j.is_object()) throw Error(Errc::InvalidInput, what + " must be a JSON object");
}

void allow_keys(const json& j, std::initializer_list<const char*> keys, const std::string& what) {
  for (const auto& [key, value] : j.items()) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; })) {
      throw Error(Errc::InvalidInput, "unknown key '" + key + "' in " + what);
    }
  }
}

const json& need(const json& j, const char* key, const std::string& what) {
  auto it = j.find(key);
  if (it == j.end()) throw Error(Errc::InvalidInput, what + " is missing '" + key + "'");
  return *it;
}

template <class T>
T get_as(const json& j, const std::string& what) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw Error(Errc::InvalidInput, what + " has the wrong type");
  }
}

std::vector<Elem> element_list(const groups::FiniteGroup& g, const json& j, const std::string& what) {
  std::vector<Elem> out;
  for (const auto& name : get_as<std::vector<std::string>>(j, what)) out.push_back(g.at(name));
  return out;
}

Caps parse_caps(Caps caps, const json& j) {
  require_object(j, "caps");
  for (const auto& [key, value] : j.items()) {
    if (!value.is_number_integer() || value.get<long long>() < 0) throw Error(Errc::InvalidInput, "cap '" + key + "' must be a non-negative integer");
    if (!set_cap(caps, key, value.get<std::size_t>())) throw Error(Errc::InvalidInput, "unknown cap '" + key + "'");
  }
  return caps;
}

Outputs parse_outputs(const json& j) {
  require_object(j, "outputs");
  allow_keys(j, {"graph", "report"}, "outputs");
  Outputs o;
  if (j.contains("graph")) o.graph = get_as<std::string>(j["graph"], "outputs.graph");
  if (j.contains("report")) o.report = get_as<std::string>(j["report"], "outputs.report");
  return o;
}

int vertex_ref(const Graph& g, const json& v, const std::string& what) {
  if (v.is_number_integer()) {
    const int i = v.get<int>();
    if (i < 0 || i >= g.vertex_count()) throw Error(Errc::InvalidInput, what + ": vertex index out of range");
    return i;
  }
  if (v.is_string()) {
    auto idx = g.find(v.get<std::string>());
    if (!idx) throw Error(Errc::InvalidInput, what + ": unknown vertex '" + v.get<std::string>() + "'");
    return *idx;
  }
  throw Error(Errc::InvalidInput, what + ": vertex must be a label or an index");
}

synth::CayleyScenario parse_cayley(const json& j, const Caps& caps) {
  synth::CayleyScenario sc;
  sc.caps = caps;
  sc.a = groups::group_from_spec(parse_group_spec(need(j, "base_group", "scenario")), caps);
  sc.c = groups::group_from_spec(parse_group_spec(need(j, "fiber_group", "scenario")), caps);
  sc.s_a = element_list(sc.a, need(j, "base_connection", "scenario"), "base_connection");
  sc.s_c = element_list(sc.c, need(j, "fiber_connection", "scenario"), "fiber_connection");
  if (j.contains("block_stabilizer")) sc.h_gens = element_list(sc.a, j["block_stabilizer"], "block_stabilizer");
  const json& theta = need(j, "theta", "scenario");
  require_object(theta, "theta");
  for (const auto& [key, value] : theta.items()) {
    sc.theta[sc.c.at(key)] = sc.a.at(get_as<std::string>(value, "theta image"));
  }
  if (j.contains("mode")) sc.mode = synth::parse_synth_mode(get_as<std::string>(j["mode"], "mode"));
  if (j.contains("collapse_allowed")) sc.collapse_allowed = get_as<bool>(j["collapse_allowed"], "collapse_allowed");
  return sc;
}

xjoin::XJoinInput parse_xjoin(const json& j) {
  xjoin::XJoinInput in;
  in.base = parse_graph(need(j, "graph", "scenario"));
  const json& partition = need(j, "partition", "scenario");
  if (!partition.is_array()) throw Error(Errc::InvalidInput, "partition must be a list of label lists");
  std::vector<std::vector<int>> blocks;
  for (const auto& block : partition) {
    std::vector<int> b;
    for (const auto& v : get_as<std::vector<json>>(block, "partition block")) b.push_back(vertex_ref(in.base, v, "partition"));
    blocks.push_back(std::move(b));
  }
  in.sigma = perms::PartitionOfPoints(in.base.vertex_count(), std::move(blocks));
  if (j.contains("block_names")) {
    in.block_names = get_as<std::vector<std::string>>(j["block_names"], "block_names");
  } else {
    for (std::size_t b = 0; b < in.sigma.size(); ++b) in.block_names.push_back("X" + std::to_string(b + 1));
  }
  for (const auto& f : get_as<std::vector<json>>(need(j, "fibers", "scenario"), "fibers")) in.fibers.push_back(parse_graph(f));
  const auto lambdas = get_as<std::vector<json>>(need(j, "lambdas", "scenario"), "lambdas");
  if (lambdas.size() != in.fibers.size()) throw Error(Errc::InvalidInput, "need one lambda per fiber");
  for (std::size_t b = 0; b < lambdas.size(); ++b) {
    require_object(lambdas[b], "lambda");
    const Graph& fiber = in.fibers[b];
    graphs::VertexMap map{std::vector<int>(fiber.vertex_count(), -1)};
    for (const auto& [key, value] : lambdas[b].items()) {
      map.image[vertex_ref(fiber, json(key), "lambda domain")] = vertex_ref(in.base, value, "lambda image");
    }
    if (std::find(map.image.begin(), map.image.end(), -1) != map.image.end()) {
      throw Error(Errc::LambdaNotEpimorphism, "lambda " + std::to_string(b + 1) + " is not defined on every fiber vertex");
    }
    in.lambdas.push_back(std::move(map));
  }
  if (j.contains("collapse_allowed")) in.collapse_allowed = get_as<bool>(j["collapse_allowed"], "collapse_allowed");
  return in;
}

std::vector<std::string> names_of(const groups::FiniteGroup& g, const std::vector<Elem>& xs) {
  std::vector<std::string> out;
  for (Elem x : xs) out.push_back(g.name(x));
  return out;
}

}  // namespace

GroupSpec parse_group_spec(const json& j) {
  require_object(j, "group");
  GroupSpec spec;
  const std::string kind = get_as<std::string>(need(j, "kind", "group"), "group kind");
  if (kind == "cyclic") {
    allow_keys(j, {"kind", "order", "generator"}, "cyclic group");
    spec.kind = GroupSpec::Kind::Cyclic;
    spec.order = get_as<int>(need(j, "order", "cyclic group"), "order");
    if (j.contains("generator")) spec.generator = get_as<std::string>(j["generator"], "generator");
  } else if (kind == "dihedral") {
    allow_keys(j, {"kind", "order"}, "dihedral group");
    spec.kind = GroupSpec::Kind::Dihedral;
    spec.order = get_as<int>(need(j, "order", "dihedral group"), "order");
  } else if (kind == "quaternion8") {
    allow_keys(j, {"kind"}, "quaternion group");
    spec.kind = GroupSpec::Kind::Quaternion8;
  } else if (kind == "elementary_abelian") {
    allow_keys(j, {"kind", "p", "k"}, "elementary abelian group");
    spec.kind = GroupSpec::Kind::ElementaryAbelian;
    spec.p = get_as<int>(need(j, "p", "elementary abelian group"), "p");
    spec.k = get_as<int>(need(j, "k", "elementary abelian group"), "k");
  } else if (kind == "product") {
    allow_keys(j, {"kind", "factors"}, "product group");
    spec.kind = GroupSpec::Kind::Product;
    for (const auto& f : get_as<std::vector<json>>(need(j, "factors", "product group"), "factors")) {
      spec.factors.push_back(parse_group_spec(f));
    }
  } else if (kind == "table") {
    allow_keys(j, {"kind", "names", "table"}, "table group");
    spec.kind = GroupSpec::Kind::Table;
    spec.names = get_as<std::vector<std::string>>(need(j, "names", "table group"), "names");
    spec.table = get_as<std::vector<std::vector<Elem>>>(need(j, "table", "table group"), "table");
  } else {
    throw Error(Errc::InvalidInput, "unknown group kind '" + kind + "'");
  }
  return spec;
}

Graph parse_graph(const json& j) {
  require_object(j, "graph");
  allow_keys(j, {"vertices", "edges"}, "graph");
  const auto labels = get_as<std::vector<std::string>>(need(j, "vertices", "graph"), "vertices");
  if (std::set<std::string>(labels.begin(), labels.end()).size() != labels.size()) {
    throw Error(Errc::InvalidInput, "graph has duplicate vertex labels");
  }
  Graph g(labels);
  if (j.contains("edges")) {
    for (const auto& e : get_as<std::vector<json>>(j["edges"], "edges")) {
      if (!e.is_array() || e.size() != 2) throw Error(Errc::InvalidInput, "each edge must be a pair");
      g.add_edge(vertex_ref(g, e[0], "edge"), vertex_ref(g, e[1], "edge"));
    }
  }
  return g;
}

json graph_to_json(const Graph& g) {
  json edges = json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({g.label(u), g.label(v)});
  return json{{"vertices", g.labels()}, {"edges", edges}};
}

namespace {

std::vector<std::pair<std::string, std::string>> sorted_edges(const Graph& g) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [u, v] : g.edges()) {
    auto a = g.label(u), b = g.label(v);
    if (b < a) std::swap(a, b);
    out.emplace_back(std::move(a), std::move(b));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_dot(const Graph& g, const std::string& name) {
  std::ostringstream out;
  out << "graph " << quote(name) << " {\n";
  auto labels = g.labels();
  std::sort(labels.begin(), labels.end());
  for (const auto& l : labels) out << "  " << quote(l) << ";\n";
  for (const auto& [a, b] : sorted_edges(g)) out << "  " << quote(a) << " -- " << quote(b) << ";\n";
  out << "}\n";
  return out.str();
}

std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  for (const auto& [a, b] : sorted_edges(g)) out << a << ' ' << b << '\n';
  return out.str();
}

Scenario parse_scenario(const json& j, Caps base) {
  require_object(j, "scenario");
  Scenario sc;
  const std::string kind = get_as<std::string>(need(j, "kind", "scenario"), "kind");
  if (j.contains("caps")) base = parse_caps(base, j["caps"]);
  sc.caps = apply_env_caps(base);
  if (j.contains("name")) sc.name = get_as<std::string>(j["name"], "name");
  if (j.contains("outputs")) sc.outputs = parse_outputs(j["outputs"]);
  if (kind == "cayley") {
    allow_keys(j,
               {"kind", "name", "base_group", "base_connection", "block_stabilizer", "fiber_group", "fiber_connection",
                "theta", "mode", "collapse_allowed", "caps", "outputs"},
               "cayley scenario");
    sc.kind = Scenario::Kind::Cayley;
    sc.cayley = parse_cayley(j, sc.caps);
  } else if (kind == "xjoin") {
    allow_keys(j,
               {"kind", "name", "graph", "partition", "block_names", "fibers", "lambdas", "collapse_allowed", "caps",
                "outputs"},
               "xjoin scenario");
    sc.kind = Scenario::Kind::XJoin;
    sc.xjoin = parse_xjoin(j);
  } else {
    throw Error(Errc::InvalidInput, "unknown scenario kind '" + kind + "' (expected cayley or xjoin)");
  }
  return sc;
}

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidInput, "cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(Errc::InvalidInput, path.string() + ": " + e.what());
  }
}

Scenario load_scenario(const std::filesystem::path& path, Caps base) { return parse_scenario(load_json(path), base); }

json scaffold_report(const gwp::Scaffold& s) {
  const auto& f = s.base();
  const auto& m = s.fiber();
  json transversal = json::object();
  for (Elem h : s.stabilizer().members()) transversal[f.name(h)] = m.name(s.transversal()[h]);
  json lifts = json::object();
  for (Elem x = 0; x < f.order(); ++x) lifts[f.name(x)] = names_of(m, s.lift_choice().table[x]);
  std::vector<std::string> blocks;
  for (int b = 0; b < s.block_count(); ++b) blocks.push_back(s.block_name(b));
  const auto l23 = gwp::lemma23_check(s);
  return json{
      {"orders",
       {{"F", f.order()},
        {"H", s.stabilizer().size()},
        {"M", m.order()},
        {"K", s.kernel().size()},
        {"blocks", s.block_count()},
        {"Y", s.point_count()}}},
      {"mode", gwp::to_string(s.mode())},
      {"blocks", blocks},
      {"reps", names_of(f, s.reps())},
      {"transversal", transversal},
      {"lifts", lifts},
      {"lemma23", {{"fbar_is_hom", l23.fbar_is_hom}, {"T_is_group", l23.t_is_group}, {"split", l23.split}}},
  };
}

json hypotheses_json(const synth::HypothesisReport& h) {
  return json{
      {"1_base_is_H_times_centralizer", h.h1_base_centralizer},
      {"2_fiber_is_K_times_centralizer", h.h2_fiber_centralizer},
      {"3_direct_complement", h.h3_direct_complement},
      {"4_subgroup_transversal", h.h4_subgroup_transversal},
      {"5_centralizing_subgroup_transversal", h.h5_direct_transversal},
      {"theorem_direct_form", h.direct_form()},
      {"theorem_semidirect_form", h.semidirect_form()},
  };
}

json certificate_report(const synth::CayleyCertificate& c) {
  json witness = json::object();
  for (int v = 0; v < c.w.vertex_count(); ++v) witness[c.w.label(v)] = c.r.name(c.witness.image[v]);
  return json{
      {"mode", synth::to_string(c.mode)},
      {"search", {{"used", c.used_search}, {"evaluations", c.search_evaluations}}},
      {"hypotheses", hypotheses_json(c.hypotheses)},
      {"scaffold", scaffold_report(c.scaffold)},
      {"W", {{"vertices", c.w.vertex_count()}, {"edges", c.w.edge_count()}}},
      {"R", {{"order", c.r.order()}, {"elements", c.r.names()}}},
      {"connection_set", names_of(c.r, c.s_r)},
      {"connection_set_size", c.s_r.size()},
      {"checks",
       {{"aut_containment", c.aut_containment},
        {"vertex_transitive", c.vertex_transitive},
        {"isomorphism_verified", true}}},
      {"isomorphism", witness},
  };
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw Error(Errc::InvalidInput, "cannot write " + path.string());
    out << contents;
    if (!out) throw Error(Errc::InvalidInput, "write failed for " + path.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace cayjoin::io

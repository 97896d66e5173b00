// Command-line front end: build, synth, verify, aut, export.
//
// Exit codes: 0 success, 2 theorem hypotheses unavailable (strict theorem
// mode), 3 invalid input or failed verification, 4 lift search exhausted,
// 5 size cap exceeded.

#include <chrono>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cayjoin/error.hpp"
#include "cayjoin/graphs.hpp"
#include "cayjoin/gwp.hpp"
#include "cayjoin/io.hpp"
#include "cayjoin/synth.hpp"
#include "cayjoin/xjoin.hpp"

using namespace cayjoin;
using io::json;

namespace {

int exit_code(const Error& e) {
  if (e.is_cap()) return 5;
  switch (e.code()) {
    case Errc::TheoremChoicesUnavailable: return 2;
    case Errc::SynthesisFailed: return 4;
    default: return 3;
  }
}

void emit(const std::string& path, const std::string& contents) {
  if (path.empty() || path == "-") {
    std::cout << contents;
  } else {
    io::write_file(path, contents);
  }
}

std::string render(const graphs::Graph& g, const std::string& format, const std::string& name) {
  if (format == "dot") return io::to_dot(g, name);
  if (format == "edgelist") return io::to_edge_list(g);
  return io::graph_to_json(g).dump(2) + "\n";
}

struct Built {
  graphs::Graph w;
  std::vector<graphs::Graph> fibers;
  std::vector<std::string> fiber_names;
  graphs::Graph base;
};

Built build(const io::Scenario& sc) {
  Built out;
  if (sc.kind == io::Scenario::Kind::Cayley) {
    auto b = synth::build_w(sc.cayley);
    out.w = std::move(b.w);
    out.base = b.input.base;
    out.fibers = b.input.fibers;
    out.fiber_names = b.input.block_names;
  } else {
    out.w = xjoin::generalized_xjoin(sc.xjoin);
    out.base = sc.xjoin.base;
    out.fibers = sc.xjoin.fibers;
    out.fiber_names = sc.xjoin.block_names;
  }
  return out;
}

int cmd_build(const std::string& path, const std::string& format, std::string output, bool with_fibers) {
  const auto sc = io::load_scenario(path);
  const Built b = build(sc);
  if (output.empty()) output = sc.outputs.graph;
  std::string text;
  if (format == "json") {
    json j = io::graph_to_json(b.w);
    if (with_fibers) {
      json fibers = json::object();
      for (std::size_t i = 0; i < b.fibers.size(); ++i) fibers[b.fiber_names[i]] = io::graph_to_json(b.fibers[i]);
      j["fibers"] = fibers;
    }
    text = j.dump(2) + "\n";
  } else {
    text = render(b.w, format, "W");
    if (with_fibers) {
      for (std::size_t i = 0; i < b.fibers.size(); ++i) {
        text += format == "dot" ? io::to_dot(b.fibers[i], b.fiber_names[i])
                                : "# " + b.fiber_names[i] + "\n" + io::to_edge_list(b.fibers[i]);
      }
    }
  }
  emit(output, text);
  return 0;
}

int cmd_synth(const std::string& path, const std::string& mode, std::string report) {
  auto sc = io::load_scenario(path);
  if (sc.kind != io::Scenario::Kind::Cayley) throw Error(Errc::InvalidInput, "synth needs a cayley scenario");
  if (!mode.empty()) sc.cayley.mode = synth::parse_synth_mode(mode);
  const auto start = std::chrono::steady_clock::now();
  const auto cert = synth::synthesize_cayley(sc.cayley);
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  json j = io::certificate_report(cert);
  if (!sc.name.empty()) j["scenario"] = sc.name;
  j["timing_ms"] = ms;
  if (report.empty()) report = sc.outputs.report;
  emit(report, j.dump(2) + "\n");
  return 0;
}

struct Table {
  std::ostringstream out;
  bool ok = true;
  void row(const std::string& check, bool pass, const std::string& detail = "") {
    ok = ok && pass;
    out << (pass ? "PASS  " : "FAIL  ") << check;
    if (!detail.empty()) out << "  (" << detail << ")";
    out << "\n";
  }
  void info(const std::string& check, const std::string& detail) { out << "INFO  " << check << "  (" << detail << ")\n"; }
};

int cmd_verify(const std::string& path) {
  const auto sc = io::load_scenario(path);
  Table t;
  if (sc.kind == io::Scenario::Kind::Cayley) {
    const auto b = synth::build_w(sc.cayley);
    const auto& w = b.w;
    const auto& s = b.scaffold;
    t.row("build W", true, std::to_string(w.vertex_count()) + " vertices, " + std::to_string(w.edge_count()) + " edges");
    const auto containment = synth::verify_aut_containment(w, s);
    t.row("K generators and lifts are automorphisms", containment.ok,
          containment.ok ? std::to_string(containment.checked) + " permutations" : containment.witness);
    t.row("<J, F-bar> transitive on V(W)", synth::certify_vertex_transitive(w, s));
    t.row("fiber partition is equitable", xjoin::is_equitable(w, xjoin::fiber_partition(b.input)));
    const auto aut = graphs::automorphism_group(w, sc.caps);
    bool contained = true;
    for (const auto& k : gwp::base_group_K_generators(s)) contained = contained && aut.contains(k);
    for (const auto& f : gwp::all_lifts(s)) contained = contained && aut.contains(f);
    t.row("Aut(W) contains <K, F-bar>", contained, "|Aut(W)| = " + std::to_string(aut.order()));
    t.row("Aut(W) transitive", perms::is_transitive(aut));
  } else {
    const auto w = xjoin::generalized_xjoin(sc.xjoin);
    t.row("build W", true, std::to_string(w.vertex_count()) + " vertices, " + std::to_string(w.edge_count()) + " edges");
    t.row("lambdas are graph epimorphisms", true);
    const auto aut = graphs::automorphism_group(w, sc.caps);
    t.info("fiber partition equitable", xjoin::is_equitable(w, xjoin::fiber_partition(sc.xjoin)) ? "true" : "false");
    t.info("vertex-transitive", std::string(perms::is_transitive(aut) ? "true" : "false") +
                                    ", |Aut(W)| = " + std::to_string(aut.order()));
  }
  if (!t.ok) {
    std::cerr << t.out.str();
    return 3;
  }
  std::cout << t.out.str();
  return 0;
}

int cmd_aut(const std::string& path) {
  const auto g = io::parse_graph(io::load_json(path));
  const Caps caps = apply_env_caps({});
  const auto aut = graphs::automorphism_group(g, caps);
  json gens = json::array();
  for (const auto& p : aut.generators()) {
    json m = json::object();
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (p[v] != v) m[g.label(v)] = g.label(p[v]);
    }
    gens.push_back(m);
  }
  json orbits = json::array();
  for (const auto& orbit : perms::orbits(g.vertex_count(), aut.generators())) {
    json o = json::array();
    for (int v : orbit) o.push_back(g.label(v));
    orbits.push_back(o);
  }
  const json j{{"vertices", g.vertex_count()},
               {"edges", g.edge_count()},
               {"order", aut.order()},
               {"generators", gens},
               {"orbits", orbits},
               {"vertex_transitive", orbits.size() <= 1}};
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_export(const std::string& path, const std::string& part, const std::string& format, const std::string& output) {
  const auto sc = io::load_scenario(path);
  if (part == "scaffold") {
    if (sc.kind != io::Scenario::Kind::Cayley) throw Error(Errc::InvalidInput, "scaffold export needs a cayley scenario");
    emit(output, io::scaffold_report(synth::scenario_scaffold(sc.cayley)).dump(2) + "\n");
    return 0;
  }
  const Built b = build(sc);
  if (part == "w") {
    emit(output, render(b.w, format, "W"));
  } else if (part == "base") {
    emit(output, render(b.base, format, "G"));
  } else {
    std::string text;
    for (std::size_t i = 0; i < b.fibers.size(); ++i) {
      text += format == "json" ? io::graph_to_json(b.fibers[i]).dump(2) + "\n" : render(b.fibers[i], format, b.fiber_names[i]);
    }
    emit(output, text);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized X-joins of Cayley graphs: construction, synthesis and verification"};
  app.require_subcommand(1);

  std::string scenario, format = "dot", output, mode, report, part = "w";
  bool with_fibers = false;

  auto* build_cmd = app.add_subcommand("build", "Build W and write it as DOT, an edge list or JSON");
  build_cmd->add_option("scenario", scenario, "Scenario JSON")->required();
  build_cmd->add_option("--out", format, "Output format")->check(CLI::IsMember({"dot", "edgelist", "json"}));
  build_cmd->add_option("--output,-o", output, "Output path (default stdout)");
  build_cmd->add_flag("--fibers", with_fibers, "Also write the fiber graphs");

  auto* synth_cmd = app.add_subcommand("synth", "Synthesize and verify a Cayley certificate for W");
  synth_cmd->add_option("scenario", scenario, "Scenario JSON")->required();
  synth_cmd->add_option("--mode", mode, "theorem, search or canonical")
      ->check(CLI::IsMember({"theorem", "search", "canonical"}));
  synth_cmd->add_option("--report", report, "Certificate JSON path (default stdout)");

  auto* verify_cmd = app.add_subcommand("verify", "Check automorphism containment and vertex transitivity");
  verify_cmd->add_option("scenario", scenario, "Scenario JSON")->required();

  auto* aut_cmd = app.add_subcommand("aut", "Automorphism group of a graph JSON file");
  aut_cmd->add_option("graph", scenario, "Graph JSON")->required();

  auto* export_cmd = app.add_subcommand("export", "Write the base graph, fibers, W or scaffold data");
  export_cmd->add_option("scenario", scenario, "Scenario JSON")->required();
  export_cmd->add_option("--part", part, "w, base, fibers or scaffold")
      ->check(CLI::IsMember({"w", "base", "fibers", "scaffold"}));
  export_cmd->add_option("--out", format, "Output format")->check(CLI::IsMember({"dot", "edgelist", "json"}));
  export_cmd->add_option("--output,-o", output, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  try {
    if (*build_cmd) return cmd_build(scenario, format, output, with_fibers);
    if (*synth_cmd) return cmd_synth(scenario, mode, report);
    if (*verify_cmd) return cmd_verify(scenario);
    if (*aut_cmd) return cmd_aut(scenario);
    if (*export_cmd) return cmd_export(scenario, part, format, output);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}

// Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero when a
// criterion fails unless it is listed in kKnownDeviations (those still print
// FAIL, with the reason).

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "cayjoin/error.hpp"
#include "cayjoin/graphs.hpp"
#include "cayjoin/gwp.hpp"
#include "cayjoin/io.hpp"
#include "cayjoin/perms.hpp"
#include "cayjoin/synth.hpp"
#include "cayjoin/xjoin.hpp"
#include "support/families.hpp"
#include "support/oracles.hpp"

using namespace cayjoin;
using groups::Elem;
using perms::Perm;

namespace {

constexpr double kExample22BuildLimitMs = 1.0;
constexpr double kEndToEndLimitMs = 5000.0;
constexpr std::size_t kMinScaffoldFamily = 50;
constexpr std::size_t kMinAutOracleInstances = 10;
constexpr int kMaxAutOracleVertices = 20;

// Criterion 3 expects hypothesis (4) to hold for Q8 over its centre. Q8 has a
// single involution, so no subgroup of order 4 meets {1, -1} trivially and the
// extension does not split; the check is reported as it is computed.
const std::map<int, std::string> kKnownDeviations = {
    {3, "hypothesis (4) expected true, but Q8 does not split over {1,-1}"},
};

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

std::string fiber_label(const std::string& label) { return label.substr(label.find(':') + 1); }

std::set<std::string> names_of(const groups::FiniteGroup& g, const std::vector<Elem>& xs) {
  std::set<std::string> out;
  for (Elem x : xs) out.insert(g.name(x));
  return out;
}

/// W edge (u, v) iff r_u * r_v^-1 lies in S_R, for every pair.
bool cayley_matches(const graphs::Graph& w, const groups::FiniteGroup& r, const std::vector<Elem>& s_r) {
  const std::set<Elem> s(s_r.begin(), s_r.end());
  for (int u = 0; u < w.vertex_count(); ++u) {
    for (int v = 0; v < w.vertex_count(); ++v) {
      if (u == v) continue;
      if (w.has_edge(u, v) != (s.count(r.mul(u, r.inverse(v))) > 0)) return false;
    }
  }
  return true;
}

bool preserves_edges_exactly(const graphs::Graph& w, const Perm& p) {
  for (int u = 0; u < w.vertex_count(); ++u) {
    for (int v = u + 1; v < w.vertex_count(); ++v) {
      if (w.has_edge(u, v) != w.has_edge(p[u], p[v])) return false;
    }
  }
  return true;
}

/// Independent check that p fixes each block and acts on it by right
/// multiplication with a kernel element.
bool acts_blockwise_by_kernel(const gwp::Scaffold& s, const Perm& p) {
  const int m = s.fiber_size();
  for (int b = 0; b < s.block_count(); ++b) {
    const int base = b * m;
    const int image = p[base + s.fiber().identity()];
    if (image < base || image >= base + m) return false;
    const Elem k = image - base;
    if (s.theta()(k) != s.base().identity()) return false;
    for (Elem x = 0; x < m; ++x) {
      if (p[base + x] != base + s.fiber().mul(x, k)) return false;
    }
  }
  return true;
}

void criterion1(Outcome& o) {
  const auto sc = io::load_scenario(SCENARIO_DIR "/example2_2.json");
  double best = 1e9;
  graphs::Graph w;
  for (int run = 0; run < 5; ++run) {
    const auto start = std::chrono::steady_clock::now();
    w = xjoin::generalized_xjoin(sc.xjoin);
    best = std::min(best, elapsed_ms(start));
  }
  const std::set<std::pair<std::string, std::string>> expected = {
      {"a", "b"}, {"c", "d"}, {"e", "f"}, {"e", "g"}, {"f", "g"}, {"a", "e"}, {"b", "e"}, {"c", "e"}, {"d", "e"},
      {"c", "f"}, {"c", "g"}, {"d", "f"}, {"d", "g"}, {"a", "f"}, {"a", "g"}, {"b", "f"}, {"b", "g"}};
  std::set<std::pair<std::string, std::string>> got;
  for (const auto& [u, v] : w.edges()) {
    auto a = fiber_label(w.label(u)), b = fiber_label(w.label(v));
    got.insert(a < b ? std::make_pair(a, b) : std::make_pair(b, a));
  }
  o.require(w.vertex_count() == 7, "7 vertices");
  o.require(w.edge_count() == 17, "17 edges");
  o.require(got == expected, "edge set matches the expected list");
  o.require(best < kExample22BuildLimitMs, "build under 1 ms");
  o.detail << w.vertex_count() << " vertices, " << w.edge_count() << " edges, build " << best << " ms";
}

void criterion2(Outcome& o) {
  auto sc = io::load_scenario(SCENARIO_DIR "/example3_5.json");
  sc.cayley.mode = synth::SynthMode::Search;
  const auto start = std::chrono::steady_clock::now();
  const auto cert = synth::synthesize_cayley(sc.cayley);
  const double ms = elapsed_ms(start);
  const auto d6c3 = groups::direct_product({groups::dihedral(6), groups::cyclic(3)});
  const std::set<std::string> expected = {"bar(x)", "bar(x2)", "hat(b)", "hat(b2)",
                                          "bar(y)", "hat(b)*bar(y)", "hat(b2)*bar(y)"};
  const auto regular = gwp::regular_candidate(cert.scaffold);
  o.require(cert.w.vertex_count() == 18, "|V(W)| = 18");
  o.require(cert.r.order() == 18 && perms::is_regular(regular.group), "R regular of order 18");
  o.require(perms::group_isomorphic(cert.r, d6c3).has_value(), "R isomorphic to D6 x C3");
  o.require(oracle::fingerprint(cert.r) == oracle::fingerprint(d6c3), "fingerprint oracle agrees");
  o.require(cert.s_r.size() == 7, "|S_R| = 7");
  o.require(names_of(cert.r, cert.s_r) == expected, "S_R equals the expected coset union");
  o.require(cayley_matches(cert.w, cert.r, cert.s_r), "W = Cay(R, S_R) edge-exactly");
  o.require(ms < kEndToEndLimitMs, "runtime under 5 s");
  o.detail << "|R| = " << cert.r.order() << ", |S_R| = " << cert.s_r.size() << ", " << ms << " ms";
}

void criterion3(Outcome& o) {
  auto sc = io::load_scenario(SCENARIO_DIR "/example3_6.json");
  sc.cayley.mode = synth::SynthMode::Theorem;
  const auto start = std::chrono::steady_clock::now();
  const auto cert = synth::synthesize_cayley(sc.cayley);
  const double ms = elapsed_ms(start);
  const auto& s = cert.scaffold;
  std::set<std::string> j_abc;
  for (Elem l : s.kernel().members()) {
    for (const char* f : {"a", "b", "c"}) j_abc.insert(synth::element_name(s, l, s.base().at(f)));
  }
  const auto regular = gwp::regular_candidate(s);
  const auto& h = cert.hypotheses;
  o.require(cert.w.vertex_count() == 16, "|V(W)| = 16");
  o.require(cert.r.order() == 16 && perms::is_regular(regular.group), "R regular of order 16");
  o.require(cert.s_r.size() == 6 && names_of(cert.r, cert.s_r) == j_abc, "S_R = Ja u Jb u Jc");
  o.require(cayley_matches(cert.w, cert.r, cert.s_r), "W = Cay(R, S_R) edge-exactly");
  o.require(h.h1_base_centralizer && h.h2_fiber_centralizer && h.h3_direct_complement, "(1)(2)(3) hold");
  o.require(h.h4_subgroup_transversal, "(4) holds");
  o.require(!h.h5_direct_transversal, "(5) fails");
  o.require(ms < kEndToEndLimitMs, "runtime under 5 s");
  o.detail << "hypotheses " << h.h1_base_centralizer << h.h2_fiber_centralizer << h.h3_direct_complement
           << h.h4_subgroup_transversal << h.h5_direct_transversal << ", |S_R| = " << cert.s_r.size() << ", " << ms
           << " ms";
}

void criterion4(Outcome& o, const std::vector<family::ScaffoldCase>& fam) {
  std::size_t all_true = 0, all_false = 0, failures = 0;
  for (const auto& c : fam) {
    try {
      const auto r = gwp::lemma23_check(c.scaffold);
      (r.t_is_group ? all_true : all_false) += 1;
    } catch (const Error&) {
      ++failures;
      o.detail << c.name << " disagrees; ";
    }
  }
  o.require(fam.size() >= kMinScaffoldFamily, "family size >= 50");
  o.require(failures == 0, "booleans agree everywhere");
  o.require(all_true > 0 && all_false > 0, "both outcomes occur");
  o.detail << fam.size() << " scaffolds, " << all_true << " split, " << all_false << " non-split";
}

void criterion5(Outcome& o, const std::vector<family::ScaffoldCase>& fam) {
  std::size_t bad_blocks = 0, intransitive = 0;
  for (const auto& c : fam) {
    const auto& s = c.scaffold;
    const int m = s.fiber_size();
    const auto lifts = gwp::all_lifts(s);
    for (const auto& p : lifts) {
      for (int b = 0; b < s.block_count(); ++b) {
        std::set<int> image;
        for (int x = 0; x < m; ++x) image.insert(p[b * m + x]);
        const int target = *image.begin() / m;
        std::set<int> block;
        for (int x = 0; x < m; ++x) block.insert(target * m + x);
        if (image != block) ++bad_blocks;
      }
    }
    std::vector<Perm> gens = gwp::diagonal_J(s).generators();
    gens.insert(gens.end(), lifts.begin(), lifts.end());
    if (perms::orbits(s.point_count(), gens).size() != 1) ++intransitive;
  }
  o.require(bad_blocks == 0, "every lift permutes the blocks");
  o.require(intransitive == 0, "<J, F-bar> transitive");
  o.detail << fam.size() << " scaffolds";
}

void criterion6(Outcome& o, const std::vector<family::ScenarioCase>& fam) {
  std::size_t failures = 0, perms_checked = 0;
  for (const auto& c : fam) {
    const auto built = synth::build_w(c.scenario);
    const auto& s = built.scaffold;
    bool ok = synth::verify_aut_containment(built.w, s).ok;
    for (const auto& k : gwp::base_group_K_generators(s)) ok = ok && preserves_edges_exactly(built.w, k), ++perms_checked;
    for (const auto& f : gwp::all_lifts(s)) ok = ok && preserves_edges_exactly(built.w, f), ++perms_checked;
    ok = ok && synth::certify_vertex_transitive(built.w, s);
    if (!ok) {
      ++failures;
      o.detail << c.name << " fails; ";
    }
  }
  o.require(!fam.empty(), "non-empty family");
  o.require(failures == 0, "all lifts and K generators are automorphisms; witness group transitive");
  o.detail << fam.size() << " scenarios, " << perms_checked << " permutations edge-checked";
}

void criterion7(Outcome& o, const std::vector<family::ScenarioCase>& fam) {
  std::size_t applicable = 0, failures = 0;
  for (const auto& c : fam) {
    const auto h = synth::validate_hypotheses(c.scenario);
    if (!(h.h1_base_centralizer && h.h2_fiber_centralizer && h.h3_direct_complement)) continue;
    ++applicable;
    try {
      const auto s = gwp::Scaffold::build(c.scenario.a, c.scenario.h_gens, c.scenario.c, c.scenario.theta,
                                          gwp::Mode::Theorem);
      const auto r = gwp::regular_candidate(s);
      const std::size_t expected = s.kernel().size() * static_cast<std::size_t>(s.base().order());
      if (r.group.order() != expected || static_cast<int>(expected) != s.point_count() ||
          !perms::is_regular_set(s.point_count(), r.group.elements())) {
        ++failures;
        o.detail << c.name << " not regular; ";
      }
    } catch (const Error& e) {
      ++failures;
      o.detail << c.name << ": " << e.what() << "; ";
    }
  }
  o.require(applicable > 0, "some scenario satisfies (1)+(2)+(3)");
  o.require(failures == 0, "theorem-mode candidate closed and regular");
  o.detail << applicable << " of " << fam.size() << " scenarios satisfy (1)+(2)+(3)";
}

void criterion8(Outcome& o, const std::vector<family::ScenarioCase>& fam) {
  std::size_t failures = 0, trivial = 0;
  for (const auto& c : fam) {
    try {
      const auto cert = synth::synthesize_cayley(c.scenario);
      if (c.scenario.c.order() == 1) {
        ++trivial;
        const auto direct = graphs::cayley_graph(c.scenario.a, c.scenario.s_a);
        if (cert.cayley.edges() != direct.edges() || cert.w.edges() != direct.edges()) {
          ++failures;
          o.detail << c.name << " differs from Cay(A, S_A); ";
        }
      }
    } catch (const Error& e) {
      ++failures;
      o.detail << c.name << ": " << e.what() << "; ";
    }
  }
  o.require(failures == 0, "all G-joins certify");
  o.require(trivial > 0, "trivial-fiber cases present");
  o.detail << fam.size() << " G-joins, " << trivial << " with trivial fibers";
}

void criterion9(Outcome& o, const std::vector<family::ScenarioCase>& fam) {
  std::size_t instances = 0, failures = 0, skipped = 0;
  for (const auto& c : fam) {
    const auto built = synth::build_w(c.scenario);
    if (built.w.vertex_count() > kMaxAutOracleVertices || built.w.vertex_count() < 2) continue;
    try {
      const auto aut = graphs::automorphism_group(built.w);
      const auto wreath = gwp::gwp_group(built.scaffold);
      ++instances;
      const bool ok = std::all_of(wreath.elements().begin(), wreath.elements().end(),
                                  [&](const Perm& p) { return aut.contains(p); });
      // Independent count for the smaller graphs.
      bool count_ok = true;
      if (built.w.vertex_count() <= 12) count_ok = oracle::automorphisms(built.w).size() == aut.order();
      if (!ok || !count_ok) {
        ++failures;
        o.detail << c.name << " fails; ";
      }
    } catch (const Error& e) {
      if (!e.is_cap()) throw;
      ++skipped;
    }
  }

  const auto sc = io::load_scenario(SCENARIO_DIR "/example2_2.json");
  const auto w = xjoin::generalized_xjoin(sc.xjoin);
  const auto aut = graphs::automorphism_group(w);
  const auto brute = oracle::automorphisms_by_permutations(w);
  std::set<Perm> brute_set;
  for (const auto& p : brute) brute_set.insert(Perm(p));
  const std::set<Perm> lib_set(aut.elements().begin(), aut.elements().end());
  auto swap_of = [&](const char* x, const char* y) {
    std::vector<int> img(w.vertex_count());
    for (int v = 0; v < w.vertex_count(); ++v) img[v] = v;
    const int a = *w.find(std::string(sc.xjoin.block_names[x[0] >= 'e'] + ":" + x));
    const int b = *w.find(std::string(sc.xjoin.block_names[y[0] >= 'e'] + ":" + y));
    std::swap(img[a], img[b]);
    return Perm(img);
  };
  const bool swaps = aut.contains(swap_of("a", "b")) && aut.contains(swap_of("c", "d")) && aut.contains(swap_of("f", "g"));

  o.require(instances >= kMinAutOracleInstances, ">= 10 instances with <= 20 vertices");
  o.require(failures == 0, "Aut(W) contains <K, F-bar>");
  o.require(lib_set == brute_set, "two-block X-join Aut(W) equals the 7! enumeration");
  o.require(swaps, "a<->b, c<->d, f<->g are automorphisms");
  o.detail << instances << " instances (" << skipped << " over caps), two-block X-join |Aut(W)| = " << aut.order();
}

void criterion10(Outcome& o, const std::vector<family::ScaffoldCase>& fam) {
  std::size_t checked = 0, failures = 0, nontrivial = 0;
  for (const auto& c : fam) {
    const auto& s = c.scaffold;
    const auto lifts = gwp::all_lifts(s);
    const auto& f = s.base();
    for (Elem a = 0; a < f.order(); ++a) {
      for (Elem b = 0; b < f.order(); ++b) {
        const Perm o12 = lifts[a] * lifts[b] * lifts[f.mul(a, b)].inverse();
        ++checked;
        if (!o12.is_identity()) ++nontrivial;
        if (!acts_blockwise_by_kernel(s, o12) || !gwp::in_base_group(s, o12) || o12 != gwp::obstruction(s, a, b)) {
          ++failures;
        }
      }
    }
  }
  o.require(failures == 0, "every obstruction lies in K");
  o.require(nontrivial > 0, "non-trivial obstructions occur");
  o.detail << checked << " obstructions, " << nontrivial << " non-trivial";
}

}  // namespace

int main() {
  const auto scaffolds = family::scaffold_family();
  const auto scenarios = family::cayley_family();
  const auto gjoins = family::gjoin_family();

  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"two-block X-join golden (example2_2.json)", criterion1},
      {"D6 over C3xC3 end-to-end, search mode (example3_5.json)", criterion2},
      {"C2^3 over Q8 end-to-end, theorem mode (example3_6.json)", criterion3},
      {"lifting/closure/splitting agreement", [&](Outcome& o) { criterion4(o, scaffolds); }},
      {"lifts permute blocks; <J, F-bar> transitive", [&](Outcome& o) { criterion5(o, scaffolds); }},
      {"wreath product inside Aut(W); vertex transitivity", [&](Outcome& o) { criterion6(o, scenarios); }},
      {"theorem-mode regular candidate", [&](Outcome& o) { criterion7(o, scenarios); }},
      {"G-join certificates", [&](Outcome& o) { criterion8(o, gjoins); }},
      {"automorphism oracle cross-checks", [&](Outcome& o) { criterion9(o, scenarios); }},
      {"obstructions lie in K", [&](Outcome& o) { criterion10(o, scaffolds); }},
  };

  int unexpected = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    const auto known = kKnownDeviations.find(id);
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << id << ": " << criteria[i].first << "  -- "
              << o.detail.str();
    if (!o.pass && known != kKnownDeviations.end()) std::cout << " [known deviation: " << known->second << "]";
    std::cout << "\n";
    if (!o.pass && known == kKnownDeviations.end()) ++unexpected;
  }
  return unexpected == 0 ? 0 : 1;
}

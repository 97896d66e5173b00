#include <doctest.h>

#include <set>

#include "cayjoin/error.hpp"
#include "cayjoin/graphs.hpp"
#include "cayjoin/synth.hpp"
#include "support/families.hpp"
#include "support/oracles.hpp"

using namespace cayjoin;
using namespace cayjoin::synth;
using groups::Elem;

namespace {

CayleyScenario d6_scenario() {
  CayleyScenario sc;
  sc.a = groups::dihedral(6);
  sc.s_a = {sc.a.at("x"), sc.a.at("x2"), sc.a.at("y")};
  sc.h_gens = {sc.a.at("x")};
  sc.c = groups::direct_product({groups::cyclic(3, "a"), groups::cyclic(3, "b")});
  sc.s_c = {sc.c.at("a"), sc.c.at("a2"), sc.c.at("b"), sc.c.at("b2")};
  sc.theta = {{sc.c.at("a"), sc.a.at("x")}, {sc.c.at("b"), sc.a.identity()}};
  return sc;
}

CayleyScenario q8_scenario() {
  CayleyScenario sc;
  sc.a = groups::elementary_abelian(2, 3);
  sc.s_a = {sc.a.at("a"), sc.a.at("b"), sc.a.at("c")};
  sc.h_gens = {sc.a.at("a"), sc.a.at("b")};
  sc.c = groups::quaternion8();
  sc.s_c = {sc.c.at("i"), sc.c.at("-i"), sc.c.at("j"), sc.c.at("-j")};
  sc.theta = {{sc.c.at("i"), sc.a.at("a")}, {sc.c.at("j"), sc.a.at("b")}};
  sc.mode = SynthMode::Theorem;
  return sc;
}

std::string bits(const HypothesisReport& h) {
  std::string out;
  for (bool b : {h.h1_base_centralizer, h.h2_fiber_centralizer, h.h3_direct_complement, h.h4_subgroup_transversal,
                 h.h5_direct_transversal}) {
    out += b ? '1' : '0';
  }
  return out;
}

}  // namespace

TEST_CASE("D6 x C3 certificate") {
  const auto cert = synthesize_cayley(d6_scenario());
  CHECK(cert.w.vertex_count() == 18);
  CHECK(cert.w.edge_count() == 63);
  CHECK(cert.r.order() == 18);
  CHECK(bits(cert.hypotheses) == "01011");
  CHECK_FALSE(cert.used_search);
  std::set<std::string> names;
  for (Elem x : cert.s_r) names.insert(cert.r.name(x));
  CHECK(names == std::set<std::string>{"bar(x)", "bar(x2)", "hat(b)", "hat(b2)", "bar(y)", "hat(b)*bar(y)",
                                       "hat(b2)*bar(y)"});
  CHECK(graphs::is_isomorphism(cert.w, cert.cayley, cert.witness));
  CHECK(cert.aut_containment);
  CHECK(cert.vertex_transitive);
  CHECK(cert.r.name(cert.r.identity()) == "1");
}

TEST_CASE("automorphism counts agree with the oracle") {
  const auto w35 = build_w(d6_scenario()).w;
  const auto aut35 = graphs::automorphism_group(w35);
  CHECK(aut35.order() == 4320);
  CHECK(oracle::automorphisms(w35).size() == 4320);
  const auto w36 = build_w(q8_scenario()).w;
  const auto aut36 = graphs::automorphism_group(w36);
  CHECK(aut36.order() == 12288);
  CHECK(oracle::automorphisms(w36).size() == 12288);
}

TEST_CASE("Q8 certificate in theorem mode") {
  const auto cert = synthesize_cayley(q8_scenario());
  CHECK(bits(cert.hypotheses) == "11100");
  CHECK(cert.r.order() == 16);
  CHECK(cert.s_r.size() == 6);
  CHECK(cert.w.edge_count() == 48);
}

TEST_CASE("mode handling") {
  auto sc = d6_scenario();
  sc.mode = SynthMode::Theorem;
  CHECK_THROWS_WITH_AS(synthesize_cayley(sc), doctest::Contains("TheoremChoicesUnavailable"), Error);
  sc.mode = SynthMode::Canonical;
  CHECK(synthesize_cayley(sc).r.order() == 18);
  sc.mode = SynthMode::Search;
  sc.caps.search_budget = 0;
  CHECK_THROWS_WITH_AS(synthesize_cayley(sc), doctest::Contains("SynthesisFailed"), Error);
  CHECK(parse_synth_mode("theorem") == SynthMode::Theorem);
  CHECK_THROWS_AS(parse_synth_mode("fast"), Error);
}

TEST_CASE("fault injection: a deleted edge is caught with a witness") {
  auto built = build_w(d6_scenario());
  const auto [u, v] = built.w.edges().front();
  built.w.remove_edge(u, v);
  const auto report = verify_aut_containment(built.w, built.scaffold);
  CHECK_FALSE(report.ok);
  CHECK_FALSE(report.witness.empty());
  CHECK_FALSE(certify_vertex_transitive(built.w, built.scaffold));
}

TEST_CASE("hypothesis report agrees with brute-force subgroup checks") {
  for (const auto& c : family::cayley_family()) {
    CAPTURE(c.name);
    const auto& sc = c.scenario;
    const auto h = validate_hypotheses(sc);
    const auto s = gwp::Scaffold::build(sc.a, sc.h_gens, sc.c, sc.theta, gwp::Mode::Canonical);
    const auto& hm = s.stabilizer().members();
    const auto& km = s.kernel().members();
    const auto order_a = static_cast<std::size_t>(sc.a.order());
    const auto order_c = static_cast<std::size_t>(sc.c.order());
    CHECK(h.h1_base_centralizer == (oracle::product_size(sc.a, hm, oracle::centralizer(sc.a, hm)) == order_a));
    CHECK(h.h2_fiber_centralizer == (oracle::product_size(sc.c, km, oracle::centralizer(sc.c, km)) == order_c));
    CHECK(h.h3_direct_complement == oracle::direct_complement_exists(sc.a, hm));
    CHECK(h.h4_subgroup_transversal == oracle::complement_exists(sc.c, km, false));
    CHECK(h.h5_direct_transversal == oracle::complement_exists(sc.c, km, true));
  }
}

TEST_CASE("G-joins with trivial fibers reproduce the base Cayley graph") {
  const auto c6 = groups::cyclic(6);
  const std::vector<Elem> s = {c6.at("g"), c6.at("g5"), c6.at("g3")};
  const auto sc = g_join_scenario(c6, s, groups::cyclic(1), {});
  const auto cert = synthesize_cayley(sc);
  CHECK(cert.w.edges() == graphs::cayley_graph(c6, s).edges());
  CHECK(cert.s_r.size() == 3);
}

TEST_CASE("G-join with cyclic fibers") {
  const auto c4 = groups::cyclic(4);
  const std::vector<Elem> s = {c4.at("g"), c4.at("g3")};
  const auto c3 = groups::cyclic(3, "t");
  const std::vector<Elem> sc3 = {c3.at("t"), c3.at("t2")};
  const auto cert = synthesize_cayley(g_join_scenario(c4, s, c3, sc3));
  // C4[K3] = C4 lexicographic K3.
  CHECK(graphs::graph_isomorphic(cert.w, xjoin::lexicographic_product(graphs::cycle_graph(4),
                                                                      graphs::complete_graph(3)))
            .has_value());
  CHECK(cert.r.order() == 12);
}

#include "cayjoin/synth.hpp"

#include <algorithm>
#include <set>

#include "cayjoin/error.hpp"

namespace cayjoin::synth {

using graphs::Graph;
using perms::Perm;

std::string to_string(SynthMode mode) {
  switch (mode) {
    case SynthMode::Canonical: return "canonical";
    case SynthMode::Theorem: return "theorem";
    case SynthMode::Search: return "search";
  }
  return "?";
}

SynthMode parse_synth_mode(const std::string& name) {
  if (name == "canonical") return SynthMode::Canonical;
  if (name == "theorem") return SynthMode::Theorem;
  if (name == "search") return SynthMode::Search;
  throw Error(Errc::InvalidInput, "unknown mode '" + name + "' (expected canonical, theorem or search)");
}

CayleyScenario g_join_scenario(FiniteGroup a, std::vector<Elem> s_a, FiniteGroup c, std::vector<Elem> s_c) {
  CayleyScenario sc;
  for (Elem g : groups::generating_set(c)) sc.theta[g] = a.identity();
  sc.a = std::move(a);
  sc.s_a = std::move(s_a);
  sc.c = std::move(c);
  sc.s_c = std::move(s_c);
  return sc;
}

gwp::Scaffold scenario_scaffold(const CayleyScenario& sc) {
  switch (sc.mode) {
    case SynthMode::Theorem:
      return gwp::Scaffold::build(sc.a, sc.h_gens, sc.c, sc.theta, gwp::Mode::Theorem);
    case SynthMode::Search:
      try {
        return gwp::Scaffold::build(sc.a, sc.h_gens, sc.c, sc.theta, gwp::Mode::Theorem);
      } catch (const Error& e) {
        if (e.code() != Errc::TheoremChoicesUnavailable) throw;
      }
      [[fallthrough]];
    case SynthMode::Canonical:
      break;
  }
  return gwp::Scaffold::build(sc.a, sc.h_gens, sc.c, sc.theta, gwp::Mode::Canonical);
}

BuiltW build_w(const CayleyScenario& sc, const gwp::Scaffold& s) {
  const Graph base = graphs::cayley_graph(sc.a, sc.s_a);
  const Graph fiber = graphs::cayley_graph(sc.c, sc.s_c);
  const auto& h = s.stabilizer();

  std::vector<std::vector<int>> blocks;
  xjoin::XJoinInput input;
  input.base = base;
  input.collapse_allowed = sc.collapse_allowed;
  for (int b = 0; b < s.block_count(); ++b) {
    std::vector<int> block;
    for (Elem x : h.members()) block.push_back(sc.a.mul(x, s.reps()[b]));
    std::sort(block.begin(), block.end());
    blocks.push_back(std::move(block));
    input.block_names.push_back(s.block_name(b));
    input.fibers.push_back(fiber);
    graphs::VertexMap lambda;
    for (Elem m = 0; m < sc.c.order(); ++m) lambda.image.push_back(s.lambda(s.point(b, m)));
    input.lambdas.push_back(std::move(lambda));
  }
  input.sigma = perms::PartitionOfPoints(sc.a.order(), std::move(blocks));
  Graph w = xjoin::generalized_xjoin(input);
  return BuiltW{std::move(w), s, std::move(input)};
}

BuiltW build_w(const CayleyScenario& sc) { return build_w(sc, scenario_scaffold(sc)); }

namespace {

std::optional<std::pair<int, int>> broken_edge(const Graph& w, const Perm& p) {
  for (const auto& [u, v] : w.edges()) {
    if (!w.has_edge(p[u], p[v])) return std::make_pair(u, v);
  }
  return std::nullopt;
}

}  // namespace

AutContainment verify_aut_containment(const Graph& w, const gwp::Scaffold& s) {
  AutContainment r;
  if (w.vertex_count() != s.point_count()) {
    r.ok = false;
    r.witness = "vertex count differs from |Y|";
    return r;
  }
  auto check = [&](const Perm& p, const std::string& what) {
    ++r.checked;
    if (!r.ok) return;
    // A bijection mapping every edge to an edge is an automorphism of a finite graph.
    if (auto e = broken_edge(w, p)) {
      r.ok = false;
      r.witness = what + " breaks edge " + w.label(e->first) + " -- " + w.label(e->second);
    }
  };
  for (const Perm& k : gwp::base_group_K_generators(s)) check(k, "kernel generator");
  for (Elem f = 0; f < s.base().order(); ++f) check(gwp::lift(s, f), "lift of " + s.base().name(f));
  return r;
}

bool certify_vertex_transitive(const Graph& w, const gwp::Scaffold& s) {
  if (w.vertex_count() <= 1) return true;
  std::vector<Perm> gens = gwp::diagonal_J(s).generators();
  for (Elem f = 0; f < s.base().order(); ++f) gens.push_back(gwp::lift(s, f));
  return graphs::is_vertex_transitive(w, gens);
}

HypothesisReport validate_hypotheses(const CayleyScenario& sc) {
  const gwp::Scaffold s = gwp::Scaffold::build(sc.a, sc.h_gens, sc.c, sc.theta, gwp::Mode::Canonical);
  const auto& a = sc.a;
  const auto& c = sc.c;
  const auto& h = s.stabilizer();
  const auto& k = s.kernel();
  HypothesisReport r;
  r.h1_base_centralizer = groups::product_set_size(a, h, groups::centralizer(a, h)) == static_cast<std::size_t>(a.order());
  r.h2_fiber_centralizer = groups::product_set_size(c, k, groups::centralizer(c, k)) == static_cast<std::size_t>(c.order());
  r.h3_direct_complement = groups::direct_complement(a, h).has_value();
  r.h4_subgroup_transversal =
      groups::centralizing_transversal(c, k, s.theta(), groups::TransversalMode::Subgroup).has_value();
  r.h5_direct_transversal =
      groups::centralizing_transversal(c, k, s.theta(), groups::TransversalMode::CentralizingSubgroup).has_value();
  return r;
}

std::string element_name(const gwp::Scaffold& s, Elem l, Elem f) {
  std::string out;
  if (l != s.fiber().identity()) out = "hat(" + s.fiber().name(l) + ")";
  if (f != s.base().identity()) out += (out.empty() ? "" : "*") + ("bar(" + s.base().name(f) + ")");
  return out.empty() ? "1" : out;
}

CayleyCertificate synthesize_cayley(const CayleyScenario& sc) {
  CayleyCertificate cert;
  cert.mode = sc.mode;
  cert.hypotheses = validate_hypotheses(sc);

  gwp::Scaffold s = scenario_scaffold(sc);
  if (sc.mode == SynthMode::Search) {
    gwp::LiftSearchStats stats;
    auto found = gwp::lift_search(s, sc.caps.search_budget, &stats);
    cert.search_evaluations = stats.evaluations;
    cert.used_search = !stats.used_initial_choice;
    if (!found) {
      throw Error(Errc::SynthesisFailed, "no lift choice makes J*F-bar a group within a budget of " +
                                             std::to_string(sc.caps.search_budget) + " evaluations");
    }
    s = s.with_lift_choice(std::move(*found));
  }

  BuiltW built = build_w(sc, s);
  const Graph& w = built.w;

  const gwp::RegularSubgroup r = [&] {
    try {
      return gwp::regular_candidate(s, sc.caps);
    } catch (const Error& e) {
      if (e.code() != Errc::NotClosed && e.code() != Errc::NotRegular) throw;
      throw Error(Errc::SynthesisFailed, to_string(sc.mode) + " lift choices do not give a regular group: " + e.what());
    }
  }();

  const AutContainment containment = verify_aut_containment(w, s);
  if (!containment.ok) throw Error(Errc::VerificationFailed, containment.witness);
  cert.aut_containment = true;
  cert.vertex_transitive = certify_vertex_transitive(w, s);
  if (!cert.vertex_transitive) throw Error(Errc::VerificationFailed, "<J, F-bar> is not transitive on V(W)");

  // Order R by the image of the base vertex e: element i sends e to vertex i.
  const int n = w.vertex_count();
  const int e = s.point(0, sc.c.identity());
  std::vector<Perm> ordered(n);
  std::vector<std::pair<Elem, Elem>> factors(n);
  std::vector<std::string> names(n);
  const auto& elements = r.group.elements();
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const int v = elements[i][e];
    ordered[v] = elements[i];
    factors[v] = r.factors[i];
    names[v] = element_name(s, r.factors[i].first, r.factors[i].second);
  }
  cert.r = perms::to_finite_group(r.group, ordered, names);
  cert.factors = std::move(factors);

  // S_R from the neighbourhood of the base vertex.
  cert.s_r = w.neighbors(e);
  std::sort(cert.s_r.begin(), cert.s_r.end());

  // The coset formula: S_C on the first block, lambda^-1(S_A) elsewhere.
  std::set<int> formula;
  for (Elem x : sc.s_c) formula.insert(s.point(0, x));
  const std::set<Elem> s_a(sc.s_a.begin(), sc.s_a.end());
  for (int b = 1; b < s.block_count(); ++b) {
    for (Elem m = 0; m < sc.c.order(); ++m) {
      const int p = s.point(b, m);
      if (s_a.count(s.lambda(p))) formula.insert(p);
    }
  }
  if (std::vector<int>(formula.begin(), formula.end()) != cert.s_r) {
    throw Error(Errc::VerificationFailed, "connection set from the neighbourhood disagrees with the coset formula");
  }
  for (Elem x : cert.s_r) {
    if (x == cert.r.identity()) throw Error(Errc::VerificationFailed, "identity in the connection set");
    if (!std::binary_search(cert.s_r.begin(), cert.s_r.end(), cert.r.inverse(x))) {
      throw Error(Errc::VerificationFailed, "connection set is not closed under inverses");
    }
  }
  for (int v = 0; v < n; ++v) {
    if (w.degree(v) != static_cast<int>(cert.s_r.size())) {
      throw Error(Errc::VerificationFailed, "W is not regular of degree |S_R|");
    }
  }

  cert.cayley = graphs::cayley_graph(cert.r, cert.s_r);
  cert.witness.image.resize(n);
  for (int v = 0; v < n; ++v) cert.witness.image[v] = v;
  if (!graphs::is_isomorphism(w, cert.cayley, cert.witness)) {
    throw Error(Errc::VerificationFailed, "labelling r -> e*r is not an isomorphism W -> Cay(R, S_R)");
  }
  cert.w = w;
  cert.scaffold = std::move(s);
  return cert;
}

}  // namespace cayjoin::synth

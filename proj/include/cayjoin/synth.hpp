#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cayjoin/caps.hpp"
#include "cayjoin/graphs.hpp"
#include "cayjoin/groups.hpp"
#include "cayjoin/gwp.hpp"
#include "cayjoin/xjoin.hpp"

namespace cayjoin::synth {

using groups::Elem;
using groups::FiniteGroup;

/// theorem: hypothesis failure is a hard error. search: lift search (seeded
/// with theorem choices when they exist). canonical: canonical lifts only.
enum class SynthMode { Canonical, Theorem, Search };

std::string to_string(SynthMode mode);
/// Throws Error(InvalidInput) for an unknown name.
SynthMode parse_synth_mode(const std::string& name);

/// X-join of Cayley graphs over Cay(A, S_A): blocks are the right cosets of
/// H = <h_gens>, every fiber is a copy of Cay(C, S_C), and the first block's
/// vertex map is theta.
struct CayleyScenario {
  FiniteGroup a{{"e"}, {{0}}};
  std::vector<Elem> s_a;
  std::vector<Elem> h_gens;
  FiniteGroup c{{"e"}, {{0}}};
  std::vector<Elem> s_c;
  std::map<Elem, Elem> theta;  // generator of C -> element of A
  SynthMode mode = SynthMode::Search;
  bool collapse_allowed = true;
  Caps caps;
};

/// H = {e}, theta trivial: the G-join of copies of Cay(C, S_C) over Cay(A, S_A).
CayleyScenario g_join_scenario(FiniteGroup a, std::vector<Elem> s_a, FiniteGroup c, std::vector<Elem> s_c);

struct BuiltW {
  graphs::Graph w;
  gwp::Scaffold scaffold;
  xjoin::XJoinInput input;
};

/// Builds W over an existing scaffold. Vertex index of W equals the point
/// index of Y.
BuiltW build_w(const CayleyScenario& sc, const gwp::Scaffold& s);
/// Chooses the scaffold from sc.mode: theorem choices for theorem mode, and
/// for search mode when available; canonical otherwise.
BuiltW build_w(const CayleyScenario& sc);
gwp::Scaffold scenario_scaffold(const CayleyScenario& sc);

struct AutContainment {
  bool ok = true;
  std::size_t checked = 0;
  std::string witness;  // permutation and edge of the first failure
};

/// Every generator of K and every lift f-bar must map E(W) onto E(W).
AutContainment verify_aut_containment(const graphs::Graph& w, const gwp::Scaffold& s);

/// Orbit of <J, F-bar> on V(W) is everything (witness generators are checked
/// to be automorphisms first).
bool certify_vertex_transitive(const graphs::Graph& w, const gwp::Scaffold& s);

struct HypothesisReport {
  bool h1_base_centralizer = false;      // A = H*C_A(H)
  bool h2_fiber_centralizer = false;     // C = K*C_C(K)
  bool h3_direct_complement = false;     // A = H x A1
  bool h4_subgroup_transversal = false;  // C = K ⋊ T
  bool h5_direct_transversal = false;    // C = K x T, T centralizing K
  bool direct_form() const { return h1_base_centralizer && h2_fiber_centralizer && (h3_direct_complement || h5_direct_transversal); }
  bool semidirect_form() const { return h1_base_centralizer && h2_fiber_centralizer && (h3_direct_complement || h4_subgroup_transversal); }
};

/// Throws only on invalid scenario data (theta, generators).
HypothesisReport validate_hypotheses(const CayleyScenario& sc);

struct CayleyCertificate {
  graphs::Graph w;
  gwp::Scaffold scaffold;
  HypothesisReport hypotheses;
  SynthMode mode = SynthMode::Search;
  bool used_search = false;
  std::size_t search_evaluations = 0;
  /// R relabelled so that element i sends the base vertex to vertex i.
  FiniteGroup r{{"1"}, {{0}}};
  /// (l, f) with element i = l-hat * f-bar.
  std::vector<std::pair<Elem, Elem>> factors;
  std::vector<Elem> s_r;  // sorted
  graphs::Graph cayley;   // Cay(R, S_R)
  graphs::VertexMap witness;
  bool aut_containment = false;
  bool vertex_transitive = false;
};

/// Full pipeline: scaffold, lifts, R = J*F-bar, S_R from the base vertex's
/// neighbourhood cross-checked against the coset formula, and an
/// edge-exact check that the labelling is an isomorphism W -> Cay(R, S_R).
/// Errors: TheoremChoicesUnavailable (theorem mode), SynthesisFailed,
/// VerificationFailed.
CayleyCertificate synthesize_cayley(const CayleyScenario& sc);

/// Name of l-hat * f-bar, e.g. "hat(b)*bar(y)"; "1" for the identity.
std::string element_name(const gwp::Scaffold& s, Elem l, Elem f);

}  // namespace cayjoin::synth

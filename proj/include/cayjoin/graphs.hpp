#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cayjoin/caps.hpp"
#include "cayjoin/groups.hpp"
#include "cayjoin/perms.hpp"

namespace cayjoin::graphs {

/// Finite simple undirected graph with index-stable vertex labels.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::vector<std::string> labels);

  int vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_; }
  const std::string& label(int v) const { return labels_[v]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<int> find(std::string_view label) const;

  /// Throws Error(InvalidInput) on loops or out-of-range endpoints; adding an
  /// existing edge is a no-op.
  void add_edge(int u, int v);
  void remove_edge(int u, int v);
  bool has_edge(int u, int v) const { return adj_[static_cast<std::size_t>(u) * n_ + v] != 0; }

  int degree(int v) const;
  std::vector<int> neighbors(int v) const;
  /// Each edge once as (min, max), sorted.
  std::vector<std::pair<int, int>> edges() const;

  bool operator==(const Graph& other) const = default;

 private:
  int n_ = 0;
  std::vector<std::string> labels_;
  std::vector<unsigned char> adj_;
  std::size_t edges_ = 0;
};

/// A vertex map between two graphs, as an image list over the domain.
struct VertexMap {
  std::vector<int> image;
};

Graph edgeless_graph(int n);
Graph complete_graph(int n);
Graph path_graph(int n);
Graph cycle_graph(int n);

/// Cay(A, S): vertex i is element i, edge (a, b) iff a*b^-1 in S. Throws
/// Error(AsymmetricConnectionSet) or Error(IdentityInConnectionSet).
Graph cayley_graph(const groups::FiniteGroup& a, std::span<const groups::Elem> s);

/// G[X] with vertices in the order given; original labels are kept.
Graph induced_subgraph(const Graph& g, std::span<const int> vertices);

/// (u,v) in E(dom) implies (f(u), f(v)) in E(cod); when `collapse_allowed`,
/// an edge may also collapse onto one vertex (the codomain is read as reflexive).
bool is_graph_homomorphism(const Graph& dom, const Graph& cod, const VertexMap& f, bool collapse_allowed);

/// Homomorphism that is onto both the vertices and the edges of `cod`.
bool is_graph_epimorphism(const Graph& dom, const Graph& cod, const VertexMap& f, bool collapse_allowed = true);

/// Bijection that maps E(g) exactly onto E(h).
bool is_isomorphism(const Graph& g, const Graph& h, const VertexMap& f);
bool is_automorphism(const Graph& g, const perms::Perm& p);

/// Backtracking search with degree and neighbour-degree pruning. The witness is
/// edge-verified before it is returned. Throws Error(SizeCapExceeded) above
/// caps.iso_vertices.
std::optional<VertexMap> graph_isomorphic(const Graph& g, const Graph& h, const Caps& caps = {});

/// Every automorphism, found by exhaustive backtracking. Throws
/// Error(SizeCapExceeded) above caps.aut_vertices and Error(ClosureCapExceeded)
/// when more than caps.closure automorphisms exist.
perms::PermGroup automorphism_group(const Graph& g, const Caps& caps = {});

bool is_vertex_transitive(const Graph& g, const Caps& caps = {});
/// Uses the group generated by `witness` instead of Aut(G). The witnesses are
/// checked to be automorphisms; a non-automorphism makes the answer false.
bool is_vertex_transitive(const Graph& g, std::span<const perms::Perm> witness);

/// Inverse of a bijective vertex map.
VertexMap invert(const VertexMap& f);

}  // namespace cayjoin::graphs

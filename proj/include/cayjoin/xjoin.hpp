#pragma once

#include <string>
#include <vector>

#include "cayjoin/graphs.hpp"
#include "cayjoin/perms.hpp"

namespace cayjoin::xjoin {

/// Data for a generalized X-join: a base graph, a partition of its vertices,
/// and per block a fiber graph with a vertex map onto that block.
struct XJoinInput {
  graphs::Graph base;
  perms::PartitionOfPoints sigma{0, {}};
  /// Label per block, used as the prefix of W's vertex labels ("X:v").
  std::vector<std::string> block_names;
  std::vector<graphs::Graph> fibers;
  /// lambdas[b].image[y] is a vertex of `base` (global index) inside block b.
  std::vector<graphs::VertexMap> lambdas;
  bool collapse_allowed = true;
};

/// Checks the partition and that every lambda is an epimorphism onto G[X].
/// Throws Error(SigmaNotPartition) or Error(LambdaNotEpimorphism).
void validate(const XJoinInput& input);

/// W = G o_lambda {B_X}: fibers laid out block by block in partition order.
/// (y, y') is an edge iff it is a fiber edge, or y, y' lie in different blocks
/// and lambda(y) ~ lambda(y') in G.
graphs::Graph generalized_xjoin(const XJoinInput& input);

/// The partition of V(W) into the fiber vertex sets Y_X.
perms::PartitionOfPoints fiber_partition(const XJoinInput& input);

/// Blocks are singletons; every fiber is `fiber`; lambda is constant.
XJoinInput lexicographic_input(const graphs::Graph& g, const graphs::Graph& fiber);
/// Singleton blocks with per-vertex fibers (generalized composition).
XJoinInput g_join_input(const graphs::Graph& g, const std::vector<graphs::Graph>& fibers);

/// G o H built through generalized_xjoin and cross-checked against the direct
/// definition (u,v) ~ (u',v') iff u ~ u', or u = u' and v ~ v'.
graphs::Graph lexicographic_product(const graphs::Graph& g, const graphs::Graph& h);
graphs::Graph g_join(const graphs::Graph& g, const std::vector<graphs::Graph>& fibers);

/// For all blocks B, C and v, w in B: |N(v) ∩ C| = |N(w) ∩ C|.
bool is_equitable(const graphs::Graph& w, const perms::PartitionOfPoints& p);

}  // namespace cayjoin::xjoin

#include "cayjoin/xjoin.hpp"

#include <algorithm>

#include "cayjoin/error.hpp"

namespace cayjoin::xjoin {

using graphs::Graph;
using graphs::VertexMap;

void validate(const XJoinInput& input) {
  const auto& sigma = input.sigma;
  if (sigma.degree() != input.base.vertex_count()) {
    throw Error(Errc::SigmaNotPartition, "partition covers " + std::to_string(sigma.degree()) +
                                             " points but the base graph has " +
                                             std::to_string(input.base.vertex_count()) + " vertices");
  }
  if (input.fibers.size() != sigma.size() || input.lambdas.size() != sigma.size() ||
      input.block_names.size() != sigma.size()) {
    throw Error(Errc::InvalidInput, "need one fiber, one lambda and one name per block");
  }
  for (std::size_t b = 0; b < sigma.size(); ++b) {
    const auto& block = sigma.block(b);
    const auto& lambda = input.lambdas[b];
    const Graph& fiber = input.fibers[b];
    if (static_cast<int>(lambda.image.size()) != fiber.vertex_count()) {
      throw Error(Errc::LambdaNotEpimorphism, "lambda for block " + input.block_names[b] +
                                                  " is not defined on every fiber vertex");
    }
    // Re-express lambda into local indices of G[X].
    VertexMap local;
    for (int x : lambda.image) {
      auto it = std::find(block.begin(), block.end(), x);
      if (it == block.end()) {
        throw Error(Errc::LambdaNotEpimorphism,
                    "lambda for block " + input.block_names[b] + " leaves the block (vertex " +
                        (x >= 0 && x < input.base.vertex_count() ? input.base.label(x) : std::to_string(x)) + ")");
      }
      local.image.push_back(static_cast<int>(it - block.begin()));
    }
    const Graph induced = graphs::induced_subgraph(input.base, block);
    if (!graphs::is_graph_epimorphism(fiber, induced, local, input.collapse_allowed)) {
      throw Error(Errc::LambdaNotEpimorphism,
                  "lambda for block " + input.block_names[b] + " is not a graph epimorphism onto G[X]" +
                      (input.collapse_allowed ? "" : " (edge collapse disallowed)"));
    }
  }
}

Graph generalized_xjoin(const XJoinInput& input) {
  validate(input);
  std::vector<std::string> labels;
  std::vector<int> block_of;
  std::vector<int> local;
  std::vector<int> offset;
  for (std::size_t b = 0; b < input.fibers.size(); ++b) {
    offset.push_back(static_cast<int>(labels.size()));
    const Graph& fiber = input.fibers[b];
    for (int v = 0; v < fiber.vertex_count(); ++v) {
      labels.push_back(input.block_names[b] + ":" + fiber.label(v));
      block_of.push_back(static_cast<int>(b));
      local.push_back(v);
    }
  }
  Graph w(std::move(labels));
  // Rule 1: fiber edges.
  for (std::size_t b = 0; b < input.fibers.size(); ++b) {
    for (const auto& [u, v] : input.fibers[b].edges()) w.add_edge(offset[b] + u, offset[b] + v);
  }
  // Rule 2: complete bipartite bundles over base edges between distinct blocks.
  const int n = w.vertex_count();
  for (int y = 0; y < n; ++y) {
    const int x = input.lambdas[block_of[y]].image[local[y]];
    for (int z = y + 1; z < n; ++z) {
      if (block_of[y] == block_of[z]) continue;
      const int xz = input.lambdas[block_of[z]].image[local[z]];
      if (input.base.has_edge(x, xz)) w.add_edge(y, z);
    }
  }
  return w;
}

perms::PartitionOfPoints fiber_partition(const XJoinInput& input) {
  std::vector<std::vector<int>> blocks;
  int next = 0;
  for (const auto& fiber : input.fibers) {
    std::vector<int> block(fiber.vertex_count());
    for (auto& v : block) v = next++;
    blocks.push_back(std::move(block));
  }
  return perms::PartitionOfPoints(next, std::move(blocks));
}

XJoinInput g_join_input(const Graph& g, const std::vector<Graph>& fibers) {
  if (static_cast<int>(fibers.size()) != g.vertex_count()) {
    throw Error(Errc::InvalidInput, "G-join needs one fiber per vertex");
  }
  XJoinInput input;
  input.base = g;
  input.sigma = perms::PartitionOfPoints::singletons(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) {
    input.block_names.push_back(g.label(v));
    input.fibers.push_back(fibers[v]);
    input.lambdas.push_back(VertexMap{std::vector<int>(fibers[v].vertex_count(), v)});
  }
  return input;
}

XJoinInput lexicographic_input(const Graph& g, const Graph& fiber) {
  return g_join_input(g, std::vector<Graph>(g.vertex_count(), fiber));
}

Graph g_join(const Graph& g, const std::vector<Graph>& fibers) { return generalized_xjoin(g_join_input(g, fibers)); }

Graph lexicographic_product(const Graph& g, const Graph& h) {
  Graph w = generalized_xjoin(lexicographic_input(g, h));
  const int m = h.vertex_count();
  // Vertex (u, v) sits at u*m + v in both constructions.
  for (int a = 0; a < w.vertex_count(); ++a) {
    for (int b = a + 1; b < w.vertex_count(); ++b) {
      const int u = a / m, v = a % m, u2 = b / m, v2 = b % m;
      const bool direct = g.has_edge(u, u2) || (u == u2 && h.has_edge(v, v2));
      if (direct != w.has_edge(a, b)) {
        throw Error(Errc::VerificationFailed, "lexicographic product disagrees with its direct definition at (" +
                                                  w.label(a) + ", " + w.label(b) + ")");
      }
    }
  }
  return w;
}

bool is_equitable(const Graph& w, const perms::PartitionOfPoints& p) {
  if (p.degree() != w.vertex_count()) return false;
  const std::size_t k = p.size();
  for (const auto& block : p.blocks()) {
    std::vector<int> first;
    for (int v : block) {
      std::vector<int> counts(k, 0);
      for (int u : w.neighbors(v)) ++counts[p.block_of(u)];
      if (first.empty()) {
        first = counts;
      } else if (counts != first) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace cayjoin::xjoin

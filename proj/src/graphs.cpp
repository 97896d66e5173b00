#include "cayjoin/graphs.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "cayjoin/error.hpp"

namespace cayjoin::graphs {

using groups::Elem;
using perms::Perm;

Graph::Graph(std::vector<std::string> labels)
    : n_(static_cast<int>(labels.size())), labels_(std::move(labels)),
      adj_(static_cast<std::size_t>(n_) * n_, 0) {}

std::optional<int> Graph::find(std::string_view label) const {
  for (int v = 0; v < n_; ++v) {
    if (labels_[v] == label) return v;
  }
  return std::nullopt;
}

void Graph::add_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) throw Error(Errc::InvalidInput, "edge endpoint out of range");
  if (u == v) throw Error(Errc::InvalidInput, "loop at vertex " + labels_[u]);
  if (has_edge(u, v)) return;
  adj_[static_cast<std::size_t>(u) * n_ + v] = 1;
  adj_[static_cast<std::size_t>(v) * n_ + u] = 1;
  ++edges_;
}

void Graph::remove_edge(int u, int v) {
  if (!has_edge(u, v)) return;
  adj_[static_cast<std::size_t>(u) * n_ + v] = 0;
  adj_[static_cast<std::size_t>(v) * n_ + u] = 0;
  --edges_;
}

int Graph::degree(int v) const {
  int d = 0;
  for (int w = 0; w < n_; ++w) d += has_edge(v, w);
  return d;
}

std::vector<int> Graph::neighbors(int v) const {
  std::vector<int> out;
  for (int w = 0; w < n_; ++w) {
    if (has_edge(v, w)) out.push_back(w);
  }
  return out;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(edges_);
  for (int u = 0; u < n_; ++u) {
    for (int v = u + 1; v < n_; ++v) {
      if (has_edge(u, v)) out.emplace_back(u, v);
    }
  }
  return out;
}

namespace {

std::vector<std::string> numbered_labels(int n) {
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = std::to_string(i);
  return labels;
}

}  // namespace

Graph edgeless_graph(int n) { return Graph(numbered_labels(n)); }

Graph complete_graph(int n) {
  Graph g(numbered_labels(n));
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  }
  return g;
}

Graph path_graph(int n) {
  Graph g(numbered_labels(n));
  for (int u = 0; u + 1 < n; ++u) g.add_edge(u, u + 1);
  return g;
}

Graph cycle_graph(int n) {
  Graph g = path_graph(n);
  if (n >= 3) g.add_edge(n - 1, 0);
  return g;
}

Graph cayley_graph(const groups::FiniteGroup& a, std::span<const Elem> s) {
  std::vector<bool> in_s(a.order(), false);
  for (Elem x : s) {
    if (x < 0 || x >= a.order()) throw Error(Errc::InvalidInput, "connection set element out of range");
    in_s[x] = true;
  }
  if (in_s[a.identity()]) throw Error(Errc::IdentityInConnectionSet, "identity " + a.name(a.identity()) + " in S");
  for (Elem x : s) {
    if (!in_s[a.inverse(x)]) {
      throw Error(Errc::AsymmetricConnectionSet,
                  a.name(x) + " is in S but its inverse " + a.name(a.inverse(x)) + " is not");
    }
  }
  Graph g(a.names());
  for (Elem u = 0; u < a.order(); ++u) {
    for (Elem v = u + 1; v < a.order(); ++v) {
      if (in_s[a.mul(u, a.inverse(v))]) g.add_edge(u, v);
    }
  }
  return g;
}

Graph induced_subgraph(const Graph& g, std::span<const int> vertices) {
  std::vector<std::string> labels;
  for (int v : vertices) {
    if (v < 0 || v >= g.vertex_count()) throw Error(Errc::InvalidInput, "vertex out of range");
    labels.push_back(g.label(v));
  }
  Graph out(std::move(labels));
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (g.has_edge(vertices[i], vertices[j])) out.add_edge(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return out;
}

bool is_graph_homomorphism(const Graph& dom, const Graph& cod, const VertexMap& f, bool collapse_allowed) {
  if (static_cast<int>(f.image.size()) != dom.vertex_count()) return false;
  for (int x : f.image) {
    if (x < 0 || x >= cod.vertex_count()) return false;
  }
  for (const auto& [u, v] : dom.edges()) {
    const int fu = f.image[u], fv = f.image[v];
    if (fu == fv) {
      if (!collapse_allowed) return false;
    } else if (!cod.has_edge(fu, fv)) {
      return false;
    }
  }
  return true;
}

bool is_graph_epimorphism(const Graph& dom, const Graph& cod, const VertexMap& f, bool collapse_allowed) {
  if (!is_graph_homomorphism(dom, cod, f, collapse_allowed)) return false;
  std::vector<bool> hit(cod.vertex_count(), false);
  for (int x : f.image) hit[x] = true;
  if (std::find(hit.begin(), hit.end(), false) != hit.end()) return false;
  std::set<std::pair<int, int>> covered;
  for (const auto& [u, v] : dom.edges()) {
    const int fu = f.image[u], fv = f.image[v];
    if (fu != fv) covered.emplace(std::min(fu, fv), std::max(fu, fv));
  }
  return covered.size() == cod.edge_count();
}

bool is_isomorphism(const Graph& g, const Graph& h, const VertexMap& f) {
  if (g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count()) return false;
  if (static_cast<int>(f.image.size()) != g.vertex_count()) return false;
  std::vector<bool> hit(h.vertex_count(), false);
  for (int x : f.image) {
    if (x < 0 || x >= h.vertex_count() || hit[x]) return false;
    hit[x] = true;
  }
  // Equal edge counts plus an injective edge map give E(h) exactly.
  for (const auto& [u, v] : g.edges()) {
    if (!h.has_edge(f.image[u], f.image[v])) return false;
  }
  return true;
}

bool is_automorphism(const Graph& g, const Perm& p) {
  if (p.degree() != g.vertex_count()) return false;
  return is_isomorphism(g, g, VertexMap{p.images()});
}

VertexMap invert(const VertexMap& f) {
  VertexMap inv;
  inv.image.assign(f.image.size(), -1);
  for (std::size_t i = 0; i < f.image.size(); ++i) inv.image[f.image[i]] = static_cast<int>(i);
  return inv;
}

namespace {

/// Per-vertex invariant: degree followed by the sorted neighbour degrees.
std::vector<std::vector<int>> colours(const Graph& g) {
  std::vector<int> deg(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) deg[v] = g.degree(v);
  std::vector<std::vector<int>> out(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) {
    out[v].push_back(deg[v]);
    std::vector<int> nd;
    for (int w : g.neighbors(v)) nd.push_back(deg[w]);
    std::sort(nd.begin(), nd.end());
    out[v].insert(out[v].end(), nd.begin(), nd.end());
  }
  return out;
}

/// Assignment order for g: each next vertex has the most already-placed
/// neighbours, so adjacency constraints bite early.
std::vector<int> search_order(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<int> order;
  std::vector<bool> placed(n, false);
  std::vector<int> placed_nbrs(n, 0);
  for (int step = 0; step < n; ++step) {
    int best = -1;
    for (int v = 0; v < n; ++v) {
      if (placed[v]) continue;
      if (best == -1 || placed_nbrs[v] > placed_nbrs[best] ||
          (placed_nbrs[v] == placed_nbrs[best] && g.degree(v) > g.degree(best))) {
        best = v;
      }
    }
    placed[best] = true;
    order.push_back(best);
    for (int w : g.neighbors(best)) ++placed_nbrs[w];
  }
  return order;
}

/// Enumerates isomorphisms g -> h; `visit` returns true to stop.
void for_each_isomorphism(const Graph& g, const Graph& h, const std::function<bool(const std::vector<int>&)>& visit) {
  const int n = g.vertex_count();
  if (n != h.vertex_count() || g.edge_count() != h.edge_count()) return;
  const auto cg = colours(g);
  const auto ch = colours(h);
  {
    auto sg = cg, sh = ch;
    std::sort(sg.begin(), sg.end());
    std::sort(sh.begin(), sh.end());
    if (sg != sh) return;
  }
  const std::vector<int> order = search_order(g);
  std::vector<int> map(n, -1);
  std::vector<bool> used(n, false);
  bool stop = false;
  auto rec = [&](auto&& self, int depth) -> void {
    if (stop) return;
    if (depth == n) {
      stop = visit(map);
      return;
    }
    const int v = order[depth];
    for (int w = 0; w < n && !stop; ++w) {
      if (used[w] || cg[v] != ch[w]) continue;
      bool ok = true;
      for (int d = 0; d < depth && ok; ++d) {
        const int u = order[d];
        ok = g.has_edge(u, v) == h.has_edge(map[u], w);
      }
      if (!ok) continue;
      map[v] = w;
      used[w] = true;
      self(self, depth + 1);
      used[w] = false;
      map[v] = -1;
    }
  };
  rec(rec, 0);
}

}  // namespace

std::optional<VertexMap> graph_isomorphic(const Graph& g, const Graph& h, const Caps& caps) {
  if (static_cast<std::size_t>(std::max(g.vertex_count(), h.vertex_count())) > caps.iso_vertices) {
    throw Error(Errc::SizeCapExceeded, "graph isomorphism limited to " + std::to_string(caps.iso_vertices) +
                                           " vertices (iso_vertices cap)");
  }
  std::optional<VertexMap> found;
  for_each_isomorphism(g, h, [&](const std::vector<int>& map) {
    found = VertexMap{map};
    return true;
  });
  if (found && !is_isomorphism(g, h, *found)) {
    throw Error(Errc::VerificationFailed, "isomorphism search produced an invalid witness");
  }
  return found;
}

perms::PermGroup automorphism_group(const Graph& g, const Caps& caps) {
  if (static_cast<std::size_t>(g.vertex_count()) > caps.aut_vertices) {
    throw Error(Errc::SizeCapExceeded, "automorphism enumeration limited to " + std::to_string(caps.aut_vertices) +
                                           " vertices (aut_vertices cap)");
  }
  std::vector<Perm> elements;
  for_each_isomorphism(g, g, [&](const std::vector<int>& map) {
    elements.emplace_back(map);
    if (elements.size() > caps.closure) {
      throw Error(Errc::ClosureCapExceeded,
                  "more than " + std::to_string(caps.closure) + " automorphisms (closure cap)");
    }
    return false;
  });
  // Greedy generating set, so consumers that only read generators stay cheap.
  std::vector<Perm> gens;
  std::set<Perm> generated{Perm::identity(g.vertex_count())};
  for (const auto& p : elements) {
    if (generated.count(p)) continue;
    gens.push_back(p);
    auto sub = perms::closure(g.vertex_count(), gens, elements.size());
    generated = std::set<Perm>(sub.elements().begin(), sub.elements().end());
  }
  return perms::PermGroup(g.vertex_count(), std::move(elements), std::move(gens));
}

bool is_vertex_transitive(const Graph& g, const Caps& caps) {
  if (static_cast<std::size_t>(g.vertex_count()) > caps.aut_vertices) {
    throw Error(Errc::SizeCapExceeded, "automorphism enumeration limited to " + std::to_string(caps.aut_vertices) +
                                           " vertices (aut_vertices cap)");
  }
  if (g.vertex_count() <= 1) return true;
  for (int v = 1; v < g.vertex_count(); ++v) {
    if (g.degree(v) != g.degree(0)) return false;
  }
  const auto aut = automorphism_group(g, caps);
  return perms::is_transitive(g.vertex_count(), aut.generators());
}

bool is_vertex_transitive(const Graph& g, std::span<const Perm> witness) {
  for (const auto& p : witness) {
    if (!is_automorphism(g, p)) return false;
  }
  return perms::is_transitive(g.vertex_count(), witness);
}

}  // namespace cayjoin::graphs

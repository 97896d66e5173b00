#include "cayjoin/perms.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <unordered_set>

#include "cayjoin/error.hpp"

namespace cayjoin::perms {

using groups::Elem;
using groups::FiniteGroup;

Perm::Perm(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> hit(images_.size(), false);
  for (int v : images_) {
    if (v < 0 || static_cast<std::size_t>(v) >= images_.size() || hit[v]) {
      throw Error(Errc::InvalidInput, "image list is not a permutation");
    }
    hit[v] = true;
  }
}

Perm Perm::identity(int degree) {
  std::vector<int> id(degree);
  std::iota(id.begin(), id.end(), 0);
  Perm p;
  p.images_ = std::move(id);
  return p;
}

bool Perm::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != static_cast<int>(i)) return false;
  }
  return true;
}

Perm Perm::operator*(const Perm& next) const {
  Perm out;
  out.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) out.images_[i] = next.images_[images_[i]];
  return out;
}

Perm Perm::inverse() const {
  Perm out;
  out.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) out.images_[images_[i]] = static_cast<int>(i);
  return out;
}

std::size_t PermHash::operator()(const Perm& p) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (int v : p.images()) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

PermGroup::PermGroup(int degree, std::vector<Perm> elements, std::vector<Perm> generators)
    : degree_(degree), elements_(std::move(elements)), generators_(std::move(generators)) {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
}

bool PermGroup::contains(const Perm& p) const { return std::binary_search(elements_.begin(), elements_.end(), p); }

int PermGroup::index_of(const Perm& p) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), p);
  if (it == elements_.end() || *it != p) return -1;
  return static_cast<int>(it - elements_.begin());
}

PermGroup closure(int degree, std::span<const Perm> gens, std::size_t cap) {
  for (const auto& g : gens) {
    if (g.degree() != degree) throw Error(Errc::InvalidInput, "generator degree mismatch");
  }
  std::unordered_set<Perm, PermHash> seen;
  std::vector<Perm> elements;
  std::deque<Perm> queue;
  const Perm id = Perm::identity(degree);
  seen.insert(id);
  elements.push_back(id);
  queue.push_back(id);
  while (!queue.empty()) {
    const Perm x = std::move(queue.front());
    queue.pop_front();
    for (const auto& s : gens) {
      Perm y = x * s;
      if (seen.insert(y).second) {
        if (seen.size() > cap) {
          throw Error(Errc::ClosureCapExceeded,
                      "group closure exceeds " + std::to_string(cap) + " elements (closure cap)");
        }
        elements.push_back(y);
        queue.push_back(std::move(y));
      }
    }
  }
  return PermGroup(degree, std::move(elements), std::vector<Perm>(gens.begin(), gens.end()));
}

std::vector<std::vector<int>> orbits(int degree, std::span<const Perm> gens) {
  std::vector<int> orbit_of(degree, -1);
  std::vector<std::vector<int>> out;
  for (int start = 0; start < degree; ++start) {
    if (orbit_of[start] != -1) continue;
    const int id = static_cast<int>(out.size());
    std::vector<int> orbit{start};
    orbit_of[start] = id;
    for (std::size_t i = 0; i < orbit.size(); ++i) {
      for (const auto& g : gens) {
        const int y = g[orbit[i]];
        if (orbit_of[y] == -1) {
          orbit_of[y] = id;
          orbit.push_back(y);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

bool is_transitive(int degree, std::span<const Perm> gens) { return orbits(degree, gens).size() <= 1; }

bool is_transitive(const PermGroup& g) { return is_transitive(g.degree(), g.elements()); }

bool is_regular(const PermGroup& g) {
  return is_regular_set(g.degree(), g.elements());
}

bool is_regular_set(int degree, std::span<const Perm> elements) {
  if (static_cast<int>(elements.size()) != degree) return false;
  if (degree == 0) return true;
  // Distinct images of point 0 give transitivity; then only the identity may
  // fix a point.
  std::vector<bool> hit(degree, false);
  for (const auto& p : elements) {
    if (hit[p[0]]) return false;
    hit[p[0]] = true;
    if (!p.is_identity()) {
      for (int x = 0; x < degree; ++x) {
        if (p[x] == x) return false;
      }
    }
  }
  return true;
}

PartitionOfPoints::PartitionOfPoints(int degree, std::vector<std::vector<int>> blocks)
    : degree_(degree), blocks_(std::move(blocks)), block_of_(degree, -1) {
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (blocks_[b].empty()) throw Error(Errc::SigmaNotPartition, "empty block " + std::to_string(b));
    for (int x : blocks_[b]) {
      if (x < 0 || x >= degree) throw Error(Errc::SigmaNotPartition, "point out of range");
      if (block_of_[x] != -1) {
        throw Error(Errc::SigmaNotPartition, "point " + std::to_string(x) + " lies in two blocks");
      }
      block_of_[x] = static_cast<int>(b);
    }
  }
  for (int x = 0; x < degree; ++x) {
    if (block_of_[x] == -1) throw Error(Errc::SigmaNotPartition, "point " + std::to_string(x) + " is not covered");
  }
}

PartitionOfPoints PartitionOfPoints::singletons(int degree) {
  std::vector<std::vector<int>> blocks(degree);
  for (int x = 0; x < degree; ++x) blocks[x] = {x};
  return PartitionOfPoints(degree, std::move(blocks));
}

bool maps_blocks_to_blocks(std::span<const Perm> perms, const PartitionOfPoints& p) {
  for (const auto& g : perms) {
    for (const auto& block : p.blocks()) {
      const int target = p.block_of(g[block.front()]);
      if (p.block(target).size() != block.size()) return false;
      for (int x : block) {
        if (p.block_of(g[x]) != target) return false;
      }
    }
  }
  return true;
}

bool is_block_system(const PermGroup& g, const PartitionOfPoints& p) {
  if (g.degree() != p.degree()) return false;
  return maps_blocks_to_blocks(g.generators().empty() ? std::span<const Perm>(g.elements())
                                                      : std::span<const Perm>(g.generators()),
                               p);
}

FiniteGroup to_finite_group(const PermGroup& g, std::span<const Perm> order, std::vector<std::string> names) {
  std::vector<Perm> elems(order.begin(), order.end());
  if (elems.empty()) elems = g.elements();
  const std::size_t n = elems.size();
  if (n != g.order()) throw Error(Errc::InvalidInput, "element ordering does not list the group");
  std::map<Perm, Elem> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(elems[i], static_cast<Elem>(i));
  if (index.size() != n) throw Error(Errc::InvalidInput, "element ordering repeats an element");
  if (names.empty()) {
    for (std::size_t i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
  }
  std::vector<std::vector<Elem>> table(n, std::vector<Elem>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      auto it = index.find(elems[i] * elems[j]);
      if (it == index.end()) throw Error(Errc::NotClosed, "element set is not closed under composition");
      table[i][j] = it->second;
    }
  }
  return FiniteGroup(std::move(names), table, std::max<std::size_t>(n, Caps{}.group_order));
}

std::optional<std::vector<Elem>> group_isomorphic(const FiniteGroup& g, const FiniteGroup& h) {
  if (g.order() != h.order()) return std::nullopt;
  const int n = g.order();
  std::vector<int> ord_g(n), ord_h(n);
  for (Elem a = 0; a < n; ++a) {
    ord_g[a] = g.element_order(a);
    ord_h[a] = h.element_order(a);
  }
  {
    auto sg = ord_g, sh = ord_h;
    std::sort(sg.begin(), sg.end());
    std::sort(sh.begin(), sh.end());
    if (sg != sh) return std::nullopt;
  }
  const std::vector<Elem> gens = generating_set(g);
  std::vector<Elem> images(gens.size(), -1);

  // Extends the assignment of the first `k` generators to the subgroup they
  // generate; fails on a relation clash or a non-injective map.
  auto extend = [&](std::size_t k, std::vector<Elem>& map) -> bool {
    map.assign(n, -1);
    std::vector<bool> used(n, false);
    map[g.identity()] = h.identity();
    used[h.identity()] = true;
    std::deque<Elem> queue{g.identity()};
    while (!queue.empty()) {
      const Elem x = queue.front();
      queue.pop_front();
      for (std::size_t i = 0; i < k; ++i) {
        const Elem y = g.mul(x, gens[i]);
        const Elem fy = h.mul(map[x], images[i]);
        if (map[y] == -1) {
          if (used[fy]) return false;
          used[fy] = true;
          map[y] = fy;
          queue.push_back(y);
        } else if (map[y] != fy) {
          return false;
        }
      }
    }
    return true;
  };

  std::vector<Elem> map;
  std::optional<std::vector<Elem>> result;
  auto search = [&](auto&& self, std::size_t i) -> void {
    if (result) return;
    if (i == gens.size()) {
      if (!extend(gens.size(), map)) return;
      for (Elem a = 0; a < n; ++a) {
        for (Elem b = 0; b < n; ++b) {
          if (map[g.mul(a, b)] != h.mul(map[a], map[b])) return;
        }
      }
      result = map;
      return;
    }
    for (Elem c = 0; c < n && !result; ++c) {
      if (ord_h[c] != ord_g[gens[i]]) continue;
      images[i] = c;
      if (extend(i + 1, map)) self(self, i + 1);
    }
  };
  search(search, 0);
  return result;
}

std::optional<std::vector<Elem>> group_isomorphic(const PermGroup& g, const PermGroup& h) {
  return group_isomorphic(to_finite_group(g), to_finite_group(h));
}

std::vector<Perm> right_regular(const FiniteGroup& g) {
  std::vector<Perm> out;
  out.reserve(g.order());
  for (Elem a = 0; a < g.order(); ++a) {
    std::vector<int> img(g.order());
    for (Elem x = 0; x < g.order(); ++x) img[x] = g.mul(x, a);
    out.emplace_back(std::move(img));
  }
  return out;
}

}  // namespace cayjoin::perms

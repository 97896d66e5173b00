#include "cayjoin/groups.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <string>

#include "cayjoin/error.hpp"

namespace cayjoin::groups {

namespace {

std::string triple(const std::vector<std::string>& names, Elem a, Elem b, Elem c) {
  return "(" + names[a] + ", " + names[b] + ", " + names[c] + ")";
}

}  // namespace

FiniteGroup::FiniteGroup(std::vector<std::string> names, const std::vector<std::vector<Elem>>& table,
                         std::size_t order_cap)
    : names_(std::move(names)) {
  const std::size_t n = table.size();
  if (n == 0) throw Error(Errc::TableNotGroup, "empty table");
  if (n > order_cap) {
    throw Error(Errc::OrderCapExceeded,
                "order " + std::to_string(n) + " exceeds cap " + std::to_string(order_cap));
  }
  if (names_.size() != n) {
    throw Error(Errc::TableNotGroup, "expected " + std::to_string(n) + " names, got " +
                                         std::to_string(names_.size()));
  }
  {
    std::set<std::string> seen(names_.begin(), names_.end());
    if (seen.size() != n) throw Error(Errc::TableNotGroup, "element names are not distinct");
  }
  order_ = static_cast<int>(n);
  table_.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (table[i].size() != n) {
      throw Error(Errc::TableNotGroup, "row " + std::to_string(i) + " has wrong length");
    }
    for (std::size_t j = 0; j < n; ++j) {
      const Elem v = table[i][j];
      if (v < 0 || static_cast<std::size_t>(v) >= n) {
        throw Error(Errc::TableNotGroup, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                             ") out of range");
      }
      table_[i * n + j] = v;
    }
  }
  // Latin square.
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<bool> row(n, false), col(n, false);
    for (std::size_t j = 0; j < n; ++j) {
      if (row[table_[i * n + j]]) {
        throw Error(Errc::TableNotGroup, "row of " + names_[i] + " is not a permutation");
      }
      row[table_[i * n + j]] = true;
      if (col[table_[j * n + i]]) {
        throw Error(Errc::TableNotGroup, "column of " + names_[i] + " is not a permutation");
      }
      col[table_[j * n + i]] = true;
    }
  }
  // Identity.
  identity_ = -1;
  for (std::size_t e = 0; e < n && identity_ < 0; ++e) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      ok = table_[e * n + i] == static_cast<Elem>(i) && table_[i * n + e] == static_cast<Elem>(i);
    }
    if (ok) identity_ = static_cast<Elem>(e);
  }
  if (identity_ < 0) throw Error(Errc::TableNotGroup, "no two-sided identity");
  // Inverses (two-sided follows from the Latin property plus associativity).
  inverse_.assign(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (table_[i * n + j] == identity_) {
        inverse_[i] = static_cast<Elem>(j);
        break;
      }
    }
    if (table_[inverse_[i] * n + i] != identity_) {
      throw Error(Errc::TableNotGroup, "element " + names_[i] + " has no two-sided inverse");
    }
  }
  // Associativity, exhaustive.
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t ab = table_[a * n + b];
      for (std::size_t c = 0; c < n; ++c) {
        if (table_[ab * n + c] != table_[a * n + table_[b * n + c]]) {
          throw Error(Errc::TableNotGroup,
                      "associativity fails for " + triple(names_, static_cast<Elem>(a), static_cast<Elem>(b),
                                                          static_cast<Elem>(c)));
        }
      }
    }
  }
}

Elem FiniteGroup::power(Elem a, int k) const {
  Elem base = k < 0 ? inverse(a) : a;
  int e = k < 0 ? -k : k;
  Elem acc = identity_;
  while (e > 0) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

int FiniteGroup::element_order(Elem a) const {
  int k = 1;
  for (Elem x = a; x != identity_; x = mul(x, a)) ++k;
  return k;
}

std::optional<Elem> FiniteGroup::find(std::string_view name) const {
  for (int i = 0; i < order_; ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

Elem FiniteGroup::at(std::string_view name) const {
  if (auto e = find(name)) return *e;
  throw Error(Errc::InvalidInput, "unknown group element '" + std::string(name) + "'");
}

void FiniteGroup::set_named_generators(std::vector<std::pair<std::string, Elem>> gens) {
  generators_ = std::move(gens);
}

std::vector<std::vector<Elem>> FiniteGroup::table_rows() const {
  std::vector<std::vector<Elem>> rows(order_);
  for (int i = 0; i < order_; ++i) {
    rows[i].assign(table_.begin() + static_cast<std::ptrdiff_t>(i) * order_,
                   table_.begin() + static_cast<std::ptrdiff_t>(i + 1) * order_);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Subgroups

Subgroup::Subgroup(const FiniteGroup& g, std::vector<Elem> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  mask_.assign(g.order(), false);
  for (Elem m : members) {
    if (m < 0 || m >= g.order()) throw Error(Errc::InvalidInput, "subgroup member out of range");
    mask_[m] = true;
  }
  if (!mask_[g.identity()]) throw Error(Errc::InvalidInput, "subgroup lacks the identity");
  for (Elem a : members) {
    if (!mask_[g.inverse(a)]) throw Error(Errc::InvalidInput, "subgroup not closed under inverses");
    for (Elem b : members) {
      if (!mask_[g.mul(a, b)]) throw Error(Errc::InvalidInput, "subgroup not closed under products");
    }
  }
  members_ = std::move(members);
}

Subgroup Subgroup::trivial(const FiniteGroup& g) { return Subgroup(g, {g.identity()}); }

Subgroup Subgroup::whole(const FiniteGroup& g) {
  std::vector<Elem> all(g.order());
  std::iota(all.begin(), all.end(), 0);
  return Subgroup(g, std::move(all));
}

Subgroup subgroup_generated(const FiniteGroup& g, std::span<const Elem> gens) {
  std::vector<bool> seen(g.order(), false);
  std::vector<Elem> members{g.identity()};
  seen[g.identity()] = true;
  std::deque<Elem> queue{g.identity()};
  while (!queue.empty()) {
    const Elem x = queue.front();
    queue.pop_front();
    for (Elem s : gens) {
      const Elem y = g.mul(x, s);
      if (!seen[y]) {
        seen[y] = true;
        members.push_back(y);
        queue.push_back(y);
      }
    }
  }
  return Subgroup(g, std::move(members));
}

Subgroup centralizer(const FiniteGroup& g, const Subgroup& s) {
  std::vector<Elem> out;
  for (Elem a = 0; a < g.order(); ++a) {
    bool ok = true;
    for (Elem b : s.members()) {
      if (!g.commute(a, b)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(a);
  }
  return Subgroup(g, std::move(out));
}

Subgroup center(const FiniteGroup& g) { return centralizer(g, Subgroup::whole(g)); }

bool is_normal(const FiniteGroup& g, const Subgroup& s) {
  for (Elem x = 0; x < g.order(); ++x) {
    for (Elem a : s.members()) {
      if (!s.contains(g.mul(g.mul(g.inverse(x), a), x))) return false;
    }
  }
  return true;
}

std::size_t product_set_size(const FiniteGroup& g, const Subgroup& x, const Subgroup& y) {
  std::vector<bool> hit(g.order(), false);
  std::size_t count = 0;
  for (Elem a : x.members()) {
    for (Elem b : y.members()) {
      const Elem p = g.mul(a, b);
      if (!hit[p]) {
        hit[p] = true;
        ++count;
      }
    }
  }
  return count;
}

std::vector<Elem> generating_set(const FiniteGroup& g) {
  std::vector<Elem> by_order(g.order());
  std::iota(by_order.begin(), by_order.end(), 0);
  std::vector<int> orders(g.order());
  for (Elem a = 0; a < g.order(); ++a) orders[a] = g.element_order(a);
  std::stable_sort(by_order.begin(), by_order.end(),
                   [&](Elem a, Elem b) { return orders[a] > orders[b]; });
  std::vector<Elem> gens;
  Subgroup current = Subgroup::trivial(g);
  for (Elem a : by_order) {
    if (current.size() == static_cast<std::size_t>(g.order())) break;
    if (current.contains(a)) continue;
    gens.push_back(a);
    current = subgroup_generated(g, gens);
  }
  return gens;
}

std::vector<int> coset_index(const FiniteGroup& g, const Subgroup& h, std::span<const Elem> reps) {
  std::vector<int> index(g.order(), -1);
  for (std::size_t r = 0; r < reps.size(); ++r) {
    for (Elem x : h.members()) {
      const Elem y = g.mul(x, reps[r]);
      if (index[y] != -1) {
        throw Error(Errc::InvalidReps, "representatives " + g.name(reps[index[y]]) + " and " +
                                           g.name(reps[r]) + " lie in the same coset");
      }
      index[y] = static_cast<int>(r);
    }
  }
  for (Elem y = 0; y < g.order(); ++y) {
    if (index[y] == -1) throw Error(Errc::InvalidReps, "coset of " + g.name(y) + " has no representative");
  }
  return index;
}

std::vector<Elem> right_coset_reps(const FiniteGroup& g, const Subgroup& h,
                                   std::optional<std::span<const Elem>> override_reps) {
  // Canonical coset order: by smallest element, identity's coset first.
  std::vector<int> canon(g.order(), -1);
  std::vector<Elem> smallest;
  auto visit = [&](Elem start) {
    if (canon[start] != -1) return;
    const int idx = static_cast<int>(smallest.size());
    Elem least = start;
    for (Elem x : h.members()) {
      const Elem y = g.mul(x, start);
      canon[y] = idx;
      least = std::min(least, y);
    }
    smallest.push_back(least);
  };
  visit(g.identity());
  for (Elem a = 0; a < g.order(); ++a) visit(a);
  smallest[0] = g.identity();
  if (!override_reps) return smallest;

  std::vector<Elem> reps(smallest.size(), -1);
  for (Elem r : *override_reps) {
    if (r < 0 || r >= g.order()) throw Error(Errc::InvalidReps, "representative out of range");
    const int c = canon[r];
    if (reps[c] != -1) {
      throw Error(Errc::InvalidReps,
                  "representatives " + g.name(reps[c]) + " and " + g.name(r) + " lie in the same coset");
    }
    reps[c] = r;
  }
  for (std::size_t c = 0; c < reps.size(); ++c) {
    if (reps[c] == -1) {
      throw Error(Errc::InvalidReps, "coset of " + g.name(smallest[c]) + " has no representative");
    }
  }
  if (reps[0] != g.identity()) {
    throw Error(Errc::InvalidReps, "the representative of H itself must be the identity");
  }
  return reps;
}

std::optional<Subgroup> find_complement(const FiniteGroup& g, const Subgroup& avoid, std::size_t target,
                                        std::span<const Elem> candidates, std::size_t max_gens) {
  if (target == 1) return Subgroup::trivial(g);
  // Memo: smallest depth at which a subgroup was expanded.
  std::map<std::vector<Elem>, std::size_t> expanded;
  std::optional<Subgroup> found;

  auto meets_trivially = [&](const Subgroup& s) {
    for (Elem a : s.members()) {
      if (a != g.identity() && avoid.contains(a)) return false;
    }
    return true;
  };

  auto dfs = [&](auto&& self, const Subgroup& current, std::vector<Elem>& gens) -> void {
    if (found) return;
    if (gens.size() >= max_gens) return;
    auto [it, inserted] = expanded.try_emplace(current.members(), gens.size());
    if (!inserted) {
      if (it->second <= gens.size()) return;
      it->second = gens.size();
    }
    for (Elem c : candidates) {
      if (found) return;
      if (current.contains(c)) continue;
      gens.push_back(c);
      Subgroup next = subgroup_generated(g, gens);
      if (next.size() <= target && target % next.size() == 0 && meets_trivially(next)) {
        if (next.size() == target) {
          found = std::move(next);
        } else {
          self(self, next, gens);
        }
      }
      gens.pop_back();
    }
  };
  std::vector<Elem> gens;
  dfs(dfs, Subgroup::trivial(g), gens);
  return found;
}

std::optional<Subgroup> direct_complement(const FiniteGroup& g, const Subgroup& h) {
  if (h.size() == 1) return Subgroup::whole(g);
  if (static_cast<int>(h.size()) == g.order()) return Subgroup::trivial(g);
  if (g.order() % h.size() != 0) return std::nullopt;
  const Subgroup cent = centralizer(g, h);
  std::vector<Elem> candidates;
  for (Elem a : cent.members()) {
    if (!h.contains(a)) candidates.push_back(a);
  }
  return find_complement(g, h, g.order() / h.size(), candidates, 3);
}

// ---------------------------------------------------------------------------
// Homomorphisms

std::vector<Elem> GroupHom::image() const {
  std::vector<Elem> out(images.begin(), images.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

GroupHom hom_from_images(const FiniteGroup& dom, const FiniteGroup& cod, const std::map<Elem, Elem>& gen_images) {
  for (const auto& [k, v] : gen_images) {
    if (k < 0 || k >= dom.order() || v < 0 || v >= cod.order()) {
      throw Error(Errc::InvalidInput, "generator image out of range");
    }
  }
  GroupHom hom;
  hom.codomain_identity = cod.identity();
  hom.codomain_order = cod.order();
  hom.images.assign(dom.order(), -1);
  hom.images[dom.identity()] = cod.identity();
  std::deque<Elem> queue{dom.identity()};
  while (!queue.empty()) {
    const Elem x = queue.front();
    queue.pop_front();
    for (const auto& [s, img] : gen_images) {
      const Elem y = dom.mul(x, s);
      const Elem fy = cod.mul(hom.images[x], img);
      if (hom.images[y] == -1) {
        hom.images[y] = fy;
        queue.push_back(y);
      } else if (hom.images[y] != fy) {
        throw Error(Errc::NotAHomomorphism, "relation violated: " + dom.name(x) + " * " + dom.name(s) +
                                                " would map to both " + cod.name(hom.images[y]) + " and " +
                                                cod.name(fy));
      }
    }
  }
  for (Elem x = 0; x < dom.order(); ++x) {
    if (hom.images[x] == -1) {
      throw Error(Errc::GeneratorsInsufficient, "generators do not reach " + dom.name(x));
    }
  }
  for (Elem a = 0; a < dom.order(); ++a) {
    for (Elem b = 0; b < dom.order(); ++b) {
      if (hom.images[dom.mul(a, b)] != cod.mul(hom.images[a], hom.images[b])) {
        throw Error(Errc::NotAHomomorphism,
                    "map(" + dom.name(a) + " * " + dom.name(b) + ") != map(" + dom.name(a) + ") * map(" +
                        dom.name(b) + ")");
      }
    }
  }
  hom.surjective = static_cast<int>(hom.image().size()) == cod.order();
  return hom;
}

GroupHom identity_hom(const FiniteGroup& g) {
  GroupHom hom;
  hom.images.resize(g.order());
  std::iota(hom.images.begin(), hom.images.end(), 0);
  hom.codomain_identity = g.identity();
  hom.codomain_order = g.order();
  hom.surjective = true;
  return hom;
}

Subgroup kernel(const FiniteGroup& dom, const GroupHom& h) {
  std::vector<Elem> out;
  for (Elem a = 0; a < dom.order(); ++a) {
    if (h.images[a] == h.codomain_identity) out.push_back(a);
  }
  return Subgroup(dom, std::move(out));
}

std::vector<GroupHom> all_homomorphisms(const FiniteGroup& dom, const FiniteGroup& cod, const Subgroup& target,
                                        bool onto) {
  const std::vector<Elem> gens = generating_set(dom);
  std::vector<GroupHom> out;
  std::vector<Elem> choice(gens.size(), 0);
  const auto& pool = target.members();
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == gens.size()) {
      std::map<Elem, Elem> images;
      for (std::size_t j = 0; j < gens.size(); ++j) images[gens[j]] = choice[j];
      try {
        GroupHom h = hom_from_images(dom, cod, images);
        if (!onto || h.image() == target.members()) out.push_back(std::move(h));
      } catch (const Error&) {
      }
      return;
    }
    const int ord = dom.element_order(gens[i]);
    for (Elem c : pool) {
      if (ord % cod.element_order(c) != 0) continue;
      choice[i] = c;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<Elem> smallest_transversal(const FiniteGroup& m, const GroupHom& theta) {
  std::vector<Elem> t(theta.codomain_order, -1);
  for (Elem a = 0; a < m.order(); ++a) {
    if (t[theta(a)] == -1) t[theta(a)] = a;
  }
  t[theta.codomain_identity] = m.identity();
  return t;
}

std::optional<std::vector<Elem>> centralizing_transversal(const FiniteGroup& m, const Subgroup& k,
                                                          const GroupHom& theta, TransversalMode mode) {
  const Subgroup cent = centralizer(m, k);
  std::vector<Elem> t(theta.codomain_order, -1);
  const std::vector<Elem> image = theta.image();

  if (mode == TransversalMode::Centralizing) {
    for (Elem a : cent.members()) {
      if (t[theta(a)] == -1) t[theta(a)] = a;
    }
    t[theta.codomain_identity] = m.identity();
    for (Elem h : image) {
      if (t[h] == -1) return std::nullopt;
    }
    return t;
  }

  std::vector<Elem> candidates;
  const Subgroup& pool = mode == TransversalMode::CentralizingSubgroup ? cent : Subgroup::whole(m);
  for (Elem a : pool.members()) {
    if (!k.contains(a)) candidates.push_back(a);
  }
  auto complement = find_complement(m, k, image.size(), candidates, static_cast<std::size_t>(m.order()));
  if (!complement) return std::nullopt;
  for (Elem a : complement->members()) t[theta(a)] = a;
  return t;
}

}  // namespace cayjoin::groups

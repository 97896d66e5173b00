#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cayjoin/caps.hpp"

namespace cayjoin::groups {

/// Index of a group element, 0..order-1.
using Elem = int;

/// A finite group given by its full multiplication table. Construction checks
/// every group axiom exhaustively, so a FiniteGroup value is always valid.
class FiniteGroup {
 public:
  /// table[i][j] is the index of names[i] * names[j].
  /// Throws Error(TableNotGroup) naming the first violated axiom, or
  /// Error(OrderCapExceeded) when the order is above `order_cap`.
  FiniteGroup(std::vector<std::string> names, const std::vector<std::vector<Elem>>& table,
              std::size_t order_cap = Caps{}.group_order);

  int order() const { return order_; }
  Elem identity() const { return identity_; }
  Elem mul(Elem a, Elem b) const { return table_[static_cast<std::size_t>(a) * order_ + b]; }
  Elem inverse(Elem a) const { return inverse_[a]; }
  Elem power(Elem a, int k) const;
  /// Smallest k >= 1 with a^k = identity.
  int element_order(Elem a) const;
  bool commute(Elem a, Elem b) const { return mul(a, b) == mul(b, a); }

  const std::string& name(Elem a) const { return names_[a]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<Elem> find(std::string_view name) const;
  /// Like find() but throws Error(InvalidInput) for an unknown name.
  Elem at(std::string_view name) const;

  /// Named generators from the presentation used to build the group
  /// (e.g. x, y for dihedral groups). May be empty for table input.
  const std::vector<std::pair<std::string, Elem>>& named_generators() const { return generators_; }
  void set_named_generators(std::vector<std::pair<std::string, Elem>> gens);

  std::vector<std::vector<Elem>> table_rows() const;
  bool operator==(const FiniteGroup& other) const = default;

 private:
  int order_ = 0;
  Elem identity_ = 0;
  std::vector<std::string> names_;
  std::vector<Elem> table_;
  std::vector<Elem> inverse_;
  std::vector<std::pair<std::string, Elem>> generators_;
};

/// Declarative description of a group, mirroring the scenario JSON.
struct GroupSpec {
  enum class Kind { Table, Cyclic, Dihedral, Quaternion8, ElementaryAbelian, Product };
  Kind kind = Kind::Cyclic;
  int order = 1;           // cyclic, dihedral (the group order, 2n)
  int p = 2;               // elementary abelian
  int k = 1;               // elementary abelian
  std::string generator;   // cyclic: generator name, default "g"
  std::vector<std::string> names;              // table
  std::vector<std::vector<Elem>> table;        // table
  std::vector<GroupSpec> factors;              // product
};

FiniteGroup group_from_spec(const GroupSpec& spec, const Caps& caps = {});

/// Elements e, g, g2, ..., g^(n-1).
FiniteGroup cyclic(int n, const std::string& generator = "g", const Caps& caps = {});
/// <x, y | x^n = y^2 = 1, xy = yx^(n-1)> of order 2n; index of x^i y^j is j*n + i.
FiniteGroup dihedral(int order, const Caps& caps = {});
/// {1, -1, i, -i, j, -j, k, -k} with i^2 = j^2 = k^2 = -1 and k = ij = -ji.
FiniteGroup quaternion8();
/// (C_p)^k with generators a, b, c, ... ; index is the base-p exponent vector,
/// first generator least significant.
FiniteGroup elementary_abelian(int p, int k, const Caps& caps = {});
/// Direct product; element index uses the first factor as least significant digit.
FiniteGroup direct_product(const std::vector<FiniteGroup>& factors, const Caps& caps = {});

/// A subgroup, stored as its sorted member list plus a membership mask.
class Subgroup {
 public:
  /// Validates closure (throws Error(InvalidInput) otherwise).
  Subgroup(const FiniteGroup& g, std::vector<Elem> members);

  static Subgroup trivial(const FiniteGroup& g);
  static Subgroup whole(const FiniteGroup& g);

  std::size_t size() const { return members_.size(); }
  bool contains(Elem a) const { return a >= 0 && static_cast<std::size_t>(a) < mask_.size() && mask_[a]; }
  const std::vector<Elem>& members() const { return members_; }
  bool operator==(const Subgroup& other) const { return members_ == other.members_; }

 private:
  Subgroup() = default;
  std::vector<Elem> members_;
  std::vector<bool> mask_;
};

/// Smallest subgroup containing `gens`.
Subgroup subgroup_generated(const FiniteGroup& g, std::span<const Elem> gens);
Subgroup centralizer(const FiniteGroup& g, const Subgroup& s);
Subgroup center(const FiniteGroup& g);
bool is_normal(const FiniteGroup& g, const Subgroup& s);
/// |{a*b : a in x, b in y}|.
std::size_t product_set_size(const FiniteGroup& g, const Subgroup& x, const Subgroup& y);
/// Greedy generating set: repeatedly adds the highest-order element (smallest
/// index on ties) not yet generated.
std::vector<Elem> generating_set(const FiniteGroup& g);

/// One representative per right coset H*g. The identity's coset comes first;
/// cosets are ordered by their smallest element, and each representative is
/// that smallest element unless `override_reps` is supplied. An override must
/// hit every coset exactly once and use the identity for H itself
/// (Error(InvalidReps) otherwise); it is reordered into coset order.
std::vector<Elem> right_coset_reps(const FiniteGroup& g, const Subgroup& h,
                                   std::optional<std::span<const Elem>> override_reps = std::nullopt);

/// For each element, the position of its right coset in `reps`.
std::vector<int> coset_index(const FiniteGroup& g, const Subgroup& h, std::span<const Elem> reps);

/// A subgroup F1 with H ∩ F1 = 1, H*F1 = G and [H, F1] = 1, searched over
/// subgroups generated by at most three elements of C_G(H) outside H.
/// H trivial returns G itself.
std::optional<Subgroup> direct_complement(const FiniteGroup& g, const Subgroup& h);

/// Homomorphism as an image table over the domain.
struct GroupHom {
  std::vector<Elem> images;
  Elem codomain_identity = 0;
  int codomain_order = 0;
  bool surjective = false;

  Elem operator()(Elem a) const { return images[a]; }
  /// Sorted distinct image elements.
  std::vector<Elem> image() const;
};

/// Extends generator images to a homomorphism. Throws
/// Error(GeneratorsInsufficient) if the keys do not generate `dom`, or
/// Error(NotAHomomorphism) with a witness pair when relations are violated.
GroupHom hom_from_images(const FiniteGroup& dom, const FiniteGroup& cod,
                         const std::map<Elem, Elem>& gen_images);

GroupHom identity_hom(const FiniteGroup& g);
Subgroup kernel(const FiniteGroup& dom, const GroupHom& h);

/// All homomorphisms dom -> cod whose image lies in `target` and equals it
/// when `onto` is set. Enumerates images of generating_set(dom).
std::vector<GroupHom> all_homomorphisms(const FiniteGroup& dom, const FiniteGroup& cod,
                                        const Subgroup& target, bool onto);

enum class TransversalMode {
  Centralizing,             // t_h in C_M(K)
  Subgroup,                 // {t_h} is a subgroup
  CentralizingSubgroup,     // both
};

/// Transversal t_h (h in the image of theta) with theta(t_h) = h and
/// t_identity = identity, returned as a table indexed by codomain element
/// (-1 outside the image). Centralizing mode takes the smallest-index
/// preimage in C_M(K); the subgroup modes search complements of K.
std::optional<std::vector<Elem>> centralizing_transversal(const FiniteGroup& m, const Subgroup& k,
                                                          const GroupHom& theta,
                                                          TransversalMode mode = TransversalMode::Centralizing);

/// Smallest-index preimage of every image element.
std::vector<Elem> smallest_transversal(const FiniteGroup& m, const GroupHom& theta);

/// Finds a subgroup of size `target` meeting `avoid` trivially, generated by
/// elements of `candidates` (at most `max_gens` of them). Deterministic DFS.
std::optional<Subgroup> find_complement(const FiniteGroup& g, const Subgroup& avoid, std::size_t target,
                                        std::span<const Elem> candidates, std::size_t max_gens);

}  // namespace cayjoin::groups

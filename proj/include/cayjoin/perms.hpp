#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cayjoin/caps.hpp"
#include "cayjoin/groups.hpp"

namespace cayjoin::perms {

/// A permutation of {0, ..., degree-1} acting on the right: point^p = p[point].
/// Products compose left to right, so (p * q)[x] = q[p[x]].
class Perm {
 public:
  Perm() = default;
  /// Throws Error(InvalidInput) unless `images` is a bijection.
  explicit Perm(std::vector<int> images);
  static Perm identity(int degree);

  int degree() const { return static_cast<int>(images_.size()); }
  int operator[](int point) const { return images_[point]; }
  const std::vector<int>& images() const { return images_; }
  bool is_identity() const;

  Perm operator*(const Perm& next) const;
  Perm inverse() const;

  auto operator<=>(const Perm&) const = default;
  bool operator==(const Perm&) const = default;

 private:
  std::vector<int> images_;
};

struct PermHash {
  std::size_t operator()(const Perm& p) const noexcept;
};

/// A permutation group with every element materialized.
class PermGroup {
 public:
  PermGroup(int degree, std::vector<Perm> elements, std::vector<Perm> generators);

  int degree() const { return degree_; }
  std::size_t order() const { return elements_.size(); }
  /// Sorted ascending.
  const std::vector<Perm>& elements() const { return elements_; }
  const std::vector<Perm>& generators() const { return generators_; }
  bool contains(const Perm& p) const;
  /// Position of p in elements(), or -1.
  int index_of(const Perm& p) const;

 private:
  int degree_;
  std::vector<Perm> elements_;
  std::vector<Perm> generators_;
};

/// Group generated by `gens` (Dimino-style closure by right multiplication).
/// Throws Error(ClosureCapExceeded) once more than `cap` elements appear.
PermGroup closure(int degree, std::span<const Perm> gens, std::size_t cap = Caps{}.closure);

/// Orbits of the group generated by `gens`, each sorted, ordered by least point.
std::vector<std::vector<int>> orbits(int degree, std::span<const Perm> gens);
bool is_transitive(int degree, std::span<const Perm> gens);
bool is_transitive(const PermGroup& g);
/// Transitive with |G| = degree.
bool is_regular(const PermGroup& g);
/// Checks every element, not just generators; closure-free regularity test
/// for an explicit element set.
bool is_regular_set(int degree, std::span<const Perm> elements);

/// A partition of {0, ..., degree-1}.
class PartitionOfPoints {
 public:
  /// Throws Error(SigmaNotPartition) unless the blocks are disjoint, non-empty
  /// and cover every point.
  PartitionOfPoints(int degree, std::vector<std::vector<int>> blocks);
  static PartitionOfPoints singletons(int degree);

  int degree() const { return degree_; }
  std::size_t size() const { return blocks_.size(); }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  const std::vector<int>& block(std::size_t i) const { return blocks_[i]; }
  int block_of(int point) const { return block_of_[point]; }

 private:
  int degree_;
  std::vector<std::vector<int>> blocks_;
  std::vector<int> block_of_;
};

/// True iff every generator maps each block onto a block.
bool is_block_system(const PermGroup& g, const PartitionOfPoints& p);
/// Same test over an arbitrary list of permutations.
bool maps_blocks_to_blocks(std::span<const Perm> perms, const PartitionOfPoints& p);

/// Multiplication table of a permutation group; element i is g.elements()[i]
/// unless `order` lists the elements in a different sequence.
groups::FiniteGroup to_finite_group(const PermGroup& g, std::span<const Perm> order = {},
                                    std::vector<std::string> names = {});

/// An isomorphism g -> h (image table) if one exists. Backtracks over images of
/// a greedy generating set, candidates restricted to equal element order.
std::optional<std::vector<groups::Elem>> group_isomorphic(const groups::FiniteGroup& g,
                                                          const groups::FiniteGroup& h);
std::optional<std::vector<groups::Elem>> group_isomorphic(const PermGroup& g, const PermGroup& h);

/// Right regular representation: element a acts by x -> x*a.
std::vector<Perm> right_regular(const groups::FiniteGroup& g);

}  // namespace cayjoin::perms

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cayjoin/caps.hpp"
#include "cayjoin/groups.hpp"
#include "cayjoin/perms.hpp"

namespace cayjoin::gwp {

using groups::Elem;
using groups::FiniteGroup;
using groups::GroupHom;
using groups::Subgroup;
using perms::Perm;
using perms::PermGroup;

/// How coset representatives, transversal and lifts are chosen.
///  - Canonical: smallest-index representatives and preimages.
///  - Theorem: representatives from a centralizing direct complement of H (or
///    from C_F(H)), transversal inside C_M(K); fails with
///    Error(TheoremChoicesUnavailable) naming the missing hypothesis.
///  - Explicit: caller-supplied choices.
enum class Mode { Canonical, Theorem, Explicit };

std::string to_string(Mode mode);

/// table[f][block] is the element c of M used by the lift of f on that block:
/// (block, m) -> (block'', m*c). Each c must satisfy theta(c) = h where
/// rep(block) * f = h * rep(block'').
struct LiftChoice {
  std::vector<std::vector<Elem>> table;
  bool operator==(const LiftChoice&) const = default;
};

struct ExplicitChoices {
  std::vector<Elem> reps;          // empty: canonical representatives
  std::vector<Elem> transversal;   // indexed by element of F; empty: canonical
  std::optional<LiftChoice> lifts; // empty: derived from the transversal
};

/// The generalized wreath product data over a regular base group F acting on
/// itself by right multiplication. One concrete copy of the fiber group M is
/// shared by every block (the block isomorphisms are identities), so the point
/// set is Y = blocks x M with point index block*|M| + m.
class Scaffold {
 public:
  /// Empty placeholder (one block, trivial groups); use build().
  Scaffold() = default;

  /// Throws Error(ThetaNotEpimorphism) unless theta extends to a homomorphism
  /// from M onto H = <h_gens>.
  static Scaffold build(FiniteGroup base, std::span<const Elem> h_gens, FiniteGroup fiber,
                        const std::map<Elem, Elem>& theta_images, Mode mode,
                        const ExplicitChoices& choices = {});

  const FiniteGroup& base() const { return base_; }
  const Subgroup& stabilizer() const { return stabilizer_; }
  const FiniteGroup& fiber() const { return fiber_; }
  const GroupHom& theta() const { return theta_; }
  const Subgroup& kernel() const { return kernel_; }
  /// Coset representatives in block order; reps()[0] is the identity.
  const std::vector<Elem>& reps() const { return reps_; }
  /// t_h indexed by element of F, -1 outside H.
  const std::vector<Elem>& transversal() const { return transversal_; }
  const LiftChoice& lift_choice() const { return lifts_; }
  Mode mode() const { return mode_; }

  int block_count() const { return static_cast<int>(reps_.size()); }
  int fiber_size() const { return fiber_.order(); }
  int point_count() const { return block_count() * fiber_size(); }
  int point(int block, Elem m) const { return block * fiber_size() + m; }
  int block_of_point(int p) const { return p / fiber_size(); }
  Elem element_of_point(int p) const { return p % fiber_size(); }
  /// Block index of the coset H*f.
  int block_of(Elem f) const { return block_of_elem_[f]; }
  /// lambda(block, m) = theta(m) * rep(block), an element of F.
  Elem lambda(int p) const;

  struct Step {
    Elem h;     // element of H
    int block;  // target block
  };
  /// rep(block) * f = h * rep(target).
  Step step(int block, Elem f) const { return steps_[static_cast<std::size_t>(block) * base_.order() + f]; }

  /// Lifts defined by the transversal: table[f][b] = t_h.
  LiftChoice transversal_lifts() const;
  /// Copy with a different lift table (validated; Error(InvalidInput) if a
  /// choice lies outside its kernel coset).
  Scaffold with_lift_choice(LiftChoice lifts) const;

  /// "H" for the stabilizer's block, "H<rep>" otherwise.
  std::string block_name(int block) const;
  std::string point_label(int p) const;

 private:
  void check_lifts(const LiftChoice& lifts) const;

  FiniteGroup base_{{"e"}, {{0}}};
  Subgroup stabilizer_ = Subgroup::trivial(base_);
  FiniteGroup fiber_{{"e"}, {{0}}};
  GroupHom theta_;
  Subgroup kernel_ = Subgroup::trivial(fiber_);
  std::vector<Elem> reps_;
  std::vector<int> block_of_elem_;
  std::vector<Step> steps_;
  std::vector<Elem> transversal_;
  LiftChoice lifts_;
  Mode mode_ = Mode::Canonical;
};

/// The permutation f-bar of Y.
Perm lift(const Scaffold& s, Elem f);
std::vector<Perm> all_lifts(const Scaffold& s);

/// Right multiplication by `k` (a kernel element) on one block only.
Perm kernel_on_block(const Scaffold& s, int block, Elem k);
/// l-hat: right multiplication by `l` on every block simultaneously.
Perm diagonal_element(const Scaffold& s, Elem l);

std::vector<Perm> base_group_K_generators(const Scaffold& s);
/// K = product over blocks of ker(theta), order |K_sub|^blocks.
PermGroup base_group_K(const Scaffold& s, const Caps& caps = {});
PermGroup diagonal_J(const Scaffold& s);
/// <K, F-bar>, materialized.
PermGroup gwp_group(const Scaffold& s, const Caps& caps = {});

/// True iff p fixes every block and acts on each by right multiplication by a
/// kernel element.
bool in_base_group(const Scaffold& s, const Perm& p);

struct Lemma23Report {
  bool fbar_is_hom = false;  // f -> f-bar multiplicative over all of F x F
  bool t_is_group = false;   // the transversal is closed under multiplication
  bool split = false;        // M = K ⋊ T
  bool agree() const { return fbar_is_hom == t_is_group && t_is_group == split; }
};

/// Evaluates the three conditions independently, using the lifts induced by the
/// transversal. Throws Error(VerificationFailed) if they disagree.
Lemma23Report lemma23_check(const Scaffold& s);

/// f1-bar * f2-bar * (f1f2)-bar^-1 under the scaffold's lift table.
Perm obstruction(const Scaffold& s, Elem f1, Elem f2);
/// The kernel element by which the obstruction acts on `block`.
Elem obstruction_on_block(const Scaffold& s, Elem f1, Elem f2, int block);

/// R = J * F-bar with its factorization: factors[i] = (l, f) such that
/// group.elements()[i] = l-hat * f-bar.
struct RegularSubgroup {
  PermGroup group;
  std::vector<std::pair<Elem, Elem>> factors;
};

/// Builds J * F-bar and verifies closure (Error(NotClosed) with a witness
/// pair), |R| = |Y| and regularity (Error(NotRegular)).
RegularSubgroup regular_candidate(const Scaffold& s, const Caps& caps = {});

/// True iff J * F-bar is a group for this lift table (F-bar^2 ⊆ J F-bar and
/// F-bar normalizes J), checked directly on the table.
bool lift_table_closes(const Scaffold& s, const LiftChoice& lifts);

struct LiftSearchStats {
  std::size_t evaluations = 0;
  bool used_initial_choice = false;
};

/// Looks for a lift table making J * F-bar a regular group: the scaffold's own
/// table first, then lexicographic backtracking over kernel-coset choices
/// (identity lifts to identity). Each assignment costs one unit of `budget`.
std::optional<LiftChoice> lift_search(const Scaffold& s, std::size_t budget, LiftSearchStats* stats = nullptr);

}  // namespace cayjoin::gwp

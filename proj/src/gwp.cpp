#include "cayjoin/gwp.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <unordered_map>

#include "cayjoin/error.hpp"

namespace cayjoin::gwp {

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::Canonical: return "canonical";
    case Mode::Theorem: return "theorem";
    case Mode::Explicit: return "explicit";
  }
  return "?";
}

namespace {

GroupHom build_theta(const FiniteGroup& fiber, const FiniteGroup& base, const Subgroup& h,
                     const std::map<Elem, Elem>& images) {
  GroupHom theta;
  try {
    theta = groups::hom_from_images(fiber, base, images);
  } catch (const Error& e) {
    if (e.is_cap()) throw;
    throw Error(Errc::ThetaNotEpimorphism, std::string("theta: ") + e.what());
  }
  if (theta.image() != h.members()) {
    throw Error(Errc::ThetaNotEpimorphism, "theta does not map onto the block stabilizer (image has " +
                                               std::to_string(theta.image().size()) + " elements, H has " +
                                               std::to_string(h.size()) + ")");
  }
  return theta;
}

void check_transversal(const FiniteGroup& fiber, const GroupHom& theta, const Subgroup& h,
                       const std::vector<Elem>& t) {
  if (static_cast<int>(t.size()) != theta.codomain_order) {
    throw Error(Errc::InvalidInput, "transversal must have one entry per element of the base group");
  }
  for (Elem x : h.members()) {
    const Elem c = t[x];
    if (c < 0 || c >= fiber.order() || theta(c) != x) {
      throw Error(Errc::InvalidInput, "transversal entry for a stabilizer element is not a preimage under theta");
    }
  }
  if (t[theta.codomain_identity] != fiber.identity()) {
    throw Error(Errc::InvalidInput, "transversal must send the identity to the identity");
  }
}

}  // namespace

Scaffold Scaffold::build(FiniteGroup base, std::span<const Elem> h_gens, FiniteGroup fiber,
                         const std::map<Elem, Elem>& theta_images, Mode mode, const ExplicitChoices& choices) {
  Scaffold s;
  s.base_ = std::move(base);
  s.fiber_ = std::move(fiber);
  s.mode_ = mode;
  for (Elem g : h_gens) {
    if (g < 0 || g >= s.base_.order()) throw Error(Errc::InvalidInput, "stabilizer generator out of range");
  }
  s.stabilizer_ = groups::subgroup_generated(s.base_, h_gens);
  s.theta_ = build_theta(s.fiber_, s.base_, s.stabilizer_, theta_images);
  s.kernel_ = groups::kernel(s.fiber_, s.theta_);

  const FiniteGroup& f = s.base_;
  const Subgroup& h = s.stabilizer_;

  switch (mode) {
    case Mode::Canonical:
      s.reps_ = groups::right_coset_reps(f, h);
      s.transversal_ = groups::smallest_transversal(s.fiber_, s.theta_);
      break;
    case Mode::Explicit:
      s.reps_ = choices.reps.empty() ? groups::right_coset_reps(f, h)
                                     : groups::right_coset_reps(f, h, std::span<const Elem>(choices.reps));
      if (choices.transversal.empty()) {
        s.transversal_ = groups::smallest_transversal(s.fiber_, s.theta_);
      } else {
        check_transversal(s.fiber_, s.theta_, h, choices.transversal);
        s.transversal_.assign(choices.transversal.size(), -1);
        for (Elem x : h.members()) s.transversal_[x] = choices.transversal[x];
      }
      break;
    case Mode::Theorem: {
      const Subgroup cf = groups::centralizer(f, h);
      if (groups::product_set_size(f, h, cf) != static_cast<std::size_t>(f.order())) {
        throw Error(Errc::TheoremChoicesUnavailable, "hypothesis (1) fails: base group is not H*C(H)");
      }
      const Subgroup cm = groups::centralizer(s.fiber_, s.kernel_);
      if (groups::product_set_size(s.fiber_, s.kernel_, cm) != static_cast<std::size_t>(s.fiber_.order())) {
        throw Error(Errc::TheoremChoicesUnavailable, "hypothesis (2) fails: fiber group is not K*C(K)");
      }
      const auto complement = groups::direct_complement(f, h);
      const auto direct_t = groups::centralizing_transversal(s.fiber_, s.kernel_, s.theta_,
                                                             groups::TransversalMode::CentralizingSubgroup);
      if (complement) {
        s.reps_ = groups::right_coset_reps(f, h, std::span<const Elem>(complement->members()));
        s.transversal_ = direct_t ? *direct_t
                                  : *groups::centralizing_transversal(s.fiber_, s.kernel_, s.theta_,
                                                                      groups::TransversalMode::Centralizing);
      } else if (direct_t) {
        // F = H*C_F(H): every coset meets C_F(H); take its smallest such element.
        const auto canonical = groups::right_coset_reps(f, h);
        const auto index = groups::coset_index(f, h, canonical);
        std::vector<Elem> reps(canonical.size(), -1);
        for (Elem x : cf.members()) {
          if (reps[index[x]] == -1) reps[index[x]] = x;
        }
        reps[0] = f.identity();
        s.reps_ = groups::right_coset_reps(f, h, std::span<const Elem>(reps));
        s.transversal_ = *direct_t;
      } else {
        throw Error(Errc::TheoremChoicesUnavailable,
                    "hypotheses (3) and (5) both fail: H has no centralizing direct complement and the kernel "
                    "has no centralizing complement");
      }
      break;
    }
  }

  s.block_of_elem_ = groups::coset_index(f, h, s.reps_);
  const int blocks = s.block_count();
  s.steps_.resize(static_cast<std::size_t>(blocks) * f.order());
  for (int b = 0; b < blocks; ++b) {
    for (Elem x = 0; x < f.order(); ++x) {
      const Elem g = f.mul(s.reps_[b], x);
      const int target = s.block_of_elem_[g];
      s.steps_[static_cast<std::size_t>(b) * f.order() + x] = Step{f.mul(g, f.inverse(s.reps_[target])), target};
    }
  }

  if (mode == Mode::Explicit && choices.lifts) {
    s.check_lifts(*choices.lifts);
    s.lifts_ = *choices.lifts;
  } else {
    s.lifts_ = s.transversal_lifts();
  }
  return s;
}

Elem Scaffold::lambda(int p) const {
  return base_.mul(theta_(element_of_point(p)), reps_[block_of_point(p)]);
}

LiftChoice Scaffold::transversal_lifts() const {
  LiftChoice c;
  c.table.assign(base_.order(), std::vector<Elem>(block_count()));
  for (Elem f = 0; f < base_.order(); ++f) {
    for (int b = 0; b < block_count(); ++b) c.table[f][b] = transversal_[step(b, f).h];
  }
  return c;
}

void Scaffold::check_lifts(const LiftChoice& lifts) const {
  if (static_cast<int>(lifts.table.size()) != base_.order()) {
    throw Error(Errc::InvalidInput, "lift table needs one row per base group element");
  }
  for (Elem f = 0; f < base_.order(); ++f) {
    if (static_cast<int>(lifts.table[f].size()) != block_count()) {
      throw Error(Errc::InvalidInput, "lift table row for " + base_.name(f) + " needs one entry per block");
    }
    for (int b = 0; b < block_count(); ++b) {
      const Elem c = lifts.table[f][b];
      if (c < 0 || c >= fiber_.order() || theta_(c) != step(b, f).h) {
        throw Error(Errc::InvalidInput, "lift of " + base_.name(f) + " on block " + block_name(b) +
                                            " is outside the required kernel coset");
      }
    }
  }
}

Scaffold Scaffold::with_lift_choice(LiftChoice lifts) const {
  check_lifts(lifts);
  Scaffold copy = *this;
  copy.lifts_ = std::move(lifts);
  return copy;
}

std::string Scaffold::block_name(int block) const {
  return block == 0 ? std::string("H") : "H" + base_.name(reps_[block]);
}

std::string Scaffold::point_label(int p) const {
  return block_name(block_of_point(p)) + ":" + fiber_.name(element_of_point(p));
}

Perm lift(const Scaffold& s, Elem f) {
  const int n = s.point_count();
  const auto& row = s.lift_choice().table[f];
  std::vector<int> images(n);
  for (int p = 0; p < n; ++p) {
    const int b = s.block_of_point(p);
    const auto st = s.step(b, f);
    images[p] = s.point(st.block, s.fiber().mul(s.element_of_point(p), row[b]));
  }
  return Perm(std::move(images));
}

std::vector<Perm> all_lifts(const Scaffold& s) {
  std::vector<Perm> out;
  out.reserve(s.base().order());
  for (Elem f = 0; f < s.base().order(); ++f) out.push_back(lift(s, f));
  return out;
}

Perm kernel_on_block(const Scaffold& s, int block, Elem k) {
  std::vector<int> images(s.point_count());
  std::iota(images.begin(), images.end(), 0);
  for (Elem m = 0; m < s.fiber_size(); ++m) images[s.point(block, m)] = s.point(block, s.fiber().mul(m, k));
  return Perm(std::move(images));
}

Perm diagonal_element(const Scaffold& s, Elem l) {
  std::vector<int> images(s.point_count());
  for (int p = 0; p < s.point_count(); ++p) {
    images[p] = s.point(s.block_of_point(p), s.fiber().mul(s.element_of_point(p), l));
  }
  return Perm(std::move(images));
}

std::vector<Perm> base_group_K_generators(const Scaffold& s) {
  std::vector<Perm> gens;
  const auto& members = s.kernel().members();
  std::vector<Elem> kgens;
  Subgroup generated = Subgroup::trivial(s.fiber());
  for (Elem k : members) {
    if (generated.contains(k)) continue;
    kgens.push_back(k);
    generated = groups::subgroup_generated(s.fiber(), kgens);
  }
  for (int b = 0; b < s.block_count(); ++b) {
    for (Elem k : kgens) gens.push_back(kernel_on_block(s, b, k));
  }
  return gens;
}

PermGroup base_group_K(const Scaffold& s, const Caps& caps) {
  const auto gens = base_group_K_generators(s);
  return perms::closure(s.point_count(), gens, caps.closure);
}

PermGroup diagonal_J(const Scaffold& s) {
  std::vector<Perm> elements;
  for (Elem l : s.kernel().members()) elements.push_back(diagonal_element(s, l));
  std::vector<Perm> gens;
  for (const auto& p : elements) {
    if (!p.is_identity()) gens.push_back(p);
  }
  return PermGroup(s.point_count(), std::move(elements), std::move(gens));
}

PermGroup gwp_group(const Scaffold& s, const Caps& caps) {
  auto gens = base_group_K_generators(s);
  for (Elem f : groups::generating_set(s.base())) gens.push_back(lift(s, f));
  return perms::closure(s.point_count(), gens, caps.closure);
}

bool in_base_group(const Scaffold& s, const Perm& p) {
  if (p.degree() != s.point_count()) return false;
  const auto& m = s.fiber();
  for (int b = 0; b < s.block_count(); ++b) {
    const int image = p[s.point(b, m.identity())];
    if (s.block_of_point(image) != b) return false;
    const Elem k = s.element_of_point(image);
    if (!s.kernel().contains(k)) return false;
    for (Elem x = 0; x < m.order(); ++x) {
      if (p[s.point(b, x)] != s.point(b, m.mul(x, k))) return false;
    }
  }
  return true;
}

Lemma23Report lemma23_check(const Scaffold& s) {
  const Scaffold t_scaffold = s.with_lift_choice(s.transversal_lifts());
  const auto& f = s.base();
  const auto& m = s.fiber();
  Lemma23Report r;

  const auto lifts = all_lifts(t_scaffold);
  r.fbar_is_hom = true;
  for (Elem a = 0; a < f.order() && r.fbar_is_hom; ++a) {
    for (Elem b = 0; b < f.order(); ++b) {
      if (lifts[a] * lifts[b] != lifts[f.mul(a, b)]) {
        r.fbar_is_hom = false;
        break;
      }
    }
  }

  std::vector<Elem> t;
  std::vector<bool> in_t(m.order(), false);
  for (Elem h : s.stabilizer().members()) {
    t.push_back(s.transversal()[h]);
    in_t[s.transversal()[h]] = true;
  }
  r.t_is_group = true;
  for (Elem a : t) {
    for (Elem b : t) {
      if (!in_t[m.mul(a, b)]) r.t_is_group = false;
    }
  }

  // Split: T is a subgroup, T ∩ K = 1 and |K||T| = |M|, tested from scratch.
  const Subgroup generated = groups::subgroup_generated(m, t);
  std::vector<Elem> sorted_t = t;
  std::sort(sorted_t.begin(), sorted_t.end());
  sorted_t.erase(std::unique(sorted_t.begin(), sorted_t.end()), sorted_t.end());
  const bool is_subgroup = generated.members() == sorted_t;
  std::size_t meet = 0;
  for (Elem a : sorted_t) meet += s.kernel().contains(a) ? 1 : 0;
  r.split = is_subgroup && meet == 1 && s.kernel().size() * sorted_t.size() == static_cast<std::size_t>(m.order());

  if (!r.agree()) {
    throw Error(Errc::VerificationFailed, "lifting, closure and splitting conditions disagree");
  }
  return r;
}

Elem obstruction_on_block(const Scaffold& s, Elem f1, Elem f2, int block) {
  const auto& t = s.lift_choice().table;
  const auto& m = s.fiber();
  const int b1 = s.step(block, f1).block;
  const Elem f12 = s.base().mul(f1, f2);
  return m.mul(m.mul(t[f1][block], t[f2][b1]), m.inverse(t[f12][block]));
}

Perm obstruction(const Scaffold& s, Elem f1, Elem f2) {
  return lift(s, f1) * lift(s, f2) * lift(s, s.base().mul(f1, f2)).inverse();
}

RegularSubgroup regular_candidate(const Scaffold& s, const Caps& caps) {
  const std::size_t size = s.kernel().size() * static_cast<std::size_t>(s.base().order());
  if (size > caps.closure) {
    throw Error(Errc::ClosureCapExceeded, "candidate has " + std::to_string(size) + " elements");
  }
  const auto lifts = all_lifts(s);
  std::vector<std::pair<Perm, std::pair<Elem, Elem>>> items;
  items.reserve(size);
  for (Elem l : s.kernel().members()) {
    const Perm lh = diagonal_element(s, l);
    for (Elem f = 0; f < s.base().order(); ++f) items.push_back({lh * lifts[f], {l, f}});
  }
  std::sort(items.begin(), items.end());

  auto describe = [&](std::size_t i) {
    const auto& [l, f] = items[i].second;
    return "(" + s.fiber().name(l) + ", " + s.base().name(f) + ")";
  };

  // Elements of J*F-bar are pairwise distinct on point 0, so point 0's image
  // identifies the only possible match for a product.
  const int n = s.point_count();
  std::vector<int> by_image(n, -1);
  for (std::size_t i = 0; i < items.size(); ++i) {
    const int image = items[i].first[0];
    if (by_image[image] != -1) {
      throw Error(Errc::NotRegular, "elements " + describe(by_image[image]) + " and " + describe(i) +
                                        " agree on the base point");
    }
    by_image[image] = static_cast<int>(i);
  }
  for (std::size_t i = 0; i < items.size(); ++i) {
    for (std::size_t j = 0; j < items.size(); ++j) {
      const Perm prod = items[i].first * items[j].first;
      const int k = by_image[prod[0]];
      if (k == -1 || items[k].first != prod) {
        throw Error(Errc::NotClosed, "product " + describe(i) + " * " + describe(j) + " lies outside J*F-bar");
      }
    }
  }

  std::vector<Perm> elements;
  std::vector<std::pair<Elem, Elem>> factors;
  for (auto& [p, fac] : items) {
    elements.push_back(p);
    factors.push_back(fac);
  }
  if (static_cast<int>(elements.size()) != n || !perms::is_regular_set(n, elements)) {
    throw Error(Errc::NotRegular, "J*F-bar has " + std::to_string(elements.size()) + " elements on " +
                                      std::to_string(n) + " points and is not regular");
  }
  std::vector<Perm> gens = diagonal_J(s).generators();
  for (Elem f : groups::generating_set(s.base())) gens.push_back(lifts[f]);
  return RegularSubgroup{PermGroup(n, std::move(elements), std::move(gens)), std::move(factors)};
}

namespace {

/// Constraint evaluation over a partially filled lift table (-1 = unset).
class TableConstraints {
 public:
  explicit TableConstraints(const Scaffold& s) : s_(s), m_(s.fiber()) {
    kernel_gens_ = s.kernel().members();
    const Elem id = m_.identity();
    kernel_gens_.erase(std::remove(kernel_gens_.begin(), kernel_gens_.end(), id), kernel_gens_.end());
  }

  /// Conjugation constraint for row f: c^-1 l c agrees across assigned blocks.
  bool row_ok(const std::vector<std::vector<Elem>>& t, Elem f, int block) const {
    const Elem c = t[f][block];
    int other = -1;
    for (int b = 0; b < s_.block_count(); ++b) {
      if (b != block && t[f][b] != -1) {
        other = b;
        break;
      }
    }
    if (other == -1) return true;
    const Elem d = t[f][other];
    for (Elem l : kernel_gens_) {
      if (conj(c, l) != conj(d, l)) return false;
    }
    return true;
  }

  /// Cocycle constraint for the pair (f1, f2): the obstruction is diagonal on
  /// the blocks where it is fully determined.
  bool pair_ok(const std::vector<std::vector<Elem>>& t, Elem f1, Elem f2) const {
    const Elem f12 = s_.base().mul(f1, f2);
    Elem common = -1;
    for (int b = 0; b < s_.block_count(); ++b) {
      const int b1 = s_.step(b, f1).block;
      const Elem c1 = t[f1][b], c2 = t[f2][b1], c3 = t[f12][b];
      if (c1 == -1 || c2 == -1 || c3 == -1) continue;
      const Elem o = m_.mul(m_.mul(c1, c2), m_.inverse(c3));
      if (common == -1) {
        common = o;
      } else if (o != common) {
        return false;
      }
    }
    return true;
  }

  bool all_ok(const std::vector<std::vector<Elem>>& t) const {
    const int order = s_.base().order();
    for (Elem f = 0; f < order; ++f) {
      for (int b = 0; b < s_.block_count(); ++b) {
        if (!row_ok(t, f, b)) return false;
      }
    }
    for (Elem f1 = 0; f1 < order; ++f1) {
      for (Elem f2 = 0; f2 < order; ++f2) {
        if (!pair_ok(t, f1, f2)) return false;
      }
    }
    return true;
  }

 private:
  Elem conj(Elem c, Elem l) const { return m_.mul(m_.mul(m_.inverse(c), l), c); }

  const Scaffold& s_;
  const FiniteGroup& m_;
  std::vector<Elem> kernel_gens_;
};

}  // namespace

bool lift_table_closes(const Scaffold& s, const LiftChoice& lifts) {
  const Scaffold checked = s.with_lift_choice(lifts);
  return TableConstraints(checked).all_ok(lifts.table);
}

std::optional<LiftChoice> lift_search(const Scaffold& s, std::size_t budget, LiftSearchStats* stats) {
  LiftSearchStats local;
  LiftSearchStats& st = stats ? *stats : local;
  st = {};
  if (budget == 0) return std::nullopt;

  const TableConstraints constraints(s);
  ++st.evaluations;
  if (constraints.all_ok(s.lift_choice().table)) {
    st.used_initial_choice = true;
    return s.lift_choice();
  }

  const auto& f = s.base();
  const auto& m = s.fiber();
  const int blocks = s.block_count();
  const Elem e = f.identity();

  std::vector<std::vector<Elem>> table(f.order(), std::vector<Elem>(blocks, -1));
  for (int b = 0; b < blocks; ++b) table[e][b] = m.identity();

  struct Cell {
    Elem f;
    int block;
    std::vector<Elem> options;
  };
  std::vector<Cell> cells;
  for (Elem x = 0; x < f.order(); ++x) {
    if (x == e) continue;
    for (int b = 0; b < blocks; ++b) {
      const Elem t = s.transversal()[s.step(b, x).h];
      std::vector<Elem> options;
      for (Elem k : s.kernel().members()) options.push_back(m.mul(k, t));
      std::sort(options.begin(), options.end());
      cells.push_back(Cell{x, b, std::move(options)});
    }
  }

  auto consistent = [&](const Cell& cell) {
    if (!constraints.row_ok(table, cell.f, cell.block)) return false;
    for (Elem f1 = 0; f1 < f.order(); ++f1) {
      if (f1 == e) continue;
      for (Elem f2 = 0; f2 < f.order(); ++f2) {
        if (f2 == e) continue;
        if (f1 != cell.f && f2 != cell.f && f.mul(f1, f2) != cell.f) continue;
        if (!constraints.pair_ok(table, f1, f2)) return false;
      }
    }
    return true;
  };

  bool exhausted_budget = false;
  std::function<bool(std::size_t)> descend = [&](std::size_t i) -> bool {
    if (i == cells.size()) return true;
    const Cell& cell = cells[i];
    for (Elem c : cell.options) {
      if (st.evaluations >= budget) {
        exhausted_budget = true;
        return false;
      }
      ++st.evaluations;
      table[cell.f][cell.block] = c;
      if (consistent(cell) && descend(i + 1)) return true;
      if (exhausted_budget) break;
    }
    table[cell.f][cell.block] = -1;
    return false;
  };

  if (!descend(0)) return std::nullopt;
  LiftChoice found{table};
  if (!constraints.all_ok(found.table)) {
    throw Error(Errc::VerificationFailed, "lift search produced a table violating its own constraints");
  }
  return found;
}

}  // namespace cayjoin::gwp

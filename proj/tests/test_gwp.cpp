#include <doctest.h>

#include <functional>
#include <set>

#include "cayjoin/error.hpp"
#include "cayjoin/groups.hpp"
#include "cayjoin/gwp.hpp"
#include "support/families.hpp"

using namespace cayjoin;
using namespace cayjoin::gwp;
using groups::Elem;

namespace {

// D6 over <x>, fibers C3 x C3 with a -> x, b -> e.
Scaffold d6_scaffold(Mode mode = Mode::Canonical) {
  const auto d6 = groups::dihedral(6);
  const auto m = groups::direct_product({groups::cyclic(3, "a"), groups::cyclic(3, "b")});
  const std::vector<Elem> h = {d6.at("x")};
  return Scaffold::build(d6, h, m, {{m.at("a"), d6.at("x")}, {m.at("b"), d6.identity()}}, mode);
}

// C2^3 over <a, b>, fibers Q8 with i -> a, j -> b.
Scaffold q8_scaffold(Mode mode = Mode::Theorem) {
  const auto f = groups::elementary_abelian(2, 3);
  const auto q8 = groups::quaternion8();
  const std::vector<Elem> h = {f.at("a"), f.at("b")};
  return Scaffold::build(f, h, q8, {{q8.at("i"), f.at("a")}, {q8.at("j"), f.at("b")}}, mode);
}

std::vector<std::string> row_names(const Scaffold& s, const std::string& f) {
  std::vector<std::string> out;
  for (Elem c : s.lift_choice().table[s.base().at(f)]) out.push_back(s.fiber().name(c));
  return out;
}

/// J * F-bar as a set, and whether it is closed under composition.
bool product_set_closed(const Scaffold& s, const LiftChoice& lifts) {
  const auto t = s.with_lift_choice(lifts);
  std::set<Perm> r;
  for (Elem l : t.kernel().members()) {
    for (Elem f = 0; f < t.base().order(); ++f) r.insert(diagonal_element(t, l) * lift(t, f));
  }
  for (const auto& p : r) {
    for (const auto& q : r) {
      if (!r.count(p * q)) return false;
    }
  }
  return true;
}

/// Every lift table the scaffold admits, up to `limit` tables.
std::vector<LiftChoice> all_tables(const Scaffold& s, std::size_t limit) {
  const auto& f = s.base();
  std::vector<std::pair<Elem, int>> cells;
  for (Elem x = 0; x < f.order(); ++x) {
    if (x == f.identity()) continue;
    for (int b = 0; b < s.block_count(); ++b) cells.push_back({x, b});
  }
  std::vector<LiftChoice> out;
  LiftChoice cur = s.lift_choice();
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (out.size() >= limit) return;
    if (i == cells.size()) {
      out.push_back(cur);
      return;
    }
    auto [x, b] = cells[i];
    const Elem t = s.transversal()[s.step(b, x).h];
    for (Elem k : s.kernel().members()) {
      cur.table[x][b] = s.fiber().mul(k, t);
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

}  // namespace

TEST_CASE("D6 scaffold: blocks, orders and canonical lifts") {
  const auto s = d6_scaffold();
  CHECK(s.block_count() == 2);
  CHECK(s.point_count() == 18);
  CHECK(s.block_name(0) == "H");
  CHECK(s.block_name(1) == "Hy");
  CHECK(s.kernel().size() == 3);
  CHECK(base_group_K(s).order() == 9);
  CHECK(diagonal_J(s).order() == 3);
  CHECK(gwp_group(s).order() == 54);
  CHECK(row_names(s, "x") == std::vector<std::string>{"a", "a2"});
  CHECK(row_names(s, "x2") == std::vector<std::string>{"a2", "a"});
  CHECK(row_names(s, "y") == std::vector<std::string>{"e", "e"});
  CHECK(lift_table_closes(s, s.lift_choice()));
  const auto r = regular_candidate(s);
  CHECK(r.group.order() == 18);
  CHECK(perms::is_regular(r.group));
}

TEST_CASE("D6 scaffold fails the theorem hypotheses") {
  CHECK_THROWS_WITH_AS(d6_scaffold(Mode::Theorem), doctest::Contains("(1)"), Error);
}

TEST_CASE("Q8 scaffold: theorem-mode lifts") {
  const auto s = q8_scaffold();
  CHECK(s.block_count() == 2);
  CHECK(s.block_name(1) == "Hc");
  CHECK(diagonal_J(s).order() == 2);
  CHECK(base_group_K(s).order() == 4);
  const std::map<std::string, std::vector<std::string>> expected = {
      {"a", {"i", "i"}},  {"b", {"j", "j"}},  {"ab", {"k", "k"}},  {"c", {"1", "1"}},
      {"ac", {"i", "i"}}, {"bc", {"j", "j"}}, {"abc", {"k", "k"}},
  };
  for (const auto& [f, row] : expected) {
    CAPTURE(f);
    CHECK(row_names(s, f) == row);
  }
  const auto report = lemma23_check(s);
  CHECK_FALSE(report.t_is_group);
  CHECK_FALSE(report.fbar_is_hom);
  CHECK_FALSE(report.split);
  // t_b * t_a = j * i = -k while t_ab = k: the obstruction is the diagonal -1.
  const auto& f = s.base();
  CHECK(obstruction(s, f.at("a"), f.at("b")).is_identity());
  const Perm o = obstruction(s, f.at("b"), f.at("a"));
  CHECK(o == diagonal_element(s, s.fiber().at("-1")));
  CHECK(regular_candidate(s).group.order() == 16);
}

TEST_CASE("a non-canonical table gives obstructions inside K") {
  auto s = d6_scaffold();
  auto table = s.lift_choice();
  const auto& m = s.fiber();
  const Elem x = s.base().at("x");
  table.table[x][0] = m.at("ab");
  const auto bad = s.with_lift_choice(table);
  bool nontrivial = false;
  for (Elem f1 = 0; f1 < bad.base().order(); ++f1) {
    for (Elem f2 = 0; f2 < bad.base().order(); ++f2) {
      const Perm o = obstruction(bad, f1, f2);
      CHECK(in_base_group(bad, o));
      Perm rebuilt = Perm::identity(bad.point_count());
      for (int b = 0; b < bad.block_count(); ++b) {
        rebuilt = rebuilt * kernel_on_block(bad, b, obstruction_on_block(bad, f1, f2, b));
      }
      CHECK(rebuilt == o);
      nontrivial = nontrivial || !o.is_identity();
    }
  }
  CHECK(nontrivial);
  CHECK(lift_table_closes(bad, bad.lift_choice()) == product_set_closed(s, table));
  table.table[x][0] = m.at("b");  // theta(b) = e, not x
  CHECK_THROWS_WITH_AS(s.with_lift_choice(table), doctest::Contains("InvalidInput"), Error);
}

TEST_CASE("theta must be onto H") {
  const auto d6 = groups::dihedral(6);
  const auto m = groups::direct_product({groups::cyclic(3, "a"), groups::cyclic(3, "b")});
  const std::vector<Elem> h = {d6.at("x")};
  CHECK_THROWS_WITH_AS(
      Scaffold::build(d6, h, m, {{m.at("a"), d6.at("y")}, {m.at("b"), d6.identity()}}, Mode::Canonical),
      doctest::Contains("ThetaNotEpimorphism"), Error);
  CHECK_THROWS_WITH_AS(Scaffold::build(d6, h, m, {{m.at("a"), d6.identity()}, {m.at("b"), d6.identity()}},
                                       Mode::Canonical),
                       doctest::Contains("ThetaNotEpimorphism"), Error);
}

TEST_CASE("explicit choices") {
  const auto d6 = groups::dihedral(6);
  const auto m = groups::direct_product({groups::cyclic(3, "a"), groups::cyclic(3, "b")});
  const std::vector<Elem> h = {d6.at("x")};
  ExplicitChoices choices;
  choices.reps = {d6.identity(), d6.at("xy")};
  const auto s = Scaffold::build(d6, h, m, {{m.at("a"), d6.at("x")}, {m.at("b"), d6.identity()}}, Mode::Explicit,
                                 choices);
  CHECK(s.reps()[1] == d6.at("xy"));
  CHECK(s.block_name(1) == "Hxy");
  for (int p = 0; p < s.point_count(); ++p) {
    CHECK(s.lambda(p) == d6.mul(s.theta()(s.element_of_point(p)), s.reps()[s.block_of_point(p)]));
  }
}

TEST_CASE("closure test agrees with the materialized product set") {
  std::size_t checked = 0, closed = 0;
  for (const auto& c : family::scaffold_family()) {
    if (c.scaffold.point_count() > 24) continue;
    CAPTURE(c.name);
    for (const auto& t : all_tables(c.scaffold, 64)) {
      const bool direct = product_set_closed(c.scaffold, t);
      CHECK(lift_table_closes(c.scaffold, t) == direct);
      ++checked;
      closed += direct ? 1 : 0;
    }
  }
  CHECK(checked > 500);
  CHECK(closed > 0);
  CHECK(closed < checked);
}

TEST_CASE("lift search finds a closing table exactly when one exists") {
  std::size_t searched = 0, found = 0;
  for (const auto& c : family::scaffold_family()) {
    const auto& s = c.scaffold;
    const auto tables = all_tables(s, 4097);
    if (tables.size() > 4096) continue;
    CAPTURE(c.name);
    const bool exists = std::any_of(tables.begin(), tables.end(), [&](const LiftChoice& t) { return product_set_closed(s, t); });
    LiftSearchStats stats;
    const auto result = lift_search(s, 1000000, &stats);
    CHECK(result.has_value() == exists);
    if (result) {
      CHECK(product_set_closed(s, *result));
      CHECK(perms::is_regular(regular_candidate(s.with_lift_choice(*result)).group));
      ++found;
    }
    CHECK(stats.evaluations >= 1);
    ++searched;
  }
  CHECK(searched > 50);
  CHECK(found > 0);
}

TEST_CASE("lift search budget") {
  const auto s = d6_scaffold();
  LiftSearchStats stats;
  CHECK(lift_search(s, 10, &stats).has_value());
  CHECK(stats.used_initial_choice);
  CHECK(stats.evaluations == 1);
  CHECK_FALSE(lift_search(s, 0).has_value());
}

TEST_CASE("regular candidate throws NotClosed exactly for non-closing tables") {
  std::size_t rejected = 0;
  for (const auto& c : family::scaffold_family()) {
    if (c.scaffold.point_count() > 16) continue;
    CAPTURE(c.name);
    for (const auto& t : all_tables(c.scaffold, 16)) {
      const auto s = c.scaffold.with_lift_choice(t);
      if (product_set_closed(c.scaffold, t)) {
        CHECK(perms::is_regular(regular_candidate(s).group));
      } else {
        CHECK_THROWS_WITH_AS(regular_candidate(s), doctest::Contains("NotClosed"), Error);
        ++rejected;
      }
    }
  }
  CHECK(rejected > 0);
}

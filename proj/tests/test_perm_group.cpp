#include <doctest.h>

#include <set>

#include "wrb/errors.hpp"
#include "wrb/perm_group.hpp"

using wrb::Perm;
using wrb::PermGroup;
using wrb::Subgroup;

namespace {

// Independent oracle: plain BFS closure over Perm values (no stabilizer chain).
std::set<Perm> closure_oracle(const std::vector<Perm>& gens, std::size_t degree) {
  std::set<Perm> seen;
  std::vector<Perm> todo{Perm(degree)};
  seen.insert(todo[0]);
  for (std::size_t i = 0; i < todo.size(); ++i)
    for (const auto& g : gens) {
      Perm p = todo[i] * g;
      if (seen.insert(p).second) todo.push_back(p);
    }
  return seen;
}

std::vector<Perm> s3_gens() {
  return {Perm::from_cycles(3, {{0, 1}}), Perm::from_cycles(3, {{0, 1, 2}})};
}

std::vector<Perm> s4_gens() {
  return {Perm::from_cycles(4, {{0, 1}}), Perm::from_cycles(4, {{0, 1, 2, 3}})};
}

// C4 wr C2 on 8 points: two C4 blocks swapped by t.
std::vector<Perm> wreath_gens() {
  return {Perm::from_cycles(8, {{0, 1, 2, 3}}),
          Perm::from_cycles(8, {{4, 5, 6, 7}}),
          Perm::from_cycles(8, {{0, 4}, {1, 5}, {2, 6}, {3, 7}})};
}

} // namespace

TEST_CASE("group: order matches closure oracle") {
  struct Case {
    std::vector<Perm> gens;
    std::size_t degree;
  };
  std::vector<Case> cases = {
      {s3_gens(), 3},
      {s4_gens(), 4},
      {wreath_gens(), 8},
      {{Perm::from_cycles(5, {{0, 1, 2, 3, 4}}), Perm::from_cycles(5, {{0, 1, 2}})}, 5}, // A5
      {{Perm::from_cycles(4, {{0, 1, 2, 3}}), Perm::from_cycles(4, {{0, 2}})}, 4},       // D8
  };
  std::vector<uint64_t> expected = {6, 24, 32, 60, 8};
  for (std::size_t i = 0; i < cases.size(); ++i) {
    auto oracle = closure_oracle(cases[i].gens, cases[i].degree);
    PermGroup g = PermGroup::from_generators(cases[i].gens);
    CHECK(g.order() == oracle.size());
    CHECK(g.order() == expected[i]);
    // chain invariant: order is the product of fundamental orbit lengths
    uint64_t prod = 1;
    for (auto l : g.fundamental_orbit_lengths()) prod *= l;
    CHECK(prod == g.order());
  }
}

TEST_CASE("group: membership matches closure oracle") {
  auto gens = wreath_gens();
  PermGroup g = PermGroup::from_generators(gens);
  auto oracle = closure_oracle(gens, 8);
  // all oracle elements are members
  for (const Perm& p : oracle) CHECK(g.contains(p));
  // an odd permutation of one block is not
  CHECK_FALSE(g.contains(Perm::from_cycles(8, {{0, 1}})));
  CHECK_FALSE(g.contains(Perm::from_cycles(3, {{0, 1}}))); // degree mismatch
}

TEST_CASE("group: element table is the whole group with identity first") {
  PermGroup g = PermGroup::from_generators(s4_gens());
  g.ensure_elements();
  CHECK(g.element(0).is_identity());
  std::set<Perm> seen;
  for (uint32_t i = 0; i < g.order(); ++i) seen.insert(g.element(i));
  CHECK(seen.size() == g.order());
  CHECK(seen == closure_oracle(s4_gens(), 4));
}

TEST_CASE("group: index arithmetic agrees with permutation arithmetic") {
  PermGroup g = PermGroup::from_generators(wreath_gens());
  uint64_t n = g.order();
  for (uint32_t a = 0; a < n; a += 3) {
    CHECK(g.index_of_checked(g.element(a).inverse()) == g.inv(a));
    CHECK(g.element_order(a) == g.element(a).order());
    for (uint32_t b = 1; b < n; b += 5) {
      CHECK(g.element(g.mul(a, b)) == g.element(a) * g.element(b));
      CHECK(g.element(g.conj(a, b)) == g.element(a).conjugated_by(g.element(b)));
    }
  }
}

TEST_CASE("group: bfs word tree reconstructs elements") {
  PermGroup g = PermGroup::from_generators(s4_gens());
  for (uint32_t e = 1; e < g.order(); ++e) {
    uint32_t p = g.bfs_parent(e);
    int gi = g.bfs_gen(e);
    REQUIRE(gi >= 0);
    CHECK(p < e); // BFS discovers parents before children
    CHECK(g.element(p) * g.generators()[static_cast<std::size_t>(gi)] == g.element(e));
  }
  CHECK(g.bfs_gen(0) == -1);
}

TEST_CASE("group: conj_map_for_gen matches pointwise conjugation") {
  PermGroup g = PermGroup::from_generators(s3_gens());
  for (std::size_t gi = 0; gi < g.generators().size(); ++gi) {
    uint32_t gidx = g.index_of_checked(g.generators()[gi]);
    const auto& map = g.conj_map_for_gen(gi);
    REQUIRE(map.size() == g.order());
    for (uint32_t e = 0; e < g.order(); ++e) CHECK(map[e] == g.conj(e, gidx));
  }
}

TEST_CASE("group: construction is deterministic") {
  PermGroup g1 = PermGroup::from_generators(wreath_gens());
  PermGroup g2 = PermGroup::from_generators(wreath_gens());
  REQUIRE(g1.order() == g2.order());
  CHECK(g1.base_points() == g2.base_points());
  for (uint32_t i = 0; i < g1.order(); ++i) CHECK(g1.element(i) == g2.element(i));
}

TEST_CASE("group: trivial and empty generator handling") {
  PermGroup t = PermGroup::from_generators({}, 5);
  CHECK(t.order() == 1);
  CHECK(t.degree() == 5);
  CHECK(t.contains(Perm(5)));
  CHECK_FALSE(t.contains(Perm::from_cycles(5, {{0, 1}})));
  PermGroup one = PermGroup::from_generators({Perm(4)});
  CHECK(one.order() == 1);
  CHECK_THROWS_AS(PermGroup::from_generators({}), wrb::domain_error);
  CHECK_THROWS_AS(PermGroup::from_generators({Perm(3), Perm(4)}), wrb::domain_error);
}

TEST_CASE("subgroup: generated subgroups and containment") {
  PermGroup g = PermGroup::from_generators(s3_gens());
  Subgroup c3 = Subgroup::generated(g, {Perm::from_cycles(3, {{0, 1, 2}})});
  CHECK(c3.order() == 3);
  CHECK(c3.is_abelian());
  CHECK(c3.exponent() == 3);
  CHECK(c3.count_involutions() == 0);
  Subgroup c2 = Subgroup::generated(g, {Perm::from_cycles(3, {{0, 1}})});
  CHECK(c2.order() == 2);
  CHECK(c2.count_involutions() == 1);
  Subgroup full = Subgroup::full(g);
  CHECK(full.order() == 6);
  CHECK(full.is_full());
  CHECK_FALSE(full.is_abelian());
  CHECK(full.count_involutions() == 3);
  CHECK(full.exponent() == 6);
  CHECK(full.contains_subgroup(c3));
  CHECK(full.contains_subgroup(c2));
  CHECK_FALSE(c3.contains_subgroup(c2));
  Subgroup triv = Subgroup::trivial(g);
  CHECK(triv.order() == 1);
  CHECK(c3.contains_subgroup(triv));
  CHECK(c3.contains(Perm::from_cycles(3, {{0, 2, 1}})));
  CHECK_FALSE(c3.contains(Perm::from_cycles(3, {{0, 1}})));
}

TEST_CASE("subgroup: conjugation permutes the point stabilizers") {
  PermGroup g = PermGroup::from_generators(s3_gens());
  Subgroup stab0 = Subgroup::generated(g, {Perm::from_cycles(3, {{1, 2}})});
  Perm r = Perm::from_cycles(3, {{0, 1, 2}});
  Subgroup conj = stab0.conjugated_by(r); // stabilizer of 0^r = 1
  CHECK(conj.order() == 2);
  CHECK(conj.contains(Perm::from_cycles(3, {{0, 2}})));
  // conjugating by a subgroup element fixes the subgroup
  Subgroup c3 = Subgroup::generated(g, {r});
  CHECK(c3.conjugated_by(r) == c3);
  // keys are canonical: equal subgroups have equal keys
  CHECK(conj.key() == Subgroup::generated(g, {Perm::from_cycles(3, {{0, 2}})}).key());
}

TEST_CASE("subgroup: as_group round trips") {
  PermGroup g = PermGroup::from_generators(wreath_gens());
  Subgroup base = Subgroup::generated(
      g, {Perm::from_cycles(8, {{0, 1, 2, 3}}), Perm::from_cycles(8, {{4, 5, 6, 7}})});
  CHECK(base.order() == 16);
  CHECK(base.is_abelian());
  PermGroup h = base.as_group();
  CHECK(h.order() == 16);
  for (uint32_t e : base.elements()) CHECK(h.contains(g.element(e)));
}

TEST_CASE("subgroup: generator reduction stays small and regenerates") {
  PermGroup g = PermGroup::from_generators(wreath_gens());
  Subgroup full = Subgroup::from_elements(g, [&] {
    std::vector<uint32_t> all(g.order());
    for (uint32_t i = 0; i < g.order(); ++i) all[i] = i;
    return all;
  }());
  auto gi = full.generator_indices();
  CHECK(gi.size() <= 5); // log2(32) generators suffice
  Subgroup regen = Subgroup::generated_indices(g, gi);
  CHECK(regen == full);

  // a proper subgroup given only as elements
  Subgroup c3 = Subgroup::generated(PermGroup::from_generators(s3_gens()),
                                    {Perm::from_cycles(3, {{0, 1, 2}})});
  Subgroup from_elems = Subgroup::from_elements(c3.parent(), c3.elements());
  CHECK(Subgroup::generated_indices(c3.parent(), from_elems.generator_indices()) == c3);
}

TEST_CASE("subgroup: key hashing distinguishes distinct subgroups") {
  PermGroup g = PermGroup::from_generators(s3_gens());
  wrb::SubgroupKeyHash h;
  Subgroup a = Subgroup::generated(g, {Perm::from_cycles(3, {{0, 1}})});
  Subgroup b = Subgroup::generated(g, {Perm::from_cycles(3, {{1, 2}})});
  Subgroup a2 = Subgroup::generated(g, {Perm::from_cycles(3, {{0, 1}})});
  CHECK(h(a.key()) == h(a2.key()));
  CHECK(a.key() != b.key());
}

TEST_CASE("subgroup: parent mismatch is rejected") {
  PermGroup g1 = PermGroup::from_generators(s3_gens());
  PermGroup g2 = PermGroup::from_generators(s3_gens());
  Subgroup s1 = Subgroup::full(g1);
  Subgroup s2 = Subgroup::full(g2);
  CHECK_THROWS_AS((void)s1.contains_subgroup(s2), wrb::domain_error);
  CHECK_FALSE(s1 == s2); // different bodies, even if equal as sets
}

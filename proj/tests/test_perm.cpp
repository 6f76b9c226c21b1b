#include <doctest.h>

#include "wrb/errors.hpp"
#include "wrb/perm.hpp"

using wrb::Perm;

TEST_CASE("perm: identity and image constructor validation") {
  Perm id(5);
  CHECK(id.is_identity());
  CHECK(id.degree() == 5);
  for (uint16_t i = 0; i < 5; ++i) CHECK(id[i] == i);

  CHECK_THROWS_AS(Perm(std::vector<uint16_t>{0, 0, 1}), wrb::domain_error);
  CHECK_THROWS_AS(Perm(std::vector<uint16_t>{0, 3}), wrb::domain_error);
  Perm p(std::vector<uint16_t>{1, 0, 2});
  CHECK_FALSE(p.is_identity());
}

TEST_CASE("perm: product applies left factor first") {
  // p = (0 1), q = (1 2); x^(p*q) = (x^p)^q
  Perm p = Perm::from_cycles(3, {{0, 1}});
  Perm q = Perm::from_cycles(3, {{1, 2}});
  Perm pq = p * q;
  CHECK(pq[0] == 2); // 0 -> 1 -> 2
  CHECK(pq[1] == 0); // 1 -> 0 -> 0
  CHECK(pq[2] == 1); // 2 -> 2 -> 1
  Perm qp = q * p;
  CHECK(qp[0] == 1);
  CHECK(qp[2] == 0);
  CHECK(pq != qp);
}

TEST_CASE("perm: inverse and order") {
  Perm p = Perm::from_cycles(7, {{0, 1, 2, 3}, {4, 5}});
  CHECK((p * p.inverse()).is_identity());
  CHECK((p.inverse() * p).is_identity());
  CHECK(p.order() == 4); // lcm(4, 2)
  CHECK(Perm(4).order() == 1);
  CHECK(Perm::from_cycles(6, {{0, 1, 2}, {3, 4}}).order() == 6);
}

TEST_CASE("perm: conjugation composes covariantly") {
  Perm p = Perm::from_cycles(5, {{0, 1, 2}});
  Perm g = Perm::from_cycles(5, {{0, 3}, {1, 4}});
  Perm h = Perm::from_cycles(5, {{2, 3, 4}});
  CHECK(p.conjugated_by(g) == g.inverse() * p * g);
  CHECK(p.conjugated_by(g).conjugated_by(h) == p.conjugated_by(g * h));
  // conjugate of a 3-cycle is the 3-cycle on the image points
  Perm expected = Perm::from_cycles(5, {{3, 4, 2}});
  CHECK(p.conjugated_by(g) == expected);
}

TEST_CASE("perm: commutes_with") {
  Perm a = Perm::from_cycles(4, {{0, 1}});
  Perm b = Perm::from_cycles(4, {{2, 3}});
  Perm c = Perm::from_cycles(4, {{1, 2}});
  CHECK(a.commutes_with(b));
  CHECK_FALSE(a.commutes_with(c));
}

TEST_CASE("perm: cycle decomposition sorted by least moved point") {
  Perm p = Perm::from_cycles(8, {{5, 6}, {0, 2, 4}});
  auto cyc = p.cycles();
  REQUIRE(cyc.size() == 2);
  CHECK(cyc[0] == std::vector<uint16_t>{0, 2, 4});
  CHECK(cyc[1] == std::vector<uint16_t>{5, 6});
  CHECK(p.to_cycle_string() == "(0 2 4)(5 6)");
  CHECK(Perm(3).to_cycle_string() == "()");
}

TEST_CASE("perm: from_cycles rejects bad input") {
  CHECK_THROWS_AS(Perm::from_cycles(3, {{0, 5}}), wrb::domain_error);
  CHECK_THROWS_AS(Perm::from_cycles(4, {{0, 1}, {1, 2}}), wrb::domain_error);
}

TEST_CASE("perm: parse_cycles round trip and errors") {
  Perm p = Perm::parse_cycles("(0 2 4)(5 6)", 8);
  CHECK(p == Perm::from_cycles(8, {{0, 2, 4}, {5, 6}}));
  CHECK(Perm::parse_cycles("()", 4).is_identity());
  CHECK(Perm::parse_cycles("(0,1)(2,3)", 4) == Perm::from_cycles(4, {{0, 1}, {2, 3}}));
  CHECK(Perm::parse_cycles("  (1 2) ", 4) == Perm::from_cycles(4, {{1, 2}}));

  CHECK_THROWS_AS(Perm::parse_cycles("(0 1", 4), wrb::parse_error);
  CHECK_THROWS_AS(Perm::parse_cycles("(0 9)", 4), wrb::parse_error);
  CHECK_THROWS_AS(Perm::parse_cycles("(0 0)", 4), wrb::parse_error);
  CHECK_THROWS_AS(Perm::parse_cycles("0 1)", 4), wrb::parse_error);
  CHECK_THROWS_AS(Perm::parse_cycles("(0 x)", 4), wrb::parse_error);
  try {
    Perm::parse_cycles("(0 9)", 4, 17);
    FAIL("expected parse_error");
  } catch (const wrb::parse_error& e) {
    CHECK(e.line == 17);
    CHECK(e.column > 1);
  }
}

TEST_CASE("perm: round trip through cycle string") {
  Perm p = Perm::from_cycles(9, {{0, 3}, {1, 7, 8}, {2, 5}});
  CHECK(Perm::parse_cycles(p.to_cycle_string(), 9) == p);
}

TEST_CASE("perm: shifted embeds into a larger domain") {
  Perm p = Perm::from_cycles(3, {{0, 1, 2}});
  Perm s = p.shifted(4, 8);
  CHECK(s.degree() == 8);
  CHECK(s[0] == 0);
  CHECK(s[3] == 3);
  CHECK(s[4] == 5);
  CHECK(s[5] == 6);
  CHECK(s[6] == 4);
  CHECK(s[7] == 7);
}

TEST_CASE("perm: lcm helper") {
  CHECK(wrb::lcm_u64(4, 6) == 12);
  CHECK(wrb::lcm_u64(1, 9) == 9);
  CHECK(wrb::lcm_u64(8, 8) == 8);
}

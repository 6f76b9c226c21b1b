#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "wrb/errors.hpp"
#include "wrb/fusion.hpp"
#include "wrb/group_ops.hpp"
#include "wrb/verify.hpp"
#include "wrb/wreathed.hpp"

using namespace wrb;

namespace {

// ---- fixtures -----------------------------------------------------------------

PermGroup s3() {
  return PermGroup::from_generators({Perm::parse_cycles("(0 1 2)", 3), Perm::parse_cycles("(0 1)", 3)});
}

PermGroup s4() {
  return PermGroup::from_generators({Perm::parse_cycles("(0 1 2 3)", 4), Perm::parse_cycles("(0 1)", 4)});
}

PermGroup a4() {
  return PermGroup::from_generators({Perm::parse_cycles("(0 1 2)", 4), Perm::parse_cycles("(0 1)(2 3)", 4)});
}

PermGroup c6() { return PermGroup::from_generators({Perm::parse_cycles("(0 1 2 3 4 5)", 6)}); }

const WreathedData& w2() {
  static WreathedData w = build_wreathed(2);
  return w;
}

const WreathedData& w3() {
  static WreathedData w = build_wreathed(3);
  return w;
}

// (C_4 x C_4) : S_3 on 16 + 3 points, Sylow 2-subgroup C_4 wr C_2.
const PermGroup& c4c4s3() {
  static PermGroup g = [] {
    auto pt = [](uint16_t i, uint16_t j) { return static_cast<uint16_t>(4 * (i % 4) + (j % 4)); };
    std::vector<uint16_t> ia(19), ib(19), is(19), it(19);
    for (uint16_t k = 16; k < 19; ++k) ia[k] = ib[k] = is[k] = it[k] = k;
    for (uint16_t i = 0; i < 4; ++i) {
      for (uint16_t j = 0; j < 4; ++j) {
        ia[pt(i, j)] = pt(i + 1, j);
        ib[pt(i, j)] = pt(i, j + 1);
        is[pt(i, j)] = pt(4 - j, i + 4 - j);
        it[pt(i, j)] = pt(j, i);
      }
    }
    is[16] = 17, is[17] = 18, is[18] = 16;
    it[17] = 18, it[18] = 17;
    return PermGroup::from_generators(
        {Perm(std::move(ia)), Perm(std::move(ib)), Perm(std::move(is)), Perm(std::move(it))});
  }();
  return g;
}

const Subgroup& c4c4s3_sylow() {
  static Subgroup p = sylow_2(c4c4s3());
  return p;
}

const WreathedEmbedding& c4c4s3_embedding() {
  static WreathedEmbedding e = find_wreathed_embedding(w2(), c4c4s3_sylow());
  return e;
}

// ---- oracles --------------------------------------------------------------------

// A group has a normal 2-complement iff some normal subgroup has odd order and
// 2-power index; decided here by scanning every subgroup.
bool oracle_2_nilpotent(const PermGroup& g) {
  Subgroup full = Subgroup::full(g);
  for (const Subgroup& s : all_subgroups(full))
    if (s.order() % 2 == 1 && is_power_of_two(g.order() / s.order()) && is_normal_in(full, s))
      return true;
  return false;
}

// Postconditions every criterion subgroup must satisfy.
void check_criterion_subgroup(const PermGroup& g, const Subgroup& p, const Subgroup& q,
                              const Subgroup& h) {
  Subgroup full = Subgroup::full(g);
  Subgroup n = normalizer_in(full, q);
  Subgroup np = intersect(n, p);
  REQUIRE(n.contains_subgroup(h));
  REQUIRE(h.contains_subgroup(np));
  REQUIRE(h.order() % np.order() == 0);
  REQUIRE((h.order() / np.order()) % 2 == 1);
  REQUIRE(n.order() % h.order() == 0);
  REQUIRE(is_power_of_two(n.order() / h.order()));
}

Subgroup model_subgroup(const WreathedData& w, std::vector<Perm> gens) {
  return Subgroup::generated(w.P, gens);
}

}  // namespace

TEST_CASE("normal 2-complement detection matches the subgroup-scan oracle") {
  PermGroup wp = w2().P;
  const PermGroup groups[] = {s3(), s4(), a4(), c6(), wp, c4c4s3()};
  const bool expected[] = {true, false, false, true, true, false};
  for (std::size_t i = 0; i < 6; ++i) {
    CAPTURE(i);
    CHECK(is_2_nilpotent(groups[i]) == expected[i]);
    if (groups[i].order() <= 32) CHECK(oracle_2_nilpotent(groups[i]) == expected[i]);
  }
}

TEST_CASE("centralizer classification recognizes each syntactic condition") {
  const WreathedData& w = w2();
  Subgroup full = Subgroup::full(w.P);
  WreathedEmbedding emb = find_wreathed_embedding(w, full);
  Perm ab = w.a * w.b;
  Perm z2 = ab * ab;  // central involution

  SUBCASE("nonabelian subgroups") {
    TwoNilpotentCase c = classify_two_nilpotent_centralizer(w, emb, w.P, q8_subgroups(w).front());
    CHECK(c.case_id == 1);
    CHECK(c.holds);
    CHECK(classify_two_nilpotent_centralizer(w, emb, w.P, full).case_id == 1);
  }
  SUBCASE("the base subgroup and the centralizer of an outside involution") {
    CHECK(classify_two_nilpotent_centralizer(w, emb, w.P, w.P0).case_id == 4);
    Subgroup zt = model_subgroup(w, {ab, w.t});
    REQUIRE(zt.order() == 8);
    CHECK(classify_two_nilpotent_centralizer(w, emb, w.P, zt).case_id == 4);
  }
  SUBCASE("klein four with a component outside the base") {
    Subgroup k = model_subgroup(w, {z2, w.t});
    REQUIRE(k.order() == 4);
    TwoNilpotentCase c = classify_two_nilpotent_centralizer(w, emb, w.P, k);
    CHECK(c.case_id == 5);
    CHECK(c.holds);
  }
  SUBCASE("cyclic subgroups outside the base") {
    CHECK(classify_two_nilpotent_centralizer(w, emb, w.P, model_subgroup(w, {w.t})).case_id == 3);
    Subgroup at = model_subgroup(w, {w.a * w.t});
    REQUIRE(at.order() == 8);
    CHECK(classify_two_nilpotent_centralizer(w, emb, w.P, at).case_id == 3);
  }
  SUBCASE("subgroups matching no condition") {
    CHECK(classify_two_nilpotent_centralizer(w, emb, w.P, model_subgroup(w, {w.a})).case_id == 0);
    Subgroup klein_in_base = model_subgroup(w, {w.a * w.a, w.b * w.b});
    REQUIRE(klein_in_base.order() == 4);
    CHECK(classify_two_nilpotent_centralizer(w, emb, w.P, klein_in_base).case_id == 0);
    CHECK(classify_two_nilpotent_centralizer(w, emb, w.P, model_subgroup(w, {})).case_id == 0);
    // inside a 2-group every centralizer trivially has a normal 2-complement
    CHECK(classify_two_nilpotent_centralizer(w, emb, w.P, model_subgroup(w, {w.a})).holds);
  }
}

TEST_CASE("rank-2 non-homocyclic abelian subgroups outside the base appear for n = 3") {
  const WreathedData& w = w3();
  Subgroup full = Subgroup::full(w.P);
  WreathedEmbedding emb = find_wreathed_embedding(w, full);
  Perm ab = w.a * w.b;
  Subgroup q = model_subgroup(w, {ab * ab, w.t});  // C_4 x C_2, outside the base
  REQUIRE(q.order() == 8);
  REQUIRE(q.is_abelian());
  CHECK(classify_two_nilpotent_centralizer(w, emb, w.P, q).case_id == 2);
  Subgroup zt = model_subgroup(w, {ab, w.t});  // order 2^{n+1} = 16
  REQUIRE(zt.order() == 16);
  CHECK(classify_two_nilpotent_centralizer(w, emb, w.P, zt).case_id == 4);
}

TEST_CASE("centralizer classification on an ambient group with odd-order elements") {
  const PermGroup& g = c4c4s3();
  const WreathedEmbedding& emb = c4c4s3_embedding();
  const WreathedData& w = w2();

  // base subgroup: condition holds and the centralizer is its own Sylow
  Subgroup base = Subgroup::generated(g, {emb.model_to_ambient.apply(w.a),
                                          emb.model_to_ambient.apply(w.b)});
  REQUIRE(base.order() == 16);
  TwoNilpotentCase cb = classify_two_nilpotent_centralizer(w, emb, g, base);
  CHECK(cb.case_id == 4);
  CHECK(cb.holds);
  CHECK(cb.holds == oracle_2_nilpotent(centralizer_in(Subgroup::full(g), base).as_group()));

  // outside involution: condition 3, and the centralizer really is 2-nilpotent
  Subgroup t = Subgroup::generated(g, {emb.model_to_ambient.apply(w.t)});
  TwoNilpotentCase ct = classify_two_nilpotent_centralizer(w, emb, g, t);
  CHECK(ct.case_id == 3);
  CHECK(ct.holds == oracle_2_nilpotent(centralizer_in(Subgroup::full(g), t).as_group()));
  CHECK(ct.holds);

  // trivial subgroup: no condition applies and C_G(1) = G is not 2-nilpotent
  TwoNilpotentCase c0 = classify_two_nilpotent_centralizer(w, emb, g, Subgroup::trivial(g));
  CHECK(c0.case_id == 0);
  CHECK_FALSE(c0.holds);

  // a subgroup outside the identified Sylow subgroup is rejected
  Subgroup odd = Subgroup::generated(g, {g.generators()[2]});  // the order-3 generator
  REQUIRE(odd.order() == 3);
  CHECK_THROWS_AS(classify_two_nilpotent_centralizer(w, emb, g, odd), domain_error);
}

TEST_CASE("s3 overgroup of an involution over a normal 2-subgroup") {
  SUBCASE("the quotient group itself") {
    PermGroup g = s3();
    Perm t = Perm::parse_cycles("(0 1)", 3);
    Subgroup h = find_s3_through_involution(g, Subgroup::trivial(g), t);
    CHECK(h.order() == 6);
    CHECK(h.contains(t));
    CHECK_FALSE(h.is_abelian());
  }
  SUBCASE("a central c2 extension") {
    PermGroup g = direct_product(PermGroup::from_generators({Perm::parse_cycles("(0 1)", 2)}), s3());
    Subgroup q = Subgroup::generated(g, {Perm::parse_cycles("(0 1)", 5)});
    Perm t = Perm::parse_cycles("(0 1)(2 3)", 5);
    Subgroup h = find_s3_through_involution(g, q, t);
    CHECK(h.order() == 6);
    CHECK(h.contains(t));
    CHECK_FALSE(h.is_abelian());
    CHECK(intersect(h, q).order() == 1);
  }
  SUBCASE("hypothesis violations are rejected") {
    PermGroup g = s3();
    Perm t = Perm::parse_cycles("(0 1)", 3);
    Perm r = Perm::parse_cycles("(0 1 2)", 3);
    CHECK_THROWS_AS(find_s3_through_involution(g, Subgroup::trivial(g), r), domain_error);
    Subgroup tq = Subgroup::generated(g, {t});
    CHECK_THROWS_AS(find_s3_through_involution(g, tq, t), domain_error);  // t inside q
    CHECK_THROWS_AS(find_s3_through_involution(g, tq, Perm::parse_cycles("(0 2)", 3)),
                    domain_error);  // q is not normal
    PermGroup c = c6();
    CHECK_THROWS_AS(
        find_s3_through_involution(c, Subgroup::trivial(c), Perm::parse_cycles("(0 3)(1 4)(2 5)", 6)),
        domain_error);  // abelian quotient
  }
}

TEST_CASE("criterion subgroup inside a 2-group is the full normalizer") {
  const WreathedData& w = w2();
  Subgroup p = Subgroup::full(w.P);
  const Subgroup qs[] = {Subgroup::trivial(w.P), model_subgroup(w, {w.t}), w.P0, w.Z, p};
  for (const Subgroup& q : qs) {
    CAPTURE(q.order());
    std::optional<Subgroup> h = find_ik_subgroup(w.P, p, q);
    REQUIRE(h.has_value());
    check_criterion_subgroup(w.P, p, q, *h);
    CHECK(*h == normalizer_in(Subgroup::full(w.P), q));
  }
}

TEST_CASE("criterion subgroup in groups with odd part") {
  SUBCASE("sylow subgroup of s3") {
    PermGroup g = s3();
    Subgroup p = sylow_2(g);
    std::optional<Subgroup> h0 = find_ik_subgroup(g, p, Subgroup::trivial(g));
    REQUIRE(h0.has_value());
    CHECK(h0->order() == 6);  // the whole group: normal 2-complement times sylow
    check_criterion_subgroup(g, p, Subgroup::trivial(g), *h0);
    std::optional<Subgroup> hp = find_ik_subgroup(g, p, p);
    REQUIRE(hp.has_value());
    check_criterion_subgroup(g, p, p, *hp);
  }
  SUBCASE("a non-2-nilpotent centralizer yields no verdict") {
    PermGroup g = a4();
    CHECK_FALSE(find_ik_subgroup(g, sylow_2(g), Subgroup::trivial(g)).has_value());
    const PermGroup& c = c4c4s3();
    CHECK_FALSE(find_ik_subgroup(c, c4c4s3_sylow(), Subgroup::trivial(c)).has_value());
  }
  SUBCASE("essential base subgroup of the order-96 group") {
    const PermGroup& g = c4c4s3();
    const Subgroup& p = c4c4s3_sylow();
    const WreathedEmbedding& emb = c4c4s3_embedding();
    Subgroup base = Subgroup::generated(g, {emb.model_to_ambient.apply(w2().a),
                                            emb.model_to_ambient.apply(w2().b)});
    std::optional<Subgroup> h = find_ik_subgroup(g, p, base);
    REQUIRE(h.has_value());
    check_criterion_subgroup(g, p, base, *h);
    // here N_G(P_0) = G and the s3 construction must reach the whole group
    CHECK(h->order() == 96);
  }
  SUBCASE("outside involution of the order-96 group takes the delegation path") {
    const PermGroup& g = c4c4s3();
    const Subgroup& p = c4c4s3_sylow();
    const WreathedEmbedding& emb = c4c4s3_embedding();
    Subgroup t = Subgroup::generated(g, {emb.model_to_ambient.apply(w2().t)});
    // t generates a subgroup strictly below Q C_P(Q), so the search recurses
    Subgroup cp = intersect(centralizer_in(Subgroup::full(g), t), p);
    REQUIRE(join(t, cp).order() > t.order());
    std::optional<Subgroup> h = find_ik_subgroup(g, p, t);
    REQUIRE(h.has_value());
    check_criterion_subgroup(g, p, t, *h);
  }
  SUBCASE("mismatched parents are rejected") {
    PermGroup g = s3();
    PermGroup h = s4();
    CHECK_THROWS_AS(find_ik_subgroup(g, sylow_2(g), Subgroup::trivial(h)), domain_error);
  }
}

TEST_CASE("full verification of the wreathed square") {
  const WreathedData& w = w2();
  Subgroup p = Subgroup::full(w.P);
  VerifyOptions opts;
  opts.group_id = "wreath-n2";
  opts.group_prime_id = "wreath-n2";
  VerificationReport rep = verify_scott_brauer_indecomposable(w.P, w.P, p, opts);

  CHECK(rep.n == 2);
  CHECK(rep.fusion_equal);
  CHECK(rep.saturated);
  // a transitive permutation module of a 2-group is already indecomposable
  CHECK(rep.scott_dim == 32);
  CHECK(rep.scott_vertex_is_diagonal);
  CHECK(rep.overall);
  REQUIRE(!rep.verdicts.empty());

  std::set<VerdictRoute> routes;
  for (const SubgroupVerdict& v : rep.verdicts) {
    CAPTURE(v.detail);
    CHECK(v.fully_normalized);
    CHECK(v.indecomposable);
    CHECK_FALSE(v.zero);
    CHECK(v.cross_checked);
    CHECK(v.split_dim >= 1);
    routes.insert(v.route);
  }
  CHECK(routes.count(VerdictRoute::DirectModuleComputation) == 1);
  CHECK(routes.count(VerdictRoute::TwoNilpotentCentralizer) == 1);
  CHECK(routes.count(VerdictRoute::HomocyclicC2Automizer) == 1);
  // a 2-group has no odd automizers anywhere
  CHECK(routes.count(VerdictRoute::HomocyclicS3Automizer) == 0);
  CHECK(!rep.timings.empty());
  CHECK(rep.timings.back().stage == "total");
}

TEST_CASE("verification is deterministic across thread counts") {
  const WreathedData& w = w2();
  Subgroup p = Subgroup::full(w.P);
  VerifyOptions one;
  one.threads = 1;
  VerifyOptions four;
  four.threads = 4;
  VerificationReport r1 = verify_scott_brauer_indecomposable(w.P, w.P, p, one);
  VerificationReport r4 = verify_scott_brauer_indecomposable(w.P, w.P, p, four);
  CHECK(r1.overall == r4.overall);
  CHECK(r1.scott_dim == r4.scott_dim);
  REQUIRE(r1.verdicts.size() == r4.verdicts.size());
  for (std::size_t i = 0; i < r1.verdicts.size(); ++i) {
    const SubgroupVerdict& a = r1.verdicts[i];
    const SubgroupVerdict& b = r4.verdicts[i];
    // the two runs build separate product groups, so compare by canonical key
    CHECK(a.q.key() == b.q.key());
    CHECK(a.route == b.route);
    CHECK(a.cls.tag == b.cls.tag);
    CHECK(a.indecomposable == b.indecomposable);
    CHECK(a.zero == b.zero);
    CHECK(a.split_dim == b.split_dim);
    CHECK(a.fully_normalized == b.fully_normalized);
    CHECK(a.cross_checked == b.cross_checked);
    CHECK(a.detail == b.detail);
  }
}

TEST_CASE("full verification of the order-96 pair") {
  const PermGroup& g = c4c4s3();
  const Subgroup& p = c4c4s3_sylow();
  VerifyOptions opts;
  opts.group_id = "c4c4-s3";
  opts.group_prime_id = "c4c4-s3";
  opts.threads = 4;
  VerificationReport rep = verify_scott_brauer_indecomposable(g, g, p, opts);

  CHECK(rep.n == 2);
  CHECK(rep.fusion_equal);
  CHECK(rep.saturated);
  CHECK(rep.scott_dim >= 1);
  CHECK(rep.scott_dim < 288);
  CHECK(rep.scott_vertex_is_diagonal);
  CHECK(rep.overall);

  std::set<VerdictRoute> routes;
  for (const SubgroupVerdict& v : rep.verdicts) {
    CAPTURE(v.detail);
    CHECK(v.fully_normalized);
    CHECK(v.indecomposable);
    CHECK_FALSE(v.zero);
    CHECK(v.cross_checked);
    routes.insert(v.route);
  }
  // the base subgroup and the klein tower both carry an s3 automizer here
  CHECK(routes.count(VerdictRoute::HomocyclicS3Automizer) == 1);
  CHECK(routes.count(VerdictRoute::TwoNilpotentCentralizer) == 1);
  CHECK(routes.count(VerdictRoute::DirectModuleComputation) == 1);
}

TEST_CASE("verification rejects bad hypotheses up front") {
  const WreathedData& w = w2();
  SUBCASE("p must be a sylow 2-subgroup") {
    CHECK_THROWS_AS(verify_scott_brauer_indecomposable(w.P, w.P, w.Z, {}), precondition_error);
  }
  SUBCASE("the sylow subgroup must have the wreathed order shape") {
    PermGroup c8 = PermGroup::from_generators({Perm::parse_cycles("(0 1 2 3 4 5 6 7)", 8)});
    CHECK_THROWS_AS(verify_scott_brauer_indecomposable(c8, c8, Subgroup::full(c8), {}),
                    precondition_error);
  }
  SUBCASE("the factors must induce the same fusion system") {
    const PermGroup& g = c4c4s3();
    PermGroup pg = c4c4s3_sylow().as_group();
    Subgroup p_in_g = c4c4s3_sylow();
    CHECK_THROWS_AS(verify_scott_brauer_indecomposable(g, pg, p_in_g, {}), precondition_error);
  }
  SUBCASE("the factors must share the point set") {
    const PermGroup& g = c4c4s3();
    CHECK_THROWS_AS(verify_scott_brauer_indecomposable(g, w.P, c4c4s3_sylow(), {}),
                    precondition_error);
  }
}

TEST_CASE("criterion sweep over a 2-group holds everywhere") {
  const WreathedData& w = w2();
  Subgroup p = Subgroup::full(w.P);
  VerifyOptions opts;
  opts.group_id = "wreath-n2";
  VerificationReport rep = verify_via_ik(w.P, p, opts);
  CHECK(rep.overall);
  CHECK(rep.saturated);
  REQUIRE(!rep.verdicts.empty());
  for (const SubgroupVerdict& v : rep.verdicts) {
    CAPTURE(v.detail);
    CHECK(v.indecomposable);
    CHECK(v.cross_checked);
    CHECK(v.route == VerdictRoute::TwoNilpotentCentralizer);
  }
}

TEST_CASE("criterion sweep over the order-96 group is honest about its reach") {
  const PermGroup& g = c4c4s3();
  const Subgroup& p = c4c4s3_sylow();
  VerifyOptions opts;
  opts.group_id = "c4c4-s3";
  VerificationReport rep = verify_via_ik(g, p, opts);
  CHECK(rep.saturated);
  // the trivial subgroup has centralizer G, which is not 2-nilpotent, so the
  // criterion cannot decide there and the sweep must not claim success
  CHECK_FALSE(rep.overall);
  bool base_seen = false;
  bool trivial_seen = false;
  for (const SubgroupVerdict& v : rep.verdicts) {
    CAPTURE(v.detail);
    if (v.q.order() == 16) {
      base_seen = true;
      CHECK(v.indecomposable);
      CHECK(v.cross_checked);
    }
    if (v.q.order() == 1) {
      trivial_seen = true;
      CHECK_FALSE(v.indecomposable);
      CHECK(v.detail.find("inconclusive") != std::string::npos);
    }
  }
  CHECK(base_seen);
  CHECK(trivial_seen);
}

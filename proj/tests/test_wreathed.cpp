#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "wrb/errors.hpp"
#include "wrb/group_ops.hpp"
#include "wrb/wreathed.hpp"

using namespace wrb;

namespace {

Perm ppow(const Perm& p, uint64_t k) {
  Perm acc(p.degree());
  Perm base = p;
  while (k) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

uint64_t pow2(int k) { return uint64_t{1} << k; }

const WreathedData& wreathed(int n) {
  static std::map<int, WreathedData> memo;
  auto it = memo.find(n);
  if (it == memo.end()) it = memo.emplace(n, build_wreathed(n)).first;
  return it->second;
}

const std::vector<Subgroup>& subgroups_of(int n) {
  static std::map<int, std::vector<Subgroup>> memo;
  auto it = memo.find(n);
  if (it == memo.end())
    it = memo.emplace(n, all_subgroups(Subgroup::full(wreathed(n).P))).first;
  return it->second;
}

// Independent quaternion detector: order 8, non-abelian, unique involution.
bool oracle_is_q8(const Subgroup& q) {
  return q.order() == 8 && !q.is_abelian() && q.count_involutions() == 1;
}

bool is_homocyclic_rank2(const Subgroup& q) {
  uint64_t e = q.exponent();
  return q.is_abelian() && e != q.order() && e * e == q.order();
}

int log2u(uint64_t v) {
  int k = 0;
  while (v > 1) {
    v >>= 1;
    ++k;
  }
  return k;
}

// Extensional classification oracle: a subgroup gets the tag of the canonical
// representative it is conjugate to, falling back to the structural buckets.
WreathedClass oracle_classify(const WreathedData& w, const Subgroup& q) {
  Subgroup full = Subgroup::full(w.P);
  std::vector<std::pair<Subgroup, WreathedClass>> reps;
  reps.push_back({Subgroup::trivial(w.P), {WreathedTag::Trivial, 0, {}}});
  reps.push_back({full, {WreathedTag::FullP, 0, {}}});
  reps.push_back({w.P0, {WreathedTag::Base, 0, {}}});
  reps.push_back({w.P1, {WreathedTag::P1Class, w.n, {}}});
  for (int m = 1; m <= w.n - 1; ++m) {
    reps.push_back({canonical_homocyclic(w, m), {WreathedTag::HomocyclicInBase, m, {}}});
    reps.push_back({canonical_q8_product(w, m), {WreathedTag::Q8CentralProduct, m, {}}});
  }
  Perm z = ppow(w.a * w.b, pow2(w.n - 1));
  reps.push_back({Subgroup::generated(w.P, {z, w.t}), {WreathedTag::KleinOutsideBase, 0, {}}});

  for (const auto& [rep, cls] : reps)
    if (rep.order() == q.order() && conjugating_element_in(full, q, rep)) return cls;

  bool in_base = w.P0.contains_subgroup(q);
  if (q.is_abelian()) {
    if (q.exponent() == q.order())
      return {in_base ? WreathedTag::CyclicInBase : WreathedTag::CyclicOutsideBase, 0, {}};
    return {WreathedTag::NonHomocyclicAbelian, 0, {}};
  }
  return {WreathedTag::NonAbelianOther, 0, {}};
}

} // namespace

TEST_CASE("wreathed construction satisfies the defining data") {
  for (int n : {2, 3}) {
    CAPTURE(n);
    const WreathedData& w = wreathed(n);
    CHECK(w.P.degree() == 2 * pow2(n));
    CHECK(w.P.order() == pow2(2 * n + 1));
    CHECK(w.P0.order() == pow2(2 * n));
    CHECK(w.P0.is_abelian());
    CHECK(w.P0.exponent() == pow2(n));
    CHECK(w.Z.order() == pow2(n));
    CHECK(w.Z == center_in(Subgroup::full(w.P)));
    CHECK(w.Z.exponent() == pow2(n));
    CHECK(w.P1.order() == pow2(n + 2));
    CHECK_FALSE(w.P1.is_abelian());
    CHECK(w.P1.contains_subgroup(w.Z));

    CHECK(ppow(w.a, pow2(n)).is_identity());
    CHECK((w.t * w.t).is_identity());
    CHECK(w.a.conjugated_by(w.t) == w.b);
    CHECK(w.a.commutes_with(w.b));
    CHECK(is_normal_in(Subgroup::full(w.P), w.P0));

    CHECK(w.P.element(w.a_idx) == w.a);
    CHECK(w.P.element(w.b_idx) == w.b);
    CHECK(w.P.element(w.t_idx) == w.t);
  }

  CHECK_THROWS_AS(build_wreathed(1), domain_error);
  CHECK_THROWS_AS(build_wreathed(0), domain_error);
  CHECK_THROWS_AS(build_wreathed(-3), domain_error);
}

TEST_CASE("coordinate words cover the group exactly once") {
  const WreathedData& w = wreathed(2);
  std::size_t inside = 0, outside = 0;
  for (uint32_t e = 0; e < w.P.order(); ++e) {
    const Perm& p = w.P.element(e);
    WreathedCoords c = wreathed_coords(w, p);
    CHECK(wreathed_word(w, c.i, c.j, c.outside) == p);
    (c.outside ? outside : inside) += 1;
  }
  CHECK(inside == 16);
  CHECK(outside == 16);

  CHECK(wreathed_word(w, 1, 1, false) == w.a * w.b);
  CHECK(wreathed_word(w, 0, 0, true) == w.t);
  CHECK(wreathed_word(w, 5, -3, false) == w.a * w.b);  // wraps mod 2^n

  CHECK_THROWS_AS(wreathed_coords(w, Perm(4)), domain_error);
  Perm transposition = Perm::from_cycles(8, {{0, 1}});
  CHECK_THROWS_AS(wreathed_coords(w, transposition), domain_error);
}

TEST_CASE("centralizer of every element outside the base") {
  for (int n : {2, 3}) {
    CAPTURE(n);
    const WreathedData& w = wreathed(n);
    Subgroup full = Subgroup::full(w.P);
    std::size_t outside_count = 0;
    for (uint32_t e = 0; e < w.P.order(); ++e) {
      if (w.P0.contains_index(e)) continue;
      ++outside_count;
      Subgroup c = centralizer_of_element_in(full, e);
      CHECK(c.order() == pow2(n + 1));
      CHECK(intersect(c, w.P0) == w.Z);
    }
    CHECK(outside_count == pow2(2 * n));
  }
}

TEST_CASE("quaternion subgroups: generator form, centralizer, conjugacy") {
  for (int n : {2, 3}) {
    CAPTURE(n);
    const WreathedData& w = wreathed(n);
    Subgroup full = Subgroup::full(w.P);
    std::vector<Subgroup> qs = q8_subgroups(w);
    CHECK(qs.size() == pow2(n - 2));

    std::set<std::vector<uint32_t>> from_oracle, from_formula;
    for (const Subgroup& s : subgroups_of(n))
      if (oracle_is_q8(s)) from_oracle.insert(s.key());
    for (const Subgroup& s : qs) from_formula.insert(s.key());
    CHECK(from_oracle == from_formula);

    Perm z = ppow(w.a * w.b, pow2(n - 1));
    uint32_t z_idx = w.P.index_of_checked(z);
    for (const Subgroup& q : qs) {
      CHECK(q.contains_index(z_idx));
      CHECK(centralizer_in(full, q) == w.Z);
      CHECK(conjugating_element_in(full, q, qs.front()).has_value());
    }

    // Explicit conjugator between any two: with outside generators a^{i1}b^{j1}t
    // and a^{i2}b^{j2}t, the element x = a^{j2}b^{j1}t maps the first subgroup
    // onto the second via q -> x q x^-1.
    for (const Subgroup& q1 : qs)
      for (const Subgroup& q2 : qs) {
        WreathedCoords c1, c2;
        bool got1 = false, got2 = false;
        for (uint32_t e : q1.elements())
          if (!got1 && !w.P0.contains_index(e)) {
            c1 = wreathed_coords(w, w.P.element(e));
            got1 = true;
          }
        for (uint32_t e : q2.elements())
          if (!got2 && !w.P0.contains_index(e)) {
            c2 = wreathed_coords(w, w.P.element(e));
            got2 = true;
          }
        REQUIRE(got1);
        REQUIRE(got2);
        Perm x = wreathed_word(w, c2.j, c1.j, true);
        CHECK(q1.conjugated_by(x.inverse()) == q2);
      }
  }
}

TEST_CASE("homocyclic subgroups sit where the structure lemmas place them") {
  for (int n : {2, 3}) {
    CAPTURE(n);
    const WreathedData& w = wreathed(n);
    Subgroup full = Subgroup::full(w.P);
    Perm z = ppow(w.a * w.b, pow2(n - 1));
    Subgroup klein_out = Subgroup::generated(w.P, {z, w.t});
    std::size_t seen_klein_out = 0;

    for (const Subgroup& q : subgroups_of(n)) {
      if (!is_homocyclic_rank2(q)) continue;
      int mu = log2u(q.exponent());
      bool in_base = w.P0.contains_subgroup(q);
      if (mu >= 2) {
        CHECK(in_base);
        CHECK(q == canonical_homocyclic(w, n - mu));
      } else if (in_base) {
        CHECK(q == canonical_homocyclic(w, n - 1));
      } else {
        ++seen_klein_out;
        auto g = conjugating_element_in(full, q, klein_out);
        REQUIRE(g.has_value());
        CHECK(q.conjugated_by_index(*g) == klein_out);
        CHECK(w.P1.contains_subgroup(q.conjugated_by_index(*g)));
      }
    }
    CHECK(seen_klein_out > 0);
  }
}

TEST_CASE("nonabelian subgroups have central centers") {
  for (int n : {2, 3}) {
    CAPTURE(n);
    const WreathedData& w = wreathed(n);
    for (const Subgroup& q : subgroups_of(n))
      if (!q.is_abelian()) CHECK(w.Z.contains_subgroup(center_in(q)));
  }
}

TEST_CASE("classification is total, matches the oracle, and is conjugation-invariant") {
  for (int n : {2, 3}) {
    CAPTURE(n);
    const WreathedData& w = wreathed(n);
    Subgroup full = Subgroup::full(w.P);
    std::map<std::string, std::size_t> tag_counts;
    for (const Subgroup& q : subgroups_of(n)) {
      WreathedClass got = classify_subgroup(w, q);
      WreathedClass expect = oracle_classify(w, q);
      CAPTURE(q.describe_generators());
      CHECK(got == expect);
      ++tag_counts[describe(got)];
      if (got.witness) {
        Subgroup rep = canonical_representative(w, got);
        CHECK(q.conjugated_by_index(*got.witness) == rep);
      } else {
        CHECK_THROWS_AS(canonical_representative(w, got), domain_error);
      }
    }
    // every named bucket is realized
    CHECK(tag_counts["Trivial"] == 1);
    CHECK(tag_counts["FullP"] == 1);
    CHECK(tag_counts["Base"] == 1);
    CHECK(tag_counts["P1Class"] == pow2(n - 2));
    CHECK(tag_counts["KleinOutsideBase"] > 0);
    CHECK(tag_counts["CyclicInBase"] > 0);
    CHECK(tag_counts["CyclicOutsideBase"] > 0);
    CHECK(tag_counts["NonHomocyclicAbelian"] > 0);
    CHECK(tag_counts["NonAbelianOther"] > 0);
    for (int m = 1; m <= n - 1; ++m) {
      CHECK(tag_counts["HomocyclicInBase(m=" + std::to_string(m) + ")"] == 1);
      CHECK(tag_counts["Q8CentralProduct(m=" + std::to_string(m) + ")"] > 0);
    }

    for (const Subgroup& rep : subgroups_up_to_conjugacy(w.P)) {
      WreathedClass cls = classify_subgroup(w, rep);
      for (const Subgroup& conj : conjugates_in(full, rep))
        CHECK(classify_subgroup(w, conj) == cls);
    }
  }
}

TEST_CASE("classification hits the expected buckets on hand-picked subgroups") {
  const WreathedData& w = wreathed(2);
  Perm ab = w.a * w.b;

  auto cls = classify_subgroup(w, Subgroup::generated(w.P, {ppow(w.a, 2), ppow(w.b, 2)}));
  CHECK(cls.tag == WreathedTag::HomocyclicInBase);
  CHECK(cls.m == 1);

  cls = classify_subgroup(w, Subgroup::generated(w.P, {ppow(ab, 2), w.t}));
  CHECK(cls.tag == WreathedTag::KleinOutsideBase);
  REQUIRE(cls.witness.has_value());
  CHECK(w.P1.contains_subgroup(
      Subgroup::generated(w.P, {ppow(ab, 2), w.t}).conjugated_by_index(*cls.witness)));

  CHECK(classify_subgroup(w, Subgroup::full(w.P)).tag == WreathedTag::FullP);
  CHECK(classify_subgroup(w, w.P0).tag == WreathedTag::Base);
  CHECK(classify_subgroup(w, w.P1).tag == WreathedTag::P1Class);
  CHECK(classify_subgroup(w, Subgroup::trivial(w.P)).tag == WreathedTag::Trivial);
  CHECK(classify_subgroup(w, Subgroup::generated(w.P, {w.a})).tag ==
        WreathedTag::CyclicInBase);
  CHECK(classify_subgroup(w, Subgroup::generated(w.P, {w.t})).tag ==
        WreathedTag::CyclicOutsideBase);
  CHECK(classify_subgroup(w, Subgroup::generated(w.P, {w.a * w.t})).tag ==
        WreathedTag::CyclicOutsideBase);
  CHECK(classify_subgroup(w, Subgroup::generated(w.P, {ab, w.t})).tag ==
        WreathedTag::NonHomocyclicAbelian);
  CHECK(classify_subgroup(w, Subgroup::generated(w.P, {ppow(w.a, 2), ppow(w.b, 2), w.t}))
            .tag == WreathedTag::NonAbelianOther);
  CHECK(classify_subgroup(w, q8_subgroups(w).front()).tag == WreathedTag::Q8CentralProduct);
  CHECK(classify_subgroup(w, q8_subgroups(w).front()).m == 1);

  // modular group of order 16 inside n=3: cyclic index-4 center but exponent 8,
  // so it must not be mistaken for a central product
  const WreathedData& w3 = wreathed(3);
  Perm x = w3.a * ppow(w3.b, 5);
  Subgroup mod16 = Subgroup::generated(w3.P, {x, w3.t});
  REQUIRE(mod16.order() == 16);
  REQUIRE_FALSE(mod16.is_abelian());
  REQUIRE(mod16.exponent() == 8);
  CHECK(classify_subgroup(w3, mod16).tag == WreathedTag::NonAbelianOther);

  CHECK(classify_subgroup(w3, canonical_q8_product(w3, 2)).tag ==
        WreathedTag::Q8CentralProduct);
  CHECK(classify_subgroup(w3, canonical_q8_product(w3, 2)).m == 2);

  // wrong parent
  PermGroup other = PermGroup::from_generators({Perm::from_cycles(3, {{0, 1, 2}})});
  CHECK_THROWS_AS(classify_subgroup(w, Subgroup::full(other)), domain_error);
}

TEST_CASE("canonical subgroup helpers") {
  for (int n : {2, 3}) {
    CAPTURE(n);
    const WreathedData& w = wreathed(n);
    CHECK(canonical_homocyclic(w, 0) == w.P0);
    for (int m = 0; m <= n - 1; ++m)
      CHECK(canonical_homocyclic(w, m).order() == pow2(2 * (n - m)));
    CHECK(canonical_homocyclic(w, n - 1).count_involutions() == 3);
    CHECK_THROWS_AS(canonical_homocyclic(w, -1), domain_error);
    CHECK_THROWS_AS(canonical_homocyclic(w, n), domain_error);

    CHECK(canonical_q8_product(w, n) == w.P1);
    CHECK(oracle_is_q8(canonical_q8_product(w, 1)));
    for (int m = 1; m <= n; ++m)
      CHECK(canonical_q8_product(w, m).order() == pow2(m + 2));
    CHECK_THROWS_AS(canonical_q8_product(w, 0), domain_error);
    CHECK_THROWS_AS(canonical_q8_product(w, n + 1), domain_error);

    std::vector<Subgroup> cands = odd_automizer_candidates(w);
    CHECK(cands.size() == 2 * static_cast<std::size_t>(n));
    CHECK(std::is_sorted(cands.begin(), cands.end()));
    CHECK(std::adjacent_find(cands.begin(), cands.end()) == cands.end());
    bool has_base = false, has_p1 = false;
    for (const Subgroup& c : cands) {
      if (c == w.P0) has_base = true;
      if (c == w.P1) has_p1 = true;
    }
    CHECK(has_base);
    CHECK(has_p1);
  }
}

TEST_CASE("embedding a wreathed Sylow subgroup of a larger group") {
  const WreathedData& w = wreathed(2);

  // S inside P x C_3, where the Sylow 2-subgroup is P x 1.
  PermGroup c3 = PermGroup::from_generators({Perm::from_cycles(3, {{0, 1, 2}})});
  PermGroup gg = direct_product(w.P, c3);
  Subgroup s = sylow_2(gg);
  REQUIRE(s.order() == 32);

  WreathedEmbedding emb = find_wreathed_embedding(w, s);
  CHECK(emb.model_to_ambient.validate());
  CHECK(emb.ambient_to_model.validate());
  CHECK(pull_to_model(w, emb, s) == Subgroup::full(w.P));

  for (const Subgroup& q :
       {w.P0, w.P1, w.Z, canonical_homocyclic(w, 1), q8_subgroups(w).front()}) {
    Subgroup pushed = push_from_model(w, emb, q);
    CHECK(pushed.order() == q.order());
    CHECK(s.contains_subgroup(pushed));
    Subgroup back = pull_to_model(w, emb, pushed);
    CHECK(classify_subgroup(w, back) == classify_subgroup(w, q));
  }

  // the embedded base subgroup is located structurally, so its pull-back is P0
  Subgroup pushed_base = push_from_model(w, emb, w.P0);
  CHECK(pull_to_model(w, emb, pushed_base) == w.P0);

  // self-embedding picks the defining generators deterministically
  WreathedEmbedding self = find_wreathed_embedding(w, Subgroup::full(w.P));
  REQUIRE(self.model_to_ambient.gen_images().size() == 3);
  CHECK(self.model_to_ambient.gen_images()[0] == w.a);
  CHECK(self.model_to_ambient.gen_images()[1] == w.b);
  CHECK(self.model_to_ambient.gen_images()[2] == w.t);

  CHECK_THROWS_AS(find_wreathed_embedding(w, w.P0), domain_error);

  // elementary abelian group of order 32: rank too high
  std::vector<Perm> swaps;
  for (uint16_t i = 0; i < 5; ++i)
    swaps.push_back(Perm::from_cycles(10, {{static_cast<uint16_t>(2 * i),
                                            static_cast<uint16_t>(2 * i + 1)}}));
  PermGroup e32 = PermGroup::from_generators(swaps);
  CHECK_THROWS_AS(find_wreathed_embedding(w, Subgroup::full(e32)), domain_error);

  // dihedral of order 32: rank 2 but the abelian maximal subgroup is cyclic
  Perm rot = Perm::from_cycles(16, {{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15}});
  std::vector<uint16_t> rev(16);
  for (std::size_t i = 0; i < 16; ++i) rev[i] = static_cast<uint16_t>((16 - i) % 16);
  PermGroup d32 = PermGroup::from_generators({rot, Perm(std::move(rev))});
  REQUIRE(d32.order() == 32);
  CHECK_THROWS_AS(find_wreathed_embedding(w, Subgroup::full(d32)), domain_error);
}

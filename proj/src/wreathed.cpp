#include "wrb/wreathed.hpp"

#include <algorithm>
#include <unordered_set>

#include "wrb/errors.hpp"
#include "wrb/group_ops.hpp"

namespace wrb {

namespace {

Perm perm_pow(const Perm& p, uint64_t k) {
  Perm acc(p.degree());
  Perm base = p;
  while (k) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

int log2_exact(uint64_t v) {
  int k = 0;
  while (v > 1) {
    if (v & 1) throw internal_error("log2_exact: value is not a power of two");
    v >>= 1;
    ++k;
  }
  return k;
}

bool is_cyclic(const Subgroup& s) { return s.exponent() == s.order(); }

// Unique involution marks generalized quaternion among non-cyclic 2-groups;
// at order 8 that is exactly Q_8.
bool central_product_profile(const Subgroup& q, uint64_t center_order) {
  uint64_t qo = q.order();
  if (center_order * 4 != qo) return false;
  if (qo == 8) return q.count_involutions() == 1;
  // For order >= 16 the modular groups share a cyclic index-4 center but have
  // exponent twice the center's order; the central products match it exactly.
  return q.exponent() == center_order;
}

Subgroup klein_outside_rep(const WreathedData& w) {
  Perm ab = w.a * w.b;
  Perm z = perm_pow(ab, uint64_t{1} << (w.n - 1));
  return Subgroup::generated(w.P, {z, w.t});
}

} // namespace

std::string to_string(WreathedTag tag) {
  switch (tag) {
    case WreathedTag::Trivial: return "Trivial";
    case WreathedTag::CyclicInBase: return "CyclicInBase";
    case WreathedTag::CyclicOutsideBase: return "CyclicOutsideBase";
    case WreathedTag::HomocyclicInBase: return "HomocyclicInBase";
    case WreathedTag::KleinOutsideBase: return "KleinOutsideBase";
    case WreathedTag::NonHomocyclicAbelian: return "NonHomocyclicAbelian";
    case WreathedTag::NonAbelianOther: return "NonAbelianOther";
    case WreathedTag::Q8CentralProduct: return "Q8CentralProduct";
    case WreathedTag::Base: return "Base";
    case WreathedTag::P1Class: return "P1Class";
    case WreathedTag::FullP: return "FullP";
  }
  throw internal_error("to_string: unknown wreathed tag");
}

std::string describe(const WreathedClass& cls) {
  std::string s = to_string(cls.tag);
  if (cls.tag == WreathedTag::HomocyclicInBase || cls.tag == WreathedTag::Q8CentralProduct)
    s += "(m=" + std::to_string(cls.m) + ")";
  return s;
}

WreathedData build_wreathed(int n) {
  if (n < 2) throw domain_error("build_wreathed: n must be at least 2");
  if (n > 14) throw resource_error("build_wreathed: n too large for the point bound");

  const std::size_t block = std::size_t{1} << n;
  const std::size_t degree = 2 * block;

  std::vector<uint16_t> ia(degree), ib(degree), it(degree);
  for (std::size_t x = 0; x < block; ++x) {
    ia[x] = static_cast<uint16_t>((x + 1) % block);
    ia[block + x] = static_cast<uint16_t>(block + x);
    ib[x] = static_cast<uint16_t>(x);
    ib[block + x] = static_cast<uint16_t>(block + (x + 1) % block);
    it[x] = static_cast<uint16_t>(block + x);
    it[block + x] = static_cast<uint16_t>(x);
  }

  WreathedData w;
  w.n = n;
  w.a = Perm(std::move(ia));
  w.b = Perm(std::move(ib));
  w.t = Perm(std::move(it));
  w.P = PermGroup::from_generators({w.a, w.b, w.t});

  const uint64_t pn = uint64_t{1} << n;  // 2^n
  if (perm_pow(w.a, pn) != Perm(degree) || perm_pow(w.b, pn) != Perm(degree) ||
      w.t * w.t != Perm(degree) || w.a.conjugated_by(w.t) != w.b ||
      !w.a.commutes_with(w.b))
    throw internal_error("build_wreathed: defining relations fail");
  if (w.P.order() != (uint64_t{1} << (2 * n + 1)))
    throw internal_error("build_wreathed: group order is not 2^(2n+1)");

  w.a_idx = w.P.index_of_checked(w.a);
  w.b_idx = w.P.index_of_checked(w.b);
  w.t_idx = w.P.index_of_checked(w.t);

  w.P0 = Subgroup::generated(w.P, {w.a, w.b});
  if (w.P0.order() * 2 != w.P.order())
    throw internal_error("build_wreathed: base subgroup does not have index 2");

  Perm ab = w.a * w.b;
  w.Z = Subgroup::generated(w.P, {ab});
  if (w.Z.order() != pn || !(w.Z == center_in(Subgroup::full(w.P))))
    throw internal_error("build_wreathed: <ab> is not the center of order 2^n");

  Perm wgen = perm_pow(w.a * w.b.inverse(), uint64_t{1} << (n - 2));
  Perm ygen = perm_pow(ab, uint64_t{1} << (n - 2)) * w.t;
  Subgroup y = Subgroup::generated(w.P, {wgen, ygen});
  if (y.order() != 8 || y.is_abelian() || y.count_involutions() != 1)
    throw internal_error("build_wreathed: canonical quaternion subgroup is broken");
  w.P1 = Subgroup::generated(w.P, {wgen, ygen, ab});
  if (w.P1.order() != (uint64_t{1} << (n + 2)))
    throw internal_error("build_wreathed: P1 does not have order 2^(n+2)");
  return w;
}

Perm wreathed_word(const WreathedData& w, int i, int j, bool outside) {
  const int block = static_cast<int>(w.block());
  i = ((i % block) + block) % block;
  j = ((j % block) + block) % block;
  std::vector<uint16_t> img(2 * static_cast<std::size_t>(block));
  for (int x = 0; x < block; ++x) {
    int xi = (x + i) % block;
    int yj = (x + j) % block;
    img[static_cast<std::size_t>(x)] =
        static_cast<uint16_t>(outside ? block + xi : xi);
    img[static_cast<std::size_t>(block + x)] =
        static_cast<uint16_t>(outside ? yj : block + yj);
  }
  return Perm(std::move(img));
}

WreathedCoords wreathed_coords(const WreathedData& w, const Perm& p) {
  const std::size_t block = w.block();
  if (p.degree() != 2 * block)
    throw domain_error("wreathed_coords: permutation degree mismatch");
  WreathedCoords c;
  c.outside = p[0] >= block;
  if (c.outside) {
    c.i = p[0] - static_cast<int>(block);
    c.j = p[static_cast<uint16_t>(block)];
  } else {
    c.i = p[0];
    c.j = p[static_cast<uint16_t>(block)] - static_cast<int>(block);
  }
  if (wreathed_word(w, c.i, c.j, c.outside) != p)
    throw domain_error("wreathed_coords: not an element of the wreathed group");
  return c;
}

Subgroup canonical_homocyclic(const WreathedData& w, int m) {
  if (m < 0 || m > w.n - 1)
    throw domain_error("canonical_homocyclic: m must satisfy 0 <= m <= n-1");
  Perm am = perm_pow(w.a, uint64_t{1} << m);
  Perm bm = perm_pow(w.b, uint64_t{1} << m);
  Subgroup q = Subgroup::generated(w.P, {am, bm});
  if (q.order() != (uint64_t{1} << (2 * (w.n - m))))
    throw internal_error("canonical_homocyclic: wrong order");
  return q;
}

Subgroup canonical_q8_product(const WreathedData& w, int m) {
  if (m < 1 || m > w.n)
    throw domain_error("canonical_q8_product: m must satisfy 1 <= m <= n");
  Perm ab = w.a * w.b;
  Perm wgen = perm_pow(w.a * w.b.inverse(), uint64_t{1} << (w.n - 2));
  Perm ygen = perm_pow(ab, uint64_t{1} << (w.n - 2)) * w.t;
  Perm k = perm_pow(ab, uint64_t{1} << (w.n - m));
  Subgroup q = Subgroup::generated(w.P, {wgen, ygen, k});
  if (q.order() != (uint64_t{1} << (m + 2)))
    throw internal_error("canonical_q8_product: wrong order");
  return q;
}

std::vector<Subgroup> q8_subgroups(const WreathedData& w) {
  const int block = static_cast<int>(w.block());
  Perm wgen = perm_pow(w.a * w.b.inverse(), uint64_t{1} << (w.n - 2));
  std::unordered_set<std::vector<uint32_t>, SubgroupKeyHash> seen;
  std::vector<Subgroup> out;
  for (int i = 0; i < block; ++i) {
    int j = ((block / 2 - i) % block + block) % block;
    Subgroup q = Subgroup::generated(w.P, {wgen, wreathed_word(w, i, j, true)});
    if (q.order() != 8 || q.is_abelian() || q.count_involutions() != 1)
      throw internal_error("q8_subgroups: generator pattern did not give Q_8");
    if (seen.insert(q.key()).second) out.push_back(std::move(q));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Subgroup canonical_representative(const WreathedData& w, const WreathedClass& cls) {
  switch (cls.tag) {
    case WreathedTag::Trivial: return Subgroup::trivial(w.P);
    case WreathedTag::FullP: return Subgroup::full(w.P);
    case WreathedTag::Base: return w.P0;
    case WreathedTag::P1Class: return w.P1;
    case WreathedTag::HomocyclicInBase: return canonical_homocyclic(w, cls.m);
    case WreathedTag::KleinOutsideBase: return klein_outside_rep(w);
    case WreathedTag::Q8CentralProduct: return canonical_q8_product(w, cls.m);
    default:
      throw domain_error("canonical_representative: tag " + to_string(cls.tag) +
                         " has no canonical form");
  }
}

WreathedClass classify_subgroup(const WreathedData& w, const Subgroup& q) {
  if (!q.valid() || !q.parent().same_body(w.P))
    throw domain_error("classify_subgroup: subgroup does not live in the wreathed group");

  const uint32_t id_idx = 0;
  uint64_t qo = q.order();
  if (qo == 1) return {WreathedTag::Trivial, 0, id_idx};
  if (q.is_full()) return {WreathedTag::FullP, 0, id_idx};
  if (q == w.P0) return {WreathedTag::Base, 0, id_idx};

  bool in_base = w.P0.contains_subgroup(q);
  if (q.is_abelian()) {
    uint64_t expo = q.exponent();
    if (expo == qo)
      return {in_base ? WreathedTag::CyclicInBase : WreathedTag::CyclicOutsideBase, 0,
              std::nullopt};
    if (expo * expo == qo) {
      int mu = log2_exact(expo);  // Q is C_{2^mu} x C_{2^mu}
      if (in_base) {
        int m = w.n - mu;
        WreathedClass cls{WreathedTag::HomocyclicInBase, m, id_idx};
        if (!(q == canonical_homocyclic(w, m)))
          throw internal_error(
              "classify_subgroup: homocyclic subgroup of the base is not the canonical one");
        return cls;
      }
      if (mu != 1)
        throw internal_error(
            "classify_subgroup: homocyclic subgroup of exponent >= 4 outside the base");
      auto x = conjugating_element_in(Subgroup::full(w.P), q, klein_outside_rep(w));
      if (!x)
        throw internal_error(
            "classify_subgroup: Klein subgroup outside the base has no conjugating witness");
      return {WreathedTag::KleinOutsideBase, 0, *x};
    }
    return {WreathedTag::NonHomocyclicAbelian, 0, std::nullopt};
  }

  Subgroup zq = center_in(q);
  if (is_cyclic(zq) && central_product_profile(q, zq.order())) {
    int m = log2_exact(qo) - 2;  // Q isomorphic to Q_8 * C_{2^m}
    Subgroup rep = canonical_q8_product(w, m);
    auto x = conjugating_element_in(Subgroup::full(w.P), q, rep);
    if (!x)
      throw internal_error(
          "classify_subgroup: central-product profile without a conjugating witness");
    if (m == w.n) return {WreathedTag::P1Class, m, *x};
    return {WreathedTag::Q8CentralProduct, m, *x};
  }
  return {WreathedTag::NonAbelianOther, 0, std::nullopt};
}

std::vector<Subgroup> odd_automizer_candidates(const WreathedData& w) {
  std::vector<Subgroup> out;
  for (int m = 0; m <= w.n - 1; ++m) out.push_back(canonical_homocyclic(w, m));
  for (int m = 1; m <= w.n; ++m) out.push_back(canonical_q8_product(w, m));
  std::sort(out.begin(), out.end());
  return out;
}

WreathedEmbedding find_wreathed_embedding(const WreathedData& w, const Subgroup& sylow) {
  if (!sylow.valid()) throw domain_error("find_wreathed_embedding: invalid subgroup");
  const PermGroup& amb = sylow.parent();
  if (sylow.order() != w.P.order())
    throw domain_error("find_wreathed_embedding: subgroup order is not 2^(2n+1)");

  // The subgroup generated by squares and commutators has elementary abelian
  // quotient, so the index-2 subgroups of S are exactly <phi, e> for e outside
  // phi. The wreathed group has rank 2 and a unique abelian one (the base).
  std::vector<uint32_t> seeds;
  for (uint32_t e : sylow.elements()) seeds.push_back(amb.mul(e, e));
  Subgroup der = derived_subgroup(sylow);
  for (uint32_t e : der.generator_indices()) seeds.push_back(e);
  Subgroup phi = Subgroup::generated_indices(amb, seeds);
  if (phi.order() * 4 != sylow.order())
    throw domain_error("find_wreathed_embedding: Frattini-type quotient is not C_2 x C_2");

  Subgroup base;
  int abelian_count = 0;
  std::unordered_set<std::vector<uint32_t>, SubgroupKeyHash> seen;
  std::vector<uint32_t> gen_seed = phi.generator_indices();
  gen_seed.push_back(0);
  for (uint32_t e : sylow.elements()) {
    if (phi.contains_index(e)) continue;
    gen_seed.back() = e;
    Subgroup cand = Subgroup::generated_indices(amb, gen_seed);
    if (cand.order() * 2 != sylow.order())
      throw internal_error("find_wreathed_embedding: hyperplane extension has wrong index");
    if (!seen.insert(cand.key()).second) continue;
    if (cand.is_abelian()) {
      ++abelian_count;
      base = cand;
    }
  }
  if (seen.size() != 3 || abelian_count != 1)
    throw domain_error("find_wreathed_embedding: no unique abelian index-2 subgroup");
  const uint64_t pn = uint64_t{1} << w.n;
  if (base.exponent() != pn || base.order() != pn * pn)
    throw domain_error("find_wreathed_embedding: base subgroup is not C_2^n x C_2^n");

  uint32_t t_img = 0;
  bool found_t = false;
  for (uint32_t e : sylow.elements()) {
    if (e != 0 && amb.mul(e, e) == 0 && !base.contains_index(e)) {
      t_img = e;
      found_t = true;
      break;
    }
  }
  if (!found_t)
    throw domain_error("find_wreathed_embedding: no involution outside the base subgroup");

  uint32_t a_img = 0;
  bool found_a = false;
  for (uint32_t e : base.elements()) {
    if (amb.element_order(e) != pn) continue;
    Subgroup gen = Subgroup::generated_indices(amb, {e, amb.conj(e, t_img)});
    if (gen == base) {
      a_img = e;
      found_a = true;
      break;
    }
  }
  if (!found_a)
    throw domain_error(
        "find_wreathed_embedding: no order-2^n element generating the base with its twist");
  uint32_t b_img = amb.conj(a_img, t_img);

  WreathedEmbedding emb;
  emb.sylow = sylow;
  emb.model_to_ambient = GroupHom(
      w.P, amb, {amb.element(a_img), amb.element(b_img), amb.element(t_img)});
  if (!emb.model_to_ambient.validate())
    throw internal_error("find_wreathed_embedding: forward map is not a homomorphism");
  PermGroup s_group = PermGroup::from_generators(
      {amb.element(a_img), amb.element(b_img), amb.element(t_img)});
  if (s_group.order() != sylow.order())
    throw internal_error("find_wreathed_embedding: chosen generators do not generate S");
  emb.ambient_to_model = GroupHom(s_group, w.P, {w.a, w.b, w.t});
  if (!emb.ambient_to_model.validate())
    throw internal_error("find_wreathed_embedding: backward map is not a homomorphism");
  return emb;
}

Subgroup pull_to_model(const WreathedData& w, const WreathedEmbedding& emb,
                       const Subgroup& q) {
  if (!q.valid() || !q.parent().same_body(emb.sylow.parent()) ||
      !emb.sylow.contains_subgroup(q))
    throw domain_error("pull_to_model: subgroup does not lie in the embedded Sylow");
  std::vector<uint32_t> elems;
  elems.reserve(q.order());
  for (uint32_t e : q.elements())
    elems.push_back(w.P.index_of_checked(emb.ambient_to_model.apply(q.parent().element(e))));
  std::sort(elems.begin(), elems.end());
  return Subgroup::from_elements(w.P, std::move(elems));
}

Subgroup push_from_model(const WreathedData& w, const WreathedEmbedding& emb,
                         const Subgroup& q) {
  if (!q.valid() || !q.parent().same_body(w.P))
    throw domain_error("push_from_model: subgroup does not live in the model group");
  const PermGroup& amb = emb.sylow.parent();
  std::vector<uint32_t> elems;
  elems.reserve(q.order());
  for (uint32_t e : q.elements())
    elems.push_back(amb.index_of_checked(emb.model_to_ambient.apply(w.P.element(e))));
  std::sort(elems.begin(), elems.end());
  return Subgroup::from_elements(amb, std::move(elems));
}

} // namespace wrb

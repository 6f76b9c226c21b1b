#include "wrb/group_ops.hpp"

#include <algorithm>
#include <unordered_set>

#include "wrb/config.hpp"
#include "wrb/errors.hpp"

namespace wrb {

namespace {

bool is_prime_small(uint64_t m) {
  if (m < 2) return false;
  for (uint64_t d = 2; d * d <= m; ++d)
    if (m % d == 0) return false;
  return true;
}

std::vector<uint32_t> union_with_coset(const PermGroup& parent,
                                       const std::vector<uint32_t>& h_elems,
                                       const std::vector<uint32_t>& powers) {
  std::vector<uint32_t> out;
  out.reserve(h_elems.size() * powers.size());
  for (uint32_t p : powers)
    for (uint32_t h : h_elems) out.push_back(parent.mul(h, p));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

} // namespace

uint64_t two_part(uint64_t n) {
  uint64_t t = 1;
  while (n % 2 == 0) {
    n /= 2;
    t *= 2;
  }
  return t;
}

uint64_t odd_part(uint64_t n) { return n / two_part(n); }

bool is_power_of_two(uint64_t n) { return n != 0 && (n & (n - 1)) == 0; }

Subgroup centralizer_of_element_in(const Subgroup& ambient, uint32_t e) {
  const PermGroup& g = ambient.parent();
  const Perm& x = g.element(e);
  std::vector<uint32_t> out;
  for (uint32_t a : ambient.elements())
    if (g.element(a).commutes_with(x)) out.push_back(a);
  return Subgroup::from_elements(g, std::move(out));
}

Subgroup centralizer_in(const Subgroup& ambient, const Subgroup& target) {
  const PermGroup& g = ambient.parent();
  if (!g.same_body(target.parent())) throw domain_error("centralizer_in: parent mismatch");
  std::vector<Perm> tg;
  for (uint32_t gi : target.generator_indices()) tg.push_back(g.element(gi));
  std::vector<uint32_t> out;
  for (uint32_t a : ambient.elements()) {
    const Perm& pa = g.element(a);
    bool ok = true;
    for (const Perm& t : tg)
      if (!pa.commutes_with(t)) { ok = false; break; }
    if (ok) out.push_back(a);
  }
  return Subgroup::from_elements(g, std::move(out));
}

Subgroup center_in(const Subgroup& s) { return intersect(s, centralizer_in(s, s)); }

Subgroup normalizer_in(const Subgroup& ambient, const Subgroup& target) {
  const PermGroup& g = ambient.parent();
  if (!g.same_body(target.parent())) throw domain_error("normalizer_in: parent mismatch");
  const auto& tg = target.generator_indices();
  std::vector<uint32_t> out;
  for (uint32_t a : ambient.elements()) {
    bool ok = true;
    for (uint32_t t : tg)
      if (!target.contains_index(g.conj(t, a))) { ok = false; break; }
    if (ok) out.push_back(a);
  }
  return Subgroup::from_elements(g, std::move(out));
}

bool is_normal_in(const Subgroup& ambient, const Subgroup& target) {
  const PermGroup& g = ambient.parent();
  for (uint32_t a : ambient.generator_indices())
    for (uint32_t t : target.generator_indices())
      if (!target.contains_index(g.conj(t, a))) return false;
  return true;
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  if (!a.parent().same_body(b.parent())) throw domain_error("intersect: parent mismatch");
  std::vector<uint32_t> out;
  std::set_intersection(a.elements().begin(), a.elements().end(), b.elements().begin(),
                        b.elements().end(), std::back_inserter(out));
  return Subgroup::from_elements(a.parent(), std::move(out));
}

Subgroup join(const Subgroup& a, const Subgroup& b) {
  if (!a.parent().same_body(b.parent())) throw domain_error("join: parent mismatch");
  std::vector<uint32_t> gens = a.generator_indices();
  const auto& bg = b.generator_indices();
  gens.insert(gens.end(), bg.begin(), bg.end());
  return Subgroup::generated_indices(a.parent(), std::move(gens));
}

Subgroup normal_closure_in(const Subgroup& ambient, std::vector<uint32_t> seed_idx) {
  const PermGroup& g = ambient.parent();
  const auto& amb_gens = ambient.generator_indices();
  Subgroup h = Subgroup::generated_indices(g, seed_idx);
  while (true) {
    std::vector<uint32_t> extra;
    for (uint32_t e : h.elements())
      for (uint32_t a : amb_gens) {
        uint32_t c = g.conj(e, a);
        if (!h.contains_index(c)) extra.push_back(c);
      }
    if (extra.empty()) return h;
    std::sort(extra.begin(), extra.end());
    extra.erase(std::unique(extra.begin(), extra.end()), extra.end());
    std::vector<uint32_t> gens = h.generator_indices();
    gens.insert(gens.end(), extra.begin(), extra.end());
    h = Subgroup::generated_indices(g, std::move(gens));
  }
}

Subgroup derived_subgroup(const Subgroup& s) {
  const PermGroup& g = s.parent();
  const auto& gi = s.generator_indices();
  std::vector<uint32_t> seeds;
  for (uint32_t a : gi)
    for (uint32_t b : gi) {
      uint32_t c = g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b));
      if (c != 0) seeds.push_back(c);
    }
  if (seeds.empty()) return Subgroup::trivial(g);
  return normal_closure_in(s, std::move(seeds));
}

bool is_solvable(const Subgroup& s) {
  Subgroup cur = s;
  while (cur.order() > 1) {
    Subgroup d = derived_subgroup(cur);
    if (d.order() == cur.order()) return false;
    cur = d;
  }
  return true;
}

std::vector<Subgroup> all_subgroups(const Subgroup& s) {
  if (s.order() > config::max_subgroup_enum_order)
    throw resource_error("all_subgroups: group too large to enumerate");
  const PermGroup& g = s.parent();
  bool solvable = is_solvable(s);

  std::vector<Subgroup> out{Subgroup::trivial(g)};
  std::unordered_set<std::vector<uint32_t>, SubgroupKeyHash> seen{out[0].key()};

  for (std::size_t i = 0; i < out.size(); ++i) {
    Subgroup h = out[i]; // copy; out grows below
    if (h.order() == s.order()) continue;
    if (solvable) {
      Subgroup n = normalizer_in(s, h);
      for (uint32_t e : n.elements()) {
        if (h.contains_index(e)) continue;
        // least m with e^m in h; the extension has order m * |h|
        uint64_t m = 1;
        uint32_t cur = e;
        std::vector<uint32_t> powers{0, e};
        while (!h.contains_index(cur)) {
          cur = g.mul(cur, e);
          powers.push_back(cur);
          ++m;
        }
        if (!is_prime_small(m)) continue;
        powers.resize(m); // e^0 .. e^{m-1}
        auto elems = union_with_coset(g, h.elements(), powers);
        if (seen.insert(elems).second) {
          std::vector<uint32_t> gens = h.generator_indices();
          gens.push_back(e);
          out.push_back(Subgroup::from_elements(g, std::move(elems), std::move(gens)));
        }
      }
    } else {
      for (uint32_t e : s.elements()) {
        if (h.contains_index(e)) continue;
        std::vector<uint32_t> gens = h.generator_indices();
        gens.push_back(e);
        Subgroup ext = Subgroup::generated_indices(g, std::move(gens));
        if (seen.insert(ext.key()).second) out.push_back(std::move(ext));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Subgroup> conjugates_in(const Subgroup& ambient, const Subgroup& s) {
  const PermGroup& g = ambient.parent();
  if (!g.same_body(s.parent())) throw domain_error("conjugates_in: parent mismatch");
  const auto& amb_gens = ambient.generator_indices();
  std::vector<Subgroup> orbit{s};
  std::unordered_set<std::vector<uint32_t>, SubgroupKeyHash> seen{s.key()};
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    for (uint32_t a : amb_gens) {
      Subgroup c = orbit[i].conjugated_by_index(a);
      if (seen.insert(c.key()).second) orbit.push_back(std::move(c));
    }
  }
  std::sort(orbit.begin(), orbit.end());
  return orbit;
}

Subgroup rebase_subgroup(const PermGroup& to, const Subgroup& s) {
  if (to.same_body(s.parent())) return s;
  if (to.degree() != s.parent().degree())
    throw domain_error("rebase_subgroup: degree mismatch");
  std::vector<uint32_t> gen_idx;
  for (const Perm& p : s.generators()) {
    auto idx = to.index_of(p);
    if (!idx) throw domain_error("rebase_subgroup: generator not in target group");
    gen_idx.push_back(*idx);
  }
  Subgroup r = Subgroup::generated_indices(to, std::move(gen_idx));
  if (r.order() != s.order()) throw internal_error("rebase_subgroup: order changed");
  return r;
}

std::vector<Subgroup> subgroups_up_to_conjugacy(const PermGroup& g) {
  auto all = all_subgroups(Subgroup::full(g));
  std::vector<Subgroup> reps;
  std::unordered_set<std::vector<uint32_t>, SubgroupKeyHash> seen;
  Subgroup full = Subgroup::full(g);
  for (const Subgroup& s : all) {
    if (seen.count(s.key())) continue;
    reps.push_back(s);
    for (const Subgroup& c : conjugates_in(full, s)) seen.insert(c.key());
  }
  return reps;
}

std::optional<uint32_t> conjugating_element_in(const Subgroup& ambient, const Subgroup& a,
                                               const Subgroup& b) {
  if (a.order() != b.order()) return {};
  const PermGroup& g = ambient.parent();
  const auto& ag = a.generator_indices();
  for (uint32_t e : ambient.elements()) {
    bool ok = true;
    for (uint32_t t : ag)
      if (!b.contains_index(g.conj(t, e))) { ok = false; break; }
    if (ok) return e;
  }
  return {};
}

Subgroup sylow_2_in(const Subgroup& s) {
  const PermGroup& g = s.parent();
  Subgroup syl = Subgroup::trivial(g);
  while (true) {
    Subgroup n = normalizer_in(s, syl);
    std::optional<uint32_t> ext;
    for (uint32_t e : n.elements()) {
      if (syl.contains_index(e)) continue;
      if (syl.contains_index(g.mul(e, e))) { ext = e; break; }
    }
    if (!ext) return syl;
    auto elems = union_with_coset(g, syl.elements(), {0, *ext});
    std::vector<uint32_t> gens = syl.generator_indices();
    gens.push_back(*ext);
    syl = Subgroup::from_elements(g, std::move(elems), std::move(gens));
  }
}

Subgroup sylow_2(const PermGroup& g) { return sylow_2_in(Subgroup::full(g)); }

Subgroup odd_core_in(const Subgroup& s) {
  const PermGroup& g = s.parent();
  Subgroup k = Subgroup::trivial(g);
  for (uint32_t e : s.elements()) {
    if (e == 0 || k.contains_index(e)) continue;
    if (g.element_order(e) % 2 == 0) continue;
    std::vector<uint32_t> seeds = k.generator_indices();
    seeds.push_back(e);
    Subgroup c = normal_closure_in(s, std::move(seeds));
    if (c.order() % 2 == 1) k = c;
  }
  return k;
}

Subgroup odd_core(const PermGroup& g) { return odd_core_in(Subgroup::full(g)); }

PermGroup direct_product(const PermGroup& a, const PermGroup& b) {
  std::size_t deg = a.degree() + b.degree();
  std::vector<Perm> gens;
  for (const Perm& p : a.generators()) gens.push_back(p.shifted(0, deg));
  for (const Perm& p : b.generators()) gens.push_back(p.shifted(a.degree(), deg));
  return PermGroup::from_generators(std::move(gens), deg);
}

GroupHom::GroupHom(PermGroup from, PermGroup to, std::vector<Perm> gen_images)
    : from_(std::move(from)), to_(std::move(to)), gen_images_(std::move(gen_images)),
      memo_mutex_(std::make_shared<std::mutex>()) {
  if (gen_images_.size() != from_.generators().size())
    throw domain_error("GroupHom: one image per generator required");
  for (const Perm& img : gen_images_)
    if (!to_.contains(img)) throw domain_error("GroupHom: image outside codomain");
}

GroupHom GroupHom::identity(const PermGroup& g) {
  return GroupHom(g, g, g.generators());
}

void GroupHom::ensure_memo() const {
  std::lock_guard<std::mutex> lock(*memo_mutex_);
  if (!memo_.empty()) return;
  from_.ensure_elements();
  std::vector<Perm> memo(from_.order());
  memo[0] = Perm(to_.degree());
  for (uint32_t e = 1; e < from_.order(); ++e)
    memo[e] = memo[from_.bfs_parent(e)] * gen_images_[static_cast<std::size_t>(from_.bfs_gen(e))];
  memo_ = std::move(memo);
}

Perm GroupHom::apply_index(uint32_t idx) const {
  ensure_memo();
  return memo_[idx];
}

Perm GroupHom::apply(const Perm& x) const { return apply_index(from_.index_of_checked(x)); }

bool GroupHom::validate() const {
  ensure_memo();
  std::vector<uint32_t> gidx;
  for (const Perm& p : from_.generators()) gidx.push_back(from_.index_of_checked(p));
  for (uint32_t e = 0; e < from_.order(); ++e)
    for (std::size_t j = 0; j < gidx.size(); ++j)
      if (memo_[from_.mul(e, gidx[j])] != memo_[e] * gen_images_[j]) return false;
  return true;
}

Subgroup diagonal_subgroup(const PermGroup& prod, const Subgroup& sub, const GroupHom& phi) {
  if (!sub.parent().same_body(phi.from()))
    throw domain_error("diagonal_subgroup: sub must live in phi's domain");
  std::size_t left = phi.from().degree();
  if (left + phi.to().degree() != prod.degree())
    throw domain_error("diagonal_subgroup: degree mismatch with product");
  std::vector<Perm> gens;
  for (uint32_t gi : sub.generator_indices()) {
    const Perm& u = sub.parent().element(gi);
    gens.push_back(u.shifted(0, prod.degree()) * phi.apply_index(gi).shifted(left, prod.degree()));
  }
  return Subgroup::generated(prod, gens);
}

Perm QuotientGroup::image_of(uint32_t parent_elem) const {
  std::vector<uint16_t> img(rep_of.size());
  for (std::size_t c = 0; c < rep_of.size(); ++c)
    img[c] = static_cast<uint16_t>(coset_of[parent.mul(rep_of[c], parent_elem)]);
  return Perm(std::move(img));
}

Perm QuotientGroup::image_of_perm(const Perm& g) const {
  return image_of(parent.index_of_checked(g));
}

uint32_t QuotientGroup::preimage_rep(const Perm& quotient_elem) const {
  group.index_of_checked(quotient_elem); // validates membership
  return rep_of[quotient_elem[0]];
}

Subgroup QuotientGroup::preimage(const Subgroup& s) const {
  if (!s.parent().same_body(group)) throw domain_error("preimage: subgroup not in quotient");
  std::vector<bool> marked(rep_of.size(), false);
  for (uint32_t u : s.elements()) marked[group.element(u)[0]] = true;
  std::vector<uint32_t> elems;
  for (uint32_t e = 0; e < coset_of.size(); ++e)
    if (marked[coset_of[e]]) elems.push_back(e);
  return Subgroup::from_elements(parent, std::move(elems));
}

Subgroup QuotientGroup::image_subgroup(const Subgroup& s) const {
  if (!s.parent().same_body(parent)) throw domain_error("image_subgroup: subgroup not in parent");
  std::vector<uint32_t> idx;
  for (uint32_t e : s.elements()) idx.push_back(group.index_of_checked(image_of(e)));
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  return Subgroup::from_elements(group, std::move(idx));
}

QuotientGroup quotient(const PermGroup& g, const Subgroup& n) {
  if (!g.same_body(n.parent())) throw domain_error("quotient: subgroup of a different group");
  if (!is_normal_in(Subgroup::full(g), n)) throw domain_error("quotient: subgroup is not normal");
  g.ensure_elements();
  uint64_t ncosets64 = g.order() / n.order();
  if (ncosets64 > 65535) throw resource_error("quotient: too many cosets for a permutation domain");
  auto ncosets = static_cast<uint32_t>(ncosets64);

  QuotientGroup q;
  q.parent = g;
  q.kernel = n;
  q.coset_of.assign(g.order(), UINT32_MAX);
  q.rep_of.reserve(ncosets);
  const auto& ngens = n.generator_indices();
  std::vector<uint32_t> stack;
  for (uint32_t e = 0; e < g.order(); ++e) {
    if (q.coset_of[e] != UINT32_MAX) continue;
    auto id = static_cast<uint32_t>(q.rep_of.size());
    q.rep_of.push_back(e);
    q.coset_of[e] = id;
    stack.assign(1, e);
    while (!stack.empty()) {
      uint32_t cur = stack.back();
      stack.pop_back();
      for (uint32_t ng : ngens) {
        uint32_t y = g.mul(ng, cur); // left multiplication spans the right coset
        if (q.coset_of[y] == UINT32_MAX) {
          q.coset_of[y] = id;
          stack.push_back(y);
        }
      }
    }
  }
  if (q.rep_of.size() != ncosets) throw internal_error("quotient: coset count mismatch");

  std::vector<uint32_t> gidx;
  for (const Perm& p : g.generators()) gidx.push_back(g.index_of_checked(p));
  for (uint32_t j : gidx) {
    std::vector<uint16_t> img(ncosets);
    for (uint32_t c = 0; c < ncosets; ++c)
      img[c] = static_cast<uint16_t>(q.coset_of[g.mul(q.rep_of[c], j)]);
    q.gen_images.push_back(Perm(std::move(img)));
  }
  q.group = PermGroup::from_generators(q.gen_images, ncosets);
  if (q.group.order() != ncosets)
    throw internal_error("quotient: coset action is not regular");
  return q;
}

QuotientGroup quotient_in(const Subgroup& ambient, const Subgroup& n) {
  if (!ambient.parent().same_body(n.parent()))
    throw domain_error("quotient_in: parent mismatch");
  if (!ambient.contains_subgroup(n)) throw domain_error("quotient_in: n is not inside ambient");
  PermGroup g = ambient.as_group();
  Subgroup rebased = Subgroup::generated(g, n.generators());
  return quotient(g, rebased);
}

} // namespace wrb

#include "wrb/fusion.hpp"

#include <algorithm>
#include <mutex>
#include <optional>
#include <set>
#include <utility>

#include "wrb/errors.hpp"

namespace wrb {

namespace {

constexpr uint64_t kSaturationMaxP = 256; // |P| <= 2^8

} // namespace

std::string to_string(OutShape s) {
  switch (s) {
    case OutShape::Trivial: return "trivial";
    case OutShape::C2: return "C2";
    case OutShape::S3: return "S3";
    case OutShape::Other2Group: return "other-2-group";
    case OutShape::Other: return "other";
  }
  return "?";
}

bool HomSet::contains(uint32_t g) const {
  return std::binary_search(all.begin(), all.end(), g);
}

struct FusionSystem::Cache {
  std::mutex mu;
  std::map<std::pair<std::vector<uint32_t>, std::vector<uint32_t>>, HomSet> homs;
  std::map<std::vector<uint32_t>, Subgroup> norm_p;
  std::map<std::vector<uint32_t>, Subgroup> cent_g;
  std::map<std::vector<uint32_t>, Subgroup> cent_p;
  std::optional<bool> saturated;
};

FusionSystem::FusionSystem() = default;
FusionSystem::FusionSystem(FusionSystem&&) noexcept = default;
FusionSystem& FusionSystem::operator=(FusionSystem&&) noexcept = default;
FusionSystem::~FusionSystem() = default;

FusionSystem build_fusion(const PermGroup& g, const Subgroup& p, HomFilter filter) {
  if (!p.valid() || !p.parent().same_body(g))
    throw precondition_error("build_fusion: p must be a subgroup of g");
  if (!is_power_of_two(p.order()))
    throw domain_error("build_fusion: p has order " + std::to_string(p.order()) +
                       ", which is not a power of 2");
  FusionSystem f;
  f.g_ = g;
  f.g_full_ = Subgroup::full(g);
  f.p_ = p;
  f.filter_ = std::move(filter);
  f.cache_ = std::make_unique<FusionSystem::Cache>();
  f.subs_ = all_subgroups(p);

  std::size_t classified = 0;
  for (const Subgroup& q : f.subs_) {
    if (f.class_index_.count(q.key())) continue;
    std::vector<Subgroup> cls;
    for (const Subgroup& c : conjugates_in(f.g_full_, q))
      if (p.contains_subgroup(c)) cls.push_back(c);
    std::sort(cls.begin(), cls.end());
    std::size_t ci = f.classes_.size();
    for (const Subgroup& m : cls) {
      if (!f.class_index_.emplace(m.key(), ci).second)
        throw internal_error("build_fusion: overlapping conjugacy classes");
    }
    classified += cls.size();
    f.classes_.push_back(std::move(cls));
  }
  if (classified != f.subs_.size())
    throw internal_error("build_fusion: class partition does not cover the subgroups of p");
  f.reps_.reserve(f.classes_.size());
  for (const auto& cls : f.classes_) f.reps_.push_back(cls.front());
  return f;
}

std::size_t FusionSystem::class_index_of(const Subgroup& q) const {
  if (!q.valid() || !q.parent().same_body(g_))
    throw precondition_error("fusion: subgroup lives in a different group");
  auto it = class_index_.find(q.key());
  if (it == class_index_.end())
    throw precondition_error("fusion: subgroup is not a subgroup of p");
  return it->second;
}

const std::vector<Subgroup>& FusionSystem::f_class_of(const Subgroup& q) const {
  return classes_[class_index_of(q)];
}

Subgroup FusionSystem::normalizer_in_p(const Subgroup& q) const {
  if (!q.valid() || !q.parent().same_body(g_))
    throw precondition_error("fusion: subgroup lives in a different group");
  {
    std::lock_guard<std::mutex> lk(cache_->mu);
    auto it = cache_->norm_p.find(q.key());
    if (it != cache_->norm_p.end()) return it->second;
  }
  Subgroup n = normalizer_in(p_, q);
  std::lock_guard<std::mutex> lk(cache_->mu);
  return cache_->norm_p.emplace(q.key(), std::move(n)).first->second;
}

Subgroup FusionSystem::centralizer_in_g(const Subgroup& q) const {
  if (!q.valid() || !q.parent().same_body(g_))
    throw precondition_error("fusion: subgroup lives in a different group");
  {
    std::lock_guard<std::mutex> lk(cache_->mu);
    auto it = cache_->cent_g.find(q.key());
    if (it != cache_->cent_g.end()) return it->second;
  }
  Subgroup c = centralizer_in(g_full_, q);
  std::lock_guard<std::mutex> lk(cache_->mu);
  return cache_->cent_g.emplace(q.key(), std::move(c)).first->second;
}

Subgroup FusionSystem::centralizer_in_p(const Subgroup& q) const {
  if (!q.valid() || !q.parent().same_body(g_))
    throw precondition_error("fusion: subgroup lives in a different group");
  {
    std::lock_guard<std::mutex> lk(cache_->mu);
    auto it = cache_->cent_p.find(q.key());
    if (it != cache_->cent_p.end()) return it->second;
  }
  Subgroup c = centralizer_in(p_, q);
  std::lock_guard<std::mutex> lk(cache_->mu);
  return cache_->cent_p.emplace(q.key(), std::move(c)).first->second;
}

HomSet FusionSystem::homs(const Subgroup& q, const Subgroup& r) const {
  if (!q.valid() || !r.valid() || !q.parent().same_body(g_) || !r.parent().same_body(g_))
    throw precondition_error("fusion: hom endpoints live in a different group");
  std::pair<std::vector<uint32_t>, std::vector<uint32_t>> key{q.key(), r.key()};
  {
    std::lock_guard<std::mutex> lk(cache_->mu);
    auto it = cache_->homs.find(key);
    if (it != cache_->homs.end()) return it->second;
  }

  g_.ensure_elements();
  const uint32_t n = static_cast<uint32_t>(g_.order());
  const std::vector<uint32_t>& qgens = q.generator_indices();
  std::vector<char> in_t(n, 0);
  for (uint32_t x = 0; x < n; ++x) {
    bool ok = true;
    for (uint32_t qg : qgens) {
      if (!r.contains_index(g_.conj(qg, x))) {
        ok = false;
        break;
      }
    }
    in_t[x] = ok ? 1 : 0;
  }

  Subgroup c = centralizer_in_g(q);
  HomSet hs;
  std::vector<char> seen(n, 0);
  for (uint32_t x = 0; x < n; ++x) {
    if (!in_t[x] || seen[x]) continue;
    // x is the least element of its coset C_G(q)*x: smaller members would
    // already have been visited.
    std::vector<uint32_t> coset;
    coset.reserve(c.order());
    for (uint32_t ce : c.elements()) {
      uint32_t y = g_.mul(ce, x);
      if (!in_t[y])
        throw internal_error("fusion: transporter is not a union of centralizer cosets");
      if (!seen[y]) {
        seen[y] = 1;
        coset.push_back(y);
      }
    }
    if (coset.size() != c.order()) throw internal_error("fusion: coset size mismatch");
    if (!filter_ || filter_(g_, q, r, x)) {
      hs.reps.push_back(x);
      hs.all.insert(hs.all.end(), coset.begin(), coset.end());
    }
  }
  std::sort(hs.all.begin(), hs.all.end());

  std::lock_guard<std::mutex> lk(cache_->mu);
  return cache_->homs.emplace(std::move(key), std::move(hs)).first->second;
}

bool FusionSystem::hom_contains(const Subgroup& q, const Subgroup& r, uint32_t g) const {
  return homs(q, r).contains(g);
}

bool is_fully_normalized(const FusionSystem& f, const Subgroup& q) {
  const std::vector<Subgroup>& cls = f.f_class_of(q);
  uint64_t mine = f.normalizer_in_p(q).order();
  for (const Subgroup& m : cls)
    if (f.normalizer_in_p(m).order() > mine) return false;
  return true;
}

namespace {

// N_P(Q)/C_P(Q) must be a Sylow 2-subgroup of the cached map set Q -> Q.
// Since Aut_P(Q) is a 2-group inside it, that means: the P-conjugation maps
// are all present, and their number equals the 2-part of the map count.
bool fully_automized(const FusionSystem& f, const Subgroup& q) {
  Subgroup np = f.normalizer_in_p(q);
  uint64_t aut_p = np.order() / f.centralizer_in_p(q).order();
  HomSet hs = f.homs(q, q);
  if (two_part(hs.count()) != aut_p) return false;
  for (uint32_t x : np.elements())
    if (!hs.contains(x)) return false;
  return true;
}

// Every cached isomorphism phi: R -> Q must extend to a map on
// N_phi = {x in N_P(R) : phi c_x phi^-1 in Aut_P(Q)}. With phi induced by g,
// the condition on x reads x^g in N_P(Q)C_G(Q), and an extension is an
// element of C_G(R)g mapping N_phi into P.
bool receptive(const FusionSystem& f, const Subgroup& q) {
  const PermGroup& g = f.group();
  Subgroup m = join(f.normalizer_in_p(q), f.centralizer_in_g(q));
  for (const Subgroup& r : f.f_class_of(q)) {
    HomSet iso = f.homs(r, q);
    Subgroup npr = f.normalizer_in_p(r);
    Subgroup cgr = f.centralizer_in_g(r);
    for (uint32_t g0 : iso.reps) {
      std::vector<uint32_t> nphi;
      for (uint32_t x : npr.elements())
        if (m.contains_index(g.conj(x, g0))) nphi.push_back(x);
      Subgroup nphi_s = Subgroup::from_elements(g, std::move(nphi));
      HomSet ext = f.homs(nphi_s, f.p());
      bool found = false;
      for (uint32_t c : cgr.elements()) {
        if (ext.contains(g.mul(c, g0))) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
  }
  return true;
}

} // namespace

bool is_saturated(const FusionSystem& f) {
  if (f.p().order() > kSaturationMaxP)
    throw resource_error("is_saturated: |P| = " + std::to_string(f.p().order()) +
                         " exceeds the supported bound " + std::to_string(kSaturationMaxP));
  {
    std::lock_guard<std::mutex> lk(f.cache_->mu);
    if (f.cache_->saturated.has_value()) return *f.cache_->saturated;
  }
  bool ok = true;
  for (const auto& cls : f.classes()) {
    uint64_t mx = 0;
    for (const Subgroup& m : cls) mx = std::max(mx, f.normalizer_in_p(m).order());
    bool good = false;
    for (const Subgroup& m : cls) {
      if (f.normalizer_in_p(m).order() != mx) continue;
      if (fully_automized(f, m) && receptive(f, m)) {
        good = true;
        break;
      }
    }
    if (!good) {
      ok = false;
      break;
    }
  }
  std::lock_guard<std::mutex> lk(f.cache_->mu);
  f.cache_->saturated = ok;
  return ok;
}

AutomizerData automizer(const FusionSystem& f, const Subgroup& q) {
  const PermGroup& g = f.group();
  HomSet hs = f.homs(q, q);
  const std::vector<uint32_t>& els = q.elements();
  auto pos_of = [&els](uint32_t e) {
    return static_cast<uint16_t>(std::lower_bound(els.begin(), els.end(), e) - els.begin());
  };
  auto perm_of = [&](uint32_t x) {
    std::vector<uint16_t> img(els.size());
    for (std::size_t k = 0; k < els.size(); ++k) img[k] = pos_of(g.conj(els[k], x));
    return Perm(std::move(img));
  };

  AutomizerData ad;
  ad.q = q;
  std::vector<Perm> gens;
  gens.reserve(hs.reps.size());
  for (uint32_t x : hs.reps) gens.push_back(perm_of(x));
  ad.aut_f = PermGroup::from_generators(std::move(gens), els.size());

  std::vector<Perm> inn_gens;
  for (uint32_t e : q.generator_indices()) inn_gens.push_back(perm_of(e));
  ad.inn = inn_gens.empty() ? Subgroup::trivial(ad.aut_f)
                            : Subgroup::generated(ad.aut_f, inn_gens);
  ad.out_f_order = ad.aut_f.order() / ad.inn.order();

  uint64_t o = ad.out_f_order;
  if (o == 1) {
    ad.out_f_shape = OutShape::Trivial;
  } else if (o == 2) {
    ad.out_f_shape = OutShape::C2;
  } else if (is_power_of_two(o)) {
    ad.out_f_shape = OutShape::Other2Group;
  } else if (o == 6) {
    QuotientGroup out = quotient(ad.aut_f, ad.inn);
    ad.out_f_shape =
        Subgroup::full(out.group).is_abelian() ? OutShape::Other : OutShape::S3;
  } else {
    ad.out_f_shape = OutShape::Other;
  }
  return ad;
}

std::vector<Subgroup> essential_subgroups(const FusionSystem& f) {
  if (!is_saturated(f))
    throw precondition_error("essential_subgroups: the fusion system is not saturated");
  std::map<std::size_t, bool> centric;
  std::vector<Subgroup> out;
  for (const Subgroup& q : f.subgroups()) {
    std::size_t ci = f.class_index_of(q);
    auto it = centric.find(ci);
    bool is_centric;
    if (it != centric.end()) {
      is_centric = it->second;
    } else {
      is_centric = true;
      for (const Subgroup& m : f.classes()[ci]) {
        if (!m.contains_subgroup(f.centralizer_in_p(m))) {
          is_centric = false;
          break;
        }
      }
      centric.emplace(ci, is_centric);
    }
    if (!is_centric || !is_fully_normalized(f, q)) continue;
    AutomizerData ad = automizer(f, q);
    switch (ad.out_f_shape) {
      case OutShape::S3:
        out.push_back(q);
        break;
      case OutShape::Trivial:
      case OutShape::C2:
      case OutShape::Other2Group:
        break;
      case OutShape::Other:
        throw domain_error(
            "essential_subgroups: outer automizer of order " +
            std::to_string(ad.out_f_order) +
            " falls outside the supported shapes (expected a 2-group or S3)");
    }
  }
  return out;
}

bool fusion_equal(const FusionSystem& f1, const FusionSystem& f2) {
  const PermGroup& g1 = f1.group();
  const PermGroup& g2 = f2.group();
  if (g1.degree() != g2.degree())
    throw domain_error("fusion_equal: systems act on different point counts");

  auto p_perms = [](const FusionSystem& f) {
    std::vector<Perm> v;
    v.reserve(f.p().order());
    for (uint32_t e : f.p().elements()) v.push_back(f.group().element(e));
    std::sort(v.begin(), v.end());
    return v;
  };
  if (p_perms(f1) != p_perms(f2))
    throw domain_error("fusion_equal: the systems are not over the same subgroup");

  // Fingerprint of one map: the image permutations of q's elements, taken in
  // a body-neutral order (q's elements sorted as permutations).
  auto prints = [](const FusionSystem& f, const Subgroup& q,
                   const std::vector<uint32_t>& qi) {
    std::set<std::vector<uint16_t>> out;
    HomSet hs = f.homs(q, f.p());
    for (uint32_t rep : hs.reps) {
      std::vector<uint16_t> flat;
      flat.reserve(qi.size() * f.group().degree());
      for (uint32_t e : qi) {
        const Perm& im = f.group().element(f.group().conj(e, rep));
        flat.insert(flat.end(), im.images().begin(), im.images().end());
      }
      out.insert(std::move(flat));
    }
    return out;
  };

  for (const Subgroup& q1 : f1.subgroups()) {
    std::vector<Perm> qperms;
    qperms.reserve(q1.order());
    for (uint32_t e : q1.elements()) qperms.push_back(g1.element(e));
    std::sort(qperms.begin(), qperms.end());
    std::vector<uint32_t> qi1, qi2, e2;
    qi1.reserve(qperms.size());
    qi2.reserve(qperms.size());
    for (const Perm& p : qperms) {
      qi1.push_back(g1.index_of_checked(p));
      qi2.push_back(g2.index_of_checked(p));
    }
    e2 = qi2;
    std::sort(e2.begin(), e2.end());
    Subgroup q2 = Subgroup::from_elements(g2, std::move(e2));
    if (prints(f1, q1, qi1) != prints(f2, q2, qi2)) return false;
  }
  return true;
}

} // namespace wrb

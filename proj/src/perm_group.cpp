#include "wrb/perm_group.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "wrb/errors.hpp"

namespace wrb {

namespace {

// One level of the stabilizer chain: generators fixing all earlier base points,
// the fundamental orbit of this level's base point, and a transversal.
struct ChainLevel {
  uint16_t base = 0;
  std::vector<Perm> gens;
  std::vector<uint16_t> orbit;        // discovery order, orbit[0] == base
  std::vector<int32_t> pos;           // point -> orbit position or -1
  std::vector<Perm> transversal;      // base^transversal[i] == orbit[i]

  void rebuild(std::size_t degree) {
    orbit.clear();
    transversal.clear();
    pos.assign(degree, -1);
    orbit.push_back(base);
    pos[base] = 0;
    transversal.push_back(Perm(degree));
    for (std::size_t i = 0; i < orbit.size(); ++i) {
      for (const Perm& g : gens) {
        uint16_t img = g[orbit[i]];
        if (pos[img] < 0) {
          pos[img] = static_cast<int32_t>(orbit.size());
          orbit.push_back(img);
          transversal.push_back(transversal[i] * g);
        }
      }
    }
  }
};

} // namespace

struct PermGroup::Body {
  std::size_t degree = 0;
  std::vector<Perm> gens;
  std::vector<ChainLevel> levels;

  // Element table, built lazily.
  mutable std::mutex lazy_mutex;
  mutable std::vector<Perm> elems;
  mutable std::unordered_map<Perm, uint32_t, PermHash> elem_index;
  mutable std::vector<uint32_t> bfs_parent;
  mutable std::vector<int32_t> bfs_gen;
  mutable std::vector<std::vector<uint32_t>> conj_maps; // per generator
  mutable std::vector<uint32_t> inv_map;

  // Strip p through the chain starting at level `from`; returns the residue and
  // the level at which stripping stopped.
  std::pair<Perm, std::size_t> strip(Perm p, std::size_t from) const {
    for (std::size_t i = from; i < levels.size(); ++i) {
      const ChainLevel& L = levels[i];
      uint16_t x = p[L.base];
      if (L.pos[x] < 0) return {std::move(p), i};
      p = p * L.transversal[L.pos[x]].inverse();
    }
    return {std::move(p), levels.size()};
  }

  // Deterministic Schreier-Sims: verify each level's Schreier generators
  // bottom-up, inserting stripped residues as new strong generators. Index
  // access throughout: insert_residue may reallocate `levels`.
  void schreier_sims() {
    levels.clear();
    for (const Perm& g : gens) add_strong_generator(g);
    if (levels.empty()) return;
    std::size_t i = levels.size();
    while (i-- > 0) {
      bool complete = true;
      for (std::size_t oi = 0; complete && oi < levels[i].orbit.size(); ++oi) {
        for (std::size_t si = 0; complete && si < levels[i].gens.size(); ++si) {
          Perm sg = levels[i].transversal[oi] * levels[i].gens[si];
          uint16_t img = sg[levels[i].base];
          sg = sg * levels[i].transversal[levels[i].pos[img]].inverse();
          auto [residue, j] = strip(std::move(sg), i + 1);
          if (!residue.is_identity()) {
            insert_residue(std::move(residue), i + 1, j);
            // restart verification at the deepest affected level
            i = std::min(j, levels.size() - 1) + 1;
            complete = false;
          }
        }
      }
    }
  }

  void add_strong_generator(const Perm& g) {
    if (g.is_identity()) return;
    // g belongs to every level whose earlier base points it fixes
    std::size_t lvl = 0;
    while (true) {
      if (lvl == levels.size()) {
        uint16_t bp = 0;
        while (g[bp] == bp) ++bp;
        levels.push_back({});
        levels.back().base = bp;
      }
      ChainLevel& L = levels[lvl];
      L.gens.push_back(g);
      L.rebuild(degree);
      if (g[L.base] != L.base) break;
      ++lvl;
    }
  }

  void insert_residue(Perm h, std::size_t from, std::size_t to) {
    // h fixes base points of levels < from is false in general; h fixes levels < to
    // by construction of strip; it must be added to levels from..to.
    if (to == levels.size()) {
      uint16_t bp = 0;
      while (h[bp] == bp) ++bp;
      levels.push_back({});
      levels.back().base = bp;
    }
    for (std::size_t l = from; l <= to && l < levels.size(); ++l) {
      levels[l].gens.push_back(h);
      levels[l].rebuild(degree);
    }
  }

  uint64_t order() const {
    uint64_t o = 1;
    for (const ChainLevel& L : levels) o *= L.orbit.size();
    return o;
  }

  void ensure_elements() const {
    std::lock_guard<std::mutex> lock(lazy_mutex);
    if (!elems.empty()) return;
    elems.push_back(Perm(degree));
    elem_index.emplace(elems[0], 0);
    bfs_parent.push_back(0);
    bfs_gen.push_back(-1);
    for (std::size_t i = 0; i < elems.size(); ++i) {
      for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        Perm p = elems[i] * gens[gi];
        auto it = elem_index.find(p);
        if (it == elem_index.end()) {
          uint32_t idx = static_cast<uint32_t>(elems.size());
          elem_index.emplace(p, idx);
          elems.push_back(std::move(p));
          bfs_parent.push_back(static_cast<uint32_t>(i));
          bfs_gen.push_back(static_cast<int32_t>(gi));
        }
      }
    }
    if (elems.size() != order())
      throw internal_error("element table size disagrees with stabilizer chain order");
    inv_map.assign(elems.size(), 0);
    for (uint32_t e = 0; e < elems.size(); ++e) inv_map[e] = elem_index.at(elems[e].inverse());
  }
};

PermGroup PermGroup::from_generators(std::vector<Perm> gens, std::optional<std::size_t> degree) {
  std::vector<Perm> kept;
  for (auto& g : gens) {
    if (std::find(kept.begin(), kept.end(), g) == kept.end()) kept.push_back(std::move(g));
  }
  std::size_t deg;
  if (!kept.empty()) {
    deg = kept[0].degree();
    for (const Perm& g : kept)
      if (g.degree() != deg) throw domain_error("from_generators: generator degree mismatch");
    if (degree && *degree != deg) throw domain_error("from_generators: degree disagrees with generators");
  } else {
    if (!degree) throw domain_error("from_generators: degree required for empty generating set");
    deg = *degree;
  }
  if (deg > 65535) throw resource_error("from_generators: degree exceeds 65535");
  PermGroup g;
  g.body_ = std::make_shared<Body>();
  g.body_->degree = deg;
  g.body_->gens = std::move(kept);
  g.body_->schreier_sims();
  return g;
}

PermGroup::Body& PermGroup::body() const {
  if (!body_) throw internal_error("PermGroup: null handle");
  return *body_;
}

std::size_t PermGroup::degree() const { return body().degree; }
uint64_t PermGroup::order() const { return body().order(); }
const std::vector<Perm>& PermGroup::generators() const { return body().gens; }

bool PermGroup::contains(const Perm& p) const {
  if (p.degree() != degree()) return false;
  auto [res, lvl] = body().strip(p, 0);
  (void)lvl;
  return res.is_identity();
}

std::vector<uint16_t> PermGroup::base_points() const {
  std::vector<uint16_t> out;
  for (const auto& L : body().levels) out.push_back(L.base);
  return out;
}

std::vector<std::size_t> PermGroup::fundamental_orbit_lengths() const {
  std::vector<std::size_t> out;
  for (const auto& L : body().levels) out.push_back(L.orbit.size());
  return out;
}

void PermGroup::ensure_elements() const { body().ensure_elements(); }

const Perm& PermGroup::element(uint32_t idx) const {
  ensure_elements();
  return body().elems[idx];
}

std::optional<uint32_t> PermGroup::index_of(const Perm& p) const {
  ensure_elements();
  auto it = body().elem_index.find(p);
  if (it == body().elem_index.end()) return {};
  return it->second;
}

uint32_t PermGroup::index_of_checked(const Perm& p) const {
  auto idx = index_of(p);
  if (!idx) throw domain_error("element does not belong to the group");
  return *idx;
}

uint32_t PermGroup::mul(uint32_t a, uint32_t b) const {
  ensure_elements();
  Body& B = body();
  return B.elem_index.at(B.elems[a] * B.elems[b]);
}

uint32_t PermGroup::inv(uint32_t a) const {
  ensure_elements();
  return body().inv_map[a];
}

uint32_t PermGroup::conj(uint32_t e, uint32_t g) const {
  ensure_elements();
  Body& B = body();
  return B.elem_index.at(B.elems[e].conjugated_by(B.elems[g]));
}

uint64_t PermGroup::element_order(uint32_t e) const {
  ensure_elements();
  return body().elems[e].order();
}

uint32_t PermGroup::bfs_parent(uint32_t e) const {
  ensure_elements();
  return body().bfs_parent[e];
}

int PermGroup::bfs_gen(uint32_t e) const {
  ensure_elements();
  return body().bfs_gen[e];
}

const std::vector<uint32_t>& PermGroup::conj_map_for_gen(std::size_t gi) const {
  ensure_elements();
  Body& B = body();
  std::lock_guard<std::mutex> lock(B.lazy_mutex);
  if (B.conj_maps.empty()) B.conj_maps.resize(B.gens.size());
  if (B.conj_maps[gi].empty()) {
    const Perm& g = B.gens[gi];
    const Perm gi_inv = g.inverse();
    std::vector<uint32_t> map(B.elems.size());
    for (uint32_t e = 0; e < B.elems.size(); ++e)
      map[e] = B.elem_index.at(gi_inv * B.elems[e] * g);
    B.conj_maps[gi] = std::move(map);
  }
  return B.conj_maps[gi];
}

// ---------------------------------------------------------------------------
// Subgroup

Subgroup Subgroup::generated(const PermGroup& parent, const std::vector<Perm>& gens) {
  std::vector<uint32_t> idx;
  for (const Perm& g : gens) idx.push_back(parent.index_of_checked(g));
  return generated_indices(parent, std::move(idx));
}

Subgroup Subgroup::generated_indices(const PermGroup& parent, std::vector<uint32_t> gen_idx) {
  // BFS closure in index space.
  parent.ensure_elements();
  std::unordered_set<uint32_t> seen{0};
  std::vector<uint32_t> members{0};
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (uint32_t g : gen_idx) {
      uint32_t p = parent.mul(members[i], g);
      if (seen.insert(p).second) members.push_back(p);
    }
  }
  std::sort(members.begin(), members.end());
  Subgroup s;
  s.parent_ = parent;
  s.elems_ = std::move(members);
  std::sort(gen_idx.begin(), gen_idx.end());
  gen_idx.erase(std::unique(gen_idx.begin(), gen_idx.end()), gen_idx.end());
  if (!gen_idx.empty() && gen_idx[0] == 0 && gen_idx.size() > 1)
    gen_idx.erase(gen_idx.begin()); // drop identity unless it is the only generator
  s.gen_idx_ = std::move(gen_idx);
  return s;
}

Subgroup Subgroup::from_elements(const PermGroup& parent, std::vector<uint32_t> elems,
                                 std::vector<uint32_t> gen_idx) {
  Subgroup s;
  s.parent_ = parent;
  s.elems_ = std::move(elems);
  s.gen_idx_ = std::move(gen_idx);
  return s;
}

Subgroup Subgroup::full(const PermGroup& parent) {
  parent.ensure_elements();
  std::vector<uint32_t> all(parent.order());
  for (uint32_t i = 0; i < all.size(); ++i) all[i] = i;
  std::vector<uint32_t> gens;
  for (const Perm& g : parent.generators()) gens.push_back(parent.index_of_checked(g));
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  if (gens.empty()) gens.push_back(0);
  return from_elements(parent, std::move(all), std::move(gens));
}

Subgroup Subgroup::trivial(const PermGroup& parent) {
  return from_elements(parent, {0}, {0});
}

bool Subgroup::contains_index(uint32_t e) const {
  return std::binary_search(elems_.begin(), elems_.end(), e);
}

bool Subgroup::contains(const Perm& p) const {
  auto idx = parent_.index_of(p);
  return idx && contains_index(*idx);
}

bool Subgroup::contains_subgroup(const Subgroup& other) const {
  if (!parent_.same_body(other.parent_)) throw domain_error("subgroup parents differ");
  return std::includes(elems_.begin(), elems_.end(), other.elems_.begin(), other.elems_.end());
}

const std::vector<uint32_t>& Subgroup::generator_indices() const {
  if (gen_idx_.empty()) gen_idx_ = reduce_generator_indices(parent_, elems_);
  return gen_idx_;
}

std::vector<Perm> Subgroup::generators() const {
  std::vector<Perm> out;
  for (uint32_t gi : generator_indices()) out.push_back(parent_.element(gi));
  return out;
}

Subgroup Subgroup::conjugated_by(const Perm& g) const {
  return conjugated_by_index(parent_.index_of_checked(g));
}

Subgroup Subgroup::conjugated_by_index(uint32_t g) const {
  std::vector<uint32_t> elems;
  elems.reserve(elems_.size());
  for (uint32_t e : elems_) elems.push_back(parent_.conj(e, g));
  std::sort(elems.begin(), elems.end());
  std::vector<uint32_t> gens;
  for (uint32_t gi : generator_indices()) gens.push_back(parent_.conj(gi, g));
  std::sort(gens.begin(), gens.end());
  return from_elements(parent_, std::move(elems), std::move(gens));
}

bool Subgroup::operator==(const Subgroup& rhs) const {
  return parent_.same_body(rhs.parent_) && elems_ == rhs.elems_;
}

bool Subgroup::operator<(const Subgroup& rhs) const {
  if (elems_.size() != rhs.elems_.size()) return elems_.size() < rhs.elems_.size();
  return elems_ < rhs.elems_;
}

bool Subgroup::is_full() const { return order() == parent_.order(); }

bool Subgroup::is_abelian() const {
  auto gens = generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (!gens[i].commutes_with(gens[j])) return false;
  return true;
}

uint64_t Subgroup::exponent() const {
  uint64_t e = 1;
  for (uint32_t idx : elems_) e = lcm_u64(e, parent_.element_order(idx));
  return e;
}

std::size_t Subgroup::count_involutions() const {
  std::size_t n = 0;
  for (uint32_t idx : elems_)
    if (parent_.element_order(idx) == 2) ++n;
  return n;
}

PermGroup Subgroup::as_group() const {
  std::vector<Perm> gens = generators();
  return PermGroup::from_generators(std::move(gens), parent_.degree());
}

std::string Subgroup::describe_generators() const {
  std::ostringstream os;
  auto gens = generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i) os << ", ";
    os << gens[i].to_cycle_string();
  }
  return os.str();
}

std::vector<uint32_t> reduce_generator_indices(const PermGroup& parent,
                                               const std::vector<uint32_t>& elems) {
  if (elems.size() == 1) return {elems[0]};
  // Whole group: reuse the parent's generators.
  if (elems.size() == parent.order()) {
    std::vector<uint32_t> gens;
    for (const Perm& g : parent.generators()) gens.push_back(parent.index_of_checked(g));
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    if (gens.empty()) gens.push_back(0);
    return gens;
  }
  std::vector<uint32_t> gens;
  auto closure_of = [&](const std::vector<uint32_t>& gs) {
    // index-space BFS closure
    std::unordered_set<uint32_t> seen{0};
    std::vector<uint32_t> members{0};
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (uint32_t g : gs) {
        uint32_t p = parent.mul(members[i], g);
        if (seen.insert(p).second) members.push_back(p);
      }
    }
    std::sort(members.begin(), members.end());
    return members;
  };
  std::vector<uint32_t> closure{0};
  for (uint32_t e : elems) {
    if (closure.size() == elems.size()) break;
    if (std::binary_search(closure.begin(), closure.end(), e)) continue;
    gens.push_back(e);
    closure = closure_of(gens);
  }
  if (gens.empty()) gens.push_back(0);
  return gens;
}

} // namespace wrb

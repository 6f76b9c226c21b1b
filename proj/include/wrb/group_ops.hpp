#ifndef WRB_GROUP_OPS_H
#define WRB_GROUP_OPS_H

#include <mutex>
#include <optional>
#include <vector>

#include "wrb/perm_group.hpp"

namespace wrb {

uint64_t two_part(uint64_t n);
uint64_t odd_part(uint64_t n);
bool is_power_of_two(uint64_t n);

// All "_in" operations scan the ambient subgroup's elements; the result is a
// subgroup of the same parent group.
Subgroup centralizer_of_element_in(const Subgroup& ambient, uint32_t e);
Subgroup centralizer_in(const Subgroup& ambient, const Subgroup& target);
Subgroup center_in(const Subgroup& s);
Subgroup normalizer_in(const Subgroup& ambient, const Subgroup& target);
bool is_normal_in(const Subgroup& ambient, const Subgroup& target);

Subgroup intersect(const Subgroup& a, const Subgroup& b);
Subgroup join(const Subgroup& a, const Subgroup& b);

// Smallest subgroup of `ambient` containing the seeds and closed under
// conjugation by ambient.
Subgroup normal_closure_in(const Subgroup& ambient, std::vector<uint32_t> seed_idx);
Subgroup derived_subgroup(const Subgroup& s);
bool is_solvable(const Subgroup& s);

// Every subgroup of s, sorted by (order, element list). Solvable groups are
// enumerated by prime-index extensions inside normalizers; otherwise the
// slower single-element extension closure is used.
std::vector<Subgroup> all_subgroups(const Subgroup& s);

// One representative per conjugacy class of subgroups of g: the least member
// of each class in (order, element list) order.
std::vector<Subgroup> subgroups_up_to_conjugacy(const PermGroup& g);

// All distinct ambient-conjugates of s, sorted by key.
std::vector<Subgroup> conjugates_in(const Subgroup& ambient, const Subgroup& s);

// The same subgroup expressed inside another parent group acting on the same
// points. Throws domain_error if a generator of s is not an element of `to`.
Subgroup rebase_subgroup(const PermGroup& to, const Subgroup& s);

// First g in ambient (by element index) with a^g == b, if any.
std::optional<uint32_t> conjugating_element_in(const Subgroup& ambient, const Subgroup& a,
                                               const Subgroup& b);

// Sylow 2-subgroup by repeated index-2 extension inside the normalizer.
// Deterministic: the scan order fixes the representative.
Subgroup sylow_2_in(const Subgroup& s);
Subgroup sylow_2(const PermGroup& g);

// Largest normal odd-order subgroup.
Subgroup odd_core_in(const Subgroup& s);
Subgroup odd_core(const PermGroup& g);

// Product acting on the disjoint union of the two point sets; generators of a
// come first, then generators of b.
PermGroup direct_product(const PermGroup& a, const PermGroup& b);

// Homomorphism given by images of from.generators(), evaluated through the BFS
// word tree of `from`. validate() checks the defining condition
// img(e * g) == img(e) * img(g) for every element e and generator g, which is
// equivalent to being a homomorphism.
class GroupHom {
public:
  GroupHom() = default;
  GroupHom(PermGroup from, PermGroup to, std::vector<Perm> gen_images);
  static GroupHom identity(const PermGroup& g);

  const PermGroup& from() const { return from_; }
  const PermGroup& to() const { return to_; }
  const std::vector<Perm>& gen_images() const { return gen_images_; }

  Perm apply_index(uint32_t idx) const;
  Perm apply(const Perm& x) const;
  bool validate() const;

private:
  PermGroup from_, to_;
  std::vector<Perm> gen_images_;
  mutable std::vector<Perm> memo_;
  mutable std::shared_ptr<std::mutex> memo_mutex_;
  void ensure_memo() const;
};

// {(u, phi(u)) : u in sub} inside prod == direct_product(phi.from() side,
// phi.to() side). sub's parent must share degree with phi.from().
Subgroup diagonal_subgroup(const PermGroup& prod, const Subgroup& sub, const GroupHom& phi);

// G/N acting on the right cosets of N (a regular action). Coset points are
// numbered by their least parent element index; point 0 is N itself.
struct QuotientGroup {
  PermGroup group;                   // the quotient as a permutation group
  PermGroup parent;
  Subgroup kernel;
  std::vector<uint32_t> coset_of;    // parent element index -> coset point
  std::vector<uint32_t> rep_of;      // coset point -> least parent element index
  std::vector<Perm> gen_images;      // aligned with parent.generators()

  Perm image_of(uint32_t parent_elem) const;
  Perm image_of_perm(const Perm& g) const;
  uint32_t preimage_rep(const Perm& quotient_elem) const;  // parent element index
  Subgroup preimage(const Subgroup& s) const;              // s <= group
  Subgroup image_subgroup(const Subgroup& s) const;        // s <= parent group
};

QuotientGroup quotient(const PermGroup& g, const Subgroup& n);
// Quotient of ambient.as_group() by n (rebased); both must share a parent.
QuotientGroup quotient_in(const Subgroup& ambient, const Subgroup& n);

} // namespace wrb

#endif

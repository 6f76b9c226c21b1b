#ifndef WRB_PERM_GROUP_H
#define WRB_PERM_GROUP_H

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "wrb/perm.hpp"

namespace wrb {

// Finite permutation group with a deterministic stabilizer chain for membership
// and order, plus a lazily built full element table (desk scale) used by the
// subgroup algorithms. Value-semantic handle; copies share one immutable body.
class PermGroup {
public:
  PermGroup() = default;

  // Generators may contain duplicates or identities; they are kept as given
  // (minus exact duplicates) to preserve caller-visible generator indexing.
  // degree is required when gens is empty.
  static PermGroup from_generators(std::vector<Perm> gens,
                                   std::optional<std::size_t> degree = {});

  bool valid() const { return body_ != nullptr; }
  std::size_t degree() const;
  uint64_t order() const;
  const std::vector<Perm>& generators() const;
  bool contains(const Perm& p) const;

  // Stabilizer chain inspection.
  std::vector<uint16_t> base_points() const;
  std::vector<std::size_t> fundamental_orbit_lengths() const;

  // Element table. Index 0 is the identity; ordering is the deterministic BFS
  // discovery order over the generator list.
  const Perm& element(uint32_t idx) const;
  std::optional<uint32_t> index_of(const Perm& p) const;
  uint32_t index_of_checked(const Perm& p) const;   // throws domain_error if absent
  uint32_t mul(uint32_t a, uint32_t b) const;
  uint32_t inv(uint32_t a) const;
  uint32_t conj(uint32_t e, uint32_t g) const;      // index of g^-1 e g
  uint64_t element_order(uint32_t e) const;

  // BFS word tree: element(e) == element(parent(e)) * generators()[gen_of(e)].
  uint32_t bfs_parent(uint32_t e) const;
  int bfs_gen(uint32_t e) const;                    // -1 for the identity

  // index map e -> index(g^-1 e g) for generator gi (cached).
  const std::vector<uint32_t>& conj_map_for_gen(std::size_t gi) const;

  bool same_body(const PermGroup& other) const { return body_ == other.body_; }

  // Force the element table (and hash) to exist; useful before parallel phases.
  void ensure_elements() const;

private:
  struct Body;
  std::shared_ptr<Body> body_;
  Body& body() const;
};

// Subgroup of a PermGroup, stored as the sorted list of parent element indices
// together with a small generating set. The index list is the canonical key.
class Subgroup {
public:
  Subgroup() = default;

  static Subgroup generated(const PermGroup& parent, const std::vector<Perm>& gens);
  static Subgroup generated_indices(const PermGroup& parent, std::vector<uint32_t> gen_idx);
  // elems must be sorted, unique and closed; gen_idx may be empty (then reduced
  // generators are computed on demand).
  static Subgroup from_elements(const PermGroup& parent, std::vector<uint32_t> elems,
                                std::vector<uint32_t> gen_idx = {});
  static Subgroup full(const PermGroup& parent);
  static Subgroup trivial(const PermGroup& parent);

  bool valid() const { return parent_.valid(); }
  const PermGroup& parent() const { return parent_; }
  uint64_t order() const { return elems_.size(); }
  const std::vector<uint32_t>& elements() const { return elems_; }
  bool contains_index(uint32_t e) const;
  bool contains(const Perm& p) const;
  bool contains_subgroup(const Subgroup& other) const;

  const std::vector<uint32_t>& generator_indices() const;
  std::vector<Perm> generators() const;

  Subgroup conjugated_by(const Perm& g) const;
  Subgroup conjugated_by_index(uint32_t g) const;

  bool operator==(const Subgroup& rhs) const;
  bool operator<(const Subgroup& rhs) const;         // by (order, element list)
  const std::vector<uint32_t>& key() const { return elems_; }

  bool is_full() const;
  bool is_abelian() const;
  uint64_t exponent() const;
  std::size_t count_involutions() const;

  // Standalone group on the same points generated by this subgroup's generators.
  PermGroup as_group() const;

  std::string describe_generators() const;           // cycle strings, comma separated

private:
  PermGroup parent_;
  std::vector<uint32_t> elems_;
  mutable std::vector<uint32_t> gen_idx_;
};

struct SubgroupKeyHash {
  std::size_t operator()(const std::vector<uint32_t>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (uint32_t x : v) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return h;
  }
};

// Greedy deterministic reduction of a generating set: scan candidates in index
// order, keep those that enlarge the generated subgroup.
std::vector<uint32_t> reduce_generator_indices(const PermGroup& parent,
                                               const std::vector<uint32_t>& elems);

} // namespace wrb

#endif

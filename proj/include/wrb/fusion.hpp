#ifndef WRB_FUSION_H
#define WRB_FUSION_H

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "wrb/group_ops.hpp"
#include "wrb/perm_group.hpp"

namespace wrb {

// Shape of the outer automizer Out_F(Q) = Aut_F(Q)/Inn(Q).
enum class OutShape { Trivial, C2, S3, Other2Group, Other };

std::string to_string(OutShape s);

// The conjugation maps Q -> R of one fusion system. A map is the restriction
// of x -> g^-1 x g to Q for an ambient g with Q^g <= R; two elements induce
// the same map iff they lie in the same coset C_G(Q)*g. `reps` holds the
// least element index of each surviving coset, ascending; `all` holds every
// element of those cosets, sorted, for fast membership tests.
struct HomSet {
  std::vector<uint32_t> reps;
  std::vector<uint32_t> all;

  uint64_t count() const { return reps.size(); }
  bool contains(uint32_t g) const;
};

// Optional predicate deciding which conjugation maps survive in the hom-set
// cache. Receives the ambient group, domain, codomain and the canonical coset
// representative of the map. An empty function keeps everything; tests use
// non-trivial filters to build deliberately damaged systems as negative
// controls for the saturation axioms.
using HomFilter =
    std::function<bool(const PermGroup&, const Subgroup& q, const Subgroup& r, uint32_t rep)>;

struct AutomizerData {
  Subgroup q;
  PermGroup aut_f;        // automizer acting on the sorted element list of q
  Subgroup inn;           // image of q's own conjugation action, inside aut_f
  uint64_t out_f_order = 0;
  OutShape out_f_shape = OutShape::Trivial;
};

// The fusion system F_P(G): subgroups of P together with the conjugation maps
// G induces between them. Conjugacy classes are computed eagerly at build
// time; hom sets are computed on demand and memoized. The memo is guarded by
// a mutex, so concurrent readers are safe; all queries are logically pure.
class FusionSystem {
public:
  FusionSystem(FusionSystem&&) noexcept;
  FusionSystem& operator=(FusionSystem&&) noexcept;
  ~FusionSystem();

  const PermGroup& group() const { return g_; }
  const Subgroup& g_full() const { return g_full_; }
  const Subgroup& p() const { return p_; }

  // All subgroups of p, ascending by (order, element list).
  const std::vector<Subgroup>& subgroups() const { return subs_; }
  // Conjugacy classes of subgroups of p under the system, each sorted by key,
  // classes ordered by their least member; class_reps()[i] == classes()[i].front().
  const std::vector<std::vector<Subgroup>>& classes() const { return classes_; }
  const std::vector<Subgroup>& class_reps() const { return reps_; }
  std::size_t class_index_of(const Subgroup& q) const;
  const std::vector<Subgroup>& f_class_of(const Subgroup& q) const;

  // Maps q -> r; both must live in group()'s body. Memoized.
  HomSet homs(const Subgroup& q, const Subgroup& r) const;
  // True iff the map induced by element g survives in homs(q, r).
  bool hom_contains(const Subgroup& q, const Subgroup& r, uint32_t g) const;

  Subgroup normalizer_in_p(const Subgroup& q) const;    // N_P(Q), memoized
  Subgroup centralizer_in_g(const Subgroup& q) const;   // C_G(Q), memoized
  Subgroup centralizer_in_p(const Subgroup& q) const;   // C_P(Q), memoized

private:
  PermGroup g_;
  Subgroup g_full_;
  Subgroup p_;
  HomFilter filter_;

  std::vector<Subgroup> subs_;
  std::vector<std::vector<Subgroup>> classes_;
  std::vector<Subgroup> reps_;
  std::map<std::vector<uint32_t>, std::size_t> class_index_;

  struct Cache;
  std::unique_ptr<Cache> cache_;

  FusionSystem();
  friend FusionSystem build_fusion(const PermGroup& g, const Subgroup& p, HomFilter filter);
  friend bool is_saturated(const FusionSystem& f);
};

// F_P(G). P must be a 2-subgroup of G (domain error otherwise); it need not
// be Sylow. With G == P this is the inner fusion system.
FusionSystem build_fusion(const PermGroup& g, const Subgroup& p, HomFilter filter = {});

// |N_P(Q)| maximal among the conjugates of Q in the system.
bool is_fully_normalized(const FusionSystem& f, const Subgroup& q);

// Saturation axioms, checked exhaustively: every conjugacy class must contain
// a fully normalized member that is fully automized (the P-conjugation maps
// form a Sylow 2-subgroup of the cached map set Q -> Q) and receptive (every
// cached isomorphism onto it extends over its N_phi inside P). Supported for
// |P| <= 2^8; larger P raises a resource error. The verdict is memoized.
bool is_saturated(const FusionSystem& f);

// Automizer of q built from the cached maps q -> q. On an unfiltered system
// aut_f is (isomorphic to) N_G(Q)/C_G(Q).
AutomizerData automizer(const FusionSystem& f, const Subgroup& q);

// All subgroups of p that are centric (every conjugate contains its
// centralizer in p), fully normalized, and whose outer automizer has a
// strongly 2-embedded subgroup. At this scale that means shape S3; 2-group
// shapes never qualify, and any other shape raises a domain error so that
// unexpected inputs surface instead of being misclassified. Requires a
// saturated system (precondition error otherwise).
std::vector<Subgroup> essential_subgroups(const FusionSystem& f);

// True iff the two systems induce the same conjugation maps between subgroups
// of the shared p. Both systems must act on the same points with identical p
// element sets (domain error otherwise). Comparison runs over the map sets
// Q -> P for every subgroup Q of p, which determines all hom sets, since a
// map Q -> R is exactly a map Q -> P whose image lies in R.
bool fusion_equal(const FusionSystem& f1, const FusionSystem& f2);

} // namespace wrb

#endif

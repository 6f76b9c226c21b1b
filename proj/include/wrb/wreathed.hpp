#ifndef WRB_WREATHED_H
#define WRB_WREATHED_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wrb/group_ops.hpp"
#include "wrb/perm_group.hpp"

namespace wrb {

// P = C_{2^n} wr C_2 realized on 2^{n+1} points: two blocks carrying the
// regular C_{2^n} action, swapped by the involution t. a rotates the first
// block, b = a^t the second; the base subgroup <a> x <b> is abelian of index
// 2 and the center is <ab>. All named subgroups are verified on construction.
struct WreathedData {
  int n = 0;
  PermGroup P;
  Perm a, b, t;
  Subgroup P0;   // base subgroup <a> x <b>
  Subgroup Z;    // center <ab>, cyclic of order 2^n
  Subgroup P1;   // fixed central-product representative <w, (ab)^{2^{n-2}} t> Z
                 // where w = (ab^{-1})^{2^{n-2}}; Q_8 * C_{2^n} of order 2^{n+2}

  uint32_t a_idx = 0, b_idx = 0, t_idx = 0;  // element indices in P

  std::size_t block() const { return std::size_t{1} << n; }  // 2^n
};

// Structural class of a subgroup of P. Tags carrying a layer parameter m:
//   HomocyclicInBase(m): Q = <a^{2^m}> x <b^{2^m}>, 1 <= m <= n-1
//   Q8CentralProduct(m): Q isomorphic to Q_8 * C_{2^m}, 1 <= m <= n-1
//                        (m = 1 is plain Q_8; m = n is tagged P1Class instead)
enum class WreathedTag {
  Trivial,
  CyclicInBase,
  CyclicOutsideBase,
  HomocyclicInBase,
  KleinOutsideBase,
  NonHomocyclicAbelian,
  NonAbelianOther,
  Q8CentralProduct,
  Base,
  P1Class,
  FullP,
};

struct WreathedClass {
  WreathedTag tag = WreathedTag::Trivial;
  int m = 0;                              // layer parameter where the tag has one
  std::optional<uint32_t> witness;        // x in P (element index) with Q^x == canonical rep

  bool operator==(const WreathedClass& rhs) const {
    return tag == rhs.tag && m == rhs.m;  // witness is not part of the class identity
  }
};

std::string to_string(WreathedTag tag);
std::string describe(const WreathedClass& cls);

// Throws domain_error for n < 2; verifies the defining relations, |P| =
// 2^{2n+1}, Z = center of P of order 2^n, [P:P0] = 2 and |P1| = 2^{n+2}
// before returning.
WreathedData build_wreathed(int n);

// Assigns exactly one tag; conjugation-invariant. The witness, when present,
// conjugates q onto canonical_representative(w, cls). Throws domain_error if
// q does not live in w.P.
WreathedClass classify_subgroup(const WreathedData& w, const Subgroup& q);

// Canonical representative for the tags that fix one (Trivial, Base, FullP,
// P1Class, HomocyclicInBase, KleinOutsideBase, Q8CentralProduct); domain_error
// for the tags without a canonical form.
Subgroup canonical_representative(const WreathedData& w, const WreathedClass& cls);

// All subgroups of P isomorphic to Q_8, each equal to
// <(ab^{-1})^{2^{n-2}}, a^i b^j t> with i + j = 2^{n-1} (mod 2^n),
// sorted by key. Any two are conjugate by an explicit a^{j2} b^{j1} t.
std::vector<Subgroup> q8_subgroups(const WreathedData& w);

// <a^{2^m}> x <b^{2^m}> of order 2^{2(n-m)}; requires 0 <= m <= n-1
// (domain_error otherwise). m = 0 gives the base subgroup itself.
Subgroup canonical_homocyclic(const WreathedData& w, int m);

// Y0 * <(ab)^{2^{n-m}}> where Y0 = <(ab^{-1})^{2^{n-2}}, (ab)^{2^{n-2}} t> is
// the canonical Q_8; isomorphic to Q_8 * C_{2^m}, order 2^{m+2}. Requires
// 1 <= m <= n (domain_error otherwise); m = n gives P1 itself.
Subgroup canonical_q8_product(const WreathedData& w, int m);

// Canonical representatives of every class that can carry a non-2-group
// automizer in a saturated fusion system on P: the homocyclic towers
// <a^{2^m}> x <b^{2^m}> (0 <= m <= n-1) and the central products
// Q_8 * C_{2^m} (1 <= m <= n). Sorted by key.
std::vector<Subgroup> odd_automizer_candidates(const WreathedData& w);

// Every element of P is a^i b^j or a^i b^j t for unique 0 <= i, j < 2^n.
struct WreathedCoords {
  int i = 0;
  int j = 0;
  bool outside = false;  // true when the t factor is present
};

WreathedCoords wreathed_coords(const WreathedData& w, const Perm& p);
Perm wreathed_word(const WreathedData& w, int i, int j, bool outside);

// Identification of a wreathed Sylow subgroup S of an arbitrary ambient group
// with the standard model W: deterministic images of a, b, t are located
// inside S (abelian index-2 base first, then the least suitable generators)
// and both directions are kept as validated homomorphisms.
struct WreathedEmbedding {
  Subgroup sylow;              // S, as a subgroup of the ambient group
  GroupHom model_to_ambient;   // W.P -> ambient, image S
  GroupHom ambient_to_model;   // group on S's points -> W.P
};

// Throws domain_error when S is not isomorphic to C_{2^n} wr C_2 for W's n.
WreathedEmbedding find_wreathed_embedding(const WreathedData& w, const Subgroup& sylow);

// Transport of subgroups along the embedding. q must lie inside emb.sylow
// (resp. inside w.P); domain_error otherwise.
Subgroup pull_to_model(const WreathedData& w, const WreathedEmbedding& emb, const Subgroup& q);
Subgroup push_from_model(const WreathedData& w, const WreathedEmbedding& emb, const Subgroup& q);

} // namespace wrb

#endif

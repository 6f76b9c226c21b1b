#ifndef WRB_MODREP_H
#define WRB_MODREP_H

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wrb/gf2_matrix.hpp"
#include "wrb/perm_group.hpp"

namespace wrb {

// Finite-dimensional GF(2)-representation of a permutation group. Module
// vectors are row vectors; a generator g acts on the right through action[i]
// (i = position of g in group.generators()), so g -> A_g is a homomorphism
// under the left-to-right product convention used everywhere else.
struct GModule {
  PermGroup group;
  uint32_t dim = 0;
  std::vector<GF2Matrix> action;           // aligned with group.generators()
  std::vector<std::string> basis_labels;   // optional, set for permutation bases
  std::vector<Perm> point_action;          // non-empty iff permutation module:
                                           // generator images on basis points

  bool is_permutation_module() const { return !point_action.empty(); }
};

// Unital subalgebra of rep_dim x rep_dim GF(2) matrices, stored as a linear
// basis plus the multiplication table in coordinates. `one` is the algebra
// identity (the ambient identity matrix for endomorphism algebras of modules,
// the corner idempotent for corner algebras of summands).
struct GF2Algebra {
  uint32_t dim = 0;
  uint32_t rep_dim = 0;
  std::vector<GF2Matrix> basis;
  GF2Matrix structure;   // (dim*dim) x dim; row i*dim+j = coords of basis[i]*basis[j]
  GF2Matrix one;         // 1 x dim, coordinates of the identity
  GF2Matrix flat;        // dim x rep_dim^2; row i = basis[i] flattened row-major
};

// Direct summand of `parent` cut out by an idempotent of End(parent).
struct ModuleSummand {
  GModule parent;
  GF2Matrix idempotent;    // E with E^2 = E, commuting with every generator action
  GF2Matrix image_basis;   // rows form a basis of the image row space of E
  uint32_t dim = 0;        // = rank(E)
};

// ---- module construction ----------------------------------------------------

// k[G/H]: basis indexed by the cosets of H in G (numbered by least contained
// element index), generators acting by right multiplication. basis_labels hold
// the canonical (least) coset representatives in cycle notation.
// Throws resource_error when [G:H] exceeds config::max_module_dim().
GModule perm_module(const PermGroup& g, const Subgroup& h);

// Matrix of an arbitrary element of m.group (by element index), computed along
// the BFS word tree.
GF2Matrix action_of(const GModule& m, uint32_t element_index);

// Same underlying space, action restricted to generators of h. h's generating
// permutations must be elements of m.group; the result's group is h.as_group().
GModule restrict_module(const GModule& m, const Subgroup& h);

// Restriction of a summand: the same idempotent cuts a summand out of the
// restricted parent (it commutes with every element, in particular with h).
ModuleSummand restrict_module(const ModuleSummand& s, const Subgroup& h);

// The summand as a standalone module on its image basis.
GModule as_module(const ModuleSummand& s);

// ---- endomorphism algebras --------------------------------------------------

// End_{kG}(M): all matrices commuting with every generator action. Permutation
// modules use the orbit structure of the group acting on basis-index pairs
// (the solution space of the commutation equations for permutation matrices);
// other modules solve the stacked Sylvester system densely. For permutation
// modules the dimension is cross-checked against the point-stabilizer orbit
// count and a mismatch raises internal_error.
GF2Algebra endomorphism_algebra(const GModule& m);

// Corner algebra E End(parent) E acting on the summand's image basis.
GF2Algebra endomorphism_algebra(const ModuleSummand& s);

// Coordinate helpers (x, y are 1 x dim coordinate rows).
GF2Matrix alg_mul(const GF2Algebra& a, const GF2Matrix& x, const GF2Matrix& y);
GF2Matrix alg_matrix(const GF2Algebra& a, const GF2Matrix& coords);
// Express a rep_dim x rep_dim matrix in the basis; domain_error if outside.
GF2Matrix alg_express(const GF2Algebra& a, const GF2Matrix& m);

// Build an algebra from an explicit matrix basis and its identity element.
// Throws internal_error if the matrices are linearly dependent, the span is
// not multiplicatively closed, or `unit` lies outside the span.
GF2Algebra algebra_from_basis(std::vector<GF2Matrix> basis, const GF2Matrix& unit);

// ---- structure theory -------------------------------------------------------

// Jacobson radical as a coordinate subspace: rows are coordinates of a basis
// of J(A). Characteristic-2 computation by iterated kernels of the 2-power
// trace forms f_i(x, y) = c_{2^i}(xy), the 2^i-th characteristic polynomial
// coefficient of xy on the regular representation (plain traces degenerate in
// even characteristic; the characteristic coefficients are their 2-power
// replacements and are linear on each successive kernel). The result is
// checked by nilpotency, the two-sided ideal property, and re-running on A/J
// (which must have zero radical).
GF2Matrix radical(const GF2Algebra& a);

// (dim(A/J) == 1, dim(A/J)). The boolean says End is local with trivial
// residue field, which certifies the module is indecomposable and stays so
// under field extension; a residue dimension > 1 with a division residue still
// means indecomposable over GF(2) but is flagged by callers as indeterminate
// over larger fields.
std::pair<bool, uint32_t> is_local(const GF2Algebra& a);

// Complete orthogonal set of primitive idempotents of End(M) applied to M.
// Simple factors of End/J are processed in increasing dimension (ties broken
// by lexicographic coordinate order of the central idempotent), and the
// summand list follows that order. Throws internal_error if idempotent
// lifting fails to stabilize within dim(End) + 2 squarings.
std::vector<ModuleSummand> decompose(const GModule& m);
std::vector<ModuleSummand> decompose(const ModuleSummand& s);

// ---- Scott module, Brauer construction, vertex ------------------------------

// The summand of k[G/H] whose image contains the all-ones vector; exactly one
// summand contains it (checked, internal_error otherwise). The summand also
// has a trivial quotient: the coordinate-sum functional is nonzero on it.
ModuleSummand scott_module(const PermGroup& g, const Subgroup& h);

// M(Q) = M^Q / sum over maximal R < Q of Tr_R^Q(M^R), as a module over
// N_G(Q).as_group(). For a permutation module the result is again a
// permutation module on the Q-fixed basis points, and the natural
// fixed-point bijection is verified. Q must be a 2-subgroup (domain_error)
// with its permutations inside m.group.
GModule brauer_construction(const GModule& m, const Subgroup& q);

// Brauer construction of a summand: the induced idempotent on the parent's
// Brauer quotient cuts out exactly (eM)(Q); returned as a summand of
// brauer_construction(parent, q).
ModuleSummand brauer_construction(const ModuleSummand& s, const Subgroup& q);

// Higman's criterion: M is relatively h-projective iff the identity lies in
// the image of the relative trace from End_{kh}(M). When the parent is a
// permutation module the trace image is computed orbital-combinatorially
// (Tr_h^G of an h-orbital matrix is a parity multiple of the G-orbital matrix
// containing it), which scales to large parents; otherwise the relative trace
// equation is solved densely (resource_error above dimension 128).
bool is_relatively_projective(const ModuleSummand& m, const Subgroup& h);

// Vertex of an indecomposable summand: a minimal 2-subgroup V with M
// relatively V-projective. Requires is_local on the corner algebra
// (precondition_error otherwise). The one-argument form descends from a
// Sylow 2-subgroup through maximal subgroups while Higman's test keeps
// passing and returns the least conjugate (by (order, element list)) of the
// endpoint. The anchored form requires M to be `anchor`-projective
// (internal_error otherwise) and scans anchor's subgroup classes in
// ascending order, so it returns `anchor` itself exactly when anchor is a
// vertex representative.
Subgroup vertex(const ModuleSummand& m);
Subgroup vertex(const ModuleSummand& m, const Subgroup& anchor);

// ---- module comparison ------------------------------------------------------

// Space of equivariant maps {T : A_g T = T B_g for every generator position g}.
// The two modules must have identical generator lists (same permutations in
// the same order); domain_error otherwise. Rows of the result are flattened
// solutions.
GF2Matrix intertwiner_space(const GModule& x, const GModule& y);

// Explicit invertible intertwiner if the modules are isomorphic, empty matrix
// if provably not. Both modules must be indecomposable for the completeness
// of the search (pairwise unit test over the two intertwiner spaces); callers
// establish that beforehand.
GF2Matrix module_isomorphism(const GModule& x, const GModule& y);

// All-ones row vector convenience.
GF2Matrix all_ones_row(std::size_t n);

} // namespace wrb

#endif

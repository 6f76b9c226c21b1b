#ifndef WRB_VERIFY_H
#define WRB_VERIFY_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wrb/fusion.hpp"
#include "wrb/modrep.hpp"
#include "wrb/perm_group.hpp"
#include "wrb/wreathed.hpp"

namespace wrb {

// Which argument certifies a subgroup verdict. Every verdict additionally runs
// the direct module computation; the route names the structural criterion that
// is cross-checked against it.
enum class VerdictRoute {
  TwoNilpotentCentralizer,  // C(Q) has a normal 2-complement; criterion subgroup built
  HomocyclicC2Automizer,    // Q in the base with C_P(Q) = P_0 and automizer equality
  HomocyclicS3Automizer,    // homocyclic tower whose full automizer is S_3
  DirectModuleComputation,  // no structural shortcut; module computation only
};

std::string to_string(VerdictRoute r);

// Result of checking one diagonal subgroup class of the Scott module's vertex.
struct SubgroupVerdict {
  Subgroup q;                  // fully normalized class representative (diagonal, in G x G')
  WreathedClass cls;           // structural class of its single-factor model image
  bool fully_normalized = false;
  VerdictRoute route = VerdictRoute::DirectModuleComputation;
  bool indecomposable = false; // the restricted Brauer quotient does not split
  bool zero = false;           // the Brauer quotient vanishes (flagged, never silent)
  uint32_t split_dim = 0;      // residue dimension of the restricted module's endomorphism ring
  bool cross_checked = false;  // Scott-quotient isomorphism and route criterion both agreed
  std::string detail;
};

struct StageTiming {
  std::string stage;
  double seconds = 0.0;
};

struct VerificationReport {
  std::string group_id;
  std::string group_prime_id;
  int n = 0;                   // layer parameter of the wreathed Sylow subgroup
  bool fusion_equal = false;
  bool saturated = false;
  uint32_t scott_dim = 0;      // dim Sc(G x G', diagonal P)
  bool scott_vertex_is_diagonal = false;
  std::vector<SubgroupVerdict> verdicts;
  bool overall = false;        // conjunction of per-verdict (indecomposable or zero)
  std::vector<StageTiming> timings;
};

struct VerifyOptions {
  std::string group_id;
  std::string group_prime_id;
  int threads = 1;             // per-class verifications may run concurrently
  bool check_vertex = true;    // compute the vertex of the big Scott module
};

// True iff G has a normal 2-complement: |odd_core(G)| * |sylow_2(G)| = |G|.
bool is_2_nilpotent(const PermGroup& g);

// Syntactic classification of a 2-subgroup q of the wreathed Sylow subgroup
// identified by emb. case_id picks the first matching condition (most specific
// first) out of the five that force C_G(q) to have a normal 2-complement:
//   1  q non-abelian
//   2  q abelian of rank 2, non-homocyclic, not inside the base subgroup
//   3  q cyclic, not inside the base subgroup
//   4  q equal to the base subgroup, or q = Z(P) x <outside involution>
//   5  q a Klein four group with a component outside the base
// case_id = 0 when none applies. holds reports the directly computed
// 2-nilpotency of C_G(q) regardless of case_id.
struct TwoNilpotentCase {
  int case_id = 0;
  bool holds = false;
};

TwoNilpotentCase classify_two_nilpotent_centralizer(const WreathedData& w,
                                                    const WreathedEmbedding& emb,
                                                    const PermGroup& g, const Subgroup& q);

// Given a normal 2-subgroup q of g with g/q isomorphic to S_3 and an
// involution t outside q, returns a subgroup H isomorphic to S_3 with t in H.
// Throws domain_error when the hypotheses fail and internal_error when no H
// exists under valid hypotheses (impossible by the classical splitting lemma).
Subgroup find_s3_through_involution(const PermGroup& g, const Subgroup& q, const Perm& t);

// Attempts to build a subgroup H of N_G(q) such that N_P(q) is a Sylow
// 2-subgroup of H and [N_G(q) : H] is a power of two; the existence of such an
// H certifies that the restriction of Sc(N_G(q), N_P(q)) to q C_G(q) is
// indecomposable. Construction paths: when N_G(q)/C_G(q) is a 2-group and
// C_G(q) has a normal 2-complement, H = K . N_P(q) with K the odd core of
// N_G(q); when the automizer has odd part, an S_3 overgroup of an involution
// is located in N_G(q)/(K_q x q) and pulled back; subgroups strictly below
// q C_P(q) delegate to the result for q C_P(q) and multiply by the odd core of
// q C_G(q). Returns nullopt when no path applies (never a disproof). Throws
// internal_error when a constructed candidate violates the Sylow or index
// postconditions.
std::optional<Subgroup> find_ik_subgroup(const PermGroup& g, const Subgroup& p,
                                         const Subgroup& q);

// Full verification that Sc(G x G', diagonal P) is Brauer indecomposable:
// checks the hypotheses (P Sylow in both factors, wreathed, equal fusion
// systems, saturation), builds the Scott module, enumerates subgroup classes
// of the diagonal up to fusion, replaces each class by its fully normalized
// member maximizing |N_P|, and for each class representative computes the
// Brauer quotient, restricts it to (diagonal) Q C(Q), and records
// indecomposable-or-zero together with the Scott-quotient isomorphism and the
// structural route cross-checks. Throws precondition_error with a diagnosis
// when a hypothesis fails and resource_error when dim k[(G x G')/diagonal]
// exceeds the module cap.
VerificationReport verify_scott_brauer_indecomposable(const PermGroup& g, const PermGroup& gp,
                                                      const Subgroup& p,
                                                      const VerifyOptions& opts = {});

// Sufficiency-only sweep of the criterion subgroups for a single group: for
// each fully normalized subgroup class of P, attempts find_ik_subgroup and
// reports whether the criterion certifies the restricted Scott module at that
// class. A missing H is reported as not-established, never as a disproof.
// Requires a saturated fusion system (precondition_error otherwise).
VerificationReport verify_via_ik(const PermGroup& g, const Subgroup& p,
                                 const VerifyOptions& opts = {});

}  // namespace wrb

#endif

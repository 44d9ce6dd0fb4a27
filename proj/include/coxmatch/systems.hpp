#pragma once

// Systems (J,H,M) attached to an element w: validation of the axioms,
// canonical factorizations u = a·b·c, the induced matching u ↦ a·M(b)·c,
// normalization, and the complete classification of special matchings of
// [e,w]. Right and left systems are provided as an independent route to the
// same matchings.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coxmatch/coxeter.hpp"
#include "coxmatch/interval.hpp"

namespace coxmatch {

// H ⊆ K: first kind; H ⊆ J: second kind; |H| = 1 gives both.
enum class SystemKind { First, Second, Both };

// A validated system for w. H has one or two generators, M is a matching of
// [e, w0(H)], and C_s ⊆ J ⊆ S where s = M(e). K is the s-complement of J.
struct MatchingSystem {
    Element w;
    GenSet J = 0;
    GenSet H = 0;
    Matching M;
    Gen s = 0;
    GenSet K = 0;
    SystemKind kind = SystemKind::Both;

    const CoxeterGroup& group() const { return M.interval().group(); }
};

struct SystemViolation {
    std::string axiom;  // "C", "S0", "S1" or "S2"
    std::string detail;
};

struct SystemCheck {
    std::optional<MatchingSystem> system;
    std::optional<SystemViolation> violation;
    bool ok() const { return system.has_value(); }
};

// Checks C_s ⊆ J and the axioms S0 (M is a multiplication matching only if
// |H| = 1), S1 (w^J ∈ W_K) and S2 (H-support of (w^J)^H and ᴴ(ᴷw) has at most
// one generator, which must commute with M through λ/ρ). M must be a matching
// of [e, w0(H)] (throws NotAMatching otherwise). On failure, reports the
// first violated axiom.
SystemCheck check_system(const CoxeterGroup& group, const Element& w, GenSet J, GenSet H,
                         const Matching& M);

// A factorization u = a·b·c with additive lengths where a ∈ W_K ∩ W^H,
// b ∈ W_H, c ∈ W_J ∩ ᴴW, and the H-supports of a and c are single generators
// commuting with M (through λ on the left, ρ on the right) when non-empty.
struct SystemFactorization {
    Element a, b, c;
};

bool is_system_factorization(const MatchingSystem& S, const Element& u,
                             const SystemFactorization& f);

// Membership in the order ideal where the canonical factorization is defined;
// contains every u ≤ w.
bool in_domain(const MatchingSystem& S, const Element& u);

// The canonical factorization through the parabolic splits dictated by the
// kind of the system. Throws NotInDomain.
SystemFactorization canonical_factorization(const MatchingSystem& S, const Element& u);

// M_S(u) = a · M(b) · c, independent of the chosen factorization.
Element apply_system_matching(const MatchingSystem& S, const Element& u);

// M_S(a'b'c') computed directly from a triple a' ≤ a, b' ≤ b, c' ≤ c against
// an ambient factorization w = a·b·c. Requires ℓ(a'b'c') additive, or (when
// M_S is a matching of [e,w]) some r ∈ D_L(a) making (ra', b', c') additive.
// Throws PreconditionViolated.
Element apply_via_triple(const MatchingSystem& S, const SystemFactorization& w_fact,
                         const Element& a, const Element& b, const Element& c);

// Moves the second generator of H in or out of J so that M(t) = st holds
// exactly when t ∈ J. The induced matching is unchanged pointwise.
MatchingSystem normalize_system(const MatchingSystem& S);

struct ClassifiedMatching {
    MatchingSystem system;
    Matching matching;
};

// The complete list of distinct special matchings of [e,w], each with a
// witnessing system: enumerates all (J,H,M) candidates, keeps the valid
// normalized systems with M_S(w) ⊲ w, materializes M_S on [e,w] and
// deduplicates extensionally.
std::vector<ClassifiedMatching> classify_special_matchings(const CoxeterGroup& group,
                                                           const Element& w,
                                                           std::size_t element_budget = 2'000);

// A multiplication matching N = λ_r or ρ_r with N(w) ≠ M_S(w) that commutes
// with M_S pointwise on [e,w]. Throws DihedralInterval when the canonical
// factorization of w has a = c = e.
std::pair<Gen, Side> commuting_multiplication_matching(const MatchingSystem& S);
std::pair<Gen, Side> commuting_multiplication_matching(const MatchingSystem& S,
                                                       const IntervalPtr& interval);

// M ∘ mult_α = mult_α ∘ M pointwise on the matching's interval; false when α
// is not a descent of the top on the requested side.
bool commutes_with_multiplication(const Matching& M, Gen alpha, Side side);

// Right systems (J,s,t,M_st): the earlier four-axiom-plus-image description
// of special matchings, kept as an independent cross-check.
struct RightSystem {
    Element w;
    GenSet J = 0;
    Gen s = 0, t = 0;
    Matching m_st;
};

struct LeftSystem {
    Element w;
    GenSet J = 0;
    Gen s = 0, t = 0;
    Matching m_st;
};

// Validate axioms R1–R5 / L1–L5 against the full interval [e,w]; throws
// InvalidRightSystem / InvalidLeftSystem naming the first failing axiom.
RightSystem make_right_system(const CoxeterGroup& group, const Element& w, GenSet J, Gen s,
                              Gen t, const Matching& m_st, const BruhatInterval& full);
LeftSystem make_left_system(const CoxeterGroup& group, const Element& w, GenSet J, Gen s,
                            Gen t, const Matching& m_st, const BruhatInterval& full);

Element right_system_matching(const RightSystem& R, const Element& u);
Element left_system_matching(const LeftSystem& L, const Element& u);

std::vector<RightSystem> enumerate_right_systems(const CoxeterGroup& group, const Element& w,
                                                 const IntervalPtr& full);
std::vector<LeftSystem> enumerate_left_systems(const CoxeterGroup& group, const Element& w,
                                               const IntervalPtr& full);

}  // namespace coxmatch

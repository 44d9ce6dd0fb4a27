#pragma once

// R-polynomials through the descent recursion, through an arbitrary special
// matching at the top step, and purely from an abstract graded poset; KL
// polynomials through the standard inversion of the R-family.

#include <unordered_map>
#include <vector>

#include "coxmatch/coxeter.hpp"
#include "coxmatch/interval.hpp"
#include "coxmatch/poly.hpp"

namespace coxmatch {

// c(M,u): 1 when M moves u up, 0 when it moves u down.
int matching_direction(const Matching& M, const Element& u);

// Holds the memo tables; pure otherwise. Confine an engine to one worker.
class RPolyEngine {
public:
    explicit RPolyEngine(const CoxeterGroup& group) : group_(&group) {}

    // R_{u,w}: zero when u ≰ w, one when u = w, otherwise the recursion
    // through right multiplication by the smallest right descent of w.
    IntPoly classical(const Element& u, const Element& w);

    // One recursion step with a special matching M of [e,w] at the top and
    // the classical recursion below. Throws NotSpecial; u must lie in the
    // interval of M.
    IntPoly via_matching(const Matching& M, const Element& u);

    // P_{u,w} for u ≤ w, recovered from the R-family: the lower half of
    //   q^d P(1/q) - P(q) = Σ_{u<x≤w} R_{u,x} P_{x,w},   d = ℓ(w) - ℓ(u),
    // determines P since deg P < d/2; the full identity is re-verified.
    IntPoly kl(const Element& u, const Element& w, std::size_t element_budget = 50'000);

private:
    const CoxeterGroup* group_;
    std::unordered_map<WordPair, IntPoly, WordPairHash> r_memo_;
    std::unordered_map<WordPair, IntPoly, WordPairHash> kl_memo_;
};

// R_{x,top} for every x of an abstract graded poset with a unique maximum.
// Finds a special matching of the poset by brute force, recurses into the
// subposet below the image of the top, and re-searches a matching at every
// level. Throws NoSpecialMatching when the search comes up empty (the poset
// is not the shape of a lower Bruhat interval).
std::vector<IntPoly> r_polynomials_abstract(const AbstractPoset& poset);

}  // namespace coxmatch

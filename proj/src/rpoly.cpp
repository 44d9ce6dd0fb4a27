#include "coxmatch/rpoly.hpp"

#include <algorithm>
#include <bit>

namespace coxmatch {

int matching_direction(const Matching& M, const Element& u) {
    return M.image(u).length() > u.length() ? 1 : 0;
}

IntPoly RPolyEngine::classical(const Element& u, const Element& w) {
    if (!group_->bruhat_leq(u, w)) return IntPoly{};
    if (u == w) return IntPoly(1);
    WordPair key{u.word(), w.word()};
    if (auto it = r_memo_.find(key); it != r_memo_.end()) return it->second;

    const Gen s = std::countr_zero(w.right_descents());
    const Element ws = group_->mult(w, s, Side::Right);
    const Element us = group_->mult(u, s, Side::Right);
    IntPoly out;
    if (us.length() < u.length()) {
        out = classical(us, ws);
    } else {
        static const IntPoly q = IntPoly::monomial(1);
        static const IntPoly q_minus_1 = IntPoly::from_coeffs({-1, 1});
        out = q_minus_1 * classical(u, ws) + q * classical(us, ws);
    }
    r_memo_.emplace(std::move(key), out);
    return out;
}

IntPoly RPolyEngine::via_matching(const Matching& M, const Element& u) {
    if (!is_special(M))
        throw NotSpecial("matching of [e, " + word_to_string(M.interval().top().word()) +
                         "] is not special");
    const Element& w = M.interval().top();
    const Element mu = M.image(u);
    const Element mw = M.image(w);
    if (mu.length() > u.length()) {
        static const IntPoly q = IntPoly::monomial(1);
        static const IntPoly q_minus_1 = IntPoly::from_coeffs({-1, 1});
        return q_minus_1 * classical(u, mw) + q * classical(mu, mw);
    }
    return classical(mu, mw);
}

IntPoly RPolyEngine::kl(const Element& u, const Element& w, std::size_t element_budget) {
    if (!group_->bruhat_leq(u, w))
        throw std::invalid_argument("Kazhdan-Lusztig polynomials need u <= w");
    WordPair key{u.word(), w.word()};
    if (auto it = kl_memo_.find(key); it != kl_memo_.end()) return it->second;

    const IntervalPtr I = build_interval(*group_, w, element_budget);
    std::vector<IntPoly> table(I->size());
    for (int x = I->size() - 1; x >= 0; --x) {
        const Element& ex = I->element(x);
        const int d = w.length() - ex.length();
        if (d == 0) {
            table[x] = IntPoly(1);
        } else {
            IntPoly rhs;
            for (int z = x + 1; z < I->size(); ++z)
                if (I->leq(x, z)) rhs += classical(ex, I->element(z)) * table[z];
            std::vector<long long> coeffs;
            for (int i = 0; 2 * i < d; ++i) coeffs.push_back(-rhs.coeff(i));
            table[x] = IntPoly::from_coeffs(std::move(coeffs));
            // the mirrored half of the identity must agree
            std::vector<long long> mirror(d + 1, 0);
            for (int i = 0; i <= table[x].degree(); ++i) mirror[d - i] = table[x].coeff(i);
            if (IntPoly::from_coeffs(std::move(mirror)) - table[x] != rhs)
                throw std::logic_error("R-family is not invertible at " +
                                       word_to_string(ex.word()));
        }
        kl_memo_.emplace(WordPair{ex.word(), w.word()}, table[x]);
    }
    return kl_memo_.at(key);
}

std::vector<IntPoly> r_polynomials_abstract(const AbstractPoset& poset) {
    const int n = poset.size();
    if (n == 1) return {IntPoly(1)};
    const auto tops = poset.at_rank(poset.top_rank());
    if (tops.size() != 1)
        throw std::invalid_argument("abstract R-polynomials need a unique maximum");
    const int top = tops.front();

    const auto matching = find_special_matching(poset);
    if (!matching)
        throw NoSpecialMatching("no special matching on a poset of " + std::to_string(n) +
                                " elements");
    const std::vector<int>& M = *matching;
    const int mtop = M[top];

    // Restrict to the downset of M(top) and recurse on it as its own poset.
    std::vector<int> sub_of(n, -1);
    int sub_size = 0;
    for (int i = 0; i < n; ++i)
        if (poset.leq(i, mtop)) sub_of[i] = sub_size++;
    std::vector<std::pair<int, int>> covers;
    for (auto [a, b] : poset.covers())
        if (sub_of[a] >= 0 && sub_of[b] >= 0) covers.emplace_back(sub_of[a], sub_of[b]);
    const std::vector<IntPoly> below = r_polynomials_abstract(AbstractPoset(sub_size, covers));

    auto r_below = [&](int z) { return sub_of[z] >= 0 ? below[sub_of[z]] : IntPoly{}; };
    static const IntPoly q = IntPoly::monomial(1);
    static const IntPoly q_minus_1 = IntPoly::from_coeffs({-1, 1});
    std::vector<IntPoly> out(n);
    for (int x = 0; x < n; ++x) {
        if (poset.rank(M[x]) > poset.rank(x))
            out[x] = q_minus_1 * r_below(x) + q * r_below(M[x]);
        else
            out[x] = r_below(M[x]);
    }
    return out;
}

}  // namespace coxmatch

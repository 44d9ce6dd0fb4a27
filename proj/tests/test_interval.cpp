#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "coxmatch/interval.hpp"
#include "test_util.hpp"

using namespace coxmatch;
using namespace coxmatch::testutil;

namespace {

std::vector<int> rank_sizes(const BruhatInterval& I) {
    std::vector<int> out(I.height() + 1, 0);
    for (int i = 0; i < I.size(); ++i) ++out[I.rank(i)];
    return out;
}

}  // namespace

TEST_CASE("interval construction") {
    CoxeterGroup g(a2());
    auto trivial = build_interval(g, g.identity());
    CHECK(trivial->size() == 1);

    auto I = build_interval(g, g.element({0, 1, 0}));
    CHECK(I->size() == 6);
    CHECK(rank_sizes(*I) == std::vector<int>{1, 2, 2, 1});

    CoxeterGroup d(i2(5));
    auto J = build_interval(d, d.element({1, 0, 1, 0}));
    CHECK(J->size() == 8);
    std::vector<Word> expect = {{}, {0}, {1}, {0, 1}, {1, 0}, {0, 1, 0}, {1, 0, 1}, {1, 0, 1, 0}};
    for (std::size_t i = 0; i < expect.size(); ++i) CHECK(J->element(i).word() == expect[i]);

    CHECK_THROWS_AS(build_interval(g, g.element({0, 1, 0}), 4), BudgetExceeded);
}

TEST_CASE("interval is downward closed and graded") {
    CoxeterGroup g(b3());
    auto I = build_interval(g, g.element({0, 1, 2, 1, 0}));
    for (int i = 0; i < I->size(); ++i) {
        for (int j = 0; j < I->size(); ++j) {
            bool lib = I->leq(i, j);
            CHECK(lib == g.bruhat_leq(I->element(i), I->element(j)));
            if (lib && I->rank(j) == I->rank(i) + 1) {
                const auto& ups = I->covers_above(i);
                CHECK(std::find(ups.begin(), ups.end(), j) != ups.end());
            }
        }
        // downward closure: every coatom chain reaches e
        if (I->rank(i) > 0) CHECK_FALSE(I->covers_below(i).empty());
    }
}

TEST_CASE("matching validation") {
    CoxeterGroup g(a2());
    auto I = build_interval(g, g.element({0, 1, 0}));
    CHECK_THROWS_AS(Matching(I, {1, 0, 3, 2, 5, 4, 6}), NotAMatching);
    CHECK_THROWS_AS(Matching(I, {0, 1, 3, 2, 5, 4}), NotAMatching);   // fixed points
    CHECK_THROWS_AS(Matching(I, {5, 2, 1, 4, 3, 0}), NotAMatching);   // {e, top} not an edge
    // λ_0 written out by hand: e-0, 1-01, 10-010
    Matching m(I, {1, 0, 3, 2, 5, 4});
    CHECK(m.image(g.element({1, 0})) == g.element({0, 1, 0}));

    auto small = build_interval(g, g.element({0, 1}));
    Matching n(small, {1, 0, 3, 2});
    CHECK_THROWS_AS(n.image(g.element({0, 1, 0})), NotInDomain);
}

TEST_CASE("multiplication matchings") {
    CoxeterGroup g(a2());
    auto I = build_interval(g, g.element({0, 1, 0}));

    Matching rho1 = multiplication_matching(I, 1, Side::Right);
    CHECK(rho1.image(g.identity()) == g.generator(1));
    CHECK(rho1.image(g.generator(0)) == g.element({0, 1}));
    CHECK(rho1.image(g.element({1, 0})) == g.element({0, 1, 0}));
    CHECK(is_special(rho1));
    CHECK(is_multiplication_matching(rho1));

    auto J = build_interval(g, g.element({0, 1}));
    CHECK_THROWS_AS(multiplication_matching(J, 1, Side::Left), NotADescent);

    auto single = build_interval(g, g.generator(0));
    Matching m = multiplication_matching(single, 0, Side::Right);
    CHECK(m.partners() == std::vector<int>{1, 0});
}

TEST_CASE("special matching check") {
    CoxeterGroup g(a2());
    auto I = build_interval(g, g.element({0, 1, 0}));
    // λ_0 pairs e-0, 1-01, 10-010
    CHECK(is_special(Matching(I, {1, 0, 3, 2, 5, 4})));
    // ρ_0 pairs e-0, 1-10, 01-010
    CHECK(is_special(Matching(I, {1, 0, 4, 5, 2, 3})));
}

TEST_CASE("enumeration of special matchings") {
    CoxeterGroup g(a2());

    auto single = build_interval(g, g.generator(0));
    CHECK(enumerate_special_matchings(single).size() == 1);

    auto I = build_interval(g, g.element({0, 1, 0}));
    auto specials = enumerate_special_matchings(I);
    CHECK(specials.size() == 4);
    auto found = partner_set(specials);
    for (Gen s : {0, 1})
        for (Side side : {Side::Left, Side::Right})
            CHECK(found.count(multiplication_matching(I, s, side).partners()) == 1);

    // odd-size interval has no perfect matching
    CHECK(enumerate_special_matchings(build_interval(g, g.identity())).empty());

    CHECK_THROWS_AS(enumerate_special_matchings(I, 3), BudgetExceeded);
}

TEST_CASE("dihedral m=5 interval has a hybrid special matching") {
    CoxeterGroup g(i2(5));
    auto I = build_interval(g, g.element({1, 0, 1, 0}));
    auto specials = enumerate_special_matchings(I);
    auto found = partner_set(specials);

    CHECK(found.count(multiplication_matching(I, 0, Side::Right).partners()) == 1);
    CHECK(found.count(multiplication_matching(I, 1, Side::Left).partners()) == 1);

    // e-0, 1-01, 10-010, 101-1010: special but not a multiplication matching
    auto idx = [&](const Word& w) { return I->index_of(g.element(w)); };
    std::vector<int> hybrid(I->size());
    hybrid[idx({})] = idx({0});
    hybrid[idx({0})] = idx({});
    hybrid[idx({1})] = idx({0, 1});
    hybrid[idx({0, 1})] = idx({1});
    hybrid[idx({1, 0})] = idx({0, 1, 0});
    hybrid[idx({0, 1, 0})] = idx({1, 0});
    hybrid[idx({1, 0, 1})] = idx({1, 0, 1, 0});
    hybrid[idx({1, 0, 1, 0})] = idx({1, 0, 1});
    CHECK(found.count(hybrid) == 1);
    CHECK_FALSE(is_multiplication_matching(Matching(I, hybrid)));
}

TEST_CASE("every multiplication matching is found by brute force") {
    CoxeterGroup g(a3());
    for (const Element& w : g.elements_up_to_length(4)) {
        if (w.is_identity()) continue;
        auto I = build_interval(g, w);
        auto found = partner_set(enumerate_special_matchings(I));
        for (Side side : {Side::Left, Side::Right})
            for (Gen s : gens_in(w.descents(side)))
                CHECK(found.count(multiplication_matching(I, s, side).partners()) == 1);
    }
}

TEST_CASE("special matchings obey the lifting property") {
    CoxeterGroup g(b3());
    for (const Word& word : {Word{0, 1, 0, 1}, Word{0, 1, 2, 1}}) {
        auto I = build_interval(g, g.element(word));
        for (const Matching& m : enumerate_special_matchings(I)) {
            for (int u = 0; u < I->size(); ++u)
                for (int v = 0; v < I->size(); ++v) {
                    if (!I->leq(u, v)) continue;
                    const bool mu_down = !m.goes_up(u);
                    const bool mv_down = !m.goes_up(v);
                    if (mv_down && mu_down) CHECK(I->leq(m.partner(u), m.partner(v)));
                    if (!mv_down && !mu_down) CHECK(I->leq(m.partner(u), m.partner(v)));
                    if (mv_down && !mu_down) {
                        CHECK(I->leq(m.partner(u), v));
                        CHECK(I->leq(u, m.partner(v)));
                    }
                }
        }
    }
}

TEST_CASE("abstract poset validation") {
    CHECK_THROWS_AS(AbstractPoset(2, {}), std::invalid_argument);            // two minima
    CHECK_THROWS_AS(AbstractPoset(3, {{0, 1}, {0, 2}, {1, 2}}), std::invalid_argument);
    AbstractPoset diamond(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
    CHECK(diamond.rank(3) == 2);
    CHECK(diamond.min_element() == 0);
    CHECK(diamond.leq(0, 3));
    CHECK_FALSE(diamond.leq(1, 2));
}

TEST_CASE("abstract poset from interval and relabeling") {
    CoxeterGroup g(a2());
    auto I = build_interval(g, g.element({0, 1, 0}));
    AbstractPoset p = AbstractPoset::of(*I);
    CHECK(p.size() == 6);
    CHECK(p.top_rank() == 3);

    std::vector<int> perm(p.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::mt19937 rng(7);
    std::shuffle(perm.begin(), perm.end(), rng);
    AbstractPoset q = p.relabeled(perm);
    CHECK(q.covers().size() == p.covers().size());

    auto iso = poset_isomorphism(p, q);
    REQUIRE(iso.has_value());
    for (auto [a, b] : p.covers()) {
        const auto& up = q.covers_above((*iso)[a]);
        CHECK(std::find(up.begin(), up.end(), (*iso)[b]) != up.end());
    }
}

TEST_CASE("poset isomorphism basics") {
    AbstractPoset diamond(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
    AbstractPoset chain(3, {{0, 1}, {1, 2}});
    CHECK(poset_isomorphism(diamond, diamond).has_value());
    CHECK_FALSE(poset_isomorphism(diamond, chain).has_value());

    // dihedral truncations of equal length are isomorphic regardless of m
    CoxeterGroup a(a2()), b(i2(4));
    auto Ia = build_interval(a, a.element({0, 1, 0}));
    auto Ib = build_interval(b, b.element({0, 1, 0}));
    CHECK(poset_isomorphism(AbstractPoset::of(*Ia), AbstractPoset::of(*Ib)).has_value());

    // same sizes and ranks, different cover structure
    AbstractPoset fork(6, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {3, 4}, {4, 5}});
    AbstractPoset fork2(6, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 5}, {4, 5}});
    CHECK_FALSE(poset_isomorphism(fork, fork2).has_value());
}

TEST_CASE("abstract special matching search") {
    AbstractPoset diamond(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
    auto all = enumerate_special_matchings(diamond);
    CHECK(all.size() == 2);
    auto one = find_special_matching(diamond);
    REQUIRE(one.has_value());
    CHECK(is_special(diamond, *one));

    // 3-crown from the m=5 dihedral: matches brute force on the interval
    CoxeterGroup g(i2(5));
    auto I = build_interval(g, g.element({1, 0, 1, 0}));
    auto abstract_count = enumerate_special_matchings(AbstractPoset::of(*I)).size();
    CHECK(abstract_count == enumerate_special_matchings(I).size());
}

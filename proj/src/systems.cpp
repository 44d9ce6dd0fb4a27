#include "coxmatch/systems.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

namespace coxmatch {

namespace {

int popcount(GenSet s) { return std::popcount(s); }

Gen lowest(GenSet s) { return std::countr_zero(s); }

Gen other_gen(GenSet H, Gen s) { return lowest(H & ~gen_bit(s)); }

}  // namespace

bool commutes_with_multiplication(const Matching& M, Gen alpha, Side side) {
    const BruhatInterval& I = M.interval();
    if (!gen_in(I.top().descents(side), alpha)) return false;
    const Matching mult = multiplication_matching(M.interval_ptr(), alpha, side);
    for (int i = 0; i < I.size(); ++i)
        if (M.partner(mult.partner(i)) != mult.partner(M.partner(i))) return false;
    return true;
}

SystemCheck check_system(const CoxeterGroup& group, const Element& w, GenSet J, GenSet H,
                         const Matching& M) {
    const GenSet all = group.all_generators();
    if ((J & ~all) || (H & ~all))
        throw std::invalid_argument("generator set out of range for the group");
    const int hsize = popcount(H);
    if (hsize < 1 || hsize > 2)
        throw std::invalid_argument("H must have one or two generators");

    const Element w0H = group.parabolic_interval_max(w, H);
    if (M.interval().top() != w0H || !(M.interval().group().matrix() == group.matrix()))
        throw NotAMatching("M is not a matching of [e, w0(H)] = [e, " +
                           word_to_string(w0H.word()) + "]");

    const Gen s = M.image(group.identity()).word().front();

    auto fail = [](std::string axiom, std::string detail) {
        return SystemCheck{std::nullopt, SystemViolation{std::move(axiom), std::move(detail)}};
    };

    const GenSet cs = group.commuting_set(s);
    if (!gen_subset(cs, J))
        return fail("C", "J does not contain the commuting set of s = " + std::to_string(s));

    if (hsize == 2 && is_multiplication_matching(M))
        return fail("S0", "M is a multiplication matching but |H| = 2");

    const GenSet K = group.s_complement(J, s);

    const Element wJ = group.quotient_part(w, J, Side::Right);
    if (!gen_subset(wJ.support(), K))
        return fail("S1", "w^J = " + word_to_string(wJ.word()) + " is not in W_K");

    const Element a_top = group.quotient_part(wJ, H, Side::Right);
    const GenSet suppA = a_top.support() & H;
    if (popcount(suppA) > 1)
        return fail("S2", "(w^J)^H = " + word_to_string(a_top.word()) + " has H-support of size 2");
    if (suppA && !commutes_with_multiplication(M, lowest(suppA), Side::Left))
        return fail("S2", "M does not commute with left multiplication by " +
                              std::to_string(lowest(suppA)));

    const Element Kw = group.quotient_part(w, K, Side::Left);
    const Element c_top = group.quotient_part(Kw, H, Side::Left);
    const GenSet suppC = c_top.support() & H;
    if (popcount(suppC) > 1)
        return fail("S2", "H-quotient of the K-quotient " + word_to_string(c_top.word()) +
                              " has H-support of size 2");
    if (suppC && !commutes_with_multiplication(M, lowest(suppC), Side::Right))
        return fail("S2", "M does not commute with right multiplication by " +
                              std::to_string(lowest(suppC)));

    SystemKind kind = SystemKind::Both;
    if (hsize == 2)
        kind = gen_in(K, other_gen(H, s)) ? SystemKind::First : SystemKind::Second;

    return SystemCheck{MatchingSystem{w, J, H, M, s, K, kind}, std::nullopt};
}

namespace {

// First kind: through the right J-split; second kind: mirrored through the
// left K-split. Systems with |H| = 1 are of both kinds and use the first
// formulas.
SystemFactorization raw_factorization(const MatchingSystem& S, const Element& u) {
    const CoxeterGroup& g = S.group();
    if (S.kind != SystemKind::Second) {
        const auto uJ = g.parabolic_split(u, S.J, Side::Right);
        const auto head = g.parabolic_split(uJ.quotient, S.H, Side::Right);
        const auto tail = g.parabolic_split(uJ.parabolic, S.H, Side::Left);
        return {head.quotient, g.mult(head.parabolic, tail.parabolic), tail.quotient};
    }
    const auto Ku = g.parabolic_split(u, S.K, Side::Left);
    const auto head = g.parabolic_split(Ku.parabolic, S.H, Side::Right);
    const auto tail = g.parabolic_split(Ku.quotient, S.H, Side::Left);
    return {head.quotient, g.mult(head.parabolic, tail.parabolic), tail.quotient};
}

}  // namespace

bool is_system_factorization(const MatchingSystem& S, const Element& u,
                             const SystemFactorization& f) {
    const CoxeterGroup& g = S.group();
    if (f.a.length() + f.b.length() + f.c.length() != u.length()) return false;
    if (g.mult(g.mult(f.a, f.b), f.c) != u) return false;

    if (!gen_subset(f.a.support(), S.K)) return false;
    if (f.a.right_descents() & S.H) return false;
    const GenSet suppA = f.a.support() & S.H;
    if (popcount(suppA) > 1) return false;
    if (suppA && !commutes_with_multiplication(S.M, lowest(suppA), Side::Left)) return false;

    if (!gen_subset(f.b.support(), S.H)) return false;

    if (!gen_subset(f.c.support(), S.J)) return false;
    if (f.c.left_descents() & S.H) return false;
    const GenSet suppC = f.c.support() & S.H;
    if (popcount(suppC) > 1) return false;
    if (suppC && !commutes_with_multiplication(S.M, lowest(suppC), Side::Right)) return false;

    return true;
}

bool in_domain(const MatchingSystem& S, const Element& u) {
    const CoxeterGroup& g = S.group();
    if (!g.bruhat_leq(g.parabolic_interval_max(u, S.H), S.M.interval().top())) return false;
    const auto fu = raw_factorization(S, u);
    const auto fw = raw_factorization(S, S.w);
    return S.kind != SystemKind::Second ? g.bruhat_leq(fu.a, fw.a) : g.bruhat_leq(fu.c, fw.c);
}

SystemFactorization canonical_factorization(const MatchingSystem& S, const Element& u) {
    if (!in_domain(S, u))
        throw NotInDomain("element " + word_to_string(u.word()) +
                          " is outside the factorization domain of the system");
    SystemFactorization f = raw_factorization(S, u);
    if (!is_system_factorization(S, u, f))
        throw std::logic_error("canonical factorization violated its own axioms");
    return f;
}

Element apply_system_matching(const MatchingSystem& S, const Element& u) {
    const CoxeterGroup& g = S.group();
    const SystemFactorization f = canonical_factorization(S, u);
    const Element mb = S.M.image(f.b);
    const Element out = g.mult(g.mult(f.a, mb), f.c);
    if (out.length() != f.a.length() + mb.length() + f.c.length())
        throw std::logic_error("system matching image lost length additivity");
    return out;
}

Element apply_via_triple(const MatchingSystem& S, const SystemFactorization& w_fact,
                         const Element& a, const Element& b, const Element& c) {
    const CoxeterGroup& g = S.group();
    if (!g.bruhat_leq(a, w_fact.a) || !g.bruhat_leq(b, w_fact.b) || !g.bruhat_leq(c, w_fact.c))
        throw PreconditionViolated("triple is not dominated by the factorization of w");
    const Element u = g.mult(g.mult(a, b), c);
    if (u.length() != a.length() + b.length() + c.length()) {
        // Fall back to the descent hypothesis; it needs M_S to be a matching
        // of [e,w], i.e. M(b_w) ⊲ b_w.
        if (S.M.image(w_fact.b).length() != w_fact.b.length() - 1)
            throw PreconditionViolated("lengths are not additive and M_S(w) does not cover down");
        bool found = false;
        for (Gen r : gens_in(w_fact.a.left_descents())) {
            const Element ra = g.mult(a, r, Side::Left);
            const Element ru = g.mult(u, r, Side::Left);
            if (ru.length() == ra.length() + b.length() + c.length()) {
                found = true;
                break;
            }
        }
        if (!found)
            throw PreconditionViolated(
                "lengths are not additive and no left descent of a restores additivity");
    }
    const Element out = g.mult(g.mult(a, S.M.image(b)), c);
    if (out != apply_system_matching(S, u))
        throw std::logic_error("triple evaluation disagrees with the canonical factorization");
    return out;
}

MatchingSystem normalize_system(const MatchingSystem& S) {
    if (popcount(S.H) == 1) return S;
    const CoxeterGroup& g = S.group();
    const Gen t = other_gen(S.H, S.s);
    const Element mt = S.M.image(g.generator(t));
    const Element st = g.element({S.s, t});
    const Element ts = g.element({t, S.s});

    GenSet J = S.J;
    if (!gen_in(S.J, t) && mt != ts)
        J |= gen_bit(t);
    else if (gen_in(S.J, t) && mt != st)
        J &= ~gen_bit(t);
    else
        return S;

    SystemCheck chk = check_system(g, S.w, J, S.H, S.M);
    if (!chk.ok())
        throw std::logic_error("normalization produced an invalid system (axiom " +
                               chk.violation->axiom + ")");
    return *chk.system;
}

std::vector<ClassifiedMatching> classify_special_matchings(const CoxeterGroup& group,
                                                           const Element& w,
                                                           std::size_t element_budget) {
    const IntervalPtr I = build_interval(group, w, element_budget);
    std::vector<ClassifiedMatching> out;
    std::set<std::vector<int>> seen;
    const GenSet all = group.all_generators();

    for (GenSet H = 1; H <= all; ++H) {
        const int hsize = popcount(H);
        if (hsize < 1 || hsize > 2) continue;

        bool meaningful = true;
        for (Gen a : gens_in(H))
            meaningful = meaningful && group.bruhat_leq(group.generator(a), w);
        if (!meaningful) continue;
        if (hsize == 2) {
            const auto hh = gens_in(H);
            if (group.matrix().commutes(hh[0], hh[1])) continue;  // only multiplication matchings
        }

        const Element w0H = group.parabolic_interval_max(w, H);
        const IntervalPtr dom = build_interval(group, w0H, element_budget);

        for (const Matching& M : enumerate_matchings(dom)) {
            const Element s_elt = M.image(group.identity());
            const Gen s = s_elt.word().front();
            const GenSet cs = group.commuting_set(s);

            for (GenSet J = 0; J <= all; ++J) {
                if (!gen_subset(cs, J)) continue;
                SystemCheck chk = check_system(group, w, J, H, M);
                if (!chk.ok()) continue;
                MatchingSystem S = std::move(*chk.system);

                if (hsize == 2) {
                    // Normalized side condition: M_S(t) = st exactly when t ∈ J.
                    const Gen t = other_gen(H, s);
                    const bool maps_to_st =
                        M.image(group.generator(t)) == group.mult(s_elt, t, Side::Right);
                    if (maps_to_st != gen_in(J, t)) continue;
                }

                // Keep only systems whose matching moves w down.
                const SystemFactorization fw = canonical_factorization(S, w);
                if (S.M.image(fw.b).length() != fw.b.length() - 1) continue;

                std::vector<int> partner(I->size());
                for (int i = 0; i < I->size(); ++i) {
                    const int j = I->index_of(apply_system_matching(S, I->element(i)));
                    if (j < 0) throw std::logic_error("system matching image left [e,w]");
                    partner[i] = j;
                }
                if (!seen.insert(partner).second) continue;
                out.push_back({std::move(S), Matching(I, std::move(partner))});
            }
        }
    }
    return out;
}

std::pair<Gen, Side> commuting_multiplication_matching(const MatchingSystem& S,
                                                       const IntervalPtr& interval) {
    const SystemFactorization f = canonical_factorization(S, S.w);
    if (f.a.is_identity() && f.c.is_identity())
        throw DihedralInterval("w lies in W_H, so [e,w] is a dihedral interval");

    Gen r;
    Side side;
    if (!f.a.is_identity()) {
        r = lowest(f.a.left_descents());
        side = Side::Left;
    } else {
        r = lowest(f.c.right_descents());
        side = Side::Right;
    }

    const Matching N = multiplication_matching(interval, r, side);
    if (N.image(S.w) == apply_system_matching(S, S.w))
        throw std::logic_error("companion multiplication matching collides with M_S at w");
    for (int i = 0; i < interval->size(); ++i) {
        const Element u = interval->element(i);
        if (apply_system_matching(S, N.image(u)) != N.image(apply_system_matching(S, u)))
            throw std::logic_error("companion multiplication matching does not commute with M_S");
    }
    return {r, side};
}

std::pair<Gen, Side> commuting_multiplication_matching(const MatchingSystem& S) {
    return commuting_multiplication_matching(S, build_interval(S.group(), S.w));
}

namespace {

Element right_formula(const CoxeterGroup& g, const RightSystem& R, const Element& u) {
    const GenSet st = gen_bit(R.s) | gen_bit(R.t);
    const auto uJ = g.parabolic_split(u, R.J, Side::Right);
    const auto head = g.parabolic_split(uJ.quotient, st, Side::Right);
    const auto tail = g.parabolic_split(uJ.parabolic, gen_bit(R.s), Side::Left);
    const Element mid = g.mult(head.parabolic, tail.parabolic);
    return g.mult(g.mult(head.quotient, R.m_st.image(mid)), tail.quotient);
}

Element left_formula(const CoxeterGroup& g, const LeftSystem& L, const Element& u) {
    const GenSet st = gen_bit(L.s) | gen_bit(L.t);
    const auto Ju = g.parabolic_split(u, L.J, Side::Left);
    const auto head = g.parabolic_split(Ju.parabolic, gen_bit(L.s), Side::Right);
    const auto tail = g.parabolic_split(Ju.quotient, st, Side::Left);
    const Element mid = g.mult(head.parabolic, tail.parabolic);
    return g.mult(g.mult(head.quotient, L.m_st.image(mid)), tail.quotient);
}

bool equals_multiplication(const Matching& m, Gen s, Side side) {
    if (!gen_in(m.interval().top().descents(side), s)) return false;
    return m == multiplication_matching(m.interval_ptr(), s, side);
}

}  // namespace

Element right_system_matching(const RightSystem& R, const Element& u) {
    return right_formula(R.m_st.interval().group(), R, u);
}

Element left_system_matching(const LeftSystem& L, const Element& u) {
    return left_formula(L.m_st.interval().group(), L, u);
}

RightSystem make_right_system(const CoxeterGroup& group, const Element& w, GenSet J, Gen s,
                              Gen t, const Matching& m_st, const BruhatInterval& full) {
    const GenSet all = group.all_generators();
    if ((J & ~all) || !gen_in(all, s) || !gen_in(all, t) || s == t)
        throw std::invalid_argument("bad right system data");

    if (!gen_in(J, s)) throw InvalidRightSystem("R1", "s is not in J");
    if (gen_in(J, t)) throw InvalidRightSystem("R1", "t is in J");
    const GenSet st = gen_bit(s) | gen_bit(t);
    if (m_st.interval().top() != group.parabolic_interval_max(w, st))
        throw InvalidRightSystem("R1", "M_st is not a matching of [e, w0(s,t)]");
    if (!is_special(m_st)) throw InvalidRightSystem("R1", "M_st is not special");
    if (m_st.image(group.identity()) != group.generator(s))
        throw InvalidRightSystem("R1", "M_st(e) != s");
    const int ti = m_st.interval().index_of(group.generator(t));
    if (ti >= 0 && m_st.interval().element(m_st.partner(ti)) != group.element({t, s}))
        throw InvalidRightSystem("R1", "M_st(t) != ts");

    RightSystem R{w, J, s, t, m_st};

    for (int i = 0; i < full.size(); ++i) {
        Element img;
        try {
            img = right_formula(group, R, full.element(i));
        } catch (const NotInDomain&) {
            throw InvalidRightSystem(
                "R2", "image undefined at " + word_to_string(full.element(i).word()));
        }
        if (!group.bruhat_leq(img, w))
            throw InvalidRightSystem(
                "R2", "image exceeds w at " + word_to_string(full.element(i).word()));
    }

    const Element wJ = group.quotient_part(w, J, Side::Right);
    for (Gen r : gens_in(J))
        if (group.bruhat_leq(group.generator(r), wJ) && !group.matrix().commutes(r, s))
            throw InvalidRightSystem("R3", "generator " + std::to_string(r) +
                                               " below w^J does not commute with s");

    const Element x = group.quotient_part(wJ, st, Side::Right);
    const bool sx = group.bruhat_leq(group.generator(s), x);
    const bool tx = group.bruhat_leq(group.generator(t), x);
    if (sx && tx && !equals_multiplication(m_st, s, Side::Right))
        throw InvalidRightSystem("R4", "M_st must be right multiplication by s");
    if (sx && !tx && !commutes_with_multiplication(m_st, s, Side::Left))
        throw InvalidRightSystem("R4", "M_st must commute with left multiplication by s");
    if (!sx && tx && !commutes_with_multiplication(m_st, t, Side::Left))
        throw InvalidRightSystem("R4", "M_st must commute with left multiplication by t");

    const Element wJ_par = group.parabolic_part(w, J, Side::Right);
    if (group.bruhat_leq(group.generator(s),
                         group.quotient_part(wJ_par, gen_bit(s), Side::Left)) &&
        !commutes_with_multiplication(m_st, s, Side::Right))
        throw InvalidRightSystem("R5", "M_st must commute with right multiplication by s");

    return R;
}

LeftSystem make_left_system(const CoxeterGroup& group, const Element& w, GenSet J, Gen s,
                            Gen t, const Matching& m_st, const BruhatInterval& full) {
    const GenSet all = group.all_generators();
    if ((J & ~all) || !gen_in(all, s) || !gen_in(all, t) || s == t)
        throw std::invalid_argument("bad left system data");

    if (!gen_in(J, s)) throw InvalidLeftSystem("L1", "s is not in J");
    if (gen_in(J, t)) throw InvalidLeftSystem("L1", "t is in J");
    const GenSet st = gen_bit(s) | gen_bit(t);
    if (m_st.interval().top() != group.parabolic_interval_max(w, st))
        throw InvalidLeftSystem("L1", "M_st is not a matching of [e, w0(s,t)]");
    if (!is_special(m_st)) throw InvalidLeftSystem("L1", "M_st is not special");
    if (m_st.image(group.identity()) != group.generator(s))
        throw InvalidLeftSystem("L1", "M_st(e) != s");
    const int ti = m_st.interval().index_of(group.generator(t));
    if (ti >= 0 && m_st.interval().element(m_st.partner(ti)) != group.element({s, t}))
        throw InvalidLeftSystem("L1", "M_st(t) != st");

    LeftSystem L{w, J, s, t, m_st};

    for (int i = 0; i < full.size(); ++i) {
        Element img;
        try {
            img = left_formula(group, L, full.element(i));
        } catch (const NotInDomain&) {
            throw InvalidLeftSystem(
                "L2", "image undefined at " + word_to_string(full.element(i).word()));
        }
        if (!group.bruhat_leq(img, w))
            throw InvalidLeftSystem(
                "L2", "image exceeds w at " + word_to_string(full.element(i).word()));
    }

    const Element Jw = group.quotient_part(w, J, Side::Left);
    for (Gen r : gens_in(J))
        if (group.bruhat_leq(group.generator(r), Jw) && !group.matrix().commutes(r, s))
            throw InvalidLeftSystem("L3", "generator " + std::to_string(r) +
                                              " below the J-quotient does not commute with s");

    const Element x = group.quotient_part(Jw, st, Side::Left);
    const bool sx = group.bruhat_leq(group.generator(s), x);
    const bool tx = group.bruhat_leq(group.generator(t), x);
    if (sx && tx && !equals_multiplication(m_st, s, Side::Left))
        throw InvalidLeftSystem("L4", "M_st must be left multiplication by s");
    if (sx && !tx && !commutes_with_multiplication(m_st, s, Side::Right))
        throw InvalidLeftSystem("L4", "M_st must commute with right multiplication by s");
    if (!sx && tx && !commutes_with_multiplication(m_st, t, Side::Right))
        throw InvalidLeftSystem("L4", "M_st must commute with right multiplication by t");

    const Element Jw_par = group.parabolic_part(w, J, Side::Left);
    if (group.bruhat_leq(group.generator(s),
                         group.quotient_part(Jw_par, gen_bit(s), Side::Right)) &&
        !commutes_with_multiplication(m_st, s, Side::Left))
        throw InvalidLeftSystem("L5", "M_st must commute with left multiplication by s");

    return L;
}

namespace {

template <class SystemT, class MakeFn>
std::vector<SystemT> enumerate_side_systems(const CoxeterGroup& group, const Element& w,
                                            const IntervalPtr& full, MakeFn make) {
    std::vector<SystemT> out;
    const GenSet all = group.all_generators();
    std::map<GenSet, std::pair<IntervalPtr, std::vector<Matching>>> cache;
    for (GenSet J = 0; J <= all; ++J)
        for (Gen s : gens_in(J))
            for (Gen t : gens_in(all & ~J)) {
                const GenSet st = gen_bit(s) | gen_bit(t);
                auto it = cache.find(st);
                if (it == cache.end()) {
                    IntervalPtr dom =
                        build_interval(group, group.parabolic_interval_max(w, st));
                    auto ms = enumerate_special_matchings(dom);
                    it = cache.emplace(st, std::make_pair(std::move(dom), std::move(ms))).first;
                }
                for (const Matching& m : it->second.second) {
                    auto sys = make(J, s, t, m, *full);
                    if (sys) out.push_back(std::move(*sys));
                }
            }
    return out;
}

}  // namespace

std::vector<RightSystem> enumerate_right_systems(const CoxeterGroup& group, const Element& w,
                                                 const IntervalPtr& full) {
    return enumerate_side_systems<RightSystem>(
        group, w, full,
        [&](GenSet J, Gen s, Gen t, const Matching& m,
            const BruhatInterval& I) -> std::optional<RightSystem> {
            try {
                return make_right_system(group, w, J, s, t, m, I);
            } catch (const InvalidRightSystem&) {
                return std::nullopt;
            }
        });
}

std::vector<LeftSystem> enumerate_left_systems(const CoxeterGroup& group, const Element& w,
                                               const IntervalPtr& full) {
    return enumerate_side_systems<LeftSystem>(
        group, w, full,
        [&](GenSet J, Gen s, Gen t, const Matching& m,
            const BruhatInterval& I) -> std::optional<LeftSystem> {
            try {
                return make_left_system(group, w, J, s, t, m, I);
            } catch (const InvalidLeftSystem&) {
                return std::nullopt;
            }
        });
}

}  // namespace coxmatch

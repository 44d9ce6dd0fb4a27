#include "coxmatch/coxeter.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <sstream>
#include <unordered_set>

namespace coxmatch {

std::vector<Gen> gens_in(GenSet set) {
    std::vector<Gen> out;
    for (Gen s = 0; set >> s; ++s)
        if (gen_in(set, s)) out.push_back(s);
    return out;
}

GenSet gen_set(std::initializer_list<Gen> gens) {
    GenSet out = 0;
    for (Gen s : gens) out |= gen_bit(s);
    return out;
}

std::string word_to_string(const Word& w) {
    if (w.empty()) return "e";
    std::ostringstream os;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) os << ' ';
        os << w[i];
    }
    return os.str();
}

GenSet Element::support() const {
    GenSet out = 0;
    for (Gen g : word_) out |= gen_bit(g);
    return out;
}

GenSet support(const Element& w) { return w.support(); }
GenSet support(const Element& w, GenSet H) { return w.support() & H; }

CoxeterMatrix::CoxeterMatrix(std::vector<std::vector<int>> entries)
    : rank_(static_cast<int>(entries.size())), m_(std::move(entries)) {
    if (rank_ == 0 || rank_ > 31)
        throw std::invalid_argument("Coxeter matrix rank must be between 1 and 31");
    for (int i = 0; i < rank_; ++i) {
        if (static_cast<int>(m_[i].size()) != rank_)
            throw std::invalid_argument("Coxeter matrix must be square");
        if (m_[i][i] != 1)
            throw std::invalid_argument("Coxeter matrix diagonal entries must be 1");
        for (int j = 0; j < rank_; ++j) {
            if (m_[i][j] != m_[j][i])
                throw std::invalid_argument("Coxeter matrix must be symmetric");
            if (i != j && m_[i][j] != kInfinite && m_[i][j] < 2)
                throw std::invalid_argument("off-diagonal bond orders must be >= 2 (0 = infinite)");
        }
    }
}

CoxeterGroup::CoxeterGroup(CoxeterMatrix matrix, std::size_t closure_budget)
    : matrix_(std::move(matrix)), closure_budget_(closure_budget) {}

void CoxeterGroup::check_letters(const Word& w) const {
    for (Gen g : w)
        if (g < 0 || g >= rank())
            throw std::invalid_argument("generator index " + std::to_string(g) +
                                        " out of range for rank " + std::to_string(rank()));
}

namespace {

// Cancel equal adjacent letters, stack-wise.
void strip_squares(Word& w) {
    Word out;
    out.reserve(w.size());
    for (Gen g : w) {
        if (!out.empty() && out.back() == g)
            out.pop_back();
        else
            out.push_back(g);
    }
    w = std::move(out);
}

int adjacent_equal_pos(const Word& w) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] == w[i + 1]) return static_cast<int>(i);
    return -1;
}

}  // namespace

Word CoxeterGroup::reduce(Word w) const {
    std::size_t nodes = 0;
    strip_squares(w);
    // Known canonical words short-circuit the closure.
    if (info_.find(w) != info_.end()) return w;
    for (;;) {
        std::unordered_set<Word, WordHash> seen;
        std::deque<Word> queue;
        seen.insert(w);
        queue.push_back(w);
        ++nodes;
        bool restarted = false;
        while (!queue.empty()) {
            Word x = std::move(queue.front());
            queue.pop_front();
            int dup = adjacent_equal_pos(x);
            if (dup >= 0) {
                // Non-reduced: delete the pair and redo the closure on the
                // shorter word.
                x.erase(x.begin() + dup, x.begin() + dup + 2);
                strip_squares(x);
                w = std::move(x);
                restarted = true;
                break;
            }
            const int n = static_cast<int>(x.size());
            for (int i = 0; i + 1 < n; ++i) {
                const Gen s = x[i], t = x[i + 1];
                if (s == t) continue;
                const int m = matrix_.order(s, t);
                if (m == CoxeterMatrix::kInfinite || i + m > n) continue;
                bool alternating = true;
                for (int k = 2; k < m; ++k)
                    if (x[i + k] != (k % 2 ? t : s)) {
                        alternating = false;
                        break;
                    }
                if (!alternating) continue;
                Word y = x;
                for (int k = 0; k < m; ++k) y[i + k] = (k % 2 ? s : t);
                if (seen.insert(y).second) {
                    if (++nodes > closure_budget_)
                        throw ClosureBudgetExceeded(
                            "braid closure exceeded " + std::to_string(closure_budget_) +
                            " nodes while canonicalizing a word of length " +
                            std::to_string(w.size()));
                    queue.push_back(std::move(y));
                }
            }
        }
        if (restarted) continue;

        // w is reduced and `seen` holds every reduced expression of it.
        const Word* best = &w;
        GenSet first = 0, last = 0;
        for (const Word& x : seen) {
            if (x < *best) best = &x;
            if (!x.empty()) {
                first |= gen_bit(x.front());
                last |= gen_bit(x.back());
            }
        }
        Word canonical = *best;
        info_.emplace(canonical, ElemInfo{first, last});
        return canonical;
    }
}

const CoxeterGroup::ElemInfo& CoxeterGroup::info(const Word& canonical) const {
    auto it = info_.find(canonical);
    if (it != info_.end()) return it->second;
    Word again = reduce(canonical);
    return info_.at(again);
}

Element CoxeterGroup::make(const Word& canonical) const {
    const ElemInfo& i = info(canonical);
    return Element{canonical, i.left, i.right};
}

Element CoxeterGroup::generator(Gen s) const {
    check_letters({s});
    return Element{Word{s}, gen_bit(s), gen_bit(s)};
}

Element CoxeterGroup::element(const Word& letters) const {
    check_letters(letters);
    return make(reduce(letters));
}

Element CoxeterGroup::mult(const Element& u, Gen s, Side side) const {
    check_letters({s});
    Word key;
    key.reserve(u.word().size() + 1);
    if (side == Side::Right) {
        key = u.word();
        key.push_back(s);
    } else {
        key.push_back(s);
        key.insert(key.end(), u.word().begin(), u.word().end());
    }
    auto it = step_.find(key);
    if (it != step_.end()) return make(it->second);
    Word canonical = reduce(key);
    step_.emplace(std::move(key), canonical);
    return make(canonical);
}

Element CoxeterGroup::mult(const Element& u, const Element& v) const {
    Element acc = u;
    for (Gen g : v.word()) acc = mult(acc, g, Side::Right);
    return acc;
}

Element CoxeterGroup::inverse(const Element& u) const {
    auto it = inverse_.find(u.word());
    if (it != inverse_.end()) return make(it->second);
    Word rev(u.word().rbegin(), u.word().rend());
    Word canonical = reduce(rev);
    inverse_.emplace(u.word(), canonical);
    return make(canonical);
}

bool CoxeterGroup::bruhat_leq(const Element& u, const Element& w) const {
    if (u.length() > w.length()) return false;
    if (u.is_identity()) return true;
    if (u.word() == w.word()) return true;
    WordPair key{u.word(), w.word()};
    auto it = leq_.find(key);
    if (it != leq_.end()) return it->second;
    const Gen s = std::countr_zero(w.left_descents());
    const Element sw = mult(w, s, Side::Left);
    const bool result = gen_in(u.left_descents(), s) ? bruhat_leq(mult(u, s, Side::Left), sw)
                                                     : bruhat_leq(u, sw);
    leq_.emplace(std::move(key), result);
    return result;
}

bool CoxeterGroup::is_prefix(const Element& u, const Element& w) const {
    return u.length() + mult(inverse(u), w).length() == w.length();
}

bool CoxeterGroup::is_suffix(const Element& u, const Element& w) const {
    return mult(w, inverse(u)).length() + u.length() == w.length();
}

GenSet CoxeterGroup::commuting_set(Gen s) const {
    GenSet out = 0;
    for (Gen c = 0; c < rank(); ++c)
        if (matrix_.commutes(s, c)) out |= gen_bit(c);
    return out;
}

GenSet CoxeterGroup::s_complement(GenSet J, Gen s) const {
    const GenSet cs = commuting_set(s);
    if (!gen_subset(cs, J))
        throw InvalidJ("J must contain the commuting set of generator " + std::to_string(s));
    return (all_generators() & ~J) | cs;
}

ParabolicSplit CoxeterGroup::parabolic_split(const Element& w, GenSet J, Side side) const {
    Element quotient = w;
    Element parabolic;
    if (side == Side::Right) {
        for (;;) {
            const GenSet d = quotient.right_descents() & J;
            if (!d) break;
            const Gen s = std::countr_zero(d);
            quotient = mult(quotient, s, Side::Right);
            parabolic = mult(parabolic, s, Side::Left);
        }
    } else {
        for (;;) {
            const GenSet d = quotient.left_descents() & J;
            if (!d) break;
            const Gen s = std::countr_zero(d);
            quotient = mult(quotient, s, Side::Left);
            parabolic = mult(parabolic, s, Side::Right);
        }
    }
    return ParabolicSplit{quotient, parabolic, side, J};
}

Element CoxeterGroup::parabolic_interval_max(const Element& w, GenSet J) const {
    // [e,w] ∩ W_J is exactly the set of elements spelled by subwords of the
    // canonical word of w restricted to letters in J.
    std::vector<Element> found{identity()};
    std::unordered_set<Word, WordHash> seen{Word{}};
    for (Gen g : w.word()) {
        if (!gen_in(J, g)) continue;
        const std::size_t n = found.size();
        for (std::size_t i = 0; i < n; ++i) {
            Element v = mult(found[i], g, Side::Right);
            if (seen.insert(v.word()).second) found.push_back(std::move(v));
        }
    }
    const Element* best = &found.front();
    bool tie = false;
    for (const Element& u : found) {
        if (u.length() > best->length()) {
            best = &u;
            tie = false;
        } else if (&u != best && u.length() == best->length()) {
            tie = true;
        }
    }
    if (tie)
        throw std::logic_error("parabolic_interval_max: maximal element is not unique");
    return *best;
}

std::vector<Element> CoxeterGroup::elements_up_to_length(int max_length,
                                                         std::size_t max_count) const {
    std::vector<Element> out{identity()};
    std::unordered_set<Word, WordHash> seen{Word{}};
    std::vector<Element> frontier{identity()};
    for (int len = 0; len < max_length && !frontier.empty(); ++len) {
        std::vector<Element> next;
        for (const Element& u : frontier) {
            for (Gen s = 0; s < rank(); ++s) {
                if (gen_in(u.right_descents(), s)) continue;
                Element v = mult(u, s, Side::Right);
                if (seen.insert(v.word()).second) {
                    if (out.size() + next.size() >= max_count)
                        throw BudgetExceeded("element enumeration exceeded " +
                                             std::to_string(max_count) + " elements");
                    next.push_back(std::move(v));
                }
            }
        }
        out.insert(out.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace coxmatch

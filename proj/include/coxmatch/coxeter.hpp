#pragma once

// Word-level Coxeter group algebra: canonical reduced words, length and
// descents, Bruhat order, parabolic decompositions, supports.
//
// The word problem is solved exactly with Tits' algorithm: the set of words
// reachable from a given word by braid moves contains a word with two equal
// adjacent letters if and only if the word is not reduced, and the closure of
// a reduced word is the full set of its reduced expressions. Canonical form
// is the lexicographically smallest reduced word under generator-index order,
// which gives cheap equality and hashing.
//
// A CoxeterGroup instance owns memoization caches (canonical forms, single
// letter products, Bruhat comparisons). Elements are immutable values. The
// caches are not synchronized: confine each CoxeterGroup to one worker, or
// give each worker its own instance.

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "coxmatch/errors.hpp"

namespace coxmatch {

using Gen = int;                 // generator index, 0-based
using Word = std::vector<Gen>;   // not necessarily reduced
using GenSet = std::uint32_t;    // bitmask over generator indices

constexpr GenSet gen_bit(Gen s) { return GenSet{1} << s; }
constexpr bool gen_in(GenSet set, Gen s) { return (set >> s) & 1u; }
constexpr bool gen_subset(GenSet a, GenSet b) { return (a & ~b) == 0; }

// Generators present in `set`, ascending.
std::vector<Gen> gens_in(GenSet set);
GenSet gen_set(std::initializer_list<Gen> gens);

std::string word_to_string(const Word& w);  // "0 1 0"; "e" for the identity

struct WordHash {
    std::size_t operator()(const Word& w) const {
        std::size_t h = 1469598103934665603ull;
        for (Gen g : w) {
            h ^= static_cast<std::size_t>(g) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};

using WordPair = std::pair<Word, Word>;

struct WordPairHash {
    std::size_t operator()(const WordPair& p) const {
        WordHash h;
        return h(p.first) * 0x9e3779b97f4a7c15ull + h(p.second);
    }
};

enum class Side { Left, Right };

// Symmetric matrix of bond orders defining a Coxeter system (W,S).
// Entry 0 encodes an infinite bond.
class CoxeterMatrix {
public:
    static constexpr int kInfinite = 0;

    explicit CoxeterMatrix(std::vector<std::vector<int>> entries);

    int rank() const { return rank_; }
    int order(Gen s, Gen t) const { return m_[s][t]; }
    bool commutes(Gen s, Gen t) const {
        int m = order(s, t);
        return m == 1 || m == 2;
    }
    bool operator==(const CoxeterMatrix& other) const { return m_ == other.m_; }

private:
    int rank_;
    std::vector<std::vector<int>> m_;
};

// A group element, stored as its canonical reduced word with cached descent
// sets. Two elements are equal iff their canonical words are equal. The
// default-constructed Element is the identity of any group.
class Element {
public:
    Element() = default;

    const Word& word() const { return word_; }
    int length() const { return static_cast<int>(word_.size()); }
    bool is_identity() const { return word_.empty(); }
    GenSet left_descents() const { return left_; }
    GenSet right_descents() const { return right_; }
    GenSet descents(Side side) const { return side == Side::Left ? left_ : right_; }
    GenSet support() const;

    bool operator==(const Element& other) const { return word_ == other.word_; }
    bool operator!=(const Element& other) const { return word_ != other.word_; }
    // Canonical order: by length, then lexicographically on the word.
    bool operator<(const Element& other) const {
        if (word_.size() != other.word_.size()) return word_.size() < other.word_.size();
        return word_ < other.word_;
    }

private:
    friend class CoxeterGroup;
    Element(Word w, GenSet left, GenSet right)
        : word_(std::move(w)), left_(left), right_(right) {}

    Word word_;
    GenSet left_ = 0;
    GenSet right_ = 0;
};

struct ElementHash {
    std::size_t operator()(const Element& e) const { return WordHash{}(e.word()); }
};

// w = quotient · parabolic (right split, quotient ∈ W^J, parabolic ∈ W_J) or
// w = parabolic · quotient (left split, parabolic ∈ W_J, quotient ∈ ᴶW).
struct ParabolicSplit {
    Element quotient;
    Element parabolic;
    Side side = Side::Right;
    GenSet J = 0;
};

class CoxeterGroup {
public:
    explicit CoxeterGroup(CoxeterMatrix matrix, std::size_t closure_budget = 2'000'000);

    const CoxeterMatrix& matrix() const { return matrix_; }
    int rank() const { return matrix_.rank(); }
    GenSet all_generators() const { return (GenSet{1} << rank()) - 1; }

    Element identity() const { return Element{}; }
    Element generator(Gen s) const;

    // Canonicalize an arbitrary word. Throws ClosureBudgetExceeded when the
    // braid closure grows past the node budget.
    Element element(const Word& letters) const;

    Element mult(const Element& u, Gen s, Side side = Side::Right) const;
    Element mult(const Element& u, const Element& v) const;
    Element inverse(const Element& u) const;

    // Bruhat order, by the memoized descent-lifting recursion.
    bool bruhat_leq(const Element& u, const Element& w) const;
    bool covered_by(const Element& u, const Element& w) const {
        return w.length() == u.length() + 1 && bruhat_leq(u, w);
    }

    // ℓ(u) + ℓ(u⁻¹w) = ℓ(w), resp. ℓ(wu⁻¹) + ℓ(u) = ℓ(w).
    bool is_prefix(const Element& u, const Element& w) const;
    bool is_suffix(const Element& u, const Element& w) const;

    // C_s = {c : cs = sc}; contains s itself.
    GenSet commuting_set(Gen s) const;

    // K with J ∪ K = S and J ∩ K = C_s. Requires C_s ⊆ J (throws InvalidJ).
    GenSet s_complement(GenSet J, Gen s) const;

    ParabolicSplit parabolic_split(const Element& w, GenSet J, Side side) const;
    // w^J / ᴶw
    Element quotient_part(const Element& w, GenSet J, Side side) const {
        return parabolic_split(w, J, side).quotient;
    }
    // w_J / _Jw
    Element parabolic_part(const Element& w, GenSet J, Side side) const {
        return parabolic_split(w, J, side).parabolic;
    }

    // The unique maximal element of [e,w] ∩ W_J.
    Element parabolic_interval_max(const Element& w, GenSet J) const;

    // All group elements of length ≤ max_length, in canonical order.
    std::vector<Element> elements_up_to_length(int max_length,
                                               std::size_t max_count = 1'000'000) const;

private:
    struct ElemInfo {
        GenSet left = 0;
        GenSet right = 0;
    };

    Word reduce(Word input) const;
    const ElemInfo& info(const Word& canonical) const;
    Element make(const Word& canonical) const;
    void check_letters(const Word& w) const;

    CoxeterMatrix matrix_;
    std::size_t closure_budget_;

    mutable std::unordered_map<Word, ElemInfo, WordHash> info_;
    mutable std::unordered_map<Word, Word, WordHash> step_;     // word ± one letter → canonical
    mutable std::unordered_map<Word, Word, WordHash> inverse_;  // canonical → canonical of inverse
    mutable std::unordered_map<WordPair, bool, WordPairHash> leq_;
};

GenSet support(const Element& w);
// Supp(w) ∩ H
GenSet support(const Element& w, GenSet H);

}  // namespace coxmatch

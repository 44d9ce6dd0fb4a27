#pragma once

// Lower Bruhat intervals [e,w] as explicit graded posets, matchings of their
// Hasse diagrams, brute-force enumeration of (special) matchings, abstract
// posets, and poset isomorphism.

#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "coxmatch/coxeter.hpp"

namespace coxmatch {

// The interval [e,w] with elements in canonical order (by length, then word),
// cover relations, and a reachability table for order queries.
class BruhatInterval {
public:
    BruhatInterval(const CoxeterGroup& group, Element top, std::size_t element_budget = 50'000);

    const CoxeterGroup& group() const { return *group_; }
    const Element& top() const { return top_; }
    int size() const { return static_cast<int>(elements_.size()); }
    int height() const { return top_.length(); }

    const Element& element(int i) const { return elements_[i]; }
    const std::vector<Element>& elements() const { return elements_; }
    // Index of u in the interval, or -1 when u ∉ [e,w].
    int index_of(const Element& u) const;
    int rank(int i) const { return elements_[i].length(); }
    const std::vector<int>& at_rank(int r) const { return by_rank_[r]; }

    const std::vector<int>& covers_above(int i) const { return up_[i]; }
    const std::vector<int>& covers_below(int i) const { return down_[i]; }
    // All cover pairs (lower, upper), lexicographically sorted.
    std::vector<std::pair<int, int>> cover_pairs() const;

    bool leq(int i, int j) const;

private:
    const CoxeterGroup* group_;
    Element top_;
    std::vector<Element> elements_;
    std::unordered_map<Word, int, WordHash> index_;
    std::vector<std::vector<int>> by_rank_;
    std::vector<std::vector<int>> up_, down_;
    // Downset bitsets, built when the interval is small enough.
    std::vector<std::vector<std::uint64_t>> downset_;
};

using IntervalPtr = std::shared_ptr<const BruhatInterval>;

IntervalPtr build_interval(const CoxeterGroup& group, const Element& top,
                           std::size_t element_budget = 50'000);

// An involution on interval indices pairing each element with a Hasse
// neighbor. Construction validates the involution and the edges.
class Matching {
public:
    Matching(IntervalPtr interval, std::vector<int> partner);

    const BruhatInterval& interval() const { return *interval_; }
    IntervalPtr interval_ptr() const { return interval_; }
    const std::vector<int>& partners() const { return partner_; }
    int partner(int i) const { return partner_[i]; }
    bool goes_up(int i) const { return interval_->rank(partner_[i]) > interval_->rank(i); }

    // Image of an element of the interval. Throws NotInDomain when u is not
    // in the interval.
    Element image(const Element& u) const;

    // Extensional equality on the same interval.
    bool operator==(const Matching& other) const { return partner_ == other.partner_; }

private:
    IntervalPtr interval_;
    std::vector<int> partner_;
};

// u ⊲ v ⟹ M(u) ≤ M(v) for every cover with M(u) ≠ v.
bool is_special(const Matching& m);

// ρ_s (right) or λ_s (left). Throws NotADescent when s is not a descent of
// the top element on the requested side.
Matching multiplication_matching(const IntervalPtr& interval, Gen s, Side side);

// Whether m equals ρ_s or λ_s for some s (pointwise).
bool is_multiplication_matching(const Matching& m);

// All perfect matchings of the Hasse diagram, in deterministic backtracking
// order. With special_only, prunes and keeps the special ones.
std::vector<Matching> enumerate_matchings(const IntervalPtr& interval,
                                          std::size_t element_budget = 2'000);
std::vector<Matching> enumerate_special_matchings(const IntervalPtr& interval,
                                                  std::size_t element_budget = 2'000);

// A finite graded poset with a unique minimum, given by its cover digraph.
class AbstractPoset {
public:
    AbstractPoset(int size, std::vector<std::pair<int, int>> covers);

    static AbstractPoset of(const BruhatInterval& interval);

    // Node i of this poset becomes node new_index_of_old[i].
    AbstractPoset relabeled(const std::vector<int>& new_index_of_old) const;

    int size() const { return size_; }
    int rank(int i) const { return rank_[i]; }
    int min_element() const { return min_; }
    int top_rank() const { return top_rank_; }
    const std::vector<std::pair<int, int>>& covers() const { return covers_; }
    const std::vector<int>& covers_above(int i) const { return up_[i]; }
    const std::vector<int>& covers_below(int i) const { return down_[i]; }
    bool leq(int i, int j) const;
    std::vector<int> at_rank(int r) const;

private:
    int size_;
    std::vector<std::pair<int, int>> covers_;
    std::vector<std::vector<int>> up_, down_;
    std::vector<int> rank_;
    int min_ = 0;
    int top_rank_ = 0;
    std::vector<std::vector<std::uint64_t>> downset_;
};

// Special matchings of an abstract poset (partner vectors), brute force.
std::vector<std::vector<int>> enumerate_special_matchings(const AbstractPoset& poset);
std::optional<std::vector<int>> find_special_matching(const AbstractPoset& poset);
bool is_special(const AbstractPoset& poset, const std::vector<int>& partner);

// A rank-preserving poset isomorphism p → q, if one exists.
std::optional<std::vector<int>> poset_isomorphism(const AbstractPoset& p, const AbstractPoset& q);

}  // namespace coxmatch

#include "coxmatch/interval.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <tuple>
#include <unordered_set>

namespace coxmatch {

namespace {

std::vector<std::vector<std::uint64_t>> build_downsets(
    int n, const std::vector<std::vector<int>>& down) {
    // downset[j] bit i set ⟺ i ≤ j. Indices must be sorted so that covers
    // point from smaller to larger index.
    const int words = (n + 63) / 64;
    std::vector<std::vector<std::uint64_t>> bits(n, std::vector<std::uint64_t>(words, 0));
    for (int j = 0; j < n; ++j) {
        bits[j][j / 64] |= std::uint64_t{1} << (j % 64);
        for (int d : down[j])
            for (int k = 0; k < words; ++k) bits[j][k] |= bits[d][k];
    }
    return bits;
}

constexpr int kDownsetLimit = 4096;

}  // namespace

BruhatInterval::BruhatInterval(const CoxeterGroup& group, Element top,
                               std::size_t element_budget)
    : group_(&group), top_(std::move(top)) {
    // Subword closure: every element of [e,w] is spelled by a subword of the
    // canonical word of w, and every subword spells an element of [e,w].
    std::unordered_set<Word, WordHash> seen{Word{}};
    elements_.push_back(group.identity());
    for (Gen g : top_.word()) {
        const std::size_t n = elements_.size();
        for (std::size_t i = 0; i < n; ++i) {
            Element v = group.mult(elements_[i], g, Side::Right);
            if (seen.insert(v.word()).second) {
                if (elements_.size() >= element_budget)
                    throw BudgetExceeded("interval [e,w] exceeded " +
                                         std::to_string(element_budget) + " elements");
                elements_.push_back(std::move(v));
            }
        }
    }
    std::sort(elements_.begin(), elements_.end());

    const int n = size();
    index_.reserve(n);
    for (int i = 0; i < n; ++i) index_.emplace(elements_[i].word(), i);

    by_rank_.assign(height() + 1, {});
    for (int i = 0; i < n; ++i) by_rank_[rank(i)].push_back(i);

    up_.assign(n, {});
    down_.assign(n, {});
    for (int j = 0; j < n; ++j) {
        const int r = rank(j);
        if (r == 0) continue;
        for (int i : by_rank_[r - 1]) {
            if (group.bruhat_leq(elements_[i], elements_[j])) {
                up_[i].push_back(j);
                down_[j].push_back(i);
            }
        }
    }
    if (n <= kDownsetLimit) downset_ = build_downsets(n, down_);
}

int BruhatInterval::index_of(const Element& u) const {
    auto it = index_.find(u.word());
    return it == index_.end() ? -1 : it->second;
}

std::vector<std::pair<int, int>> BruhatInterval::cover_pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < size(); ++i)
        for (int j : up_[i]) out.emplace_back(i, j);
    std::sort(out.begin(), out.end());
    return out;
}

bool BruhatInterval::leq(int i, int j) const {
    if (!downset_.empty())
        return (downset_[j][i / 64] >> (i % 64)) & 1u;
    return group_->bruhat_leq(elements_[i], elements_[j]);
}

IntervalPtr build_interval(const CoxeterGroup& group, const Element& top,
                           std::size_t element_budget) {
    return std::make_shared<BruhatInterval>(group, top, element_budget);
}

Matching::Matching(IntervalPtr interval, std::vector<int> partner)
    : interval_(std::move(interval)), partner_(std::move(partner)) {
    const BruhatInterval& I = *interval_;
    if (static_cast<int>(partner_.size()) != I.size())
        throw NotAMatching("partner vector size does not match the interval");
    for (int i = 0; i < I.size(); ++i) {
        const int j = partner_[i];
        if (j < 0 || j >= I.size() || j == i || partner_[j] != i)
            throw NotAMatching("partner map is not a fixed-point-free involution");
        const int lo = std::min(i, j), hi = std::max(i, j);
        const auto& ups = I.covers_above(lo);
        if (std::find(ups.begin(), ups.end(), hi) == ups.end())
            throw NotAMatching("matched pair {" + word_to_string(I.element(lo).word()) + ", " +
                               word_to_string(I.element(hi).word()) + "} is not a Hasse edge");
    }
}

Element Matching::image(const Element& u) const {
    const int i = interval_->index_of(u);
    if (i < 0)
        throw NotInDomain("element " + word_to_string(u.word()) + " is not in the interval");
    return interval_->element(partner_[i]);
}

bool is_special(const Matching& m) {
    const BruhatInterval& I = m.interval();
    for (int u = 0; u < I.size(); ++u)
        for (int v : I.covers_above(u))
            if (m.partner(u) != v && !I.leq(m.partner(u), m.partner(v))) return false;
    return true;
}

Matching multiplication_matching(const IntervalPtr& interval, Gen s, Side side) {
    const BruhatInterval& I = *interval;
    if (!gen_in(I.top().descents(side), s))
        throw NotADescent("generator " + std::to_string(s) + " is not a " +
                          (side == Side::Left ? std::string("left") : std::string("right")) +
                          " descent of " + word_to_string(I.top().word()));
    std::vector<int> partner(I.size());
    for (int i = 0; i < I.size(); ++i) {
        const int j = I.index_of(I.group().mult(I.element(i), s, side));
        if (j < 0) throw std::logic_error("multiplication image left the interval");
        partner[i] = j;
    }
    return Matching(interval, std::move(partner));
}

bool is_multiplication_matching(const Matching& m) {
    const BruhatInterval& I = m.interval();
    for (Side side : {Side::Right, Side::Left}) {
        for (Gen s : gens_in(I.top().descents(side))) {
            bool same = true;
            for (int i = 0; i < I.size() && same; ++i)
                same = I.index_of(I.group().mult(I.element(i), s, side)) == m.partner(i);
            if (same) return true;
        }
    }
    return false;
}

namespace {

// Shared backtracking over any graded poset: vertices are visited in rank
// order, so the first unmatched vertex can only be paired upward.
struct MatchSearch {
    int n;
    const std::vector<std::vector<int>>* up;
    const std::vector<std::vector<int>>* down;
    std::function<bool(int, int)> leq;
    std::vector<int> order;  // vertices sorted by rank
    bool special_only = false;
    bool stop_at_first = false;

    std::vector<int> partner;
    std::vector<std::vector<int>> results;

    // Check the special condition on every cover adjacent to the freshly
    // matched pair whose endpoints are both matched already.
    bool still_special(int a, int b) const {
        for (int x : {a, b}) {
            for (int y : (*up)[x]) {
                if (partner[y] < 0) continue;
                if (partner[x] != y && !leq(partner[x], partner[y])) return false;
            }
            for (int d : (*down)[x]) {
                if (partner[d] < 0) continue;
                if (partner[d] != x && !leq(partner[d], partner[x])) return false;
            }
        }
        return true;
    }

    bool run(int pos) {
        while (pos < n && partner[order[pos]] >= 0) ++pos;
        if (pos == n) {
            results.push_back(partner);
            return stop_at_first;
        }
        const int u = order[pos];
        for (int v : (*up)[u]) {
            if (partner[v] >= 0) continue;
            partner[u] = v;
            partner[v] = u;
            if (!special_only || still_special(u, v))
                if (run(pos + 1)) return true;
            partner[u] = -1;
            partner[v] = -1;
        }
        return false;
    }

    std::vector<std::vector<int>> search() {
        if (n % 2) return {};
        partner.assign(n, -1);
        run(0);
        return std::move(results);
    }
};

std::vector<Matching> run_interval_match(const IntervalPtr& interval, bool special_only,
                                         std::size_t element_budget) {
    const BruhatInterval& I = *interval;
    if (static_cast<std::size_t>(I.size()) > element_budget)
        throw BudgetExceeded("matching enumeration budget of " + std::to_string(element_budget) +
                             " elements exceeded (interval has " + std::to_string(I.size()) + ")");
    std::vector<std::vector<int>> up(I.size()), down(I.size());
    for (int i = 0; i < I.size(); ++i) {
        up[i] = I.covers_above(i);
        down[i] = I.covers_below(i);
    }
    MatchSearch ms;
    ms.n = I.size();
    ms.up = &up;
    ms.down = &down;
    ms.leq = [&I](int a, int b) { return I.leq(a, b); };
    ms.order.resize(I.size());
    for (int i = 0; i < I.size(); ++i) ms.order[i] = i;  // interval indices are rank-sorted
    ms.special_only = special_only;
    std::vector<Matching> out;
    for (auto& p : ms.search()) out.emplace_back(interval, std::move(p));
    return out;
}

}  // namespace

std::vector<Matching> enumerate_matchings(const IntervalPtr& interval,
                                          std::size_t element_budget) {
    return run_interval_match(interval, false, element_budget);
}

std::vector<Matching> enumerate_special_matchings(const IntervalPtr& interval,
                                                  std::size_t element_budget) {
    auto out = run_interval_match(interval, true, element_budget);
    for (const Matching& m : out)
        if (!is_special(m)) throw std::logic_error("pruned search produced a non-special matching");
    return out;
}

AbstractPoset::AbstractPoset(int size, std::vector<std::pair<int, int>> covers)
    : size_(size), covers_(std::move(covers)) {
    if (size_ <= 0) throw std::invalid_argument("poset must be non-empty");
    if (size_ > kDownsetLimit)
        throw BudgetExceeded("abstract poset larger than " + std::to_string(kDownsetLimit));
    std::sort(covers_.begin(), covers_.end());
    covers_.erase(std::unique(covers_.begin(), covers_.end()), covers_.end());
    up_.assign(size_, {});
    down_.assign(size_, {});
    for (auto [a, b] : covers_) {
        if (a < 0 || b < 0 || a >= size_ || b >= size_ || a == b)
            throw std::invalid_argument("cover endpoints out of range");
        up_[a].push_back(b);
        down_[b].push_back(a);
    }
    min_ = -1;
    for (int i = 0; i < size_; ++i) {
        if (down_[i].empty()) {
            if (min_ >= 0) throw std::invalid_argument("poset has more than one minimal element");
            min_ = i;
        }
    }
    if (min_ < 0) throw std::invalid_argument("poset has no minimal element (cover cycle)");

    // Rank by propagation from the minimum; all lower covers of a node must
    // agree, otherwise the cover digraph is not graded.
    rank_.assign(size_, -1);
    rank_[min_] = 0;
    std::vector<int> pending(size_, 0);
    for (int i = 0; i < size_; ++i) pending[i] = static_cast<int>(down_[i].size());
    std::vector<int> queue{min_};
    std::size_t head = 0;
    int done = 1;
    while (head < queue.size()) {
        const int x = queue[head++];
        for (int y : up_[x]) {
            if (rank_[y] < 0)
                rank_[y] = rank_[x] + 1;
            else if (rank_[y] != rank_[x] + 1)
                throw std::invalid_argument("cover digraph is not graded");
            if (--pending[y] == 0) {
                queue.push_back(y);
                ++done;
            }
        }
    }
    if (done != size_) throw std::invalid_argument("cover digraph is not graded");
    top_rank_ = *std::max_element(rank_.begin(), rank_.end());

    // Downsets need cover edges oriented from lower to higher index; remap
    // through a rank-sorted order.
    std::vector<int> order(size_);
    for (int i = 0; i < size_; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return rank_[a] != rank_[b] ? rank_[a] < rank_[b] : a < b;
    });
    std::vector<int> pos(size_);
    for (int i = 0; i < size_; ++i) pos[order[i]] = i;
    std::vector<std::vector<int>> down_sorted(size_);
    for (auto [a, b] : covers_) down_sorted[pos[b]].push_back(pos[a]);
    auto bits = build_downsets(size_, down_sorted);
    downset_.assign(size_, {});
    const int words = (size_ + 63) / 64;
    for (int i = 0; i < size_; ++i) {
        downset_[i].assign(words, 0);
        for (int j = 0; j < size_; ++j)
            if ((bits[pos[i]][pos[j] / 64] >> (pos[j] % 64)) & 1u)
                downset_[i][j / 64] |= std::uint64_t{1} << (j % 64);
    }
}

bool AbstractPoset::leq(int i, int j) const {
    return (downset_[j][i / 64] >> (i % 64)) & 1u;
}

std::vector<int> AbstractPoset::at_rank(int r) const {
    std::vector<int> out;
    for (int i = 0; i < size_; ++i)
        if (rank_[i] == r) out.push_back(i);
    return out;
}

AbstractPoset AbstractPoset::of(const BruhatInterval& interval) {
    return AbstractPoset(interval.size(), interval.cover_pairs());
}

AbstractPoset AbstractPoset::relabeled(const std::vector<int>& new_index_of_old) const {
    if (static_cast<int>(new_index_of_old.size()) != size_)
        throw std::invalid_argument("relabeling has wrong size");
    std::vector<bool> hit(size_, false);
    for (int i : new_index_of_old) {
        if (i < 0 || i >= size_ || hit[i])
            throw std::invalid_argument("relabeling is not a permutation");
        hit[i] = true;
    }
    std::vector<std::pair<int, int>> covers;
    covers.reserve(covers_.size());
    for (auto [a, b] : covers_)
        covers.emplace_back(new_index_of_old[a], new_index_of_old[b]);
    return AbstractPoset(size_, std::move(covers));
}

bool is_special(const AbstractPoset& poset, const std::vector<int>& partner) {
    for (auto [u, v] : poset.covers())
        if (partner[u] != v && !poset.leq(partner[u], partner[v])) return false;
    return true;
}

namespace {

std::vector<std::vector<int>> match_abstract(const AbstractPoset& p, bool stop_at_first) {
    MatchSearch ms;
    ms.n = p.size();
    std::vector<std::vector<int>> up(p.size()), down(p.size());
    for (int i = 0; i < p.size(); ++i) {
        up[i] = p.covers_above(i);
        down[i] = p.covers_below(i);
    }
    ms.up = &up;
    ms.down = &down;
    ms.leq = [&p](int a, int b) { return p.leq(a, b); };
    ms.order.resize(p.size());
    for (int i = 0; i < p.size(); ++i) ms.order[i] = i;
    std::sort(ms.order.begin(), ms.order.end(), [&](int a, int b) {
        return p.rank(a) != p.rank(b) ? p.rank(a) < p.rank(b) : a < b;
    });
    ms.special_only = true;
    ms.stop_at_first = stop_at_first;
    return ms.search();
}

}  // namespace

std::vector<std::vector<int>> enumerate_special_matchings(const AbstractPoset& poset) {
    auto out = match_abstract(poset, false);
    for (const auto& p : out)
        if (!is_special(poset, p))
            throw std::logic_error("pruned search produced a non-special matching");
    return out;
}

std::optional<std::vector<int>> find_special_matching(const AbstractPoset& poset) {
    auto out = match_abstract(poset, true);
    if (out.empty()) return std::nullopt;
    return out.front();
}

namespace {

// Iterated neighborhood refinement: a node's color combines its rank with the
// sorted colors of its lower and upper covers. Colors are assigned in one
// shared space so they are comparable across the two posets.
std::pair<std::vector<int>, std::vector<int>> refine_colors(const AbstractPoset& p,
                                                            const AbstractPoset& q) {
    std::vector<int> cp(p.size()), cq(q.size());
    for (int i = 0; i < p.size(); ++i) cp[i] = p.rank(i);
    for (int i = 0; i < q.size(); ++i) cq[i] = q.rank(i);
    const int rounds = p.size();
    int prev_count = -1;
    for (int r = 0; r < rounds; ++r) {
        using Sig = std::tuple<int, std::vector<int>, std::vector<int>>;
        auto signature = [](const AbstractPoset& poset, const std::vector<int>& col, int i) {
            std::vector<int> lo, hi;
            for (int d : poset.covers_below(i)) lo.push_back(col[d]);
            for (int u : poset.covers_above(i)) hi.push_back(col[u]);
            std::sort(lo.begin(), lo.end());
            std::sort(hi.begin(), hi.end());
            return Sig{col[i], std::move(lo), std::move(hi)};
        };
        std::map<Sig, int> ids;
        auto id_of = [&ids](Sig s) {
            auto [it, _] = ids.emplace(std::move(s), static_cast<int>(ids.size()));
            return it->second;
        };
        std::vector<int> np(p.size()), nq(q.size());
        for (int i = 0; i < p.size(); ++i) np[i] = id_of(signature(p, cp, i));
        for (int i = 0; i < q.size(); ++i) nq[i] = id_of(signature(q, cq, i));
        cp = std::move(np);
        cq = std::move(nq);
        const int count = static_cast<int>(ids.size());
        if (count == prev_count) break;
        prev_count = count;
    }
    return {cp, cq};
}

struct IsoSearch {
    const AbstractPoset* p;
    const AbstractPoset* q;
    const std::vector<int>* cp;
    const std::vector<int>* cq;
    std::vector<int> order;
    std::vector<int> map;      // p-index → q-index
    std::vector<bool> used;    // q-index taken

    bool consistent(int a, int b) const {
        for (int d : p->covers_below(a)) {
            if (map[d] < 0) continue;
            const auto& qd = q->covers_below(b);
            if (std::find(qd.begin(), qd.end(), map[d]) == qd.end()) return false;
        }
        for (int u : p->covers_above(a)) {
            if (map[u] < 0) continue;
            const auto& qu = q->covers_above(b);
            if (std::find(qu.begin(), qu.end(), map[u]) == qu.end()) return false;
        }
        return true;
    }

    bool run(std::size_t pos) {
        if (pos == order.size()) return true;
        const int a = order[pos];
        for (int b = 0; b < q->size(); ++b) {
            if (used[b] || (*cq)[b] != (*cp)[a]) continue;
            if (!consistent(a, b)) continue;
            map[a] = b;
            used[b] = true;
            if (run(pos + 1)) return true;
            map[a] = -1;
            used[b] = false;
        }
        return false;
    }
};

}  // namespace

std::optional<std::vector<int>> poset_isomorphism(const AbstractPoset& p,
                                                  const AbstractPoset& q) {
    if (p.size() != q.size() || p.covers().size() != q.covers().size() ||
        p.top_rank() != q.top_rank())
        return std::nullopt;
    auto [cp, cq] = refine_colors(p, q);
    {
        std::vector<int> a = cp, b = cq;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) return std::nullopt;
    }
    IsoSearch s;
    s.p = &p;
    s.q = &q;
    s.cp = &cp;
    s.cq = &cq;
    s.order.resize(p.size());
    for (int i = 0; i < p.size(); ++i) s.order[i] = i;
    std::sort(s.order.begin(), s.order.end(), [&](int a, int b) {
        return p.rank(a) != p.rank(b) ? p.rank(a) < p.rank(b) : a < b;
    });
    s.map.assign(p.size(), -1);
    s.used.assign(q.size(), false);
    if (!s.run(0)) return std::nullopt;
    // Covers must map onto covers bijectively; counts are equal, so the
    // forward check suffices.
    for (auto [a, b] : p.covers()) {
        const auto& qu = q.covers_above(s.map[a]);
        if (std::find(qu.begin(), qu.end(), s.map[b]) == qu.end())
            throw std::logic_error("isomorphism search returned a non-isomorphism");
    }
    return s.map;
}

}  // namespace coxmatch

#pragma once

// Clique search in Cayley graphs Cay(G, S) (edges {x, x + s}, s in S) over
// word-packed bitsets.
//
// The branch-and-bound walks candidates in increasing element index, so the
// first clique of a given size that it meets is the lexicographically least
// one. Pruning uses a greedy colouring of the candidate set. Neighbourhoods
// come from a materialized adjacency matrix for small groups and from the
// connection set on the fly otherwise.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "turanlab/config.hpp"
#include "turanlab/group.hpp"

namespace turanlab {

class Bitset {
public:
    Bitset() = default;
    explicit Bitset(std::size_t n, bool value = false)
        : n_(n), words_((n + 63) / 64, value ? ~std::uint64_t{0} : 0) {
        trim();
    }

    std::size_t size() const { return n_; }
    bool test(std::size_t i) const { return words_[i >> 6] >> (i & 63) & 1u; }
    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    bool any() const {
        return std::any_of(words_.begin(), words_.end(), [](auto w) { return w != 0; });
    }

    /// First set position at or after `from`, or size() if none.
    std::size_t next(std::size_t from) const {
        if (from >= n_) return n_;
        std::size_t k = from >> 6;
        std::uint64_t w = words_[k] & (~std::uint64_t{0} << (from & 63));
        for (;;) {
            if (w) return std::min(n_, (k << 6) + static_cast<std::size_t>(std::countr_zero(w)));
            if (++k == words_.size()) return n_;
            w = words_[k];
        }
    }
    std::size_t first() const { return next(0); }

    Bitset& operator&=(const Bitset& o) {
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
        return *this;
    }
    Bitset& operator|=(const Bitset& o) {
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
        return *this;
    }
    Bitset& and_not(const Bitset& o) {
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
        return *this;
    }
    /// Clears every position at or below i.
    void clear_through(std::size_t i) {
        const std::size_t k = i >> 6;
        for (std::size_t j = 0; j < k; ++j) words_[j] = 0;
        const std::size_t b = i & 63;
        words_[k] &= b == 63 ? 0 : (~std::uint64_t{0} << (b + 1));
    }

    std::vector<std::size_t> indices() const {
        std::vector<std::size_t> out;
        for (std::size_t i = first(); i < n_; i = next(i + 1)) out.push_back(i);
        return out;
    }

    friend bool operator==(const Bitset& a, const Bitset& b) { return a.n_ == b.n_ && a.words_ == b.words_; }

private:
    void trim() {
        if (n_ % 64 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
    }

    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Cay(G, S) for a symmetric connection set S not containing 0.
class CayleyGraph {
public:
    static constexpr std::size_t kMaterializeLimit = 2048;

    CayleyGraph(FiniteAbelianGroup g, const std::vector<std::size_t>& connection)
        : group_(std::move(g)), in_s_(group_.order(), false) {
        for (auto s : connection) {
            if (s >= group_.order()) throw Error(ErrorCode::invalid_argument, "connection element outside group");
            if (s == 0) throw Error(ErrorCode::invalid_argument, "connection set contains 0");
            in_s_.set(s);
        }
        for (auto s : in_s_.indices())
            if (!in_s_.test(group_.negate(s))) throw Error(ErrorCode::invalid_argument, "connection set is not symmetric");
        s_ = in_s_.indices();
        for (std::size_t x = 1; x < group_.order(); ++x)
            if (!in_s_.test(x)) non_s_.push_back(x);
        if (group_.order() <= kMaterializeLimit) {
            rows_.assign(group_.order(), Bitset(group_.order()));
            for (std::size_t v = 0; v < group_.order(); ++v)
                for (auto s : s_) rows_[v].set(group_.add(v, s));
        }
    }

    const FiniteAbelianGroup& group() const { return group_; }
    std::size_t order() const { return group_.order(); }
    bool materialized() const { return !rows_.empty(); }
    const std::vector<std::size_t>& connection() const { return s_; }

    bool adjacent(std::size_t u, std::size_t v) const { return u != v && in_s_.test(group_.subtract(u, v)); }

    /// cand <- cand intersected with N(v).
    void keep_neighbors(Bitset& cand, std::size_t v) const {
        if (materialized()) {
            cand &= rows_[v];
            return;
        }
        if (s_.size() <= non_s_.size()) {
            Bitset nb(order());
            for (auto s : s_) nb.set(group_.add(v, s));
            cand &= nb;
        } else {
            cand.reset(v);
            for (auto s : non_s_) cand.reset(group_.add(v, s));
        }
    }

    /// cand <- cand minus N(v) (v itself is kept).
    void drop_neighbors(Bitset& cand, std::size_t v) const {
        if (materialized()) {
            cand.and_not(rows_[v]);
            return;
        }
        if (s_.size() <= non_s_.size()) {
            for (auto s : s_) cand.reset(group_.add(v, s));
        } else {
            Bitset keep(order());
            keep.set(v);
            for (auto s : non_s_) keep.set(group_.add(v, s));
            cand &= keep;
        }
    }

private:
    FiniteAbelianGroup group_;
    Bitset in_s_;
    std::vector<std::size_t> s_, non_s_;
    std::vector<Bitset> rows_;
};

struct CliqueSearchResult {
    std::vector<std::size_t> clique; // sorted element indices
    bool exhausted = false;          // the tree was searched completely
    std::uint64_t nodes = 0;
    double seconds = 0;
};

namespace detail {

class LexCliqueSearch {
public:
    LexCliqueSearch(const CayleyGraph& g, const SearchBudget& budget) : g_(g), budget_(budget) {}

    /// Lexicographically least clique containing `forced`, drawn from `cand`.
    /// With a target size the search stops at the first clique of that size;
    /// otherwise it maximizes, considering only cliques larger than `floor`.
    CliqueSearchResult run(const std::vector<std::size_t>& forced, Bitset cand, std::optional<std::size_t> target,
                           std::size_t floor) {
        start_ = std::chrono::steady_clock::now();
        target_ = target;
        best_size_ = target ? *target - 1 : floor;
        current_ = forced;
        for (auto v : forced) g_.keep_neighbors(cand, v);
        if (!target || forced.size() < *target) {
            if (forced.size() > best_size_) record();
            expand(cand);
        } else if (forced.size() == *target) {
            record();
        }
        CliqueSearchResult res;
        res.clique = best_;
        std::sort(res.clique.begin(), res.clique.end());
        res.exhausted = !stopped_;
        res.nodes = nodes_;
        res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        return res;
    }

private:
    void record() {
        best_ = current_;
        best_size_ = current_.size();
        if (target_ && best_size_ >= *target_) done_ = true;
    }

    bool out_of_budget() {
        if (nodes_ >= budget_.max_nodes) return true;
        if ((nodes_ & 255u) == 0 && std::chrono::steady_clock::now() - start_ > budget_.time_limit) return true;
        return false;
    }

    // Greedy colouring in index order; stops once `enough` colours are used.
    std::size_t colour_bound(const Bitset& cand, std::size_t enough) const {
        Bitset left = cand;
        std::size_t colours = 0;
        while (left.any() && colours < enough) {
            ++colours;
            Bitset q = left;
            for (std::size_t v = q.first(); v < q.size(); v = q.next(v + 1)) {
                left.reset(v);
                g_.drop_neighbors(q, v);
            }
        }
        return colours;
    }

    void expand(Bitset cand) {
        if (done_ || stopped_) return;
        ++nodes_;
        if (out_of_budget()) {
            stopped_ = true;
            return;
        }
        const std::size_t have = current_.size();
        // need at least best_size_ + 1 - have more vertices
        const std::size_t need = best_size_ + 1 - std::min(best_size_ + 1, have);
        if (need == 0) {
            record();
            if (done_) return;
        }
        std::size_t remaining = cand.count();
        if (remaining < need) return;
        if (colour_bound(cand, need) < need) return;
        for (std::size_t v = cand.first(); v < cand.size(); v = cand.next(v + 1)) {
            const std::size_t need_now = best_size_ + 1 - std::min(best_size_ + 1, have);
            if (remaining < need_now) return;
            --remaining;
            Bitset child = cand;
            child.clear_through(v);
            g_.keep_neighbors(child, v);
            current_.push_back(v);
            if (have + 1 > best_size_) record();
            if (done_) return;
            if (child.any()) expand(std::move(child));
            current_.pop_back();
            if (done_ || stopped_) return;
        }
    }

    const CayleyGraph& g_;
    SearchBudget budget_;
    std::chrono::steady_clock::time_point start_;
    std::optional<std::size_t> target_;
    std::size_t best_size_ = 0;
    std::vector<std::size_t> current_, best_;
    std::uint64_t nodes_ = 0;
    bool stopped_ = false, done_ = false;
};

} // namespace detail

/// Maximum clique containing `forced`; only cliques with more than `floor`
/// vertices are reported (an empty clique means none was found).
inline CliqueSearchResult max_clique(const CayleyGraph& g, const std::vector<std::size_t>& forced, std::size_t floor,
                                     const SearchBudget& budget) {
    return detail::LexCliqueSearch(g, budget).run(forced, Bitset(g.order(), true), std::nullopt, floor);
}

/// First clique of exactly `size` vertices containing `forced`, in lexicographic order.
inline CliqueSearchResult find_clique(const CayleyGraph& g, const std::vector<std::size_t>& forced, std::size_t size,
                                      const SearchBudget& budget) {
    if (size == 0) throw Error(ErrorCode::invalid_argument, "clique size must be positive");
    auto res = detail::LexCliqueSearch(g, budget).run(forced, Bitset(g.order(), true), size, 0);
    if (res.clique.size() != size) res.clique.clear();
    return res;
}

} // namespace turanlab

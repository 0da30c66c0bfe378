#pragma once

// Packing sets and tilings in finite abelian groups.
//
// A packing set for Omega is a set Lambda with (Lambda - Lambda) cap Omega = {0};
// it bounds the Turan constant by |G| / |Lambda|. Packing sets are the
// independent sets of Cay(G, Omega \ {0}), i.e. cliques of the complementary
// Cayley graph, and are searched for with the clique engine.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "turanlab/bound_report.hpp"
#include "turanlab/cayley_search.hpp"
#include "turanlab/group.hpp"
#include "turanlab/turan_lp.hpp"

namespace turanlab {

struct PackingCheck {
    bool ok = true;
    std::optional<std::pair<std::size_t, std::size_t>> violation; // (later, earlier) with difference in Omega
};

inline void require_distinct(const std::vector<std::size_t>& xs, const char* what) {
    std::vector<std::size_t> s = xs;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
        throw Error(ErrorCode::invalid_argument, std::string(what) + " contains a repeated element");
}

/// Exhaustive pairwise check of (Lambda - Lambda) cap Omega = {0}.
inline PackingCheck check_packing_set(const SymmetricDomain& omega, const std::vector<std::size_t>& lambda) {
    const auto& g = omega.group();
    for (auto x : lambda)
        if (x >= g.order()) throw Error(ErrorCode::invalid_argument, "packing element outside group");
    require_distinct(lambda, "packing set");
    PackingCheck out;
    for (std::size_t i = 1; i < lambda.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (omega.contains(g.subtract(lambda[i], lambda[j]))) {
                out.ok = false;
                out.violation = std::make_pair(lambda[i], lambda[j]);
                return out;
            }
    return out;
}

/// |G| / |Lambda| for a verified packing set.
inline BoundReport packing_bound(const SymmetricDomain& omega, const std::vector<std::size_t>& lambda) {
    const auto& g = omega.group();
    if (lambda.empty()) throw Error(ErrorCode::invalid_argument, "packing set is empty");
    const auto chk = check_packing_set(omega, lambda);
    if (!chk.ok)
        throw Error(ErrorCode::hypothesis_failed,
                    "not a packing set: " + format_element(g.element(chk.violation->first)) + " - " +
                        format_element(g.element(chk.violation->second)) + " lies in the domain");
    auto rep = BoundReport::upper(BoundMethod::packing, Rational(static_cast<long long>(g.order()),
                                                                 static_cast<long long>(lambda.size())));
    rep.certificate["lambda"] = elements_json(g, lambda);
    return rep;
}

enum class Maximality { proven_max, greedy_only };

inline const char* to_string(Maximality m) { return m == Maximality::proven_max ? "proven-max" : "greedy-only"; }

struct PackingSet {
    FiniteAbelianGroup group;
    std::vector<std::size_t> elements; // sorted
    bool verified = false;
    Maximality maximality = Maximality::greedy_only;
    std::uint64_t nodes = 0;
    double seconds = 0;
};

namespace detail {

// Lowest-index-first greedy packing set, then (1,2)-swaps: drop one element
// and insert two that conflict only with it, until no swap applies.
inline std::vector<std::size_t> greedy_packing(const SymmetricDomain& omega) {
    const auto& g = omega.group();
    const std::size_t n = g.order();
    std::vector<std::size_t> conflicts; // Omega \ {0}
    for (auto x : omega.elements())
        if (x != 0) conflicts.push_back(x);

    std::vector<bool> in(n, false);
    std::vector<std::size_t> tight(n, 0); // members of Lambda within u + Omega\{0}
    auto add = [&](std::size_t v) {
        in[v] = true;
        for (auto w : conflicts) ++tight[g.add(v, w)];
    };
    auto remove = [&](std::size_t v) {
        in[v] = false;
        for (auto w : conflicts) --tight[g.add(v, w)];
    };
    for (std::size_t x = 0; x < n; ++x)
        if (!in[x] && tight[x] == 0) add(x);

    for (bool improved = true; improved;) {
        improved = false;
        for (std::size_t v = 0; v < n && !improved; ++v) {
            if (!in[v]) continue;
            std::vector<std::size_t> only_v; // outside Lambda, blocked by v alone
            for (auto w : conflicts) {
                const auto u = g.add(v, w);
                if (!in[u] && tight[u] == 1) only_v.push_back(u);
            }
            std::sort(only_v.begin(), only_v.end());
            only_v.erase(std::unique(only_v.begin(), only_v.end()), only_v.end());
            for (std::size_t i = 0; i < only_v.size() && !improved; ++i)
                for (std::size_t j = i + 1; j < only_v.size(); ++j)
                    if (!omega.contains(g.subtract(only_v[i], only_v[j]))) {
                        remove(v);
                        add(only_v[i]);
                        add(only_v[j]);
                        for (std::size_t x = 0; x < n; ++x)
                            if (!in[x] && tight[x] == 0) add(x);
                        improved = true;
                        break;
                    }
        }
    }
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < n; ++x)
        if (in[x]) out.push_back(x);
    return out;
}

// Elements outside Omega (and not 0): the compatibility relation of packings.
inline std::vector<std::size_t> compatible_differences(const SymmetricDomain& omega) {
    std::vector<std::size_t> s;
    for (std::size_t x = 1; x < omega.group().order(); ++x)
        if (!omega.contains(x)) s.push_back(x);
    return s;
}

} // namespace detail

/// Largest packing set found within the budget. Up to `exact_vertex_limit`
/// elements the greedy result seeds an exact branch-and-bound that returns the
/// lexicographically least maximum packing set containing 0; larger groups or
/// an exhausted budget give the best set seen, flagged greedy-only.
inline PackingSet max_packing_set(const SymmetricDomain& omega, const SearchBudget& budget = {}) {
    const auto& g = omega.group();
    PackingSet out{g, detail::greedy_packing(omega), false, Maximality::greedy_only, 0, 0};
    if (g.order() <= budget.exact_vertex_limit) {
        const CayleyGraph graph(g, detail::compatible_differences(omega));
        const auto res = max_clique(graph, {0}, out.elements.size() - 1, budget);
        out.nodes = res.nodes;
        out.seconds = res.seconds;
        if (res.exhausted && res.clique.size() >= out.elements.size()) {
            out.elements = res.clique;
            out.maximality = Maximality::proven_max;
        } else if (res.clique.size() > out.elements.size()) {
            out.elements = res.clique;
        }
    }
    out.verified = check_packing_set(omega, out.elements).ok;
    if (!out.verified) throw Error(ErrorCode::numerical_inconsistency, "packing search produced an invalid set");
    return out;
}

struct TilingCheck {
    bool tiling = false;            // chi_H * chi_Lambda is constant
    std::int64_t level = 0;         // that constant (when tiling)
    bool packing_level_one = false; // every value is at most 1
    std::vector<std::int64_t> counts;
};

/// chi_H * chi_Lambda computed by counting representations h + lambda.
inline TilingCheck check_tiling(const FiniteAbelianGroup& g, const std::vector<std::size_t>& h,
                                const std::vector<std::size_t>& lambda) {
    for (auto x : h)
        if (x >= g.order()) throw Error(ErrorCode::invalid_argument, "tile element outside group");
    for (auto x : lambda)
        if (x >= g.order()) throw Error(ErrorCode::invalid_argument, "translation element outside group");
    require_distinct(h, "tile");
    require_distinct(lambda, "translation set");
    TilingCheck out;
    out.counts.assign(g.order(), 0);
    for (auto x : h)
        for (auto y : lambda) ++out.counts[g.add(x, y)];
    const auto [lo, hi] = std::minmax_element(out.counts.begin(), out.counts.end());
    out.tiling = *lo == *hi;
    out.level = out.tiling ? *lo : 0;
    out.packing_level_one = *hi <= 1;
    return out;
}

/// |H| if H + Lambda tiles G, |G| / |Lambda| if it only packs; requires Omega in H - H.
inline BoundReport tiling_bound(const SymmetricDomain& omega, const std::vector<std::size_t>& h,
                                const std::vector<std::size_t>& lambda) {
    const auto& g = omega.group();
    if (h.empty() || lambda.empty()) throw Error(ErrorCode::invalid_argument, "tile and translation set must be nonempty");
    const auto hh = difference_set(g, h);
    if (!omega.subset_of(hh)) throw Error(ErrorCode::hypothesis_failed, "domain is not contained in H - H");
    const auto t = check_tiling(g, h, lambda);
    if (!t.packing_level_one) throw Error(ErrorCode::hypothesis_failed, "H + Lambda is not a packing at level 1");
    BoundReport rep;
    if (t.tiling) {
        rep = BoundReport::upper(BoundMethod::tiling, Rational(static_cast<long long>(h.size())));
        rep.note = "H + Lambda tiles the group";
    } else {
        rep = BoundReport::upper(BoundMethod::tiling, Rational(static_cast<long long>(g.order()),
                                                               static_cast<long long>(lambda.size())));
        rep.note = "H + Lambda packs but does not tile";
    }
    rep.certificate["H"] = elements_json(g, h);
    rep.certificate["lambda"] = elements_json(g, lambda);
    return rep;
}

} // namespace turanlab

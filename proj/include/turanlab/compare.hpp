#pragma once

// Runs every applicable bound on one finite-group instance and ranks them.
// Nothing here claims tightness; the LP value is the reference.

#include <set>
#include <string>
#include <vector>

#include "turanlab/bound_report.hpp"
#include "turanlab/packing.hpp"
#include "turanlab/spectral.hpp"
#include "turanlab/turan_lp.hpp"

namespace turanlab {

struct BoundHints {
    std::vector<std::vector<std::size_t>> tiles;   // candidate H
    std::vector<std::vector<std::size_t>> spectra; // spectra[i] pairs with tiles[i]; empty means search
    std::vector<std::size_t> lambda;               // packing set, empty means search only
    std::vector<Subgroup> subgroups;
};

struct CompareOptions {
    LpOptions lp{};
    SearchBudget budget{};
    double tol = 1e-9;
    bool run_lp = true;
    bool search_packing = true;
    bool search_spectra = true;
    std::size_t auto_subgroup_limit = 64; // enumerate cyclic subgroups when |G| is at most this
};

struct Comparison {
    std::vector<BoundReport> reports;
    std::vector<std::string> notes;    // hints that did not apply, searches that ran out of budget
    std::vector<std::string> rejected; // supplied certificates that failed verification
    std::optional<PackingSet> packing;
};

namespace detail {

inline std::vector<Subgroup> cyclic_subgroups(const FiniteAbelianGroup& g) {
    std::vector<Subgroup> out;
    std::set<std::vector<std::size_t>> seen;
    for (std::size_t x = 1; x < g.order(); ++x) {
        auto k = subgroup_generated(g, {g.element(x)});
        if (k.order() == g.order()) continue;
        if (seen.insert(k.elements().indices()).second) out.push_back(std::move(k));
    }
    return out;
}

inline std::string describe(const FiniteAbelianGroup& g, const std::vector<std::size_t>& xs) {
    std::string s = "{";
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + format_element(g.element(xs[i]));
    return s + "}";
}

} // namespace detail

inline Comparison compare_bounds(const SymmetricDomain& omega, const BoundHints& hints = {},
                                 const CompareOptions& opt = {}) {
    const auto& g = omega.group();
    Comparison out;
    auto& reps = out.reports;

    auto trivial = BoundReport::upper(BoundMethod::trivial, Rational(static_cast<long long>(omega.size())));
    trivial.note = "|Omega|";
    reps.push_back(trivial);
    reps.push_back(BoundReport::lower(BoundMethod::trivial, Rational(1)));

    if (opt.run_lp) {
        const auto sol = turan_constant(omega, opt.lp);
        for (auto& r : lp_reports(sol)) reps.push_back(std::move(r));
        for (const auto& d : sol.diagnostics) out.notes.push_back("lp: " + d);
    }

    if (!hints.lambda.empty()) {
        try {
            reps.push_back(packing_bound(omega, hints.lambda));
            reps.back().note = "hinted packing set";
        } catch (const Error& e) {
            out.rejected.push_back(std::string("packing hint: ") + e.what());
        }
    }
    if (opt.search_packing) {
        out.packing = max_packing_set(omega, opt.budget);
        auto r = packing_bound(omega, out.packing->elements);
        r.note = std::string("searched packing set, ") + to_string(out.packing->maximality);
        reps.push_back(std::move(r));
        if (out.packing->maximality == Maximality::greedy_only)
            out.notes.push_back("packing search did not prove maximality within the budget");
    }

    for (std::size_t i = 0; i < hints.tiles.size(); ++i) {
        const auto& h = hints.tiles[i];
        const auto label = detail::describe(g, h);
        const auto hh = difference_set(g, h);
        if (!omega.subset_of(hh)) {
            out.notes.push_back("H = " + label + ": domain is not contained in H - H");
            continue;
        }
        // tiling: a translation set for H is a packing set of H - H
        std::vector<std::size_t> lam = hints.lambda;
        if (lam.empty() || !check_tiling(g, h, lam).packing_level_one) {
            if (out.packing && hh.elements() == omega.elements())
                lam = out.packing->elements; // already searched
            else
                lam = max_packing_set(hh, opt.budget).elements;
        }
        try {
            reps.push_back(tiling_bound(omega, h, lam));
        } catch (const Error& e) {
            out.notes.push_back("tiling with H = " + label + ": " + e.what());
        }

        std::vector<std::size_t> t = i < hints.spectra.size() ? hints.spectra[i] : std::vector<std::size_t>{};
        const bool hinted = !t.empty();
        if (!hinted && opt.search_spectra) {
            const auto s = find_spectrum(g, h, opt.budget, opt.tol);
            if (s.spectrum.empty())
                out.notes.push_back("no spectrum found for H = " + label +
                                    (s.exhausted ? " (search exhausted)" : " (budget ran out)"));
            t = s.spectrum;
        }
        if (!t.empty()) {
            try {
                reps.push_back(spectral_bound(omega, h, t, opt.tol));
            } catch (const Error& e) {
                (hinted ? out.rejected : out.notes).push_back("spectral bound with H = " + label + ": " + e.what());
            }
        }
    }

    // chi_H * chi_{-H} is admissible whenever H - H lies inside Omega
    for (const auto& h : hints.tiles) {
        if (!difference_set(g, h).subset_of(omega)) continue;
        try {
            auto r = witness_ratio(autocorrelation(g, h), omega);
            r.exact = Rational(static_cast<long long>(h.size()));
            r.value = static_cast<double>(h.size());
            r.note = "chi_H * chi_{-H}";
            r.certificate["H"] = elements_json(g, h);
            reps.push_back(std::move(r));
        } catch (const Error& e) {
            out.notes.push_back(std::string("witness rejected: ") + e.what());
        }
    }

    auto subgroups = hints.subgroups;
    if (subgroups.empty() && g.order() <= opt.auto_subgroup_limit) subgroups = detail::cyclic_subgroups(g);
    for (const auto& k : subgroups) {
        if (k.order() == 1 || k.order() == g.order()) continue;
        reps.push_back(subgroup_bound(omega, k, opt.lp));
        reps.push_back(quotient_bound(omega, k, opt.lp));
    }

    mark_best(reps);
    return out;
}

} // namespace turanlab

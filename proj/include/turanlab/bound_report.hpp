#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "turanlab/config.hpp"

namespace turanlab {

enum class BoundMethod { trivial, lp, packing, tiling, spectral, quotient, subgroup, witness, density, lattice, halving };
enum class BoundDirection { upper, lower };

inline const char* to_string(BoundMethod m) {
    switch (m) {
    case BoundMethod::trivial: return "trivial";
    case BoundMethod::lp: return "lp";
    case BoundMethod::packing: return "packing";
    case BoundMethod::tiling: return "tiling";
    case BoundMethod::spectral: return "spectral";
    case BoundMethod::quotient: return "quotient";
    case BoundMethod::subgroup: return "subgroup";
    case BoundMethod::witness: return "witness";
    case BoundMethod::density: return "density";
    case BoundMethod::lattice: return "lattice";
    case BoundMethod::halving: return "halving";
    }
    return "unknown";
}

inline const char* to_string(BoundDirection d) { return d == BoundDirection::upper ? "upper" : "lower"; }

/// One bound on a Turan constant together with the data that proves it.
/// `certificate` holds the set(s) or function the bound was derived from in
/// a form that can be re-checked independently (and serialized as-is).
struct BoundReport {
    BoundMethod method = BoundMethod::trivial;
    BoundDirection direction = BoundDirection::upper;
    double value = 0;
    std::optional<Rational> exact;
    nlohmann::json certificate = nlohmann::json::object();
    std::string note;
    bool best = false; // set by the orchestration that ranks reports

    static BoundReport upper(BoundMethod m, double v) { return {m, BoundDirection::upper, v, {}, nlohmann::json::object(), {}, false}; }
    static BoundReport lower(BoundMethod m, double v) { return {m, BoundDirection::lower, v, {}, nlohmann::json::object(), {}, false}; }
    static BoundReport upper(BoundMethod m, const Rational& q) {
        auto r = upper(m, to_double(q));
        r.exact = q;
        return r;
    }
    static BoundReport lower(BoundMethod m, const Rational& q) {
        auto r = lower(m, to_double(q));
        r.exact = q;
        return r;
    }
};

inline std::optional<double> best_upper(const std::vector<BoundReport>& reports) {
    std::optional<double> best;
    for (const auto& r : reports)
        if (r.direction == BoundDirection::upper && (!best || r.value < *best)) best = r.value;
    return best;
}

inline std::optional<double> best_lower(const std::vector<BoundReport>& reports) {
    std::optional<double> best;
    for (const auto& r : reports)
        if (r.direction == BoundDirection::lower && (!best || r.value > *best)) best = r.value;
    return best;
}

/// Flags the smallest upper and the largest lower bound as `best`. Reports
/// within 1e-9 of the optimum count as ties, and an exact one wins a tie.
inline void mark_best(std::vector<BoundReport>& reports) {
    const auto up = best_upper(reports);
    const auto lo = best_lower(reports);
    auto pick = [&](BoundDirection dir, std::optional<double> target) {
        if (!target) return;
        BoundReport* chosen = nullptr;
        for (auto& r : reports) {
            if (r.direction != dir || std::abs(r.value - *target) > 1e-9) continue;
            if (!chosen || (r.exact && !chosen->exact)) chosen = &r;
        }
        if (chosen) chosen->best = true;
    };
    for (auto& r : reports) r.best = false;
    pick(BoundDirection::upper, up);
    pick(BoundDirection::lower, lo);
}

} // namespace turanlab

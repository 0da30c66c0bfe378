#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace turanlab {

using Rational = boost::multiprecision::cpp_rational;

inline std::string to_fraction_string(const Rational& q) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    return numerator(q).str() + "/" + denominator(q).str();
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// All numerical thresholds in one place.
struct Tolerances {
    double feasibility = 1e-9; // simplex pivot/feasibility threshold
    double gap = 1e-7;         // accepted primal/dual gap, relative to max(1, value)
    double reporting = 1e-6;   // slack when comparing bounds from different methods
    double pd = 1e-9;          // positive-definiteness, scaled by the l1 norm
};

/// Search limits for the combinatorial routines (packing and spectrum).
struct SearchBudget {
    std::uint64_t max_nodes = 10'000'000;
    std::chrono::duration<double> time_limit = std::chrono::seconds(60);
    std::size_t exact_vertex_limit = 4096; // above this only greedy + swaps
};

struct LpLimits {
    std::size_t group_order_cap = 8192;
    std::size_t max_pivots = 200'000;
};

} // namespace turanlab

#pragma once

// Spectra of subsets H of a finite abelian group: sets T of characters that
// form an orthogonal basis of functions on H. Equivalently the characters
// t1 - t2 (t1 != t2 in T) are zeros of chi_H^, or |chi_H^|^2 + T tiles the dual
// group at level |H|^2. Both forms are checked and must agree.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "turanlab/bound_report.hpp"
#include "turanlab/cayley_search.hpp"
#include "turanlab/harmonic.hpp"
#include "turanlab/packing.hpp"

namespace turanlab {

/// |chi_H^(s)| relative to |H|, binned by decade below 1e-3:
/// [0, 1e-15), [1e-15, 1e-12), [1e-12, 1e-9), [1e-9, 1e-6), [1e-6, 1e-3).
using NearZeroHistogram = std::array<std::size_t, 5>;

struct IndicatorTransform {
    std::vector<Complex> values;
    std::vector<std::int64_t> integers; // filled when every character is real (+-1)
    bool exact = false;
    std::size_t size = 0; // |H|

    double magnitude(std::size_t s) const {
        return exact ? std::abs(static_cast<double>(integers[s])) : std::abs(values[s]);
    }
};

inline IndicatorTransform indicator_transform(const FiniteAbelianGroup& g, const std::vector<std::size_t>& h) {
    if (h.empty()) throw Error(ErrorCode::invalid_argument, "H is empty");
    require_distinct(h, "H");
    IndicatorTransform out;
    out.size = h.size();
    const auto fhat = dft(indicator(g, h));
    out.values.assign(fhat.values().begin(), fhat.values().end());
    if (g.exponent_two()) {
        // With characters +-1 the per-axis transform only adds and subtracts
        // integers, so the doubles are exact.
        out.exact = true;
        out.integers.reserve(out.values.size());
        for (const auto& v : out.values) {
            const double r = std::round(v.real());
            if (r != v.real() || v.imag() != 0.0)
                throw Error(ErrorCode::numerical_inconsistency, "exponent-two transform is not integral");
            out.integers.push_back(static_cast<std::int64_t>(r));
        }
    }
    return out;
}

struct ZeroSet {
    std::vector<std::size_t> zeros; // nonzero characters s with chi_H^(s) = 0, closed under negation
    bool exact = false;
    NearZeroHistogram histogram{};
};

namespace detail {

inline std::size_t decade_bin(double rel) {
    if (rel < 1e-15) return 0;
    if (rel < 1e-12) return 1;
    if (rel < 1e-9) return 2;
    if (rel < 1e-6) return 3;
    return 4;
}

inline bool is_zero(const IndicatorTransform& tr, std::size_t s, double tol) {
    if (tr.exact) return tr.integers[s] == 0;
    return tr.magnitude(s) <= tol * static_cast<double>(tr.size);
}

} // namespace detail

/// Zeros of chi_H^: exact integer test when all characters are real, otherwise
/// |chi_H^(s)| <= tol |H| (taken symmetrically in s and -s).
inline ZeroSet spectral_zero_set(const FiniteAbelianGroup& g, const IndicatorTransform& tr, double tol) {
    ZeroSet out;
    out.exact = tr.exact;
    const double h = static_cast<double>(tr.size);
    for (std::size_t s = 1; s < g.order(); ++s) {
        const double rel = std::max(tr.magnitude(s), tr.magnitude(g.negate(s))) / h;
        if (!tr.exact && rel < 1e-3) ++out.histogram[detail::decade_bin(rel)];
        if (detail::is_zero(tr, s, tol) && detail::is_zero(tr, g.negate(s), tol)) out.zeros.push_back(s);
    }
    return out;
}

struct SpectrumCheck {
    bool spectrum = false;
    bool orthogonal = false;      // pairwise differences are zeros and |T| = |H|
    bool tiling_identity = false; // sum_{s in T} |chi_H^(gamma - s)|^2 = |H|^2 for all gamma
    bool exact = false;
    double max_off_diagonal = 0;  // max |chi_H^(t1 - t2)| / |H| over t1 != t2
    double max_tiling_deviation = 0;
    NearZeroHistogram histogram{};
};

inline constexpr double kTilingIdentityTolerance = 1e-7; // relative to |H|^2

/// Checks both characterizations of a spectrum. A disagreement is reported as
/// numerical-inconsistency rather than resolved.
inline SpectrumCheck is_spectrum(const FiniteAbelianGroup& g, const std::vector<std::size_t>& h,
                                 const std::vector<std::size_t>& t, double tol = 1e-9) {
    if (t.empty()) throw Error(ErrorCode::invalid_argument, "T is empty");
    if (tol < 0) throw Error(ErrorCode::invalid_argument, "tolerance must be nonnegative");
    for (auto x : t)
        if (x >= g.order()) throw Error(ErrorCode::invalid_argument, "character outside dual group");
    require_distinct(t, "T");
    const auto tr = indicator_transform(g, h);
    const double hs = static_cast<double>(h.size());

    SpectrumCheck out;
    out.exact = tr.exact;
    out.histogram = spectral_zero_set(g, tr, tol).histogram;

    bool pairs_zero = true;
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = 0; j < t.size(); ++j) {
            if (i == j) continue;
            const auto d = g.subtract(t[i], t[j]);
            out.max_off_diagonal = std::max(out.max_off_diagonal, tr.magnitude(d) / hs);
            if (!detail::is_zero(tr, d, tol)) pairs_zero = false;
        }
    out.orthogonal = pairs_zero && t.size() == h.size();

    bool identity = true;
    if (tr.exact) {
        const auto target = static_cast<std::int64_t>(h.size() * h.size());
        for (std::size_t gamma = 0; gamma < g.order(); ++gamma) {
            std::int64_t sum = 0;
            for (auto s : t) {
                const auto v = tr.integers[g.subtract(gamma, s)];
                sum += v * v;
            }
            out.max_tiling_deviation = std::max(out.max_tiling_deviation, std::abs(static_cast<double>(sum - target)));
            if (sum != target) identity = false;
        }
    } else {
        for (std::size_t gamma = 0; gamma < g.order(); ++gamma) {
            double sum = 0;
            for (auto s : t) sum += std::norm(tr.values[g.subtract(gamma, s)]);
            const double dev = std::abs(sum - hs * hs);
            out.max_tiling_deviation = std::max(out.max_tiling_deviation, dev);
            if (dev > kTilingIdentityTolerance * hs * hs) identity = false;
        }
    }
    out.tiling_identity = identity;
    if (out.orthogonal != out.tiling_identity)
        throw Error(ErrorCode::numerical_inconsistency,
                    std::string("spectrum characterizations disagree: orthogonality ") +
                        (out.orthogonal ? "holds" : "fails") + " (max off-diagonal " +
                        std::to_string(out.max_off_diagonal) + "), tiling identity " +
                        (out.tiling_identity ? "holds" : "fails") + " (max deviation " +
                        std::to_string(out.max_tiling_deviation) + ")");
    out.spectrum = out.orthogonal;
    return out;
}

struct SpectrumSearch {
    std::vector<std::size_t> spectrum; // empty when none was found
    bool exhausted = false;            // the search space was covered
    bool verified = false;
    std::uint64_t nodes = 0;
    double seconds = 0;
    NearZeroHistogram histogram{};
};

/// A spectrum containing 0 (every spectrum translates to one), found as a
/// clique of size |H| in the Cayley graph of the zeros of chi_H^.
inline SpectrumSearch find_spectrum(const FiniteAbelianGroup& g, const std::vector<std::size_t>& h,
                                    const SearchBudget& budget = {}, double tol = 1e-9) {
    const auto tr = indicator_transform(g, h);
    const auto zs = spectral_zero_set(g, tr, tol);
    SpectrumSearch out;
    out.histogram = zs.histogram;
    if (h.size() > g.order()) return out;
    const CayleyGraph graph(g, zs.zeros);
    const auto res = find_clique(graph, {0}, h.size(), budget);
    out.nodes = res.nodes;
    out.seconds = res.seconds;
    out.exhausted = res.exhausted;
    out.spectrum = res.clique;
    if (!out.spectrum.empty()) {
        out.verified = is_spectrum(g, h, out.spectrum, tol).spectrum;
        if (!out.verified) throw Error(ErrorCode::numerical_inconsistency, "search returned a set that is not a spectrum");
    }
    return out;
}

/// |H| from a spectrum of H, valid when Omega lies in H - H.
inline BoundReport spectral_bound(const SymmetricDomain& omega, const std::vector<std::size_t>& h,
                                  const std::vector<std::size_t>& t, double tol = 1e-9) {
    const auto& g = omega.group();
    if (!omega.subset_of(difference_set(g, h))) throw Error(ErrorCode::hypothesis_failed, "domain is not contained in H - H");
    const auto chk = is_spectrum(g, h, t, tol);
    if (!chk.spectrum)
        throw Error(ErrorCode::hypothesis_failed,
                    "T is not a spectrum of H (max off-diagonal " + std::to_string(chk.max_off_diagonal) + ")");
    auto rep = BoundReport::upper(BoundMethod::spectral, Rational(static_cast<long long>(h.size())));
    rep.certificate["H"] = elements_json(g, h);
    rep.certificate["T"] = elements_json(g, t);
    return rep;
}

} // namespace turanlab

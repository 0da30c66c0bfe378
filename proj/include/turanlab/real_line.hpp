#pragma once

// Turan problems on the real line for finite unions of open intervals with
// rational endpoints. Everything is exact rational arithmetic; the only
// floating point is the sampled transform check of tent trains.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "turanlab/bound_report.hpp"
#include "turanlab/error.hpp"

namespace turanlab {

struct OpenInterval {
    Rational lo, hi;
    friend bool operator==(const OpenInterval&, const OpenInterval&) = default;
};

inline std::string format_interval(const OpenInterval& i) {
    return "(" + i.lo.str() + ", " + i.hi.str() + ")";
}

/// Disjoint open intervals, sorted; as a domain it must be symmetric and
/// contain 0.
class IntervalUnion {
public:
    IntervalUnion() = default;

    /// Sorts and validates; touching intervals such as (-1, 1), (1, 2) stay
    /// separate because the shared endpoint is not in the set.
    static IntervalUnion from_intervals(std::vector<OpenInterval> parts) {
        for (const auto& p : parts)
            if (!(p.lo < p.hi)) throw Error(ErrorCode::invalid_argument, "empty interval " + format_interval(p));
        std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
        for (std::size_t i = 1; i < parts.size(); ++i)
            if (parts[i].lo < parts[i - 1].hi)
                throw Error(ErrorCode::invalid_argument,
                            "intervals " + format_interval(parts[i - 1]) + " and " + format_interval(parts[i]) + " overlap");
        IntervalUnion u;
        u.parts_ = std::move(parts);
        return u;
    }

    /// Like from_intervals, then requires Omega = -Omega and 0 in Omega.
    static IntervalUnion domain(std::vector<OpenInterval> parts) {
        auto u = from_intervals(std::move(parts));
        if (!u.contains(Rational(0))) throw Error(ErrorCode::domain_not_symmetric, "domain must contain a neighbourhood of 0");
        const auto n = u.parts_.size();
        for (std::size_t i = 0; i < n; ++i) {
            const auto& p = u.parts_[i];
            const auto& q = u.parts_[n - 1 - i];
            if (p.lo != -q.hi || p.hi != -q.lo)
                throw Error(ErrorCode::domain_not_symmetric, format_interval(p) + " has no mirror image");
        }
        return u;
    }

    /// (-a, -b) cup (-b, b) cup (b, a).
    static IntervalUnion punctured(const Rational& a, const Rational& b) {
        if (!(0 < b && b < a)) throw Error(ErrorCode::invalid_argument, "need 0 < b < a");
        return domain({{-a, -b}, {-b, b}, {b, a}});
    }

    const std::vector<OpenInterval>& parts() const { return parts_; }
    bool empty() const { return parts_.empty(); }

    Rational measure() const {
        Rational m = 0;
        for (const auto& p : parts_) m += p.hi - p.lo;
        return m;
    }
    Rational sup() const { return parts_.empty() ? Rational(0) : parts_.back().hi; }

    bool contains(const Rational& x) const {
        return std::any_of(parts_.begin(), parts_.end(), [&](const auto& p) { return p.lo < x && x < p.hi; });
    }

    /// First piece of `i` outside the union, as [lo, hi] (lo == hi for a
    /// single missing point); nullopt when i is covered.
    std::optional<std::pair<Rational, Rational>> uncovered(const OpenInterval& i) const {
        Rational cur = i.lo; // everything in (i.lo, cur] is covered, except cur itself when cur > i.lo
        bool cur_open = true; // cur itself need not be covered
        for (const auto& p : parts_) {
            if (p.hi <= cur) continue;
            if (p.lo > cur || (p.lo == cur && !cur_open)) return std::make_pair(cur, std::min(p.lo, i.hi));
            cur = p.hi;
            cur_open = false;
            if (cur >= i.hi) return std::nullopt;
        }
        return std::make_pair(cur, i.hi);
    }

    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < parts_.size(); ++i) s += (i ? " u " : "") + format_interval(parts_[i]);
        return s.empty() ? "{}" : s;
    }

private:
    std::vector<OpenInterval> parts_;
};

/// Upper bound c from the packing set cZ: no nonzero multiple of c lies in Omega.
inline BoundReport lattice_certificate(const IntervalUnion& omega, const Rational& c) {
    if (!(c > 0)) throw Error(ErrorCode::invalid_argument, "lattice step must be positive");
    long long checked = 0;
    for (Rational kc = c; kc < omega.sup(); kc += c) {
        ++checked;
        if (omega.contains(kc) || omega.contains(Rational(-kc)))
            throw Error(ErrorCode::certificate_invalid, "multiple " + kc.str() + " of " + c.str() + " lies in the domain");
    }
    auto rep = BoundReport::upper(BoundMethod::lattice, c);
    rep.certificate["c"] = to_fraction_string(c);
    rep.certificate["multiples_checked"] = checked;
    return rep;
}

/// m / 2 for any domain of measure m.
inline BoundReport halving_bound(const IntervalUnion& omega) {
    if (!omega.contains(Rational(0))) throw Error(ErrorCode::domain_not_symmetric, "domain must contain a neighbourhood of 0");
    auto rep = BoundReport::upper(BoundMethod::halving, Rational(omega.measure() / 2));
    rep.certificate["measure"] = to_fraction_string(omega.measure());
    return rep;
}

inline Rational tent(const Rational& c, const Rational& x) {
    const Rational ax = x < 0 ? Rational(-x) : x;
    return ax < c ? Rational(c - ax) : Rational(0);
}

/// f = tent_c * (delta_D * delta_{-D}) with tent_c(x) = max(c - |x|, 0), the
/// autocorrelation of the indicator of (0, c); its transform is
/// (sin(c xi / 2) / (xi / 2))^2 |sum_d e^{i d xi}|^2 >= 0.
struct TentTrain {
    Rational c;
    std::vector<Rational> shifts; // D, a multiset

    Rational at(const Rational& x) const {
        Rational v = 0;
        for (const auto& d : shifts)
            for (const auto& e : shifts) v += tent(c, Rational(x - (d - e)));
        return v;
    }
    Rational value_at_zero() const { return at(Rational(0)); }
    Rational integral() const {
        const auto n = static_cast<long long>(shifts.size());
        return c * c * n * n;
    }
    Rational ratio() const { return integral() / value_at_zero(); }

    /// (D - D) + (-c, c), overlapping pieces merged.
    IntervalUnion support() const {
        std::vector<Rational> diffs;
        for (const auto& d : shifts)
            for (const auto& e : shifts) diffs.push_back(d - e);
        std::sort(diffs.begin(), diffs.end());
        diffs.erase(std::unique(diffs.begin(), diffs.end()), diffs.end());
        std::vector<OpenInterval> parts;
        for (const auto& x : diffs) {
            OpenInterval iv{x - c, x + c};
            if (!parts.empty() && iv.lo < parts.back().hi)
                parts.back().hi = std::max(parts.back().hi, iv.hi);
            else
                parts.push_back(iv);
        }
        return IntervalUnion::from_intervals(std::move(parts));
    }

    /// The Fourier transform at xi, evaluated in double precision.
    double transform(double xi) const {
        const double cd = c.convert_to<double>();
        const double k = xi == 0.0 ? cd : std::sin(cd * xi / 2) / (xi / 2);
        double s = 0;
        for (const auto& d : shifts)
            for (const auto& e : shifts) s += std::cos((d - e).convert_to<double>() * xi);
        return k * k * s;
    }

    /// Minimum of the transform over `points` equally spaced xi in [-xi_max, xi_max].
    double sampled_transform_min(std::size_t points = 10000, double xi_max = 100.0) const {
        double lo = transform(0.0);
        for (std::size_t i = 0; i < points; ++i) {
            const double xi = -xi_max + 2.0 * xi_max * static_cast<double>(i) / static_cast<double>(points - 1);
            lo = std::min(lo, transform(xi));
        }
        return lo;
    }
};

inline TentTrain tent_train(const Rational& c, std::vector<Rational> shifts) {
    if (!(c > 0)) throw Error(ErrorCode::invalid_argument, "tent half-width must be positive");
    if (shifts.empty()) throw Error(ErrorCode::invalid_argument, "shift set is empty");
    return {c, std::move(shifts)};
}

/// For a > 2b: c = min(b, (a - b)/2), D = {0, (a + b)/2}; f(0) = 2c > b.
inline TentTrain sharpness_train(const Rational& a, const Rational& b) {
    const Rational half = (a - b) / 2;
    return tent_train(b < half ? b : half, {Rational(0), Rational((a + b) / 2)});
}

/// int f / f(0) as a lower bound, after checking supp f is inside Omega.
inline BoundReport witness_in_domain(const TentTrain& t, const IntervalUnion& omega) {
    const auto supp = t.support();
    for (const auto& piece : supp.parts())
        if (auto gap = omega.uncovered(piece))
            throw Error(ErrorCode::witness_rejected, "support piece " + format_interval(piece) + " leaves the domain on [" +
                                                         gap->first.str() + ", " + gap->second.str() + "]");
    auto rep = BoundReport::lower(BoundMethod::witness, t.ratio());
    rep.note = "tent train";
    rep.certificate["c"] = to_fraction_string(t.c);
    auto d = nlohmann::json::array();
    for (const auto& x : t.shifts) d.push_back(to_fraction_string(x));
    rep.certificate["shifts"] = d;
    rep.certificate["f0"] = to_fraction_string(t.value_at_zero());
    rep.certificate["integral"] = to_fraction_string(t.integral());
    return rep;
}

} // namespace turanlab

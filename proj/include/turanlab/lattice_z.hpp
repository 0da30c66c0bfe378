#pragma once

// Turan problems on Z^d: torus reduction to Z_M^d and LP upper bounds,
// periodic packing sets with exact density, the greedy packing construction
// in a window, and autocorrelation witnesses.

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "turanlab/bound_report.hpp"
#include "turanlab/group.hpp"
#include "turanlab/parallel.hpp"
#include "turanlab/smith.hpp"
#include "turanlab/turan_lp.hpp"

namespace turanlab {

using Point = std::vector<std::int64_t>;

namespace detail {

inline Point add_points(const Point& a, const Point& b) {
    Point r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_add(a[i], b[i]);
    return r;
}

inline Point sub_points(const Point& a, const Point& b) {
    Point r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_add(a[i], -b[i]);
    return r;
}

inline Point negated(Point a) {
    for (auto& x : a) x = -x;
    return a;
}

inline bool is_zero_point(const Point& a) {
    return std::all_of(a.begin(), a.end(), [](auto x) { return x == 0; });
}

} // namespace detail

/// Finite symmetric Omega in Z^d containing 0.
class LatticeDomain {
public:
    static LatticeDomain from_points(std::size_t d, std::vector<Point> pts, bool symmetrize = false) {
        if (d == 0) throw Error(ErrorCode::invalid_argument, "dimension must be positive");
        for (const auto& p : pts)
            if (p.size() != d) throw Error(ErrorCode::invalid_argument, "point " + format_element(p) + " has wrong dimension");
        if (symmetrize) {
            const auto n = pts.size();
            for (std::size_t i = 0; i < n; ++i) pts.push_back(detail::negated(pts[i]));
            pts.push_back(Point(d, 0));
        }
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        LatticeDomain o;
        o.d_ = d;
        o.points_ = std::move(pts);
        if (!o.contains(Point(d, 0))) throw Error(ErrorCode::domain_not_symmetric, "domain does not contain 0");
        for (const auto& p : o.points_)
            if (!o.contains(detail::negated(p)))
                throw Error(ErrorCode::domain_not_symmetric, format_element(p) + " is in the domain but its negative is not");
        return o;
    }

    /// {0, +-s for s in steps} in Z.
    static LatticeDomain one_dim(const std::vector<std::int64_t>& steps) {
        std::vector<Point> pts;
        for (auto s : steps) pts.push_back({s});
        return from_points(1, std::move(pts), true);
    }

    /// [-n, n] cap Z.
    static LatticeDomain interval(std::int64_t n) {
        std::vector<Point> pts;
        for (std::int64_t x = -n; x <= n; ++x) pts.push_back({x});
        return from_points(1, std::move(pts));
    }

    /// Omega_N = {0, +-1, +-N}.
    static LatticeDomain omega_n(std::int64_t n) { return one_dim({1, n}); }

    std::size_t dimension() const { return d_; }
    const std::vector<Point>& points() const { return points_; }
    std::size_t m() const { return points_.size(); }
    /// Points with nonnegative first coordinate.
    std::size_t m_plus() const {
        return static_cast<std::size_t>(std::count_if(points_.begin(), points_.end(), [](const Point& p) { return p[0] >= 0; }));
    }
    bool contains(const Point& p) const { return std::binary_search(points_.begin(), points_.end(), p); }
    /// max |x_i| over the domain.
    std::int64_t reach() const {
        std::int64_t r = 0;
        for (const auto& p : points_)
            for (auto x : p) r = std::max(r, x < 0 ? -x : x);
        return r;
    }

private:
    std::size_t d_ = 0;
    std::vector<Point> points_;
};

struct TorusReduction {
    std::int64_t modulus;
    FiniteAbelianGroup group;
    SymmetricDomain image;
};

/// Omega mod M inside Z_M^d; requires reduction to be injective on Omega
/// (which also gives M Z^d cap Omega = {0}), so that periodizing any
/// admissible f on Z^d yields an admissible function on the torus with the
/// same sum and the same value at 0.
inline TorusReduction torus_reduction(const LatticeDomain& omega, std::int64_t m) {
    if (m < 1) throw Error(ErrorCode::invalid_argument, "modulus must be positive");
    const auto g = make_group(IntVector(omega.dimension(), m));
    std::map<std::size_t, Point> seen;
    std::vector<std::size_t> idx;
    for (const auto& p : omega.points()) {
        const auto i = g.index_of(g.reduce(p));
        auto [it, inserted] = seen.emplace(i, p);
        if (!inserted)
            throw Error(ErrorCode::modulus_too_small, "M = " + std::to_string(m) + ": " + format_element(it->second) +
                                                          " and " + format_element(p) + " coincide");
        idx.push_back(i);
    }
    return {m, g, SymmetricDomain::from_indices(g, std::move(idx))};
}

/// Default moduli 2(R+1) * {1, 2, 5} with R the reach of Omega. For
/// Omega_N with N = 2n this is 2(2n+1) * {1, 2, 5}, putting the extremal
/// point pi + pi/(2n+1) on the grid; for [-N, N] it includes 10(N+1).
inline std::vector<std::int64_t> default_moduli(const LatticeDomain& omega) {
    const std::int64_t base = 2 * (omega.reach() + 1);
    return {base, 2 * base, 5 * base};
}

struct ModulusRun {
    std::int64_t modulus = 0;
    double value = 0;      // certified dual value on Z_M^d
    double primal = 0;     // value of the repaired primal function
    LpStatus status = LpStatus::optimal;
    std::size_t variables = 0;
    std::size_t rows = 0;
};

struct LatticeUpperBound {
    BoundReport report;
    std::vector<ModulusRun> runs; // in the order given
};

/// Minimum over the moduli of the torus LP values, each an upper bound on
/// T_{Z^d}(Omega). The solves run in parallel.
inline LatticeUpperBound upper_bound_z(const LatticeDomain& omega, std::vector<std::int64_t> moduli = {},
                                       const LpOptions& opt = {}, unsigned threads = 1) {
    if (moduli.empty()) moduli = default_moduli(omega);
    std::vector<TorusReduction> reductions;
    for (auto m : moduli) reductions.push_back(torus_reduction(omega, m));
    LatticeUpperBound out;
    out.runs.resize(moduli.size());
    parallel_for(moduli.size(), threads, [&](std::size_t i) {
        const auto sol = turan_constant(reductions[i].image, opt);
        out.runs[i] = {moduli[i], sol.dual_value, sol.value, sol.status, sol.variables, sol.rows};
    });
    std::size_t best = 0;
    for (std::size_t i = 1; i < out.runs.size(); ++i)
        if (out.runs[i].value < out.runs[best].value) best = i;
    out.report = BoundReport::upper(BoundMethod::lp, out.runs[best].value);
    out.report.note = "torus LP, M = " + std::to_string(out.runs[best].modulus);
    auto per_m = nlohmann::json::array();
    for (const auto& r : out.runs)
        per_m.push_back({{"M", r.modulus}, {"value", r.value}, {"primal", r.primal}, {"status", to_string(r.status)}});
    out.report.certificate["moduli"] = per_m;
    return out;
}

/// The extremal function for Omega_{2n}: f(0) = 1, f(+-1), f(+-2n) as below,
/// with transform p0(x) = f(0) + 2 f(1) cos x + 2 f(2n) cos 2nx.
struct OmegaWitness {
    int n = 0;
    double f0 = 1, f1 = 0, f2n = 0;
    double sum = 0;         // f(0) + 2 f(1) + 2 f(2n)
    double closed_form = 0; // 1 + 1 / cos(pi / (2n+1))
    double grid_min = 0;    // min of p0 on the grid
    double grid_argmin = 0;
    std::size_t grid_points = 0;
    double value_at_z0 = 0; // p0(pi + pi/(2n+1))

    double p0(double x) const { return f0 + 2 * f1 * std::cos(x) + 2 * f2n * std::cos(2.0 * n * x); }

    /// The same coefficients as a function on Z_M.
    GroupFunction on_torus(std::int64_t m) const {
        if (m <= 2 * n) throw Error(ErrorCode::modulus_too_small, "M must exceed 2n");
        const auto g = make_group({m});
        GroupFunction f(g);
        f[0] = f0;
        f[1] = f[static_cast<std::size_t>(m - 1)] = f1;
        f[static_cast<std::size_t>(2 * n)] = f[static_cast<std::size_t>(m - 2 * n)] = f2n;
        return f;
    }
};

inline OmegaWitness explicit_witness_omega_n(int n, std::size_t grid_points = 100000) {
    if (n < 1) throw Error(ErrorCode::invalid_argument, "n must be at least 1");
    const double pi = std::numbers::pi;
    const double k = 2.0 * n + 1.0;
    const double c = std::cos(pi / k);
    OmegaWitness w;
    w.n = n;
    w.f1 = n / (k * c);
    w.f2n = 1.0 / (2.0 * k * c);
    w.sum = w.f0 + 2 * w.f1 + 2 * w.f2n;
    w.closed_form = 1.0 + 1.0 / c;
    w.grid_points = grid_points;
    w.grid_min = w.p0(0);
    for (std::size_t i = 0; i < grid_points; ++i) {
        const double x = 2.0 * pi * static_cast<double>(i) / static_cast<double>(grid_points);
        const double v = w.p0(x);
        if (v < w.grid_min) w.grid_min = v, w.grid_argmin = x;
    }
    w.value_at_z0 = w.p0(pi + pi / k);
    return w;
}

/// Lambda = R + L for a full-rank sublattice L (basis vectors as rows) and
/// residues R distinct modulo L.
class PeriodicSet {
public:
    PeriodicSet(IntMatrix basis, std::vector<Point> residues) : basis_(std::move(basis)), residues_(std::move(residues)) {
        const std::size_t d = basis_.size();
        if (d == 0) throw Error(ErrorCode::invalid_argument, "empty basis");
        for (const auto& b : basis_)
            if (b.size() != d) throw Error(ErrorCode::invalid_argument, "basis must be square");
        if (residues_.empty()) throw Error(ErrorCode::invalid_argument, "no residues");
        for (const auto& r : residues_)
            if (r.size() != d) throw Error(ErrorCode::invalid_argument, "residue " + format_element(r) + " has wrong dimension");
        invert();
        for (std::size_t i = 0; i < residues_.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (in_lattice(detail::sub_points(residues_[i], residues_[j])))
                    throw Error(ErrorCode::invalid_argument, "residues " + format_element(residues_[j]) + " and " +
                                                                 format_element(residues_[i]) + " agree modulo the lattice");
        density_ = Rational(static_cast<long long>(residues_.size())) / abs_det_;
        if (density_ > 1) throw Error(ErrorCode::invalid_argument, "density exceeds 1");
    }

    /// period Z + residues in Z.
    static PeriodicSet one_dim(std::int64_t period, const std::vector<std::int64_t>& residues) {
        std::vector<Point> r;
        for (auto x : residues) r.push_back({x});
        return PeriodicSet({{period}}, std::move(r));
    }

    /// {0, 2, ..., 2n-2} cup {2n+1, 2n+3, ..., 4n-1} + (4n+2) Z.
    static PeriodicSet lambda_star(std::int64_t n) {
        if (n < 1) throw Error(ErrorCode::invalid_argument, "n must be at least 1");
        std::vector<std::int64_t> r;
        for (std::int64_t x = 0; x <= 2 * n - 2; x += 2) r.push_back(x);
        for (std::int64_t x = 2 * n + 1; x <= 4 * n - 1; x += 2) r.push_back(x);
        return one_dim(4 * n + 2, r);
    }

    std::size_t dimension() const { return basis_.size(); }
    const IntMatrix& basis() const { return basis_; }
    const std::vector<Point>& residues() const { return residues_; }
    const Rational& density() const { return density_; }
    const Rational& covolume() const { return abs_det_; }

    /// v in L: the coordinates of v in the basis are integers.
    bool in_lattice(const Point& v) const {
        const std::size_t d = dimension();
        for (std::size_t j = 0; j < d; ++j) {
            Rational c = 0;
            for (std::size_t i = 0; i < d; ++i) c += Rational(v[i]) * inverse_[i][j];
            if (boost::multiprecision::denominator(c) != 1) return false;
        }
        return true;
    }

    bool contains(const Point& v) const {
        return std::any_of(residues_.begin(), residues_.end(), [&](const Point& r) { return in_lattice(detail::sub_points(v, r)); });
    }

private:
    // inverse_ = B^{-1} so that coordinates of v are v B^{-1}; also |det B|.
    void invert() {
        const std::size_t d = dimension();
        std::vector<std::vector<Rational>> a(d, std::vector<Rational>(2 * d, Rational(0)));
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) a[i][j] = Rational(basis_[i][j]);
            a[i][d + i] = 1;
        }
        Rational det = 1;
        for (std::size_t c = 0; c < d; ++c) {
            std::size_t p = c;
            while (p < d && a[p][c] == 0) ++p;
            if (p == d) throw Error(ErrorCode::invalid_argument, "basis is not full rank");
            if (p != c) {
                std::swap(a[p], a[c]);
                det = -det;
            }
            det *= a[c][c];
            const Rational piv = a[c][c];
            for (auto& x : a[c]) x /= piv;
            for (std::size_t r = 0; r < d; ++r) {
                if (r == c || a[r][c] == 0) continue;
                const Rational f = a[r][c];
                for (std::size_t k = 0; k < 2 * d; ++k) a[r][k] -= f * a[c][k];
            }
        }
        inverse_.assign(d, std::vector<Rational>(d));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) inverse_[i][j] = a[i][d + j];
        abs_det_ = det < 0 ? Rational(-det) : det;
    }

    IntMatrix basis_;
    std::vector<Point> residues_;
    std::vector<std::vector<Rational>> inverse_;
    Rational abs_det_ = 1;
    Rational density_ = 1;
};

struct PeriodicPackingCheck {
    bool ok = true;
    // lambda1 - lambda2 = omega with both in Lambda
    std::optional<std::tuple<Point, Point, Point>> violation;
};

/// Omega cap (Lambda - Lambda) = {0}, decided exactly: lambda1 - lambda2 lies in
/// (r1 - r2) + L, so a violation exists iff omega - r1 + r2 is in L for some
/// nonzero omega and residues r1, r2.
inline PeriodicPackingCheck check_packing_periodic(const LatticeDomain& omega, const PeriodicSet& lambda) {
    if (omega.dimension() != lambda.dimension()) throw Error(ErrorCode::invalid_argument, "dimension mismatch");
    PeriodicPackingCheck out;
    for (const auto& w : omega.points()) {
        if (detail::is_zero_point(w)) continue;
        for (const auto& r1 : lambda.residues())
            for (const auto& r2 : lambda.residues()) {
                const auto v = detail::sub_points(detail::add_points(w, r2), r1);
                if (lambda.in_lattice(v)) {
                    out.ok = false;
                    out.violation = std::make_tuple(detail::add_points(w, r2), r2, w);
                    return out;
                }
            }
    }
    return out;
}

/// 1 / density for a verified periodic packing set.
inline BoundReport density_bound_zd(const LatticeDomain& omega, const PeriodicSet& lambda) {
    const auto chk = check_packing_periodic(omega, lambda);
    if (!chk.ok) {
        const auto& [a, b, w] = *chk.violation;
        throw Error(ErrorCode::hypothesis_failed, "not a packing set: " + format_element(a) + " - " + format_element(b) +
                                                      " = " + format_element(w) + " lies in the domain");
    }
    auto rep = BoundReport::upper(BoundMethod::density, Rational(1) / lambda.density());
    rep.certificate["basis"] = lambda.basis();
    rep.certificate["residues"] = lambda.residues();
    rep.certificate["density"] = to_fraction_string(lambda.density());
    return rep;
}

struct GreedyRun {
    std::int64_t half_width = 0;    // L
    std::vector<Point> points;      // selected, in selection order
    std::size_t window_size = 0;    // |[0, 2L] x [-L, L]^{d-1}|
    Rational floor = 0;             // window_size / m+
    Rational density = 0;           // points / window_size
    bool verified = false;          // in-window packing check

    std::size_t count() const { return points.size(); }
};

/// Greedy packing in the window [0, 2L] x [-L, L]^{d-1}: scan points by first
/// coordinate (ties lexicographically) and keep each one not covered by
/// lambda + Omega+ for an earlier lambda. Every kept point covers at most m+
/// window points and every window point ends up covered, hence
/// count >= |window| / m+.
inline GreedyRun greedy_packing_window(const LatticeDomain& omega, std::int64_t half_width) {
    if (half_width < 0) throw Error(ErrorCode::invalid_argument, "window half-width must be nonnegative");
    const std::size_t d = omega.dimension();
    const std::int64_t side = 2 * half_width + 1;
    std::size_t total = 1;
    for (std::size_t i = 0; i < d; ++i) {
        if (total > (std::size_t{1} << 32) / static_cast<std::size_t>(side)) throw Error(ErrorCode::invalid_argument, "window too large");
        total *= static_cast<std::size_t>(side);
    }
    // index = lexicographic rank of (x0, x1 + L, ..., x_{d-1} + L)
    auto index_of = [&](const Point& p) -> std::optional<std::size_t> {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < d; ++i) {
            const std::int64_t c = i == 0 ? p[0] : p[i] + half_width;
            if (c < 0 || c >= side) return std::nullopt;
            idx = idx * static_cast<std::size_t>(side) + static_cast<std::size_t>(c);
        }
        return idx;
    };
    auto point_of = [&](std::size_t idx) {
        Point p(d);
        for (std::size_t i = d; i-- > 0;) {
            const auto c = static_cast<std::int64_t>(idx % static_cast<std::size_t>(side));
            idx /= static_cast<std::size_t>(side);
            p[i] = i == 0 ? c : c - half_width;
        }
        return p;
    };
    std::vector<Point> plus;
    for (const auto& w : omega.points())
        if (w[0] >= 0) plus.push_back(w);

    GreedyRun run;
    run.half_width = half_width;
    run.window_size = total;
    std::vector<char> covered(total, 0), chosen(total, 0);
    for (std::size_t idx = 0; idx < total; ++idx) {
        if (covered[idx]) continue;
        const auto p = point_of(idx);
        chosen[idx] = 1;
        run.points.push_back(p);
        for (const auto& w : plus)
            if (auto j = index_of(detail::add_points(p, w))) covered[*j] = 1;
    }
    run.floor = Rational(static_cast<long long>(total), static_cast<long long>(omega.m_plus()));
    run.density = Rational(static_cast<long long>(run.points.size()), static_cast<long long>(total));

    run.verified = true;
    for (const auto& p : run.points) {
        for (const auto& w : omega.points()) {
            if (detail::is_zero_point(w)) continue;
            if (auto j = index_of(detail::add_points(p, w)); j && chosen[*j]) {
                run.verified = false;
                break;
            }
        }
        if (!run.verified) break;
    }
    return run;
}

/// |H| from f = chi_H * chi_{-H} (f(0) = |H|, sum f = |H|^2), valid when
/// H - H lies in Omega.
inline BoundReport witness_zd(const std::vector<Point>& h, const LatticeDomain& omega) {
    if (h.empty()) throw Error(ErrorCode::invalid_argument, "H is empty");
    std::map<Point, long long> f;
    for (const auto& a : h) {
        if (a.size() != omega.dimension()) throw Error(ErrorCode::invalid_argument, "point " + format_element(a) + " has wrong dimension");
        for (const auto& b : h) ++f[detail::sub_points(a, b)];
    }
    if (f[Point(omega.dimension(), 0)] != static_cast<long long>(h.size()))
        throw Error(ErrorCode::invalid_argument, "H contains a repeated point");
    for (const auto& [x, v] : f)
        if (!omega.contains(x)) throw Error(ErrorCode::witness_rejected, "support leaks outside the domain at " + format_element(x));
    auto rep = BoundReport::lower(BoundMethod::witness, Rational(static_cast<long long>(h.size())));
    rep.note = "chi_H * chi_{-H}";
    rep.certificate["H"] = h;
    return rep;
}

} // namespace turanlab

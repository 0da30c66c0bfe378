#pragma once

// Exact Turan constants on finite abelian groups by linear programming, plus
// the structural bounds obtained from subgroups, quotients, automorphisms and
// direct products.
//
// Unknowns are the values of an even function f on the negation classes
// {x, -x} of Omega \ {0}, with f(0) = 1 substituted out. For every negation
// class of characters t the row reads  f^(t) = 1 + sum_p K(t, p) a_p >= 0,
// where K(t, p) = sum_{x in p} cos(2 pi <t, x>). The objective is
// sum_x f(x) = f^(0).

#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "turanlab/bound_report.hpp"
#include "turanlab/config.hpp"
#include "turanlab/group.hpp"
#include "turanlab/harmonic.hpp"
#include "turanlab/simplex.hpp"

namespace turanlab {

inline nlohmann::json elements_json(const FiniteAbelianGroup& g, const std::vector<std::size_t>& idx) {
    auto arr = nlohmann::json::array();
    for (auto i : idx) arr.push_back(g.element(i));
    return arr;
}

inline nlohmann::json elements_json(const FiniteAbelianGroup& g, const ElementSet& set) {
    return elements_json(g, set.indices());
}

struct LpProblem {
    FiniteAbelianGroup group;
    SymmetricDomain domain;
    std::vector<std::vector<std::size_t>> classes;        // negation classes of Omega \ {0}
    std::vector<std::vector<std::size_t>> row_characters; // character classes merged into each row
    std::size_t character_classes = 0;                    // before merging identical rows
    LinearProgram<double> program;

    std::size_t num_variables() const { return classes.size(); }
    std::size_t num_rows() const { return program.num_rows(); }
};

enum class SolveMode { floating, exact_rational };

struct LpSolution {
    LpStatus status = LpStatus::optimal;
    double value = 1;                 // objective of the (feasible) primal function
    std::optional<Rational> exact_value;
    double dual_value = 1;            // certified upper bound from the dual multipliers
    double gap = 0;
    GroupFunction primal;             // optimal f with f(0) = 1
    std::vector<double> dual;         // one multiplier per LP row
    double min_transform = 1;         // min over characters of f^
    std::size_t variables = 0;
    std::size_t rows = 0;
    std::size_t pivots = 0;
    std::vector<std::string> diagnostics;
};

struct LpOptions {
    SolveMode mode = SolveMode::floating;
    Tolerances tol{};
    LpLimits limits{};
};

namespace detail {

inline double character_cos(const FiniteAbelianGroup& g, std::size_t t, std::size_t x) {
    const auto [num, den] = g.pairing(t, x);
    if ((4 * num) % den == 0) {
        static constexpr double quarter[4] = {1.0, 0.0, -1.0, 0.0};
        return quarter[(4 * num / den) % 4];
    }
    return std::cos(2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den));
}

} // namespace detail

inline LpProblem build_lp(const SymmetricDomain& omega) {
    const auto& g = omega.group();
    LpProblem p{g, omega, {}, {}, 0, {}};
    for (auto x : omega.elements()) {
        if (x == 0) continue;
        const auto nx = g.negate(x);
        if (nx < x) continue;
        p.classes.push_back(nx == x ? std::vector<std::size_t>{x} : std::vector<std::size_t>{x, nx});
    }
    p.program.objective_constant = 1.0;
    for (const auto& c : p.classes) p.program.objective.push_back(static_cast<double>(c.size()));

    std::map<std::vector<double>, std::size_t> seen;
    for (std::size_t t = 0; t < g.order(); ++t) {
        if (g.negate(t) < t) continue;
        ++p.character_classes;
        std::vector<double> row(p.classes.size());
        for (std::size_t k = 0; k < p.classes.size(); ++k) {
            double s = 0;
            for (auto x : p.classes[k]) s += detail::character_cos(g, t, x);
            row[k] = -s;
        }
        auto [it, inserted] = seen.emplace(row, p.program.rows.size());
        if (inserted) {
            p.program.rows.push_back(std::move(row));
            p.program.rhs.push_back(1.0);
            p.row_characters.push_back({t});
        } else {
            p.row_characters[it->second].push_back(t);
        }
    }
    return p;
}

/// Same program with exact entries; only for groups whose characters are +-1.
inline LinearProgram<Rational> exact_program(const LpProblem& p) {
    if (!p.group.exponent_two())
        throw Error(ErrorCode::invalid_argument, "exact mode needs every modulus in {1, 2}");
    LinearProgram<Rational> q;
    q.objective_constant = Rational(1);
    for (double w : p.program.objective) q.objective.emplace_back(static_cast<long long>(w));
    for (const auto& row : p.program.rows) {
        std::vector<Rational> r;
        for (double v : row) r.emplace_back(static_cast<long long>(std::llround(v)));
        q.rows.push_back(std::move(r));
        q.rhs.emplace_back(1);
    }
    return q;
}

namespace detail {

inline GroupFunction function_from_classes(const LpProblem& p, const std::vector<double>& a) {
    GroupFunction f(p.group);
    f[0] = 1.0;
    for (std::size_t k = 0; k < p.classes.size(); ++k)
        for (auto x : p.classes[k]) f[x] = a[k];
    return f;
}

// Turns the multipliers into a rigorous bound: since |f(x)| <= f(0) for any
// positive definite f, value <= 1 + y.b + sum_k |residual_k|.
inline double dual_bound(const LpProblem& p, const std::vector<double>& y) {
    double bound = p.program.objective_constant;
    for (std::size_t i = 0; i < y.size(); ++i) bound += y[i] * p.program.rhs[i];
    for (std::size_t k = 0; k < p.num_variables(); ++k) {
        double r = p.program.objective[k];
        for (std::size_t i = 0; i < y.size(); ++i) r -= y[i] * p.program.rows[i][k];
        bound += std::abs(r);
    }
    return bound;
}

} // namespace detail

inline LpSolution solve_lp(const LpProblem& p, const LpOptions& opt = {}) {
    LpSolution sol{LpStatus::optimal, 1, {}, 1, 0, delta(p.group), {}, 1, p.num_variables(), p.num_rows(), 0, {}};
    if (p.group.order() > opt.limits.group_order_cap) {
        sol.status = LpStatus::budget_exceeded;
        sol.dual_value = static_cast<double>(p.domain.size());
        sol.gap = sol.dual_value - sol.value;
        sol.diagnostics.push_back("group order " + std::to_string(p.group.order()) + " exceeds cap " +
                                  std::to_string(opt.limits.group_order_cap) + "; returning f = delta_0");
        return sol;
    }
    if (p.classes.empty()) { // Omega = {0}
        sol.exact_value = Rational(1);
        sol.dual.assign(p.num_rows(), 0.0);
        return sol;
    }

    SimplexOptions so;
    so.tolerance = opt.tol.feasibility;
    so.max_pivots = opt.limits.max_pivots;

    std::vector<double> a;
    if (opt.mode == SolveMode::exact_rational) {
        const auto q = exact_program(p);
        const auto r = solve_simplex(q, so);
        sol.status = r.status;
        sol.pivots = r.pivots;
        if (r.status != LpStatus::optimal) {
            sol.diagnostics.push_back(std::string("exact simplex ended with status ") + to_string(r.status));
            return sol;
        }
        for (const auto& v : r.x) a.push_back(to_double(v));
        for (const auto& v : r.dual) sol.dual.push_back(to_double(v));
        sol.exact_value = r.value;
        sol.value = to_double(r.value);
        sol.dual_value = to_double(r.dual_value);
        sol.gap = to_double(detail::abs_of(Rational(r.value - r.dual_value)));
        sol.primal = detail::function_from_classes(p, a);
        sol.min_transform = is_positive_definite(sol.primal, 0.0).min_real;
        return sol;
    }

    const auto r = solve_simplex(p.program, so);
    sol.status = r.status;
    sol.pivots = r.pivots;
    sol.diagnostics = r.diagnostics;
    if (r.status == LpStatus::infeasible || r.status == LpStatus::unbounded) {
        sol.diagnostics.push_back(std::string("simplex ended with status ") + to_string(r.status));
        return sol;
    }
    a = r.x;
    sol.dual = r.dual;

    // Restore exact feasibility if rounding left f^ slightly negative:
    // scaling the off-origin values by 1/(1 - min f^) lifts the minimum to 0.
    GroupFunction f = detail::function_from_classes(p, a);
    auto pd = is_positive_definite(f, 0.0);
    if (pd.min_real < 0) {
        const double s = 1.0 / (1.0 - pd.min_real);
        for (auto& v : a) v *= s;
        if (pd.min_real < -1e-12)
            sol.diagnostics.push_back("primal rescaled by " + std::to_string(s) + " to restore feasibility");
        f = detail::function_from_classes(p, a);
        pd = is_positive_definite(f, 0.0);
    }
    sol.primal = f;
    sol.min_transform = pd.min_real;
    sol.value = f.sum();
    sol.dual_value = r.status == LpStatus::optimal ? detail::dual_bound(p, r.dual) : static_cast<double>(p.domain.size());
    sol.gap = std::abs(sol.dual_value - sol.value);
    if (r.status == LpStatus::optimal && sol.gap > opt.tol.gap * std::max(1.0, sol.value))
        sol.diagnostics.push_back("duality gap " + std::to_string(sol.gap) + " above tolerance");
    return sol;
}

/// T_G(Omega) for a finite group with counting measure.
inline LpSolution turan_constant(const SymmetricDomain& omega, const LpOptions& opt = {}) {
    return solve_lp(build_lp(omega), opt);
}

/// Lower bound sum f / f(0) from a positive definite f supported in Omega.
inline BoundReport witness_ratio(const GroupFunction& f, const SymmetricDomain& omega, double tol = -1) {
    const auto& g = omega.group();
    if (!(f.group() == g)) throw Error(ErrorCode::invalid_argument, "witness lives on a different group");
    if (f[0] == 0.0) throw Error(ErrorCode::invalid_argument, "witness has f(0) = 0");
    for (std::size_t x = 0; x < f.size(); ++x)
        if (f[x] != 0.0 && !omega.contains(x))
            throw Error(ErrorCode::witness_rejected,
                        "support leaks outside the domain at " + format_element(g.element(x)));
    const double t = tol >= 0 ? tol : 1e-9 * std::max(1.0, f.l1_norm());
    const auto pd = is_positive_definite(f, t);
    if (!pd.positive_definite)
        throw Error(ErrorCode::witness_rejected,
                    "not positive definite at character " + format_element(g.element(pd.worst_character)) +
                        " (min Re f^ = " + std::to_string(pd.min_real) +
                        ", max |Im f^| = " + std::to_string(pd.max_abs_imag) + ")");
    auto rep = BoundReport::lower(BoundMethod::witness, f.sum() / f[0]);
    rep.certificate["function"] = std::vector<double>(f.values().begin(), f.values().end());
    rep.certificate["min_transform"] = pd.min_real;
    return rep;
}

/// Both bounds carried by an LP solution: the primal function (lower) and
/// the dual multipliers (upper).
inline std::vector<BoundReport> lp_reports(const LpSolution& sol) {
    std::vector<BoundReport> out;
    auto up = sol.exact_value ? BoundReport::upper(BoundMethod::lp, *sol.exact_value)
                              : BoundReport::upper(BoundMethod::lp, sol.dual_value);
    up.certificate["status"] = to_string(sol.status);
    up.certificate["dual"] = sol.dual;
    up.certificate["gap"] = sol.gap;
    up.certificate["variables"] = sol.variables;
    up.certificate["rows"] = sol.rows;
    if (sol.status == LpStatus::budget_exceeded) up.note = "budget exceeded; trivial upper bound";
    out.push_back(std::move(up));
    auto lo = sol.exact_value ? BoundReport::lower(BoundMethod::lp, *sol.exact_value)
                              : BoundReport::lower(BoundMethod::lp, sol.value);
    lo.certificate["function"] = std::vector<double>(sol.primal.values().begin(), sol.primal.values().end());
    lo.certificate["min_transform"] = sol.min_transform;
    out.push_back(std::move(lo));
    return out;
}

/// Omega intersected with K, re-indexed as a domain in K presented as a
/// product of cyclic groups.
inline SymmetricDomain restrict_to_subgroup(const SymmetricDomain& omega, const Subgroup& k,
                                            const SubgroupIsomorphism& iso) {
    std::vector<std::size_t> idx;
    for (auto x : omega.elements())
        if (k.contains(x)) idx.push_back(iso.image[x]);
    return SymmetricDomain::from_indices(iso.group, std::move(idx));
}

/// (|G| / |K|) T_K(Omega cap K).
inline BoundReport subgroup_bound(const SymmetricDomain& omega, const Subgroup& k, const LpOptions& opt = {}) {
    if (!(k.parent() == omega.group())) throw Error(ErrorCode::invalid_argument, "subgroup of a different group");
    const auto iso = present_subgroup(k);
    const auto inner = turan_constant(restrict_to_subgroup(omega, k, iso), opt);
    const double index = static_cast<double>(k.index());
    auto rep = BoundReport::upper(BoundMethod::subgroup, index * inner.dual_value);
    if (inner.exact_value) rep.exact = Rational(static_cast<long long>(k.index())) * *inner.exact_value;
    rep.certificate["K"] = elements_json(omega.group(), k.elements());
    rep.certificate["K_structure"] = iso.group.moduli();
    rep.certificate["inner_value"] = inner.dual_value;
    rep.certificate["index"] = k.index();
    return rep;
}

/// T_{G/K}(Theta) * T_K(Omega cap K) with Theta the projection of Omega.
inline BoundReport quotient_bound(const SymmetricDomain& omega, const Subgroup& k, const LpOptions& opt = {}) {
    const auto& g = omega.group();
    const auto proj = quotient_group(g, k);
    std::vector<std::size_t> theta;
    for (auto x : omega.elements()) theta.push_back(proj(x));
    const auto outer = turan_constant(SymmetricDomain::from_indices(proj.target(), std::move(theta)), opt);

    const auto iso = present_subgroup(k);
    const auto restricted = restrict_to_subgroup(omega, k, iso);
    double inner_value = 1.0;
    if (restricted.size() > 1) inner_value = turan_constant(restricted, opt).dual_value;

    auto rep = BoundReport::upper(BoundMethod::quotient, outer.dual_value * inner_value);
    rep.certificate["K"] = elements_json(g, k.elements());
    rep.certificate["quotient_moduli"] = proj.target().moduli();
    rep.certificate["quotient_value"] = outer.dual_value;
    rep.certificate["kernel_value"] = inner_value;
    return rep;
}

/// LP value on phi(Omega); equals T_G(Omega) for bijective phi.
inline LpSolution automorphism_image_constant(const SymmetricDomain& omega, const Endomorphism& phi,
                                              const LpOptions& opt = {}) {
    if (!phi.bijective()) throw Error(ErrorCode::invalid_argument, "endomorphism is not an automorphism");
    if (!(phi.group() == omega.group())) throw Error(ErrorCode::invalid_argument, "map on a different group");
    return turan_constant(image_domain(omega, phi), opt);
}

/// LP value on Omega_1 x Omega_2 inside G_1 x G_2.
inline LpSolution product_constant(const SymmetricDomain& a, const SymmetricDomain& b, const LpOptions& opt = {}) {
    return turan_constant(product_domain(a, b), opt);
}

} // namespace turanlab

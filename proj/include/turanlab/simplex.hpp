#pragma once

// Dense dictionary simplex, templated on the scalar type so the same code runs
// in double precision and in exact rational arithmetic.
//
// Problem form:  maximize c0 + c.x  subject to  A x <= b,  x free.
// Free variables are split as x = x+ - x-. A negative right-hand side triggers
// a one-artificial-variable phase 1.
//
// Pricing is Dantzig's rule; after a run of degenerate pivots the solver falls
// back to Bland's rule until the objective strictly improves, which bounds the
// work in exact arithmetic. In floating point the right-hand side additionally
// carries a small random perturbation, kept as a separate component of the
// basic solution: pivoting decisions see b + eps, the reported solution is the
// unperturbed part at the final basis.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <type_traits>
#include <vector>

#include "turanlab/config.hpp"
#include "turanlab/error.hpp"

namespace turanlab {

template <class Scalar>
struct LinearProgram {
    Scalar objective_constant{0};
    std::vector<Scalar> objective;
    std::vector<std::vector<Scalar>> rows;
    std::vector<Scalar> rhs;

    std::size_t num_variables() const { return objective.size(); }
    std::size_t num_rows() const { return rows.size(); }
};

enum class LpStatus { optimal, infeasible, unbounded, budget_exceeded };

inline const char* to_string(LpStatus s) {
    switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    case LpStatus::budget_exceeded: return "budget-exceeded";
    }
    return "unknown";
}

template <class Scalar>
struct LpResult {
    LpStatus status = LpStatus::infeasible;
    Scalar value{0};
    std::vector<Scalar> x;
    std::vector<Scalar> dual;   // y >= 0, one per row
    Scalar dual_value{0};       // c0 + y.b
    Scalar dual_residual{0};    // max_k |c_k - (A^T y)_k|
    Scalar primal_violation{0}; // max_i (A x - b)_i, clipped at 0
    std::size_t pivots = 0;
    bool perturbed_restart = false;
    std::vector<std::string> diagnostics;
};

struct SimplexOptions {
    double tolerance = 1e-9; // ignored for exact scalars
    std::size_t max_pivots = 200'000;
    bool allow_perturbed_restart = true;
};

namespace detail {

template <class S>
S abs_of(const S& v) {
    return v < S(0) ? S(-v) : v;
}

template <class Scalar>
class DictionarySimplex {
public:
    static constexpr bool kFloat = std::is_floating_point_v<Scalar>;

    DictionarySimplex(const LinearProgram<Scalar>& lp, const SimplexOptions& opt, double perturbation = 0.0,
                      std::uint64_t seed = 0x5eed)
        : lp_(lp), n_(lp.num_variables()), m_(lp.num_rows()), max_pivots_(opt.max_pivots),
          perturbation_(perturbation), seed_(seed) {
        if constexpr (kFloat) {
            eps_ = opt.tolerance;
            pivot_tol_ = std::max(opt.tolerance, 1e-9) * 100;
            cost_tol_ = pivot_tol_;
        }
        for (const auto& r : lp.rows)
            if (r.size() != n_) throw Error(ErrorCode::invalid_argument, "LP row has wrong length");
        if (lp.rhs.size() != m_) throw Error(ErrorCode::invalid_argument, "LP rhs has wrong length");
    }

    LpResult<Scalar> run() {
        LpResult<Scalar> res;
        setup();
        if (needs_phase_one()) {
            const auto st = phase_one();
            if (st != LpStatus::optimal) {
                res.status = st;
                res.pivots = pivots_;
                return res;
            }
        }
        load_objective();
        res.status = iterate();
        res.pivots = pivots_;
        extract(res);
        return res;
    }

private:
    Scalar& a(std::size_t i, std::size_t j) { return tab_[i * cols_ + j]; }
    Scalar rhs(std::size_t i) const { return beta_[i] + pert_[i]; }

    std::size_t slack_id(std::size_t i) const { return 2 * n_ + i; }
    std::size_t aux_id() const { return 2 * n_ + m_; }

    void setup() {
        cols_ = 2 * n_;
        nonbasic_.resize(cols_);
        for (std::size_t j = 0; j < cols_; ++j) nonbasic_[j] = j;
        basic_.resize(m_);
        beta_ = lp_.rhs;
        pert_.assign(m_, Scalar(0));
        if constexpr (kFloat) {
            if (perturbation_ > 0) {
                std::mt19937_64 rng(seed_);
                std::uniform_real_distribution<double> u(0.5, 1.0);
                for (std::size_t i = 0; i < m_; ++i)
                    pert_[i] = perturbation_ * std::max(1.0, std::abs(beta_[i])) * u(rng);
            }
        }
        tab_.assign(m_ * cols_, Scalar(0));
        for (std::size_t i = 0; i < m_; ++i) {
            basic_[i] = slack_id(i);
            for (std::size_t k = 0; k < n_; ++k) {
                a(i, k) = lp_.rows[i][k];
                a(i, n_ + k) = -lp_.rows[i][k];
            }
        }
    }

    bool needs_phase_one() const {
        for (std::size_t i = 0; i < m_; ++i)
            if (rhs(i) < -eps_) return true;
        return false;
    }

    void add_column(std::size_t var, const Scalar& entry) {
        std::vector<Scalar> t(m_ * (cols_ + 1));
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) t[i * (cols_ + 1) + j] = tab_[i * cols_ + j];
            t[i * (cols_ + 1) + cols_] = entry;
        }
        tab_ = std::move(t);
        nonbasic_.push_back(var);
        ++cols_;
    }

    void drop_column(std::size_t col) {
        std::vector<Scalar> t(m_ * (cols_ - 1));
        for (std::size_t i = 0; i < m_; ++i)
            for (std::size_t j = 0, k = 0; j < cols_; ++j)
                if (j != col) t[i * (cols_ - 1) + k++] = tab_[i * cols_ + j];
        tab_ = std::move(t);
        nonbasic_.erase(nonbasic_.begin() + static_cast<std::ptrdiff_t>(col));
        --cols_;
    }

    LpStatus phase_one() {
        add_column(aux_id(), Scalar(-1));
        cost_.assign(cols_, Scalar(0));
        cost_.back() = Scalar(-1);
        z0_ = zp_ = Scalar(0);
        std::size_t r = 0;
        for (std::size_t i = 1; i < m_; ++i)
            if (rhs(i) < rhs(r)) r = i;
        pivot(r, cols_ - 1);
        const auto st = iterate();
        if (st == LpStatus::budget_exceeded) return st;
        if (z0_ + zp_ < -std::max(eps_, pivot_tol_)) return LpStatus::infeasible;
        // drive the artificial variable out of the basis if it is still there
        for (std::size_t i = 0; i < m_; ++i) {
            if (basic_[i] != aux_id()) continue;
            std::size_t best = cols_;
            for (std::size_t j = 0; j < cols_; ++j)
                if (nonbasic_[j] != aux_id() && abs_of(a(i, j)) > eps_ &&
                    (best == cols_ || abs_of(a(i, j)) > abs_of(a(i, best))))
                    best = j;
            if (best == cols_) throw Error(ErrorCode::numerical_inconsistency, "artificial variable stuck in basis");
            pivot(i, best);
        }
        for (std::size_t j = 0; j < cols_; ++j)
            if (nonbasic_[j] == aux_id()) {
                drop_column(j);
                break;
            }
        return LpStatus::optimal;
    }

    Scalar cost_of(std::size_t var) const {
        if (var < n_) return lp_.objective[var];
        if (var < 2 * n_) return -lp_.objective[var - n_];
        return Scalar(0);
    }

    void load_objective() {
        cost_.assign(cols_, Scalar(0));
        for (std::size_t j = 0; j < cols_; ++j) cost_[j] = cost_of(nonbasic_[j]);
        z0_ = lp_.objective_constant;
        zp_ = Scalar(0);
        for (std::size_t i = 0; i < m_; ++i) {
            const Scalar cb = cost_of(basic_[i]);
            if (cb == Scalar(0)) continue;
            z0_ += cb * beta_[i];
            zp_ += cb * pert_[i];
            for (std::size_t j = 0; j < cols_; ++j) cost_[j] -= cb * a(i, j);
        }
    }

    LpStatus iterate() {
        std::size_t degenerate_run = 0;
        std::vector<bool> skipped(cols_, false); // columns whose only positive entries are noise
        for (;;) {
            const bool bland = degenerate_run >= kDegenerateRunLimit;
            std::size_t q = cols_;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (skipped[j] || !(cost_[j] > cost_tol_)) continue;
                if (q == cols_) q = j;
                else if (bland ? nonbasic_[j] < nonbasic_[q]
                               : (cost_[j] > cost_[q] || (cost_[j] == cost_[q] && nonbasic_[j] < nonbasic_[q])))
                    q = j;
            }
            if (q == cols_) return LpStatus::optimal;
            const std::size_t r = bland ? bland_ratio_test(q) : harris_ratio_test(q);
            if (r == m_) {
                bool any_positive = false;
                for (std::size_t i = 0; i < m_ && !any_positive; ++i) any_positive = a(i, q) > eps_;
                if (!any_positive) return LpStatus::unbounded;
                skipped[q] = true;
                continue;
            }
            if (pivots_ >= max_pivots_) return LpStatus::budget_exceeded;
            const Scalar before = z0_ + zp_;
            pivot(r, q);
            std::fill(skipped.begin(), skipped.end(), false);
            if (z0_ + zp_ > before + progress_slack(before)) degenerate_run = 0;
            else ++degenerate_run;
        }
    }

    static constexpr std::size_t kDegenerateRunLimit = 64;

    bool pivot_ok(const Scalar& piv) const {
        if constexpr (kFloat) return piv > pivot_tol_;
        else return piv > Scalar(0);
    }

    Scalar clipped_rhs(std::size_t i) const {
        const Scalar v = rhs(i);
        return v < Scalar(0) ? Scalar(0) : v;
    }

    // Minimum ratio, ties to the smallest basic id.
    std::size_t bland_ratio_test(std::size_t q) {
        std::size_t r = m_;
        Scalar best{0};
        for (std::size_t i = 0; i < m_; ++i) {
            const Scalar& piv = a(i, q);
            if (!pivot_ok(piv)) continue;
            const Scalar ratio = clipped_rhs(i) / piv;
            if (r == m_ || ratio < best - tie_slack(best) ||
                (!(ratio > best + tie_slack(best)) && basic_[i] < basic_[r])) {
                r = i;
                best = ratio;
            }
        }
        return r;
    }

    // Two-pass test: bound the step with relaxed ratios, then take the largest
    // pivot among rows whose exact ratio fits under that bound.
    std::size_t harris_ratio_test(std::size_t q) {
        if constexpr (!kFloat) {
            return bland_ratio_test(q);
        } else {
            Scalar bound = std::numeric_limits<Scalar>::infinity();
            for (std::size_t i = 0; i < m_; ++i) {
                const Scalar piv = a(i, q);
                if (pivot_ok(piv)) bound = std::min(bound, (clipped_rhs(i) + eps_) / piv);
            }
            std::size_t r = m_;
            for (std::size_t i = 0; i < m_; ++i) {
                const Scalar piv = a(i, q);
                if (pivot_ok(piv) && clipped_rhs(i) / piv <= bound && (r == m_ || piv > a(r, q))) r = i;
            }
            return r;
        }
    }

    Scalar progress_slack(const Scalar& v) const {
        if constexpr (kFloat) return eps_ * 1e-3 * std::max(Scalar(1), abs_of(v));
        else return Scalar(0);
    }

    Scalar tie_slack(const Scalar& v) const {
        if constexpr (kFloat) return 1e-12 * std::max(Scalar(1), abs_of(v));
        else return Scalar(0);
    }

    void pivot(std::size_t r, std::size_t q) {
        ++pivots_;
        const Scalar p = a(r, q);
        const Scalar inv = Scalar(1) / p;
        Scalar* row_r = &tab_[r * cols_];
        for (std::size_t j = 0; j < cols_; ++j)
            if (j != q) row_r[j] *= inv;
        row_r[q] = inv;
        beta_[r] *= inv;
        pert_[r] *= inv;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r) continue;
            Scalar* row_i = &tab_[i * cols_];
            const Scalar f = row_i[q];
            if (f == Scalar(0)) continue;
            for (std::size_t j = 0; j < cols_; ++j)
                if (j != q && row_r[j] != Scalar(0)) row_i[j] -= f * row_r[j];
            row_i[q] = -f * inv;
            beta_[i] -= f * beta_[r];
            pert_[i] -= f * pert_[r];
        }
        const Scalar cq = cost_[q];
        if (cq != Scalar(0)) {
            for (std::size_t j = 0; j < cols_; ++j)
                if (j != q) cost_[j] -= cq * row_r[j];
            cost_[q] = -cq * inv;
            z0_ += cq * beta_[r];
            zp_ += cq * pert_[r];
        }
        std::swap(basic_[r], nonbasic_[q]);
    }

    void extract(LpResult<Scalar>& res) {
        std::vector<Scalar> val(2 * n_ + m_, Scalar(0));
        for (std::size_t i = 0; i < m_; ++i)
            if (basic_[i] < val.size()) val[basic_[i]] = beta_[i];
        res.x.assign(n_, Scalar(0));
        for (std::size_t k = 0; k < n_; ++k) res.x[k] = val[k] - val[n_ + k];
        res.value = z0_;
        res.dual.assign(m_, Scalar(0));
        for (std::size_t j = 0; j < cols_; ++j) {
            const auto v = nonbasic_[j];
            if (v >= 2 * n_ && v < 2 * n_ + m_) {
                const Scalar y = -cost_[j];
                res.dual[v - 2 * n_] = y < Scalar(0) ? Scalar(0) : y;
            }
        }
    }

    const LinearProgram<Scalar>& lp_;
    std::size_t n_, m_;
    std::size_t max_pivots_;
    double perturbation_;
    std::uint64_t seed_;
    Scalar eps_{0};
    Scalar pivot_tol_{0};
    Scalar cost_tol_{0};
    std::size_t cols_ = 0;
    std::vector<Scalar> tab_;
    std::vector<Scalar> beta_;
    std::vector<Scalar> pert_;
    std::vector<Scalar> cost_;
    Scalar z0_{0};
    Scalar zp_{0};
    std::vector<std::size_t> basic_;
    std::vector<std::size_t> nonbasic_;
    std::size_t pivots_ = 0;
};

template <class Scalar>
void certify(const LinearProgram<Scalar>& lp, LpResult<Scalar>& res) {
    res.dual_value = lp.objective_constant;
    for (std::size_t i = 0; i < lp.num_rows(); ++i) res.dual_value += res.dual[i] * lp.rhs[i];
    res.dual_residual = Scalar(0);
    for (std::size_t k = 0; k < lp.num_variables(); ++k) {
        Scalar s = lp.objective[k];
        for (std::size_t i = 0; i < lp.num_rows(); ++i)
            if (res.dual[i] != Scalar(0)) s -= res.dual[i] * lp.rows[i][k];
        res.dual_residual = std::max(res.dual_residual, abs_of(s));
    }
    res.primal_violation = Scalar(0);
    Scalar value = lp.objective_constant;
    for (std::size_t k = 0; k < lp.num_variables(); ++k) value += lp.objective[k] * res.x[k];
    res.value = value;
    for (std::size_t i = 0; i < lp.num_rows(); ++i) {
        Scalar s = -lp.rhs[i];
        for (std::size_t k = 0; k < lp.num_variables(); ++k) s += lp.rows[i][k] * res.x[k];
        res.primal_violation = std::max(res.primal_violation, s);
    }
}

inline bool healthy(const LpResult<double>& r, double tol) {
    if (r.status != LpStatus::optimal) return false;
    const double scale = std::max(1.0, std::abs(r.value));
    return r.primal_violation <= 1e3 * tol && r.dual_residual <= 1e3 * tol &&
           std::abs(r.value - r.dual_value) <= 1e-7 * scale;
}

} // namespace detail

/// Solves the LP; for optimal results the dual vector, dual objective and the
/// residuals of both feasibility systems are filled in.
///
/// Floating point solves start with a perturbation of relative size 1e-7. If
/// the unperturbed solution at the final basis is not clean (primal violation,
/// dual residual or duality gap out of tolerance), the solve is repeated with a
/// smaller perturbation and a fresh seed, then with none.
template <class Scalar>
LpResult<Scalar> solve_simplex(const LinearProgram<Scalar>& lp, const SimplexOptions& opt = {}) {
    if constexpr (!std::is_floating_point_v<Scalar>) {
        auto res = detail::DictionarySimplex<Scalar>(lp, opt).run();
        if (res.status == LpStatus::optimal || res.status == LpStatus::budget_exceeded) detail::certify(lp, res);
        return res;
    } else {
        const double schedule[] = {1e-7, 1e-10, 0.0};
        const std::size_t attempts = opt.allow_perturbed_restart ? 3 : 1;
        LpResult<Scalar> first;
        std::size_t total_pivots = 0;
        for (std::size_t k = 0; k < attempts; ++k) {
            auto res = detail::DictionarySimplex<Scalar>(lp, opt, schedule[k], 0x5eed + k).run();
            total_pivots += res.pivots;
            if (res.status == LpStatus::optimal || res.status == LpStatus::budget_exceeded) detail::certify(lp, res);
            if (k == 0) first = res;
            const bool done = res.status == LpStatus::infeasible || res.status == LpStatus::unbounded ||
                              detail::healthy(res, opt.tolerance);
            if (done || (k == 0 && res.status == LpStatus::budget_exceeded)) {
                res.pivots = total_pivots;
                if (k > 0) {
                    res.perturbed_restart = true;
                    res.diagnostics.push_back("numerically unhealthy basis; re-solved with perturbation " +
                                              std::to_string(schedule[k]));
                }
                return res;
            }
        }
        first.pivots = total_pivots;
        first.diagnostics.push_back("perturbed restarts did not produce a clean basis");
        return first;
    }
}

} // namespace turanlab

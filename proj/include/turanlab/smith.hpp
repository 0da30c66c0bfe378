#pragma once

// Integer lattice utilities: Hermite-style incremental bases and Smith normal
// form. Used to present quotients ZZ^r / L as products of cyclic groups.

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "turanlab/error.hpp"

namespace turanlab {

using IntVector = std::vector<std::int64_t>;
using IntMatrix = std::vector<IntVector>;

namespace detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r))
        throw Error(ErrorCode::invalid_argument, "integer overflow in lattice reduction");
    return r;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_add_overflow(a, b, &r))
        throw Error(ErrorCode::invalid_argument, "integer overflow in lattice reduction");
    return r;
}

// Returns (g, p, q) with p*a + q*b == g == gcd(a, b) >= 0.
inline std::tuple<std::int64_t, std::int64_t, std::int64_t> extended_gcd(std::int64_t a,
                                                                         std::int64_t b) {
    std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        const std::int64_t q = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
        std::tie(old_t, t) = std::make_pair(t, old_t - q * t);
    }
    if (old_r < 0) return {-old_r, -old_s, -old_t};
    return {old_r, old_s, old_t};
}

inline std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

// row_a <- p*row_a + q*row_b ; row_b <- u*row_a + v*row_b  (simultaneously)
inline void combine_rows(IntVector& a, IntVector& b, std::int64_t p, std::int64_t q,
                         std::int64_t u, std::int64_t v) {
    for (std::size_t j = 0; j < a.size(); ++j) {
        const std::int64_t aj = a[j], bj = b[j];
        a[j] = checked_add(checked_mul(p, aj), checked_mul(q, bj));
        b[j] = checked_add(checked_mul(u, aj), checked_mul(v, bj));
    }
}

} // namespace detail

/// Full-rank sublattice of ZZ^dim kept in upper-triangular (Hermite) form.
/// Off-diagonal entries are reduced modulo the diagonal below them, which keeps
/// the numbers bounded by the diagonal for the finite-index lattices we build.
class LatticeBasis {
public:
    explicit LatticeBasis(std::size_t dim) : dim_(dim), rows_(dim) {}

    std::size_t dim() const { return dim_; }

    void insert(IntVector v) {
        if (v.size() != dim_) throw Error(ErrorCode::invalid_argument, "relation has wrong length");
        for (std::size_t i = 0; i < dim_; ++i) {
            if (v[i] == 0) continue;
            IntVector& row = rows_[i];
            if (row.empty()) {
                if (v[i] < 0)
                    for (auto& x : v) x = -x;
                row = std::move(v);
                reduce_above(i);
                return;
            }
            auto [g, p, q] = detail::extended_gcd(row[i], v[i]);
            const std::int64_t u = -v[i] / g, w = row[i] / g;
            detail::combine_rows(row, v, p, q, u, w);
            reduce_row(i);
            reduce_above(i);
        }
    }

    bool full_rank() const {
        for (const auto& r : rows_)
            if (r.empty()) return false;
        return true;
    }

    /// Rows of the basis; requires full rank.
    IntMatrix matrix() const {
        if (!full_rank()) throw Error(ErrorCode::invalid_argument, "lattice is not of full rank");
        return IntMatrix(rows_.begin(), rows_.end());
    }

    /// Index of the lattice in ZZ^dim (product of the diagonal).
    std::int64_t index() const {
        std::int64_t idx = 1;
        for (std::size_t i = 0; i < dim_; ++i) idx = detail::checked_mul(idx, rows_.at(i).at(i));
        return idx;
    }

private:
    // Reduce entries right of the diagonal of row i using the rows below it.
    void reduce_row(std::size_t i) {
        IntVector& row = rows_[i];
        for (std::size_t j = i + 1; j < dim_; ++j) {
            if (rows_[j].empty() || row[j] == 0) continue;
            const std::int64_t d = rows_[j][j];
            const std::int64_t q = (row[j] - detail::floor_mod(row[j], d)) / d;
            for (std::size_t k = j; k < dim_; ++k)
                row[k] = detail::checked_add(row[k], -detail::checked_mul(q, rows_[j][k]));
        }
    }

    void reduce_above(std::size_t i) {
        for (std::size_t r = 0; r <= i; ++r)
            if (!rows_[r].empty()) reduce_row(r);
    }

    std::size_t dim_;
    std::vector<IntVector> rows_;
};

struct SmithForm {
    IntVector diagonal;     // d_0 | d_1 | ... , all positive for full-rank input
    IntMatrix column_ops;   // V with U * A * V = diag
};

/// Smith normal form of a square full-rank integer matrix. Only the column
/// transform is tracked; row operations are not needed to build projections.
inline SmithForm smith_normal_form(IntMatrix a) {
    const std::size_t n = a.size();
    IntMatrix v(n, IntVector(n, 0));
    for (std::size_t i = 0; i < n; ++i) v[i][i] = 1;

    auto swap_cols = [&](std::size_t c1, std::size_t c2) {
        for (auto& row : a) std::swap(row[c1], row[c2]);
        for (auto& row : v) std::swap(row[c1], row[c2]);
    };
    // col_a <- p*col_a + q*col_b ; col_b <- u*col_a + w*col_b
    auto combine_cols = [&](std::size_t ca, std::size_t cb, std::int64_t p, std::int64_t q,
                            std::int64_t u, std::int64_t w) {
        for (auto* m : {&a, &v}) {
            for (auto& row : *m) {
                const std::int64_t x = row[ca], y = row[cb];
                row[ca] = detail::checked_add(detail::checked_mul(p, x), detail::checked_mul(q, y));
                row[cb] = detail::checked_add(detail::checked_mul(u, x), detail::checked_mul(w, y));
            }
        }
    };

    for (std::size_t t = 0; t < n; ++t) {
        // pivot: smallest nonzero |entry| in the trailing block
        for (;;) {
            std::size_t pr = n, pc = n;
            for (std::size_t i = t; i < n; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (a[i][j] != 0 && (pr == n || std::llabs(a[i][j]) < std::llabs(a[pr][pc])))
                        pr = i, pc = j;
            if (pr == n) throw Error(ErrorCode::invalid_argument, "relation matrix is singular");
            std::swap(a[t], a[pr]);
            swap_cols(t, pc);

            // Exact multiples are eliminated directly; otherwise a gcd step
            // replaces the pivot by a proper divisor, so the loop terminates.
            bool clean = true;
            for (std::size_t j = t + 1; j < n; ++j) {
                if (a[t][j] == 0) continue;
                if (a[t][j] % a[t][t] == 0) {
                    combine_cols(j, t, 1, -(a[t][j] / a[t][t]), 0, 1);
                    continue;
                }
                auto [g, p, q] = detail::extended_gcd(a[t][t], a[t][j]);
                combine_cols(t, j, p, q, -a[t][j] / g, a[t][t] / g);
            }
            for (std::size_t i = t + 1; i < n; ++i) {
                if (a[i][t] == 0) continue;
                if (a[i][t] % a[t][t] == 0) {
                    const std::int64_t f = a[i][t] / a[t][t];
                    for (std::size_t k = t; k < n; ++k)
                        a[i][k] = detail::checked_add(a[i][k], -detail::checked_mul(f, a[t][k]));
                    continue;
                }
                auto [g, p, q] = detail::extended_gcd(a[t][t], a[i][t]);
                detail::combine_rows(a[t], a[i], p, q, -a[i][t] / g, a[t][t] / g);
                clean = false;
            }
            if (!clean) continue; // row ops may have refilled row t
            bool divides = true;
            for (std::size_t i = t + 1; i < n && divides; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        // fold row i into row t and retry
                        for (std::size_t k = t; k < n; ++k)
                            a[t][k] = detail::checked_add(a[t][k], a[i][k]);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (a[t][t] < 0) a[t][t] = -a[t][t];
    }

    SmithForm out;
    for (std::size_t i = 0; i < n; ++i) out.diagonal.push_back(a[i][i]);
    out.column_ops = std::move(v);
    return out;
}

/// A presentation of ZZ^dim / L as a product of cyclic groups ZZ_{d_1} x ... ,
/// with the explicit surjection c -> (c V)_j mod d_j (trivial factors dropped).
struct CyclicPresentation {
    IntVector moduli;
    IntMatrix map; // dim rows, moduli.size() columns, entries reduced mod moduli[j]

    IntVector apply(const IntVector& c) const {
        IntVector out(moduli.size(), 0);
        for (std::size_t j = 0; j < moduli.size(); ++j) {
            std::int64_t acc = 0;
            for (std::size_t i = 0; i < c.size(); ++i)
                acc = detail::floor_mod(
                    detail::checked_add(acc, detail::checked_mul(detail::floor_mod(c[i], moduli[j]),
                                                                 map[i][j])),
                    moduli[j]);
            out[j] = acc;
        }
        return out;
    }
};

inline CyclicPresentation present_quotient(const LatticeBasis& lattice) {
    const SmithForm snf = smith_normal_form(lattice.matrix());
    CyclicPresentation p;
    std::vector<std::size_t> kept;
    for (std::size_t j = 0; j < snf.diagonal.size(); ++j)
        if (snf.diagonal[j] != 1) {
            kept.push_back(j);
            p.moduli.push_back(snf.diagonal[j]);
        }
    p.map.assign(lattice.dim(), IntVector(kept.size(), 0));
    for (std::size_t i = 0; i < lattice.dim(); ++i)
        for (std::size_t k = 0; k < kept.size(); ++k)
            p.map[i][k] = detail::floor_mod(snf.column_ops[i][kept[k]], p.moduli[k]);
    return p;
}

} // namespace turanlab

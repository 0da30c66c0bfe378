#pragma once

// Fourier analysis on finite abelian groups.
//
// The transform is the dense character sum f^(t) = sum_x f(x) conj(t(x)),
// evaluated one cyclic factor at a time. Characters are indexed by the same
// mixed-radix enumeration as the group (t(x) = exp(2 pi i sum t_i x_i / n_i)).

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include "turanlab/error.hpp"
#include "turanlab/group.hpp"

namespace turanlab {

using Complex = std::complex<double>;

class GroupFunction {
public:
    explicit GroupFunction(FiniteAbelianGroup g) : group_(std::move(g)), values_(group_.order(), 0.0) {}
    GroupFunction(FiniteAbelianGroup g, std::vector<double> values)
        : group_(std::move(g)), values_(std::move(values)) {
        if (values_.size() != group_.order())
            throw Error(ErrorCode::invalid_argument, "function has wrong number of values");
        for (double v : values_)
            if (!std::isfinite(v)) throw Error(ErrorCode::invalid_argument, "non-finite function value");
    }

    const FiniteAbelianGroup& group() const { return group_; }
    std::span<const double> values() const { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    double& operator[](std::size_t i) { return values_[i]; }
    std::size_t size() const { return values_.size(); }

    double sum() const {
        double s = 0;
        for (double v : values_) s += v;
        return s;
    }
    double l1_norm() const {
        double s = 0;
        for (double v : values_) s += std::abs(v);
        return s;
    }
    std::vector<std::size_t> support() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < values_.size(); ++i)
            if (values_[i] != 0.0) out.push_back(i);
        return out;
    }

private:
    FiniteAbelianGroup group_;
    std::vector<double> values_;
};

class DualFunction {
public:
    DualFunction(FiniteAbelianGroup g, std::vector<Complex> values)
        : group_(std::move(g)), values_(std::move(values)) {}

    const FiniteAbelianGroup& group() const { return group_; }
    std::span<const Complex> values() const { return values_; }
    const Complex& operator[](std::size_t i) const { return values_[i]; }
    std::size_t size() const { return values_.size(); }

private:
    FiniteAbelianGroup group_;
    std::vector<Complex> values_;
};

namespace detail {

// exp(sign * 2 pi i k / n) for k = 0..n-1, exact at multiples of a quarter turn.
inline std::vector<Complex> roots_of_unity(std::int64_t n, int sign) {
    std::vector<Complex> w(static_cast<std::size_t>(n));
    for (std::int64_t k = 0; k < n; ++k) {
        if ((4 * k) % n == 0) {
            static constexpr Complex quarter[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
            const auto q = (4 * k / n) % 4;
            w[k] = Complex(quarter[q].real(), sign * quarter[q].imag());
        } else {
            const double a = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
            w[k] = Complex(std::cos(a), sign * std::sin(a));
        }
    }
    return w;
}

// In-place transform along every axis with kernel exp(sign 2 pi i jk / n).
// Summation order per output entry is fixed (ascending j), so results do not
// depend on how callers schedule the work.
inline void transform_axes(const FiniteAbelianGroup& g, std::vector<Complex>& data, int sign) {
    std::vector<Complex> line, out;
    for (std::size_t axis = 0; axis < g.rank(); ++axis) {
        const auto n = g.moduli()[axis];
        if (n == 1) continue;
        const auto w = roots_of_unity(n, sign);
        const std::size_t stride = g.stride(axis);
        const std::size_t block = stride * static_cast<std::size_t>(n);
        line.resize(static_cast<std::size_t>(n));
        out.resize(static_cast<std::size_t>(n));
        for (std::size_t base = 0; base < data.size(); base += block) {
            for (std::size_t off = 0; off < stride; ++off) {
                for (std::int64_t j = 0; j < n; ++j) line[j] = data[base + off + j * stride];
                for (std::int64_t k = 0; k < n; ++k) {
                    Complex acc = 0;
                    for (std::int64_t j = 0; j < n; ++j) acc += line[j] * w[(j * k) % n];
                    out[k] = acc;
                }
                for (std::int64_t k = 0; k < n; ++k) data[base + off + k * stride] = out[k];
            }
        }
    }
}

} // namespace detail

/// f^(t) = sum_x f(x) conj(t(x)).
inline DualFunction dft(const GroupFunction& f) {
    std::vector<Complex> data(f.values().begin(), f.values().end());
    detail::transform_axes(f.group(), data, -1);
    return DualFunction(f.group(), std::move(data));
}

/// Complex-valued inverse: f(x) = |G|^-1 sum_t f^(t) t(x).
inline std::vector<Complex> inverse_dft_complex(const DualFunction& fhat) {
    std::vector<Complex> data(fhat.values().begin(), fhat.values().end());
    detail::transform_axes(fhat.group(), data, +1);
    const double scale = 1.0 / static_cast<double>(fhat.group().order());
    for (auto& v : data) v *= scale;
    return data;
}

/// Real part of the inverse transform.
inline GroupFunction inverse_dft(const DualFunction& fhat) {
    auto data = inverse_dft_complex(fhat);
    std::vector<double> re(data.size());
    std::transform(data.begin(), data.end(), re.begin(), [](const Complex& c) { return c.real(); });
    return GroupFunction(fhat.group(), std::move(re));
}

inline GroupFunction indicator(const FiniteAbelianGroup& g, std::span<const std::size_t> set) {
    GroupFunction f(g);
    for (auto i : set) f[i] = 1.0;
    return f;
}

inline GroupFunction delta(const FiniteAbelianGroup& g, std::size_t at = 0) {
    GroupFunction f(g);
    f[at] = 1.0;
    return f;
}

/// (f*g)(x) = sum_y f(y) g(x-y), computed directly.
inline GroupFunction convolve(const GroupFunction& f, const GroupFunction& h) {
    if (!(f.group() == h.group())) throw Error(ErrorCode::invalid_argument, "convolution across different groups");
    const auto& g = f.group();
    GroupFunction out(g);
    const auto fs = f.support();
    const auto hs = h.support();
    for (auto y : fs)
        for (auto z : hs) out[g.add(y, z)] += f[y] * h[z];
    return out;
}

/// chi_H * chi_{-H}; integer valued, f(0) = |H|, sum = |H|^2.
inline GroupFunction autocorrelation(const FiniteAbelianGroup& g, std::span<const std::size_t> h) {
    if (h.empty()) throw Error(ErrorCode::invalid_argument, "autocorrelation of an empty set");
    GroupFunction out(g);
    for (auto a : h)
        for (auto b : h) out[g.subtract(a, b)] += 1.0;
    return out;
}

struct PositiveDefiniteCheck {
    bool positive_definite = false;
    double min_real = 0;      // min over characters of Re f^
    double max_abs_imag = 0;  // max over characters of |Im f^|
    std::size_t worst_character = 0;
};

/// Finite-group Bochner test: f is positive definite iff f^ is real and >= 0.
inline PositiveDefiniteCheck is_positive_definite(const GroupFunction& f, double tol) {
    if (tol < 0) throw Error(ErrorCode::invalid_argument, "negative tolerance");
    const DualFunction fhat = dft(f);
    PositiveDefiniteCheck r;
    r.min_real = fhat[0].real();
    for (std::size_t t = 0; t < fhat.size(); ++t) {
        if (fhat[t].real() < r.min_real) r.min_real = fhat[t].real(), r.worst_character = t;
        r.max_abs_imag = std::max(r.max_abs_imag, std::abs(fhat[t].imag()));
    }
    r.positive_definite = r.min_real >= -tol && r.max_abs_imag <= tol;
    return r;
}

/// Default tolerance: 1e-9 scaled by the l1 norm.
inline PositiveDefiniteCheck is_positive_definite(const GroupFunction& f) {
    return is_positive_definite(f, 1e-9 * std::max(1.0, f.l1_norm()));
}

} // namespace turanlab

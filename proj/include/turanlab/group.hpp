#pragma once

// Finite abelian groups ZZ_{n_1} x ... x ZZ_{n_k}, their subgroups, quotients,
// endomorphisms and symmetric domains.
//
// Elements are enumerated in mixed-radix lexicographic order (first coordinate
// most significant); that index is what the Fourier transform, the LP and the
// combinatorial searches use.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "turanlab/error.hpp"
#include "turanlab/smith.hpp"

namespace turanlab {

using Element = std::vector<std::int64_t>;

inline std::string format_element(const Element& x) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
    os << ')';
    return os.str();
}

class FiniteAbelianGroup {
public:
    FiniteAbelianGroup() : FiniteAbelianGroup(IntVector{1}) {}

    explicit FiniteAbelianGroup(IntVector moduli) : moduli_(std::move(moduli)) {
        if (moduli_.empty()) throw Error(ErrorCode::invalid_argument, "group needs at least one modulus");
        strides_.assign(moduli_.size(), 1);
        std::size_t order = 1;
        for (std::size_t i = moduli_.size(); i-- > 0;) {
            if (moduli_[i] < 1)
                throw Error(ErrorCode::invalid_argument,
                            "modulus " + std::to_string(moduli_[i]) + " is not positive");
            strides_[i] = order;
            order *= static_cast<std::size_t>(moduli_[i]);
            if (order > (std::size_t{1} << 40))
                throw Error(ErrorCode::invalid_argument, "group order too large");
        }
        order_ = order;
    }

    const IntVector& moduli() const { return moduli_; }
    std::size_t rank() const { return moduli_.size(); }
    std::size_t order() const { return order_; }

    /// True when every character takes values in {+1, -1}.
    bool exponent_two() const {
        return std::all_of(moduli_.begin(), moduli_.end(), [](auto n) { return n <= 2; });
    }

    bool contains(const Element& x) const {
        if (x.size() != moduli_.size()) return false;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i] < 0 || x[i] >= moduli_[i]) return false;
        return true;
    }

    /// Reduces arbitrary integer coordinates into canonical residues.
    Element reduce(Element x) const {
        if (x.size() != moduli_.size())
            throw Error(ErrorCode::invalid_argument, "element " + format_element(x) + " has wrong rank");
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = detail::floor_mod(x[i], moduli_[i]);
        return x;
    }

    std::size_t index_of(const Element& x) const {
        if (!contains(x))
            throw Error(ErrorCode::invalid_argument, "element " + format_element(x) + " not in group");
        std::size_t idx = 0;
        for (std::size_t i = 0; i < x.size(); ++i) idx += static_cast<std::size_t>(x[i]) * strides_[i];
        return idx;
    }

    Element element(std::size_t idx) const {
        Element x(moduli_.size());
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = digit(idx, i);
        return x;
    }

    std::int64_t digit(std::size_t idx, std::size_t axis) const {
        return static_cast<std::int64_t>((idx / strides_[axis]) % static_cast<std::size_t>(moduli_[axis]));
    }

    std::size_t stride(std::size_t axis) const { return strides_[axis]; }

    std::size_t add(std::size_t a, std::size_t b) const {
        std::size_t out = 0;
        for (std::size_t i = 0; i < moduli_.size(); ++i) {
            auto s = digit(a, i) + digit(b, i);
            if (s >= moduli_[i]) s -= moduli_[i];
            out += static_cast<std::size_t>(s) * strides_[i];
        }
        return out;
    }

    std::size_t negate(std::size_t a) const {
        std::size_t out = 0;
        for (std::size_t i = 0; i < moduli_.size(); ++i) {
            const auto d = digit(a, i);
            out += static_cast<std::size_t>(d == 0 ? 0 : moduli_[i] - d) * strides_[i];
        }
        return out;
    }

    std::size_t subtract(std::size_t a, std::size_t b) const { return add(a, negate(b)); }

    /// k * a for an integer multiplier.
    std::size_t scale(std::size_t a, std::int64_t k) const {
        std::size_t out = 0;
        for (std::size_t i = 0; i < moduli_.size(); ++i) {
            const auto d = detail::floor_mod(
                detail::checked_mul(detail::floor_mod(k, moduli_[i]), digit(a, i)), moduli_[i]);
            out += static_cast<std::size_t>(d) * strides_[i];
        }
        return out;
    }

    /// Sum over axes of t_i x_i / n_i reduced mod 1, as a numerator over lcm.
    /// Used for exact character evaluation: gamma(x) = exp(2 pi i * num / den).
    std::pair<std::int64_t, std::int64_t> pairing(std::size_t gamma, std::size_t x) const {
        std::int64_t den = 1;
        for (auto n : moduli_) den = std::lcm(den, n);
        std::int64_t num = 0;
        for (std::size_t i = 0; i < moduli_.size(); ++i) {
            const auto w = den / moduli_[i];
            num = detail::floor_mod(num + detail::checked_mul(digit(gamma, i) * digit(x, i) % moduli_[i], w), den);
        }
        return {num, den};
    }

    friend bool operator==(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
        return a.moduli_ == b.moduli_;
    }

private:
    IntVector moduli_;
    std::vector<std::size_t> strides_;
    std::size_t order_ = 1;
};

inline FiniteAbelianGroup make_group(IntVector moduli) { return FiniteAbelianGroup(std::move(moduli)); }

inline FiniteAbelianGroup direct_product(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
    IntVector m = a.moduli();
    m.insert(m.end(), b.moduli().begin(), b.moduli().end());
    return FiniteAbelianGroup(std::move(m));
}

/// Sorted index set plus a membership bitmap over a parent group.
class ElementSet {
public:
    ElementSet() = default;
    ElementSet(std::size_t group_order, std::vector<std::size_t> indices)
        : member_(group_order, false) {
        for (auto i : indices) {
            if (i >= group_order) throw Error(ErrorCode::invalid_argument, "index outside group");
            member_[i] = true;
        }
        for (std::size_t i = 0; i < group_order; ++i)
            if (member_[i]) indices_.push_back(i);
    }

    const std::vector<std::size_t>& indices() const { return indices_; }
    std::size_t size() const { return indices_.size(); }
    bool contains(std::size_t i) const { return i < member_.size() && member_[i]; }
    auto begin() const { return indices_.begin(); }
    auto end() const { return indices_.end(); }

    friend bool operator==(const ElementSet& a, const ElementSet& b) { return a.indices_ == b.indices_; }

private:
    std::vector<bool> member_;
    std::vector<std::size_t> indices_;
};

inline std::vector<std::size_t> indices_of(const FiniteAbelianGroup& g, const std::vector<Element>& xs) {
    std::vector<std::size_t> out;
    out.reserve(xs.size());
    for (const auto& x : xs) out.push_back(g.index_of(x));
    return out;
}

class Subgroup {
public:
    const FiniteAbelianGroup& parent() const { return parent_; }
    const std::vector<Element>& generators() const { return generators_; }
    const ElementSet& elements() const { return elements_; }
    std::size_t order() const { return elements_.size(); }
    std::size_t index() const { return parent_.order() / elements_.size(); }
    bool contains(std::size_t i) const { return elements_.contains(i); }

    /// Smallest subgroup containing the generators (BFS over generator steps).
    static Subgroup generated(const FiniteAbelianGroup& g, std::vector<Element> gens) {
        std::vector<std::size_t> gen_idx = indices_of(g, gens);
        std::vector<bool> seen(g.order(), false);
        std::vector<std::size_t> found{0};
        seen[0] = true;
        std::deque<std::size_t> queue{0};
        while (!queue.empty()) {
            const auto x = queue.front();
            queue.pop_front();
            for (auto s : gen_idx) {
                const auto y = g.add(x, s);
                if (!seen[y]) {
                    seen[y] = true;
                    found.push_back(y);
                    queue.push_back(y);
                }
            }
        }
        Subgroup k;
        k.parent_ = g;
        k.generators_ = std::move(gens);
        k.elements_ = ElementSet(g.order(), std::move(found));
        return k;
    }

    /// Validates that the given elements already form a subgroup.
    static Subgroup from_elements(const FiniteAbelianGroup& g, const std::vector<Element>& xs) {
        ElementSet set(g.order(), indices_of(g, xs));
        if (!set.contains(0)) throw Error(ErrorCode::invalid_argument, "subgroup must contain 0");
        for (auto a : set)
            for (auto b : set)
                if (!set.contains(g.subtract(a, b)))
                    throw Error(ErrorCode::invalid_argument,
                                "set is not closed: " + format_element(g.element(a)) + " - " +
                                    format_element(g.element(b)));
        Subgroup k;
        k.parent_ = g;
        for (auto i : set) k.generators_.push_back(g.element(i));
        k.elements_ = std::move(set);
        return k;
    }

private:
    FiniteAbelianGroup parent_;
    std::vector<Element> generators_;
    ElementSet elements_;
};

inline Subgroup subgroup_generated(const FiniteAbelianGroup& g, std::vector<Element> gens) {
    return Subgroup::generated(g, std::move(gens));
}

/// A homomorphism from a finite abelian group onto a product of cyclics,
/// given by an explicit presentation. Used both for quotient projections and
/// for re-indexing a subgroup as a group in its own right.
class Projection {
public:
    Projection(FiniteAbelianGroup source, FiniteAbelianGroup target, CyclicPresentation presentation)
        : source_(std::move(source)), target_(std::move(target)), presentation_(std::move(presentation)) {}

    const FiniteAbelianGroup& source() const { return source_; }
    const FiniteAbelianGroup& target() const { return target_; }

    Element operator()(const Element& x) const {
        if (presentation_.moduli.empty()) return Element{0};
        return presentation_.apply(x);
    }
    std::size_t operator()(std::size_t x) const { return target_.index_of((*this)(source_.element(x))); }

private:
    FiniteAbelianGroup source_;
    FiniteAbelianGroup target_;
    CyclicPresentation presentation_;
};

inline FiniteAbelianGroup group_from_presentation(const CyclicPresentation& p) {
    return p.moduli.empty() ? FiniteAbelianGroup(IntVector{1}) : FiniteAbelianGroup(p.moduli);
}

/// G / K as a product of cyclic groups via the Smith form of the relations
/// { n_i e_i } and the generators of K.
inline Projection quotient_group(const FiniteAbelianGroup& g, const Subgroup& k) {
    if (!(k.parent() == g)) throw Error(ErrorCode::invalid_argument, "subgroup belongs to a different group");
    LatticeBasis lattice(g.rank());
    for (std::size_t i = 0; i < g.rank(); ++i) {
        IntVector e(g.rank(), 0);
        e[i] = g.moduli()[i];
        lattice.insert(std::move(e));
    }
    for (const auto& gen : k.generators()) lattice.insert(gen);
    CyclicPresentation p = present_quotient(lattice);
    auto target = group_from_presentation(p);
    return Projection(g, std::move(target), std::move(p));
}

/// The subgroup K presented as a product of cyclics, together with the
/// isomorphism from K (given as parent indices) to that group.
struct SubgroupIsomorphism {
    FiniteAbelianGroup group;
    std::vector<std::size_t> image; // parent index -> index in `group` (only for members of K)
};

inline SubgroupIsomorphism present_subgroup(const Subgroup& k) {
    const auto& g = k.parent();
    std::vector<std::size_t> gens;
    for (const auto& x : k.generators()) {
        const auto i = g.index_of(x);
        if (i != 0) gens.push_back(i);
    }
    if (gens.empty()) {
        SubgroupIsomorphism out{FiniteAbelianGroup(IntVector{1}), std::vector<std::size_t>(g.order(), 0)};
        return out;
    }
    const std::size_t r = gens.size();
    // Spanning tree words c(x) in ZZ^r; non-tree edges give the relations.
    LatticeBasis lattice(r);
    for (std::size_t j = 0; j < r; ++j) {
        std::int64_t ord = 1;
        for (std::size_t y = gens[j]; y != 0; y = g.add(y, gens[j])) ++ord;
        IntVector e(r, 0);
        e[j] = ord;
        lattice.insert(std::move(e));
    }
    std::vector<std::optional<IntVector>> word(g.order());
    word[0] = IntVector(r, 0);
    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
        const auto x = queue.front();
        queue.pop_front();
        for (std::size_t j = 0; j < r; ++j) {
            const auto y = g.add(x, gens[j]);
            IntVector w = *word[x];
            ++w[j];
            if (!word[y]) {
                word[y] = std::move(w);
                queue.push_back(y);
            } else {
                for (std::size_t t = 0; t < r; ++t) w[t] -= (*word[y])[t];
                lattice.insert(std::move(w));
            }
        }
    }
    const CyclicPresentation p = present_quotient(lattice);
    SubgroupIsomorphism out{group_from_presentation(p), std::vector<std::size_t>(g.order(), 0)};
    for (auto x : k.elements()) {
        const Element img = p.moduli.empty() ? Element{0} : p.apply(*word[x]);
        out.image[x] = out.group.index_of(img);
    }
    return out;
}

/// An additive map G -> G fixed by the images of the canonical generators.
class Endomorphism {
public:
    Endomorphism(FiniteAbelianGroup g, std::vector<Element> images) : group_(std::move(g)) {
        if (images.size() != group_.rank())
            throw Error(ErrorCode::invalid_homomorphism, "need one image per cyclic factor");
        for (std::size_t i = 0; i < images.size(); ++i) {
            const auto idx = group_.index_of(images[i]);
            if (group_.scale(idx, group_.moduli()[i]) != 0)
                throw Error(ErrorCode::invalid_homomorphism,
                            "order of image " + format_element(images[i]) + " does not divide " +
                                std::to_string(group_.moduli()[i]));
            images_.push_back(idx);
        }
        std::vector<bool> hit(group_.order(), false);
        std::size_t distinct = 0;
        for (std::size_t x = 0; x < group_.order(); ++x) {
            const auto y = apply(x);
            if (!hit[y]) hit[y] = true, ++distinct;
        }
        bijective_ = distinct == group_.order();
    }

    const FiniteAbelianGroup& group() const { return group_; }
    bool bijective() const { return bijective_; }

    std::size_t apply(std::size_t x) const {
        std::size_t out = 0;
        for (std::size_t i = 0; i < images_.size(); ++i)
            out = group_.add(out, group_.scale(images_[i], group_.digit(x, i)));
        return out;
    }
    Element apply(const Element& x) const { return group_.element(apply(group_.index_of(x))); }

private:
    FiniteAbelianGroup group_;
    std::vector<std::size_t> images_;
    bool bijective_ = false;
};

inline std::pair<Element, bool> apply_endomorphism(const FiniteAbelianGroup& g, std::vector<Element> images,
                                                   const Element& x) {
    const Endomorphism phi(g, std::move(images));
    return {phi.apply(x), phi.bijective()};
}

/// A 0-containing, negation-closed subset of a finite abelian group.
class SymmetricDomain {
public:
    static SymmetricDomain from_indices(const FiniteAbelianGroup& g, std::vector<std::size_t> idx,
                                        bool symmetrize = false) {
        if (symmetrize) {
            const auto n = idx.size();
            for (std::size_t i = 0; i < n; ++i) idx.push_back(g.negate(idx[i]));
            idx.push_back(0);
        }
        ElementSet set(g.order(), std::move(idx));
        if (!set.contains(0)) throw Error(ErrorCode::domain_not_symmetric, "domain does not contain 0");
        for (auto i : set)
            if (!set.contains(g.negate(i)))
                throw Error(ErrorCode::domain_not_symmetric,
                            format_element(g.element(i)) + " is in the domain but its negative is not");
        SymmetricDomain d;
        d.group_ = g;
        d.set_ = std::move(set);
        return d;
    }

    const FiniteAbelianGroup& group() const { return group_; }
    const ElementSet& elements() const { return set_; }
    std::size_t size() const { return set_.size(); }
    bool contains(std::size_t i) const { return set_.contains(i); }
    bool contains(const Element& x) const { return group_.contains(x) && set_.contains(group_.index_of(x)); }

    bool subset_of(const SymmetricDomain& other) const {
        return std::all_of(set_.begin(), set_.end(), [&](auto i) { return other.contains(i); });
    }

    std::vector<Element> as_elements() const {
        std::vector<Element> out;
        for (auto i : set_) out.push_back(group_.element(i));
        return out;
    }

private:
    FiniteAbelianGroup group_;
    ElementSet set_;
};

inline SymmetricDomain symmetric_domain(const FiniteAbelianGroup& g, const std::vector<Element>& xs,
                                        bool symmetrize = false) {
    return SymmetricDomain::from_indices(g, indices_of(g, xs), symmetrize);
}

inline SymmetricDomain difference_set(const FiniteAbelianGroup& g, const std::vector<std::size_t>& h) {
    if (h.empty()) throw Error(ErrorCode::invalid_argument, "difference set of an empty set");
    std::vector<std::size_t> diffs;
    diffs.reserve(h.size() * h.size());
    for (auto a : h)
        for (auto b : h) diffs.push_back(g.subtract(a, b));
    return SymmetricDomain::from_indices(g, std::move(diffs));
}

inline SymmetricDomain difference_set(const FiniteAbelianGroup& g, const std::vector<Element>& h) {
    return difference_set(g, indices_of(g, h));
}

/// Omega x Omega' inside G x G'.
inline SymmetricDomain product_domain(const SymmetricDomain& a, const SymmetricDomain& b) {
    const auto g = direct_product(a.group(), b.group());
    std::vector<std::size_t> idx;
    for (auto x : a.elements())
        for (auto y : b.elements()) idx.push_back(x * b.group().order() + y);
    return SymmetricDomain::from_indices(g, std::move(idx));
}

/// phi(Omega) for an endomorphism phi.
inline SymmetricDomain image_domain(const SymmetricDomain& omega, const Endomorphism& phi) {
    std::vector<std::size_t> idx;
    for (auto x : omega.elements()) idx.push_back(phi.apply(x));
    return SymmetricDomain::from_indices(omega.group(), std::move(idx));
}

} // namespace turanlab

#pragma once

// Problem specifications read by the command-line tool. The schema is
// documented in README.md; unknown fields are errors.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "turanlab/cli/json_io.hpp"
#include "turanlab/lattice_z.hpp"
#include "turanlab/real_line.hpp"

namespace turanlab::cli {

struct FiniteSpec {
    IntVector moduli;
    std::vector<Element> domain;
    bool symmetrize = false;
    bool exact = false;
    std::vector<std::vector<Element>> tiles;   // hints.H
    std::vector<std::vector<Element>> spectra; // hints.T, aligned with H
    std::vector<Element> lambda;               // hints.lambda
    std::vector<std::vector<Element>> subgroups; // hints.K, generator lists
};

struct PeriodicSpec {
    IntMatrix basis;
    std::vector<Point> residues;
};

struct LatticeSpec {
    std::size_t dimension = 1;
    std::vector<Point> domain;
    bool symmetrize = false;
    std::vector<std::int64_t> moduli; // hints.M; empty means the default schedule
    std::optional<PeriodicSpec> lambda;
    std::vector<Point> witness;       // hints.H
    std::optional<std::int64_t> greedy_half_width;
};

struct TentSpec {
    Rational c;
    std::vector<Rational> shifts;
};

struct RealSpec {
    std::vector<OpenInterval> domain;
    std::vector<Rational> lattice_steps; // hints.c
    std::vector<TentSpec> tents;         // hints.tents
};

struct ProblemSpec {
    std::variant<FiniteSpec, LatticeSpec, RealSpec> problem;
    std::optional<std::uint64_t> budget_nodes;
    std::optional<double> time_limit;
    std::optional<double> tolerance;
    json raw; // the document as read, echoed in reports
};

inline const char* setting_name(const ProblemSpec& s) {
    switch (s.problem.index()) {
    case 0: return "finite-group";
    case 1: return "lattice-z";
    default: return "real-line";
    }
}

namespace detail {

inline std::vector<Point> parse_points(const json& v, std::size_t d, const std::string& path) {
    return parse_elements(v, d, path);
}

inline FiniteSpec parse_finite(const json& doc) {
    require_fields(doc, "spec", {"setting", "moduli", "domain", "symmetrize", "mode", "hints", "budget", "tolerance", "search"});
    FiniteSpec s;
    const auto& mod = as_array(member(doc, "spec", "moduli"), "spec.moduli");
    if (mod.empty()) parse_fail("spec.moduli", "at least one modulus is required");
    for (std::size_t i = 0; i < mod.size(); ++i) {
        const auto m = as_int(mod[i], "spec.moduli[" + std::to_string(i) + "]");
        if (m < 1) parse_fail("spec.moduli[" + std::to_string(i) + "]", "moduli must be positive");
        s.moduli.push_back(m);
    }
    const auto rank = s.moduli.size();
    s.domain = parse_elements(member(doc, "spec", "domain"), rank, "spec.domain");
    if (doc.contains("symmetrize")) s.symmetrize = as_bool(doc["symmetrize"], "spec.symmetrize");
    if (doc.contains("mode")) {
        const auto& m = doc["mode"];
        if (m == "exact") s.exact = true;
        else if (m != "float") parse_fail("spec.mode", "expected \"float\" or \"exact\"");
    }
    if (doc.contains("hints")) {
        const auto& h = doc["hints"];
        require_fields(h, "spec.hints", {"H", "T", "lambda", "K"});
        auto sets = [&](const char* key) {
            std::vector<std::vector<Element>> out;
            if (!h.contains(key)) return out;
            const std::string path = std::string("spec.hints.") + key;
            const auto& arr = as_array(h[key], path);
            for (std::size_t i = 0; i < arr.size(); ++i)
                out.push_back(parse_elements(arr[i], rank, path + "[" + std::to_string(i) + "]"));
            return out;
        };
        s.tiles = sets("H");
        s.spectra = sets("T");
        s.subgroups = sets("K");
        if (s.spectra.size() > s.tiles.size()) parse_fail("spec.hints.T", "more spectra than sets in hints.H");
        if (h.contains("lambda")) s.lambda = parse_elements(h["lambda"], rank, "spec.hints.lambda");
    }
    return s;
}

inline LatticeSpec parse_lattice(const json& doc) {
    require_fields(doc, "spec", {"setting", "dimension", "domain", "symmetrize", "hints", "tolerance", "search"});
    LatticeSpec s;
    if (doc.contains("dimension")) {
        const auto d = as_int(doc["dimension"], "spec.dimension");
        if (d < 1) parse_fail("spec.dimension", "must be positive");
        s.dimension = static_cast<std::size_t>(d);
    }
    s.domain = parse_points(member(doc, "spec", "domain"), s.dimension, "spec.domain");
    if (doc.contains("symmetrize")) s.symmetrize = as_bool(doc["symmetrize"], "spec.symmetrize");
    if (doc.contains("hints")) {
        const auto& h = doc["hints"];
        require_fields(h, "spec.hints", {"M", "lambda", "H", "greedy_window"});
        if (h.contains("M")) {
            const auto& arr = as_array(h["M"], "spec.hints.M");
            for (std::size_t i = 0; i < arr.size(); ++i) s.moduli.push_back(as_int(arr[i], "spec.hints.M[" + std::to_string(i) + "]"));
        }
        if (h.contains("lambda")) {
            const auto& l = h["lambda"];
            require_fields(l, "spec.hints.lambda", {"basis", "residues"});
            PeriodicSpec p;
            const auto& b = as_array(member(l, "spec.hints.lambda", "basis"), "spec.hints.lambda.basis");
            for (std::size_t i = 0; i < b.size(); ++i)
                p.basis.push_back(parse_element(b[i], s.dimension, "spec.hints.lambda.basis[" + std::to_string(i) + "]"));
            p.residues = parse_points(member(l, "spec.hints.lambda", "residues"), s.dimension, "spec.hints.lambda.residues");
            s.lambda = std::move(p);
        }
        if (h.contains("H")) s.witness = parse_points(h["H"], s.dimension, "spec.hints.H");
        if (h.contains("greedy_window")) s.greedy_half_width = as_int(h["greedy_window"], "spec.hints.greedy_window");
    }
    return s;
}

inline RealSpec parse_real(const json& doc) {
    require_fields(doc, "spec", {"setting", "domain", "hints", "search"});
    RealSpec s;
    const auto& dom = as_array(member(doc, "spec", "domain"), "spec.domain");
    for (std::size_t i = 0; i < dom.size(); ++i) {
        const std::string path = "spec.domain[" + std::to_string(i) + "]";
        if (!dom[i].is_array() || dom[i].size() != 2) parse_fail(path, "expected [lo, hi]");
        s.domain.push_back({parse_rational(dom[i][0], path + "[0]"), parse_rational(dom[i][1], path + "[1]")});
    }
    if (doc.contains("hints")) {
        const auto& h = doc["hints"];
        require_fields(h, "spec.hints", {"c", "tents"});
        if (h.contains("c")) {
            if (h["c"].is_array()) {
                for (std::size_t i = 0; i < h["c"].size(); ++i)
                    s.lattice_steps.push_back(parse_rational(h["c"][i], "spec.hints.c[" + std::to_string(i) + "]"));
            } else {
                s.lattice_steps.push_back(parse_rational(h["c"], "spec.hints.c"));
            }
        }
        if (h.contains("tents")) {
            const auto& arr = as_array(h["tents"], "spec.hints.tents");
            for (std::size_t i = 0; i < arr.size(); ++i) {
                const std::string path = "spec.hints.tents[" + std::to_string(i) + "]";
                require_fields(arr[i], path, {"c", "shifts"});
                TentSpec t{parse_rational(member(arr[i], path, "c"), path + ".c"), {}};
                const auto& sh = as_array(member(arr[i], path, "shifts"), path + ".shifts");
                for (std::size_t j = 0; j < sh.size(); ++j)
                    t.shifts.push_back(parse_rational(sh[j], path + ".shifts[" + std::to_string(j) + "]"));
                s.tents.push_back(std::move(t));
            }
        }
    }
    return s;
}

} // namespace detail

inline ProblemSpec parse_spec(const json& doc) {
    if (!doc.is_object()) parse_fail("spec", "expected an object");
    const auto& setting = member(doc, "spec", "setting");
    ProblemSpec spec;
    spec.raw = doc;
    if (setting == "finite-group") {
        spec.problem = detail::parse_finite(doc);
        if (doc.contains("budget")) {
            const auto& b = doc["budget"];
            require_fields(b, "spec.budget", {"nodes", "time_limit"});
            if (b.contains("nodes")) {
                const auto n = as_int(b["nodes"], "spec.budget.nodes");
                if (n < 1) parse_fail("spec.budget.nodes", "must be positive");
                spec.budget_nodes = static_cast<std::uint64_t>(n);
            }
            if (b.contains("time_limit")) spec.time_limit = as_double(b["time_limit"], "spec.budget.time_limit");
        }
    } else if (setting == "lattice-z") {
        spec.problem = detail::parse_lattice(doc);
    } else if (setting == "real-line") {
        spec.problem = detail::parse_real(doc);
    } else {
        parse_fail("spec.setting", "expected \"finite-group\", \"lattice-z\" or \"real-line\"");
    }
    if (doc.contains("tolerance")) {
        spec.tolerance = as_double(doc["tolerance"], "spec.tolerance");
        if (*spec.tolerance < 0) parse_fail("spec.tolerance", "must be nonnegative");
    }
    if (doc.contains("search") && !doc["search"].is_object()) parse_fail("spec.search", "expected an object");
    return spec;
}

} // namespace turanlab::cli

#pragma once

// The `turan` and `search` subcommands, independent of argument parsing so
// that tests can drive them directly.

#include <chrono>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "turanlab/cli/report.hpp"
#include "turanlab/cli/spec.hpp"
#include "turanlab/compare.hpp"
#include "turanlab/lattice_z.hpp"
#include "turanlab/parallel.hpp"
#include "turanlab/real_line.hpp"

namespace turanlab::cli {

enum class OutputFormat { json, table };

struct GlobalOptions {
    unsigned threads = 1;
    std::optional<double> tol;
    std::optional<std::uint64_t> budget_nodes;
    std::optional<double> time_limit; // seconds
    OutputFormat output = OutputFormat::json;
    bool timings = false;
};

/// 0 success, 1 I/O or parse failure, 2 hypothesis or verification failure,
/// 3 internal error.
inline int exit_code_for(ErrorCode c) {
    switch (c) {
    case ErrorCode::parse_error:
    case ErrorCode::invalid_argument: return 1;
    case ErrorCode::numerical_inconsistency: return 3;
    default: return 2;
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::parse_error, path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline ProblemSpec load_spec(const std::string& path) { return parse_spec(parse_document(read_file(path), path)); }

namespace detail {

class Stopwatch {
public:
    double lap() {
        const auto now = std::chrono::steady_clock::now();
        const double s = std::chrono::duration<double>(now - last_).count();
        last_ = now;
        return s;
    }

private:
    std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

inline SearchBudget budget_for(const ProblemSpec& spec, const GlobalOptions& opt) {
    SearchBudget b;
    if (spec.budget_nodes) b.max_nodes = *spec.budget_nodes;
    if (opt.budget_nodes) b.max_nodes = *opt.budget_nodes;
    double t = 30;
    if (spec.time_limit) t = *spec.time_limit;
    if (opt.time_limit) t = *opt.time_limit;
    b.time_limit = std::chrono::duration<double>(t);
    return b;
}

inline double tolerance_for(const ProblemSpec& spec, const GlobalOptions& opt) {
    if (opt.tol) return *opt.tol;
    if (spec.tolerance) return *spec.tolerance;
    return 1e-9;
}

inline std::vector<std::size_t> to_indices(const FiniteAbelianGroup& g, const std::vector<Element>& xs, const char* what) {
    for (const auto& x : xs)
        if (x.size() != g.rank()) throw Error(ErrorCode::invalid_argument, std::string(what) + ": element of wrong rank");
    std::vector<Element> reduced;
    for (const auto& x : xs) reduced.push_back(g.reduce(x));
    return indices_of(g, reduced);
}

inline SymmetricDomain finite_domain(const FiniteSpec& s) {
    const auto g = make_group(s.moduli);
    return SymmetricDomain::from_indices(g, to_indices(g, s.domain, "domain"), s.symmetrize);
}

inline RunReport run_finite(const ProblemSpec& spec, const FiniteSpec& s, const GlobalOptions& opt) {
    Stopwatch clock;
    const auto omega = finite_domain(s);
    const auto& g = omega.group();
    BoundHints hints;
    for (const auto& h : s.tiles) hints.tiles.push_back(to_indices(g, h, "hints.H"));
    for (const auto& t : s.spectra) hints.spectra.push_back(to_indices(g, t, "hints.T"));
    hints.lambda = to_indices(g, s.lambda, "hints.lambda");
    for (const auto& gens : s.subgroups) hints.subgroups.push_back(subgroup_generated(g, gens));

    CompareOptions co;
    co.lp.mode = s.exact ? SolveMode::exact_rational : SolveMode::floating;
    co.budget = budget_for(spec, opt);
    co.tol = tolerance_for(spec, opt);
    auto cmp = compare_bounds(omega, hints, co);

    RunReport r;
    r.problem = spec.raw;
    r.bounds = std::move(cmp.reports);
    r.notes = std::move(cmp.notes);
    r.rejected = std::move(cmp.rejected);
    if (cmp.packing) {
        r.extra["packing_set"] = {{"elements", elements_out(g, cmp.packing->elements)},
                                  {"size", cmp.packing->elements.size()},
                                  {"maximality", to_string(cmp.packing->maximality)}};
    }
    r.timings.emplace_back("total", clock.lap());
    return r;
}

inline RunReport run_lattice(const ProblemSpec& spec, const LatticeSpec& s, const GlobalOptions& opt) {
    Stopwatch clock;
    const auto omega = LatticeDomain::from_points(s.dimension, s.domain, s.symmetrize);
    RunReport r;
    r.problem = spec.raw;
    auto triv = BoundReport::upper(BoundMethod::trivial, Rational(static_cast<long long>(omega.m())));
    triv.note = "|Omega|";
    r.bounds.push_back(triv);
    r.bounds.push_back(BoundReport::lower(BoundMethod::trivial, Rational(1)));
    auto disp = BoundReport::upper(BoundMethod::halving, Rational(static_cast<long long>(omega.m_plus())));
    disp.note = "m+ (greedy packing density)";
    r.bounds.push_back(disp);

    auto moduli = s.moduli.empty() ? default_moduli(omega) : s.moduli;
    LpLimits limits;
    std::vector<std::int64_t> usable;
    for (auto m : moduli) {
        double size = std::pow(static_cast<double>(m), static_cast<double>(omega.dimension()));
        if (size > static_cast<double>(limits.group_order_cap))
            r.notes.push_back("M = " + std::to_string(m) + " skipped: torus larger than the LP cap");
        else
            usable.push_back(m);
    }
    if (!usable.empty()) {
        auto ub = upper_bound_z(omega, usable, {}, opt.threads);
        r.bounds.push_back(ub.report);
        r.timings.emplace_back("lp", clock.lap());
    }
    if (s.lambda) {
        try {
            r.bounds.push_back(density_bound_zd(omega, PeriodicSet(s.lambda->basis, s.lambda->residues)));
        } catch (const Error& e) {
            if (e.code() == ErrorCode::invalid_argument) throw;
            r.rejected.push_back(std::string("periodic packing hint: ") + e.what());
        }
    }
    if (!s.witness.empty()) {
        try {
            r.bounds.push_back(witness_zd(s.witness, omega));
        } catch (const Error& e) {
            if (e.code() == ErrorCode::invalid_argument) throw;
            r.rejected.push_back(std::string("witness hint: ") + e.what());
        }
    }
    if (s.greedy_half_width) {
        const auto run = greedy_packing_window(omega, *s.greedy_half_width);
        r.extra["greedy"] = {{"half_width", run.half_width},
                             {"window", run.window_size},
                             {"count", run.count()},
                             {"floor", to_fraction_string(run.floor)},
                             {"density", to_fraction_string(run.density)},
                             {"verified", run.verified}};
        if (!run.verified) r.rejected.push_back("greedy window set failed the packing check");
        r.timings.emplace_back("greedy", clock.lap());
    }
    mark_best(r.bounds);
    r.timings.emplace_back("rest", clock.lap());
    return r;
}

inline RunReport run_real(const ProblemSpec& spec, const RealSpec& s) {
    const auto omega = IntervalUnion::domain(s.domain);
    RunReport r;
    r.problem = spec.raw;
    r.bounds.push_back(halving_bound(omega));
    for (const auto& c : s.lattice_steps) {
        try {
            r.bounds.push_back(lattice_certificate(omega, c));
        } catch (const Error& e) {
            if (e.code() == ErrorCode::invalid_argument) throw;
            r.rejected.push_back(std::string("lattice certificate: ") + e.what());
        }
    }
    // the component around 0 is some (-b, b); a single tent of half-width b fits
    for (const auto& p : omega.parts())
        if (p.lo < 0 && 0 < p.hi) {
            auto w = witness_in_domain(tent_train(p.hi, {Rational(0)}), omega);
            w.note = "single tent on the central interval";
            r.bounds.push_back(std::move(w));
        }
    for (const auto& t : s.tents) {
        try {
            r.bounds.push_back(witness_in_domain(tent_train(t.c, t.shifts), omega));
        } catch (const Error& e) {
            if (e.code() == ErrorCode::invalid_argument) throw;
            r.rejected.push_back(std::string("tent train: ") + e.what());
        }
    }
    mark_best(r.bounds);
    return r;
}

} // namespace detail

inline RunReport cmd_turan(const ProblemSpec& spec, const GlobalOptions& opt) {
    RunReport r;
    if (const auto* f = std::get_if<FiniteSpec>(&spec.problem)) r = detail::run_finite(spec, *f, opt);
    else if (const auto* l = std::get_if<LatticeSpec>(&spec.problem)) r = detail::run_lattice(spec, *l, opt);
    else r = detail::run_real(spec, std::get<RealSpec>(spec.problem));
    if (r.inconsistent())
        throw Error(ErrorCode::numerical_inconsistency, "best lower bound " + format_number(*r.lower()) +
                                                            " exceeds best upper bound " + format_number(*r.upper()));
    return r;
}

enum class SearchTarget { packing, spectrum };

struct SearchOutcome {
    json certificate; // the input spec with the found sets added as hints, plus a "search" record
    bool found = false;
    bool verified = false;
};

/// Finds a packing set or spectra and returns a spec that carries them as
/// hints, so `turan` on the output re-verifies the result.
inline SearchOutcome cmd_search(const ProblemSpec& spec, SearchTarget what, const GlobalOptions& opt) {
    const auto* f = std::get_if<FiniteSpec>(&spec.problem);
    if (!f) throw Error(ErrorCode::invalid_argument, "search needs a finite-group spec");
    detail::Stopwatch clock;
    const auto omega = detail::finite_domain(*f);
    const auto& g = omega.group();
    const auto budget = detail::budget_for(spec, opt);
    const double tol = detail::tolerance_for(spec, opt);

    SearchOutcome out;
    out.certificate = spec.raw;
    auto& hints = out.certificate["hints"];
    if (!hints.is_object()) hints = json::object();
    json rec = json::object();
    auto transcript = json::array();

    if (what == SearchTarget::packing) {
        rec["what"] = "packing";
        const auto p = max_packing_set(omega, budget);
        const auto chk = check_packing_set(omega, p.elements);
        out.found = true;
        out.verified = chk.ok;
        hints["lambda"] = elements_out(g, p.elements);
        rec["size"] = p.elements.size();
        rec["maximality"] = to_string(p.maximality);
        rec["nodes"] = p.nodes;
        transcript.push_back("branch and bound over Cay(G, G \\ Omega): " + std::to_string(p.nodes) + " nodes, " +
                             to_string(p.maximality));
        transcript.push_back(std::string("pairwise difference check against the domain: ") + (chk.ok ? "passed" : "failed"));
        transcript.push_back("packing bound |G|/|Lambda| = " + std::to_string(g.order()) + "/" +
                             std::to_string(p.elements.size()));
    } else {
        rec["what"] = "spectrum";
        if (f->tiles.empty()) throw Error(ErrorCode::invalid_argument, "spectrum search needs hints.H");
        auto spectra = json::array();
        auto per = json::array();
        out.found = out.verified = true;
        for (const auto& hx : f->tiles) {
            const auto h = detail::to_indices(g, hx, "hints.H");
            const auto s = find_spectrum(g, h, budget, tol);
            json one{{"size", s.spectrum.size()}, {"exhausted", s.exhausted}, {"nodes", s.nodes}, {"verified", s.verified}};
            if (s.spectrum.empty()) {
                out.found = out.verified = false;
                one["result"] = s.exhausted ? "none-found, exhausted" : "none-found within budget";
                transcript.push_back("H of size " + std::to_string(h.size()) + ": " + one["result"].get<std::string>());
                spectra.push_back(json::array());
            } else {
                const auto chk = is_spectrum(g, h, s.spectrum, tol);
                out.verified = out.verified && chk.spectrum;
                one["result"] = "found |T|=" + std::to_string(s.spectrum.size());
                one["max_off_diagonal"] = chk.max_off_diagonal;
                transcript.push_back("H of size " + std::to_string(h.size()) + ": " + one["result"].get<std::string>() +
                                     ", orthogonality and tiling identity " + (chk.spectrum ? "agree" : "fail"));
                spectra.push_back(elements_out(g, s.spectrum));
            }
            per.push_back(one);
        }
        rec["spectra"] = per;
        // hints.T must stay aligned with hints.H; an empty entry means "search"
        hints["T"] = spectra;
    }
    rec["found"] = out.found;
    rec["verified"] = out.verified;
    rec["transcript"] = transcript;
    if (opt.timings) rec["seconds"] = clock.lap();
    out.certificate["search"] = stringify_floats(rec);
    return out;
}

} // namespace turanlab::cli
